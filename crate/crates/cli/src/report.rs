//   Copyright 2026 The dca Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! Report files: check results with full witness data, as JSON or text.

use serde_json::{json, Map, Value};

use dca_core::classify::{CheckReport, PairRange, ViolationWitness};
use dca_core::geometry::{AffineMinorant, ConvexCombination, HoleCertificate};
use dca_core::value::format_rational;
use dca_core::{ExtendedValue, Halfspace, LatticePoint, Rational, RationalPoint};

pub const TOOL: &str = "dca";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn extended(v: &ExtendedValue) -> Value {
    v.finite().map_or(Value::Null, rational)
}

pub fn point(p: &LatticePoint) -> Value {
    json!(p.0)
}

pub fn rational_point(p: &RationalPoint) -> Value {
    Value::Array(p.0.iter().map(rational).collect())
}

pub fn combination(c: &ConvexCombination) -> Value {
    json!({
        "target": rational_point(&c.target),
        "support": c.support.iter().map(|(p, w)| json!({"point": point(p), "weight": rational(w)})).collect::<Vec<_>>(),
    })
}

pub fn halfspace(h: &Halfspace) -> Value {
    json!({
        "normal": h.normal.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        "offset": rational(&h.offset),
    })
}

fn minorant(m: &AffineMinorant) -> Value {
    json!({
        "slope": m.slope.iter().map(rational).collect::<Vec<_>>(),
        "intercept": rational(&m.intercept),
    })
}

fn hole(h: &HoleCertificate) -> Value {
    json!({
        "point": rational_point(&h.point),
        "combination": combination(&h.combination),
        "separator": halfspace(&h.separator),
    })
}

fn values(vs: &[ExtendedValue]) -> Value {
    Value::Array(vs.iter().map(extended).collect())
}

fn range(r: &PairRange) -> Value {
    Value::String(r.name().to_string())
}

/// All numeric detail of a witness, tagged by `kind` and `variant`.
pub fn witness(w: &ViolationWitness) -> Value {
    let (variant, mut body) = match w {
        ViolationWitness::MidpointPair { range: r, x, y, missing } => (
            "set-midpoint",
            json!({"range": range(r), "x": point(x), "y": point(y), "missing": missing.iter().map(point).collect::<Vec<_>>()}),
        ),
        ViolationWitness::FunctionMidpointPair { range: r, x, y, up, down, values: v } => (
            "function-midpoint",
            json!({"range": range(r), "x": point(x), "y": point(y), "up": point(up), "down": point(down), "values": values(v)}),
        ),
        ViolationWitness::HolePoint(h) => ("hole", hole(h)),
        ViolationWitness::SubmodularPair { x, y, values: v } => {
            ("submodular", json!({"x": point(x), "y": point(y), "values": values(v)}))
        }
        ViolationWitness::EnvelopeGap { x, y, fx, fy, extension, combination: c, minorant: m } => (
            "envelope-gap",
            json!({
                "x": point(x), "y": point(y), "fx": rational(fx), "fy": rational(fy),
                "extension": rational(extension), "combination": combination(c), "minorant": minorant(m),
            }),
        ),
        ViolationWitness::ParallelogramPair { x, y, steps, d, values: v } => (
            "parallelogram",
            json!({"x": point(x), "y": point(y), "steps": steps, "d": point(d), "values": values(v)}),
        ),
        ViolationWitness::ArgminHole { probe, hole: h } => (
            "argmin-hole",
            json!({"probe": probe.iter().map(rational).collect::<Vec<_>>(), "hole": hole(h)}),
        ),
        ViolationWitness::DomainNotBox { point: p } => ("domain-not-box", json!({"point": point(p)})),
        ViolationWitness::SeparableIdentity { point: p, value, additive } => (
            "separable-identity",
            json!({"point": point(p), "value": rational(value), "additive": rational(additive)}),
        ),
        ViolationWitness::SeparableCurvature { axis, t, values: v } => (
            "separable-curvature",
            json!({"axis": axis, "t": t, "values": v.iter().map(rational).collect::<Vec<_>>()}),
        ),
    };
    let map: &mut Map<String, Value> = body.as_object_mut().expect("object");
    map.insert("kind".into(), Value::String(w.kind().into()));
    map.insert("variant".into(), Value::String(variant.into()));
    body
}

/// A check report without its wall-clock time, so output is reproducible.
pub fn check_report(r: &CheckReport) -> Value {
    json!({
        "property": r.property,
        "verdict": r.verdict,
        "witness": r.witness.as_ref().map(witness),
        "pairs_checked": r.pairs_checked,
        "note": r.note,
    })
}

/// Envelope shared by every command output.
pub fn report_file(command: &[String], body: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("tool".into(), Value::String(TOOL.into()));
    out.insert("version".into(), Value::String(VERSION.into()));
    out.insert("command".into(), json!(command));
    out.extend(body);
    Value::Object(out)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

/// One line per report, witness on the following line.
pub fn check_text(r: &CheckReport) -> String {
    let mut s = format!(
        "{}: {} ({} checked)",
        r.property,
        if r.verdict { "true" } else { "false" },
        r.pairs_checked
    );
    if let Some(note) = &r.note {
        s.push_str(&format!(" [{note}]"));
    }
    if let Some(w) = &r.witness {
        s.push_str(&format!("\n  witness: {w}"));
    }
    s
}
