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

//! The embedded example corpus and the end-to-end reproduction of each
//! example's stated outcome.

use dca_core::classify::{
    check_fn_integrally_convex, check_fn_midpoint, check_set_integrally_convex, check_set_midpoint, CheckReport,
    MidpointMode, SetMidpointMode, ViolationWitness,
};
use dca_core::geometry::{hull_membership, local_convex_extension, HullMembership};
use dca_core::transforms::{add_functions, conjugate, convolve, minkowski_sum};
use dca_core::value::ratio;
use dca_core::{DiscreteFunction, ExtendedValue, IntegerBox, LatticePoint, LatticeSet, RationalPoint};

use crate::instance::{parse_instance, Instance};

pub struct CorpusFile {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(CorpusFile { name: $name, text: include_str!(concat!("../corpus/", $name, ".json")) }),*]
    };
}

pub const FILES: &[CorpusFile] = corpus![
    "ex31_s1",
    "ex31_s2",
    "ex31_sum",
    "ex41_s1",
    "ex41_s2",
    "ex41_s1_indicator",
    "ex41_s2_indicator",
    "ex42_s",
    "ex42_b",
    "ex43_f",
    "ex43_b_indicator",
    "ex51_s_indicator",
    "ex52_d1_indicator",
    "ex52_d2_indicator",
    "quadratic_tridiagonal",
];

pub const EXAMPLES: &[(&str, &str)] = &[
    ("ex31", "sum of two integrally convex sets with a hole"),
    ("ex41", "sum of two L♮ sets that is not L♮"),
    ("ex42", "set plus segment that is not discrete midpoint convex"),
    ("ex43", "convolution that is not discrete midpoint convex"),
    ("ex51", "conjugate of an integrally convex indicator"),
    ("ex52", "sum of integrally convex indicators"),
];

fn load(name: &str) -> Instance {
    let file = FILES.iter().find(|f| f.name == name).expect("corpus entry");
    parse_instance(file.text, usize::MAX).expect("corpus parses")
}

fn load_set(name: &str) -> LatticeSet {
    match load(name) {
        Instance::Set(s) => s,
        other => panic!("{name} is a {}", other.kind()),
    }
}

fn load_fn(name: &str) -> DiscreteFunction {
    match load(name) {
        Instance::Function(f) => f,
        other => panic!("{name} is a {}", other.kind()),
    }
}

/// One stated outcome and what was computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub expected: String,
    pub computed: String,
}

impl Fact {
    fn new(name: &str, expected: impl ToString, computed: impl ToString) -> Self {
        Fact {
            name: name.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

pub struct Section {
    pub id: &'static str,
    pub title: &'static str,
    pub facts: Vec<Fact>,
    pub reports: Vec<CheckReport>,
}

impl Section {
    pub fn matches(&self) -> bool {
        self.facts.iter().all(Fact::matches)
    }
}

fn set_str(s: &LatticeSet) -> String {
    let pts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", pts.join(","))
}

fn pair_str(x: &LatticePoint, y: &LatticePoint) -> String {
    format!("{x}, {y}")
}

fn list_str(ps: &[LatticePoint]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn set_pair(r: &CheckReport) -> (String, String) {
    match &r.witness {
        Some(ViolationWitness::MidpointPair { x, y, missing, .. }) => (pair_str(x, y), list_str(missing)),
        Some(w) => (w.to_string(), String::new()),
        None => ("none".into(), "none".into()),
    }
}

fn function_pair(r: &CheckReport) -> String {
    match &r.witness {
        Some(ViolationWitness::FunctionMidpointPair { x, y, values, .. }) => {
            format!("{}; values {}, {} vs {}, {}", pair_str(x, y), values[0], values[1], values[2], values[3])
        }
        Some(w) => w.to_string(),
        None => "none".into(),
    }
}

fn ex31() -> (Vec<Fact>, Vec<CheckReport>) {
    let sum = minkowski_sum(&load_set("ex31_s1"), &load_set("ex31_s2")).unwrap();
    let stated = load_set("ex31_sum");
    let ic = check_set_integrally_convex(&sum).unwrap();
    let hole = match &ic.witness {
        Some(ViolationWitness::HolePoint(h)) => h.point.to_string(),
        _ => "none".into(),
    };
    let inside = matches!(
        hull_membership(&LatticePoint::from([1, 1]).to_rational(), &sum).unwrap(),
        HullMembership::Inside(c) if c.verify()
    );
    let facts = vec![
        Fact::new("S1+S2", set_str(&stated), set_str(&sum)),
        Fact::new("S1+S2 integrally convex", false, ic.verdict),
        Fact::new("hole", "(1,1)", hole),
        Fact::new("(1,1) in conv(S1+S2)", true, inside),
    ];
    (facts, vec![ic])
}

fn ex41() -> (Vec<Fact>, Vec<CheckReport>) {
    let (s1, s2) = (load_set("ex41_s1"), load_set("ex41_s2"));
    let r1 = check_set_midpoint(&s1, SetMidpointMode::Lnat).unwrap();
    let r2 = check_set_midpoint(&s2, SetMidpointMode::Lnat).unwrap();
    let sum = minkowski_sum(&s1, &s2).unwrap();
    let lnat = check_set_midpoint(&sum, SetMidpointMode::Lnat).unwrap();
    let (pair, missing) = set_pair(&lnat);
    let ic = check_set_integrally_convex(&sum).unwrap();
    let facts = vec![
        Fact::new("S1 L♮", true, r1.verdict),
        Fact::new("S2 L♮", true, r2.verdict),
        Fact::new("S1+S2", "{(0,0,0),(0,1,1),(1,1,0),(1,2,1)}", set_str(&sum)),
        Fact::new("S1+S2 L♮", false, lnat.verdict),
        Fact::new("violating pair", "(0,1,1), (1,1,0)", pair),
        Fact::new("missing midpoints", "(1,1,1), (0,1,0)", missing),
        Fact::new("S1+S2 integrally convex", true, ic.verdict),
    ];
    (facts, vec![r1, r2, lnat, ic])
}

fn ex42() -> (Vec<Fact>, Vec<CheckReport>) {
    let sum = minkowski_sum(&load_set("ex42_s"), &load_set("ex42_b")).unwrap();
    let dmc = check_set_midpoint(&sum, SetMidpointMode::Dmc).unwrap();
    let (pair, missing) = set_pair(&dmc);
    let ic = check_set_integrally_convex(&sum).unwrap();
    let facts = vec![
        Fact::new("S+B", "{(0,0,1),(1,0,1),(1,1,0),(2,1,0)}", set_str(&sum)),
        Fact::new("S+B discrete midpoint convex", false, dmc.verdict),
        Fact::new("violating pair", "(0,0,1), (2,1,0)", pair),
        Fact::new("missing midpoints", "(1,1,1), (1,0,0)", missing),
        Fact::new("S+B integrally convex", true, ic.verdict),
    ];
    (facts, vec![dmc, ic])
}

fn ex43() -> (Vec<Fact>, Vec<CheckReport>) {
    let g = convolve(&load_fn("ex43_f"), &load_fn("ex43_b_indicator")).unwrap();
    let sb = LatticeSet::from_rows(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 0], &[2, 1, 0]]);
    let stated = "0 on S+B, 1 elsewhere on [(0,0,0),(2,1,1)]";
    let table_ok = g.domain_box() == &IntegerBox::new(LatticePoint::from([0, 0, 0]), LatticePoint::from([2, 1, 1])).unwrap()
        && g.entries().all(|(p, v)| *v == ExtendedValue::int(i64::from(!sb.contains(&p))));
    let table = if table_ok {
        stated.to_string()
    } else {
        g.entries().map(|(p, v)| format!("{p}:{v}")).collect::<Vec<_>>().join(" ")
    };
    let global = check_fn_midpoint(&g, MidpointMode::Global).unwrap();
    let local = check_fn_midpoint(&g, MidpointMode::Local).unwrap();
    let ic = check_fn_integrally_convex(&g).unwrap();
    let pair = "(0,0,1), (2,1,0); values 0, 0 vs 1, 1";
    let facts = vec![
        Fact::new("f □ δ_B", stated, table),
        Fact::new("globally discrete midpoint convex", false, global.verdict),
        Fact::new("global violating pair", pair, function_pair(&global)),
        Fact::new("locally discrete midpoint convex", false, local.verdict),
        Fact::new("local violating pair", pair, function_pair(&local)),
        Fact::new("integrally convex", true, ic.verdict),
    ];
    (facts, vec![global, local, ic])
}

fn ex51() -> (Vec<Fact>, Vec<CheckReport>) {
    let pbox = IntegerBox::new(LatticePoint::from([0, 0, 0, 0]), LatticePoint::from([2, 2, 2, 3])).unwrap();
    let g = conjugate(&load_fn("ex51_s_indicator"), &pbox).unwrap();
    let stated = "max{p1+p2, p2+p3, p1+p3, p4} on [0,2]^3 x [0,3]";
    let bad: Vec<String> = g
        .entries()
        .filter(|(p, v)| {
            let c = &p.0;
            **v != ExtendedValue::int((c[0] + c[1]).max(c[1] + c[2]).max(c[0] + c[2]).max(c[3]))
        })
        .map(|(p, v)| format!("{p}:{v}"))
        .collect();
    let formula = if bad.is_empty() { stated.to_string() } else { format!("differs at {}", bad.join(" ")) };
    let (p, q) = (LatticePoint::from([0, 0, 0, 0]), LatticePoint::from([1, 1, 1, 2]));
    let mid = RationalPoint::midpoint(&p, &q);
    let (ext, _) = local_convex_extension(&g, &mid).unwrap();
    let avg = (g.value(&p) + g.value(&q)).scale(&ratio(1, 2));
    let ic = check_fn_integrally_convex(&g).unwrap();
    let pair = match &ic.witness {
        Some(ViolationWitness::EnvelopeGap { x, y, .. }) => pair_str(x, y),
        Some(w) => w.to_string(),
        None => "none".into(),
    };
    let facts = vec![
        Fact::new("conjugate", stated, formula),
        Fact::new("extension at (p+q)/2", "3/2", ext),
        Fact::new("(g(p)+g(q))/2", "1", avg),
        Fact::new("integrally convex", false, ic.verdict),
        Fact::new("violating pair", pair_str(&p, &q), pair),
    ];
    (facts, vec![ic])
}

fn ex52() -> (Vec<Fact>, Vec<CheckReport>) {
    let sum = add_functions(&load_fn("ex52_d1_indicator"), &load_fn("ex52_d2_indicator")).unwrap();
    let dom = sum.effective_domain();
    let zero = sum.finite_entries().all(|(_, v)| ExtendedValue::Finite(v.clone()) == ExtendedValue::zero());
    let described = if zero { format!("indicator of {}", set_str(&dom)) } else { "not an indicator".into() };
    let ic = check_set_integrally_convex(&dom).unwrap();
    let facts = vec![
        Fact::new("δ_D1 + δ_D2", "indicator of {(0,0,0),(1,2,1)}", described),
        Fact::new("D1 ∩ D2 integrally convex", false, ic.verdict),
    ];
    (facts, vec![ic])
}

/// Runs the selected examples. `perturb` names an example whose first
/// stated fact is altered, to confirm that mismatches are caught.
pub fn reproduce(only: Option<&str>, perturb: Option<&str>) -> Result<Vec<Section>, String> {
    for id in only.into_iter().chain(perturb) {
        if !EXAMPLES.iter().any(|(e, _)| *e == id) {
            return Err(format!("unknown example {id:?}; expected one of {}", ids().join(", ")));
        }
    }
    let mut out = Vec::new();
    for &(id, title) in EXAMPLES {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let (mut facts, reports) = match id {
            "ex31" => ex31(),
            "ex41" => ex41(),
            "ex42" => ex42(),
            "ex43" => ex43(),
            "ex51" => ex51(),
            _ => ex52(),
        };
        if perturb == Some(id) {
            facts[0].expected.push_str(" (perturbed)");
        }
        out.push(Section { id, title, facts, reports });
    }
    Ok(out)
}

pub fn ids() -> Vec<&'static str> {
    EXAMPLES.iter().map(|(id, _)| *id).collect()
}
