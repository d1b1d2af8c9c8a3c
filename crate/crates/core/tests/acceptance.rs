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

//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dca_core::classify::{
    check_fn_integrally_convex, check_fn_lnat, check_fn_midpoint, check_fn_submodular, check_parallelogram,
    check_set_integrally_convex, check_set_midpoint, classify_chain, CheckReport, MidpointMode, SetMidpointMode,
    ViolationWitness,
};
use dca_core::generators as gen;
use dca_core::geometry::{convex_envelope_value, hull_membership, local_convex_extension, HullMembership};
use dca_core::lattice::integral_neighborhood;
use dca_core::transforms::{
    add_functions, conjugate, convolve, minkowski_sum, project_fn, project_set, segment_sum_certificate, SegmentBox,
};
use dca_core::value::ratio;
use dca_core::{DiscreteFunction, ExtendedValue, IntegerBox, LatticePoint, LatticeSet, RationalPoint};

fn lp(c: &[i64]) -> LatticePoint {
    LatticePoint::from(c)
}

fn bx(lo: &[i64], hi: &[i64]) -> IntegerBox {
    IntegerBox::new(lp(lo), lp(hi)).unwrap()
}

fn half(c: &[i64]) -> RationalPoint {
    RationalPoint(c.iter().map(|&n| ratio(n, 2)).collect())
}

/// Raw data a negative verdict was computed on.
enum Raw {
    Set(LatticeSet),
    Function(DiscreteFunction),
}

/// Negative verdicts collected for the replay criterion.
#[derive(Default)]
struct Witnesses(Vec<(Raw, ViolationWitness)>);

impl Witnesses {
    fn set(&mut self, s: &LatticeSet, r: &CheckReport) {
        if let Some(w) = &r.witness {
            self.0.push((Raw::Set(s.clone()), w.clone()));
        }
    }

    fn function(&mut self, f: &DiscreteFunction, r: &CheckReport) {
        if let Some(w) = &r.witness {
            self.0.push((Raw::Function(f.clone()), w.clone()));
        }
    }
}

/// Accumulates failed sub-checks of one criterion.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Boxes for the generated suites, dimensions two to four.
fn suite_boxes() -> Vec<IntegerBox> {
    vec![
        IntegerBox::cube(2, 0, 4).unwrap(),
        IntegerBox::cube(2, 0, 3).unwrap(),
        IntegerBox::cube(3, 0, 2).unwrap(),
        IntegerBox::cube(3, 0, 3).unwrap(),
        IntegerBox::cube(4, 0, 1).unwrap(),
        IntegerBox::cube(4, 0, 2).unwrap(),
    ]
}

fn random_keep<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !keep.is_empty() && keep.len() < n {
            return keep;
        }
    }
}

fn example_31(w: &mut Witnesses, f: &mut Failures) {
    let s1 = LatticeSet::from_rows(&[&[0, 0], &[1, 1]]);
    let s2 = LatticeSet::from_rows(&[&[1, 0], &[0, 1]]);
    let sum = minkowski_sum(&s1, &s2).unwrap();
    f.expect(sum == LatticeSet::from_rows(&[&[1, 0], &[0, 1], &[2, 1], &[1, 2]]), "sum set");
    let r = check_set_integrally_convex(&sum).unwrap();
    w.set(&sum, &r);
    let hole = matches!(&r.witness, Some(ViolationWitness::HolePoint(h)) if h.point == lp(&[1, 1]).to_rational());
    f.expect(!r.verdict && hole, format!("hole witness (1,1): {r}"));
    let inside = match hull_membership(&lp(&[1, 1]).to_rational(), &sum).unwrap() {
        HullMembership::Inside(c) => c.verify() && c.support_within(&sum),
        HullMembership::Outside(_) => false,
    };
    f.expect(inside, "(1,1) written over the sum");
}

fn example_41(w: &mut Witnesses, f: &mut Failures) {
    let s1 = LatticeSet::from_rows(&[&[0, 0, 0], &[1, 1, 0]]);
    let s2 = LatticeSet::from_rows(&[&[0, 0, 0], &[0, 1, 1]]);
    for s in [&s1, &s2] {
        f.expect(check_set_midpoint(s, SetMidpointMode::Lnat).unwrap().verdict, "summand is L♮");
    }
    let sum = minkowski_sum(&s1, &s2).unwrap();
    let r = check_set_midpoint(&sum, SetMidpointMode::Lnat).unwrap();
    w.set(&sum, &r);
    let pair = match &r.witness {
        Some(ViolationWitness::MidpointPair { x, y, missing, .. }) => {
            (x, y) == (&lp(&[0, 1, 1]), &lp(&[1, 1, 0])) && missing == &vec![lp(&[1, 1, 1]), lp(&[0, 1, 0])]
        }
        _ => false,
    };
    f.expect(pair, format!("midpoint witness: {r}"));
    f.expect(check_set_integrally_convex(&sum).unwrap().verdict, "sum is integrally convex");
}

fn example_42(w: &mut Witnesses, f: &mut Failures) {
    let s = LatticeSet::from_rows(&[&[0, 0, 1], &[1, 1, 0]]);
    let b = LatticeSet::from_rows(&[&[0, 0, 0], &[1, 0, 0]]);
    let sum = minkowski_sum(&s, &b).unwrap();
    f.expect(sum == LatticeSet::from_rows(&[&[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[2, 1, 0]]), "S+B");
    let r = check_set_midpoint(&sum, SetMidpointMode::Dmc).unwrap();
    w.set(&sum, &r);
    let pair = match &r.witness {
        Some(ViolationWitness::MidpointPair { x, y, missing, .. }) => {
            (x, y) == (&lp(&[0, 0, 1]), &lp(&[2, 1, 0])) && missing == &vec![lp(&[1, 1, 1]), lp(&[1, 0, 0])]
        }
        _ => false,
    };
    f.expect(pair, format!("midpoint witness: {r}"));
    f.expect(check_set_integrally_convex(&sum).unwrap().verdict, "S+B integrally convex");
}

fn example_43(w: &mut Witnesses, f: &mut Failures) {
    let s = LatticeSet::from_rows(&[&[0, 0, 1], &[1, 1, 0]]);
    let base = DiscreteFunction::from_fn(IntegerBox::cube(3, 0, 1).unwrap(), |p| {
        ExtendedValue::int(i64::from(!s.contains(p)))
    })
    .unwrap();
    let b = DiscreteFunction::indicator(&LatticeSet::from_rows(&[&[0, 0, 0], &[1, 0, 0]])).unwrap();
    let g = convolve(&base, &b).unwrap();
    let sb = LatticeSet::from_rows(&[&[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[2, 1, 0]]);
    let table_ok = g.domain_box() == &bx(&[0, 0, 0], &[2, 1, 1])
        && g.entries().all(|(p, v)| *v == ExtendedValue::int(i64::from(!sb.contains(&p))));
    f.expect(table_ok, "displayed table");
    for mode in [MidpointMode::Global, MidpointMode::Local] {
        let r = check_fn_midpoint(&g, mode).unwrap();
        w.function(&g, &r);
        let pair = match &r.witness {
            Some(ViolationWitness::FunctionMidpointPair { x, y, values, .. }) => {
                (x, y) == (&lp(&[0, 0, 1]), &lp(&[2, 1, 0])) && values == &[0, 0, 1, 1].map(ExtendedValue::int)
            }
            _ => false,
        };
        f.expect(pair, format!("{mode:?} witness: {r}"));
    }
    f.expect(check_fn_integrally_convex(&g).unwrap().verdict, "g integrally convex");
}

fn example_51(w: &mut Witnesses, f: &mut Failures) {
    let s = LatticeSet::from_rows(&[&[0, 0, 0, 0], &[1, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 0, 0, 1]]);
    let pbox = bx(&[0, 0, 0, 0], &[2, 2, 2, 3]);
    let g = conjugate(&DiscreteFunction::indicator(&s).unwrap(), &pbox).unwrap();
    let formula = g.entries().all(|(p, v)| {
        let c = &p.0;
        *v == ExtendedValue::int((c[0] + c[1]).max(c[1] + c[2]).max(c[0] + c[2]).max(c[3]))
    });
    f.expect(formula, "conjugate formula");
    let (ext, _) = local_convex_extension(&g, &half(&[1, 1, 1, 2])).unwrap();
    f.expect(ext == ExtendedValue::Finite(ratio(3, 2)), format!("local extension at (1/2,1/2,1/2,1) is {ext}, expected 3/2"));
    let avg = (g.value(&lp(&[0, 0, 0, 0])) + g.value(&lp(&[1, 1, 1, 2]))).scale(&ratio(1, 2));
    f.expect(avg == ExtendedValue::int(1), format!("(g(p)+g(q))/2 = {avg}"));
    let r = check_fn_integrally_convex(&g).unwrap();
    w.function(&g, &r);
    let pair = matches!(&r.witness, Some(ViolationWitness::EnvelopeGap { x, y, .. })
        if (x, y) == (&lp(&[0, 0, 0, 0]), &lp(&[1, 1, 1, 2])));
    f.expect(!r.verdict && pair, format!("envelope witness: {r}"));
}

fn example_52(w: &mut Witnesses, f: &mut Failures) {
    let d1 = LatticeSet::from_rows(&[&[0, 0, 0], &[0, 1, 1], &[1, 1, 0], &[1, 2, 1]]);
    let d2 = LatticeSet::from_rows(&[&[0, 0, 0], &[0, 1, 0], &[1, 1, 1], &[1, 2, 1]]);
    let sum = add_functions(&DiscreteFunction::indicator(&d1).unwrap(), &DiscreteFunction::indicator(&d2).unwrap())
        .unwrap();
    let meet = LatticeSet::from_rows(&[&[0, 0, 0], &[1, 2, 1]]);
    let indicator = sum.entries().all(|(p, v)| v.is_finite() == meet.contains(&p) && (!v.is_finite() || v == &ExtendedValue::zero()));
    f.expect(indicator, "sum is the indicator of the intersection");
    let r = check_set_integrally_convex(&meet).unwrap();
    w.set(&meet, &r);
    f.expect(!r.verdict, "intersection not integrally convex");
}

fn projection_suite(w: &mut Witnesses, f: &mut Failures) {
    let mut rng = rng(70);
    let boxes = suite_boxes();
    for k in 0..200 {
        let b = &boxes[k % boxes.len()];
        let keep = random_keep(&mut rng, b.dim());

        let s = gen::integrally_convex_set(&mut rng, b);
        let r = check_set_integrally_convex(&project_set(&s, &keep).unwrap()).unwrap();
        w.set(&project_set(&s, &keep).unwrap(), &r);
        f.expect(r.verdict, format!("integrally convex set #{k}: {r}"));

        let s = gen::dmc_set(&mut rng, b);
        let t = project_set(&s, &keep).unwrap();
        let r = check_set_midpoint(&t, SetMidpointMode::Dmc).unwrap();
        w.set(&t, &r);
        f.expect(r.verdict, format!("DMC set #{k}: {r}"));

        let g = project_fn(&gen::integrally_convex_function(&mut rng, b), &keep).unwrap();
        let r = check_fn_integrally_convex(&g).unwrap();
        w.function(&g, &r);
        f.expect(r.verdict, format!("integrally convex function #{k}: {r}"));

        let g = project_fn(&gen::dmc_function(&mut rng, b), &keep).unwrap();
        let r = check_fn_midpoint(&g, MidpointMode::Global).unwrap();
        w.function(&g, &r);
        f.expect(r.verdict, format!("globally DMC function #{k}: {r}"));

        let g = project_fn(&gen::locally_dmc_function(&mut rng, b), &keep).unwrap();
        let r = check_fn_midpoint(&g, MidpointMode::Local).unwrap();
        w.function(&g, &r);
        f.expect(r.verdict, format!("locally DMC function #{k}: {r}"));
    }
}

fn convolution_suite(w: &mut Witnesses, f: &mut Failures) {
    let mut rng = rng(80);
    let operand_boxes = [
        IntegerBox::cube(2, 0, 2).unwrap(),
        IntegerBox::cube(2, -1, 1).unwrap(),
        IntegerBox::cube(3, 0, 1).unwrap(),
        IntegerBox::cube(4, 0, 1).unwrap(),
    ];
    for k in 0..200 {
        let b = &operand_boxes[k % operand_boxes.len()];
        let base = gen::integrally_convex_function(&mut rng, b);
        let phi = gen::separable_convex(&mut rng, b);
        let g = convolve(&base, &phi).unwrap();
        let r = check_fn_integrally_convex(&g).unwrap();
        w.function(&g, &r);
        f.expect(r.verdict, format!("integrally convex pair #{k}: {r}"));
    }
    for k in 0..100 {
        let b = &operand_boxes[k % operand_boxes.len()];
        let base = gen::lnat_function(&mut rng, b);
        let phi = gen::separable_convex(&mut rng, b);
        let g = convolve(&base, &phi).unwrap();
        let r = check_fn_lnat(&g).unwrap();
        w.function(&g, &r);
        f.expect(r.verdict, format!("L♮ pair #{k}: {r}"));
    }
}

fn parallelogram_suite(w: &mut Witnesses, f: &mut Failures) {
    let mut rng = rng(90);
    let boxes = [
        IntegerBox::cube(2, 0, 3).unwrap(),
        IntegerBox::cube(3, 0, 2).unwrap(),
        IntegerBox::cube(3, 0, 3).unwrap(),
    ];
    for k in 0..100 {
        let g = gen::dmc_function(&mut rng, &boxes[k % boxes.len()]);
        let r = check_parallelogram(&g, MidpointMode::Global).unwrap();
        w.function(&g, &r);
        f.expect(r.verdict, format!("parallelogram #{k}: {r}"));
    }
}

fn half_integral_points(b: &IntegerBox) -> Vec<RationalPoint> {
    let doubled = IntegerBox::new(b.lo().scale(2), b.hi().scale(2)).unwrap();
    doubled.points().map(|p| half(&p.0)).collect()
}

fn oracle_suite(w: &mut Witnesses, f: &mut Failures) {
    let mut rng = rng(100);
    let boxes = [
        IntegerBox::cube(2, 0, 3).unwrap(),
        IntegerBox::cube(3, 0, 2).unwrap(),
        IntegerBox::cube(4, 0, 1).unwrap(),
    ];
    for k in 0..120 {
        let b = &boxes[k % boxes.len()];
        let g = match k % 6 {
            0 => gen::separable_convex(&mut rng, b),
            1 => gen::lnat_function(&mut rng, b),
            2 => gen::dmc_function(&mut rng, b),
            3 => gen::locally_dmc_function(&mut rng, b),
            4 => gen::integrally_convex_function(&mut rng, b),
            _ => gen::random_table(&mut rng, b),
        };
        let lnat = check_fn_lnat(&g).unwrap();
        let sub = check_fn_submodular(&g).unwrap();
        let ic = check_fn_integrally_convex(&g).unwrap();
        for r in [&lnat, &sub, &ic] {
            w.function(&g, r);
        }
        f.expect(lnat.verdict == (sub.verdict && ic.verdict), format!("#{k}: L♮ {lnat} vs submodular {sub} and {ic}"));
        match classify_chain(&g) {
            Ok(chain) => {
                for r in &chain.reports {
                    w.function(&g, r);
                }
            }
            Err(e) => f.expect(false, format!("#{k}: {e}")),
        }
        if ic.verdict {
            for x in half_integral_points(b) {
                let (local, _) = local_convex_extension(&g, &x).unwrap();
                let env = convex_envelope_value(&g, &x).unwrap();
                f.expect(local == env, format!("#{k}: at {x} local {local} vs envelope {env}"));
            }
        }
    }
}

fn segment_suite(f: &mut Failures) {
    let mut rng = rng(110);
    let boxes = [IntegerBox::cube(2, 0, 3).unwrap(), IntegerBox::cube(3, 0, 2).unwrap()];
    for k in 0..120 {
        let b = &boxes[k % boxes.len()];
        let n = b.dim();
        let s = gen::integrally_convex_set(&mut rng, b);
        let axis = rng.gen_range(0..n);
        let lo = rng.gen_range(-1..=1);
        let seg = SegmentBox::new(axis, lo, lo + rng.gen_range(0..=2)).unwrap();
        // S + B by direct enumeration
        let sum: Vec<LatticePoint> = s
            .iter()
            .flat_map(|p| (seg.lo..=seg.hi).map(move |t| p.add(&LatticePoint::axis(n, axis, t))))
            .collect();
        let sum = LatticeSet::new(n, sum).unwrap();
        // a random rational point of conv(S + B)
        let pts: Vec<&LatticePoint> = sum.iter().collect();
        let chosen: Vec<(&LatticePoint, i64)> =
            (0..3).map(|_| (pts[rng.gen_range(0..pts.len())], rng.gen_range(1..=4))).collect();
        let total: i64 = chosen.iter().map(|(_, w)| w).sum();
        let x = RationalPoint(
            (0..n)
                .map(|i| chosen.iter().map(|(p, w)| ratio(p.0[i] * w, total)).sum())
                .collect(),
        );
        match segment_sum_certificate(&s, &seg, &x) {
            Ok(c) => {
                let support_ok = c.support.iter().all(|(p, _)| sum.contains(p))
                    && c.support_within(&integral_neighborhood(&x));
                f.expect(c.verify() && c.target == x && support_ok, format!("segment #{k}: {c:?}"));
            }
            Err(e) => f.expect(false, format!("segment #{k}: {e}")),
        }
    }
}

fn replay(w: &Witnesses, f: &mut Failures) {
    for (raw, witness) in &w.0 {
        let ok = match raw {
            Raw::Set(s) => witness.replay_set(s),
            Raw::Function(g) => witness.replay(g),
        };
        f.expect(ok, format!("witness does not replay: {witness}"));
    }
}

fn box_growth_suite(f: &mut Failures) {
    let mut rng = rng(120);
    for k in 0..60 {
        let n = 2 + k % 2;
        let b1 = IntegerBox::cube(n, -2, 2).unwrap();
        let b2 = IntegerBox::cube(n, -1, 2).unwrap();
        let f1 = gen::random_table(&mut rng, &b1);
        let f2 = gen::random_table(&mut rng, &b2);
        let full = convolve(&f1, &f2).unwrap();
        let covering = f1.domain_box().hull(f2.domain_box());
        let mut previous: Option<DiscreteFunction> = None;
        for radius in 0..=3 {
            let window = IntegerBox::cube(n, -radius, radius).unwrap();
            let (Ok(t1), Ok(t2)) = (f1.try_reboxed(&window), f2.try_reboxed(&window)) else {
                continue;
            };
            let g = convolve(&t1, &t2).unwrap();
            if let Some(prev) = &previous {
                let monotone = full.domain_box().points().all(|p| g.value(&p) <= prev.value(&p));
                f.expect(monotone, format!("#{k}: values increased at radius {radius}"));
            }
            let covers = window.intersect(&covering).as_ref() == Some(&covering);
            let equal = full.domain_box().points().all(|p| g.value(&p) == full.value(&p));
            if covers {
                f.expect(equal, format!("#{k}: not stable at covering radius {radius}"));
            }
            previous = Some(g);
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
}

fn main() -> ExitCode {
    let mut witnesses = Witnesses::default();
    let mut all_passed = true;
    let mut report = |c: Criterion, run: &mut dyn FnMut(&mut Failures)| {
        let mut failures = Failures::default();
        let started = Instant::now();
        run(&mut failures);
        let elapsed = started.elapsed();
        if elapsed > c.limit {
            failures.0.push(format!("runtime {elapsed:.2?} exceeds {:?}", c.limit));
        }
        let status = if failures.0.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} ({elapsed:.2?})", c.id, c.name);
        for msg in failures.0.iter().take(5) {
            println!("       - {msg}");
        }
        if failures.0.len() > 5 {
            println!("       - ... {} more", failures.0.len() - 5);
        }
        all_passed &= failures.0.is_empty();
    };
    let secs = Duration::from_secs;
    let w = &mut witnesses;
    report(Criterion { id: 1, name: "square sum has a hole", limit: secs(1) }, &mut |f| example_31(w, f));
    report(Criterion { id: 2, name: "sum of L♮ sets", limit: secs(1) }, &mut |f| example_41(w, f));
    report(Criterion { id: 3, name: "set plus segment", limit: secs(1) }, &mut |f| example_42(w, f));
    report(Criterion { id: 4, name: "convolution with a segment indicator", limit: secs(2) }, &mut |f| example_43(w, f));
    report(Criterion { id: 5, name: "conjugate of an integrally convex indicator", limit: secs(5) }, &mut |f| example_51(w, f));
    report(Criterion { id: 6, name: "sum of integrally convex indicators", limit: secs(1) }, &mut |f| example_52(w, f));
    report(Criterion { id: 7, name: "projection preserves each class", limit: secs(120) }, &mut |f| projection_suite(w, f));
    report(Criterion { id: 8, name: "convolution preserves each class", limit: secs(120) }, &mut |f| convolution_suite(w, f));
    report(Criterion { id: 9, name: "parallelogram inequality", limit: secs(60) }, &mut |f| parallelogram_suite(w, f));
    report(Criterion { id: 10, name: "oracle agreement", limit: secs(300) }, &mut |f| oracle_suite(w, f));
    let w = &witnesses;
    report(Criterion { id: 11, name: "certificate replay", limit: secs(300) }, &mut |f| {
        replay(w, f);
        segment_suite(f);
    });
    report(Criterion { id: 12, name: "convolution under box growth", limit: secs(300) }, &mut |f| box_growth_suite(f));
    println!("replayed {} negative verdicts", witnesses.0.len());
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
