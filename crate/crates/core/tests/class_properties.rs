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

//! Class-level properties on generated and arbitrary instances.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dca_core::classify::{
    check_argmin_characterization, check_fn_integrally_convex, check_fn_lnat, check_fn_midpoint, check_fn_separable,
    check_fn_submodular, check_set_integrally_convex, check_set_midpoint, classify_chain, classify_quadratic,
    MidpointMode, SetMidpointMode, SymmetricMatrix,
};
use dca_core::generators as gen;
use dca_core::{DiscreteFunction, ExtendedValue, IntegerBox, LatticePoint, LatticeSet, Rational};

fn any_table() -> impl Strategy<Value = DiscreteFunction> {
    (1usize..=3, 1i64..=2).prop_flat_map(|(n, hi)| {
        let len = ((hi + 1) as usize).pow(n as u32);
        proptest::collection::vec(prop_oneof![5 => (-2i64..=2).prop_map(Some), 1 => Just(None)], len).prop_filter_map(
            "empty domain",
            move |vals| {
                let values = vals.into_iter().map(|v| v.map_or(ExtendedValue::Infinity, ExtendedValue::int)).collect();
                DiscreteFunction::new(IntegerBox::cube(n, 0, hi).unwrap(), values).ok()
            },
        )
    })
}

fn boxes() -> Vec<IntegerBox> {
    vec![IntegerBox::cube(2, 0, 3).unwrap(), IntegerBox::cube(3, 0, 2).unwrap(), IntegerBox::cube(4, 0, 1).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lnat_is_submodular_and_integrally_convex(f in any_table()) {
        let lnat = check_fn_lnat(&f).unwrap().verdict;
        let sub = check_fn_submodular(&f).unwrap().verdict;
        let ic = check_fn_integrally_convex(&f).unwrap().verdict;
        prop_assert_eq!(lnat, sub && ic);
    }

    #[test]
    fn chain_is_monotone_and_witnesses_replay(f in any_table()) {
        let chain = classify_chain(&f).unwrap();
        for r in &chain.reports {
            prop_assert!(r.is_consistent());
            if let Some(w) = &r.witness {
                prop_assert!(w.replay(&f), "{}", w);
            }
        }
    }

    #[test]
    fn set_checks_replay(rows in proptest::collection::vec(proptest::collection::vec(0i64..=3, 3), 1..7)) {
        let s = LatticeSet::new(3, rows.into_iter().map(LatticePoint)).unwrap();
        let ic = check_set_integrally_convex(&s).unwrap();
        let lnat = check_set_midpoint(&s, SetMidpointMode::Lnat).unwrap();
        let dmc = check_set_midpoint(&s, SetMidpointMode::Dmc).unwrap();
        for r in [&ic, &lnat, &dmc] {
            prop_assert!(r.is_consistent());
            if let Some(w) = &r.witness {
                prop_assert!(w.replay_set(&s), "{}", w);
            }
        }
        // L♮ ⊆ DMC ⊆ integrally convex
        prop_assert!(!lnat.verdict || dmc.verdict);
        prop_assert!(!dmc.verdict || ic.verdict);
    }

    #[test]
    fn indicator_agrees_with_set_checks(rows in proptest::collection::vec(proptest::collection::vec(0i64..=2, 2), 1..6)) {
        let s = LatticeSet::new(2, rows.into_iter().map(LatticePoint)).unwrap();
        let delta = DiscreteFunction::indicator(&s).unwrap();
        prop_assert_eq!(
            check_set_integrally_convex(&s).unwrap().verdict,
            check_fn_integrally_convex(&delta).unwrap().verdict
        );
        prop_assert_eq!(
            check_set_midpoint(&s, SetMidpointMode::Lnat).unwrap().verdict,
            check_fn_lnat(&delta).unwrap().verdict
        );
        prop_assert_eq!(
            check_set_midpoint(&s, SetMidpointMode::Dmc).unwrap().verdict,
            check_fn_midpoint(&delta, MidpointMode::Global).unwrap().verdict
        );
    }

    #[test]
    fn argmin_holes_replay(f in any_table(), p in proptest::collection::vec(-2i64..=2, 3)) {
        let probe: Vec<Rational> = p[..f.dim()].iter().map(|&v| Rational::from_integer(v.into())).collect();
        let r = check_argmin_characterization(&f, &[probe]).unwrap();
        if let Some(w) = &r.witness {
            prop_assert!(w.replay(&f));
            prop_assert!(!check_fn_integrally_convex(&f).unwrap().verdict);
        }
    }

    #[test]
    fn quadratic_lnat_criterion_matches_table(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let q = SymmetricMatrix::from_ints(&[&[a, b], &[b, c]]).unwrap();
        let v = classify_quadratic(&q, &[0, 1]).unwrap();
        let f = DiscreteFunction::from_fn(IntegerBox::cube(2, -2, 2).unwrap(), |p| {
            let (x, y) = (p.0[0], p.0[1]);
            ExtendedValue::int(a * x * x + 2 * b * x * y + c * y * y)
        })
        .unwrap();
        // the criterion is exact; on a finite box it may only under-report
        if v.lnat_in_y {
            prop_assert!(check_fn_lnat(&f).unwrap().verdict);
        }
        if v.ic_sufficient {
            prop_assert!(check_fn_integrally_convex(&f).unwrap().verdict);
        }
    }
}

#[test]
fn generated_instances_sit_in_their_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (k, b) in boxes().iter().cycle().take(30).enumerate() {
        let f = gen::separable_convex(&mut rng, b);
        assert!(check_fn_separable(&f).unwrap().verdict, "#{k}");
        assert_eq!(classify_chain(&f).unwrap().as_array(), [true; 5], "#{k}");
        let f = gen::lnat_function(&mut rng, b);
        assert!(classify_chain(&f).unwrap().lnat, "#{k}");
        let f = gen::dmc_function(&mut rng, b);
        assert!(classify_chain(&f).unwrap().global_dmc, "#{k}");
    }
}

#[test]
fn envelope_agrees_with_extension_on_integrally_convex_functions() {
    use dca_core::geometry::{convex_envelope_value, local_convex_extension};
    use dca_core::RationalPoint;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for b in boxes().iter().cycle().take(12) {
        let f = gen::integrally_convex_function(&mut rng, b);
        let doubled = IntegerBox::new(b.lo().scale(2), b.hi().scale(2)).unwrap();
        for p in doubled.points() {
            let x = RationalPoint(p.0.iter().map(|&v| dca_core::value::ratio(v, 2)).collect());
            assert_eq!(local_convex_extension(&f, &x).unwrap().0, convex_envelope_value(&f, &x).unwrap(), "{x}");
        }
    }
}
