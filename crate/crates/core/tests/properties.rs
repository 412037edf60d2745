mod common;

use lattice_greedy::profit::{GeneratorParams, ProfitOracle};
use lattice_greedy::rng::RngStream;
use lattice_greedy::solvers::{bsdg_solve, exhaustive_opt, unit_double_greedy};
use lattice_greedy::verification::{check_dr, ratio_harness, CheckConfig, HarnessCase};
use lattice_greedy::{BoundVector, Error, FnObjective, LatticePoint, Objective};
use proptest::prelude::*;

use common::{all_points, direct_opt, direct_profit};

/// Pairwise DR check written from the definition.
fn brute_dr_holds<O: Objective>(obj: &O, tol: f64) -> bool {
    let caps = obj.bound().caps().to_vec();
    let pts = all_points(&caps);
    let f = |x: &LatticePoint| obj.evaluate(x).unwrap();
    for x in &pts {
        for y in &pts {
            if !x.componentwise_le(y) {
                continue;
            }
            for e in 0..caps.len() {
                if y.levels()[e] == caps[e] {
                    continue;
                }
                let up = |p: &LatticePoint| {
                    let mut v = p.levels().to_vec();
                    v[e] += 1;
                    LatticePoint::new(v)
                };
                if f(&up(x)) - f(x) < f(&up(y)) - f(y) - tol {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn profit_matches_definition_everywhere() {
    let mut rng = RngStream::new(31);
    for _ in 0..10 {
        let inst = GeneratorParams::default().generate(&mut rng).unwrap();
        let oracle = ProfitOracle::new(inst.clone());
        let caps: Vec<u64> = inst.sources().iter().map(|s| s.capacity).collect();
        for m in all_points(&caps) {
            assert!((oracle.profit(&m).unwrap() - direct_profit(&inst, &m)).abs() < 1e-12);
        }
        let (_, opt) = exhaustive_opt(&oracle).unwrap();
        assert!((opt - direct_opt(&inst)).abs() < 1e-12);
    }
}

#[test]
fn dr_checker_agrees_with_brute_force() {
    let bound = BoundVector::new(vec![3, 2, 2]).unwrap();
    let concave = FnObjective::new(bound.clone(), |x: &LatticePoint| {
        let s: f64 = x.levels().iter().map(|&v| v as f64).sum();
        5.0 * s - s * s + x.levels()[0] as f64
    });
    let supermodular = FnObjective::new(bound.clone(), |x: &LatticePoint| {
        (x.levels()[0] * x.levels()[1]) as f64
    });
    let convex = FnObjective::new(bound, |x: &LatticePoint| (x.levels()[2] as f64).powi(2));
    let config = CheckConfig::default();
    assert!(brute_dr_holds(&concave, 1e-9));
    assert!(check_dr(&concave, &config).unwrap().passed());
    assert!(!brute_dr_holds(&supermodular, 1e-9));
    assert!(!check_dr(&supermodular, &config).unwrap().passed());
    assert!(!brute_dr_holds(&convex, 1e-9));
    assert!(!check_dr(&convex, &config).unwrap().passed());

    let mut rng = RngStream::new(8);
    for _ in 0..5 {
        let oracle = ProfitOracle::new(GeneratorParams::default().generate(&mut rng).unwrap());
        assert!(brute_dr_holds(&oracle, 1e-9));
    }
}

#[test]
fn harness_report_is_byte_identical() {
    let mut rng = RngStream::new(17);
    let cases: Vec<HarnessCase> = (0..12)
        .map(|id| HarnessCase {
            id,
            instance: GeneratorParams::default().generate(&mut rng).unwrap(),
        })
        .collect();
    let a = ratio_harness(&cases, 40, 4).unwrap().to_csv().unwrap();
    let b = ratio_harness(&cases, 40, 4).unwrap().to_csv().unwrap();
    assert_eq!(a, b);
}

fn table_objective(caps: Vec<u64>, values: Vec<f64>) -> FnObjective<impl Fn(&LatticePoint) -> f64> {
    let bound = BoundVector::new(caps).unwrap();
    let b2 = bound.clone();
    FnObjective::new(bound, move |x: &LatticePoint| {
        values[b2.rank(x) % values.len()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Arbitrary (mostly non-DR) objectives either solve inside the box or raise the DR error.
    #[test]
    fn non_dr_objectives_never_escape_the_box(
        caps in prop::collection::vec(1u64..6, 1..4),
        values in prop::collection::vec(-10.0f64..10.0, 1..50),
        seed in any::<u64>(),
    ) {
        let obj = table_objective(caps, values);
        for r in [bsdg_solve(&obj, seed), unit_double_greedy(&obj, seed)] {
            match r {
                Ok(r) => prop_assert!(obj.bound().contains(&r.solution)),
                Err(Error::DrViolation { .. }) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn bsdg_output_stays_in_box_for_profit(seed in any::<u64>()) {
        let mut rng = RngStream::new(seed);
        let params = GeneratorParams { cap_range: (1, 30), ..GeneratorParams::default() };
        let oracle = ProfitOracle::new(params.generate(&mut rng).unwrap());
        let r = bsdg_solve(&oracle, seed).unwrap();
        prop_assert!(oracle.bound().contains(&r.solution));
        prop_assert!((r.value - direct_profit(oracle.instance(), &r.solution)).abs() < 1e-12);
    }
}
