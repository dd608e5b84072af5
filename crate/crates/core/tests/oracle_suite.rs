//! Jet-based pointwise oracle against the symbolic pipeline.

use curvlab_core::expr::{parse_expression, Chart, Expression, Rat};
use curvlab_core::geometry::{oracle_check, MetricSpec};
use curvlab_core::interface::fixture_metric;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Random positive rationals; positivity keeps all fixture denominators away
/// from their zero sets.
fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| rat(rng.gen_range(1..=9), rng.gen_range(1..=4)))
        .collect()
}

#[test]
fn reference_metric_agrees_at_ten_random_points() {
    let m = fixture_metric();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let p = random_point(&mut rng, 4);
        let report = oracle_check(&m, &p, 3).unwrap();
        assert!(
            report.agrees(),
            "mismatches at {p:?}: {:?}",
            report.mismatches
        );
        assert!(report.compared > 1000);
    }
}

#[test]
fn reference_value_at_unit_point() {
    let m = fixture_metric();
    let ones: Vec<Rat> = (0..4).map(|_| rat(1, 1)).collect();
    let report = oracle_check(&m, &ones, 3).unwrap();
    assert!(report.agrees());
    // R_1212 = 1/(4 x1) evaluates to 1/4 there; confirmed on both routes by
    // the oracle, spot-check the symbolic one here.
    let data = curvlab_core::geometry::CurvatureData::new(&m);
    assert_eq!(
        data.riemann.get(&[0, 1, 0, 1]).evaluate(&ones).unwrap(),
        rat(1, 4)
    );
}

#[test]
fn flat_metric_all_zero_both_routes() {
    let chart = Chart::new(vec!["x1", "x2", "x3"]).unwrap();
    let one = parse_expression("1", &chart).unwrap();
    let zero = Expression::zero(&chart);
    let comps = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();
    let m = MetricSpec::new(chart, comps).unwrap();
    let p = vec![rat(2, 1), rat(-1, 2), rat(5, 3)];
    let report = oracle_check(&m, &p, 3).unwrap();
    assert!(report.agrees());
}

#[test]
fn random_polynomial_metrics_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let chart = Chart::new(names).unwrap();
        let comps: Vec<Vec<Expression>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i != j {
                            Expression::zero(&chart)
                        } else {
                            let c = rng.gen_range(1..=3);
                            let v = rng.gen_range(0..n) + 1;
                            parse_expression(&format!("{c} + x{v}^2"), &chart).unwrap()
                        }
                    })
                    .collect()
            })
            .collect();
        let m = MetricSpec::new(chart, comps).unwrap();
        let p = random_point(&mut rng, n);
        let report = oracle_check(&m, &p, 3).unwrap();
        assert!(report.agrees(), "mismatch: {:?}", report.mismatches);
    }
}

#[test]
fn pole_points_are_rejected() {
    let m = fixture_metric();
    // x1 = 0 makes det(g) vanish
    let p = vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(1, 1)];
    assert!(oracle_check(&m, &p, 3).is_err());
}
