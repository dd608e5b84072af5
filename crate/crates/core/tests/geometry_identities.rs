//! Randomized identity suite: Riemann symmetries, both Bianchi identities,
//! metric compatibility, Weyl tracelessness and contraction coherence, all
//! as exact Expression identities over seeded random diagonal metrics.

use curvlab_core::expr::{parse_expression, Chart, Expression};
use curvlab_core::geometry::{
    contract_metric, covariant_derivative, has_riemann_symmetries, riemann_dense,
    satisfies_first_bianchi, CurvatureData, MetricSpec,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0xC0FFEE;

/// Diagonal metric with monomial or low-degree binomial rational entries.
fn random_diagonal_metric(rng: &mut ChaCha8Rng, n: usize) -> MetricSpec {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let chart = Chart::new(names).unwrap();
    let comps: Vec<Vec<Expression>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        return Expression::zero(&chart);
                    }
                    let c = rng.gen_range(1..=3);
                    let v = rng.gen_range(0..n);
                    let e = rng.gen_range(0..=2);
                    let text = match rng.gen_range(0..4) {
                        0 => format!("{c}"),
                        1 => format!("{c}*x{}^{e}", v + 1),
                        2 => format!("1 + x{}^2", v + 1),
                        _ => format!("{c}*x{}", v + 1),
                    };
                    parse_expression(&text, &chart).unwrap()
                })
                .collect()
        })
        .collect();
    MetricSpec::new(chart, comps).unwrap()
}

fn metrics_under_test() -> Vec<MetricSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for n in [2usize, 3, 4] {
        for _ in 0..8 {
            out.push(random_diagonal_metric(&mut rng, n));
        }
    }
    out
}

fn second_bianchi_holds(data: &CurvatureData) -> bool {
    let n = data.dim();
    let nr = &data.nabla_riemann;
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s = nr
                            .get(&[h, i, j, k, l])
                            .add(nr.get(&[i, l, j, k, h]))
                            .add(nr.get(&[l, h, j, k, i]));
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[test]
fn randomized_identity_suite() {
    let metrics = metrics_under_test();
    assert!(metrics.len() >= 20);
    for (idx, m) in metrics.iter().enumerate() {
        let n = m.dim();
        let data = CurvatureData::new(m);
        // dense recomputation vs orbit-filled pipeline, then the symmetries
        let dense = riemann_dense(m);
        for (i, e) in dense.iter() {
            assert_eq!(e, data.riemann.get(&i), "metric #{idx}: dense/orbit mismatch at {i:?}");
        }
        assert!(has_riemann_symmetries(&dense), "metric #{idx}: R symmetries");
        assert!(satisfies_first_bianchi(&dense), "metric #{idx}: first Bianchi");
        assert!(second_bianchi_holds(&data), "metric #{idx}: second Bianchi");
        // metric compatibility
        let nabla_g = covariant_derivative(m.tensor(), m).unwrap();
        assert!(nabla_g.is_identically_zero(), "metric #{idx}: nabla g != 0");
        // Ricci is the (0,3)-contraction of Riemann over slots (1,4)
        let contracted = contract_metric(&data.riemann, 0, 3, &data.ginv).unwrap();
        for (i, e) in contracted.iter() {
            assert_eq!(e, data.ricci.get(&i), "metric #{idx}: ricci contraction at {i:?}");
        }
        // scalar is the trace of Ricci
        let tr = {
            let mut acc = Expression::zero(m.chart());
            for a in 0..n {
                for b in 0..n {
                    acc = acc.add(&data.ginv.get(&[a, b]).mul(data.ricci.get(&[a, b])));
                }
            }
            acc
        };
        assert_eq!(tr, data.scalar, "metric #{idx}: scalar trace");
        // Weyl: totally trace-free in n = 4; identically zero in n = 3
        if n >= 3 {
            let c = data.weyl().unwrap();
            if n == 3 {
                assert!(c.is_identically_zero(), "metric #{idx}: n=3 weyl");
            } else {
                for (sa, sb) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                    let t = contract_metric(&c, sa, sb, &data.ginv).unwrap();
                    assert!(
                        t.is_identically_zero(),
                        "metric #{idx}: weyl trace over ({sa},{sb})"
                    );
                }
            }
        }
    }
}

#[test]
fn kulkarni_nomizu_properties_on_random_symmetric_inputs() {
    use curvlab_core::geometry::kulkarni_nomizu;
    use curvlab_core::geometry::TensorField;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5a5a);
    let chart = Chart::new(vec!["x1", "x2", "x3"]).unwrap();
    for _ in 0..5 {
        let rand_sym = |rng: &mut ChaCha8Rng| {
            TensorField::build_sym2(&chart, |i, j| {
                let c = rng.gen_range(-2i64..=2);
                let v = rng.gen_range(0..3);
                parse_expression(&format!("{c}*x{}", v + 1), &chart)
                    .unwrap()
                    .mul_i64((i + j + 1) as i64)
            })
        };
        let q = rand_sym(&mut rng);
        let p = rand_sym(&mut rng);
        let qp = kulkarni_nomizu(&q, &p).unwrap();
        let pq = kulkarni_nomizu(&p, &q).unwrap();
        // symmetric in its operands
        for (i, e) in qp.iter() {
            assert_eq!(e, pq.get(&i));
        }
        // generalized curvature tensor: riemann symmetries + first Bianchi
        assert!(has_riemann_symmetries(&qp));
        assert!(satisfies_first_bianchi(&qp));
    }
}

#[test]
fn raise_then_lower_is_the_identity() {
    use curvlab_core::geometry::{lower, raise, TensorField, Valence};
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x11);
    for m in metrics_under_test().into_iter().step_by(5) {
        let chart = m.chart().clone();
        let n = chart.dim();
        let ginv = m.inverse();
        let mut form = TensorField::zeros(&chart, Valence { contra: 0, co: 1 });
        for i in 0..n {
            let c = rng.gen_range(-3i64..=3);
            let v = rng.gen_range(0..n) + 1;
            form.set(&[i], parse_expression(&format!("{c}*x{v}"), &chart).unwrap());
        }
        let raised = raise(&form, &ginv).unwrap();
        let lowered = lower(&raised, &m).unwrap();
        for i in 0..n {
            assert_eq!(lowered.get(&[i]), form.get(&[i]), "slot {i}");
        }
    }
    // on the flat identity metric raising keeps the components
    let chart = Chart::new(vec!["x1", "x2"]).unwrap();
    let comps = vec![
        vec![parse_expression("1", &chart).unwrap(), Expression::zero(&chart)],
        vec![Expression::zero(&chart), parse_expression("1", &chart).unwrap()],
    ];
    let m = MetricSpec::new(chart.clone(), comps).unwrap();
    let mut form = TensorField::zeros(&chart, Valence { contra: 0, co: 1 });
    form.set(&[0], parse_expression("x1+x2", &chart).unwrap());
    let raised = raise(&form, &m.inverse()).unwrap();
    assert_eq!(raised.get(&[0]), form.get(&[0]));
    assert!(raised.get(&[1]).is_zero());
}

#[test]
fn flat_two_dimensional_chart_is_flat() {
    // diag(1, x1^2) is a flat chart in disguise.
    let chart = Chart::new(vec!["x1", "x2"]).unwrap();
    let comps = vec![
        vec![parse_expression("1", &chart).unwrap(), Expression::zero(&chart)],
        vec![Expression::zero(&chart), parse_expression("x1^2", &chart).unwrap()],
    ];
    let m = MetricSpec::new(chart, comps).unwrap();
    assert!(riemann_dense(&m).is_identically_zero());
}

#[test]
fn constant_metric_has_zero_christoffel_and_riemann() {
    let chart = Chart::new(vec!["x1", "x2", "x3"]).unwrap();
    let p = |s: &str| parse_expression(s, &chart).unwrap();
    let comps = vec![
        vec![p("2"), p("1"), p("0")],
        vec![p("1"), p("3"), p("0")],
        vec![p("0"), p("0"), p("5")],
    ];
    let m = MetricSpec::new(chart, comps).unwrap();
    let data = CurvatureData::new(&m);
    assert!(data.gamma.nonzero().is_empty());
    assert!(data.riemann.is_identically_zero());
    assert!(data.ricci.is_identically_zero());
    assert!(data.scalar.is_zero());
}
