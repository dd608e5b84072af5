//! Second-Bianchi consequences: the (J, delta, omega) forms, the consequence
//! residual, its contraction, the curvature reconstruction, and the two
//! scalar relations, with the notational reading F(S(X_J, X)) := S(X_F, X)
//! (outer form raised into the first Ricci slot).

use super::forms::{FormFamily9, OneForm};
use crate::expr::{Expression, Rat};
use crate::geometry::{
    kulkarni_nomizu, raise, CurvatureData, GeometryError, TensorField, Valence,
};

#[derive(Debug, Clone)]
pub struct BianchiForms {
    pub j: OneForm,
    pub delta: OneForm,
    pub omega: OneForm,
    pub epsilon: OneForm,
    /// E(X1,X2) = S(X_J,X1) delta(X2) + S(X_J,X2) delta(X1)
    ///          + J(X1) eps(X2) + J(X2) eps(X1)
    pub e: TensorField,
    /// F(X1,X2) = 2 J(X1) J(X2) + (n-2)[J(X1) delta(X2) + J(X2) delta(X1)]
    pub f: TensorField,
    /// Associated vector field of J.
    pub x_j: TensorField,
    /// J(X_J) = g^{ij} J_i J_j
    pub j_of_xj: Expression,
}

pub fn bianchi_forms(f: &FormFamily9, data: &CurvatureData) -> Result<BianchiForms, GeometryError> {
    if f.chart != *data.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let chart = data.chart().clone();
    let n = data.dim();
    let j = f.a().sub(&f.b().scale_i64(2));
    let delta = f.alpha().sub(&f.beta().scale_i64(2));
    let omega = f.theta().sub(&f.phi().scale_i64(2));
    let x_j = raise(&j.to_tensor(), &data.ginv)?;
    let x_delta = raise(&delta.to_tensor(), &data.ginv)?;
    let s_j = pair_into_ricci(data, &x_j); // S(X_J, X_c)
    let s_delta = pair_into_ricci(data, &x_delta);
    // eps(X) = S(X_delta, X) - (n-1) omega(X) - r delta(X)
    let epsilon = s_delta
        .sub(&omega.scale_i64(n as i64 - 1))
        .sub(&delta.scale(&data.scalar));
    let e = TensorField::build_sym2(&chart, |a, b| {
        s_j.get(a)
            .mul(delta.get(b))
            .add(&s_j.get(b).mul(delta.get(a)))
            .add(&j.get(a).mul(epsilon.get(b)))
            .add(&j.get(b).mul(epsilon.get(a)))
    });
    let fmat = TensorField::build_sym2(&chart, |a, b| {
        j.get(a)
            .mul(j.get(b))
            .mul_i64(2)
            .add(&j.get(a).mul(delta.get(b)).mul_i64(n as i64 - 2))
            .add(&j.get(b).mul(delta.get(a)).mul_i64(n as i64 - 2))
    });
    let mut j_of_xj = Expression::zero(&chart);
    for c in 0..n {
        j_of_xj = j_of_xj.add(&j.get(c).mul(x_j.get(&[c])));
    }
    Ok(BianchiForms {
        j,
        delta,
        omega,
        epsilon,
        e,
        f: fmat,
        x_j,
        j_of_xj,
    })
}

/// One-form X_c -> S(V, X_c) for a vector field V.
fn pair_into_ricci(data: &CurvatureData, v: &TensorField) -> OneForm {
    let chart = data.chart().clone();
    let n = chart.dim();
    let mut out = OneForm::zero(&chart);
    for c in 0..n {
        let mut acc = Expression::zero(&chart);
        for a in 0..n {
            let s = data.ricci.get(&[a, c]);
            let vv = v.get(&[a]);
            if !s.is_zero() && !vv.is_zero() {
                acc = acc.add(&s.mul(vv));
            }
        }
        out.set(c, acc);
    }
    out
}

/// Left side of the second-Bianchi consequence as a (0,5) residual,
/// direction slot last.
pub fn bianchi_consequence_residual(data: &CurvatureData, bf: &BianchiForms) -> TensorField {
    let chart = data.chart().clone();
    let r = &data.riemann;
    let hh = &data.g_wedge_s;
    let gg = &data.g_wedge_g;
    TensorField::build_skew_pairs5(&chart, |h, i, j, k, l| {
        let mut acc = bf.omega.get(l).mul(gg.get(&[h, i, j, k]));
        acc = acc.add(&bf.omega.get(i).mul(gg.get(&[l, h, j, k])));
        acc = acc.add(&bf.omega.get(h).mul(gg.get(&[i, l, j, k])));
        acc = acc.add(&bf.delta.get(l).mul(hh.get(&[h, i, j, k])));
        acc = acc.add(&bf.delta.get(i).mul(hh.get(&[l, h, j, k])));
        acc = acc.add(&bf.delta.get(h).mul(hh.get(&[i, l, j, k])));
        acc = acc.add(&bf.j.get(l).mul(r.get(&[h, i, j, k])));
        acc = acc.add(&bf.j.get(i).mul(r.get(&[l, h, j, k])));
        acc = acc.add(&bf.j.get(h).mul(r.get(&[i, l, j, k])));
        acc
    })
}

/// Residual of the contracted consequence, a (0,3) tensor over (X1, X4, X5):
/// R(X_J, X4, X1, X5) minus the displayed right side.
pub fn contracted_consequence_residual(data: &CurvatureData, bf: &BianchiForms) -> TensorField {
    let chart = data.chart().clone();
    let n = chart.dim();
    let ni = n as i64;
    let g = data.metric.tensor();
    let s = &data.ricci;
    let r_scalar = &data.scalar;
    let x_delta = raise(&bf.delta.to_tensor(), &data.ginv).expect("one-form");
    let s_delta = pair_into_ricci(data, &x_delta);
    TensorField::from_fn(&chart, Valence { contra: 0, co: 3 }, |idx| {
        let (h, k, l) = (idx[0], idx[1], idx[2]);
        let mut lhs = Expression::zero(&chart);
        for m in 0..n {
            let xj = bf.x_j.get(&[m]);
            let rr = data.riemann.get(&[m, k, h, l]);
            if !xj.is_zero() && !rr.is_zero() {
                lhs = lhs.add(&xj.mul(rr));
            }
        }
        let brace = |c: usize| -> Expression {
            bf.omega
                .get(c)
                .mul_i64(ni - 2)
                .add(&bf.delta.get(c).mul(r_scalar))
                .sub(s_delta.get(c))
        };
        let jterm = |c: usize| -> Expression { bf.j.get(c).add(&bf.delta.get(c).mul_i64(ni - 3)) };
        let rhs = brace(l)
            .mul(g.get(&[h, k]))
            .sub(&brace(h).mul(g.get(&[k, l])))
            .add(&jterm(l).mul(s.get(&[h, k])))
            .sub(&jterm(h).mul(s.get(&[k, l])));
        lhs.sub(&rhs)
    })
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub reconstructed: TensorField,
    pub matches_riemann: bool,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ReconstructError {
    #[error("J is null: J(X_J) is identically zero, reconstruction undefined")]
    JNull,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Curvature reconstruction
/// R^ = [2 delta(X_J) g^S + 2 omega(X_J) g^g + E^g + F^S] / (2 J(X_J)),
/// compared exactly against the pipeline's R.
pub fn reconstruct_curvature(
    data: &CurvatureData,
    bf: &BianchiForms,
) -> Result<Reconstruction, ReconstructError> {
    if bf.j_of_xj.is_zero() {
        return Err(ReconstructError::JNull);
    }
    let chart = data.chart().clone();
    let n = chart.dim();
    let mut delta_xj = Expression::zero(&chart);
    let mut omega_xj = Expression::zero(&chart);
    for c in 0..n {
        delta_xj = delta_xj.add(&bf.delta.get(c).mul(bf.x_j.get(&[c])));
        omega_xj = omega_xj.add(&bf.omega.get(c).mul(bf.x_j.get(&[c])));
    }
    let e_wedge_g = kulkarni_nomizu(&bf.e, data.metric.tensor())?;
    let f_wedge_s = kulkarni_nomizu(&bf.f, &data.ricci)?;
    let bracket = data
        .g_wedge_s
        .scale_expr(&delta_xj.mul_i64(2))
        .add(&data.g_wedge_g.scale_expr(&omega_xj.mul_i64(2)))
        .add(&e_wedge_g)
        .add(&f_wedge_s);
    let scale = Expression::from_rat(&chart, Rat::new(1.into(), 2.into()))
        .div(&bf.j_of_xj)
        .expect("J(X_J) nonzero");
    let reconstructed = bracket.scale_expr(&scale);
    let matches_riemann = reconstructed.sub(&data.riemann).is_identically_zero();
    Ok(Reconstruction { reconstructed, matches_riemann })
}

#[derive(Debug, Clone)]
pub struct ScalarRelationResiduals {
    /// (0,2) residual of the doubly contracted relation.
    pub cn_r: TensorField,
    /// (0,1) residual of the scalar relation.
    pub scalar: TensorField,
}

pub fn scalar_relation_residuals(data: &CurvatureData, bf: &BianchiForms) -> ScalarRelationResiduals {
    let chart = data.chart().clone();
    let n = chart.dim();
    let ni = n as i64;
    let r = &data.scalar;
    let s_j = pair_into_ricci(data, &bf.x_j);
    let x_delta = raise(&bf.delta.to_tensor(), &data.ginv).expect("one-form");
    let s_delta = pair_into_ricci(data, &x_delta);
    let half_nn = Rat::new(((ni - 1) * (ni - 2)).into(), 2.into());
    let cn_r = TensorField::build_sym2(&chart, |i, j| {
        let jj = bf.j.get(i).mul(bf.j.get(j)).mul(r);
        let sj_sym = bf
            .j
            .get(i)
            .mul(s_j.get(j))
            .add(&bf.j.get(j).mul(s_j.get(i)));
        let om_sym = bf
            .j
            .get(j)
            .mul(bf.omega.get(i))
            .add(&bf.j.get(i).mul(bf.omega.get(j)));
        let de_sym = bf
            .j
            .get(j)
            .mul(bf.delta.get(i))
            .add(&bf.j.get(i).mul(bf.delta.get(j)));
        let sd_sym = bf
            .j
            .get(j)
            .mul(s_delta.get(i))
            .add(&bf.j.get(i).mul(s_delta.get(j)));
        jj.sub(&sj_sym)
            .sub(&om_sym.mul_rat(&half_nn))
            .add(&de_sym.mul(r).mul_i64(ni - 2))
            .sub(&sd_sym.mul_i64(ni - 2))
    });
    let mut scalar = TensorField::zeros(&chart, Valence { contra: 0, co: 1 });
    for c in 0..n {
        let v = bf
            .j
            .get(c)
            .add(&bf.delta.get(c).mul_i64(2 * (ni - 2)))
            .mul(r)
            .sub(&s_j.get(c).mul_i64(2))
            .add(&bf.omega.get(c).mul_i64((ni - 1) * (ni - 2)))
            .sub(&s_delta.get(c).mul_i64(2 * (ni - 2)));
        scalar.set(&[c], v);
    }
    ScalarRelationResiduals { cn_r, scalar }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expression, Chart};
    use crate::geometry::MetricSpec;

    fn flat4() -> CurvatureData {
        let chart = Chart::new(vec!["x1", "x2", "x3", "x4"]).unwrap();
        let one = parse_expression("1", &chart).unwrap();
        let zero = Expression::zero(&chart);
        let comps = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        CurvatureData::new(&MetricSpec::new(chart, comps).unwrap())
    }

    #[test]
    fn degenerate_families_give_zero_forms() {
        // A = 2B, alpha = 2 beta, theta = 2 phi kills J, delta, omega.
        let data = flat4();
        let chart = data.chart().clone();
        let mut f = FormFamily9::zero(&chart);
        let mut b = OneForm::zero(&chart);
        b.set(1, parse_expression("x2", &chart).unwrap());
        f.set("A", b.scale_i64(2));
        f.set("B", b.clone());
        let mut be = OneForm::zero(&chart);
        be.set(0, parse_expression("3", &chart).unwrap());
        f.set("alpha", be.scale_i64(2));
        f.set("beta", be.clone());
        let mut ph = OneForm::zero(&chart);
        ph.set(3, parse_expression("x1*x4", &chart).unwrap());
        f.set("theta", ph.scale_i64(2));
        f.set("phi", ph);
        let bf = bianchi_forms(&f, &data).unwrap();
        assert!(bf.j.is_zero() && bf.delta.is_zero() && bf.omega.is_zero());
        assert!(bf.epsilon.is_zero());
        assert!(bf.e.is_identically_zero() && bf.f.is_identically_zero());
        assert!(bianchi_consequence_residual(&data, &bf).is_identically_zero());
        let sr = scalar_relation_residuals(&data, &bf);
        assert!(sr.cn_r.is_identically_zero() && sr.scalar.is_identically_zero());
    }

    #[test]
    fn zero_forms_reconstruction_hits_the_null_branch() {
        let data = flat4();
        let f = FormFamily9::zero(data.chart());
        let bf = bianchi_forms(&f, &data).unwrap();
        assert_eq!(
            reconstruct_curvature(&data, &bf).unwrap_err(),
            ReconstructError::JNull
        );
    }

    #[test]
    fn flat_omega_only_consequence() {
        // On a flat metric with only omega nonzero the (0,5) residual is the
        // pure G combination; the contracted residual specializes to
        // -(n-2)[omega_l g_hk - omega_h g_kl].
        let data = flat4();
        let chart = data.chart().clone();
        let mut omega = OneForm::zero(&chart);
        omega.set(0, parse_expression("x2", &chart).unwrap());
        let bf = BianchiForms {
            j: OneForm::zero(&chart),
            delta: OneForm::zero(&chart),
            omega: omega.clone(),
            epsilon: OneForm::zero(&chart),
            e: TensorField::zeros(&chart, Valence { contra: 0, co: 2 }),
            f: TensorField::zeros(&chart, Valence { contra: 0, co: 2 }),
            x_j: TensorField::zeros(&chart, Valence { contra: 1, co: 0 }),
            j_of_xj: Expression::zero(&chart),
        };
        let res5 = bianchi_consequence_residual(&data, &bf);
        assert!(!res5.is_identically_zero());
        let res3 = contracted_consequence_residual(&data, &bf);
        let g = data.metric.tensor();
        let n = 4i64;
        for (idx, got) in res3.iter() {
            let (h, k, l) = (idx[0], idx[1], idx[2]);
            let expect = omega
                .get(l)
                .mul(g.get(&[h, k]))
                .sub(&omega.get(h).mul(g.get(&[k, l])))
                .mul_i64(-(n - 2));
            assert_eq!(got, &expect, "at {idx:?}");
        }
    }
}
