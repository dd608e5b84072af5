//! Residual builders for the defining equation, its reduction, the
//! Ricci-level contraction, and the instance checkers from the basic-results
//! section. Every residual is LHS minus RHS of the corresponding display.

use super::forms::{FormFamily15, FormFamily9, OneForm};
use crate::expr::{Expression, Rat};
use crate::geometry::{
    raise, CurvatureData, GeometryError, Symmetry, TensorField, Valence,
};

/// Residual of the full fifteen-form defining equation, stored as a (0,5)
/// tensor with the differentiation direction last. Not skew in (h,i) for
/// independent barred forms, so it is computed densely.
pub fn ews_residual(data: &CurvatureData, f: &FormFamily15) -> Result<TensorField, GeometryError> {
    if f.chart != *data.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let chart = data.chart().clone();
    let r = &data.riemann;
    let hh = &data.g_wedge_s;
    let gg = &data.g_wedge_g;
    let nr = &data.nabla_riemann;
    Ok(TensorField::from_fn(
        &chart,
        Valence { contra: 0, co: 5 },
        |idx| {
            let (h, i, j, k, l) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
            let terms = full_terms(f, r, hh, gg, h, i, j, k, l);
            let mut parts = vec![nr.get(idx).clone()];
            parts.extend(terms.into_iter().map(|t| t.neg()));
            Expression::sum(&chart, parts.iter())
        },
    ))
}

fn push_term(
    out: &mut Vec<Expression>,
    form: &OneForm,
    at: usize,
    tensor: &TensorField,
    idx: [usize; 4],
) {
    let c = form.get(at);
    if c.is_zero() {
        return;
    }
    let t = tensor.get(&idx);
    if t.is_zero() {
        return;
    }
    out.push(c.mul(t));
}

#[allow(clippy::too_many_arguments)]
fn full_terms(
    f: &FormFamily15,
    r: &TensorField,
    hh: &TensorField,
    gg: &TensorField,
    h: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Vec<Expression> {
    let mut out = Vec::with_capacity(15);
    push_term(&mut out, f.a(), l, r, [h, i, j, k]);
    push_term(&mut out, f.b(), h, r, [l, i, j, k]);
    push_term(&mut out, f.b_bar(), i, r, [h, l, j, k]);
    push_term(&mut out, f.d(), j, r, [h, i, l, k]);
    push_term(&mut out, f.d_bar(), k, r, [h, i, j, l]);
    push_term(&mut out, f.alpha(), l, hh, [h, i, j, k]);
    push_term(&mut out, f.beta(), h, hh, [l, i, j, k]);
    push_term(&mut out, f.beta_bar(), i, hh, [h, l, j, k]);
    push_term(&mut out, f.gamma(), j, hh, [h, i, l, k]);
    push_term(&mut out, f.gamma_bar(), k, hh, [h, i, j, l]);
    push_term(&mut out, f.theta(), l, gg, [h, i, j, k]);
    push_term(&mut out, f.phi(), h, gg, [l, i, j, k]);
    push_term(&mut out, f.phi_bar(), i, gg, [h, l, j, k]);
    push_term(&mut out, f.psi(), j, gg, [h, i, l, k]);
    push_term(&mut out, f.psi_bar(), k, gg, [h, i, j, l]);
    out
}

#[allow(clippy::too_many_arguments)]
fn reduced_terms(
    f: &FormFamily9,
    r: &TensorField,
    hh: &TensorField,
    gg: &TensorField,
    h: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Vec<Expression> {
    let mut out = Vec::with_capacity(15);
    push_term(&mut out, f.a(), l, r, [h, i, j, k]);
    push_term(&mut out, f.b(), h, r, [l, i, j, k]);
    push_term(&mut out, f.b(), i, r, [h, l, j, k]);
    push_term(&mut out, f.d(), j, r, [h, i, l, k]);
    push_term(&mut out, f.d(), k, r, [h, i, j, l]);
    push_term(&mut out, f.alpha(), l, hh, [h, i, j, k]);
    push_term(&mut out, f.beta(), h, hh, [l, i, j, k]);
    push_term(&mut out, f.beta(), i, hh, [h, l, j, k]);
    push_term(&mut out, f.gamma(), j, hh, [h, i, l, k]);
    push_term(&mut out, f.gamma(), k, hh, [h, i, j, l]);
    push_term(&mut out, f.theta(), l, gg, [h, i, j, k]);
    push_term(&mut out, f.phi(), h, gg, [l, i, j, k]);
    push_term(&mut out, f.phi(), i, gg, [h, l, j, k]);
    push_term(&mut out, f.psi(), j, gg, [h, i, l, k]);
    push_term(&mut out, f.psi(), k, gg, [h, i, j, l]);
    out
}

/// Residual of the reduced nine-form equation. With the barred forms tied,
/// the residual is skew in both index pairs, so only orbit representatives
/// are computed.
pub fn reduced_ews_residual(
    data: &CurvatureData,
    f: &FormFamily9,
) -> Result<TensorField, GeometryError> {
    if f.chart != *data.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let chart = data.chart().clone();
    let r = &data.riemann;
    let hh = &data.g_wedge_s;
    let gg = &data.g_wedge_g;
    let nr = &data.nabla_riemann;
    Ok(TensorField::build_skew_pairs5(&chart, |h, i, j, k, l| {
        let terms = reduced_terms(f, r, hh, gg, h, i, j, k, l);
        let mut parts = vec![nr.get(&[h, i, j, k, l]).clone()];
        parts.extend(terms.into_iter().map(|t| t.neg()));
        Expression::sum(&chart, parts.iter())
    }))
}

/// Scans residual components in orbit order and stops at the first nonzero
/// one; used by negative controls where the full tensor is not needed.
pub fn reduced_ews_first_nonzero(
    data: &CurvatureData,
    f: &FormFamily9,
) -> Result<Option<(Vec<usize>, Expression)>, GeometryError> {
    if f.chart != *data.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let chart = data.chart().clone();
    let n = data.dim();
    let r = &data.riemann;
    let hh = &data.g_wedge_s;
    let gg = &data.g_wedge_g;
    let nr = &data.nabla_riemann;
    for h in 0..n {
        for i in (h + 1)..n {
            for j in 0..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let terms = reduced_terms(f, r, hh, gg, h, i, j, k, l);
                        let mut parts = vec![nr.get(&[h, i, j, k, l]).clone()];
                        parts.extend(terms.into_iter().map(|t| t.neg()));
                        let v = Expression::sum(&chart, parts.iter());
                        if !v.is_zero() {
                            return Ok(Some((vec![h, i, j, k, l], v)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The six Ricci-level combinations of the contracted equation.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciLevelForms {
    pub f1: OneForm,
    pub f2: OneForm,
    pub f3: OneForm,
    pub f4: OneForm,
    pub f5: OneForm,
    pub f6: OneForm,
}

pub fn ricci_level_forms(f: &FormFamily9, data: &CurvatureData) -> RicciLevelForms {
    let n = data.dim() as i64;
    let r = &data.scalar;
    let f1 = f
        .a()
        .add(&f.alpha().scale_i64(n - 2))
        .add(f.beta())
        .add(f.gamma());
    let f2 = f.b().add(&f.beta().scale_i64(n - 3));
    let f3 = f.d().add(&f.gamma().scale_i64(n - 3));
    let f4 = f
        .theta()
        .scale_i64(n - 1)
        .add(f.phi())
        .add(f.psi())
        .add(&f.alpha().scale(r));
    let f5 = f.phi().scale_i64(n - 2).add(&f.beta().scale(r));
    let f6 = f.psi().scale_i64(n - 2).add(&f.gamma().scale(r));
    RicciLevelForms { f1, f2, f3, f4, f5, f6 }
}

/// Residual of the Ricci-level equation (direction last): nabla S minus the
/// six f-form terms and the curvature-correction terms.
pub fn ricci_level_residual(
    data: &CurvatureData,
    f: &FormFamily9,
) -> Result<TensorField, GeometryError> {
    if f.chart != *data.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let chart = data.chart().clone();
    let n = data.dim();
    let lf = ricci_level_forms(f, data);
    let s = &data.ricci;
    let g = data.metric.tensor();
    let xb = raise(&f.b().to_tensor(), &data.ginv)?;
    let xd = raise(&f.d().to_tensor(), &data.ginv)?;
    let beta_l = data.apply_ricci(&f.beta().to_tensor())?;
    let gamma_l = data.apply_ricci(&f.gamma().to_tensor())?;
    let riem = &data.riemann;
    Ok(TensorField::from_fn(
        &chart,
        Valence { contra: 0, co: 3 },
        |idx| {
            let (i, j, l) = (idx[0], idx[1], idx[2]);
            let mut rhs = lf.f1.get(l).mul(s.get(&[i, j]));
            rhs = rhs.add(&lf.f2.get(i).mul(s.get(&[l, j])));
            rhs = rhs.add(&lf.f3.get(j).mul(s.get(&[i, l])));
            rhs = rhs.add(&lf.f4.get(l).mul(g.get(&[i, j])));
            rhs = rhs.add(&lf.f5.get(i).mul(g.get(&[l, j])));
            rhs = rhs.add(&lf.f6.get(j).mul(g.get(&[i, l])));
            // -B(R(X2,X5)X3) = -R(X2,X5,X3,X_B)
            for d in 0..n {
                let v = xb.get(&[d]);
                if !v.is_zero() {
                    let rr = riem.get(&[i, l, j, d]);
                    if !rr.is_zero() {
                        rhs = rhs.sub(&v.mul(rr));
                    }
                }
            }
            // +D(R(X5,X3)X2) = +R(X5,X3,X2,X_D)
            for d in 0..n {
                let v = xd.get(&[d]);
                if !v.is_zero() {
                    let rr = riem.get(&[l, j, i, d]);
                    if !rr.is_zero() {
                        rhs = rhs.add(&v.mul(rr));
                    }
                }
            }
            let bl = beta_l.get(&[l]).add(gamma_l.get(&[l]));
            rhs = rhs.add(&bl.mul(g.get(&[i, j])));
            rhs = rhs.sub(&beta_l.get(&[i]).mul(g.get(&[l, j])));
            rhs = rhs.sub(&gamma_l.get(&[j]).mul(g.get(&[l, i])));
            data.nabla_ricci.get(&[i, j, l]).sub(&rhs)
        },
    ))
}

/// The sufficiency condition for the Ricci-level class: the one-form
/// X -> B(LX) + D(LX) + (n-1)[beta(LX) + gamma(LX)].
pub fn gwrs_condition(data: &CurvatureData, f: &FormFamily9) -> Result<OneForm, GeometryError> {
    if f.chart != *data.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let n = data.dim() as i64;
    let combo = f
        .b()
        .add(f.d())
        .add(&f.beta().add(f.gamma()).scale_i64(n - 1));
    let t = data.apply_ricci(&combo.to_tensor())?;
    Ok(OneForm::from_tensor(&t))
}

/// Residual of the two-form identity claimed for generalized curvature
/// tensors: A(X5)K(X1,X2,X3,X4) + B(X5)K(X1,X4,X2,X3)
/// minus {A(X5) - B(X5)/2} K(X1,X2,X3,X4).
pub fn prop_identity_residual(
    k_tensor: &TensorField,
    a: &OneForm,
    b: &OneForm,
) -> Result<TensorField, GeometryError> {
    if k_tensor.rank() != 4 || k_tensor.valence().contra != 0 {
        return Err(GeometryError::BadValence {
            expected: "(0,4)".into(),
            got: k_tensor.valence().to_string(),
        });
    }
    if k_tensor.symmetry() != Symmetry::RiemannType {
        return Err(GeometryError::NotSymmetric);
    }
    let chart = k_tensor.chart().clone();
    let half = Expression::from_rat(&chart, Rat::new(1.into(), 2.into()));
    Ok(TensorField::from_fn(
        &chart,
        Valence { contra: 0, co: 5 },
        |idx| {
            let (h, i, j, k, l) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
            let lhs = a
                .get(l)
                .mul(k_tensor.get(&[h, i, j, k]))
                .add(&b.get(l).mul(k_tensor.get(&[h, k, i, j])));
            let rhs = a
                .get(l)
                .sub(&b.get(l).mul(&half))
                .mul(k_tensor.get(&[h, i, j, k]));
            lhs.sub(&rhs)
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaVerdict {
    /// The hypothesis fails: the symmetrized product is not identically zero.
    SymmetrizationNonzero,
    AZero,
    KZero,
    /// Hypothesis holds but neither disjunct does; would falsify the lemma.
    Counterexample,
}

/// Checks A(X1)K(X2,X5,X3,X4) + A(X2)K(X1,X5,X3,X4) == 0 and reports which
/// disjunct of the lemma's conclusion holds.
pub fn lemma_witness(k_tensor: &TensorField, a: &OneForm) -> Result<LemmaVerdict, GeometryError> {
    if k_tensor.rank() != 4 || k_tensor.symmetry() != Symmetry::RiemannType {
        return Err(GeometryError::NotSymmetric);
    }
    let n = k_tensor.dim();
    for x1 in 0..n {
        for x2 in 0..n {
            for x5 in 0..n {
                for x3 in 0..n {
                    for x4 in 0..n {
                        let v = a
                            .get(x1)
                            .mul(k_tensor.get(&[x2, x5, x3, x4]))
                            .add(&a.get(x2).mul(k_tensor.get(&[x1, x5, x3, x4])));
                        if !v.is_zero() {
                            return Ok(LemmaVerdict::SymmetrizationNonzero);
                        }
                    }
                }
            }
        }
    }
    if a.is_zero() {
        return Ok(LemmaVerdict::AZero);
    }
    if k_tensor.is_identically_zero() {
        return Ok(LemmaVerdict::KZero);
    }
    Ok(LemmaVerdict::Counterexample)
}
