//! The curvature pipeline: Christoffel symbols, Riemann, Ricci, scalar and
//! Weyl curvature, Kulkarni–Nomizu products, covariant derivatives and index
//! gymnastics.
//!
//! Index conventions are pinned so that the embedded worked example
//! reproduces exactly:
//!   Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
//!   R_hijk     = g_hm (d_j Gamma^m_ki - d_k Gamma^m_ji
//!                      + Gamma^m_je Gamma^e_ki - Gamma^m_ke Gamma^e_ji)
//!   S_ij       = g^{hk} R_hijk,   r = g^{ij} S_ij
//! Covariant derivatives append the direction as the LAST index.

use super::metric::MetricSpec;
use super::tensor::{Symmetry, TensorField, Valence};
use crate::expr::{Chart, Expression, Rat};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GeometryError {
    #[error("weyl tensor needs dimension >= 3, got {0}")]
    WeylDimension(usize),
    #[error("chart mismatch between tensors")]
    ChartMismatch,
    #[error("kulkarni-nomizu operands must be symmetric (0,2) tensors")]
    NotSymmetric,
    #[error("expected valence {expected}, got {got}")]
    BadValence { expected: String, got: String },
    #[error("invalid slot pair ({0},{1})")]
    BadSlots(usize, usize),
}

/// Levi-Civita connection coefficients, symmetric in the lower pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelSymbols {
    chart: Chart,
    /// [k][i][j] flattened; Gamma^k_ij = Gamma^k_ji.
    comps: Vec<Expression>,
}

impl ChristoffelSymbols {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Expression {
        let n = self.chart.dim();
        &self.comps[(k * n + i) * n + j]
    }

    pub fn nonzero(&self) -> Vec<((usize, usize, usize), &Expression)> {
        let n = self.chart.dim();
        let mut out = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let e = self.get(k, i, j);
                    if !e.is_zero() {
                        out.push(((k, i, j), e));
                    }
                }
            }
        }
        out
    }
}

pub fn christoffel(m: &MetricSpec) -> ChristoffelSymbols {
    christoffel_with_inverse(m, &m.inverse())
}

fn christoffel_with_inverse(m: &MetricSpec, ginv: &TensorField) -> ChristoffelSymbols {
    let chart = m.chart().clone();
    let n = chart.dim();
    // dg[l][i][j] = d_l g_ij
    let mut dg = vec![Expression::zero(&chart); n * n * n];
    for i in 0..n {
        for j in i..n {
            for l in 0..n {
                let d = m.component(i, j).differentiate_index(l);
                dg[(l * n + i) * n + j] = d.clone();
                dg[(l * n + j) * n + i] = d;
            }
        }
    }
    let dg_at = |l: usize, i: usize, j: usize| &dg[(l * n + i) * n + j];
    let mut comps = vec![Expression::zero(&chart); n * n * n];
    let half = Expression::from_rat(&chart, Rat::new(1.into(), 2.into()));
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = Expression::zero(&chart);
                for l in 0..n {
                    let gkl = ginv.get(&[k, l]);
                    if gkl.is_zero() {
                        continue;
                    }
                    let sum = dg_at(i, j, l).add(dg_at(j, i, l)).sub(dg_at(l, i, j));
                    acc = acc.add(&gkl.mul(&sum));
                }
                let v = acc.mul(&half);
                comps[(k * n + i) * n + j] = v.clone();
                comps[(k * n + j) * n + i] = v;
            }
        }
    }
    ChristoffelSymbols { chart, comps }
}

/// Riemann curvature as a (0,4) tensor in the pinned convention,
/// computed on orbit representatives and filled by symmetry.
pub fn riemann(m: &MetricSpec) -> TensorField {
    let ginv = m.inverse();
    let gamma = christoffel_with_inverse(m, &ginv);
    riemann_from(m, &gamma)
}

fn riemann_from(m: &MetricSpec, gamma: &ChristoffelSymbols) -> TensorField {
    let chart = m.chart().clone();
    let n = chart.dim();
    let mut rup_memo: HashMap<(usize, usize, usize), Vec<Expression>> = HashMap::new();
    let mut rup = |i: usize, j: usize, k: usize| -> Vec<Expression> {
        if let Some(v) = rup_memo.get(&(i, j, k)) {
            return v.clone();
        }
        let mut column = Vec::with_capacity(n);
        for mm in 0..n {
            let mut v = gamma
                .get(mm, k, i)
                .differentiate_index(j)
                .sub(&gamma.get(mm, j, i).differentiate_index(k));
            for e in 0..n {
                let a = gamma.get(mm, j, e);
                let b = gamma.get(e, k, i);
                if !a.is_zero() && !b.is_zero() {
                    v = v.add(&a.mul(b));
                }
                let c = gamma.get(mm, k, e);
                let d = gamma.get(e, j, i);
                if !c.is_zero() && !d.is_zero() {
                    v = v.sub(&c.mul(d));
                }
            }
            column.push(v);
        }
        rup_memo.insert((i, j, k), column.clone());
        column
    };
    TensorField::build_riemann_like(&chart, |h, i, j, k| {
        let col = rup(i, j, k);
        let mut acc = Expression::zero(m.chart());
        for (mm, r) in col.iter().enumerate() {
            let ghm = m.component(h, mm);
            if !ghm.is_zero() && !r.is_zero() {
                acc = acc.add(&ghm.mul(r));
            }
        }
        acc
    })
}

/// Dense reference path for the same tensor, no symmetry fill. Used by the
/// identity checks so that the symmetry assertions are not vacuous.
pub fn riemann_dense(m: &MetricSpec) -> TensorField {
    let ginv = m.inverse();
    let gamma = christoffel_with_inverse(m, &ginv);
    let chart = m.chart().clone();
    let n = chart.dim();
    TensorField::from_fn(&chart, Valence { contra: 0, co: 4 }, |idx| {
        let (h, i, j, k) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = Expression::zero(&chart);
        for mm in 0..n {
            let ghm = m.component(h, mm);
            if ghm.is_zero() {
                continue;
            }
            let mut v = gamma
                .get(mm, k, i)
                .differentiate_index(j)
                .sub(&gamma.get(mm, j, i).differentiate_index(k));
            for e in 0..n {
                v = v.add(&gamma.get(mm, j, e).mul(gamma.get(e, k, i)));
                v = v.sub(&gamma.get(mm, k, e).mul(gamma.get(e, j, i)));
            }
            acc = acc.add(&ghm.mul(&v));
        }
        acc
    })
}

pub fn ricci(m: &MetricSpec) -> TensorField {
    let r = riemann(m);
    ricci_from(m, &m.inverse(), &r)
}

fn ricci_from(m: &MetricSpec, ginv: &TensorField, riem: &TensorField) -> TensorField {
    let chart = m.chart().clone();
    let n = chart.dim();
    TensorField::build_sym2(&chart, |i, j| {
        let mut acc = Expression::zero(&chart);
        for h in 0..n {
            for k in 0..n {
                let ghk = ginv.get(&[h, k]);
                let r = riem.get(&[h, i, j, k]);
                if !ghk.is_zero() && !r.is_zero() {
                    acc = acc.add(&ghk.mul(r));
                }
            }
        }
        acc
    })
}

pub fn scalar_curvature(m: &MetricSpec) -> Expression {
    let ginv = m.inverse();
    let s = ricci_from(m, &ginv, &riemann(m));
    scalar_from(m, &ginv, &s)
}

fn scalar_from(m: &MetricSpec, ginv: &TensorField, ricci: &TensorField) -> Expression {
    let n = m.dim();
    let mut acc = Expression::zero(m.chart());
    for i in 0..n {
        for j in 0..n {
            let gij = ginv.get(&[i, j]);
            let s = ricci.get(&[i, j]);
            if !gij.is_zero() && !s.is_zero() {
                acc = acc.add(&gij.mul(s));
            }
        }
    }
    acc
}

/// Ricci operator L^i_j = g^{ik} S_kj as a (1,1) tensor.
pub fn ricci_operator(m: &MetricSpec) -> TensorField {
    let ginv = m.inverse();
    let s = ricci_from(m, &ginv, &riemann(m));
    ricci_operator_from(m, &ginv, &s)
}

fn ricci_operator_from(m: &MetricSpec, ginv: &TensorField, ricci: &TensorField) -> TensorField {
    let chart = m.chart().clone();
    let n = chart.dim();
    TensorField::from_fn(&chart, Valence { contra: 1, co: 1 }, |idx| {
        let (i, j) = (idx[0], idx[1]);
        let mut acc = Expression::zero(&chart);
        for k in 0..n {
            let gik = ginv.get(&[i, k]);
            let skj = ricci.get(&[k, j]);
            if !gik.is_zero() && !skj.is_zero() {
                acc = acc.add(&gik.mul(skj));
            }
        }
        acc
    })
}

/// Kulkarni–Nomizu product of two symmetric (0,2) tensors:
/// (q^p)_hijk = q_hk p_ij - q_hj p_ik + p_hk q_ij - p_hj q_ik.
pub fn kulkarni_nomizu(q: &TensorField, p: &TensorField) -> Result<TensorField, GeometryError> {
    if q.chart() != p.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let want = Valence { contra: 0, co: 2 };
    if q.valence() != want || p.valence() != want {
        return Err(GeometryError::BadValence {
            expected: "(0,2)".into(),
            got: format!("{} and {}", q.valence(), p.valence()),
        });
    }
    let n = q.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            if q.get(&[i, j]) != q.get(&[j, i]) || p.get(&[i, j]) != p.get(&[j, i]) {
                return Err(GeometryError::NotSymmetric);
            }
        }
    }
    let chart = q.chart().clone();
    Ok(TensorField::build_riemann_like(&chart, |h, i, j, k| {
        q.get(&[h, k])
            .mul(p.get(&[i, j]))
            .sub(&q.get(&[h, j]).mul(p.get(&[i, k])))
            .add(&p.get(&[h, k]).mul(q.get(&[i, j])))
            .sub(&p.get(&[h, j]).mul(q.get(&[i, k])))
    }))
}

/// Covariant derivative of a purely covariant tensor; the new (differentiation)
/// slot is appended LAST: (nabla_l t)_{i1..ik} is stored at [i1..ik, l].
pub fn covariant_derivative(t: &TensorField, m: &MetricSpec) -> Result<TensorField, GeometryError> {
    if t.valence().contra != 0 {
        return Err(GeometryError::BadValence {
            expected: "(0,k)".into(),
            got: t.valence().to_string(),
        });
    }
    if t.chart() != m.chart() {
        return Err(GeometryError::ChartMismatch);
    }
    let gamma = christoffel(m);
    Ok(covariant_derivative_from(t, &gamma))
}

fn covariant_derivative_from(t: &TensorField, gamma: &ChristoffelSymbols) -> TensorField {
    let chart = t.chart().clone();
    let n = chart.dim();
    let k = t.rank();
    TensorField::from_fn(&chart, Valence { contra: 0, co: k + 1 }, |idx| {
        let base = &idx[..k];
        let l = idx[k];
        let mut acc = t.get(base).differentiate_index(l);
        for slot in 0..k {
            for mm in 0..n {
                let g = gamma.get(mm, l, base[slot]);
                if g.is_zero() {
                    continue;
                }
                let mut swapped = base.to_vec();
                swapped[slot] = mm;
                let tv = t.get(&swapped);
                if !tv.is_zero() {
                    acc = acc.sub(&g.mul(tv));
                }
            }
        }
        acc
    })
}

/// nabla R computed on riemann orbits; identical values to the generic path.
fn nabla_riemann_from(riem: &TensorField, gamma: &ChristoffelSymbols) -> TensorField {
    let chart = riem.chart().clone();
    let n = chart.dim();
    TensorField::build_riemann_like5(&chart, |h, i, j, k, l| {
        let base = [h, i, j, k];
        let mut acc = riem.get(&base).differentiate_index(l);
        for slot in 0..4 {
            for mm in 0..n {
                let g = gamma.get(mm, l, base[slot]);
                if g.is_zero() {
                    continue;
                }
                let mut swapped = base;
                swapped[slot] = mm;
                let tv = riem.get(&swapped);
                if !tv.is_zero() {
                    acc = acc.sub(&g.mul(tv));
                }
            }
        }
        acc
    })
}

/// Weyl tensor, normalized to be totally trace-free:
/// C = R - (g^S)/(n-2) + r (g^g) / (2(n-1)(n-2)).
pub fn weyl(m: &MetricSpec) -> Result<TensorField, GeometryError> {
    let n = m.dim();
    if n < 3 {
        return Err(GeometryError::WeylDimension(n));
    }
    let data = CurvatureData::new(m);
    Ok(weyl_from(&data))
}

fn weyl_from(d: &CurvatureData) -> TensorField {
    let n = d.metric.dim() as i64;
    let chart = d.metric.chart();
    let inv_n2 = Expression::from_rat(chart, Rat::new(1.into(), (n - 2).into()));
    let w2 = Expression::from_rat(chart, Rat::new(1.into(), (2 * (n - 1) * (n - 2)).into()));
    let h_term = d.g_wedge_s.scale_expr(&inv_n2);
    let g_term = d.g_wedge_g.scale_expr(&w2.mul(&d.scalar));
    d.riemann.sub(&h_term).add(&g_term).with_symmetry(Symmetry::RiemannType)
}

/// Raise a one-form to its associated vector field: X^i = g^{ij} A_j.
pub fn raise(form: &TensorField, ginv: &TensorField) -> Result<TensorField, GeometryError> {
    if form.valence() != (Valence { contra: 0, co: 1 }) {
        return Err(GeometryError::BadValence {
            expected: "(0,1)".into(),
            got: form.valence().to_string(),
        });
    }
    let chart = form.chart().clone();
    let n = chart.dim();
    Ok(TensorField::from_fn(&chart, Valence { contra: 1, co: 0 }, |idx| {
        let i = idx[0];
        let mut acc = Expression::zero(&chart);
        for j in 0..n {
            let g = ginv.get(&[i, j]);
            let a = form.get(&[j]);
            if !g.is_zero() && !a.is_zero() {
                acc = acc.add(&g.mul(a));
            }
        }
        acc
    }))
}

/// Lower a vector field: A_i = g_ij X^j.
pub fn lower(vector: &TensorField, m: &MetricSpec) -> Result<TensorField, GeometryError> {
    if vector.valence() != (Valence { contra: 1, co: 0 }) {
        return Err(GeometryError::BadValence {
            expected: "(1,0)".into(),
            got: vector.valence().to_string(),
        });
    }
    let chart = vector.chart().clone();
    let n = chart.dim();
    Ok(TensorField::from_fn(&chart, Valence { contra: 0, co: 1 }, |idx| {
        let i = idx[0];
        let mut acc = Expression::zero(&chart);
        for j in 0..n {
            acc = acc.add(&m.component(i, j).mul(vector.get(&[j])));
        }
        acc
    }))
}

/// Contraction of two covariant slots with the inverse metric:
/// out = g^{ab} t[.. a .. b ..] over the named slots.
pub fn contract_metric(
    t: &TensorField,
    slot_a: usize,
    slot_b: usize,
    ginv: &TensorField,
) -> Result<TensorField, GeometryError> {
    let rank = t.rank();
    if slot_a >= rank || slot_b >= rank || slot_a == slot_b || t.valence().contra != 0 {
        return Err(GeometryError::BadSlots(slot_a, slot_b));
    }
    let chart = t.chart().clone();
    let n = chart.dim();
    let (lo, hi) = (slot_a.min(slot_b), slot_a.max(slot_b));
    Ok(TensorField::from_fn(
        &chart,
        Valence { contra: 0, co: rank - 2 },
        |idx| {
            let mut acc = Expression::zero(&chart);
            for a in 0..n {
                for b in 0..n {
                    let g = ginv.get(&[a, b]);
                    if g.is_zero() {
                        continue;
                    }
                    let mut full = Vec::with_capacity(rank);
                    full.extend_from_slice(&idx[..lo]);
                    full.push(a);
                    full.extend_from_slice(&idx[lo..hi - 1]);
                    full.push(b);
                    full.extend_from_slice(&idx[hi - 1..]);
                    let v = t.get(&full);
                    if !v.is_zero() {
                        acc = acc.add(&g.mul(v));
                    }
                }
            }
            acc
        },
    ))
}

/// Everything the symmetry layer consumes, computed once per metric.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    pub metric: MetricSpec,
    pub ginv: TensorField,
    pub gamma: ChristoffelSymbols,
    pub riemann: TensorField,
    pub ricci: TensorField,
    pub ricci_op: TensorField,
    pub scalar: Expression,
    /// G = g ^ g
    pub g_wedge_g: TensorField,
    /// H = g ^ S
    pub g_wedge_s: TensorField,
    /// (0,5), direction last
    pub nabla_riemann: TensorField,
    /// (0,3), direction last
    pub nabla_ricci: TensorField,
}

impl CurvatureData {
    pub fn new(m: &MetricSpec) -> Self {
        let ginv = m.inverse();
        let gamma = christoffel_with_inverse(m, &ginv);
        let riemann = riemann_from(m, &gamma);
        let ricci = ricci_from(m, &ginv, &riemann);
        let ricci_op = ricci_operator_from(m, &ginv, &ricci);
        let scalar = scalar_from(m, &ginv, &ricci);
        let g_wedge_g = kulkarni_nomizu(m.tensor(), m.tensor()).expect("g symmetric");
        let g_wedge_s = kulkarni_nomizu(m.tensor(), &ricci).expect("g, S symmetric");
        let nabla_riemann = nabla_riemann_from(&riemann, &gamma);
        let nabla_ricci = covariant_derivative_from(&ricci, &gamma);
        CurvatureData {
            metric: m.clone(),
            ginv,
            gamma,
            riemann,
            ricci,
            ricci_op,
            scalar,
            g_wedge_g,
            g_wedge_s,
            nabla_riemann,
            nabla_ricci,
        }
    }

    pub fn chart(&self) -> &Chart {
        self.metric.chart()
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn weyl(&self) -> Result<TensorField, GeometryError> {
        if self.dim() < 3 {
            return Err(GeometryError::WeylDimension(self.dim()));
        }
        Ok(weyl_from(self))
    }

    /// One-form A -> (X |-> A(L X)), components A_m L^m_j.
    pub fn apply_ricci(&self, form: &TensorField) -> Result<TensorField, GeometryError> {
        if form.valence() != (Valence { contra: 0, co: 1 }) {
            return Err(GeometryError::BadValence {
                expected: "(0,1)".into(),
                got: form.valence().to_string(),
            });
        }
        let chart = self.chart().clone();
        let n = chart.dim();
        Ok(TensorField::from_fn(&chart, Valence { contra: 0, co: 1 }, |idx| {
            let j = idx[0];
            let mut acc = Expression::zero(&chart);
            for mm in 0..n {
                let a = form.get(&[mm]);
                let l = self.ricci_op.get(&[mm, j]);
                if !a.is_zero() && !l.is_zero() {
                    acc = acc.add(&a.mul(l));
                }
            }
            acc
        }))
    }
}

pub fn apply_ricci(m: &MetricSpec, form: &TensorField) -> Result<TensorField, GeometryError> {
    CurvatureData::new(m).apply_ricci(form)
}
