//! Dense tensor fields of Expressions with declared index symmetries.
//!
//! Storage is always dense; the symmetry-aware builders compute one
//! representative per index orbit and fill the rest, which is where the
//! curvature pipeline gets its work reduction.

use crate::expr::{Chart, Expression};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Valence {
    pub contra: usize,
    pub co: usize,
}

impl Valence {
    pub fn rank(&self) -> usize {
        self.contra + self.co
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.contra, self.co)
    }
}

/// Declared symmetry of the stored components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    None,
    /// Symmetric in the two slots of a rank-2 tensor.
    Symmetric2,
    /// Riemann-type on the first four slots: skew(1,2), skew(3,4),
    /// symmetric under pair exchange. Extra trailing slots unconstrained.
    RiemannType,
    /// Skew(1,2) and skew(3,4) only; no pair exchange. Trailing slots free.
    SkewPairs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    chart: Chart,
    valence: Valence,
    symmetry: Symmetry,
    comps: Vec<Expression>,
}

impl TensorField {
    pub fn zeros(chart: &Chart, valence: Valence) -> Self {
        let n = chart.dim();
        let len = n.pow(valence.rank() as u32);
        TensorField {
            chart: chart.clone(),
            valence,
            symmetry: Symmetry::None,
            comps: vec![Expression::zero(chart); len],
        }
    }

    pub fn from_fn(
        chart: &Chart,
        valence: Valence,
        mut f: impl FnMut(&[usize]) -> Expression,
    ) -> Self {
        let mut t = TensorField::zeros(chart, valence);
        let rank = valence.rank();
        let n = chart.dim();
        for flat in 0..t.comps.len() {
            let idx = unflatten(flat, n, rank);
            t.comps[flat] = f(&idx);
        }
        t
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn with_symmetry(mut self, s: Symmetry) -> Self {
        self.symmetry = s;
        self
    }

    pub fn rank(&self) -> usize {
        self.valence.rank()
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        let n = self.dim();
        let mut f = 0;
        for &i in idx {
            debug_assert!(i < n);
            f = f * n + i;
        }
        f
    }

    pub fn get(&self, idx: &[usize]) -> &Expression {
        &self.comps[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Expression) {
        let f = self.flat(idx);
        self.comps[f] = v;
    }

    pub fn is_identically_zero(&self) -> bool {
        self.comps.iter().all(Expression::is_zero)
    }

    /// All (indices, component) pairs in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Expression)> {
        let n = self.dim();
        let rank = self.rank();
        self.comps
            .iter()
            .enumerate()
            .map(move |(f, e)| (unflatten(f, n, rank), e))
    }

    /// Nonzero components only, for reports.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, &Expression)> {
        self.iter().filter(|(_, e)| !e.is_zero()).collect()
    }

    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &Expression)> {
        self.iter().find(|(_, e)| !e.is_zero())
    }

    pub fn add(&self, other: &TensorField) -> TensorField {
        assert_eq!(self.valence, other.valence);
        assert_eq!(self.chart, other.chart);
        let mut out = self.clone();
        out.symmetry = Symmetry::None;
        for (a, b) in out.comps.iter_mut().zip(&other.comps) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &TensorField) -> TensorField {
        self.add(&other.scale_expr(&Expression::from_int(&self.chart, -1)))
    }

    pub fn scale_expr(&self, c: &Expression) -> TensorField {
        let mut out = self.clone();
        for a in out.comps.iter_mut() {
            *a = a.mul(c);
        }
        out
    }

    pub fn scale_i64(&self, c: i64) -> TensorField {
        let mut out = self.clone();
        for a in out.comps.iter_mut() {
            *a = a.mul_i64(c);
        }
        out
    }

    /// Builds a symmetric (0,2) tensor from values on i <= j.
    pub fn build_sym2(chart: &Chart, mut f: impl FnMut(usize, usize) -> Expression) -> Self {
        let n = chart.dim();
        let mut t = TensorField::zeros(chart, Valence { contra: 0, co: 2 });
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                t.set(&[j, i], v.clone());
                t.set(&[i, j], v);
            }
        }
        t.symmetry = Symmetry::Symmetric2;
        t
    }

    /// Builds a (0,4) tensor with riemann-type symmetries from one value per
    /// index orbit: h < i, j < k, (h,i) <= (j,k) lexicographically.
    pub fn build_riemann_like(
        chart: &Chart,
        mut f: impl FnMut(usize, usize, usize, usize) -> Expression,
    ) -> Self {
        let n = chart.dim();
        let mut t = TensorField::zeros(chart, Valence { contra: 0, co: 4 });
        for h in 0..n {
            for i in (h + 1)..n {
                for j in 0..n {
                    for k in (j + 1)..n {
                        if (j, k) < (h, i) {
                            continue;
                        }
                        let v = f(h, i, j, k);
                        if v.is_zero() {
                            continue;
                        }
                        let neg = v.neg();
                        for (a, b, c, d, positive) in orbit_riemann(h, i, j, k) {
                            t.set(&[a, b, c, d], if positive { v.clone() } else { neg.clone() });
                        }
                    }
                }
            }
        }
        t.symmetry = Symmetry::RiemannType;
        t
    }

    /// Builds a (0,5) tensor skew in slots (1,2) and (3,4) from values on
    /// h < i, j < k and every trailing index.
    pub fn build_skew_pairs5(
        chart: &Chart,
        mut f: impl FnMut(usize, usize, usize, usize, usize) -> Expression,
    ) -> Self {
        let n = chart.dim();
        let mut t = TensorField::zeros(chart, Valence { contra: 0, co: 5 });
        for h in 0..n {
            for i in (h + 1)..n {
                for j in 0..n {
                    for k in (j + 1)..n {
                        for l in 0..n {
                            let v = f(h, i, j, k, l);
                            if v.is_zero() {
                                continue;
                            }
                            let neg = v.neg();
                            t.set(&[h, i, j, k, l], v.clone());
                            t.set(&[i, h, j, k, l], neg.clone());
                            t.set(&[h, i, k, j, l], neg.clone());
                            t.set(&[i, h, k, j, l], v.clone());
                        }
                    }
                }
            }
        }
        t.symmetry = Symmetry::SkewPairs;
        t
    }

    /// Builds a (0,5) tensor riemann-type in the first four slots from one
    /// value per orbit and trailing index.
    pub fn build_riemann_like5(
        chart: &Chart,
        mut f: impl FnMut(usize, usize, usize, usize, usize) -> Expression,
    ) -> Self {
        let n = chart.dim();
        let mut t = TensorField::zeros(chart, Valence { contra: 0, co: 5 });
        for h in 0..n {
            for i in (h + 1)..n {
                for j in 0..n {
                    for k in (j + 1)..n {
                        if (j, k) < (h, i) {
                            continue;
                        }
                        for l in 0..n {
                            let v = f(h, i, j, k, l);
                            if v.is_zero() {
                                continue;
                            }
                            let neg = v.neg();
                            for (a, b, c, d, positive) in orbit_riemann(h, i, j, k) {
                                t.set(&[a, b, c, d, l], if positive { v.clone() } else { neg.clone() });
                            }
                        }
                    }
                }
            }
        }
        t.symmetry = Symmetry::RiemannType;
        t
    }
}

/// The eight riemann-symmetry images of (h,i,j,k) with their signs.
fn orbit_riemann(h: usize, i: usize, j: usize, k: usize) -> [(usize, usize, usize, usize, bool); 8] {
    [
        (h, i, j, k, true),
        (i, h, j, k, false),
        (h, i, k, j, false),
        (i, h, k, j, true),
        (j, k, h, i, true),
        (k, j, h, i, false),
        (j, k, i, h, false),
        (k, j, i, h, true),
    ]
}

pub fn unflatten(mut flat: usize, n: usize, rank: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for slot in (0..rank).rev() {
        idx[slot] = flat % n;
        flat /= n;
    }
    idx
}

/// Checks the skew, pair-exchange and first-Bianchi identities on the first
/// four slots of a (0,4) tensor, componentwise and exactly.
pub fn has_riemann_symmetries(t: &TensorField) -> bool {
    assert_eq!(t.rank(), 4);
    let n = t.dim();
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = t.get(&[h, i, j, k]);
                    if *v != t.get(&[i, h, j, k]).neg() {
                        return false;
                    }
                    if *v != t.get(&[h, i, k, j]).neg() {
                        return false;
                    }
                    if v != t.get(&[j, k, h, i]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// First Bianchi: T(X1,X2,X3,X4) + T(X2,X3,X1,X4) + T(X3,X1,X2,X4) = 0.
pub fn satisfies_first_bianchi(t: &TensorField) -> bool {
    assert_eq!(t.rank(), 4);
    let n = t.dim();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let s = t
                        .get(&[a, b, c, d])
                        .add(t.get(&[b, c, a, d]))
                        .add(t.get(&[c, a, b, d]));
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}
