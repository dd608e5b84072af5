//! Truncated multivariate power series: exact jets at a rational point.
//!
//! A `Jet` holds the Taylor coefficients of a function at a point, in the
//! displacement variables, up to a guaranteed total order. Coefficients are
//! exact rationals: the order-k coefficient of the monomial d^e equals
//! (1/e!) times the corresponding partial derivative. This is the
//! independent derivative oracle for the geometry pipeline.

use super::chart::Chart;
use super::expression::{Expression, ExprError};
use super::rational::Rat;
use num::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    nvars: usize,
    /// Guaranteed-correct total order: coefficients of total degree <= order
    /// are exact; anything beyond is truncated away.
    order: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Jet {
    pub fn zero(nvars: usize, order: usize) -> Self {
        Jet { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Jet { nvars, order, terms }
    }

    /// The displacement series a + d_v.
    pub fn variable(nvars: usize, order: usize, v: usize, a: Rat) -> Self {
        let mut j = Jet::constant(nvars, order, a);
        if order >= 1 {
            let mut e = vec![0; nvars];
            e[v] = 1;
            j.terms.insert(e, Rat::one());
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn value(&self) -> Rat {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn total(e: &[u32]) -> usize {
        e.iter().map(|&k| k as usize).sum()
    }

    fn prune(&mut self) {
        let order = self.order;
        self.terms.retain(|e, c| Jet::total(e) <= order && !c.is_zero());
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let mut out = Jet {
            nvars: self.nvars,
            order: self.order.min(other.order),
            terms: self.terms.clone(),
        };
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        out.prune();
        out
    }

    pub fn neg(&self) -> Jet {
        Jet {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        let mut out = Jet::zero(self.nvars, order);
        for (ea, ca) in &self.terms {
            let da = Jet::total(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + Jet::total(eb) > order {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = out.terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: &Rat) -> Jet {
        if c.is_zero() {
            return Jet::zero(self.nvars, self.order);
        }
        Jet {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Jet {
        let mut acc = Jet::constant(self.nvars, self.order, Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    /// 1/(c(1+u)) with u nilpotent to the truncation order.
    pub fn inverse(&self) -> Option<Jet> {
        let c = self.value();
        if c.is_zero() {
            return None;
        }
        let cinv = c.recip();
        let u = self.scale(&cinv).sub(&Jet::constant(self.nvars, self.order, Rat::one()));
        let mut acc = Jet::constant(self.nvars, self.order, Rat::one());
        let mut upow = Jet::constant(self.nvars, self.order, Rat::one());
        for k in 1..=self.order {
            upow = upow.mul(&u);
            if upow.is_zero() {
                break;
            }
            let signed = if k % 2 == 1 { upow.neg() } else { upow.clone() };
            acc = acc.add(&signed);
        }
        Some(acc.scale(&cinv))
    }

    pub fn div(&self, other: &Jet) -> Option<Jet> {
        Some(self.mul(&other.inverse()?))
    }

    /// Formal derivative in displacement variable `v`; drops the guaranteed
    /// order by one. This equals the jet of the derivative.
    pub fn derivative(&self, v: usize) -> Jet {
        let mut out = Jet::zero(self.nvars, self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                out.terms.insert(e2, c * Rat::from_integer(e[v].into()));
            }
        }
        out.prune();
        out
    }
}

/// Expands `e` at `point` into a jet of total order `order`.
/// Coefficients are exact partial derivatives divided by factorials.
pub fn jet_evaluate(e: &Expression, point: &[Rat], order: usize) -> Result<Jet, ExprError> {
    let n = e.chart().dim();
    assert_eq!(point.len(), n, "point must assign every coordinate");
    let num = jet_of_poly(e.numerator(), point, order, e.chart());
    let den = jet_of_poly(e.denominator(), point, order, e.chart());
    let den_inv = den.inverse().ok_or_else(|| ExprError::Pole {
        denominator: super::poly::render_poly(e.denominator(), e.chart().coords()),
    })?;
    Ok(num.mul(&den_inv).scale(e.coefficient()))
}

fn jet_of_poly(p: &super::poly::Poly, point: &[Rat], order: usize, chart: &Chart) -> Jet {
    let n = chart.dim();
    let mut acc = Jet::zero(n, order);
    for (exps, c) in p.terms() {
        let mut t = Jet::constant(n, order, Rat::from_integer(c.clone()));
        for (v, &k) in exps.iter().enumerate() {
            if k > 0 {
                let x = Jet::variable(n, order, v, point[v].clone());
                t = t.mul(&x.pow(k));
            }
        }
        acc = acc.add(&t);
    }
    acc
}
