//! Canonical multivariate rational functions over the rationals.
//!
//! An `Expression` is `coeff * num / den` where `num` and `den` are
//! integer-primitive polynomials with positive lex-leading coefficients and
//! `gcd(num, den)` constant; the rational scale and the sign live entirely in
//! `coeff`. Zero is uniquely `0 * 1/1`. Structural equality is therefore
//! semantic equality, and every operation returns the canonical
//! representative, so `canonicalize` is the identity on constructed values.

use super::chart::Chart;
use super::poly::{poly_gcd, render_poly, Poly};
use super::rational::{rat_to_string, Int, Rat};
use num::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    chart: Chart,
    coeff: Rat,
    num: Poly,
    den: Poly,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("chart mismatch: {0} vs {1}")]
    ChartMismatch(String, String),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("pole: denominator {denominator} vanishes at the point")]
    Pole { denominator: String },
}

impl Expression {
    pub fn zero(chart: &Chart) -> Self {
        Expression {
            chart: chart.clone(),
            coeff: Rat::zero(),
            num: Poly::one(chart.dim()),
            den: Poly::one(chart.dim()),
        }
    }

    pub fn one(chart: &Chart) -> Self {
        Expression::from_rat(chart, Rat::one())
    }

    pub fn from_rat(chart: &Chart, c: Rat) -> Self {
        if c.is_zero() {
            return Expression::zero(chart);
        }
        Expression {
            chart: chart.clone(),
            coeff: c,
            num: Poly::one(chart.dim()),
            den: Poly::one(chart.dim()),
        }
    }

    pub fn from_int(chart: &Chart, v: i64) -> Self {
        Expression::from_rat(chart, Rat::from_integer(Int::from(v)))
    }

    pub fn coordinate(chart: &Chart, name: &str) -> Result<Self, ExprError> {
        let v = chart
            .index_of(name)
            .ok_or_else(|| ExprError::UnknownCoordinate(name.to_string()))?;
        Ok(Expression::coordinate_index(chart, v))
    }

    pub fn coordinate_index(chart: &Chart, v: usize) -> Self {
        Expression {
            chart: chart.clone(),
            coeff: Rat::one(),
            num: Poly::var(chart.dim(), v),
            den: Poly::one(chart.dim()),
        }
    }

    /// The normalizing constructor: any `c * n / d` comes out canonical.
    pub fn make(chart: &Chart, coeff: Rat, num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        if num.is_zero() || coeff.is_zero() {
            return Ok(Expression::zero(chart));
        }
        let cn = num.content();
        let cd = den.content();
        let mut coeff = coeff * Rat::new(cn.clone(), cd.clone());
        let mut num = num.div_int_exact(&cn);
        let mut den = den.div_int_exact(&cd);
        let g = poly_gcd(&num, &den);
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides");
            den = den.exact_div(&g).expect("gcd divides");
        }
        if den.leading_coeff().is_negative() {
            den = den.neg();
            coeff = -coeff;
        }
        if num.leading_coeff().is_negative() {
            num = num.neg();
            coeff = -coeff;
        }
        Ok(Expression { chart: chart.clone(), coeff, num, den })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// `Some(q)` when the expression is a constant rational.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            if self.is_zero() {
                return Some(Rat::zero());
            }
            Some(self.coeff.clone() * Rat::new(self.num.constant_value(), self.den.constant_value()))
        } else {
            None
        }
    }

    fn same_chart(&self, other: &Expression) -> Result<(), ExprError> {
        if self.chart != other.chart {
            return Err(ExprError::ChartMismatch(
                self.chart.to_string(),
                other.chart.to_string(),
            ));
        }
        Ok(())
    }

    pub fn neg(&self) -> Expression {
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }

    pub fn add(&self, other: &Expression) -> Expression {
        self.same_chart(other).expect("expression chart mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Combine over gcd of denominators to keep the normalizer's input small.
        let g = poly_gcd(&self.den, &other.den);
        let d1g = self.den.exact_div(&g).expect("gcd divides");
        let d2g = other.den.exact_div(&g).expect("gcd divides");
        let (a1, b1) = (self.coeff.numer(), self.coeff.denom());
        let (a2, b2) = (other.coeff.numer(), other.coeff.denom());
        let left = self.num.mul(&d2g).mul_int(&(a1 * b2));
        let right = other.num.mul(&d1g).mul_int(&(a2 * b1));
        let num = left.add(&right);
        let den = self.den.mul(&d2g);
        let scale = Rat::new(Int::one(), b1 * b2);
        Expression::make(&self.chart, scale, num, den).expect("den nonzero")
    }

    pub fn sub(&self, other: &Expression) -> Expression {
        self.add(&other.neg())
    }

    /// Sums many terms over one common denominator: each distinct
    /// denominator enters the lcm once and the full reduction runs once at
    /// the end, instead of once per pairwise addition.
    pub fn sum<'a>(chart: &Chart, terms: impl IntoIterator<Item = &'a Expression>) -> Expression {
        let terms: Vec<&Expression> = terms.into_iter().filter(|e| !e.is_zero()).collect();
        match terms.len() {
            0 => return Expression::zero(chart),
            1 => return terms[0].clone(),
            _ => {}
        }
        // lcm of the polynomial denominators
        let mut den = terms[0].den.clone();
        for t in &terms[1..] {
            let g = poly_gcd(&den, &t.den);
            den = den.mul(&t.den.exact_div(&g).expect("gcd divides"));
        }
        // integer lcm of coefficient denominators
        let mut bden = Int::one();
        for t in &terms {
            let g = num::Integer::gcd(&bden, t.coeff.denom());
            bden = &bden / &g * t.coeff.denom();
        }
        let mut num = Poly::zero(chart.dim());
        for t in &terms {
            let cof = den.exact_div(&t.den).expect("lcm is a multiple");
            let scale = t.coeff.numer() * (&bden / t.coeff.denom());
            num = num.add(&t.num.mul(&cof).mul_int(&scale));
        }
        Expression::make(chart, Rat::new(Int::one(), bden), num, den).expect("den nonzero")
    }

    pub fn mul(&self, other: &Expression) -> Expression {
        self.same_chart(other).expect("expression chart mismatch");
        if self.is_zero() || other.is_zero() {
            return Expression::zero(&self.chart);
        }
        // Cross-cancel before multiplying; the result is then already reduced.
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Expression {
            chart: self.chart.clone(),
            coeff: &self.coeff * &other.coeff,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    pub fn div(&self, other: &Expression) -> Result<Expression, ExprError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    pub fn reciprocal(&self) -> Result<Expression, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Expression {
            chart: self.chart.clone(),
            coeff: self.coeff.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, k: i64) -> Result<Expression, ExprError> {
        if k == 0 {
            return Ok(Expression::one(&self.chart));
        }
        let base = if k < 0 { self.reciprocal()? } else { self.clone() };
        if base.is_zero() {
            return Ok(base);
        }
        let e = k.unsigned_abs() as u32;
        let mut c = Rat::one();
        for _ in 0..e {
            c *= &base.coeff;
        }
        Ok(Expression {
            chart: base.chart.clone(),
            coeff: c,
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn mul_rat(&self, c: &Rat) -> Expression {
        if c.is_zero() || self.is_zero() {
            return Expression::zero(&self.chart);
        }
        let mut out = self.clone();
        out.coeff *= c;
        out
    }

    pub fn mul_i64(&self, c: i64) -> Expression {
        self.mul_rat(&Rat::from_integer(Int::from(c)))
    }

    /// Exact partial derivative with respect to a chart coordinate.
    pub fn differentiate(&self, coordinate: &str) -> Result<Expression, ExprError> {
        let v = self
            .chart
            .index_of(coordinate)
            .ok_or_else(|| ExprError::UnknownCoordinate(coordinate.to_string()))?;
        Ok(self.differentiate_index(v))
    }

    pub fn differentiate_index(&self, v: usize) -> Expression {
        if self.is_zero() {
            return self.clone();
        }
        let u = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        let den2 = self.den.mul(&self.den);
        Expression::make(&self.chart, self.coeff.clone(), u, den2).expect("den nonzero")
    }

    /// Exact value at a fully assigned point; reports the vanishing
    /// denominator polynomial on a pole.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, ExprError> {
        assert_eq!(point.len(), self.chart.dim(), "point must assign every coordinate");
        let d = self.den.eval(point);
        if d.is_zero() {
            let shown = self.den.mul_int(self.coeff.denom());
            return Err(ExprError::Pole { denominator: render_poly(&shown, self.chart.coords()) });
        }
        Ok(&self.coeff * self.num.eval(point) / d)
    }

    /// Scaled numerator/denominator pair with the rational front coefficient
    /// absorbed; used by the printer and by integer-sensitive callers.
    pub fn scaled_parts(&self) -> (Poly, Poly) {
        (self.num.mul_int(self.coeff.numer()), self.den.mul_int(self.coeff.denom()))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn coefficient(&self) -> &Rat {
        &self.coeff
    }

    /// Crude size measure used for solver pivot selection.
    pub fn complexity(&self) -> u64 {
        (self.num.total_degree() + self.den.total_degree()) as u64 * 64
            + (self.num.terms().len() + self.den.terms().len()) as u64
    }

    /// Cross-multiplication equality: p1*q2 - p2*q1 == 0. With canonical
    /// representatives this must agree with structural equality; kept as an
    /// independent route for the equality oracle.
    pub fn eq_cross(&self, other: &Expression) -> bool {
        if self.chart != other.chart {
            return false;
        }
        let lhs = self.num.mul_int(self.coeff.numer()).mul(&other.den.mul_int(other.coeff.denom()));
        let rhs = other.num.mul_int(other.coeff.numer()).mul(&self.den.mul_int(self.coeff.denom()));
        lhs.sub(&rhs).is_zero()
    }
}

/// The identity on constructed values; exposed because idempotent
/// canonicalization is part of the module contract.
pub fn canonicalize(e: &Expression) -> Expression {
    Expression::make(e.chart(), e.coefficient().clone(), e.numerator().clone(), e.denominator().clone())
        .expect("canonical input stays canonical")
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.chart.coords();
        let (snum, sden) = self.scaled_parts();
        if sden.is_one() {
            return write!(f, "{}", render_poly(&snum, names));
        }
        let num_str = render_poly(&snum, names);
        let num_wrapped = if snum.terms().len() > 1 { format!("({num_str})") } else { num_str };
        let den_str = render_poly(&sden, names);
        let den_atomic = sden.terms().len() == 1
            && sden.leading_coeff().is_one()
            && sden.terms()[0].0.iter().filter(|&&e| e > 0).count() == 1
            && sden.terms()[0].0.iter().all(|&e| e <= 1);
        let den_plain_int = sden.is_constant();
        if den_atomic || den_plain_int {
            write!(f, "{num_wrapped}/{den_str}")
        } else {
            write!(f, "{num_wrapped}/({den_str})")
        }
    }
}

/// Rendering helper for rationals in reports.
pub fn rat_str(r: &Rat) -> String {
    rat_to_string(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse::parse_expression;
    use crate::expr::rational::{rat, rat_int};

    fn chart4() -> Chart {
        Chart::new(vec!["x1", "x2", "x3", "x4"]).unwrap()
    }

    fn e(text: &str) -> Expression {
        parse_expression(text, &chart4()).unwrap()
    }

    #[test]
    fn canonical_content_removal() {
        // (2 x1) / 2 -> x1
        assert_eq!(e("(2*x1)/2"), e("x1"));
        assert_eq!(e("(2*x1)/2").to_string(), "x1");
    }

    #[test]
    fn canonical_cancellation() {
        assert_eq!(e("(x3+x4)/(x3+x4)"), e("1"));
        // (x1^2 - x1)/x1 -> x1 - 1
        assert_eq!(e("(x1^2-x1)/x1"), e("x1-1"));
        assert_eq!(e("(x1^2-x1)/x1").to_string(), "x1 - 1");
    }

    #[test]
    fn canonical_confluence() {
        let a = e("x3^2*x4^2 - x1^2*(x3+x4)");
        let b = e("-(x1^2*x3 + x1^2*x4 - x3^2*x4^2)");
        assert_eq!(a, b);
        assert!(a.eq_cross(&b));
    }

    #[test]
    fn zero_is_unique() {
        let z = e("x1 - x1");
        assert!(z.is_zero());
        assert_eq!(z, Expression::zero(&chart4()));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn differentiate_quotient() {
        // d/dx1 1/(4 x1) = -1/(4 x1^2)
        let d = e("1/(4*x1)").differentiate("x1").unwrap();
        assert_eq!(d, e("-1/(4*x1^2)"));
        // absent variable
        assert!(e("1/(4*x1)").differentiate("x2").unwrap().is_zero());
        assert!(matches!(
            e("x1").differentiate("q"),
            Err(ExprError::UnknownCoordinate(_))
        ));
    }

    #[test]
    fn evaluate_and_pole() {
        let f = e("1/(4*x1)");
        let p = vec![rat_int(2), rat_int(1), rat_int(1), rat_int(1)];
        assert_eq!(f.evaluate(&p).unwrap(), rat(1, 8));
        let g = e("(x3+x4)/(4*x3*x4^2)");
        let q = vec![rat_int(9), rat_int(9), rat_int(1), rat_int(1)];
        assert_eq!(g.evaluate(&q).unwrap(), rat(1, 2));
        let pole = vec![rat_int(0), rat_int(1), rat_int(1), rat_int(1)];
        match f.evaluate(&pole) {
            Err(ExprError::Pole { denominator }) => assert_eq!(denominator, "4*x1"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn negative_powers() {
        assert_eq!(e("x1^-2"), e("1/x1^2"));
        assert!(e("0").pow(-1).is_err());
    }

    #[test]
    fn display_reparses() {
        for s in [
            "1/(4*x1)",
            "(x3+x4)/(4*x3*x4)",
            "-1/(2*x1^2)",
            "(x3*x1^2 + x4*x1^2 + x3^2*x4^2)/(4*x1^2*x3^2*x4)",
            "x1/2 - 7/3",
            "-x1",
        ] {
            let a = e(s);
            let b = parse_expression(&a.to_string(), &chart4()).unwrap();
            assert_eq!(a, b, "round-trip failed for {s}: printed {}", a);
        }
    }
}
