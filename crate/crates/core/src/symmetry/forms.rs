//! One-form families: the fifteen-form family of the full defining equation
//! and the nine-form reduced family.

use crate::expr::{Chart, Expression};
use crate::geometry::{TensorField, Valence};

pub const NAMES_15: [&str; 15] = [
    "A", "B", "Bbar", "D", "Dbar", "alpha", "beta", "betabar", "gamma", "gammabar", "theta",
    "phi", "phibar", "psi", "psibar",
];

pub const NAMES_9: [&str; 9] = ["A", "B", "D", "alpha", "beta", "gamma", "theta", "phi", "psi"];

/// A one-form as an owned component vector; converts to a (0,1) TensorField.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    chart: Chart,
    comps: Vec<Expression>,
}

impl OneForm {
    pub fn zero(chart: &Chart) -> Self {
        OneForm {
            chart: chart.clone(),
            comps: vec![Expression::zero(chart); chart.dim()],
        }
    }

    pub fn new(chart: &Chart, comps: Vec<Expression>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        OneForm { chart: chart.clone(), comps }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn get(&self, i: usize) -> &Expression {
        &self.comps[i]
    }

    pub fn set(&mut self, i: usize, v: Expression) {
        self.comps[i] = v;
    }

    pub fn components(&self) -> &[Expression] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expression::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| a.mul_i64(c)).collect(),
        }
    }

    pub fn scale(&self, c: &Expression) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn to_tensor(&self) -> TensorField {
        let mut t = TensorField::zeros(&self.chart, Valence { contra: 0, co: 1 });
        for (i, e) in self.comps.iter().enumerate() {
            t.set(&[i], e.clone());
        }
        t
    }

    pub fn from_tensor(t: &TensorField) -> OneForm {
        assert_eq!(t.valence(), Valence { contra: 0, co: 1 });
        let n = t.dim();
        OneForm {
            chart: t.chart().clone(),
            comps: (0..n).map(|i| t.get(&[i]).clone()).collect(),
        }
    }
}

/// The fifteen one-forms of the full defining equation, in equation order.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFamily15 {
    pub chart: Chart,
    pub forms: [OneForm; 15],
}

/// The nine one-forms of the reduced defining equation.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFamily9 {
    pub chart: Chart,
    pub forms: [OneForm; 9],
}

macro_rules! family_accessors {
    ($ty:ty, $names:expr, [$(($idx:expr, $get:ident)),* $(,)?]) => {
        impl $ty {
            pub fn zero(chart: &Chart) -> Self {
                Self {
                    chart: chart.clone(),
                    forms: std::array::from_fn(|_| OneForm::zero(chart)),
                }
            }

            pub fn names() -> &'static [&'static str] {
                &$names
            }

            pub fn get(&self, name: &str) -> Option<&OneForm> {
                $names.iter().position(|&n| n == name).map(|i| &self.forms[i])
            }

            pub fn set(&mut self, name: &str, f: OneForm) -> bool {
                match $names.iter().position(|&n| n == name) {
                    Some(i) => {
                        self.forms[i] = f;
                        true
                    }
                    None => false,
                }
            }

            $(pub fn $get(&self) -> &OneForm {
                &self.forms[$idx]
            })*
        }
    };
}

family_accessors!(
    FormFamily15,
    NAMES_15,
    [
        (0, a),
        (1, b),
        (2, b_bar),
        (3, d),
        (4, d_bar),
        (5, alpha),
        (6, beta),
        (7, beta_bar),
        (8, gamma),
        (9, gamma_bar),
        (10, theta),
        (11, phi),
        (12, phi_bar),
        (13, psi),
        (14, psi_bar),
    ]
);

family_accessors!(
    FormFamily9,
    NAMES_9,
    [
        (0, a),
        (1, b),
        (2, d),
        (3, alpha),
        (4, beta),
        (5, gamma),
        (6, theta),
        (7, phi),
        (8, psi),
    ]
);

impl FormFamily9 {
    /// Embeds into the full family by tying each barred form to its partner.
    pub fn embed(&self) -> FormFamily15 {
        let mut f = FormFamily15::zero(&self.chart);
        f.forms[0] = self.a().clone();
        f.forms[1] = self.b().clone();
        f.forms[2] = self.b().clone();
        f.forms[3] = self.d().clone();
        f.forms[4] = self.d().clone();
        f.forms[5] = self.alpha().clone();
        f.forms[6] = self.beta().clone();
        f.forms[7] = self.beta().clone();
        f.forms[8] = self.gamma().clone();
        f.forms[9] = self.gamma().clone();
        f.forms[10] = self.theta().clone();
        f.forms[11] = self.phi().clone();
        f.forms[12] = self.phi().clone();
        f.forms[13] = self.psi().clone();
        f.forms[14] = self.psi().clone();
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    #[test]
    fn accessors_and_embed() {
        let chart = Chart::new(vec!["x1", "x2"]).unwrap();
        let mut f9 = FormFamily9::zero(&chart);
        let mut b = OneForm::zero(&chart);
        b.set(0, parse_expression("x1", &chart).unwrap());
        assert!(f9.set("B", b.clone()));
        assert!(!f9.set("Q", b.clone()));
        let f15 = f9.embed();
        assert_eq!(f15.b(), &b);
        assert_eq!(f15.b_bar(), &b);
        assert!(f15.get("Bbar").is_some());
    }
}
