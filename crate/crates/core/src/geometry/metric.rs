//! Metric specifications: a chart plus a symmetric nondegenerate component
//! matrix of Expressions.

use super::tensor::{Symmetry, TensorField, Valence};
use crate::expr::{Chart, Expression};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Riemannian,
    Semi,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MetricError {
    #[error("metric components must form an {0}x{0} matrix")]
    BadShape(usize),
    #[error("metric is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("metric is singular: det(g) is the zero rational function")]
    Singular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    chart: Chart,
    g: TensorField,
    det: Expression,
    signature: Option<Signature>,
}

impl MetricSpec {
    pub fn new(chart: Chart, components: Vec<Vec<Expression>>) -> Result<Self, MetricError> {
        let n = chart.dim();
        if components.len() != n || components.iter().any(|row| row.len() != n) {
            return Err(MetricError::BadShape(n));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if components[i][j] != components[j][i] {
                    return Err(MetricError::NotSymmetric(i, j));
                }
            }
        }
        let det = determinant(&components, &chart);
        if det.is_zero() {
            return Err(MetricError::Singular);
        }
        let g = TensorField::build_sym2(&chart, |i, j| components[i][j].clone());
        Ok(MetricSpec { chart, g, det, signature: None })
    }

    pub fn with_signature(mut self, s: Signature) -> Self {
        self.signature = Some(s);
        self
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn tensor(&self) -> &TensorField {
        &self.g
    }

    pub fn component(&self, i: usize, j: usize) -> &Expression {
        self.g.get(&[i, j])
    }

    pub fn determinant(&self) -> &Expression {
        &self.det
    }

    pub fn signature(&self) -> Option<Signature> {
        self.signature
    }

    /// Inverse metric as a (2,0) tensor, by adjugate over determinant.
    /// g * g^-1 = identity exactly.
    pub fn inverse(&self) -> TensorField {
        let n = self.dim();
        let rows: Vec<Vec<Expression>> = (0..n)
            .map(|i| (0..n).map(|j| self.component(i, j).clone()).collect())
            .collect();
        let mut inv = TensorField::zeros(&self.chart, Valence { contra: 2, co: 0 });
        for i in 0..n {
            for j in i..n {
                // adjugate: inv[i][j] = cofactor(j,i)/det; symmetric input.
                let minor = minor_matrix(&rows, j, i);
                let mut c = determinant(&minor, &self.chart);
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                let v = c.div(&self.det).expect("det nonzero");
                inv.set(&[i, j], v.clone());
                inv.set(&[j, i], v);
            }
        }
        inv.with_symmetry(Symmetry::Symmetric2)
    }
}

fn minor_matrix(rows: &[Vec<Expression>], drop_row: usize, drop_col: usize) -> Vec<Vec<Expression>> {
    rows.iter()
        .enumerate()
        .filter(|(r, _)| *r != drop_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != drop_col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn determinant(rows: &[Vec<Expression>], chart: &Chart) -> Expression {
    let n = rows.len();
    if n == 0 {
        return Expression::one(chart);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Expression::zero(chart);
    for (col, pivot) in rows[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor = minor_matrix(rows, 0, col);
        let mut term = pivot.mul(&determinant(&minor, chart));
        if col % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn metric(coords: Vec<&str>, entries: Vec<Vec<&str>>) -> Result<MetricSpec, MetricError> {
        let chart = Chart::new(coords).unwrap();
        let comps = entries
            .iter()
            .map(|row| row.iter().map(|s| parse_expression(s, &chart).unwrap()).collect())
            .collect();
        MetricSpec::new(chart, comps)
    }

    #[test]
    fn rejects_singular_and_asymmetric() {
        assert_eq!(
            metric(vec!["x1", "x2"], vec![vec!["x1", "0"], vec!["0", "0"]]).unwrap_err(),
            MetricError::Singular
        );
        assert_eq!(
            metric(vec!["x1", "x2"], vec![vec!["1", "x1"], vec!["x2", "1"]]).unwrap_err(),
            MetricError::NotSymmetric(0, 1)
        );
    }

    #[test]
    fn weyl_needs_three_dimensions() {
        let m = metric(vec!["x1", "x2"], vec![vec!["1", "0"], vec!["0", "x1"]]).unwrap();
        assert!(matches!(
            crate::geometry::weyl(&m),
            Err(crate::geometry::GeometryError::WeylDimension(2))
        ));
    }

    #[test]
    fn identity_inverse() {
        let m = metric(vec!["x1", "x2"], vec![vec!["1", "0"], vec!["0", "1"]]).unwrap();
        let inv = m.inverse();
        assert!(inv.get(&[0, 0]).is_one() && inv.get(&[1, 1]).is_one());
        assert!(inv.get(&[0, 1]).is_zero());
    }

    #[test]
    fn off_diagonal_inverse_is_exact() {
        // g = [[1, x1],[x1, 1+x1^2]], det = 1
        let m = metric(
            vec!["x1", "x2"],
            vec![vec!["1", "x1"], vec!["x1", "1+x1^2"]],
        )
        .unwrap();
        let inv = m.inverse();
        let chart = m.chart().clone();
        // g * ginv = I
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Expression::zero(&chart);
                for k in 0..2 {
                    s = s.add(&m.component(i, k).mul(inv.get(&[k, j])));
                }
                if i == j {
                    assert!(s.is_one(), "({i},{j}) = {s}");
                } else {
                    assert!(s.is_zero(), "({i},{j}) = {s}");
                }
            }
        }
        assert_eq!(inv.get(&[0, 0]), &parse_expression("1+x1^2", m.chart()).unwrap());
        assert_eq!(inv.get(&[0, 1]), &parse_expression("-x1", m.chart()).unwrap());
    }

    #[test]
    fn reference_metric_inverse_is_diagonal() {
        let m = metric(
            vec!["x1", "x2", "x3", "x4"],
            vec![
                vec!["1", "0", "0", "0"],
                vec!["0", "x1", "0", "0"],
                vec!["0", "0", "x4", "0"],
                vec!["0", "0", "0", "x3"],
            ],
        )
        .unwrap();
        let inv = m.inverse();
        let c = m.chart();
        assert!(inv.get(&[0, 0]).is_one());
        assert_eq!(inv.get(&[1, 1]), &parse_expression("1/x1", c).unwrap());
        assert_eq!(inv.get(&[2, 2]), &parse_expression("1/x4", c).unwrap());
        assert_eq!(inv.get(&[3, 3]), &parse_expression("1/x3", c).unwrap());
        assert!(inv.get(&[0, 1]).is_zero());
    }
}
