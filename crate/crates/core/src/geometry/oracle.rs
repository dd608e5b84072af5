//! Pointwise jet oracle: recomputes Gamma, R and nabla R at a rational point
//! with truncated power-series arithmetic applied directly to the raw metric
//! entries, then compares against evaluation of the symbolic pipeline.
//! The two routes share only scalar jet arithmetic, nothing tensorial.

use super::curvature::CurvatureData;
use super::metric::MetricSpec;
use crate::expr::jet::{jet_evaluate, Jet};
use crate::expr::{ExprError, Rat};
use num::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleMismatch {
    pub tensor: &'static str,
    pub indices: Vec<usize>,
    pub symbolic: Rat,
    pub jet: Rat,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub point: Vec<Rat>,
    pub depth: usize,
    pub compared: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares symbolic Gamma, R, nabla R against the jet recomputation at
/// `point`. `depth >= 3` is required so that nabla R still has an exact
/// constant term after three derivative losses.
pub fn oracle_check(
    m: &MetricSpec,
    point: &[Rat],
    depth: usize,
) -> Result<OracleReport, ExprError> {
    assert!(depth >= 3, "oracle depth must be at least 3");
    let n = m.dim();
    // Pole screening: every g_ij and det(g) must be finite/nonzero.
    for i in 0..n {
        for j in 0..n {
            m.component(i, j).evaluate(point)?;
        }
    }
    let detv = m.determinant().evaluate(point)?;
    if detv.is_zero() {
        return Err(ExprError::Pole {
            denominator: "det(g)".to_string(),
        });
    }

    // Jet route.
    let mut gj = vec![vec![Jet::zero(n, depth); n]; n];
    for i in 0..n {
        for j in 0..n {
            gj[i][j] = jet_evaluate(m.component(i, j), point, depth)?;
        }
    }
    let ginvj = invert_jet_matrix(&gj).expect("det nonzero at point");
    // Gamma^k_ij
    let mut gammaj = vec![vec![vec![Jet::zero(n, depth); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = Jet::zero(n, depth);
                for l in 0..n {
                    let s = gj[j][l]
                        .derivative(i)
                        .add(&gj[i][l].derivative(j))
                        .sub(&gj[i][j].derivative(l));
                    acc = acc.add(&ginvj[k][l].mul(&s));
                }
                gammaj[k][i][j] = acc.scale(&Rat::new(1.into(), 2.into()));
            }
        }
    }
    // R_hijk = g_hm (d_j Gamma^m_ki - d_k Gamma^m_ji + GG - GG)
    let rup = |mm: usize, i: usize, j: usize, k: usize| -> Jet {
        let mut v = gammaj[mm][k][i]
            .derivative(j)
            .sub(&gammaj[mm][j][i].derivative(k));
        for e in 0..n {
            v = v.add(&gammaj[mm][j][e].mul(&gammaj[e][k][i]));
            v = v.sub(&gammaj[mm][k][e].mul(&gammaj[e][j][i]));
        }
        v
    };
    let mut rj = vec![Jet::zero(n, depth); n * n * n * n];
    let at = |h: usize, i: usize, j: usize, k: usize| ((h * n + i) * n + j) * n + k;
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = Jet::zero(n, depth);
                    for mm in 0..n {
                        acc = acc.add(&gj[h][mm].mul(&rup(mm, i, j, k)));
                    }
                    rj[at(h, i, j, k)] = acc;
                }
            }
        }
    }
    // nabla_l R_hijk (value only)
    let nr_at = |rj: &Vec<Jet>, idx: [usize; 4], l: usize| -> Rat {
        let mut acc = rj[at(idx[0], idx[1], idx[2], idx[3])].derivative(l).value();
        for slot in 0..4 {
            for mm in 0..n {
                let g = gammaj[mm][l][idx[slot]].value();
                if g.is_zero() {
                    continue;
                }
                let mut sw = idx;
                sw[slot] = mm;
                acc -= g * rj[at(sw[0], sw[1], sw[2], sw[3])].value();
            }
        }
        acc
    };

    // Symbolic route.
    let data = CurvatureData::new(m);
    let mut report = OracleReport {
        point: point.to_vec(),
        depth,
        compared: 0,
        mismatches: Vec::new(),
    };
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let sym = data.gamma.get(k, i, j).evaluate(point)?;
                let jet = gammaj[k][i][j].value();
                report.compared += 1;
                if sym != jet {
                    report.mismatches.push(OracleMismatch {
                        tensor: "Gamma",
                        indices: vec![k, i, j],
                        symbolic: sym,
                        jet,
                    });
                }
            }
        }
    }
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let sym = data.riemann.get(&[h, i, j, k]).evaluate(point)?;
                    let jet = rj[at(h, i, j, k)].value();
                    report.compared += 1;
                    if sym != jet {
                        report.mismatches.push(OracleMismatch {
                            tensor: "R",
                            indices: vec![h, i, j, k],
                            symbolic: sym,
                            jet,
                        });
                    }
                    for l in 0..n {
                        let symd = data.nabla_riemann.get(&[h, i, j, k, l]).evaluate(point)?;
                        let jetd = nr_at(&rj, [h, i, j, k], l);
                        report.compared += 1;
                        if symd != jetd {
                            report.mismatches.push(OracleMismatch {
                                tensor: "nablaR",
                                indices: vec![h, i, j, k, l],
                                symbolic: symd,
                                jet: jetd,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn invert_jet_matrix(g: &[Vec<Jet>]) -> Option<Vec<Vec<Jet>>> {
    let n = g.len();
    let det = jet_det(g, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    let det_inv = det.inverse()?;
    let mut out = vec![vec![Jet::zero(0, 0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let mut c = jet_det(g, &rows, &cols);
            if (i + j) % 2 == 1 {
                c = c.neg();
            }
            out[i][j] = c.mul(&det_inv);
        }
    }
    Some(out)
}

fn jet_det(g: &[Vec<Jet>], rows: &[usize], cols: &[usize]) -> Jet {
    let n = g.len();
    if rows.is_empty() {
        return Jet::constant(n, g[0][0].order(), Rat::new(1.into(), 1.into()));
    }
    let mut acc = Jet::zero(n, g[0][0].order());
    let sub_rows: Vec<usize> = rows[1..].to_vec();
    for (pos, &c) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = g[rows[0]][c].mul(&jet_det(g, &sub_rows, &sub_cols));
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}
