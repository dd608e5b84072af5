//! Curvature-class flags, taxonomy classification, and the dichotomy
//! instance analyzers.

use super::forms::OneForm;
use super::solver::{
    solve_with_nullspace, InconsistencyCertificate, Pattern, SolveOutcome, TaxonomyClass,
    ALL_CLASSES,
};
use crate::expr::{Expression, Rat};
use crate::geometry::{CurvatureData, GeometryError, MetricSpec, TensorField, Valence};

/// Constant sectional factor c with R_hijk = c (g_hk g_ij - g_hj g_ik),
/// exactly, for a constant rational c.
pub fn is_constant_curvature(data: &CurvatureData) -> Option<Rat> {
    let n = data.dim();
    let g = data.metric.tensor();
    let model = |h: usize, i: usize, j: usize, k: usize| -> Expression {
        g.get(&[h, k])
            .mul(g.get(&[i, j]))
            .sub(&g.get(&[h, j]).mul(g.get(&[i, k])))
    };
    // candidate from the first index where the model tensor is nonzero
    let mut c: Option<Rat> = None;
    'search: for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let m = model(h, i, j, k);
                    if m.is_zero() {
                        continue;
                    }
                    let r = data.riemann.get(&[h, i, j, k]);
                    let ratio = r.div(&m).expect("model nonzero");
                    c = ratio.as_constant();
                    break 'search;
                }
            }
        }
    }
    let c = c?;
    let ce = Expression::from_rat(data.chart(), c.clone());
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let want = model(h, i, j, k).mul(&ce);
                    if data.riemann.get(&[h, i, j, k]) != &want {
                        return None;
                    }
                }
            }
        }
    }
    Some(c)
}

/// Einstein factor a with S = a g and a = r/n, when it holds exactly.
pub fn is_einstein(data: &CurvatureData) -> Option<Expression> {
    let n = data.dim();
    let a = data
        .scalar
        .mul_rat(&Rat::new(1.into(), (n as i64).into()));
    let g = data.metric.tensor();
    for i in 0..n {
        for j in 0..n {
            if data.ricci.get(&[i, j]) != &a.mul(g.get(&[i, j])) {
                return None;
            }
        }
    }
    Some(a)
}

/// Weyl flatness; meaningful for n >= 4. n = 3 and n = 2 report None
/// (not applicable in this version).
pub fn is_conformally_flat(data: &CurvatureData) -> Option<bool> {
    if data.dim() < 4 {
        return None;
    }
    Some(data.weyl().expect("n >= 4").is_identically_zero())
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Holds {
        nullspace_dimension: usize,
        /// Whether a family member with every pattern form nonzero exists
        /// generically; None when the pattern has no forms to witness.
        nonzero_witness: Option<bool>,
    },
    Fails {
        certificate: Box<InconsistencyCertificate>,
    },
    NotApplicable {
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct ClassVerdict {
    pub class: TaxonomyClass,
    pub label: &'static str,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct Flags {
    pub locally_symmetric: bool,
    pub constant_curvature: Option<Rat>,
    pub einstein: Option<Expression>,
    pub conformally_flat: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub classes: Vec<ClassVerdict>,
    pub flags: Flags,
}

pub fn classify(m: &MetricSpec) -> Result<ClassificationReport, GeometryError> {
    let data = CurvatureData::new(m);
    classify_with(&data)
}

pub fn classify_with(data: &CurvatureData) -> Result<ClassificationReport, GeometryError> {
    let flags = Flags {
        locally_symmetric: data.nabla_riemann.is_identically_zero(),
        constant_curvature: is_constant_curvature(data),
        einstein: is_einstein(data),
        conformally_flat: is_conformally_flat(data),
    };
    let mut classes = Vec::new();
    for class in ALL_CLASSES {
        if class == TaxonomyClass::XV {
            classes.push(ClassVerdict {
                class,
                label: class.label(),
                verdict: Verdict::NotApplicable {
                    reason: "item (xv) is absent from the taxonomy".to_string(),
                },
            });
            continue;
        }
        let (outcome, basis) = solve_with_nullspace(data, Pattern::Taxonomy(class))
            .expect("taxonomy patterns are well-formed");
        let verdict = match outcome {
            SolveOutcome::NoSolution(cert) => Verdict::Fails { certificate: cert },
            SolveOutcome::Solved(sol) => {
                let witness = if sol.aux_values.is_empty() {
                    None
                } else {
                    Some(sol.aux_values.iter().enumerate().all(|(a, (_, part))| {
                        !part.is_zero() || basis.iter().any(|vecs| !vecs[a].1.is_zero())
                    }))
                };
                Verdict::Holds {
                    nullspace_dimension: sol.nullspace_dimension,
                    nonzero_witness: witness,
                }
            }
        };
        classes.push(ClassVerdict { class, label: class.label(), verdict });
    }
    Ok(ClassificationReport { classes, flags })
}

#[derive(Debug, Clone)]
pub struct DichotomyReport {
    pub hypothesis_holds: bool,
    /// First nonzero hypothesis component when it fails.
    pub hypothesis_witness: Option<(Vec<usize>, String)>,
    /// (branch label, realized) in the order the conclusion lists them.
    pub branches: Vec<(String, bool)>,
}

impl DichotomyReport {
    pub fn realized_branch(&self) -> Option<&str> {
        if !self.hypothesis_holds {
            return None;
        }
        self.branches
            .iter()
            .find(|(_, ok)| *ok)
            .map(|(name, _)| name.as_str())
    }
}

/// Hypothesis A(X1)R(X2,X5,X3,X4) + A(X2)R(X1,X5,X3,X4)
///          + B(X1)G(X2,X5,X3,X4) + B(X2)G(X1,X5,X3,X4) = 0.
/// If it holds, reports which conclusion branch is realized.
pub fn dichotomy_cond_g(data: &CurvatureData, a: &OneForm, b: &OneForm) -> DichotomyReport {
    let chart = data.chart().clone();
    let res = TensorField::from_fn(&chart, Valence { contra: 0, co: 5 }, |idx| {
        let (x1, x2, x3, x4, x5) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        a.get(x1)
            .mul(data.riemann.get(&[x2, x5, x3, x4]))
            .add(&a.get(x2).mul(data.riemann.get(&[x1, x5, x3, x4])))
            .add(&b.get(x1).mul(data.g_wedge_g.get(&[x2, x5, x3, x4])))
            .add(&b.get(x2).mul(data.g_wedge_g.get(&[x1, x5, x3, x4])))
    });
    let witness = res
        .first_nonzero()
        .map(|(idx, e)| (idx, e.to_string()));
    let hypothesis_holds = witness.is_none();
    let n = data.dim() as i64;
    let mut branches = Vec::new();
    if hypothesis_holds {
        branches.push((
            "constant curvature".to_string(),
            is_constant_curvature(data).is_some(),
        ));
        branches.push(("A = B = 0".to_string(), a.is_zero() && b.is_zero()));
        let rel = a
            .scale(&data.scalar)
            .add(&b.scale_i64(n * (n - 1)));
        branches.push(("r A + n(n-1) B = 0".to_string(), rel.is_zero()));
    }
    DichotomyReport { hypothesis_holds, hypothesis_witness: witness, branches }
}

/// Hypothesis with R, H and G terms; on success reports the four-way
/// dichotomy branches plus the two case relations from the contraction.
pub fn dichotomy_cond_h(
    data: &CurvatureData,
    a: &OneForm,
    b: &OneForm,
    d: &OneForm,
) -> DichotomyReport {
    let chart = data.chart().clone();
    let res = TensorField::from_fn(&chart, Valence { contra: 0, co: 5 }, |idx| {
        let (x1, x2, x3, x4, x5) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        a.get(x1)
            .mul(data.riemann.get(&[x2, x5, x3, x4]))
            .add(&a.get(x2).mul(data.riemann.get(&[x1, x5, x3, x4])))
            .add(&b.get(x1).mul(data.g_wedge_s.get(&[x2, x5, x3, x4])))
            .add(&b.get(x2).mul(data.g_wedge_s.get(&[x1, x5, x3, x4])))
            .add(&d.get(x1).mul(data.g_wedge_g.get(&[x2, x5, x3, x4])))
            .add(&d.get(x2).mul(data.g_wedge_g.get(&[x1, x5, x3, x4])))
    });
    let witness = res
        .first_nonzero()
        .map(|(idx, e)| (idx, e.to_string()));
    let hypothesis_holds = witness.is_none();
    let n = data.dim() as i64;
    let mut branches = Vec::new();
    if hypothesis_holds {
        branches.push((
            "constant curvature".to_string(),
            is_constant_curvature(data).is_some(),
        ));
        branches.push((
            "conformally flat".to_string(),
            is_conformally_flat(data) == Some(true),
        ));
        branches.push((
            "A = B = D = 0".to_string(),
            a.is_zero() && b.is_zero() && d.is_zero(),
        ));
        let rn = data.scalar.mul_rat(&Rat::new(1.into(), n.into()));
        let combo = b.scale(&rn).add(d);
        branches.push(("A = 0 and (r/n) B + D = 0".to_string(), a.is_zero() && combo.is_zero()));
        branches.push((
            "A + (n-2) D = 0".to_string(),
            a.add(&d.scale_i64(n - 2)).is_zero(),
        ));
        branches.push(("n B + D = 0".to_string(), b.scale_i64(n).add(d).is_zero()));
    }
    DichotomyReport { hypothesis_holds, hypothesis_witness: witness, branches }
}
