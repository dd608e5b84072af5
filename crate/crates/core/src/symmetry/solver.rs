//! Exact linear solving for the one-form families.
//!
//! The defining equation, read componentwise, is linear in the unknown form
//! components over the fraction field Q(x1..xn). Patterns restrict the
//! fifteen forms to linear images of auxiliary one-forms; the solver
//! assembles one equation per residual component, eliminates exactly with
//! minimal-complexity pivoting, and returns either a particular solution
//! (free unknowns zeroed, re-verified through the residual operation) or an
//! inconsistency certificate traced back to original equations.

use super::forms::{FormFamily15, FormFamily9, OneForm, NAMES_15, NAMES_9};
use crate::expr::{Expression, Rat};
use crate::geometry::{CurvatureData, GeometryError, TensorField};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaxonomyClass {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    XIII,
    XIV,
    XV,
    XVI,
    XVII,
}

pub const ALL_CLASSES: [TaxonomyClass; 17] = [
    TaxonomyClass::I,
    TaxonomyClass::II,
    TaxonomyClass::III,
    TaxonomyClass::IV,
    TaxonomyClass::V,
    TaxonomyClass::VI,
    TaxonomyClass::VII,
    TaxonomyClass::VIII,
    TaxonomyClass::IX,
    TaxonomyClass::X,
    TaxonomyClass::XI,
    TaxonomyClass::XII,
    TaxonomyClass::XIII,
    TaxonomyClass::XIV,
    TaxonomyClass::XV,
    TaxonomyClass::XVI,
    TaxonomyClass::XVII,
];

impl TaxonomyClass {
    pub fn roman(&self) -> &'static str {
        match self {
            TaxonomyClass::I => "i",
            TaxonomyClass::II => "ii",
            TaxonomyClass::III => "iii",
            TaxonomyClass::IV => "iv",
            TaxonomyClass::V => "v",
            TaxonomyClass::VI => "vi",
            TaxonomyClass::VII => "vii",
            TaxonomyClass::VIII => "viii",
            TaxonomyClass::IX => "ix",
            TaxonomyClass::X => "x",
            TaxonomyClass::XI => "xi",
            TaxonomyClass::XII => "xii",
            TaxonomyClass::XIII => "xiii",
            TaxonomyClass::XIV => "xiv",
            TaxonomyClass::XV => "xv",
            TaxonomyClass::XVI => "xvi",
            TaxonomyClass::XVII => "xvii",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TaxonomyClass::I => "symmetric space",
            TaxonomyClass::II => "recurrent space",
            TaxonomyClass::III => "hyper generalized recurrent space",
            TaxonomyClass::IV => "generalized recurrent space",
            TaxonomyClass::V => "pseudo symmetric space",
            TaxonomyClass::VI => "generalized pseudo symmetric space",
            TaxonomyClass::VII => "semi-pseudo symmetric space",
            TaxonomyClass::VIII => "generalized semi-pseudo symmetric space",
            TaxonomyClass::IX => "almost pseudo symmetric space",
            TaxonomyClass::X => "almost generalized pseudo symmetric space",
            TaxonomyClass::XI => "weakly symmetric space",
            TaxonomyClass::XII => "generalized weakly symmetric space",
            TaxonomyClass::XIII => "hyper generalized semi-pseudo symmetric space",
            TaxonomyClass::XIV => "hyper generalized pseudo symmetric space",
            TaxonomyClass::XV => "(unassigned taxonomy item)",
            TaxonomyClass::XVI => "almost hyper generalized pseudo symmetric space",
            TaxonomyClass::XVII => "hyper generalized weakly symmetric space",
        }
    }

    pub fn parse(text: &str) -> Option<TaxonomyClass> {
        let t = text.trim().to_ascii_lowercase();
        for c in ALL_CLASSES {
            if c.roman() == t {
                return Some(c);
            }
        }
        match t.as_str() {
            "symmetric" => Some(TaxonomyClass::I),
            "recurrent" => Some(TaxonomyClass::II),
            "hyper-generalized-recurrent" => Some(TaxonomyClass::III),
            "generalized-recurrent" => Some(TaxonomyClass::IV),
            "pseudo-symmetric" => Some(TaxonomyClass::V),
            "generalized-pseudo-symmetric" => Some(TaxonomyClass::VI),
            "semi-pseudo-symmetric" => Some(TaxonomyClass::VII),
            "generalized-semi-pseudo-symmetric" => Some(TaxonomyClass::VIII),
            "almost-pseudo-symmetric" => Some(TaxonomyClass::IX),
            "almost-generalized-pseudo-symmetric" => Some(TaxonomyClass::X),
            "weakly-symmetric" => Some(TaxonomyClass::XI),
            "generalized-weakly-symmetric" => Some(TaxonomyClass::XII),
            "hyper-generalized-semi-pseudo-symmetric" => Some(TaxonomyClass::XIII),
            "hyper-generalized-pseudo-symmetric" => Some(TaxonomyClass::XIV),
            "almost-hyper-generalized-pseudo-symmetric" => Some(TaxonomyClass::XVI),
            "hyper-generalized-weakly-symmetric" => Some(TaxonomyClass::XVII),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Full15,
    Reduced9,
    Taxonomy(TaxonomyClass),
}

impl Pattern {
    pub fn parse(text: &str) -> Option<Pattern> {
        match text.trim().to_ascii_lowercase().as_str() {
            "full-15" | "full15" => Some(Pattern::Full15),
            "reduced-9" | "reduced9" => Some(Pattern::Reduced9),
            other => TaxonomyClass::parse(other).map(Pattern::Taxonomy),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Pattern::Full15 => "full-15".to_string(),
            Pattern::Reduced9 => "reduced-9".to_string(),
            Pattern::Taxonomy(c) => format!("({}) {}", c.roman(), c.label()),
        }
    }
}

/// Linear parametrization of the fifteen form slots by named auxiliaries.
#[derive(Debug, Clone)]
pub struct PatternSpec {
    pub aux: Vec<&'static str>,
    /// slots[s] = list of (aux index, integer coefficient) making up form s
    /// in the NAMES_15 order.
    pub slots: [Vec<(usize, i64)>; 15],
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SolveError {
    #[error("pattern {0} has no defining condition to solve")]
    EmptyPattern(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn slot(name: &str) -> usize {
    NAMES_15.iter().position(|&n| n == name).expect("form name")
}

pub fn pattern_spec(pattern: Pattern) -> Option<PatternSpec> {
    let mut slots: [Vec<(usize, i64)>; 15] = std::array::from_fn(|_| Vec::new());
    let mut tie = |names: &[&str], aux: usize, c: i64| {
        for n in names {
            slots[slot(n)].push((aux, c));
        }
    };
    use TaxonomyClass::*;
    let aux: Vec<&'static str> = match pattern {
        Pattern::Full15 => {
            for (i, n) in NAMES_15.iter().enumerate() {
                tie(&[n], i, 1);
            }
            NAMES_15.to_vec()
        }
        Pattern::Reduced9 => {
            tie(&["A"], 0, 1);
            tie(&["B", "Bbar"], 1, 1);
            tie(&["D", "Dbar"], 2, 1);
            tie(&["alpha"], 3, 1);
            tie(&["beta", "betabar"], 4, 1);
            tie(&["gamma", "gammabar"], 5, 1);
            tie(&["theta"], 6, 1);
            tie(&["phi", "phibar"], 7, 1);
            tie(&["psi", "psibar"], 8, 1);
            NAMES_9.to_vec()
        }
        Pattern::Taxonomy(class) => match class {
            I => vec![],
            II => {
                tie(&["A"], 0, 1);
                vec!["A"]
            }
            III => {
                tie(&["A"], 0, 1);
                tie(&["alpha"], 1, 1);
                vec!["A", "alpha"]
            }
            IV => {
                tie(&["A"], 0, 1);
                tie(&["theta"], 1, 1);
                vec!["A", "theta"]
            }
            V => {
                tie(&["A"], 0, 2);
                tie(&["B", "Bbar", "D", "Dbar"], 0, 1);
                vec!["delta"]
            }
            VI => {
                tie(&["A"], 0, 2);
                tie(&["B", "Bbar", "D", "Dbar"], 0, 1);
                tie(&["alpha"], 1, 2);
                tie(&["beta", "betabar", "gamma", "gammabar"], 1, 1);
                vec!["delta", "mu"]
            }
            VII => {
                tie(&["B", "Bbar", "D", "Dbar"], 0, 1);
                vec!["delta"]
            }
            VIII => {
                tie(&["B", "Bbar", "D", "Dbar"], 0, 1);
                tie(&["beta", "betabar", "gamma", "gammabar"], 1, 1);
                vec!["delta", "mu"]
            }
            IX => {
                tie(&["A"], 0, 1);
                tie(&["A", "B", "Bbar", "D", "Dbar"], 1, 1);
                vec!["E", "H"]
            }
            X => {
                tie(&["A"], 0, 1);
                tie(&["A", "B", "Bbar", "D", "Dbar"], 1, 1);
                tie(&["alpha"], 2, 1);
                tie(&["alpha", "beta", "betabar", "gamma", "gammabar"], 3, 1);
                vec!["nu", "H", "kappa", "lambda"]
            }
            XI => {
                tie(&["A"], 0, 1);
                tie(&["B", "Bbar"], 1, 1);
                tie(&["D", "Dbar"], 2, 1);
                vec!["A", "B", "D"]
            }
            XII => {
                tie(&["A"], 0, 1);
                tie(&["B", "Bbar"], 1, 1);
                tie(&["D", "Dbar"], 2, 1);
                tie(&["theta"], 3, 1);
                tie(&["phi", "phibar"], 4, 1);
                tie(&["psi", "psibar"], 5, 1);
                vec!["A", "B", "D", "theta", "phi", "psi"]
            }
            XIII => {
                tie(&["B", "Bbar", "D", "Dbar"], 0, 1);
                tie(&["beta", "betabar", "gamma", "gammabar"], 1, 1);
                vec!["H1", "H2"]
            }
            XIV | XVI => {
                tie(&["A"], 0, 2);
                tie(&["B", "Bbar", "D", "Dbar"], 0, 1);
                tie(&["alpha"], 1, 2);
                tie(&["beta", "betabar", "gamma", "gammabar"], 1, 1);
                vec!["H1", "H2"]
            }
            XV => return None,
            XVII => {
                tie(&["A"], 0, 1);
                tie(&["B", "Bbar"], 1, 1);
                tie(&["D", "Dbar"], 2, 1);
                tie(&["alpha"], 3, 1);
                tie(&["beta", "betabar"], 4, 1);
                tie(&["gamma", "gammabar"], 5, 1);
                vec!["A", "B", "D", "alpha", "beta", "gamma"]
            }
        },
    };
    Some(PatternSpec { aux, slots })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationTag {
    /// (h, i, j, k; l) of the residual component the equation came from.
    pub indices: [usize; 5],
}

impl std::fmt::Display for EquationTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [h, i, j, k, l] = self.indices;
        write!(f, "({},{},{},{};{})", h + 1, i + 1, j + 1, k + 1, l + 1)
    }
}

#[derive(Debug, Clone)]
pub struct InconsistencyCertificate {
    /// Multipliers over original equations whose combination reads 0 = rhs.
    pub combination: Vec<(EquationTag, Expression)>,
    /// The provably nonzero combined right-hand side.
    pub combined_rhs: Expression,
    /// A concrete non-singular rational point where it evaluates nonzero.
    pub point: Vec<Rat>,
    pub value_at_point: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResidualStatus {
    ProvenZero,
    NonzeroWitness { indices: Vec<usize>, value: String },
}

#[derive(Debug, Clone)]
pub struct EwsSolution {
    pub pattern: Pattern,
    pub aux_values: Vec<(String, OneForm)>,
    pub particular: FormFamily15,
    pub reduced_view: Option<FormFamily9>,
    pub nullspace_dimension: usize,
    pub residual_status: ResidualStatus,
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Solved(Box<EwsSolution>),
    NoSolution(Box<InconsistencyCertificate>),
}

struct Row {
    coeffs: BTreeMap<usize, Expression>,
    rhs: Expression,
    combo: BTreeMap<usize, Expression>,
}

struct System {
    rows: Vec<Row>,
    tags: Vec<EquationTag>,
    ncols: usize,
}

/// Assembles the linear system for `spec` on the metric's curvature data.
/// Unknown (aux a, component c) sits in column a*n + c.
fn assemble(data: &CurvatureData, spec: &PatternSpec, at_point: Option<&[Rat]>) -> System {
    let n = data.dim();
    let ncols = spec.aux.len() * n;
    let chart = data.chart().clone();
    // tensor factor per slot family: 0..5 -> R, 5..10 -> H, 10..15 -> G
    let tensor_for = |s: usize| -> &TensorField {
        if s < 5 {
            &data.riemann
        } else if s < 10 {
            &data.g_wedge_s
        } else {
            &data.g_wedge_g
        }
    };
    // which argument of the equation the slot's form sees, and the four
    // tensor indices, as functions of (h,i,j,k,l)
    let arg_and_idx = |s: usize, h: usize, i: usize, j: usize, k: usize, l: usize| -> (usize, [usize; 4]) {
        match s % 5 {
            0 => (l, [h, i, j, k]),
            1 => (h, [l, i, j, k]),
            2 => (i, [h, l, j, k]),
            3 => (j, [h, i, l, k]),
            _ => (k, [h, i, j, l]),
        }
    };
    let reduce = |e: &Expression| -> Expression {
        match at_point {
            None => e.clone(),
            Some(p) => match e.evaluate(p) {
                Ok(v) => Expression::from_rat(&chart, v),
                Err(_) => e.clone(), // poles stay symbolic; point modes pick non-pole points
            },
        }
    };
    let mut rows: Vec<Row> = Vec::new();
    let mut tags: Vec<EquationTag> = Vec::new();
    let mut seen: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut idx5 = [0usize; 5];
    loop {
        let [h, i, j, k, l] = idx5;
        let mut coeffs: BTreeMap<usize, Expression> = BTreeMap::new();
        for (a, _) in spec.aux.iter().enumerate() {
            for c in 0..n {
                let mut acc = Expression::zero(&chart);
                for (s, combos) in spec.slots.iter().enumerate() {
                    for &(aux_idx, coef) in combos {
                        if aux_idx != a {
                            continue;
                        }
                        let (arg, tidx) = arg_and_idx(s, h, i, j, k, l);
                        if arg != c {
                            continue;
                        }
                        let t = tensor_for(s).get(&tidx);
                        if t.is_zero() {
                            continue;
                        }
                        acc = acc.add(&t.mul_i64(coef));
                    }
                }
                let acc = reduce(&acc);
                if !acc.is_zero() {
                    coeffs.insert(a * n + c, acc);
                }
            }
        }
        let rhs = reduce(data.nabla_riemann.get(&[h, i, j, k, l]));
        if !(coeffs.is_empty() && rhs.is_zero()) {
            // dedupe exact rows and their negations
            let mut key = String::new();
            let mut neg_key = String::new();
            for (c, e) in &coeffs {
                key.push_str(&format!("{c}:{e};"));
                neg_key.push_str(&format!("{c}:{};", e.neg()));
            }
            key.push_str(&format!("={rhs}"));
            neg_key.push_str(&format!("={}", rhs.neg()));
            if !seen.contains(&key) && !seen.contains(&neg_key) {
                seen.insert(key);
                let id = rows.len();
                let mut combo = BTreeMap::new();
                combo.insert(id, Expression::one(&chart));
                rows.push(Row { coeffs, rhs, combo });
                tags.push(EquationTag { indices: [h, i, j, k, l] });
            }
        }
        // advance odometer
        let mut slot_i = 4;
        loop {
            idx5[slot_i] += 1;
            if idx5[slot_i] < n {
                break;
            }
            idx5[slot_i] = 0;
            if slot_i == 0 {
                return System { rows, tags, ncols };
            }
            slot_i -= 1;
        }
    }
}

struct Eliminated {
    /// (column, pivot row), in creation order.
    pivots: Vec<(usize, Row)>,
    /// Rows reduced to 0 = rhs with rhs possibly nonzero.
    degenerate: Vec<Row>,
    ncols: usize,
}

fn eliminate(mut sys: System, chart: &crate::expr::Chart) -> (Eliminated, Vec<EquationTag>) {
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    let mut degenerate: Vec<Row> = Vec::new();
    loop {
        // minimal-complexity pivot among all remaining nonzero coefficients
        let mut best: Option<(usize, usize, u64)> = None;
        for (ri, row) in sys.rows.iter().enumerate() {
            for (&col, e) in &row.coeffs {
                let cx = e.complexity();
                if best.map_or(true, |(_, _, b)| cx < b) {
                    best = Some((ri, col, cx));
                }
            }
        }
        let Some((ri, col, _)) = best else { break };
        let pivot = sys.rows.remove(ri);
        let pe = pivot.coeffs.get(&col).expect("pivot coefficient").clone();
        for row in sys.rows.iter_mut() {
            let Some(c) = row.coeffs.get(&col).cloned() else { continue };
            let factor = c.div(&pe).expect("pivot nonzero");
            for (&pc, pv) in &pivot.coeffs {
                let delta = factor.mul(pv);
                let entry = row
                    .coeffs
                    .entry(pc)
                    .or_insert_with(|| Expression::zero(chart));
                *entry = entry.sub(&delta);
            }
            row.coeffs.retain(|_, e| !e.is_zero());
            row.rhs = row.rhs.sub(&factor.mul(&pivot.rhs));
            for (&eid, pm) in &pivot.combo {
                let delta = factor.mul(pm);
                let entry = row
                    .combo
                    .entry(eid)
                    .or_insert_with(|| Expression::zero(chart));
                *entry = entry.sub(&delta);
            }
            row.combo.retain(|_, e| !e.is_zero());
        }
        // rows that just became trivial move out of the working set
        let mut keep = Vec::new();
        for row in sys.rows.drain(..) {
            if row.coeffs.is_empty() {
                degenerate.push(row);
            } else {
                keep.push(row);
            }
        }
        sys.rows = keep;
        pivots.push((col, pivot));
    }
    degenerate.extend(sys.rows.drain(..));
    (
        Eliminated { pivots, degenerate, ncols: sys.ncols },
        sys.tags,
    )
}

/// Back-substitution with free columns fixed to zero.
fn particular_solution(el: &Eliminated, chart: &crate::expr::Chart) -> Vec<Expression> {
    let mut values = vec![Expression::zero(chart); el.ncols];
    for (col, row) in el.pivots.iter().rev() {
        let mut rhs = row.rhs.clone();
        for (&c, e) in &row.coeffs {
            if c == *col {
                continue;
            }
            if !values[c].is_zero() {
                rhs = rhs.sub(&e.mul(&values[c]));
            }
        }
        values[*col] = rhs.div(row.coeffs.get(col).expect("pivot")).expect("pivot nonzero");
    }
    values
}

/// Homogeneous solution with one free column set to 1.
fn nullspace_vector(el: &Eliminated, free_col: usize, chart: &crate::expr::Chart) -> Vec<Expression> {
    let mut values = vec![Expression::zero(chart); el.ncols];
    values[free_col] = Expression::one(chart);
    for (col, row) in el.pivots.iter().rev() {
        let mut rhs = Expression::zero(chart);
        for (&c, e) in &row.coeffs {
            if c == *col {
                continue;
            }
            if !values[c].is_zero() {
                rhs = rhs.sub(&e.mul(&values[c]));
            }
        }
        values[*col] = rhs.div(row.coeffs.get(col).expect("pivot")).expect("pivot nonzero");
    }
    values
}

fn free_columns(el: &Eliminated) -> Vec<usize> {
    let pivot_cols: std::collections::HashSet<usize> =
        el.pivots.iter().map(|(c, _)| *c).collect();
    (0..el.ncols).filter(|c| !pivot_cols.contains(c)).collect()
}

/// Small deterministic search for a point where the metric is non-singular
/// and `value` evaluates to a nonzero rational.
fn witness_point(data: &CurvatureData, value: &Expression) -> Option<(Vec<Rat>, Rat)> {
    let n = data.dim();
    let candidates: Vec<Vec<i64>> = vec![
        vec![1; n],
        (0..n as i64).map(|i| i + 1).collect(),
        (0..n as i64).map(|i| 2 * i + 1).collect(),
        (0..n as i64).map(|i| i + 2).collect(),
        vec![3; n],
        (0..n as i64).map(|i| 5 - i).collect(),
    ];
    'outer: for cand in candidates {
        let point: Vec<Rat> = cand.iter().map(|&v| Rat::from_integer(v.into())).collect();
        for i in 0..n {
            for j in 0..n {
                if data.metric.component(i, j).evaluate(&point).is_err() {
                    continue 'outer;
                }
            }
        }
        match data.metric.determinant().evaluate(&point) {
            Ok(d) if !d.is_zero() => {}
            _ => continue,
        }
        match value.evaluate(&point) {
            Ok(v) if !v.is_zero() => return Some((point, v)),
            _ => continue,
        }
    }
    None
}

fn build_family(
    spec: &PatternSpec,
    values: &[Expression],
    chart: &crate::expr::Chart,
) -> (Vec<(String, OneForm)>, FormFamily15) {
    let n = chart.dim();
    let mut aux_forms: Vec<(String, OneForm)> = Vec::new();
    for (a, name) in spec.aux.iter().enumerate() {
        let mut f = OneForm::zero(chart);
        for c in 0..n {
            f.set(c, values[a * n + c].clone());
        }
        aux_forms.push((name.to_string(), f));
    }
    let mut fam = FormFamily15::zero(chart);
    for (s, combos) in spec.slots.iter().enumerate() {
        let mut f = OneForm::zero(chart);
        for &(aux_idx, coef) in combos {
            f = f.add(&aux_forms[aux_idx].1.scale_i64(coef));
        }
        fam.set(NAMES_15[s], f);
    }
    (aux_forms, fam)
}

fn reduced_view(fam: &FormFamily15) -> Option<FormFamily9> {
    if fam.b() != fam.b_bar()
        || fam.d() != fam.d_bar()
        || fam.beta() != fam.beta_bar()
        || fam.gamma() != fam.gamma_bar()
        || fam.phi() != fam.phi_bar()
        || fam.psi() != fam.psi_bar()
    {
        return None;
    }
    let mut f9 = FormFamily9::zero(&fam.chart);
    for (n15, n9) in [
        ("A", "A"),
        ("B", "B"),
        ("D", "D"),
        ("alpha", "alpha"),
        ("beta", "beta"),
        ("gamma", "gamma"),
        ("theta", "theta"),
        ("phi", "phi"),
        ("psi", "psi"),
    ] {
        f9.set(n9, fam.get(n15).unwrap().clone());
    }
    Some(f9)
}

/// Solves the pattern's defining condition; `at_point` switches to the
/// pointwise diagnostic mode where coefficients are evaluated first.
pub fn solve_one_forms_with(
    data: &CurvatureData,
    pattern: Pattern,
    at_point: Option<&[Rat]>,
) -> Result<SolveOutcome, SolveError> {
    let spec = pattern_spec(pattern)
        .ok_or_else(|| SolveError::EmptyPattern(pattern.describe()))?;
    let chart = data.chart().clone();
    let sys = assemble(data, &spec, at_point);
    let (el, tags) = eliminate(sys, &chart);
    // Inconsistency: a degenerate row 0 = rhs with rhs != 0.
    for row in &el.degenerate {
        if !row.rhs.is_zero() {
            let combination: Vec<(EquationTag, Expression)> = row
                .combo
                .iter()
                .map(|(&eid, m)| (tags[eid].clone(), m.clone()))
                .collect();
            let (point, value_at_point) = witness_point(data, &row.rhs)
                .unwrap_or_else(|| (vec![Rat::zero(); data.dim()], Rat::zero()));
            return Ok(SolveOutcome::NoSolution(Box::new(InconsistencyCertificate {
                combination,
                combined_rhs: row.rhs.clone(),
                point,
                value_at_point,
            })));
        }
    }
    let values = particular_solution(&el, &chart);
    let (aux_values, particular) = build_family(&spec, &values, &chart);
    let reduced = reduced_view(&particular);
    let residual_status = if at_point.is_some() {
        // Pointwise mode: the solution is only claimed at the point.
        verify_at_point(data, &particular, at_point.unwrap())
    } else {
        verify_symbolic(data, &particular, &reduced)
    };
    Ok(SolveOutcome::Solved(Box::new(EwsSolution {
        pattern,
        aux_values,
        particular,
        reduced_view: reduced,
        nullspace_dimension: el.ncols - el.pivots.len(),
        residual_status,
    })))
}

pub fn solve_one_forms(data: &CurvatureData, pattern: Pattern) -> Result<SolveOutcome, SolveError> {
    solve_one_forms_with(data, pattern, None)
}

fn verify_symbolic(
    data: &CurvatureData,
    fam: &FormFamily15,
    reduced: &Option<FormFamily9>,
) -> ResidualStatus {
    let res = match reduced {
        Some(f9) => super::residuals::reduced_ews_residual(data, f9).expect("same chart"),
        None => super::residuals::ews_residual(data, fam).expect("same chart"),
    };
    match res.first_nonzero() {
        None => ResidualStatus::ProvenZero,
        Some((idx, e)) => ResidualStatus::NonzeroWitness { indices: idx, value: e.to_string() },
    }
}

fn verify_at_point(data: &CurvatureData, fam: &FormFamily15, point: &[Rat]) -> ResidualStatus {
    let res = super::residuals::ews_residual(data, fam).expect("same chart");
    for (idx, e) in res.iter() {
        if let Ok(v) = e.evaluate(point) {
            if !v.is_zero() {
                return ResidualStatus::NonzeroWitness {
                    indices: idx,
                    value: crate::expr::expression::rat_str(&v),
                };
            }
        }
    }
    ResidualStatus::ProvenZero
}

/// One nullspace basis vector, as named auxiliary forms.
pub type NullspaceVector = Vec<(String, OneForm)>;

/// Nullspace basis as form families (used by the classifier's
/// nonzero-witness annotation).
pub fn solve_with_nullspace(
    data: &CurvatureData,
    pattern: Pattern,
) -> Result<(SolveOutcome, Vec<NullspaceVector>), SolveError> {
    let spec = pattern_spec(pattern)
        .ok_or_else(|| SolveError::EmptyPattern(pattern.describe()))?;
    let chart = data.chart().clone();
    let sys = assemble(data, &spec, None);
    let (el, tags) = eliminate(sys, &chart);
    for row in &el.degenerate {
        if !row.rhs.is_zero() {
            let combination: Vec<(EquationTag, Expression)> = row
                .combo
                .iter()
                .map(|(&eid, m)| (tags[eid].clone(), m.clone()))
                .collect();
            let (point, value_at_point) = witness_point(data, &row.rhs)
                .unwrap_or_else(|| (vec![Rat::zero(); data.dim()], Rat::zero()));
            return Ok((
                SolveOutcome::NoSolution(Box::new(InconsistencyCertificate {
                    combination,
                    combined_rhs: row.rhs.clone(),
                    point,
                    value_at_point,
                })),
                Vec::new(),
            ));
        }
    }
    let values = particular_solution(&el, &chart);
    let (aux_values, particular) = build_family(&spec, &values, &chart);
    let reduced = reduced_view(&particular);
    let residual_status = verify_symbolic(data, &particular, &reduced);
    let mut basis = Vec::new();
    for free in free_columns(&el) {
        let vec = nullspace_vector(&el, free, &chart);
        let (aux_forms, _) = build_family(&spec, &vec, &chart);
        basis.push(aux_forms);
    }
    let outcome = SolveOutcome::Solved(Box::new(EwsSolution {
        pattern,
        aux_values,
        particular,
        reduced_view: reduced,
        nullspace_dimension: el.ncols - el.pivots.len(),
        residual_status,
    }));
    Ok((outcome, basis))
}

/// Re-checks a certificate: recombines the original equations of the
/// pattern's system at the certificate's point and confirms the
/// contradiction 0 = nonzero.
pub fn certificate_is_sound(
    data: &CurvatureData,
    pattern: Pattern,
    cert: &InconsistencyCertificate,
) -> bool {
    let Some(spec) = pattern_spec(pattern) else {
        return false;
    };
    let sys = assemble(data, &spec, None);
    let mut combined_coeffs: BTreeMap<usize, Rat> = BTreeMap::new();
    let mut combined_rhs = Rat::zero();
    for (tag, mult) in &cert.combination {
        let Some(eid) = sys.tags.iter().position(|t| t == tag) else {
            return false;
        };
        let Ok(mv) = mult.evaluate(&cert.point) else {
            return false;
        };
        let row = &sys.rows[eid];
        for (&c, e) in &row.coeffs {
            let Ok(v) = e.evaluate(&cert.point) else {
                return false;
            };
            *combined_coeffs.entry(c).or_insert_with(Rat::zero) += &mv * v;
        }
        let Ok(rv) = row.rhs.evaluate(&cert.point) else {
            return false;
        };
        combined_rhs += &mv * rv;
    }
    combined_coeffs.values().all(Rat::is_zero)
        && !combined_rhs.is_zero()
        && combined_rhs == cert.value_at_point
}
