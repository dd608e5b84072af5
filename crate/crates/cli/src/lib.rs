//! `curvlab` command-line interface.
//!
//! Exit codes: 0 = success / verified, 1 = computed and false (nonzero
//! residual, no solution, failed identity), 2 = usage or input error,
//! 3 = internal invariant breach.

use clap::{Args, Parser, Subcommand};
use curvlab_core::expr::{parse_rat, Rat};
use curvlab_core::geometry::{
    contract_metric, covariant_derivative, has_riemann_symmetries, oracle_check, riemann_dense,
    satisfies_first_bianchi, CurvatureData, MetricSpec,
};
use curvlab_core::interface::{
    component_key, parse_forms_file, parse_metric_spec, run_paper_example, Format, FormsAlphabet,
    ParsedForms, Report,
};
use curvlab_core::symmetry::{
    classify_with, ews_residual, prop_identity_residual, reduced_ews_residual, solve_one_forms_with,
    OneForm, Pattern, ResidualStatus, SolveOutcome, Verdict,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Write;

#[derive(Parser)]
#[command(name = "curvlab", version, about = "Exact curvature and symmetry-structure calculator", disable_help_subcommand = true)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, default_value = "human", value_parser = ["human", "json"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Path to a metric spec file.
    spec: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a curvature tensor of the metric.
    Compute {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_parser = [
            "christoffel", "riemann", "ricci", "scalar", "weyl", "G", "H",
            "grad-riemann", "grad-ricci",
        ])]
        tensor: String,
    },
    /// Check the defining equation for a given one-form family.
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        forms: String,
        #[arg(long, value_parser = ["full-15", "reduced-9"])]
        pattern: String,
    },
    /// Solve the defining equation for the one-forms of a pattern.
    Solve {
        #[command(flatten)]
        spec: SpecArg,
        /// full-15, reduced-9, or a taxonomy id (i..xvii or a class name).
        #[arg(long)]
        pattern: String,
        /// Pointwise diagnostic mode: "x1=1,x2=1/2,...".
        #[arg(long)]
        at_point: Option<String>,
    },
    /// Classify the metric across the symmetry taxonomy.
    Classify {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Exact identity suite: Bianchi 1 and 2, metric compatibility, Weyl
    /// traces, contraction coherence, and the two-form proposition residual.
    CheckIdentities {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Pointwise jet oracle at random non-pole rational points.
    Oracle {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reproduce the embedded worked example and compare every table entry.
    PaperExample,
}

pub fn run<W: Write>(argv: Vec<String>, out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let format = Format::parse(&cli.format).expect("validated by clap");
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        dispatch(&cli.command, format, out)
    }));
    match result {
        Ok(code) => code,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".to_string());
            let _ = writeln!(out, "internal invariant breach: {msg}");
            3
        }
    }
}

fn load_metric<W: Write>(path: &str, out: &mut W) -> Result<MetricSpec, i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(out, "error: cannot read `{path}`: {e}");
            return Err(2);
        }
    };
    match parse_metric_spec(&text) {
        Ok(m) => Ok(m),
        Err(e) => {
            let _ = writeln!(out, "error: {path}: {e}");
            Err(2)
        }
    }
}

fn dispatch<W: Write>(cmd: &Command, format: Format, out: &mut W) -> i32 {
    match cmd {
        Command::Compute { spec, tensor } => compute(&spec.spec, tensor, format, out),
        Command::Verify { spec, forms, pattern } => verify(&spec.spec, forms, pattern, format, out),
        Command::Solve { spec, pattern, at_point } => {
            solve(&spec.spec, pattern, at_point.as_deref(), format, out)
        }
        Command::Classify { spec } => classify_cmd(&spec.spec, format, out),
        Command::CheckIdentities { spec } => check_identities(&spec.spec, format, out),
        Command::Oracle { spec, points, seed } => oracle_cmd(&spec.spec, *points, *seed, format, out),
        Command::PaperExample => paper_example(format, out),
    }
}

fn compute<W: Write>(path: &str, tensor: &str, format: Format, out: &mut W) -> i32 {
    let m = match load_metric(path, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let mut report = Report::new("compute", m.chart().coords());
    match tensor {
        "christoffel" => {
            let data = CurvatureData::new(&m);
            for ((k, i, j), e) in data.gamma.nonzero() {
                report
                    .tensors
                    .insert(component_key("Gamma", &[k, i, j], 0), e.to_string());
            }
            report
                .zero_flags
                .insert("Gamma".into(), data.gamma.nonzero().is_empty());
        }
        "riemann" => {
            let data = CurvatureData::new(&m);
            report.add_tensor("R", &data.riemann, 0);
        }
        "ricci" => {
            let data = CurvatureData::new(&m);
            report.add_tensor("S", &data.ricci, 0);
        }
        "scalar" => {
            let data = CurvatureData::new(&m);
            report.add_scalar("r", &data.scalar);
        }
        "weyl" => {
            let data = CurvatureData::new(&m);
            match data.weyl() {
                Ok(c) => report.add_tensor("C", &c, 0),
                Err(e) => {
                    let _ = writeln!(out, "error: {e}");
                    return 2;
                }
            }
        }
        "G" => {
            let data = CurvatureData::new(&m);
            report.add_tensor("G", &data.g_wedge_g, 0);
        }
        "H" => {
            let data = CurvatureData::new(&m);
            report.add_tensor("H", &data.g_wedge_s, 0);
        }
        "grad-riemann" => {
            let data = CurvatureData::new(&m);
            report.add_tensor("gradR", &data.nabla_riemann, 1);
        }
        "grad-ricci" => {
            let data = CurvatureData::new(&m);
            report.add_tensor("gradS", &data.nabla_ricci, 1);
        }
        _ => unreachable!("validated by clap"),
    }
    let _ = write!(out, "{}", report.emit(format));
    0
}

fn verify<W: Write>(path: &str, forms_path: &str, pattern: &str, format: Format, out: &mut W) -> i32 {
    let m = match load_metric(path, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let forms_text = match std::fs::read_to_string(forms_path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(out, "error: cannot read `{forms_path}`: {e}");
            return 2;
        }
    };
    let alphabet = if pattern == "full-15" {
        FormsAlphabet::Full15
    } else {
        FormsAlphabet::Reduced9
    };
    let parsed = match parse_forms_file(&forms_text, alphabet, m.chart()) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(out, "error: {forms_path}: {e}");
            return 2;
        }
    };
    let data = CurvatureData::new(&m);
    let residual = match &parsed {
        ParsedForms::Reduced(f) => reduced_ews_residual(&data, f).expect("same chart"),
        ParsedForms::Full(f) => ews_residual(&data, f).expect("same chart"),
    };
    let mut report = Report::new("verify", m.chart().coords());
    report.verdict("pattern", pattern);
    let nonzero = residual.nonzero();
    if nonzero.is_empty() {
        report.verdict("defining-equation", "holds (residual identically zero)");
        let _ = write!(out, "{}", report.emit(format));
        0
    } else {
        report.verdict(
            "defining-equation",
            format!("fails ({} nonzero residual components)", nonzero.len()),
        );
        for (idx, e) in nonzero.iter().take(5) {
            report
                .tensors
                .insert(component_key("residual", idx, 1), e.to_string());
        }
        let _ = write!(out, "{}", report.emit(format));
        1
    }
}

fn parse_point(text: &str, m: &MetricSpec) -> Result<Vec<Rat>, String> {
    let mut vals: Vec<Option<Rat>> = vec![None; m.dim()];
    for piece in text.split(',') {
        let (name, val) = piece
            .split_once('=')
            .ok_or_else(|| format!("bad assignment `{piece}`"))?;
        let idx = m
            .chart()
            .index_of(name.trim())
            .ok_or_else(|| format!("unknown coordinate `{}`", name.trim()))?;
        vals[idx] = Some(parse_rat(val).ok_or_else(|| format!("bad rational `{val}`"))?);
    }
    vals.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| format!("coordinate `{}` unassigned", m.chart().name(i))))
        .collect()
}

fn solve<W: Write>(
    path: &str,
    pattern_text: &str,
    at_point: Option<&str>,
    format: Format,
    out: &mut W,
) -> i32 {
    let m = match load_metric(path, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let Some(pattern) = Pattern::parse(pattern_text) else {
        let _ = writeln!(out, "error: unknown pattern `{pattern_text}`");
        return 2;
    };
    let point = match at_point {
        None => None,
        Some(text) => match parse_point(text, &m) {
            Ok(p) => Some(p),
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                return 2;
            }
        },
    };
    let data = CurvatureData::new(&m);
    let outcome = match solve_one_forms_with(&data, pattern, point.as_deref()) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return 2;
        }
    };
    let mut report = Report::new("solve", m.chart().coords());
    report.verdict("pattern", pattern.describe());
    match outcome {
        SolveOutcome::Solved(sol) => {
            report.verdict("status", "solved");
            report.verdict(
                "nullspace-dimension",
                sol.nullspace_dimension.to_string(),
            );
            let verified = match &sol.residual_status {
                ResidualStatus::ProvenZero => true,
                ResidualStatus::NonzeroWitness { .. } => false,
            };
            report.verdict(
                "residual-status",
                match &sol.residual_status {
                    ResidualStatus::ProvenZero => "proven-zero".to_string(),
                    ResidualStatus::NonzeroWitness { indices, value } => {
                        format!("nonzero-witness at {indices:?}: {value}")
                    }
                },
            );
            for (name, form) in &sol.aux_values {
                for (c, e) in form.components().iter().enumerate() {
                    if !e.is_zero() {
                        report
                            .tensors
                            .insert(format!("{name}[{}]", c + 1), e.to_string());
                    }
                }
            }
            let _ = write!(out, "{}", report.emit(format));
            if verified {
                0
            } else {
                // a solved system must re-verify; anything else is a bug
                3
            }
        }
        SolveOutcome::NoSolution(cert) => {
            report.verdict("status", "no-solution");
            report.certificate(format!(
                "combination of {} equations reduces to 0 = {}, which evaluates to {} at ({})",
                cert.combination.len(),
                cert.combined_rhs,
                curvlab_core::expr::expression::rat_str(&cert.value_at_point),
                cert.point
                    .iter()
                    .map(curvlab_core::expr::expression::rat_str)
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            for (tag, mult) in cert.combination.iter().take(6) {
                report.certificate(format!("  equation {tag} with multiplier {mult}"));
            }
            let _ = write!(out, "{}", report.emit(format));
            1
        }
    }
}

fn classify_cmd<W: Write>(path: &str, format: Format, out: &mut W) -> i32 {
    let m = match load_metric(path, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let data = CurvatureData::new(&m);
    let classification = classify_with(&data).expect("classification");
    let mut report = Report::new("classify", m.chart().coords());
    report.verdict(
        "flag locally-symmetric",
        classification.flags.locally_symmetric.to_string(),
    );
    report.verdict(
        "flag constant-curvature",
        match &classification.flags.constant_curvature {
            Some(c) => format!("c = {}", curvlab_core::expr::expression::rat_str(c)),
            None => "no".to_string(),
        },
    );
    report.verdict(
        "flag einstein",
        match &classification.flags.einstein {
            Some(a) => format!("a = {a}"),
            None => "no".to_string(),
        },
    );
    report.verdict(
        "flag conformally-flat",
        match classification.flags.conformally_flat {
            Some(v) => v.to_string(),
            None => "not-applicable".to_string(),
        },
    );
    for (pos, v) in classification.classes.iter().enumerate() {
        let key = format!("class {:02} ({}) {}", pos + 1, v.class.roman(), v.label);
        let text = match &v.verdict {
            Verdict::Holds { nullspace_dimension, nonzero_witness } => format!(
                "holds (nullspace dimension {nullspace_dimension}{})",
                match nonzero_witness {
                    Some(true) => ", nonzero witness exists",
                    Some(false) => ", required forms forced to vanish",
                    None => "",
                }
            ),
            Verdict::Fails { certificate } => format!(
                "fails (certificate: 0 = {} at ({}))",
                certificate.combined_rhs,
                certificate
                    .point
                    .iter()
                    .map(curvlab_core::expr::expression::rat_str)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Verdict::NotApplicable { reason } => format!("not-applicable ({reason})"),
        };
        report.verdict(&key, text);
    }
    let _ = write!(out, "{}", report.emit(format));
    0
}

fn check_identities<W: Write>(path: &str, format: Format, out: &mut W) -> i32 {
    let m = match load_metric(path, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let data = CurvatureData::new(&m);
    let n = m.dim();
    let mut report = Report::new("check-identities", m.chart().coords());
    let mut all_ok = true;
    let mut check = |report: &mut Report, name: &str, ok: bool| {
        report.verdict(name, if ok { "holds" } else { "FAILS" });
        all_ok &= ok;
    };
    let dense = riemann_dense(&m);
    let dense_matches = dense
        .iter()
        .all(|(idx, e)| e == data.riemann.get(&idx));
    check(&mut report, "riemann dense/orbit agreement", dense_matches);
    check(&mut report, "riemann symmetries", has_riemann_symmetries(&dense));
    check(&mut report, "first bianchi", satisfies_first_bianchi(&dense));
    let mut second = true;
    'outer: for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s = data
                            .nabla_riemann
                            .get(&[h, i, j, k, l])
                            .add(data.nabla_riemann.get(&[i, l, j, k, h]))
                            .add(data.nabla_riemann.get(&[l, h, j, k, i]));
                        if !s.is_zero() {
                            second = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    check(&mut report, "second bianchi", second);
    let nabla_g = covariant_derivative(m.tensor(), &m).expect("covariant");
    check(&mut report, "metric compatibility", nabla_g.is_identically_zero());
    let contracted = contract_metric(&data.riemann, 0, 3, &data.ginv).expect("slots");
    let ricci_ok = contracted.iter().all(|(idx, e)| e == data.ricci.get(&idx));
    check(&mut report, "ricci = contraction of riemann", ricci_ok);
    if n >= 3 {
        let c = data.weyl().expect("n >= 3");
        let mut traces_ok = true;
        for (sa, sb) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            let t = contract_metric(&c, sa, sb, &data.ginv).expect("slots");
            traces_ok &= t.is_identically_zero();
        }
        check(&mut report, "weyl trace-free", traces_ok);
    }
    // Proposition residual suite: the claimed pointwise identity for
    // generalized curvature tensors, reported rather than assumed.
    let chart = m.chart().clone();
    let mut a = OneForm::zero(&chart);
    a.set(0, curvlab_core::expr::Expression::one(&chart));
    let b = a.clone();
    let res = prop_identity_residual(&data.g_wedge_g, &a, &b).expect("riemann-type");
    report.verdict(
        "proposition residual (K = g^g, A = B = dx1)",
        if res.is_identically_zero() { "zero" } else { "nonzero (identity not presumed)" },
    );
    let _ = write!(out, "{}", report.emit(format));
    if all_ok {
        0
    } else {
        1
    }
}

fn oracle_cmd<W: Write>(path: &str, points: usize, seed: u64, format: Format, out: &mut W) -> i32 {
    let m = match load_metric(path, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let n = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("oracle", m.chart().coords());
    let mut all_ok = true;
    let mut found = 0usize;
    let mut attempts = 0usize;
    while found < points && attempts < points * 200 {
        attempts += 1;
        let p: Vec<Rat> = (0..n)
            .map(|_| Rat::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=4).into()))
            .collect();
        match oracle_check(&m, &p, 3) {
            Ok(rep) => {
                found += 1;
                let label = format!(
                    "point {} ({})",
                    found,
                    p.iter()
                        .map(curvlab_core::expr::expression::rat_str)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                if rep.agrees() {
                    report.verdict(&label, format!("agrees ({} values compared)", rep.compared));
                } else {
                    all_ok = false;
                    report.verdict(
                        &label,
                        format!("{} mismatches, first: {:?}", rep.mismatches.len(), rep.mismatches[0]),
                    );
                }
            }
            Err(_) => continue, // pole; resample
        }
    }
    if found < points {
        let _ = writeln!(out, "error: could not find {points} non-pole points");
        return 2;
    }
    let _ = write!(out, "{}", report.emit(format));
    if all_ok {
        0
    } else {
        1
    }
}

fn paper_example<W: Write>(format: Format, out: &mut W) -> i32 {
    let rep = run_paper_example();
    let chart = curvlab_core::interface::fixture_metric().chart().clone();
    let mut report = Report::new("paper-example", chart.coords());
    for c in &rep.comparisons {
        let idx: Vec<usize> = c.indices.iter().map(|i| i - 1).collect();
        let split = usize::from(matches!(c.tensor, "gradR" | "gradS"));
        let key = component_key(c.tensor, &idx, split);
        report.verdict(
            &key,
            if c.matches {
                format!("matches ({})", c.computed)
            } else {
                format!("MISMATCH: expected {}, computed {}", c.expected, c.computed)
            },
        );
    }
    report.verdict(
        "defining-equation with embedded forms",
        match &rep.residual_witness {
            None => "residual identically zero".to_string(),
            Some((idx, v)) => format!("nonzero residual, component {idx:?} = {v}"),
        },
    );
    let matches = rep.comparisons.iter().filter(|c| c.matches).count();
    report.verdict(
        "table summary",
        format!("{matches}/{} embedded entries reproduced", rep.comparisons.len()),
    );
    let _ = write!(out, "{}", report.emit(format));
    if rep.all_pass() {
        0
    } else {
        1
    }
}

/// Entry point used by `main`; reads real argv and writes to stdout.
pub fn run_cli() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    let code = run(argv, &mut stdout);
    let _ = stdout.flush();
    code
}
