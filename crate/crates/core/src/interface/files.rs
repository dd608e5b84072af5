//! Line-oriented file formats.
//!
//! Metric file:
//! ```text
//! # comment
//! dim 4
//! coords x1 x2 x3 x4
//! g 1 1 : 1
//! g 2 2 : x1
//! ```
//! Forms file:
//! ```text
//! form A 1 : 2*x3^2*x4^2/(x1*(x3^2*x4^2 + x1^2*(x3+x4)))
//! ```
//! Indices are 1-based; unspecified entries are zero; the metric is
//! completed symmetrically and conflicting duplicates are rejected.

use crate::expr::{parse_expression, Chart, Expression};
use crate::geometry::{MetricError, MetricSpec};
use crate::symmetry::{FormFamily15, FormFamily9, OneForm, NAMES_15, NAMES_9};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: bad expression: {msg}")]
    BadExpression { line: usize, msg: String },
    #[error("missing `dim` declaration")]
    MissingDim,
    #[error("missing `coords` declaration")]
    MissingCoords,
    #[error("line {line}: index {index} outside 1..={dim}")]
    IndexRange { line: usize, index: usize, dim: usize },
    #[error("line {line}: conflicting duplicate entry for g[{i},{j}]")]
    DuplicateEntry { line: usize, i: usize, j: usize },
    #[error("line {line}: unknown form name `{name}`")]
    UnknownForm { line: usize, name: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
}

pub fn parse_metric_spec(text: &str) -> Result<MetricSpec, FileError> {
    let mut dim: Option<usize> = None;
    let mut chart: Option<Chart> = None;
    let mut entries: Vec<(usize, usize, usize, Expression)> = Vec::new(); // (line, i, j, e)
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        match words.next() {
            Some("dim") => {
                let v = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| FileError::Syntax {
                        line,
                        msg: "expected `dim <positive integer>`".to_string(),
                    })?;
                if v < 2 {
                    return Err(FileError::Syntax {
                        line,
                        msg: format!("dimension must be at least 2, got {v}"),
                    });
                }
                dim = Some(v);
            }
            Some("coords") => {
                let names: Vec<String> = words.map(str::to_string).collect();
                let d = dim.ok_or(FileError::MissingDim)?;
                if names.len() != d {
                    return Err(FileError::Syntax {
                        line,
                        msg: format!("expected {d} coordinate names, got {}", names.len()),
                    });
                }
                chart = Some(Chart::new(names).map_err(|e| FileError::Syntax {
                    line,
                    msg: e.to_string(),
                })?);
            }
            Some("g") => {
                let d = dim.ok_or(FileError::MissingDim)?;
                let c = chart.clone().ok_or(FileError::MissingCoords)?;
                let (i, j, rest) = parse_indexed(body, 2, line)?;
                let i = check_index(i, d, line)?;
                let j = check_index(j, d, line)?;
                let e = parse_expression(rest, &c).map_err(|e| FileError::BadExpression {
                    line,
                    msg: e.to_string(),
                })?;
                entries.push((line, i, j, e));
            }
            Some(other) => {
                return Err(FileError::Syntax {
                    line,
                    msg: format!("unknown directive `{other}`"),
                })
            }
            None => unreachable!(),
        }
    }
    let d = dim.ok_or(FileError::MissingDim)?;
    let chart = chart.ok_or(FileError::MissingCoords)?;
    let mut comps: Vec<Vec<Option<Expression>>> = vec![vec![None; d]; d];
    for (line, i, j, e) in entries {
        for (a, b) in [(i, j), (j, i)] {
            match &comps[a][b] {
                Some(existing) if *existing != e => {
                    return Err(FileError::DuplicateEntry { line, i: i + 1, j: j + 1 })
                }
                _ => comps[a][b] = Some(e.clone()),
            }
        }
    }
    let zero = Expression::zero(&chart);
    let matrix: Vec<Vec<Expression>> = comps
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect())
        .collect();
    Ok(MetricSpec::new(chart, matrix)?)
}

fn parse_indexed<'a>(
    body: &'a str,
    n_indices: usize,
    line: usize,
) -> Result<(usize, usize, &'a str), FileError> {
    let (head, rest) = body.split_once(':').ok_or_else(|| FileError::Syntax {
        line,
        msg: "expected `:` before the expression".to_string(),
    })?;
    let words: Vec<&str> = head.split_whitespace().collect();
    if words.len() != n_indices + 1 {
        return Err(FileError::Syntax {
            line,
            msg: format!("expected {n_indices} indices before `:`"),
        });
    }
    let parse_idx = |w: &str| -> Result<usize, FileError> {
        w.parse::<usize>().map_err(|_| FileError::Syntax {
            line,
            msg: format!("bad index `{w}`"),
        })
    };
    let i = parse_idx(words[1])?;
    let j = if n_indices == 2 { parse_idx(words[2])? } else { 0 };
    Ok((i, j, rest.trim()))
}

fn check_index(i: usize, dim: usize, line: usize) -> Result<usize, FileError> {
    if i == 0 || i > dim {
        return Err(FileError::IndexRange { line, index: i, dim });
    }
    Ok(i - 1)
}

/// Alphabet selector for forms files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormsAlphabet {
    Reduced9,
    Full15,
}

#[derive(Debug, Clone)]
pub enum ParsedForms {
    Reduced(FormFamily9),
    Full(FormFamily15),
}

pub fn parse_forms_file(
    text: &str,
    alphabet: FormsAlphabet,
    chart: &Chart,
) -> Result<ParsedForms, FileError> {
    let names: &[&str] = match alphabet {
        FormsAlphabet::Reduced9 => &NAMES_9,
        FormsAlphabet::Full15 => &NAMES_15,
    };
    let d = chart.dim();
    let mut collected: Vec<OneForm> = names.iter().map(|_| OneForm::zero(chart)).collect();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        match words.next() {
            Some("form") => {
                let name = words.next().ok_or_else(|| FileError::Syntax {
                    line,
                    msg: "expected `form <NAME> <i> : <expr>`".to_string(),
                })?;
                let pos = names
                    .iter()
                    .position(|&n| n == name)
                    .ok_or_else(|| FileError::UnknownForm { line, name: name.to_string() })?;
                let idx_word = words.next().ok_or_else(|| FileError::Syntax {
                    line,
                    msg: "missing component index".to_string(),
                })?;
                let idx: usize = idx_word.parse().map_err(|_| FileError::Syntax {
                    line,
                    msg: format!("bad index `{idx_word}`"),
                })?;
                let idx = check_index(idx, d, line)?;
                let rest = body.split_once(':').map(|(_, r)| r.trim()).ok_or_else(|| {
                    FileError::Syntax {
                        line,
                        msg: "expected `:` before the expression".to_string(),
                    }
                })?;
                let e = parse_expression(rest, chart).map_err(|e| FileError::BadExpression {
                    line,
                    msg: e.to_string(),
                })?;
                collected[pos].set(idx, e);
            }
            Some(other) => {
                return Err(FileError::Syntax {
                    line,
                    msg: format!("unknown directive `{other}`"),
                })
            }
            None => unreachable!(),
        }
    }
    Ok(match alphabet {
        FormsAlphabet::Reduced9 => {
            let mut f = FormFamily9::zero(chart);
            for (i, name) in NAMES_9.iter().enumerate() {
                f.set(name, collected[i].clone());
            }
            ParsedForms::Reduced(f)
        }
        FormsAlphabet::Full15 => {
            let mut f = FormFamily15::zero(chart);
            for (i, name) in NAMES_15.iter().enumerate() {
                f.set(name, collected[i].clone());
            }
            ParsedForms::Full(f)
        }
    })
}

/// Renders a metric spec in the file format; parse(render(m)) == m.
pub fn render_metric_spec(m: &MetricSpec) -> String {
    let chart = m.chart();
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", chart.dim()));
    out.push_str(&format!("coords {}\n", chart.coords().join(" ")));
    for i in 0..chart.dim() {
        for j in i..chart.dim() {
            let e = m.component(i, j);
            if !e.is_zero() {
                out.push_str(&format!("g {} {} : {}\n", i + 1, j + 1, e));
            }
        }
    }
    out
}

/// Renders a reduced forms family; parse(render(f)) == f.
pub fn render_forms9(f: &FormFamily9) -> String {
    let mut out = String::new();
    for name in NAMES_9 {
        let form = f.get(name).unwrap();
        for (i, e) in form.components().iter().enumerate() {
            if !e.is_zero() {
                out.push_str(&format!("form {} {} : {}\n", name, i + 1, e));
            }
        }
    }
    out
}

pub fn render_forms15(f: &FormFamily15) -> String {
    let mut out = String::new();
    for name in NAMES_15 {
        let form = f.get(name).unwrap();
        for (i, e) in form.components().iter().enumerate() {
            if !e.is_zero() {
                out.push_str(&format!("form {} {} : {}\n", name, i + 1, e));
            }
        }
    }
    out
}
