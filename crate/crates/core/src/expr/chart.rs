//! Coordinate charts: an ordered list of distinct coordinate names.

use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    coords: Arc<Vec<String>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("chart needs at least 2 coordinates, got {0}")]
    TooSmall(usize),
    #[error("duplicate coordinate name `{0}`")]
    Duplicate(String),
    #[error("invalid coordinate name `{0}`")]
    BadName(String),
}

impl Chart {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, ChartError> {
        let coords: Vec<String> = names.into_iter().map(Into::into).collect();
        if coords.len() < 2 {
            return Err(ChartError::TooSmall(coords.len()));
        }
        for name in &coords {
            let mut chars = name.chars();
            let head_ok = chars.next().map_or(false, |c| c.is_ascii_alphabetic() || c == '_');
            if !head_ok || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(ChartError::BadName(name.clone()));
            }
        }
        for (i, a) in coords.iter().enumerate() {
            if coords[i + 1..].contains(a) {
                return Err(ChartError::Duplicate(a.clone()));
            }
        }
        Ok(Chart { coords: Arc::new(coords) })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn name(&self, v: usize) -> &str {
        &self.coords[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Chart::new(vec!["x1", "x2"]).is_ok());
        assert_eq!(Chart::new(vec!["x1"]).unwrap_err(), ChartError::TooSmall(1));
        assert_eq!(
            Chart::new(vec!["x", "x"]).unwrap_err(),
            ChartError::Duplicate("x".into())
        );
        assert!(matches!(Chart::new(vec!["x", "2y"]).unwrap_err(), ChartError::BadName(_)));
    }
}
