use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::labels::{default_labels, label_of};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrature {
    X,
    P,
}

impl Quadrature {
    fn offset(self) -> usize {
        match self {
            Quadrature::X => 0,
            Quadrature::P => 1,
        }
    }

    fn letter(self) -> char {
        match self {
            Quadrature::X => 'x',
            Quadrature::P => 'p',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadratureTerm {
    pub mode: usize,
    pub quadrature: Quadrature,
    /// `+1` or `-1`.
    pub coefficient: i8,
}

/// Signed sum of quadratures, written like `pA-xC-xD`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Combo(Vec<QuadratureTerm>);

impl Combo {
    pub fn new(terms: Vec<QuadratureTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Parse("empty quadrature combination".into()));
        }
        if let Some(t) = terms
            .iter()
            .find(|t| t.coefficient != 1 && t.coefficient != -1)
        {
            return Err(Error::Parse(format!(
                "coefficients must be +1 or -1, got {}",
                t.coefficient
            )));
        }
        let mut seen: Vec<(usize, Quadrature)> =
            terms.iter().map(|t| (t.mode, t.quadrature)).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(
                "quadrature repeated within a combination".into(),
            ));
        }
        Ok(Combo(terms))
    }

    pub fn single(mode: usize, quadrature: Quadrature) -> Self {
        Combo(vec![QuadratureTerm {
            mode,
            quadrature,
            coefficient: 1,
        }])
    }

    /// `first + sign·second`.
    pub fn pair(first: (usize, Quadrature), second: (usize, Quadrature), sign: i8) -> Self {
        Combo(vec![
            QuadratureTerm {
                mode: first.0,
                quadrature: first.1,
                coefficient: 1,
            },
            QuadratureTerm {
                mode: second.0,
                quadrature: second.1,
                coefficient: sign,
            },
        ])
    }

    pub fn terms(&self) -> &[QuadratureTerm] {
        &self.0
    }

    /// Coefficient vector in interleaved quadrature order.
    pub fn coefficients(&self, n_modes: usize) -> Result<Vec<f64>> {
        let mut v = vec![0.0; 2 * n_modes];
        for t in &self.0 {
            if t.mode >= n_modes {
                return Err(Error::domain(format!(
                    "combination {self} refers to mode {} of a {n_modes}-mode state",
                    t.mode
                )));
            }
            v[2 * t.mode + t.quadrature.offset()] = f64::from(t.coefficient);
        }
        Ok(v)
    }

    /// Terms sorted by quadrature index with a positive leading coefficient.
    /// Combinations differing only by an overall sign have equal variance
    /// and share a canonical form.
    pub fn canonical(&self) -> Combo {
        let mut terms = self.0.clone();
        terms.sort_by_key(|t| (t.mode, t.quadrature));
        if terms[0].coefficient < 0 {
            for t in &mut terms {
                t.coefficient = -t.coefficient;
            }
        }
        Combo(terms)
    }

    pub fn format_with(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, t) in self.0.iter().enumerate() {
            if t.coefficient < 0 {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            out.push(t.quadrature.letter());
            out.push_str(&label_of(labels, t.mode));
        }
        out
    }

    pub fn parse_with(labels: &[String], text: &str) -> Result<Combo> {
        let bad =
            |why: &str| Error::Parse(format!("invalid quadrature combination {text:?}: {why}"));
        let mut rest = text.trim();
        let mut terms = Vec::new();
        while !rest.is_empty() {
            let mut coefficient = 1;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                coefficient = -1;
                rest = r;
            } else if !terms.is_empty() {
                return Err(bad("expected + or - between terms"));
            }
            let quadrature = match rest.chars().next() {
                Some('x') => Quadrature::X,
                Some('p') => Quadrature::P,
                _ => return Err(bad("expected x or p")),
            };
            rest = &rest[1..];
            let (mode, label) = labels
                .iter()
                .enumerate()
                .filter(|(_, l)| rest.starts_with(l.as_str()))
                .max_by_key(|(_, l)| l.len())
                .ok_or_else(|| bad("unknown mode label"))?;
            rest = &rest[label.len()..];
            terms.push(QuadratureTerm {
                mode,
                quadrature,
                coefficient,
            });
        }
        Combo::new(terms).map_err(|e| bad(&e.to_string()))
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.iter().map(|t| t.mode + 1).max().unwrap_or(0);
        f.write_str(&self.format_with(&default_labels(n)))
    }
}

impl FromStr for Combo {
    type Err = Error;

    /// Parses with the default `A, B, C, ...` labels.
    fn from_str(s: &str) -> Result<Self> {
        Combo::parse_with(&default_labels(26), s)
    }
}

impl Serialize for Combo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
