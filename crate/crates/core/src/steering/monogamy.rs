//! Monogamy relations for Gaussian steerability in a tripartite system
//! `ABC`, where each party may hold several modes.
//!
//! | type | relation | party sizes |
//! |------|----------|-------------|
//! | I    | `G(A→C) > 0 ⇒ G(B→C) = 0` | all single-mode |
//! | II   | `G(A→C) > 0 ⇒ G(B→C) = 0` | `C` single-mode |
//! | IIIa | `G(C→AB) − G(C→A) − G(C→B) ≥ 0` | all single-mode |
//! | IIIb | `G(AB→C) − G(A→C) − G(B→C) ≥ 0` | all single-mode |
//! | IVa  | `G(C→AB) − G(C→A) − G(C→B) ≥ 0` | any |
//! | IVb  | `G(AB→C) − G(A→C) − G(B→C) ≥ 0` | `C` single-mode |
//!
//! Types II and IVb are not guaranteed once `C` holds more than one mode;
//! [`audit_monogamy`] refuses such assignments, while
//! [`audit_monogamy_unrestricted`] evaluates them anyway and marks the
//! report as outside the relation's guarantees.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{steering_value, STEERING_THRESHOLD};
use crate::error::{Error, Result};
use crate::labels::{default_labels, format_party};
use crate::symplectic::{CovarianceMatrix, ModePartition};

/// Residuals above `−RESIDUAL_TOLERANCE` count as satisfied.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationType {
    I,
    II,
    IIIa,
    IIIb,
    IVa,
    IVb,
}

impl RelationType {
    pub const ALL: [RelationType; 6] = [
        RelationType::I,
        RelationType::II,
        RelationType::IIIa,
        RelationType::IIIb,
        RelationType::IVa,
        RelationType::IVb,
    ];

    /// Whether party sizes `(n_A, n_B, n_C)` are within the relation's
    /// specification.
    pub fn admits(self, n_a: usize, n_b: usize, n_c: usize) -> bool {
        let all_single = n_a == 1 && n_b == 1 && n_c == 1;
        match self {
            RelationType::I | RelationType::IIIa | RelationType::IIIb => all_single,
            RelationType::II | RelationType::IVb => n_c == 1,
            RelationType::IVa => true,
        }
    }

    /// Verdict-style relations (I, II) rather than residuals.
    pub fn is_exclusion(self) -> bool {
        matches!(self, RelationType::I | RelationType::II)
    }

    /// True when `C` is the steering party (types IIIa and IVa).
    pub fn c_steers(self) -> bool {
        matches!(self, RelationType::IIIa | RelationType::IVa)
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RelationType::I => "I",
            RelationType::II => "II",
            RelationType::IIIa => "IIIa",
            RelationType::IIIb => "IIIb",
            RelationType::IVa => "IVa",
            RelationType::IVb => "IVb",
        };
        f.write_str(name)
    }
}

impl FromStr for RelationType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationType::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown monogamy relation type {s:?}")))
    }
}

/// Mode sets of the three parties `A`, `B`, `C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonogamyParties {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl MonogamyParties {
    pub fn new(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>) -> Result<Self> {
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return Err(Error::Arity(
                "every monogamy party needs at least one mode".into(),
            ));
        }
        let mut all: Vec<usize> = a.iter().chain(&b).chain(&c).copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(Error::Arity("monogamy parties must be disjoint".into()));
        }
        Ok(MonogamyParties { a, b, c })
    }

    fn ab(&self) -> Vec<usize> {
        let mut ab: Vec<usize> = self.a.iter().chain(&self.b).copied().collect();
        ab.sort_unstable();
        ab
    }
}

/// One named steering value entering a relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonogamyReport {
    pub relation_type: RelationType,
    pub parties: MonogamyParties,
    pub party_labels: [String; 3],
    pub lhs_terms: Vec<Term>,
    /// Present for types III and IV.
    pub residual: Option<f64>,
    pub satisfied: bool,
    /// False when the party sizes fall outside the relation's specification.
    pub within_specification: bool,
}

/// Audits one relation instance, enforcing the relation's party sizes.
pub fn audit_monogamy(
    cm: &CovarianceMatrix,
    relation: RelationType,
    parties: &MonogamyParties,
) -> Result<MonogamyReport> {
    audit_monogamy_labeled(cm, relation, parties, &default_labels(cm.n_modes()))
}

pub fn audit_monogamy_labeled(
    cm: &CovarianceMatrix,
    relation: RelationType,
    parties: &MonogamyParties,
    labels: &[String],
) -> Result<MonogamyReport> {
    let (n_a, n_b, n_c) = (parties.a.len(), parties.b.len(), parties.c.len());
    if !relation.admits(n_a, n_b, n_c) {
        return Err(Error::Arity(format!(
            "type {relation} does not admit party sizes (n_A, n_B, n_C) = ({n_a}, {n_b}, {n_c})"
        )));
    }
    evaluate(cm, relation, parties, labels)
}

/// Evaluates the relation's expression for any disjoint nonempty parties,
/// flagging assignments the relation does not cover.
pub fn audit_monogamy_unrestricted(
    cm: &CovarianceMatrix,
    relation: RelationType,
    parties: &MonogamyParties,
    labels: &[String],
) -> Result<MonogamyReport> {
    evaluate(cm, relation, parties, labels)
}

fn evaluate(
    cm: &CovarianceMatrix,
    relation: RelationType,
    parties: &MonogamyParties,
    labels: &[String],
) -> Result<MonogamyReport> {
    let parties = MonogamyParties::new(parties.a.clone(), parties.b.clone(), parties.c.clone())?;
    let name_a = format_party(labels, &parties.a);
    let name_b = format_party(labels, &parties.b);
    let name_c = format_party(labels, &parties.c);
    let name_ab = format_party(labels, &parties.ab());

    let term = |steering: &[usize], steered: &[usize], from: &str, to: &str| -> Result<Term> {
        let part = ModePartition::new(steering.to_vec(), steered.to_vec())?;
        Ok(Term {
            name: format!("G({from}->{to})"),
            value: steering_value(cm, &part)?,
        })
    };

    let (lhs_terms, residual, satisfied) = if relation.is_exclusion() {
        let t_a = term(&parties.a, &parties.c, &name_a, &name_c)?;
        let t_b = term(&parties.b, &parties.c, &name_b, &name_c)?;
        let both = t_a.value > STEERING_THRESHOLD && t_b.value > STEERING_THRESHOLD;
        (vec![t_a, t_b], None, !both)
    } else {
        let ab = parties.ab();
        let terms = if relation.c_steers() {
            vec![
                term(&parties.c, &ab, &name_c, &name_ab)?,
                term(&parties.c, &parties.a, &name_c, &name_a)?,
                term(&parties.c, &parties.b, &name_c, &name_b)?,
            ]
        } else {
            vec![
                term(&ab, &parties.c, &name_ab, &name_c)?,
                term(&parties.a, &parties.c, &name_a, &name_c)?,
                term(&parties.b, &parties.c, &name_b, &name_c)?,
            ]
        };
        let residual = terms[0].value - terms[1].value - terms[2].value;
        (terms, Some(residual), residual >= -RESIDUAL_TOLERANCE)
    };

    Ok(MonogamyReport {
        relation_type: relation,
        within_specification: relation.admits(parties.a.len(), parties.b.len(), parties.c.len()),
        party_labels: [name_a, name_b, name_c],
        parties,
        lhs_terms,
        residual,
        satisfied,
    })
}

/// Nonempty subsets of `modes`, in increasing size then lexicographic order.
fn subsets(modes: &[usize]) -> Vec<Vec<usize>> {
    let n = modes.len();
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| modes[i])
                .collect()
        })
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

fn all_assignments(n_modes: usize) -> Vec<MonogamyParties> {
    let modes: Vec<usize> = (0..n_modes).collect();
    let mut out = Vec::new();
    for c in subsets(&modes) {
        let rest: Vec<usize> = modes.iter().copied().filter(|m| !c.contains(m)).collect();
        for a in subsets(&rest) {
            let rest_b: Vec<usize> = rest.iter().copied().filter(|m| !a.contains(m)).collect();
            for b in subsets(&rest_b) {
                // A and B play symmetric roles in every relation.
                if a < b {
                    out.push(MonogamyParties {
                        a: a.clone(),
                        b,
                        c: c.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Every party assignment on `n_modes` modes that `relation` admits, with
/// the symmetric `A ↔ B` duplicates removed. Modes not named in an
/// assignment are traced out.
pub fn enumerate_instances(n_modes: usize, relation: RelationType) -> Vec<MonogamyParties> {
    all_assignments(n_modes)
        .into_iter()
        .filter(|p| relation.admits(p.a.len(), p.b.len(), p.c.len()))
        .collect()
}

/// Assignments with a multimode party `C` (the `(2+2)`-style instances of
/// the type-IVb expression, which the relation does not guarantee).
pub fn enumerate_multimode_steered(n_modes: usize) -> Vec<MonogamyParties> {
    all_assignments(n_modes)
        .into_iter()
        .filter(|p| p.c.len() > 1)
        .collect()
}

/// Assignments outside `relation`'s specification, for probing where its
/// guarantee breaks down.
pub fn enumerate_outside_specification(
    n_modes: usize,
    relation: RelationType,
) -> Vec<MonogamyParties> {
    all_assignments(n_modes)
        .into_iter()
        .filter(|p| !relation.admits(p.a.len(), p.b.len(), p.c.len()))
        .collect()
}
