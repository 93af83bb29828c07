use std::fmt;

use serde::Serialize;

use crate::linmap::{unravel, LinMap, SparseVec};

/// First failing basis tuple of one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: String,
    /// Basis multi-index of the domain (factors of dimension 1 omitted).
    pub witness: Vec<usize>,
    pub lhs: SparseVec,
    pub rhs: SparseVec,
    /// Number of failing basis tuples, including the witness.
    pub mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Verdict of an exhaustive check: every identity that was checked, and the
/// first witness for each one that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checked: Vec<String>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, axiom: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    /// Checks `lhs == rhs` as maps, scanning basis tuples of the domain in
    /// lexicographic order. Factor lists are taken from `lhs`.
    pub fn check_maps(&mut self, axiom: &str, lhs: &LinMap, rhs: &LinMap) -> bool {
        self.checked.push(axiom.to_string());
        if lhs.dom_dim() != rhs.dom_dim() || lhs.cod_dim() != rhs.cod_dim() || lhs.field() != rhs.field() {
            self.failures.push(Failure {
                axiom: axiom.to_string(),
                witness: Vec::new(),
                lhs: SparseVec::zero(0),
                rhs: SparseVec::zero(0),
                mismatches: 0,
                note: Some(format!(
                    "shape mismatch: {}x{} vs {}x{}",
                    lhs.cod_dim(),
                    lhs.dom_dim(),
                    rhs.cod_dim(),
                    rhs.dom_dim()
                )),
            });
            return false;
        }
        match lhs.first_difference(rhs) {
            None => true,
            Some((col, count)) => {
                let factors = lhs.dom_factors();
                let witness = unravel(col, factors)
                    .into_iter()
                    .zip(factors)
                    .filter(|(_, &d)| d > 1)
                    .map(|(i, _)| i)
                    .collect();
                self.failures.push(Failure {
                    axiom: axiom.to_string(),
                    witness,
                    lhs: lhs.column(col).clone(),
                    rhs: rhs.column(col).clone(),
                    mismatches: count,
                    note: None,
                });
                false
            }
        }
    }

    /// Records a failure that is not a map equality (a precondition or a
    /// structural property).
    pub fn fail(&mut self, axiom: &str, note: impl Into<String>) {
        self.checked.push(axiom.to_string());
        self.failures.push(Failure {
            axiom: axiom.to_string(),
            witness: Vec::new(),
            lhs: SparseVec::zero(0),
            rhs: SparseVec::zero(0),
            mismatches: 1,
            note: Some(note.into()),
        });
    }

    /// Records a passing structural check.
    pub fn pass(&mut self, axiom: &str) {
        self.checked.push(axiom.to_string());
    }

    pub fn merge(&mut self, other: Report) {
        self.checked.extend(other.checked);
        self.failures.extend(other.failures);
    }

    pub fn merged(mut self, other: Report) -> Report {
        self.merge(other);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{}: {verdict} ({} identities checked)", self.subject, self.checked.len())?;
        for fail in &self.failures {
            write!(f, "  failed {} at {:?}", fail.axiom, fail.witness)?;
            if let Some(note) = &fail.note {
                write!(f, ": {note}")?;
            } else {
                write!(f, " ({} mismatches): lhs = {}, rhs = {}", fail.mismatches, fail.lhs, fail.rhs)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Field;

    #[test]
    fn witness_is_first_failing_tuple() {
        let q = Field::Rationals;
        let id = LinMap::identity(q, vec![2, 3]);
        let mut other = id.clone();
        other = other
            .add(&LinMap::from_triples(q, vec![2, 3], vec![2, 3], [(0, 4, q.one()), (0, 5, q.one())]).unwrap())
            .unwrap();
        let mut r = Report::new("t");
        assert!(!r.check_maps("ax", &id, &other));
        let fail = r.failure("ax").unwrap();
        assert_eq!(fail.witness, vec![1, 1]);
        assert_eq!(fail.mismatches, 2);
        assert_eq!(id.column(4), &fail.lhs);
        assert!(!r.passed());
    }

    #[test]
    fn unit_factors_dropped_from_witness() {
        let q = Field::Rationals;
        let a = LinMap::identity(q, vec![3, 1]);
        let b = LinMap::zero(q, vec![3, 1], vec![3, 1]).unwrap();
        let mut r = Report::new("t");
        r.check_maps("ax", &a, &b);
        assert_eq!(r.failures[0].witness, vec![0]);
    }
}
