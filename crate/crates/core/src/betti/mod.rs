//! Exact graded Betti numbers of monomial ideals and derived invariants.
//!
//! The oracle computes homology of the Taylor complex of the minimal
//! generators, tensored with the coefficient field, grouped by multidegree.
//! It needs no Grobner machinery, works directly on non-squarefree ideals,
//! and costs `2^r` in the number `r` of generators, which the generator cap
//! keeps at desk scale.

mod linalg;
mod taylor;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::ideal::MonomialIdeal;

pub use linalg::{FieldError, FieldSpec};
pub use taylor::{EngineKind, Skeleton, HARD_GENERATOR_CAP};

/// Default generator cap: `2^22` Taylor faces is the desk-scale frontier.
pub const DEFAULT_GENERATOR_CAP: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error("the zero ideal has no Betti table")]
    ZeroIdeal,
    #[error("the unit ideal has no Betti table")]
    ImproperIdeal,
    #[error("ideal has {have} minimal generators; raise the cap to at least {have} (current cap {cap})")]
    GeneratorCap { have: usize, cap: usize },
    #[error("multidegree class too hard: {faces} faces, {nerve_vertices} nerve vertices")]
    BucketTooHard { faces: u64, nerve_vertices: usize },
    #[error("empty Betti table")]
    EmptyTable,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Graded Betti numbers of an ideal: a map `(i, j) -> beta_{i,j}`, absent
/// keys meaning zero. `n` is the ambient variable count, used for depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: usize,
    pub field: FieldSpec,
    entries: BTreeMap<(u32, u64), u64>,
}

impl BettiTable {
    pub fn from_entries(
        n: usize,
        field: FieldSpec,
        entries: BTreeMap<(u32, u64), u64>,
    ) -> Self {
        let entries = entries.into_iter().filter(|&(_, beta)| beta > 0).collect();
        Self { n, field, entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &beta)| (i, j, beta))
    }

    pub fn entry(&self, i: u32, j: u64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Tables computed over different fields (or ambient rings) compare by
    /// their entries alone.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    /// `max { j - i }` over nonzero entries.
    pub fn regularity(&self) -> Result<i64, BettiError> {
        self.entries
            .keys()
            .map(|&(i, j)| j as i64 - i64::from(i))
            .max()
            .ok_or(BettiError::EmptyTable)
    }

    /// `max { i }` over nonzero entries.
    pub fn projective_dimension(&self) -> Result<u32, BettiError> {
        self.entries
            .keys()
            .map(|&(i, _)| i)
            .max()
            .ok_or(BettiError::EmptyTable)
    }

    /// Auslander-Buchsbaum: `n - pd` for the ideal as a module.
    pub fn depth(&self) -> Result<i64, BettiError> {
        Ok(self.n as i64 - i64::from(self.projective_dimension()?))
    }

    /// All generators in one degree `d` and every entry on the line
    /// `j = i + d`.
    pub fn has_linear_resolution(&self) -> bool {
        let degrees: Vec<u64> = self
            .entries
            .keys()
            .filter(|&&(i, _)| i == 0)
            .map(|&(_, j)| j)
            .collect();
        let [d] = degrees.as_slice() else {
            return false;
        };
        self.entries.keys().all(|&(i, j)| j == u64::from(i) + d)
    }

    /// The table of the quotient module: shift homological degrees up by
    /// one and add the rank-one entry in degree zero.
    pub fn quotient_view(&self) -> BettiTable {
        let mut entries: BTreeMap<(u32, u64), u64> = self
            .entries
            .iter()
            .map(|(&(i, j), &beta)| ((i + 1, j), beta))
            .collect();
        entries.insert((0, 0), 1);
        BettiTable {
            n: self.n,
            field: self.field,
            entries,
        }
    }

    /// Compact canonical rendering `i,j:beta|...`, used as a stable digest
    /// in reports.
    pub fn digest(&self) -> String {
        let mut out = String::new();
        for (&(i, j), &beta) in &self.entries {
            if !out.is_empty() {
                out.push('|');
            }
            out.push_str(&format!("{i},{j}:{beta}"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries()
            .map(|(i, j, beta)| serde_json::json!({"i": i, "j": j, "beta": beta}))
            .collect();
        serde_json::json!({
            "field": self.field.characteristic(),
            "entries": entries,
            "reg": self.regularity().ok(),
            "pd": self.projective_dimension().ok(),
            "depth": self.depth().ok(),
        })
    }
}

/// Configured Betti oracle.
#[derive(Debug, Clone, Copy)]
pub struct BettiEngine {
    pub field: FieldSpec,
    pub max_generators: usize,
    pub kind: EngineKind,
}

impl Default for BettiEngine {
    fn default() -> Self {
        Self {
            field: FieldSpec::default(),
            max_generators: DEFAULT_GENERATOR_CAP,
            kind: EngineKind::Auto,
        }
    }
}

impl BettiEngine {
    pub fn new(field: FieldSpec) -> Self {
        Self {
            field,
            ..Self::default()
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.max_generators = cap;
        self
    }

    pub fn with_kind(mut self, kind: EngineKind) -> Self {
        self.kind = kind;
        self
    }

    /// Exact graded Betti numbers of a proper nonzero monomial ideal.
    pub fn betti_table(&self, ideal: &MonomialIdeal) -> Result<BettiTable, BettiError> {
        let skeleton = Skeleton::build(ideal, self.max_generators, self.kind)?;
        let entries = skeleton.solve(self.field)?;
        Ok(BettiTable::from_entries(
            ideal.context().len(),
            self.field,
            entries,
        ))
    }

    /// Build once, solve over several fields.
    pub fn skeleton(&self, ideal: &MonomialIdeal) -> Result<Skeleton, BettiError> {
        Skeleton::build(ideal, self.max_generators, self.kind)
    }

    pub fn solve_skeleton(
        &self,
        ideal_n: usize,
        skeleton: &Skeleton,
        field: FieldSpec,
    ) -> Result<BettiTable, BettiError> {
        let entries = skeleton.solve(field)?;
        Ok(BettiTable::from_entries(ideal_n, field, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;

    fn table(text: &str) -> BettiTable {
        BettiEngine::default()
            .betti_table(&parse_ideal(text).unwrap())
            .unwrap()
    }

    #[test]
    fn principal_ideal_invariants() {
        let t = table("ring x1 x2\nx1*x2^2\n");
        assert_eq!(t.entry(0, 3), 1);
        assert_eq!(t.regularity().unwrap(), 3);
        assert_eq!(t.projective_dimension().unwrap(), 0);
        assert_eq!(t.depth().unwrap(), 2);
        assert!(t.has_linear_resolution());
    }

    #[test]
    fn two_disjoint_edges() {
        let t = table("ring x1 x2 x3 x4\nx1*x2\nx3*x4\n");
        assert_eq!(t.entry(0, 2), 2);
        assert_eq!(t.entry(1, 4), 1);
        assert_eq!(t.regularity().unwrap(), 3);
        assert_eq!(t.projective_dimension().unwrap(), 1);
        assert_eq!(t.depth().unwrap(), 3);
        assert!(!t.has_linear_resolution());
    }

    #[test]
    fn polarized_path_regularity() {
        let t = table("ring a1 b1 c1 d1\na1*b1\nb1*c1\nc1*d1\n");
        assert_eq!(t.entry(0, 2), 3);
        assert_eq!(t.entry(1, 3), 2);
        assert_eq!(t.regularity().unwrap(), 2);
        assert_eq!(t.projective_dimension().unwrap(), 1);
    }

    #[test]
    fn beta_zero_counts_generators_by_degree() {
        let t = table("ring x1 x2 x3\nx1*x2^2\nx2*x3\nx1*x3^2\n");
        let degree_counts: Vec<(u64, u64)> = t
            .entries()
            .filter(|&(i, _, _)| i == 0)
            .map(|(_, j, beta)| (j, beta))
            .collect();
        assert_eq!(degree_counts, vec![(2, 1), (3, 2)]);
    }

    #[test]
    fn weighted_star_is_not_linear() {
        // Equigenerated but with a syzygy off the linear strand.
        let t = table("ring x1 x2 x3\nx1*x2^2\nx1*x3^2\n");
        assert_eq!(t.entry(0, 3), 2);
        assert_eq!(t.entry(1, 5), 1);
        assert!(!t.has_linear_resolution());
        assert_eq!(t.regularity().unwrap(), 4);
    }

    #[test]
    fn unweighted_star_is_linear() {
        let t = table("ring x1 x2 x3\nx1*x2\nx1*x3\n");
        assert_eq!(t.entry(0, 2), 2);
        assert_eq!(t.entry(1, 3), 1);
        assert!(t.has_linear_resolution());
    }

    #[test]
    fn quotient_view_shifts() {
        let t = table("ring x1 x2\nx1*x2^2\n");
        let q = t.quotient_view();
        assert_eq!(q.entry(0, 0), 1);
        assert_eq!(q.entry(1, 3), 1);
        assert_eq!(q.regularity().unwrap(), t.regularity().unwrap() - 1);
        assert_eq!(
            q.projective_dimension().unwrap(),
            t.projective_dimension().unwrap() + 1
        );
    }

    #[test]
    fn taylor_length_bound() {
        let t = table("ring x1 x2 x3\nx1\nx2\nx3\n");
        let max_i = t.entries().map(|(i, _, _)| i).max().unwrap();
        assert!(max_i as usize <= 3 - 1);
    }

    #[test]
    fn rejects_zero_improper_and_cap() {
        let engine = BettiEngine::default();
        let zero = parse_ideal("ring x1\n").unwrap();
        assert!(matches!(
            engine.betti_table(&zero),
            Err(BettiError::ZeroIdeal)
        ));
        let principal = parse_ideal("ring x1\nx1^2\n").unwrap();
        let improper = principal
            .colon(&crate::monomial::Monomial::variable_power(
                principal.context(),
                0,
                2,
            ))
            .unwrap();
        assert!(improper.is_improper());
        assert!(matches!(
            engine.betti_table(&improper),
            Err(BettiError::ImproperIdeal)
        ));
        let capped = engine.with_cap(2);
        let three = parse_ideal("ring x y z\nx\ny\nz\n").unwrap();
        let err = capped.betti_table(&three).unwrap_err();
        assert_eq!(err, BettiError::GeneratorCap { have: 3, cap: 2 });
    }

    #[test]
    fn digest_and_json_are_stable() {
        let t = table("ring x1 x2 x3 x4\nx1*x2\nx3*x4\n");
        assert_eq!(t.digest(), "0,2:2|1,4:1");
        let json = t.to_json();
        assert_eq!(json["field"], 32003);
        assert_eq!(json["reg"], 3);
        assert_eq!(json["pd"], 1);
        assert_eq!(json["depth"], 3);
    }
}
