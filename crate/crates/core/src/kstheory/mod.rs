//! Splitting data, adjoint direct sums and Krull-Schmidt decompositions of
//! algebras viewed as objects of the bimodule bicategory.
//!
//! Every identity the theory asks for is checked on explicit 2-cells and
//! recorded as a named [`Verdict`]; nothing is taken on trust.

mod datum;
mod decompose;
mod equivalence;
mod sum;

use std::sync::Arc;

use serde::Serialize;

use crate::bimodule::{Bimodule, Cell, Word};
use crate::algebra::Algebra;
use crate::error::Result;

pub use datum::{
    associated_idempotent, frobenius_from_splitting, split_by_idempotent, split_by_idempotent_in_basis,
    verify_splitting_datum, FrobeniusMonadData, SplittingDatum,
};
pub use decompose::{
    ks_decompose, ks_decompose_seeded, match_decompositions, strong_indecomposability_report, Decomposition,
    IndecomposabilityReport, MatchResult, MatchStrategy, RecursiveStep,
};
pub use equivalence::{cut_down_summand, equivalence_from_idempotents, CutDown, SplittingEquivalence, SplittingOutcome};
pub use sum::{
    adjointify, direct_sum_objects, verify_direct_sum, verify_raw_direct_sum, DirectSumDiagram, ObjectSum, RawDirectSum,
    RawSummand, Twist,
};

/// One named identity and whether it held exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed,
        });
    }

    /// Appends another report, prefixing its names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for v in other.verdicts {
            self.check(format!("{prefix}/{}", v.name), v.passed);
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| v.passed)
    }

    pub fn len(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verdicts.is_empty()
    }
}

/// The word `letters[0] ∘ ...`, or the identity on `on` when there are none.
pub(crate) fn word(letters: &[&Arc<Bimodule>], on: &Arc<Algebra>) -> Result<Word> {
    if letters.is_empty() {
        Ok(Word::identity(on))
    } else {
        Word::new(letters.iter().map(|m| (*m).clone()).collect())
    }
}

/// `u α v` with the whiskering words given as letter lists.
pub(crate) fn wh(u: &[&Arc<Bimodule>], alpha: &Cell, v: &[&Arc<Bimodule>]) -> Result<Cell> {
    let uw = word(u, alpha.source().target())?;
    let vw = word(v, alpha.source().source())?;
    Cell::whisker(&uw, alpha, &vw)
}

/// Vertical composite of a chain written in diagrammatic-reverse order:
/// `chain(&[a, b, c])` is `a ∘ b ∘ c`, so `c` is applied first.
pub(crate) fn chain(cells: &[&Cell]) -> Result<Cell> {
    let (last, rest) = cells.split_last().expect("nonempty chain");
    let mut acc = (*last).clone();
    for c in rest.iter().rev() {
        acc = c.compose(&acc)?;
    }
    Ok(acc)
}

/// Whether `f` and `g` are mutually inverse.
pub(crate) fn mutually_inverse(f: &Cell, g: &Cell) -> Result<bool> {
    Ok(f.compose(g)?.is_identity() && g.compose(f)?.is_identity())
}
