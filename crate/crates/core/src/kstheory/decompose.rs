//! Decomposition into strongly indecomposable summands and the two ways of
//! matching decompositions of the same object.

use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::datum::{split_by_idempotent, split_by_idempotent_in_basis, SplittingDatum};
use super::equivalence::{cut_down_summand, equivalence_from_idempotents, CutDown, SplittingEquivalence};
use super::sum::{verify_direct_sum, DirectSumDiagram};
use super::Report;
use crate::algebra::{center, connectivity_report, primitive_idempotents, Algebra};
use crate::bimodule::{hom_basis, is_equivalence, Bimodule, Equivalence, Word};
use crate::error::{Error, Result};
use crate::linalg::matrix::random_invertible;
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub diagram: DirectSumDiagram,
    /// `idempotents[k]` is the idempotent associated with summand `k`.
    pub idempotents: Vec<Vec<Scalar>>,
    /// False when some factorization could not be certified, so a summand
    /// might still split further.
    pub complete: bool,
    pub report: Report,
}

impl Decomposition {
    pub fn x(&self) -> &Arc<Algebra> {
        &self.diagram.x
    }

    pub fn summands(&self) -> &[SplittingDatum] {
        &self.diagram.summands
    }

    pub fn len(&self) -> usize {
        self.diagram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagram.is_empty()
    }
}

fn primitive_central_idempotents(x: &Algebra) -> Result<(Vec<Vec<Scalar>>, bool)> {
    let z = center(x)?;
    let d = primitive_idempotents(&z.algebra)?;
    Ok((d.idempotents.iter().map(|e| z.embed(e)).collect(), d.complete))
}

fn assemble(x: &Arc<Algebra>, summands: Vec<SplittingDatum>, idempotents: Vec<Vec<Scalar>>, complete: bool) -> Result<Decomposition> {
    let diagram = DirectSumDiagram::new(x.clone(), summands)?;
    let mut report = verify_direct_sum(&diagram)?;
    for (k, (s, e)) in diagram.summands.iter().zip(&idempotents).enumerate() {
        report.check(format!("summand-{k}/idempotent-recovered"), &s.idempotent_unchecked()? == e);
        if complete {
            let c = connectivity_report(&center(&s.y)?.algebra)?;
            report.check(format!("summand-{k}/strongly-indecomposable"), c.connected && c.complete);
        }
    }
    let total: usize = diagram.summands.iter().map(|s| s.y.dim()).sum();
    report.check("dimensions-add-up", total == x.dim());
    if !report.passed() {
        return Err(Error::Verification(format!(
            "decomposition fails {}",
            report.failures().join(", ")
        )));
    }
    Ok(Decomposition {
        diagram,
        idempotents,
        complete,
        report,
    })
}

/// One summand per primitive idempotent of the center, in canonical order.
pub fn ks_decompose(x: &Arc<Algebra>) -> Result<Decomposition> {
    if x.dim() == 0 {
        return Err(Error::Precondition("the zero algebra is the empty sum".into()));
    }
    let (es, complete) = primitive_central_idempotents(x)?;
    let summands = es
        .iter()
        .map(|e| split_by_idempotent(x, e).map(|(s, _)| s))
        .collect::<Result<Vec<_>>>()?;
    assemble(x, summands, es, complete)
}

/// Like [`ks_decompose`], but each summand algebra gets a random basis and
/// the summands come in a random order. Same seed, same output.
pub fn ks_decompose_seeded(x: &Arc<Algebra>, seed: u64) -> Result<Decomposition> {
    if x.dim() == 0 {
        return Err(Error::Precondition("the zero algebra is the empty sum".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut es, complete) = primitive_central_idempotents(x)?;
    es.shuffle(&mut rng);
    let mut summands = Vec::with_capacity(es.len());
    for e in &es {
        let d = x.left_mult(e).rank();
        let g = random_invertible(x.field(), d, &mut rng);
        summands.push(split_by_idempotent_in_basis(x, e, &g)?);
    }
    assemble(x, summands, es, complete)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchStrategy {
    /// Compare associated idempotents.
    Idempotent,
    /// Cut summands down one at a time.
    Recursive,
    Both,
}

impl FromStr for MatchStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<MatchStrategy> {
        match s {
            "idempotent" => Ok(MatchStrategy::Idempotent),
            "recursive" => Ok(MatchStrategy::Recursive),
            "both" => Ok(MatchStrategy::Both),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

/// One round of the recursive matching: `Y_k ≃ Z_l`.
#[derive(Clone, Debug)]
pub struct RecursiveStep {
    pub k: usize,
    pub l: usize,
    /// The 1-cell `Q_l I_k` with its inverse.
    pub equivalence: Equivalence,
    pub cut: CutDown,
}

#[derive(Clone, Debug)]
pub struct MatchResult {
    /// `permutation[k] = l` when `Y_k ≃ Z_l`.
    pub permutation: Vec<usize>,
    pub idempotent: Option<Vec<SplittingEquivalence>>,
    pub recursive: Option<Vec<RecursiveStep>>,
    pub report: Report,
}

fn match_by_idempotents(d1: &Decomposition, d2: &Decomposition, r: &mut Report) -> Result<(Vec<usize>, Vec<SplittingEquivalence>)> {
    let mut sigma = Vec::with_capacity(d1.len());
    let mut used = vec![false; d2.len()];
    for (k, e) in d1.idempotents.iter().enumerate() {
        let hits: Vec<usize> = (0..d2.len()).filter(|&l| &d2.idempotents[l] == e).collect();
        let [l] = hits[..] else {
            return Err(Error::Internal(format!("idempotent {k} matches {} idempotents", hits.len())));
        };
        if used[l] {
            return Err(Error::Internal(format!("idempotent {l} matched twice")));
        }
        used[l] = true;
        sigma.push(l);
    }
    let mut eqs = Vec::with_capacity(sigma.len());
    for (k, &l) in sigma.iter().enumerate() {
        let out = equivalence_from_idempotents(&d1.summands()[k], &d2.summands()[l])?;
        let eq = out
            .equivalence()
            .cloned()
            .ok_or_else(|| Error::Internal("equal idempotents but no equivalence".into()))?;
        r.absorb(&format!("idempotent/pair-{k}-{l}"), eq.report.clone());
        eqs.push(eq);
    }
    Ok((sigma, eqs))
}

fn match_recursively(d1: &Decomposition, d2: &Decomposition, r: &mut Report) -> Result<(Vec<usize>, Vec<RecursiveStep>)> {
    let mut remaining: Vec<usize> = (0..d2.len()).collect();
    let mut sigma = Vec::with_capacity(d1.len());
    let mut steps = Vec::with_capacity(d1.len());
    for (k, s) in d1.summands().iter().enumerate() {
        let mut found = None;
        for (pos, &l) in remaining.iter().enumerate() {
            let t = &d2.summands()[l];
            let w = Word::new(vec![s.p.clone(), t.i.clone(), t.p.clone(), s.i.clone()])?;
            if is_equivalence(w.bimodule())?.is_some() {
                found = Some((pos, l));
                break;
            }
        }
        let Some((pos, l)) = found else {
            return Err(Error::Internal(format!("no summand of the second decomposition matches summand {k}")));
        };
        let t = &d2.summands()[l];
        let cut = cut_down_summand(s, t)?;
        let prefix = format!("recursive/step-{k}-{l}");
        r.absorb(&prefix, cut.report.clone());
        r.check(format!("{prefix}/complement-zero"), cut.complement_is_zero());
        let qi = Word::new(vec![t.p.clone(), s.i.clone()])?;
        let equivalence = is_equivalence(qi.bimodule())?;
        r.check(format!("{prefix}/QI-is-equivalence"), equivalence.is_some());
        let equivalence = equivalence.ok_or_else(|| Error::Verification("QI is not an equivalence".into()))?;
        let off_diagonal = remaining.iter().filter(|&&m| m != l).try_fold(true, |ok, &m| -> Result<bool> {
            let u = &d2.summands()[m];
            let a = Word::new(vec![u.p.clone(), s.i.clone()])?.dim();
            let b = Word::new(vec![s.p.clone(), u.i.clone()])?.dim();
            Ok(ok && a == 0 && b == 0)
        })?;
        r.check(format!("{prefix}/off-diagonal-vanishes"), off_diagonal);
        remaining.remove(pos);
        sigma.push(l);
        steps.push(RecursiveStep { k, l, equivalence, cut });
    }
    Ok((sigma, steps))
}

/// Finds `σ` with `Y_k ≃ Z_σ(k)` and certifies every equivalence.
pub fn match_decompositions(d1: &Decomposition, d2: &Decomposition, strategy: MatchStrategy) -> Result<MatchResult> {
    if !d1.complete || !d2.complete {
        return Err(Error::Incomplete("matching needs complete decompositions".into()));
    }
    if !Algebra::same_as(d1.x(), d2.x()) {
        return Err(Error::AlgebraMismatch("decompositions of different objects".into()));
    }
    if d1.len() != d2.len() {
        return Err(Error::Internal(format!(
            "complete decompositions with {} and {} summands",
            d1.len(),
            d2.len()
        )));
    }
    let mut r = Report::new();
    let (mut sigma, mut by_idem, mut by_rec) = (None, None, None);
    if strategy != MatchStrategy::Recursive {
        let (s, e) = match_by_idempotents(d1, d2, &mut r)?;
        sigma = Some(s);
        by_idem = Some(e);
    }
    if strategy != MatchStrategy::Idempotent {
        let (s, steps) = match_recursively(d1, d2, &mut r)?;
        if let Some(prev) = &sigma {
            r.check("strategies-agree", prev == &s);
        }
        sigma = Some(s);
        by_rec = Some(steps);
    }
    Ok(MatchResult {
        permutation: sigma.expect("at least one strategy ran"),
        idempotent: by_idem,
        recursive: by_rec,
        report: r,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndecomposabilityReport {
    /// The center is connected.
    pub center_connected: bool,
    pub component_count: usize,
    /// The connectivity answer is certified.
    pub complete: bool,
    /// `Id_X` has no nontrivial idempotent endomorphism.
    pub identity_indecomposable: bool,
    /// Number of idempotent 2-cells on `Id_X`, when enumerated.
    pub idempotent_count: Option<u64>,
    pub method: &'static str,
    pub strongly_indecomposable: bool,
    pub report: Report,
}

const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Connectivity of the center against a direct scan of the idempotent
/// endomorphisms of the identity 1-cell.
pub fn strong_indecomposability_report(x: &Arc<Algebra>) -> Result<IndecomposabilityReport> {
    if x.dim() == 0 {
        return Err(Error::Precondition("the zero algebra is not strongly indecomposable".into()));
    }
    let c = connectivity_report(&center(x)?.algebra)?;
    let reg = Arc::new(Bimodule::regular(x));
    let basis = hom_basis(&reg, &reg)?;
    let mut r = Report::new();
    r.check("endomorphisms-of-identity-match-center", basis.len() == center(x)?.algebra.dim());
    let count = match x.field() {
        Field::Prime(p) => p
            .checked_pow(basis.len() as u32)
            .filter(|&t| t <= ENUMERATION_LIMIT)
            .map(|total| count_idempotents(x.field(), p, total, basis.iter().map(|b| b.matrix()).collect())),
        Field::Rationals => None,
    };
    let (identity_indecomposable, method) = match count {
        Some(n) => (n == 2, "exhaustive"),
        None => (c.connected, "via-center"),
    };
    if let Some(n) = count {
        r.check("idempotent-count-is-power-of-components", Some(n) == 2u64.checked_pow(c.component_count as u32));
    }
    r.check("connected-iff-identity-indecomposable", c.connected == identity_indecomposable);
    Ok(IndecomposabilityReport {
        center_connected: c.connected,
        component_count: c.component_count,
        complete: c.complete,
        identity_indecomposable,
        idempotent_count: count,
        method,
        strongly_indecomposable: c.connected && c.complete,
        report: r,
    })
}

fn count_idempotents(field: Field, p: u64, total: u64, basis: Vec<&Matrix>) -> u64 {
    let n = basis.first().map_or(0, |m| m.rows());
    let mut found = 0;
    let mut coeffs = vec![0u64; basis.len()];
    for idx in 0..total {
        let mut rest = idx;
        for c in coeffs.iter_mut() {
            *c = rest % p;
            rest /= p;
        }
        let mut m = Matrix::zeros(field, n, n);
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                m = &m + &b.scale(&field.from_i64(*c as i64));
            }
        }
        if &m * &m == m {
            found += 1;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CayleyTable;

    #[test]
    fn qs3_has_three_blocks() {
        let q = Field::Rationals;
        let x = Arc::new(Algebra::group_algebra(q, &CayleyTable::symmetric(3)).unwrap());
        let d = ks_decompose(&x).unwrap();
        assert!(d.complete);
        let mut dims: Vec<usize> = d.summands().iter().map(|s| s.y.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 4]);
    }

    #[test]
    fn connected_algebras_have_one_summand() {
        let f2 = Field::prime(2).unwrap();
        for x in [Algebra::matrix(f2, 2).unwrap(), Algebra::group_algebra(f2, &CayleyTable::cyclic(2)).unwrap()] {
            let d = ks_decompose(&Arc::new(x)).unwrap();
            assert_eq!(d.len(), 1);
        }
    }

    #[test]
    fn matching_recovers_a_shuffle() {
        let f5 = Field::prime(5).unwrap();
        let x = Arc::new(Algebra::group_algebra(f5, &CayleyTable::cyclic(4)).unwrap());
        let d1 = ks_decompose(&x).unwrap();
        let d2 = ks_decompose_seeded(&x, 7).unwrap();
        let m = match_decompositions(&d1, &d2, MatchStrategy::Both).unwrap();
        assert!(m.report.passed(), "{:?}", m.report.failures());
        for (k, &l) in m.permutation.iter().enumerate() {
            assert_eq!(d1.idempotents[k], d2.idempotents[l]);
        }
        let same = match_decompositions(&d1, &d1, MatchStrategy::Idempotent).unwrap();
        assert_eq!(same.permutation, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ladder_examples() {
        let f3 = Field::prime(3).unwrap();
        let m2 = strong_indecomposability_report(&Arc::new(Algebra::matrix(f3, 2).unwrap())).unwrap();
        assert!(m2.strongly_indecomposable && m2.identity_indecomposable);
        let c3 = strong_indecomposability_report(&Arc::new(Algebra::group_algebra(f3, &CayleyTable::cyclic(3)).unwrap())).unwrap();
        assert!(c3.strongly_indecomposable);
        assert_eq!(c3.idempotent_count, Some(2));
        let kk = strong_indecomposability_report(&Arc::new(Algebra::product_of_fields(f3, 2))).unwrap();
        assert!(!kk.strongly_indecomposable);
        assert_eq!(kk.component_count, 2);
        assert!(kk.report.passed());
    }
}
