//! Comparing two summands of the same object: through their idempotents, or
//! by cutting one down by the other.

use std::sync::Arc;

use super::datum::{associated_idempotent, split_by_idempotent, verify_splitting_datum, SplittingDatum};
use super::sum::{verify_direct_sum, DirectSumDiagram};
use super::{chain, mutually_inverse, wh, word, Report};
use crate::algebra::Algebra;
use crate::bimodule::{is_equivalence, Cell, Word};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// An equivalence `F = QI: Y -> Z`, `G = PJ: Z -> Y` of splitting data.
#[derive(Clone, Debug)]
pub struct SplittingEquivalence {
    pub f: Word,
    pub g: Word,
    /// `[]_Y => G F`
    pub unit: Cell,
    /// `F G => []_Z`
    pub counit: Cell,
    /// `IP => JQ` matching the units and the dual counits
    pub theta: Cell,
    /// `F P => Q`
    pub theta_f: Cell,
    pub report: Report,
}

#[derive(Clone, Debug)]
pub enum SplittingOutcome {
    Equivalent(Box<SplittingEquivalence>),
    /// The associated idempotents differ, so no equivalence exists.
    NotEquivalent { e_y: Vec<Scalar>, e_z: Vec<Scalar> },
}

impl SplittingOutcome {
    pub fn equivalence(&self) -> Option<&SplittingEquivalence> {
        match self {
            SplittingOutcome::Equivalent(e) => Some(e),
            SplittingOutcome::NotEquivalent { .. } => None,
        }
    }
}

fn same_object(s: &SplittingDatum, t: &SplittingDatum) -> Result<()> {
    if Algebra::same_as(&s.x, &t.x) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch("splitting data of different objects".into()))
    }
}

/// Equal idempotents give an explicit equivalence with all its identities
/// checked; different idempotents give `NotEquivalent`.
pub fn equivalence_from_idempotents(s: &SplittingDatum, t: &SplittingDatum) -> Result<SplittingOutcome> {
    same_object(s, t)?;
    let e_y = associated_idempotent(s)?;
    let e_z = associated_idempotent(t)?;
    if e_y != e_z {
        return Ok(SplittingOutcome::NotEquivalent { e_y, e_z });
    }
    let (i, p, j, q) = (&s.i, &s.p, &t.i, &t.p);
    let mut r = Report::new();

    let theta = t.eta.compose(&s.eps_bar)?;
    let theta_back = s.eta.compose(&t.eps_bar)?;
    r.check("theta-invertible", mutually_inverse(&theta, &theta_back)?);
    r.check("theta-matches-units", theta.compose(&s.eta)? == t.eta);
    r.check("theta-matches-dual-counits", t.eps_bar.compose(&theta)? == s.eps_bar);

    // α = (P η_Z I) ε_Y⁻¹ and β = (Q η_Y J) ε_Z⁻¹
    let unit = wh(&[p], &t.eta, &[i])?.compose(&s.eta_bar)?;
    let beta = wh(&[q], &s.eta, &[j])?.compose(&t.eta_bar)?;
    r.check("unit-invertible", unit.is_invertible());
    r.check("counit-invertible", beta.is_invertible());
    let counit = beta
        .inverse()
        .ok_or_else(|| Error::Verification("counit of the comparison is not invertible".into()))?;

    let f_unit = wh(&[q, i], &unit, &[])?;
    let counit_f = wh(&[], &counit, &[q, i])?;
    r.check("adjunction-F-G/triangle-on-F", counit_f.compose(&f_unit)?.is_identity());
    let unit_g = wh(&[], &unit, &[p, j])?;
    let g_counit = wh(&[p, j], &counit, &[])?;
    r.check("adjunction-F-G/triangle-on-G", g_counit.compose(&unit_g)?.is_identity());

    let theta_f = wh(&[q], &s.eps_bar, &[])?;
    r.check("theta-F-invertible", theta_f.is_invertible());

    Ok(SplittingOutcome::Equivalent(Box::new(SplittingEquivalence {
        f: word(&[q, i], &s.y)?,
        g: word(&[p, j], &t.y)?,
        unit,
        counit,
        theta,
        theta_f,
        report: r,
    })))
}

/// `Z ≃ Y′ ⊕ Y″` obtained by cutting the summand `Z` down by `Y`.
#[derive(Clone, Debug)]
pub struct CutDown {
    pub z: Arc<Algebra>,
    /// The idempotent of `Z(Z)` cut out by the composite monad.
    pub idempotent: Vec<Scalar>,
    /// Summand `0` is `Y′ ≃ Y`; summand `1`, when present, is `Y″`.
    pub diagram: DirectSumDiagram,
    pub report: Report,
}

impl CutDown {
    pub fn summand(&self) -> &SplittingDatum {
        &self.diagram.summands[0]
    }

    /// `None` is the zero complement.
    pub fn complement(&self) -> Option<&SplittingDatum> {
        self.diagram.summands.get(1)
    }

    pub fn complement_is_zero(&self) -> bool {
        self.diagram.summands.len() == 1
    }
}

/// Requires `PJQI: Y -> Y` to be an equivalence. Builds the idempotent monad
/// and comonad on `E = QIPJ`, checks them, and splits `Z` by `ϵι`.
pub fn cut_down_summand(s: &SplittingDatum, t: &SplittingDatum) -> Result<CutDown> {
    same_object(s, t)?;
    for (name, d) in [("first", s), ("second", t)] {
        let v = verify_splitting_datum(d)?;
        if !v.passed() {
            return Err(Error::Verification(format!(
                "{name} splitting datum fails {}",
                v.failures().join(", ")
            )));
        }
    }
    let (i, p, j, q) = (&s.i, &s.p, &t.i, &t.p);
    let pjqi = Word::new(vec![p.clone(), j.clone(), q.clone(), i.clone()])?;
    if is_equivalence(pjqi.bimodule())?.is_none() {
        return Err(Error::Precondition("PJQI is not an equivalence".into()));
    }
    let mut r = Report::new();

    let p_epsbar_z_i = wh(&[p], &t.eps_bar, &[i])?;
    r.check("P-dual-counit-I-invertible", p_epsbar_z_i.is_invertible());
    let iota = chain(&[&wh(&[q], &s.eta, &[j])?, &t.eta_bar])?;
    let eps = chain(&[&s.eps, &p_epsbar_z_i])?;
    let eta_bar = chain(&[&wh(&[p], &t.eta, &[i])?, &s.eta_bar])?;
    let counit = chain(&[&t.eps, &wh(&[q], &s.eps_bar, &[j])?])?;
    let el = [q, i, p, j];
    let mu = wh(&[q, i], &eps, &[p, j])?;
    let delta = wh(&[q, i], &eta_bar, &[p, j])?;

    r.check("unit-after-counit-is-identity", iota.compose(&counit)?.is_identity());
    r.check("monad-left-unit", mu.compose(&wh(&[], &iota, &el)?)?.is_identity());
    r.check("monad-right-unit", mu.compose(&wh(&el, &iota, &[])?)?.is_identity());
    r.check("comonad-left-counit", wh(&[], &counit, &el)?.compose(&delta)?.is_identity());
    r.check("comonad-right-counit", wh(&el, &counit, &[])?.compose(&delta)?.is_identity());
    r.check("monad-idempotent", mu.is_invertible());
    r.check("comonad-idempotent", delta.is_invertible());

    let e = counit
        .compose(&iota)?
        .central_element()
        .ok_or_else(|| Error::Internal("composite is not a central multiplication".into()))?;
    r.check("idempotent", t.y.is_idempotent(&e));
    if !r.passed() {
        return Err(Error::Verification(format!("cut-down fails {}", r.failures().join(", "))));
    }

    let (first, rest) = split_by_idempotent(&t.y, &e)?;
    // Y ≃ Y′ through P′QI
    let to_first = Word::new(vec![first.p.clone(), q.clone(), i.clone()])?;
    r.check("summand-equivalent-to-Y", is_equivalence(to_first.bimodule())?.is_some());
    let mut summands = vec![first];
    summands.extend(rest);
    let diagram = DirectSumDiagram::new(t.y.clone(), summands)?;
    r.absorb("decomposition", verify_direct_sum(&diagram)?);
    Ok(CutDown {
        z: t.y.clone(),
        idempotent: e,
        diagram,
        report: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kstheory::split_by_idempotent_in_basis;
    use crate::linalg::{Field, Matrix};

    fn ints(f: Field, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn same_splitting_is_self_equivalent() {
        let q = Field::Rationals;
        let x = Arc::new(Algebra::product_of_fields(q, 2));
        let (s, _) = split_by_idempotent(&x, &ints(q, &[1, 0])).unwrap();
        let out = equivalence_from_idempotents(&s, &s).unwrap();
        let e = out.equivalence().expect("equal idempotents");
        assert!(e.report.passed(), "{:?}", e.report.failures());
    }

    #[test]
    fn rebased_splittings_are_equivalent() {
        let q = Field::Rationals;
        let m2 = Algebra::matrix(q, 2).unwrap();
        let x = Arc::new(Algebra::product(&[&m2, &Algebra::ground(q)]).unwrap());
        let e = ints(q, &[1, 0, 0, 1, 0]);
        let (s, _) = split_by_idempotent(&x, &e).unwrap();
        let g = Matrix::from_i64(q, &[&[1, 2, 0, 0], &[0, 1, 0, 0], &[1, 0, 1, -1], &[0, 0, 0, 1]]);
        let t = split_by_idempotent_in_basis(&x, &e, &g).unwrap();
        let out = equivalence_from_idempotents(&s, &t).unwrap();
        let eq = out.equivalence().unwrap();
        assert!(eq.report.passed(), "{:?}", eq.report.failures());
    }

    #[test]
    fn complementary_splittings_are_not() {
        let q = Field::Rationals;
        let x = Arc::new(Algebra::product_of_fields(q, 2));
        let (s, t) = split_by_idempotent(&x, &ints(q, &[1, 0])).unwrap();
        let out = equivalence_from_idempotents(&s, &t.unwrap()).unwrap();
        assert!(matches!(out, SplittingOutcome::NotEquivalent { .. }));
    }

    #[test]
    fn nested_summand_of_k3() {
        let q = Field::Rationals;
        let x = Arc::new(Algebra::product_of_fields(q, 3));
        let (y, _) = split_by_idempotent(&x, &ints(q, &[1, 0, 0])).unwrap();
        let (z, _) = split_by_idempotent(&x, &ints(q, &[1, 1, 0])).unwrap();
        let c = cut_down_summand(&y, &z).unwrap();
        assert!(c.report.passed(), "{:?}", c.report.failures());
        assert_eq!(c.z.dim(), 2);
        assert!(!c.complement_is_zero());
        assert_eq!(c.complement().unwrap().y.dim(), 1);
        // Y = Z: nothing left over
        let c = cut_down_summand(&y, &y).unwrap();
        assert!(c.complement_is_zero());
    }

    #[test]
    fn zero_composite_is_refused() {
        let q = Field::Rationals;
        let x = Arc::new(Algebra::product_of_fields(q, 2));
        let (s, t) = split_by_idempotent(&x, &ints(q, &[1, 0])).unwrap();
        assert!(matches!(cut_down_summand(&s, &t.unwrap()), Err(Error::Precondition(_))));
    }
}
