//! Direct sums of objects, their verification, and the correction of an
//! arbitrary direct-sum diagram into an adjoint one.

use std::sync::Arc;

use super::datum::{from_corner, verify_splitting_datum, SplittingDatum};
use super::{mutually_inverse, wh, Report};
use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, Cell, Word};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// `X ≃ Y_1 ⊕ ... ⊕ Y_n`, one splitting datum per summand.
#[derive(Clone, Debug)]
pub struct DirectSumDiagram {
    pub x: Arc<Algebra>,
    pub summands: Vec<SplittingDatum>,
}

impl DirectSumDiagram {
    pub fn new(x: Arc<Algebra>, summands: Vec<SplittingDatum>) -> Result<DirectSumDiagram> {
        if summands.iter().any(|s| !Algebra::same_as(&s.x, &x)) {
            return Err(Error::ShapeMismatch("summands split different objects".into()));
        }
        Ok(DirectSumDiagram { x, summands })
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

fn sum_of_idempotents<'a>(x: &Arc<Algebra>, terms: impl Iterator<Item = Result<Cell>> + 'a) -> Result<Cell> {
    let idx = Word::identity(x);
    let mut acc = Cell::zero(&idx, &idx)?;
    for t in terms {
        acc = acc.add(&t?)?;
    }
    Ok(acc)
}

/// Every summand verified as a splitting datum, plus orthogonality
/// `η_i ε̄_j = 0`, vanishing of `P_i I_j` for `i ≠ j`, and `Σ ε̄_i η_i = 1`.
pub fn verify_direct_sum(d: &DirectSumDiagram) -> Result<Report> {
    let mut r = Report::new();
    if d.summands.iter().any(|s| !Algebra::same_as(&s.x, &d.x)) {
        return Err(Error::ShapeMismatch("summands split different objects".into()));
    }
    for (k, s) in d.summands.iter().enumerate() {
        r.absorb(&format!("summand-{k}"), verify_splitting_datum(s)?);
    }
    for (a, s) in d.summands.iter().enumerate() {
        for (b, t) in d.summands.iter().enumerate() {
            if a == b {
                continue;
            }
            r.check(format!("orthogonality-{a}-{b}"), s.eta.compose(&t.eps_bar)?.is_zero());
            let cross = Word::new(vec![s.p.clone(), t.i.clone()])?;
            r.check(format!("cross-composite-vanishes-{a}-{b}"), cross.dim() == 0);
        }
    }
    let total = sum_of_idempotents(&d.x, d.summands.iter().map(|s| s.eps_bar.compose(&s.eta)))?;
    r.check("completeness", total.is_identity());
    Ok(r)
}

/// A summand of a direct sum whose isomorphisms need not form adjunctions.
#[derive(Clone, Debug)]
pub struct RawSummand {
    pub y: Arc<Algebra>,
    pub i: Arc<Bimodule>,
    pub p: Arc<Bimodule>,
    /// `[P, I] => []_Y`
    pub beta: Cell,
    /// `[]_Y => [P, I]`, inverse to `beta`
    pub alpha_bar: Cell,
    /// `[I, P] => []_X`
    pub beta_bar: Cell,
    /// `[]_X => [I, P]`
    pub alpha: Cell,
}

#[derive(Clone, Debug)]
pub struct RawDirectSum {
    pub x: Arc<Algebra>,
    pub summands: Vec<RawSummand>,
}

impl RawDirectSum {
    /// Forgets that the 2-cells of an adjoint sum are adjoint.
    pub fn from_diagram(d: &DirectSumDiagram) -> RawDirectSum {
        RawDirectSum {
            x: d.x.clone(),
            summands: d
                .summands
                .iter()
                .map(|s| RawSummand {
                    y: s.y.clone(),
                    i: s.i.clone(),
                    p: s.p.clone(),
                    beta: s.eps.clone(),
                    alpha_bar: s.eta_bar.clone(),
                    beta_bar: s.eps_bar.clone(),
                    alpha: s.eta.clone(),
                })
                .collect(),
        }
    }
}

/// A change of the isomorphisms of one summand that keeps the plain
/// direct-sum relations but in general breaks the adjunctions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    /// `β -> zβ`, `ᾱ -> ᾱz⁻¹` for a central unit `z` of `Y`.
    Counit(Vec<Scalar>),
    /// `α -> αu`, `β̄ -> u⁻¹β̄` for a central unit `u` of `X`.
    Unit(Vec<Scalar>),
    /// `α -> (IzP)α`, `β̄ -> β̄(Iz⁻¹P)` for a central unit `z` of `Y`.
    Middle(Vec<Scalar>),
}

fn central_inverse(a: &Algebra, z: &[Scalar]) -> Result<Vec<Scalar>> {
    if !a.is_central(z) {
        return Err(Error::Precondition("twist is not central".into()));
    }
    a.left_mult(z)
        .inverse()
        .map(|m| m.mul_vec(a.unit()))
        .ok_or_else(|| Error::Precondition("twist is not a unit".into()))
}

impl RawDirectSum {
    /// Reads the cells literally as splitting data, adjoint or not.
    pub fn as_diagram(&self) -> Result<DirectSumDiagram> {
        let summands = self
            .summands
            .iter()
            .map(|s| {
                SplittingDatum::new(
                    self.x.clone(),
                    s.y.clone(),
                    s.i.clone(),
                    s.p.clone(),
                    s.alpha.clone(),
                    s.beta.clone(),
                    s.alpha_bar.clone(),
                    s.beta_bar.clone(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        DirectSumDiagram::new(self.x.clone(), summands)
    }

    pub fn twist(&mut self, k: usize, t: &Twist) -> Result<()> {
        let x = self.x.clone();
        let s = self
            .summands
            .get_mut(k)
            .ok_or_else(|| Error::ShapeMismatch(format!("no summand {k}")))?;
        match t {
            Twist::Counit(z) => {
                let zi = central_inverse(&s.y, z)?;
                s.beta = Cell::central(&s.y, z)?.compose(&s.beta)?;
                s.alpha_bar = s.alpha_bar.compose(&Cell::central(&s.y, &zi)?)?;
            }
            Twist::Unit(u) => {
                let ui = central_inverse(&x, u)?;
                s.alpha = s.alpha.compose(&Cell::central(&x, u)?)?;
                s.beta_bar = Cell::central(&x, &ui)?.compose(&s.beta_bar)?;
            }
            Twist::Middle(z) => {
                let zi = central_inverse(&s.y, z)?;
                let w = wh(&[&s.i], &Cell::central(&s.y, z)?, &[&s.p])?;
                let wi = wh(&[&s.i], &Cell::central(&s.y, &zi)?, &[&s.p])?;
                s.alpha = w.compose(&s.alpha)?;
                s.beta_bar = s.beta_bar.compose(&wi)?;
            }
        }
        Ok(())
    }
}

/// The plain direct-sum relations, without any adjunction.
pub fn verify_raw_direct_sum(d: &RawDirectSum) -> Result<Report> {
    let mut r = Report::new();
    for (k, s) in d.summands.iter().enumerate() {
        r.check(format!("summand-{k}/counit-inverse-of-dual-unit"), mutually_inverse(&s.beta, &s.alpha_bar)?);
        r.check(
            format!("summand-{k}/unit-after-dual-counit-is-identity"),
            s.alpha.compose(&s.beta_bar)?.is_identity(),
        );
    }
    for (a, s) in d.summands.iter().enumerate() {
        for (b, t) in d.summands.iter().enumerate() {
            if a != b {
                r.check(format!("orthogonality-{a}-{b}"), s.alpha.compose(&t.beta_bar)?.is_zero());
            }
        }
    }
    let total = sum_of_idempotents(&d.x, d.summands.iter().map(|s| s.beta_bar.compose(&s.alpha)))?;
    r.check("completeness", total.is_identity());
    Ok(r)
}

/// Corrects each summand by `φ = (IβP)(IPα)`: `η = φ⁻¹α`, `ε = β`, `η̄ = ᾱ`,
/// `ε̄ = β̄φ`. Already adjoint input comes back unchanged.
pub fn adjointify(d: &RawDirectSum) -> Result<DirectSumDiagram> {
    let pre = verify_raw_direct_sum(d)?;
    if !pre.passed() {
        return Err(Error::Precondition(format!(
            "input is not a direct sum: {}",
            pre.failures().join(", ")
        )));
    }
    let mut out = Vec::with_capacity(d.summands.len());
    for s in &d.summands {
        let (i, p) = (&s.i, &s.p);
        let phi = wh(&[i], &s.beta, &[p])?.compose(&wh(&[i, p], &s.alpha, &[])?)?;
        let (eta, eps_bar) = if phi.is_identity() {
            (s.alpha.clone(), s.beta_bar.clone())
        } else {
            let phi_inv = wh(&[i, p], &s.beta_bar, &[])?.compose(&wh(&[i], &s.alpha_bar, &[p])?)?;
            if !mutually_inverse(&phi, &phi_inv)? {
                return Err(Error::Verification("correction automorphism is not invertible".into()));
            }
            (phi_inv.compose(&s.alpha)?, s.beta_bar.compose(&phi)?)
        };
        out.push(SplittingDatum::new(
            d.x.clone(),
            s.y.clone(),
            i.clone(),
            p.clone(),
            eta,
            s.beta.clone(),
            s.alpha_bar.clone(),
            eps_bar,
        )?);
    }
    DirectSumDiagram::new(d.x.clone(), out)
}

/// The product algebra with its canonical verified adjoint direct sum.
#[derive(Clone, Debug)]
pub struct ObjectSum {
    pub x: Arc<Algebra>,
    pub diagram: DirectSumDiagram,
    pub report: Report,
}

/// `A_1 ⊕ ... ⊕ A_n` realised as the block product, with `I_k = X e_k` and
/// `P_k = e_k X` over the factors themselves.
pub fn direct_sum_objects(factors: &[Arc<Algebra>]) -> Result<ObjectSum> {
    if factors.iter().any(|a| a.dim() == 0) {
        return Err(Error::Precondition("the zero algebra is the empty sum, not a summand".into()));
    }
    let refs: Vec<&Algebra> = factors.iter().map(|a| a.as_ref()).collect();
    let x = Arc::new(Algebra::product(&refs)?);
    let field = x.field();
    let n = x.dim();
    let mut summands = Vec::with_capacity(factors.len());
    let mut off = 0;
    for a in factors {
        let d = a.dim();
        let incl = Matrix::from_fn(field, n, d, |r, c| if r == off + c { field.one() } else { field.zero() });
        summands.push(from_corner(&x, a.clone(), &incl, &incl.transpose())?);
        off += d;
    }
    let diagram = DirectSumDiagram::new(x.clone(), summands)?;
    let report = verify_direct_sum(&diagram)?;
    if !report.passed() {
        return Err(Error::Verification(format!(
            "canonical direct sum fails {}",
            report.failures().join(", ")
        )));
    }
    Ok(ObjectSum { x, diagram, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn kk(field: Field) -> ObjectSum {
        let k = Arc::new(Algebra::ground(field));
        direct_sum_objects(&[k.clone(), k]).unwrap()
    }

    #[test]
    fn k_plus_k() {
        let q = Field::Rationals;
        let s = kk(q);
        assert_eq!(s.x.dim(), 2);
        assert!(s.report.passed());
        let d = &s.diagram;
        assert_eq!(Word::new(vec![d.summands[0].p.clone(), d.summands[0].i.clone()]).unwrap().dim(), 1);
    }

    #[test]
    fn scaled_dual_counit_breaks_completeness() {
        let q = Field::Rationals;
        let mut d = kk(q).diagram;
        d.summands[0].eps_bar = d.summands[0].eps_bar.scale(&q.from_i64(2));
        let r = verify_direct_sum(&d).unwrap();
        assert_eq!(r.get("completeness"), Some(false));
    }

    #[test]
    fn empty_sum_is_not_complete() {
        let q = Field::Rationals;
        let d = DirectSumDiagram::new(Arc::new(Algebra::ground(q)), vec![]).unwrap();
        assert_eq!(verify_direct_sum(&d).unwrap().get("completeness"), Some(false));
    }

    #[test]
    fn adjoint_input_is_a_fixed_point() {
        let q = Field::Rationals;
        let d = kk(q).diagram;
        let out = adjointify(&RawDirectSum::from_diagram(&d)).unwrap();
        for (a, b) in d.summands.iter().zip(&out.summands) {
            assert_eq!(a.eta, b.eta);
            assert_eq!(a.eps_bar, b.eps_bar);
        }
    }

    #[test]
    fn tripled_counit_is_corrected() {
        let q = Field::Rationals;
        let d = kk(q).diagram;
        let mut raw = RawDirectSum::from_diagram(&d);
        let three = q.from_i64(3);
        raw.summands[0].beta = raw.summands[0].beta.scale(&three);
        raw.summands[0].alpha_bar = raw.summands[0].alpha_bar.scale(&three.inv().unwrap());
        let before = verify_direct_sum(&DirectSumDiagram {
            x: d.x.clone(),
            summands: d
                .summands
                .iter()
                .zip(&raw.summands)
                .map(|(s, r)| SplittingDatum {
                    eps: r.beta.clone(),
                    eta_bar: r.alpha_bar.clone(),
                    ..s.clone()
                })
                .collect(),
        })
        .unwrap();
        assert!(!before.passed());
        let out = adjointify(&raw).unwrap();
        let r = verify_direct_sum(&out).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn non_sum_is_refused() {
        let q = Field::Rationals;
        let d = kk(q).diagram;
        let mut raw = RawDirectSum::from_diagram(&d);
        raw.summands.pop();
        assert!(matches!(adjointify(&raw), Err(Error::Precondition(_))));
    }

    #[test]
    fn matrix_algebra_plus_field() {
        let f3 = Field::prime(3).unwrap();
        let m2 = Arc::new(Algebra::matrix(f3, 2).unwrap());
        let k = Arc::new(Algebra::ground(f3));
        let s = direct_sum_objects(&[m2, k]).unwrap();
        assert_eq!(s.x.dim(), 5);
        let dims: Vec<usize> = s.diagram.summands.iter().map(|t| t.ip().dim()).collect();
        assert_eq!(dims, vec![4, 1]);
        assert!(direct_sum_objects(&[Arc::new(Algebra::ground(f3)), Arc::new(Algebra::ground(Field::Rationals))]).is_err());
    }
}
