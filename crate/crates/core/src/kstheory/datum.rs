//! A single summand `Y` of `X`: the ambijunction `I ⊣ P ⊣ I` with `ε = η̄⁻¹`
//! and `η ε̄ = id`.

use std::sync::Arc;

use super::{mutually_inverse, wh, Report};
use crate::algebra::{corner_algebra, Algebra, Corner};
use crate::bimodule::{Bimodule, Cell, Word};
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_sub};
use crate::linalg::{Matrix, Scalar};

#[derive(Clone, Debug)]
pub struct SplittingDatum {
    pub x: Arc<Algebra>,
    pub y: Arc<Algebra>,
    /// `I: Y -> X`, an `(X, Y)`-bimodule
    pub i: Arc<Bimodule>,
    /// `P: X -> Y`, a `(Y, X)`-bimodule
    pub p: Arc<Bimodule>,
    /// `[]_X => [I, P]`
    pub eta: Cell,
    /// `[P, I] => []_Y`
    pub eps: Cell,
    /// `[]_Y => [P, I]`
    pub eta_bar: Cell,
    /// `[I, P] => []_X`
    pub eps_bar: Cell,
}

impl SplittingDatum {
    /// Assembles a datum after checking that every 2-cell has the right shape.
    /// The identities themselves are checked by [`verify_splitting_datum`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        x: Arc<Algebra>,
        y: Arc<Algebra>,
        i: Arc<Bimodule>,
        p: Arc<Bimodule>,
        eta: Cell,
        eps: Cell,
        eta_bar: Cell,
        eps_bar: Cell,
    ) -> Result<SplittingDatum> {
        if y.dim() == 0 {
            return Err(Error::Precondition("a splitting datum needs a nonzero summand".into()));
        }
        if !Algebra::same_as(i.left_algebra(), &x)
            || !Algebra::same_as(i.right_algebra(), &y)
            || !Algebra::same_as(p.left_algebra(), &y)
            || !Algebra::same_as(p.right_algebra(), &x)
        {
            return Err(Error::ShapeMismatch("I must go Y -> X and P must go X -> Y".into()));
        }
        let ip = Word::new(vec![i.clone(), p.clone()])?;
        let pi = Word::new(vec![p.clone(), i.clone()])?;
        let (idx, idy) = (Word::identity(&x), Word::identity(&y));
        let shapes = [
            ("eta", &eta, &idx, &ip),
            ("eps", &eps, &pi, &idy),
            ("eta_bar", &eta_bar, &idy, &pi),
            ("eps_bar", &eps_bar, &ip, &idx),
        ];
        for (name, c, src, tgt) in shapes {
            if c.source() != src || c.target() != tgt {
                return Err(Error::ShapeMismatch(format!("{name} has the wrong source or target")));
            }
        }
        Ok(SplittingDatum {
            x,
            y,
            i,
            p,
            eta,
            eps,
            eta_bar,
            eps_bar,
        })
    }

    /// `Y = X`, `I = P = X`, every structure map a multiplication.
    pub fn trivial(x: &Arc<Algebra>) -> Result<SplittingDatum> {
        let id = Matrix::identity(x.field(), x.dim());
        from_corner(x, x.clone(), &id, &id)
    }

    /// The word `[I, P]`, i.e. `E = I ∘ P: X -> X`.
    pub fn ip(&self) -> &Word {
        self.eta.target()
    }

    /// The word `[P, I]: Y -> Y`.
    pub fn pi(&self) -> &Word {
        self.eps.source()
    }

    /// `ε̄ η` without re-verifying the datum.
    pub(crate) fn idempotent_unchecked(&self) -> Result<Vec<Scalar>> {
        self.eps_bar
            .compose(&self.eta)?
            .central_element()
            .ok_or_else(|| Error::Internal("endomorphism of the identity is not central multiplication".into()))
    }
}

/// Checks both defining equations, the four triangular identities, and the
/// two almost-iso consequences `Pε̄ = (Pη)⁻¹`, `ε̄I = (ηI)⁻¹`.
pub fn verify_splitting_datum(s: &SplittingDatum) -> Result<Report> {
    let (i, p) = (&s.i, &s.p);
    let mut r = Report::new();
    r.check("counit-inverse-of-dual-unit", mutually_inverse(&s.eps, &s.eta_bar)?);
    r.check("unit-after-dual-counit-is-identity", s.eta.compose(&s.eps_bar)?.is_identity());

    let p_eta = wh(&[p], &s.eta, &[])?;
    let eps_p = wh(&[], &s.eps, &[p])?;
    r.check("adjunction-P-I/triangle-on-P", eps_p.compose(&p_eta)?.is_identity());
    let eta_i = wh(&[], &s.eta, &[i])?;
    let i_eps = wh(&[i], &s.eps, &[])?;
    r.check("adjunction-P-I/triangle-on-I", i_eps.compose(&eta_i)?.is_identity());

    let eta_bar_p = wh(&[], &s.eta_bar, &[p])?;
    let p_eps_bar = wh(&[p], &s.eps_bar, &[])?;
    r.check("adjunction-I-P/triangle-on-P", p_eps_bar.compose(&eta_bar_p)?.is_identity());
    let i_eta_bar = wh(&[i], &s.eta_bar, &[])?;
    let eps_bar_i = wh(&[], &s.eps_bar, &[i])?;
    r.check("adjunction-I-P/triangle-on-I", eps_bar_i.compose(&i_eta_bar)?.is_identity());

    r.check("almost-iso-on-P", mutually_inverse(&p_eps_bar, &p_eta)?);
    r.check("almost-iso-on-I", mutually_inverse(&eps_bar_i, &eta_i)?);
    Ok(r)
}

fn require_verified(s: &SplittingDatum) -> Result<()> {
    let r = verify_splitting_datum(s)?;
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "splitting datum fails {}",
            r.failures().join(", ")
        )))
    }
}

/// The central idempotent `ε̄ η` of `X`, as coordinates in `X`.
pub fn associated_idempotent(s: &SplittingDatum) -> Result<Vec<Scalar>> {
    require_verified(s)?;
    let e = s.idempotent_unchecked()?;
    debug_assert!(s.x.is_idempotent(&e));
    Ok(e)
}

/// Builds the splitting of `x` through an embedding `incl: Y -> X` onto the
/// corner `Xe` with retraction `proj: a -> ae`.
pub(crate) fn from_corner(x: &Arc<Algebra>, y: Arc<Algebra>, incl: &Matrix, proj: &Matrix) -> Result<SplittingDatum> {
    let field = x.field();
    let (dx, dy) = (x.dim(), y.dim());
    if incl.rows() != dx || incl.cols() != dy || proj.rows() != dy || proj.cols() != dx {
        return Err(Error::ShapeMismatch("corner maps have the wrong shape".into()));
    }
    if !(proj * incl).is_identity() {
        return Err(Error::Precondition("corner projection does not retract the inclusion".into()));
    }
    for a in 0..dy {
        for b in 0..dy {
            let lhs = incl.mul_vec(y.product_of_basis(a, b));
            if lhs != x.mul(&incl.column(a), &incl.column(b)) {
                return Err(Error::Precondition("corner inclusion is not multiplicative".into()));
            }
        }
    }
    let e = incl.mul_vec(y.unit());
    if !x.is_idempotent(&e) || !x.is_central(&e) || incl * proj != x.left_mult(&e) {
        return Err(Error::Precondition("corner is not cut out by a central idempotent".into()));
    }

    let reg = Bimodule::regular(x);
    let basis: Vec<Vec<Scalar>> = (0..dy).map(|j| incl.column(j)).collect();
    let id_x = Matrix::identity(field, dx);
    let i = Arc::new(Bimodule::restricted_sub(&reg, &basis, (x, &id_x), (&y, incl))?);
    let p = Arc::new(Bimodule::restricted_sub(&reg, &basis, (&y, incl), (x, &id_x))?);
    let ip = Word::new(vec![i.clone(), p.clone()])?;
    let pi = Word::new(vec![p.clone(), i.clone()])?;
    let (idx, idy) = (Word::identity(x), Word::identity(&y));
    let unit_y = y.unit().to_vec();

    // η: a -> ae ⊗ e
    let cols: Vec<Vec<Scalar>> = (0..dx).map(|j| ip.project(&[proj.column(j), unit_y.clone()])).collect();
    let eta = Cell::new(idx.clone(), ip.clone(), Matrix::from_columns(field, ip.dim(), &cols))?;
    // ε̄: a ⊗ b -> ab in X
    let cols: Vec<Vec<Scalar>> = (0..ip.dim())
        .map(|k| {
            let r = ip.representative(k);
            incl.mul_vec(y.product_of_basis(r[0], r[1]))
        })
        .collect();
    let eps_bar = Cell::new(ip, idx, Matrix::from_columns(field, dx, &cols))?;
    // ε: b ⊗ a -> ba in Y
    let cols: Vec<Vec<Scalar>> = (0..pi.dim())
        .map(|k| {
            let r = pi.representative(k);
            y.product_of_basis(r[0], r[1]).to_vec()
        })
        .collect();
    let eps = Cell::new(pi.clone(), idy.clone(), Matrix::from_columns(field, dy, &cols))?;
    // η̄: y -> y ⊗ e
    let cols: Vec<Vec<Scalar>> = (0..dy)
        .map(|j| pi.project(&[unit_vector(field, dy, j), unit_y.clone()]))
        .collect();
    let eta_bar = Cell::new(idy, pi.clone(), Matrix::from_columns(field, pi.dim(), &cols))?;
    SplittingDatum::new(x.clone(), y, i, p, eta, eps, eta_bar, eps_bar)
}

fn from_corner_data(x: &Arc<Algebra>, c: Corner) -> Result<SplittingDatum> {
    from_corner(x, Arc::new(c.algebra), &c.inclusion, &c.projection)
}

/// Splits `x` along a central idempotent `e`: the summand `Xe` and, unless
/// `e = 1`, the complementary summand `X(1 - e)`.
pub fn split_by_idempotent(x: &Arc<Algebra>, e: &[Scalar]) -> Result<(SplittingDatum, Option<SplittingDatum>)> {
    if e.len() != x.dim() {
        return Err(Error::InvalidElement("idempotent has the wrong length".into()));
    }
    if e.iter().all(Scalar::is_zero) {
        return Err(Error::Precondition("the zero idempotent has no nonzero summand".into()));
    }
    let primary = from_corner_data(x, corner_algebra(x, e)?)?;
    let f = vec_sub(x.unit(), e);
    let complement = if f.iter().all(Scalar::is_zero) {
        None
    } else {
        Some(from_corner_data(x, corner_algebra(x, &f)?)?)
    };
    Ok((primary, complement))
}

/// As [`split_by_idempotent`], but the summand algebra gets the basis given
/// by the columns of `g` (in the canonical corner basis).
pub fn split_by_idempotent_in_basis(x: &Arc<Algebra>, e: &[Scalar], g: &Matrix) -> Result<SplittingDatum> {
    let c = corner_algebra(x, e)?;
    let ginv = g
        .inverse()
        .ok_or_else(|| Error::Precondition("change of basis is not invertible".into()))?;
    let y = c.algebra.change_basis(g)?;
    from_corner(x, Arc::new(y), &(&c.inclusion * g), &(&ginv * &c.projection))
}

/// The idempotent special Frobenius monad on `E = I ∘ P`.
#[derive(Clone, Debug)]
pub struct FrobeniusMonadData {
    pub e: Word,
    /// `E E => E`
    pub mu: Cell,
    /// `[]_X => E`
    pub iota: Cell,
    /// `E => E E`
    pub delta: Cell,
    /// `E => []_X`
    pub counit: Cell,
    pub report: Report,
}

/// `μ = IεP`, `ι = η`, `δ = Iη̄P`, counit `ε̄`, with every law checked.
pub fn frobenius_from_splitting(s: &SplittingDatum) -> Result<FrobeniusMonadData> {
    require_verified(s)?;
    let (i, p) = (&s.i, &s.p);
    let el = [i, p];
    let mu = wh(&[i], &s.eps, &[p])?;
    let delta = wh(&[i], &s.eta_bar, &[p])?;
    let iota = s.eta.clone();
    let counit = s.eps_bar.clone();
    let mut r = Report::new();

    let mu_e = wh(&[], &mu, &el)?;
    let e_mu = wh(&el, &mu, &[])?;
    r.check("monad-associativity", mu.compose(&mu_e)? == mu.compose(&e_mu)?);
    r.check("monad-left-unit", mu.compose(&wh(&[], &iota, &el)?)?.is_identity());
    r.check("monad-right-unit", mu.compose(&wh(&el, &iota, &[])?)?.is_identity());

    let delta_e = wh(&[], &delta, &el)?;
    let e_delta = wh(&el, &delta, &[])?;
    r.check("comonad-coassociativity", delta_e.compose(&delta)? == e_delta.compose(&delta)?);
    r.check("comonad-left-counit", wh(&[], &counit, &el)?.compose(&delta)?.is_identity());
    r.check("comonad-right-counit", wh(&el, &counit, &[])?.compose(&delta)?.is_identity());

    let delta_mu = delta.compose(&mu)?;
    r.check("frobenius-left", e_mu.compose(&delta_e)? == delta_mu);
    r.check("frobenius-right", mu_e.compose(&e_delta)? == delta_mu);

    r.check("multiplication-invertible", mu.is_invertible());
    r.check("comultiplication-invertible", delta.is_invertible());
    r.check("special", mu.compose(&delta)?.is_identity());
    r.check("unit-after-counit-is-identity", iota.compose(&counit)?.is_identity());
    Ok(FrobeniusMonadData {
        e: s.ip().clone(),
        mu,
        iota,
        delta,
        counit,
        report: r,
    })
}
