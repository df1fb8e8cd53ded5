//! Central idempotents: lifting modulo the radical, primitive decompositions
//! of commutative algebras, corners.

use super::{canonical_order, radical, Algebra};
use crate::error::{Error, Result};
use crate::linalg::matrix::{vec_add, vec_sub, vec_scale};
use crate::linalg::{factor_split, minimal_polynomial, Coordinates, Field, Matrix, Poly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedIdempotent {
    pub element: Vec<Scalar>,
    pub iterations: usize,
}

/// Lifts an idempotent of `A / J` to one of `A` by `e <- 3e^2 - 2e^3`.
pub fn lift_idempotent(a: &Algebra, radical: &[Vec<Scalar>], ebar: &[Scalar]) -> Result<LiftedIdempotent> {
    if ebar.len() != a.dim() {
        return Err(Error::InvalidElement("idempotent has the wrong length".into()));
    }
    let field = a.field();
    let in_radical = |v: &[Scalar]| -> Result<bool> {
        if v.iter().all(Scalar::is_zero) {
            return Ok(true);
        }
        if radical.is_empty() {
            return Ok(false);
        }
        Ok(Coordinates::new(field, a.dim(), radical)?.contains(v))
    };
    let mut e = ebar.to_vec();
    let sq = a.mul(&e, &e);
    if !in_radical(&vec_sub(&sq, &e))? {
        return Err(Error::NotIdempotentModRadical);
    }
    let three = field.from_i64(3);
    let two = field.from_i64(2);
    let bound = usize::BITS as usize - a.dim().leading_zeros() as usize + 1;
    let mut iterations = 0;
    loop {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(LiftedIdempotent { element: e, iterations });
        }
        if iterations > bound {
            return Err(Error::Internal("idempotent lifting did not converge".into()));
        }
        let e3 = a.mul(&e2, &e);
        e = vec_sub(&vec_scale(&e2, &three), &vec_scale(&e3, &two));
        iterations += 1;
    }
}

/// Complete family of orthogonal idempotents summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralDecomposition {
    /// In canonical order (leading index, then entries).
    pub idempotents: Vec<Vec<Scalar>>,
    /// False when some block could not be certified connected over the rationals.
    pub complete: bool,
}

impl CentralDecomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// Idempotence, pairwise orthogonality, sum one, centrality.
    pub fn check(&self, a: &Algebra) -> Result<()> {
        let mut sum = a.zero();
        for (i, e) in self.idempotents.iter().enumerate() {
            if e.iter().all(Scalar::is_zero) || !a.is_idempotent(e) || !a.is_central(e) {
                return Err(Error::Verification(format!("idempotent {i} is zero, not idempotent or not central")));
            }
            for (j, f) in self.idempotents.iter().enumerate() {
                if i != j && a.mul(e, f).iter().any(|x| !x.is_zero()) {
                    return Err(Error::Verification(format!("idempotents {i} and {j} are not orthogonal")));
                }
            }
            sum = vec_add(&sum, e);
        }
        if sum != a.unit() {
            return Err(Error::Verification("idempotents do not sum to one".into()));
        }
        Ok(())
    }
}

/// Primitive idempotents of a commutative algebra.
///
/// Splits `C / J` by coprime factors of minimal polynomials of basis elements,
/// recursing on corners, then lifts back to `C`.
pub fn primitive_idempotents(c: &Algebra) -> Result<CentralDecomposition> {
    if !c.is_commutative() {
        return Err(Error::NonCommutative);
    }
    let j = radical(c)?;
    let (q, quo) = c.quotient(&j)?;
    let (bars, complete) = split_semisimple(&q)?;
    let mut idempotents = Vec::with_capacity(bars.len());
    for b in bars {
        idempotents.push(lift_idempotent(c, &j, &quo.lift(&b))?.element);
    }
    idempotents.sort_by(|x, y| canonical_order(x, y));
    let d = CentralDecomposition { idempotents, complete };
    d.check(c)?;
    Ok(d)
}

/// Primitive idempotents of a commutative semisimple algebra, in its coordinates.
fn split_semisimple(q: &Algebra) -> Result<(Vec<Vec<Scalar>>, bool)> {
    if q.dim() == 1 {
        return Ok((vec![q.unit().to_vec()], true));
    }
    for i in 0..q.dim() {
        if let Some(es) = split_by_element(q, &q.basis_element(i))? {
            return recurse(q, es);
        }
    }
    match q.field() {
        Field::Prime(p) => {
            // Frobenius is linear here; its fixed points form a copy of F_p per block.
            let cols: Vec<Vec<Scalar>> = (0..q.dim()).map(|i| q.pow(&q.basis_element(i), p)).collect();
            let frob = Matrix::from_columns(q.field(), q.dim(), &cols);
            let fixed = (&frob - &Matrix::identity(q.field(), q.dim())).kernel();
            if fixed.len() == 1 {
                return Ok((vec![q.unit().to_vec()], true));
            }
            for x in &fixed {
                if let Some(es) = split_by_element(q, x)? {
                    return recurse(q, es);
                }
            }
            Err(Error::Internal("Frobenius-fixed element failed to split".into()))
        }
        Field::Rationals => {
            // x = sum k^i b_i runs through primitive elements for all but finitely many k.
            let tries = (q.dim() * q.dim() + 2).min(64);
            for k in 1..=tries as i64 {
                let kk = q.field().from_i64(k);
                let mut x = q.zero();
                let mut c = q.field().one();
                for xi in x.iter_mut() {
                    *xi = c.clone();
                    c = &c * &kk;
                }
                let m = minimal_polynomial(&q.left_mult(&x));
                let f = factor_split(&m, q.field())?;
                if f.factors.len() >= 2 {
                    return recurse(q, idempotents_from_factors(q, &x, &m, &f.factors)?);
                }
                if m.degree() == Some(q.dim()) {
                    // q = Q[t]/(m); connected iff m irreducible
                    return Ok((vec![q.unit().to_vec()], f.complete));
                }
            }
            Ok((vec![q.unit().to_vec()], false))
        }
    }
}

fn recurse(q: &Algebra, es: Vec<Vec<Scalar>>) -> Result<(Vec<Vec<Scalar>>, bool)> {
    let mut out = Vec::new();
    let mut complete = true;
    for e in es {
        let corner = corner_algebra(q, &e)?;
        let (sub, c) = split_semisimple(&corner.algebra)?;
        complete &= c;
        out.extend(sub.iter().map(|s| corner.inclusion.mul_vec(s)));
    }
    Ok((out, complete))
}

/// CRT idempotents from a coprime splitting of the minimal polynomial of `x`,
/// or `None` if it has a single coprime factor.
fn split_by_element(q: &Algebra, x: &[Scalar]) -> Result<Option<Vec<Vec<Scalar>>>> {
    let m = minimal_polynomial(&q.left_mult(x));
    let f = factor_split(&m, q.field())?;
    if f.factors.len() < 2 {
        return Ok(None);
    }
    idempotents_from_factors(q, x, &m, &f.factors).map(Some)
}

fn idempotents_from_factors(q: &Algebra, x: &[Scalar], m: &Poly, factors: &[(Poly, usize)]) -> Result<Vec<Vec<Scalar>>> {
    let lx = q.left_mult(x);
    let mut out = Vec::with_capacity(factors.len());
    for (f, mult) in factors {
        let fi = f.pow(*mult);
        let gi = m.div_exact(&fi);
        let (g, s, _) = gi.ext_gcd(&fi);
        if !g.is_one() {
            return Err(Error::Internal("factors are not coprime".into()));
        }
        let poly = s.mul(&gi).rem(m);
        out.push(poly.eval_matrix(&lx).mul_vec(q.unit()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub component_count: usize,
    pub complete: bool,
}

pub fn connectivity_report(c: &Algebra) -> Result<ConnectivityReport> {
    let d = primitive_idempotents(c)?;
    Ok(ConnectivityReport {
        connected: d.len() == 1,
        component_count: d.len(),
        complete: d.complete,
    })
}

/// The corner `Ae` of a central idempotent, with unit `e`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Algebra,
    pub idempotent: Vec<Scalar>,
    /// `dim A x dim Ae`; columns are the basis `e b_j` (pivot columns of `L_e`).
    pub inclusion: Matrix,
    /// `dim Ae x dim A`, `a -> ae`.
    pub projection: Matrix,
}

pub fn corner_algebra(a: &Algebra, e: &[Scalar]) -> Result<Corner> {
    if e.len() != a.dim() {
        return Err(Error::InvalidElement("idempotent has the wrong length".into()));
    }
    if e.iter().all(Scalar::is_zero) {
        return Err(Error::Precondition("corner of the zero idempotent".into()));
    }
    if !a.is_idempotent(e) {
        return Err(Error::Precondition("element is not idempotent".into()));
    }
    if !a.is_central(e) {
        return Err(Error::Precondition("idempotent is not central".into()));
    }
    let le = a.left_mult(e);
    let basis: Vec<Vec<Scalar>> = le.rref().pivots.iter().map(|&j| le.column(j)).collect();
    let (algebra, coords) = a.restrict(&basis, e)?;
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|j| coords.coords_in_span(&a.mul(&a.basis_element(j), e)))
        .collect();
    let projection = Matrix::from_columns(a.field(), basis.len(), &cols);
    Ok(Corner {
        algebra,
        idempotent: e.to_vec(),
        inclusion: coords.basis().clone(),
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{center, CayleyTable};

    #[test]
    fn lift_examples() {
        let f2 = Field::prime(2).unwrap();
        let a = Algebra::truncated_polynomial(f2, 2).unwrap();
        let j = radical(&a).unwrap();
        let one_plus_x = vec![f2.one(), f2.one()];
        let l = lift_idempotent(&a, &j, &one_plus_x).unwrap();
        assert_eq!(l.element, a.unit());
        let q = Field::Rationals;
        let b = Algebra::truncated_polynomial(q, 2).unwrap();
        let jb = radical(&b).unwrap();
        let l = lift_idempotent(&b, &jb, &[q.zero(), q.one()]).unwrap();
        assert!(l.element.iter().all(Scalar::is_zero));
        let unit = lift_idempotent(&b, &jb, b.unit()).unwrap();
        assert_eq!(unit.iterations, 0);
        let k2 = Algebra::product_of_fields(q, 2);
        assert!(matches!(
            lift_idempotent(&k2, &[], &[q.from_i64(2), q.zero()]),
            Err(Error::NotIdempotentModRadical)
        ));
    }

    #[test]
    fn f5c4_has_four_blocks() {
        let f5 = Field::prime(5).unwrap();
        let a = Algebra::group_algebra(f5, &CayleyTable::cyclic(4)).unwrap();
        let d = primitive_idempotents(&a).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.complete);
    }

    #[test]
    fn qs3_center_has_three_blocks() {
        let q = Field::Rationals;
        let s3 = Algebra::group_algebra(q, &CayleyTable::symmetric(3)).unwrap();
        let z = center(&s3).unwrap();
        let r = connectivity_report(&z.algebra).unwrap();
        assert_eq!(r.component_count, 3);
        assert!(r.complete);
    }

    #[test]
    fn frobenius_fallback_splits() {
        // F_4 x F_4 over F_2 presented as F_2[t]/((t^2+t+1)(t^2+t+1)') is awkward;
        // use F_2[t]/((t^2+t+1)(t^3+t+1)) whose basis elements 1, t, ... include t (splits).
        let f2 = Field::prime(2).unwrap();
        let m = Poly::from_i64(f2, &[1, 1, 1]).mul(&Poly::from_i64(f2, &[1, 1, 0, 1]));
        let a = Algebra::polynomial_quotient(&m).unwrap();
        assert_eq!(primitive_idempotents(&a).unwrap().len(), 2);
        // F_4 alone is connected through the fixed-space certificate
        let f4 = Algebra::polynomial_quotient(&Poly::from_i64(f2, &[1, 1, 1])).unwrap();
        let r = connectivity_report(&f4).unwrap();
        assert!(r.connected && r.complete);
    }

    #[test]
    fn rational_partial_flag() {
        let q = Field::Rationals;
        // Q[t]/(t^4 + 1): irreducible quartic, no certificate available
        let a = Algebra::polynomial_quotient(&Poly::from_i64(q, &[1, 0, 0, 0, 1])).unwrap();
        let d = primitive_idempotents(&a).unwrap();
        assert_eq!(d.len(), 1);
        assert!(!d.complete);
        // Q[t]/(t^2 - 2) is certified connected
        let b = Algebra::polynomial_quotient(&Poly::from_i64(q, &[-2, 0, 1])).unwrap();
        assert!(primitive_idempotents(&b).unwrap().complete);
    }

    #[test]
    fn corners() {
        let q = Field::Rationals;
        let k2 = Algebra::product_of_fields(q, 2);
        let c = corner_algebra(&k2, &[q.one(), q.zero()]).unwrap();
        assert_eq!(c.algebra.dim(), 1);
        let whole = corner_algebra(&k2, k2.unit()).unwrap();
        assert_eq!(whole.algebra, k2);
        assert!(corner_algebra(&k2, &[q.zero(), q.zero()]).is_err());
        let m2 = Algebra::matrix(q, 2).unwrap();
        assert!(corner_algebra(&m2, &[q.one(), q.zero(), q.zero(), q.zero()]).is_err());
    }
}
