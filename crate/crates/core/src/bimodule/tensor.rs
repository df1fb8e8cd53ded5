//! Horizontal composition `N ⊗_B M` and the coherence isomorphisms.

use std::sync::Arc;

use super::{Bimodule, BimoduleMap};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Quotient, Scalar};

/// `N ⊗_B M` realised as a quotient of the plain tensor space `N ⊗ M`
/// (index `i * dim M + j` for `n_i ⊗ m_j`).
#[derive(Clone, Debug)]
pub struct Tensor {
    pub bimodule: Arc<Bimodule>,
    left: Arc<Bimodule>,
    right: Arc<Bimodule>,
    quotient: Quotient,
}

impl Tensor {
    pub fn left_factor(&self) -> &Arc<Bimodule> {
        &self.left
    }

    pub fn right_factor(&self) -> &Arc<Bimodule> {
        &self.right
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// The class of `x ⊗ y`.
    pub fn project(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let m = self.right.dim();
        let mut plain = vec![self.bimodule.field().zero(); self.left.dim() * m];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    plain[i * m + j] = a * b;
                }
            }
        }
        self.quotient.project(&plain)
    }

    /// Basis vector `k` of the tensor product is the class of `n_i ⊗ m_j`.
    pub fn representative(&self, k: usize) -> (usize, usize) {
        let f = self.quotient.free()[k];
        (f / self.right.dim(), f % self.right.dim())
    }
}

/// `N ∘ M = N ⊗_B M` for `M: A -> B`, `N: B -> C`.
pub fn compose_1cells(n: &Arc<Bimodule>, m: &Arc<Bimodule>) -> Result<Tensor> {
    if !Algebra::same_as(n.right_algebra(), m.left_algebra()) {
        return Err(Error::AlgebraMismatch("middle algebras of a composite differ".into()));
    }
    let field = n.field();
    let (dn, dm) = (n.dim(), m.dim());
    let id_n = Matrix::identity(field, dn);
    let id_m = Matrix::identity(field, dm);
    // relations (n b) ⊗ m - n ⊗ (b m): columns of rho_N(b) ⊗ I - I ⊗ lambda_M(b)
    let mut rows = Vec::new();
    for i in 0..m.left_algebra().dim() {
        let r = &n.right_action(i).kron(&id_m) - &id_n.kron(m.left_action(i));
        rows.extend(r.transpose().to_rows().into_iter().filter(|v| v.iter().any(|x| !x.is_zero())));
    }
    let spanning = if rows.is_empty() {
        Matrix::zeros(field, 0, dn * dm)
    } else {
        Matrix::from_rows(field, dn * dm, rows)?
    };
    let quotient = Quotient::new(field, dn * dm, spanning);
    let d = quotient.dim();
    let mut t = Tensor {
        bimodule: Arc::new(Bimodule::zero(n.left_algebra(), m.right_algebra())),
        left: n.clone(),
        right: m.clone(),
        quotient,
    };
    let unit = |dim: usize, i: usize| crate::linalg::matrix::unit_vector(field, dim, i);
    let reps: Vec<(usize, usize)> = (0..d).map(|k| t.representative(k)).collect();
    let left_action = (0..n.left_algebra().dim())
        .map(|c| {
            let cols: Vec<Vec<Scalar>> = reps
                .iter()
                .map(|&(i, j)| t.project(&n.left_action(c).column(i), &unit(dm, j)))
                .collect();
            Matrix::from_columns(field, d, &cols)
        })
        .collect();
    let right_action = (0..m.right_algebra().dim())
        .map(|a| {
            let cols: Vec<Vec<Scalar>> = reps
                .iter()
                .map(|&(i, j)| t.project(&unit(dn, i), &m.right_action(a).column(j)))
                .collect();
            Matrix::from_columns(field, d, &cols)
        })
        .collect();
    let bimodule = Bimodule::new_unchecked(
        n.left_algebra().clone(),
        m.right_algebra().clone(),
        d,
        left_action,
        right_action,
    )?;
    debug_assert!(bimodule.validate().is_ok());
    t.bimodule = Arc::new(bimodule);
    Ok(t)
}

/// `β ⊗ α: N ⊗ M -> N' ⊗ M'` between precomputed tensor products.
pub fn tensor_maps(beta: &BimoduleMap, alpha: &BimoduleMap, src: &Tensor, tgt: &Tensor) -> Result<BimoduleMap> {
    if beta.source() != src.left_factor()
        || alpha.source() != src.right_factor()
        || beta.target() != tgt.left_factor()
        || alpha.target() != tgt.right_factor()
    {
        return Err(Error::ShapeMismatch("tensor of maps between the wrong products".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..src.bimodule.dim())
        .map(|k| {
            let (i, j) = src.representative(k);
            tgt.project(&beta.matrix().column(i), &alpha.matrix().column(j))
        })
        .collect();
    let matrix = Matrix::from_columns(src.bimodule.field(), tgt.bimodule.dim(), &cols);
    BimoduleMap::new(src.bimodule.clone(), tgt.bimodule.clone(), matrix)
}

/// `B ⊗_B M -> M`, `b ⊗ m -> b m`.
pub fn left_unitor(m: &Arc<Bimodule>) -> Result<(Tensor, BimoduleMap)> {
    let id = Arc::new(Bimodule::regular(m.left_algebra()));
    let t = compose_1cells(&id, m)?;
    let cols: Vec<Vec<Scalar>> = (0..t.bimodule.dim())
        .map(|k| {
            let (i, j) = t.representative(k);
            m.left_action(i).column(j)
        })
        .collect();
    let map = BimoduleMap::new(t.bimodule.clone(), m.clone(), Matrix::from_columns(m.field(), m.dim(), &cols))?;
    Ok((t, map))
}

/// `M ⊗_A A -> M`, `m ⊗ a -> m a`.
pub fn right_unitor(m: &Arc<Bimodule>) -> Result<(Tensor, BimoduleMap)> {
    let id = Arc::new(Bimodule::regular(m.right_algebra()));
    let t = compose_1cells(m, &id)?;
    let cols: Vec<Vec<Scalar>> = (0..t.bimodule.dim())
        .map(|k| {
            let (i, j) = t.representative(k);
            m.right_action(j).column(i)
        })
        .collect();
    let map = BimoduleMap::new(t.bimodule.clone(), m.clone(), Matrix::from_columns(m.field(), m.dim(), &cols))?;
    Ok((t, map))
}

/// `(L ⊗ M) ⊗ N -> L ⊗ (M ⊗ N)`, together with the four intermediate products
/// `[L⊗M, (L⊗M)⊗N, M⊗N, L⊗(M⊗N)]`.
pub fn associator(l: &Arc<Bimodule>, m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<(Vec<Tensor>, BimoduleMap)> {
    let lm = compose_1cells(l, m)?;
    let lm_n = compose_1cells(&lm.bimodule, n)?;
    let mn = compose_1cells(m, n)?;
    let l_mn = compose_1cells(l, &mn.bimodule)?;
    let f = l.field();
    let unit = |d: usize, i: usize| crate::linalg::matrix::unit_vector(f, d, i);
    let cols: Vec<Vec<Scalar>> = (0..lm_n.bimodule.dim())
        .map(|k| {
            let (x, c) = lm_n.representative(k);
            let (a, b) = lm.representative(x);
            let inner = mn.project(&unit(m.dim(), b), &unit(n.dim(), c));
            l_mn.project(&unit(l.dim(), a), &inner)
        })
        .collect();
    let map = BimoduleMap::new(
        lm_n.bimodule.clone(),
        l_mn.bimodule.clone(),
        Matrix::from_columns(f, l_mn.bimodule.dim(), &cols),
    )?;
    Ok((vec![lm, lm_n, mn, l_mn], map))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoherenceKind {
    LeftUnitor,
    RightUnitor,
    Associator,
}

/// The canonical coherence isomorphism of the given kind, checked invertible.
pub fn coherence_iso(kind: CoherenceKind, cells: &[Arc<Bimodule>]) -> Result<BimoduleMap> {
    let map = match (kind, cells) {
        (CoherenceKind::LeftUnitor, [m]) => left_unitor(m)?.1,
        (CoherenceKind::RightUnitor, [m]) => right_unitor(m)?.1,
        (CoherenceKind::Associator, [l, m, n]) => associator(l, m, n)?.1,
        _ => return Err(Error::ShapeMismatch(format!("wrong number of 1-cells for {kind:?}"))),
    };
    if !map.is_invertible() {
        return Err(Error::Verification(format!("{kind:?} is not invertible")));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn orthogonal_corners_tensor_to_zero() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::product_of_fields(q, 2));
        let reg = Bimodule::regular(&a);
        let id = Matrix::identity(q, 2);
        let e1a = Arc::new(Bimodule::restricted_sub(&reg, &[vec![q.one(), q.zero()]], (&a, &id), (&a, &id)).unwrap());
        let ae2 = Arc::new(Bimodule::restricted_sub(&reg, &[vec![q.zero(), q.one()]], (&a, &id), (&a, &id)).unwrap());
        assert_eq!(compose_1cells(&e1a, &ae2).unwrap().bimodule.dim(), 0);
        assert_eq!(compose_1cells(&e1a, &e1a).unwrap().bimodule.dim(), 1);
    }

    #[test]
    fn unitors_and_associator_are_isos() {
        let f3 = Field::prime(3).unwrap();
        let a = Arc::new(Algebra::matrix(f3, 2).unwrap());
        let r = Arc::new(Bimodule::regular(&a));
        coherence_iso(CoherenceKind::LeftUnitor, std::slice::from_ref(&r)).unwrap();
        coherence_iso(CoherenceKind::RightUnitor, std::slice::from_ref(&r)).unwrap();
        coherence_iso(CoherenceKind::Associator, &[r.clone(), r.clone(), r.clone()]).unwrap();
        assert!(coherence_iso(CoherenceKind::Associator, &[r]).is_err());
    }
}
