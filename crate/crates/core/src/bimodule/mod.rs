//! Bimodules and bimodule maps: the 1-cells and 2-cells.
//!
//! A 1-cell `A -> B` is a `(B, A)`-bimodule: `B` acts on the left, `A` on the
//! right, and composition `N ∘ M` is `N ⊗_B M`.

mod morita;
mod tensor;
mod word;

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Field, Matrix, Scalar};

pub use morita::{find_isomorphism, is_equivalence, Equivalence, IsoSearch};
pub use tensor::{associator, coherence_iso, compose_1cells, left_unitor, right_unitor, tensor_maps, CoherenceKind, Tensor};
pub use word::{Cell, Word};

/// A finite-dimensional `(B, A)`-bimodule given by action matrices on basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    /// `left_action[i]` is `m -> b_i m`
    left_action: Vec<Matrix>,
    /// `right_action[i]` is `m -> m a_i`
    right_action: Vec<Matrix>,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule(dim {}, left dim {}, right dim {})",
            self.dim,
            self.left.dim(),
            self.right.dim()
        )
    }
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let m = Bimodule::new_unchecked(left, right, dim, left_action, right_action)?;
        m.validate()?;
        Ok(m)
    }

    /// Shape checks only.
    pub(crate) fn new_unchecked(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Bimodule> {
        if left.field() != right.field() {
            return Err(Error::InvalidField("left and right algebras over different fields".into()));
        }
        if left_action.len() != left.dim() || right_action.len() != right.dim() {
            return Err(Error::InvalidBimodule("one action matrix per algebra basis element expected".into()));
        }
        for m in left_action.iter().chain(&right_action) {
            if m.rows() != dim || m.cols() != dim || m.field() != left.field() {
                return Err(Error::InvalidBimodule(format!("action matrix is not {dim}x{dim} over the ground field")));
            }
        }
        Ok(Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        })
    }

    /// Unital left action, unital right action, and the two commute.
    pub fn validate(&self) -> Result<()> {
        let id = Matrix::identity(self.field(), self.dim);
        if self.act_left(self.left.unit()) != id || self.act_right(self.right.unit()) != id {
            return Err(Error::InvalidBimodule("an action is not unital".into()));
        }
        let b = &self.left;
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                if &self.left_action[i] * &self.left_action[j] != self.act_left(b.product_of_basis(i, j)) {
                    return Err(Error::InvalidBimodule(format!("left action not multiplicative on (b_{i}, b_{j})")));
                }
            }
        }
        let a = &self.right;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if &self.right_action[j] * &self.right_action[i] != self.act_right(a.product_of_basis(i, j)) {
                    return Err(Error::InvalidBimodule(format!("right action not multiplicative on (a_{i}, a_{j})")));
                }
            }
        }
        for l in &self.left_action {
            for r in &self.right_action {
                if l * r != r * l {
                    return Err(Error::InvalidBimodule("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// `A` as an `(A, A)`-bimodule: the identity 1-cell.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let n = a.dim();
        let left_action = (0..n).map(|i| a.left_mult(&a.basis_element(i))).collect();
        let right_action = (0..n).map(|i| a.right_mult(&a.basis_element(i))).collect();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim: n,
            left_action,
            right_action,
        }
    }

    pub fn zero(left: &Arc<Algebra>, right: &Arc<Algebra>) -> Bimodule {
        let f = left.field();
        Bimodule {
            left: left.clone(),
            right: right.clone(),
            dim: 0,
            left_action: vec![Matrix::zeros(f, 0, 0); left.dim()],
            right_action: vec![Matrix::zeros(f, 0, 0); right.dim()],
        }
    }

    /// The sub-bimodule of `ambient` spanned by `basis` (which must be stable),
    /// with scalars restricted along algebra morphisms `left_map: B' -> B` and
    /// `right_map: A' -> A`, given as matrices whose columns are images of basis elements.
    pub fn restricted_sub(
        ambient: &Bimodule,
        basis: &[Vec<Scalar>],
        left: (&Arc<Algebra>, &Matrix),
        right: (&Arc<Algebra>, &Matrix),
    ) -> Result<Bimodule> {
        let field = ambient.field();
        let k = basis.len();
        let coords = if k == 0 {
            None
        } else {
            Some(Coordinates::new(field, ambient.dim, basis)?)
        };
        let restrict = |act: Matrix| -> Result<Matrix> {
            let Some(c) = &coords else {
                return Ok(Matrix::zeros(field, 0, 0));
            };
            let cols = basis
                .iter()
                .map(|v| {
                    c.coords(&act.mul_vec(v))
                        .ok_or_else(|| Error::InvalidBimodule("subspace is not stable under the actions".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(field, k, &cols))
        };
        let (lalg, lmap) = left;
        let (ralg, rmap) = right;
        if lmap.rows() != ambient.left.dim() || lmap.cols() != lalg.dim() {
            return Err(Error::ShapeMismatch("left algebra morphism has the wrong shape".into()));
        }
        if rmap.rows() != ambient.right.dim() || rmap.cols() != ralg.dim() {
            return Err(Error::ShapeMismatch("right algebra morphism has the wrong shape".into()));
        }
        let left_action = (0..lalg.dim())
            .map(|i| restrict(ambient.act_left(&lmap.column(i))))
            .collect::<Result<Vec<_>>>()?;
        let right_action = (0..ralg.dim())
            .map(|i| restrict(ambient.act_right(&rmap.column(i))))
            .collect::<Result<Vec<_>>>()?;
        Bimodule::new(lalg.clone(), ralg.clone(), k, left_action, right_action)
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// The algebra acting on the left (the target of the 1-cell).
    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    /// The algebra acting on the right (the source of the 1-cell).
    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right_action[i]
    }

    /// Matrix of `m -> b m`.
    pub fn act_left(&self, b: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.left_action, b)
    }

    /// Matrix of `m -> m a`.
    pub fn act_right(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.right_action, a)
    }

    /// Block direct sum of two parallel bimodules.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if !Algebra::same_as(&self.left, &other.left) || !Algebra::same_as(&self.right, &other.right) {
            return Err(Error::AlgebraMismatch("direct sum of non-parallel 1-cells".into()));
        }
        let blocks = |x: &Matrix, y: &Matrix| block_diagonal(x, y);
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim + other.dim,
            left_action: self.left_action.iter().zip(&other.left_action).map(|(x, y)| blocks(x, y)).collect(),
            right_action: self.right_action.iter().zip(&other.right_action).map(|(x, y)| blocks(x, y)).collect(),
        })
    }

    /// Whether `f` (a `dim N x dim self` matrix) intertwines both actions with `target`.
    pub fn is_intertwiner(&self, target: &Bimodule, f: &Matrix) -> bool {
        f.rows() == target.dim
            && f.cols() == self.dim
            && self
                .left_action
                .iter()
                .zip(&target.left_action)
                .all(|(s, t)| (f * s) == (t * f))
            && self
                .right_action
                .iter()
                .zip(&target.right_action)
                .all(|(s, t)| (f * s) == (t * f))
    }

    pub(crate) fn same_algebras(&self, other: &Bimodule) -> bool {
        Algebra::same_as(&self.left, &other.left) && Algebra::same_as(&self.right, &other.right)
    }
}

fn combine(field: Field, dim: usize, mats: &[Matrix], c: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, x) in mats.iter().zip(c) {
        if !x.is_zero() {
            out = &out + &m.scale(x);
        }
    }
    out
}

pub(crate) fn block_diagonal(x: &Matrix, y: &Matrix) -> Matrix {
    let f = x.field();
    let top = x.hstack(&Matrix::zeros(f, x.rows(), y.cols()));
    let bottom = Matrix::zeros(f, y.rows(), x.cols()).hstack(y);
    top.vstack(&bottom)
}

/// A bimodule map, i.e. a 2-cell between parallel 1-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    matrix: Matrix,
}

impl BimoduleMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: Matrix) -> Result<BimoduleMap> {
        if !source.same_algebras(&target) {
            return Err(Error::AlgebraMismatch("bimodule map between non-parallel 1-cells".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if !source.is_intertwiner(&target, &matrix) {
            return Err(Error::InvalidMap("matrix does not intertwine the actions".into()));
        }
        Ok(BimoduleMap { source, target, matrix })
    }

    pub fn identity(m: &Arc<Bimodule>) -> BimoduleMap {
        BimoduleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(source: &Arc<Bimodule>, target: &Arc<Bimodule>) -> BimoduleMap {
        BimoduleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BimoduleMap) -> Result<BimoduleMap> {
        if inner.target.dim() != self.source.dim() || !(*inner.target == *self.source) {
            return Err(Error::ShapeMismatch("vertical composition of non-composable maps".into()));
        }
        Ok(BimoduleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    pub fn inverse(&self) -> Option<BimoduleMap> {
        self.matrix.inverse().map(|m| BimoduleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: m,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    /// Block-diagonal sum `f ⊕ g`.
    pub fn direct_sum(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        Ok(BimoduleMap {
            source: Arc::new(self.source.direct_sum(&other.source)?),
            target: Arc::new(self.target.direct_sum(&other.target)?),
            matrix: block_diagonal(&self.matrix, &other.matrix),
        })
    }
}

/// Solutions `X` (`n x m`) of `X s_k = t_k X` for paired action matrices.
pub(crate) fn intertwiners(field: Field, m: usize, n: usize, pairs: &[(&Matrix, &Matrix)]) -> Vec<Matrix> {
    if m == 0 || n == 0 {
        return Vec::new();
    }
    // row-major vec(X): vec(X S) = (I_n ⊗ S^T) vec(X), vec(T X) = (T ⊗ I_m) vec(X)
    let id_n = Matrix::identity(field, n);
    let id_m = Matrix::identity(field, m);
    let mut rows = Vec::new();
    for (s, t) in pairs {
        let eq = &id_n.kron(&s.transpose()) - &t.kron(&id_m);
        rows.extend(eq.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    if rows.is_empty() {
        return (0..n * m)
            .map(|k| Matrix::from_vector(field, n, m, &crate::linalg::matrix::unit_vector(field, n * m, k)))
            .collect();
    }
    let system = Matrix::from_rows(field, n * m, rows).expect("rows of length n*m");
    system
        .kernel()
        .iter()
        .map(|v| Matrix::from_vector(field, n, m, v))
        .collect()
}

/// Basis of the space of bimodule maps `M -> N`.
pub fn hom_basis(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<Vec<BimoduleMap>> {
    if !m.same_algebras(n) {
        return Err(Error::AlgebraMismatch("hom between bimodules over different algebra pairs".into()));
    }
    let pairs: Vec<(&Matrix, &Matrix)> = m
        .left_action
        .iter()
        .zip(&n.left_action)
        .chain(m.right_action.iter().zip(&n.right_action))
        .collect();
    Ok(intertwiners(m.field(), m.dim(), n.dim(), &pairs)
        .into_iter()
        .map(|x| BimoduleMap {
            source: m.clone(),
            target: n.clone(),
            matrix: x,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::center;

    #[test]
    fn regular_bimodule_endomorphisms_are_the_center() {
        let f2 = Field::prime(2).unwrap();
        let a = Arc::new(Algebra::matrix(f2, 2).unwrap());
        let r = Arc::new(Bimodule::regular(&a));
        r.validate().unwrap();
        let h = hom_basis(&r, &r).unwrap();
        assert_eq!(h.len(), center(&a).unwrap().algebra.dim());
        assert!(h[0].matrix().is_identity());
    }

    #[test]
    fn orthogonal_corners_have_no_maps() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::product_of_fields(q, 2));
        let reg = Bimodule::regular(&a);
        let id = Matrix::identity(q, 2);
        let e1 = Bimodule::restricted_sub(&reg, &[vec![q.one(), q.zero()]], (&a, &id), (&a, &id)).unwrap();
        let e2 = Bimodule::restricted_sub(&reg, &[vec![q.zero(), q.one()]], (&a, &id), (&a, &id)).unwrap();
        assert!(hom_basis(&Arc::new(e1), &Arc::new(e2)).unwrap().is_empty());
        let z = Arc::new(Bimodule::zero(&a, &a));
        assert!(hom_basis(&z, &z).unwrap().is_empty());
    }

    #[test]
    fn rejects_noncommuting_actions() {
        let q = Field::Rationals;
        let k = Arc::new(Algebra::ground(q));
        let bad = Bimodule::new(k.clone(), k.clone(), 1, vec![Matrix::from_i64(q, &[&[2]])], vec![Matrix::identity(q, 1)]);
        assert!(bad.is_err());
    }
}
