use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Matrix, Scalar};

/// The center `Z(A)` as an algebra in its own right.
#[derive(Clone, Debug)]
pub struct Center {
    pub algebra: Algebra,
    /// `dim A x dim Z`; column `j` is the `j`-th basis element of `Z` inside `A`.
    pub embedding: Matrix,
    coords: Coordinates,
}

impl Center {
    /// Center coordinates of an element of `A`, or `None` if it is not central.
    pub fn coords_of(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        self.coords.coords(a)
    }

    pub fn embed(&self, z: &[Scalar]) -> Vec<Scalar> {
        self.embedding.mul_vec(z)
    }
}

/// Solves `b_i z = z b_i` for all basis elements.
pub fn center(a: &Algebra) -> Result<Center> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let b = a.basis_element(i);
        let d = &a.right_mult(&b) - &a.left_mult(&b);
        rows.extend(d.to_rows());
    }
    let system = Matrix::from_rows(a.field(), n, rows)?;
    let basis = system.kernel();
    let (z, coords) = a.restrict(&basis, a.unit())?;
    if !z.is_commutative() {
        return Err(Error::Internal("center came out non-commutative".into()));
    }
    let embedding = coords.basis().clone();
    Ok(Center {
        algebra: z,
        embedding,
        coords,
    })
}
