//! Invertibility of 1-cells and isomorphism search between parallel 1-cells.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_basis, intertwiners, Bimodule, BimoduleMap, Cell, Word};
use crate::error::Result;
use crate::linalg::{Coordinates, Field, Matrix, Scalar};

/// `M` together with an inverse 1-cell and the two evaluation isomorphisms.
#[derive(Clone, Debug)]
pub struct Equivalence {
    /// `N = Hom_B(M, B)`, a 1-cell `B -> A`.
    pub inverse: Arc<Bimodule>,
    /// `[]_A => [N, M]`
    pub unit: Cell,
    /// `[M, N] => []_B`, `m ⊗ f -> f(m)`
    pub counit: Cell,
}

/// Morita test for a 1-cell `M: A -> B`.
///
/// Builds the dual `N = Hom_B(M, B)`, then checks that `A -> End_B(M)` is
/// bijective and that both evaluations `M ⊗_A N -> B` and `N ⊗_B M -> A` are
/// invertible. `None` means `M` is not an equivalence.
pub fn is_equivalence(m: &Arc<Bimodule>) -> Result<Option<Equivalence>> {
    if m.is_zero() {
        return Ok(None);
    }
    let field = m.field();
    let b = m.left_algebra().clone();
    let a = m.right_algebra().clone();
    let (db, dm, da) = (b.dim(), m.dim(), a.dim());

    // A -> End_B(M) must be a bijection
    let lefts: Vec<(&Matrix, &Matrix)> = (0..db).map(|i| (m.left_action(i), m.left_action(i))).collect();
    if intertwiners(field, dm, dm, &lefts).len() != da {
        return Ok(None);
    }
    let rho: Vec<Vec<Scalar>> = (0..da).map(|i| m.right_action(i).to_vector()).collect();
    let Ok(rho_coords) = Coordinates::new(field, dm * dm, &rho) else {
        return Ok(None);
    };

    // dual: F (db x dm) with F lambda_M(b) = L_b F
    let lb: Vec<Matrix> = (0..db).map(|i| b.left_mult(&b.basis_element(i))).collect();
    let pairs: Vec<(&Matrix, &Matrix)> = (0..db).map(|i| (m.left_action(i), &lb[i])).collect();
    let duals = intertwiners(field, dm, db, &pairs);
    if duals.is_empty() {
        return Ok(None);
    }
    let dn = duals.len();
    let dual_coords = Coordinates::new(field, db * dm, &duals.iter().map(Matrix::to_vector).collect::<Vec<_>>())?;
    let action = |image: &dyn Fn(&Matrix) -> Matrix| -> Matrix {
        let cols: Vec<Vec<Scalar>> = duals
            .iter()
            .map(|f| dual_coords.coords_in_span(&image(f).to_vector()))
            .collect();
        Matrix::from_columns(field, dn, &cols)
    };
    // (a f)(x) = f(x a), (f b)(x) = f(x) b
    let left_action: Vec<Matrix> = (0..da).map(|i| action(&|f: &Matrix| f * m.right_action(i))).collect();
    let right_action: Vec<Matrix> = (0..db)
        .map(|i| {
            let rb = b.right_mult(&b.basis_element(i));
            action(&|f: &Matrix| &rb * f)
        })
        .collect();
    let n = Arc::new(Bimodule::new(a.clone(), b.clone(), dn, left_action, right_action)?);

    // ev1: M ⊗_A N -> B
    let mn = Word::new(vec![m.clone(), n.clone()])?;
    let cols: Vec<Vec<Scalar>> = (0..mn.dim())
        .map(|k| {
            let r = mn.representative(k);
            duals[r[1]].column(r[0])
        })
        .collect();
    let counit = Cell::new(mn, Word::identity(&b), Matrix::from_columns(field, db, &cols))?;
    if !counit.is_invertible() {
        return Ok(None);
    }

    // ev2: N ⊗_B M -> A, f ⊗ y -> rho^{-1}(x -> f(x) y)
    let nm = Word::new(vec![n.clone(), m.clone()])?;
    let mut cols = Vec::with_capacity(nm.dim());
    for k in 0..nm.dim() {
        let r = nm.representative(k);
        let (f, y) = (&duals[r[0]], r[1]);
        let e_cols: Vec<Vec<Scalar>> = (0..dm).map(|x| m.act_left(&f.column(x)).column(y)).collect();
        let e = Matrix::from_columns(field, dm, &e_cols);
        let Some(c) = rho_coords.coords(&e.to_vector()) else {
            return Ok(None);
        };
        cols.push(c);
    }
    let ev2 = Cell::new(nm, Word::identity(&a), Matrix::from_columns(field, da, &cols))?;
    let Some(unit) = ev2.inverse() else {
        return Ok(None);
    };
    Ok(Some(Equivalence {
        inverse: n,
        unit,
        counit,
    }))
}

/// Outcome of [`find_isomorphism`].
#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(BimoduleMap),
    /// Certified: dimensions differ, the hom space is zero, or exhaustive search failed.
    NotIsomorphic,
    /// Randomised search failed on a nonzero hom space.
    Inconclusive { trials: usize },
}

/// Above this many candidate combinations the search over `F_p` is randomised.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const RANDOM_TRIALS: usize = 64;

/// Looks for an invertible element of `Hom(M, N)`.
pub fn find_isomorphism(m: &Arc<Bimodule>, n: &Arc<Bimodule>, seed: u64) -> Result<IsoSearch> {
    let basis = hom_basis(m, n)?;
    if m.dim() != n.dim() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if m.dim() == 0 {
        return Ok(IsoSearch::Found(BimoduleMap::zero(m, n)));
    }
    if basis.is_empty() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let field = m.field();
    let combine = |c: &[Scalar]| -> Matrix {
        let mut acc = Matrix::zeros(field, n.dim(), m.dim());
        for (x, f) in c.iter().zip(&basis) {
            if !x.is_zero() {
                acc = &acc + &f.matrix().scale(x);
            }
        }
        acc
    };
    let found = |mat: Matrix| BimoduleMap {
        source: m.clone(),
        target: n.clone(),
        matrix: mat,
    };
    // a basis element is often already invertible
    for f in &basis {
        if f.is_invertible() {
            return Ok(IsoSearch::Found(f.clone()));
        }
    }
    let k = basis.len() as u32;
    if let Field::Prime(p) = field {
        if let Some(total) = p.checked_pow(k).filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            for idx in 1..total {
                let mut c = Vec::with_capacity(k as usize);
                let mut r = idx;
                for _ in 0..k {
                    c.push(field.from_i64((r % p) as i64));
                    r /= p;
                }
                let mat = combine(&c);
                if mat.is_invertible() {
                    return Ok(IsoSearch::Found(found(mat)));
                }
            }
            return Ok(IsoSearch::NotIsomorphic);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<Scalar> = (0..k)
            .map(|_| match field {
                Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
                Field::Rationals => field.from_i64(rng.gen_range(-4..=4)),
            })
            .collect();
        let mat = combine(&c);
        if mat.is_invertible() {
            return Ok(IsoSearch::Found(found(mat)));
        }
    }
    Ok(IsoSearch::Inconclusive { trials: RANDOM_TRIALS })
}
