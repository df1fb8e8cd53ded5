//! Jacobson radical.
//!
//! Characteristic zero: `J` is the kernel of the trace form `(x, y) -> tr L_{xy}`.
//! Characteristic `p`: the trace form only gives a chain of ideals
//! `I_0 ⊇ I_1 ⊇ ...`; `I_i` is cut out inside `I_{i-1}` by the functionals
//! `g_i(x) = (tr(L~_x^{p^i}) mod p^{i+1}) / p^i` where `L~_x` is an integer lift of
//! the regular representation. These are linear on `I_{i-1}` and the chain
//! stabilises at the radical after `floor(log_p dim)` steps.

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// A basis of the Jacobson radical (rows of a reduced echelon form).
pub fn radical(a: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let n = a.dim();
    let field = a.field();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| a.basis_element(i)).collect();
    // I_0: trace form kernel
    let mut gram = Vec::with_capacity(n);
    for x in &basis {
        gram.push(basis.iter().map(|y| trace(&a.left_mult(&a.mul(x, y)))).collect::<Vec<_>>());
    }
    let mut ideal = Matrix::from_rows(field, n, gram)?.kernel();
    if let Field::Prime(p) = field {
        let mut i = 1u32;
        while (p as u128).pow(i) <= n as u128 && !ideal.is_empty() {
            ideal = refine(a, &ideal, p, i)?;
            i += 1;
        }
    }
    let j = echelon_basis(field, n, &ideal);
    if !is_nilpotent_ideal(a, &j) {
        return Err(Error::Internal("computed radical is not a nilpotent ideal".into()));
    }
    Ok(j)
}

fn trace(m: &Matrix) -> Scalar {
    (0..m.rows()).fold(m.field().zero(), |acc, i| &acc + &m[(i, i)])
}

/// `{x in I : g_i(x b) = 0 for all basis b}` for the current ideal `I`.
fn refine(a: &Algebra, ideal: &[Vec<Scalar>], p: u64, i: u32) -> Result<Vec<Vec<Scalar>>> {
    let n = a.dim();
    let field = a.field();
    // column k of the system: g_i(v_k b_j) over all j
    let mut cols = Vec::with_capacity(ideal.len());
    for v in ideal {
        let mut col = Vec::with_capacity(n);
        for j in 0..n {
            let x = a.mul(v, &a.basis_element(j));
            col.push(field.from_i64(lifted_trace_functional(&a.left_mult(&x), p, i)? as i64));
        }
        cols.push(col);
    }
    let system = Matrix::from_columns(field, n, &cols);
    let ker = system.kernel();
    Ok(ker
        .iter()
        .map(|c| {
            let mut out = a.zero();
            for (ck, v) in c.iter().zip(ideal) {
                for (o, x) in out.iter_mut().zip(v) {
                    *o = &*o + &(ck * x);
                }
            }
            out
        })
        .collect())
}

/// `(tr(M~^{p^i}) mod p^{i+1}) / p^i` for an integer lift `M~` of `m`.
fn lifted_trace_functional(m: &Matrix, p: u64, i: u32) -> Result<u64> {
    let modulus = (p as u128).pow(i + 1);
    let n = m.rows();
    let lift: Vec<u128> = m
        .entries()
        .iter()
        .map(|x| x.residue().map(u128::from).ok_or_else(|| Error::InvalidField("expected a prime field".into())))
        .collect::<Result<_>>()?;
    let mul = |x: &[u128], y: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = x[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + a * y[k * n + c]) % modulus;
                }
            }
        }
        out
    };
    let mut e = (p as u128).pow(i);
    let mut base = lift;
    let mut acc: Vec<u128> = (0..n * n).map(|k| u128::from(k / n == k % n)).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    let tr = (0..n).fold(0u128, |t, r| (t + acc[r * n + r]) % modulus);
    let scale = (p as u128).pow(i);
    if tr % scale != 0 {
        return Err(Error::Internal("generalised trace not divisible by p^i".into()));
    }
    Ok((tr / scale) as u64)
}

fn echelon_basis(field: Field, n: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(field, n, vectors.to_vec())
        .expect("vectors of ambient length")
        .row_space()
}

/// Whether the span of `basis` is a two-sided ideal with `J^dim = 0`.
pub fn is_nilpotent_ideal(a: &Algebra, basis: &[Vec<Scalar>]) -> bool {
    let n = a.dim();
    let field = a.field();
    if basis.is_empty() {
        return true;
    }
    let span = |vs: &[Vec<Scalar>]| echelon_basis(field, n, vs);
    let j = span(basis);
    let contains = |space: &[Vec<Scalar>], v: &[Scalar]| {
        let mut rows = space.to_vec();
        rows.push(v.to_vec());
        Matrix::from_rows(field, n, rows).expect("ambient length").rank() == space.len()
    };
    for v in &j {
        for i in 0..n {
            let b = a.basis_element(i);
            if !contains(&j, &a.mul(v, &b)) || !contains(&j, &a.mul(&b, v)) {
                return false;
            }
        }
    }
    let mut power = j.clone();
    for _ in 0..n {
        if power.is_empty() {
            return true;
        }
        let products: Vec<Vec<Scalar>> = power.iter().flat_map(|x| j.iter().map(|y| a.mul(x, y))).collect();
        power = span(&products);
    }
    power.is_empty()
}
