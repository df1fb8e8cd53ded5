//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `t - r`.
    pub fn linear(r: &Scalar) -> Poly {
        let field = r.field();
        Poly::new(field, vec![-r, field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Scalar::is_one)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Scales to a monic polynomial; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("polynomial division by zero");
        let inv_lead = divisor.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= d) else {
            return (Poly::zero(self.field), self.clone());
        };
        let mut quot = vec![self.field.zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(self.field, n).scale(c);
        }
        acc
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if mag == "1" && i > 0 { String::new() } else { mag };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic polynomial `m` of least degree with `m(M) = 0`, found as the first
/// linear dependency among `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    // Echelon rows: (reduced vector, pivot, combination of powers that produced it).
    let mut rows: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
    let mut power = Matrix::identity(field, n);
    for k in 0..=n {
        let mut v = power.to_vector();
        let mut comb = vec![field.zero(); k + 1];
        comb[k] = field.one();
        for (r, p, c) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                *x = &*x - &(&f * y);
            }
            for (x, y) in comb.iter_mut().zip(c) {
                *x = &*x - &(&f * y);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Poly::new(field, comb).monic(),
            Some(p) => {
                let inv = v[p].inv().unwrap();
                let v = v.iter().map(|x| x * &inv).collect();
                let comb = comb.iter().map(|x| x * &inv).collect();
                rows.push((v, p, comb));
            }
        }
        power = &power * m;
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
}

/// Characteristic polynomial `det(tI - M)` by the division-free Berkowitz algorithm.
pub fn characteristic_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let field = m.field();
    let n = m.rows();
    // Coefficient vector, highest degree first, of the charpoly of the leading r x r block.
    let mut c = vec![field.one()];
    for r in 0..n {
        // Partition the leading (r+1)x(r+1) block as [[A, R], [S, a]] with A = m[0..r, 0..r].
        let a = m[(r, r)].clone();
        let row: Vec<Scalar> = (0..r).map(|j| m[(r, j)].clone()).collect();
        let col: Vec<Scalar> = (0..r).map(|i| m[(i, r)].clone()).collect();
        let block = m.block(0..r, 0..r);
        // Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        let mut t = vec![field.one(), -&a];
        let mut v = col.clone();
        for _ in 0..r {
            let rs = row.iter().zip(&v).fold(field.zero(), |acc, (x, y)| &acc + &(x * y));
            t.push(-&rs);
            if r > 0 {
                v = block.mul_vec(&v);
            }
        }
        // New coefficients: lower-triangular Toeplitz(t) (size r+2 x r+1) times c.
        let mut next = vec![field.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *slot = &*slot + &(&t[i - j] * cj);
                }
            }
        }
        c = next;
    }
    c.reverse();
    Poly::new(field, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(minimal_polynomial(&Matrix::zeros(q(), 2, 2)), Poly::t(q()));
        assert_eq!(
            minimal_polynomial(&Matrix::identity(q(), 3)),
            Poly::from_i64(q(), &[-1, 1])
        );
        // [[0,1],[0,0]] is nonzero but squares to zero.
        let n = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_polynomial(&n), Poly::from_i64(q(), &[0, 0, 1]));
    }

    #[test]
    fn charpoly_of_companion() {
        // Companion matrix of t^3 - 2t + 5.
        let m = Matrix::from_i64(q(), &[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(characteristic_polynomial(&m), Poly::from_i64(q(), &[5, -2, 0, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let f = Poly::from_i64(q(), &[-1, 0, 1]); // t^2 - 1
        let g = Poly::from_i64(q(), &[1, 1]); // t + 1
        let (quo, rem) = f.div_rem(&g);
        assert_eq!(quo, Poly::from_i64(q(), &[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(f.gcd(&Poly::from_i64(q(), &[2, 2])), g);
        let (d, s, t) = f.ext_gcd(&Poly::from_i64(q(), &[2, 1]));
        assert!(d.is_one());
        assert_eq!(s.mul(&f).add(&t.mul(&Poly::from_i64(q(), &[2, 1]))), d);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(q(), &[-1, 0, 1]).to_string(), "t^2 - 1");
        assert_eq!(Poly::from_i64(q(), &[0, -2]).to_string(), "-2t");
        assert_eq!(Poly::zero(q()).to_string(), "0");
    }
}
