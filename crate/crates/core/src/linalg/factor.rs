//! Splitting monic polynomials into pairwise coprime factors.
//!
//! Over `F_p` the result is the full irreducible factorization (squarefree
//! decomposition followed by Berlekamp). Over the rationals we only go as far
//! as a squarefree decomposition refined by rational roots; the result is
//! flagged complete only when every factor is certified irreducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Pairwise coprime monic factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Poly, usize)>,
    /// True when every factor is known to be irreducible.
    pub complete: bool,
}

impl Factorization {
    /// Product of `factor^multiplicity` over all factors.
    pub fn expand(&self, field: Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(field), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }
}

/// Largest absolute coefficient (numerator or denominator) for which rational
/// root candidates are enumerated by trial division.
const ROOT_SEARCH_BOUND: u64 = 1_000_000_000_000;

/// Below this modulus Berlekamp splitting tries every constant shift.
const EXHAUSTIVE_SPLIT_BOUND: u64 = 1 << 16;

pub fn factor_split(f: &Poly, field: Field) -> Result<Factorization> {
    if f.field() != field {
        return Err(Error::InvalidField(format!("polynomial over {} given with field {field}", f.field())));
    }
    if !f.is_monic() {
        return Err(Error::NonMonic(f.to_string()));
    }
    if f.degree() == Some(0) {
        return Ok(Factorization { factors: Vec::new(), complete: true });
    }
    let mut out = match field {
        Field::Prime(p) => factor_mod_p(f, p),
        Field::Rationals => factor_rational(f),
    };
    out.factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(out)
}

fn canonical_cmp(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Squarefree decomposition in characteristic `p`: parts `(g, i)` with `g`
/// squarefree and `f = prod g^i`.
fn squarefree_mod_p(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let field = f.field();
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        // c is a p-th power; over F_p the p-th root just thins the exponents.
        let root = Poly::new(
            field,
            c.coeffs().iter().step_by(p as usize).cloned().collect(),
        );
        for (g, m) in squarefree_mod_p(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn factor_mod_p(f: &Poly, p: u64) -> Factorization {
    let mut factors = Vec::new();
    for (g, m) in squarefree_mod_p(f, p) {
        for h in berlekamp(&g, p) {
            factors.push((h, m));
        }
    }
    Factorization { factors, complete: true }
}

/// Irreducible factors of a squarefree monic polynomial over `F_p`.
fn berlekamp(g: &Poly, p: u64) -> Vec<Poly> {
    let field = g.field();
    let n = g.degree().unwrap();
    if n <= 1 {
        return vec![g.clone()];
    }
    // Q has rows t^{ip} mod g; the Berlekamp subalgebra is the kernel of (Q - I)^T.
    let xp = Poly::t(field).pow_mod(p as u128, g);
    let mut q = Matrix::zeros(field, n, n);
    let mut row = Poly::one(field);
    for i in 0..n {
        for j in 0..n {
            q[(i, j)] = row.coeff(j);
        }
        row = row.mul(&xp).rem(g);
    }
    let kernel = (&q - &Matrix::identity(field, n)).transpose().kernel();
    let r = kernel.len();
    if r == 1 {
        return vec![g.clone()];
    }
    let splitters: Vec<Poly> = kernel
        .into_iter()
        .map(|v| Poly::new(field, v))
        .filter(|v| v.degree().is_some_and(|d| d > 0))
        .collect();
    let mut parts = vec![g.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d0fb_e71e);
    if p < EXHAUSTIVE_SPLIT_BOUND {
        // One pass over a kernel basis separates all irreducible factors.
        for v in &splitters {
            parts = parts.iter().flat_map(|h| split_with(h, v, p, &mut rng)).collect();
            if parts.len() == r {
                break;
            }
        }
    } else {
        while parts.len() < r {
            let combo = splitters.iter().fold(Poly::zero(field), |acc, v| {
                acc.add(&v.scale(&field.from_i64(rng.gen_range(0..p as i64))))
            });
            parts = parts.iter().flat_map(|h| split_with(h, &combo, p, &mut rng)).collect();
        }
    }
    debug_assert_eq!(parts.len(), r);
    parts.into_iter().map(|h| h.monic()).collect()
}

/// Splits `h` using a Berlekamp element `v`: the gcds `gcd(h, v - s)`.
fn split_with(h: &Poly, v: &Poly, p: u64, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let field = h.field();
    if h.degree() == Some(1) {
        return vec![h.clone()];
    }
    if p < EXHAUSTIVE_SPLIT_BOUND {
        let mut out = Vec::new();
        let mut rest = h.clone();
        for s in 0..p {
            let d = rest.gcd(&v.sub(&Poly::constant(field.from_i64(s as i64))));
            if d.degree().is_some_and(|k| k > 0) {
                rest = rest.div_exact(&d);
                out.push(d);
                if rest.is_one() {
                    break;
                }
            }
        }
        if !rest.is_one() {
            out.push(rest);
        }
        out
    } else {
        // (v + s)^{(p-1)/2} - 1 separates roots by quadratic character.
        let s = field.from_i64(rng.gen_range(0..p as i64));
        let w = v.add(&Poly::constant(s)).pow_mod(((p - 1) / 2) as u128, h).sub(&Poly::one(field));
        let d = h.gcd(&w);
        match d.degree() {
            Some(k) if k > 0 && k < h.degree().unwrap() => vec![d.clone(), h.div_exact(&d)],
            _ => vec![h.clone()],
        }
    }
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_rational(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0);
    let mut c = df.div_exact(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_one() {
        let a = b.gcd(&d);
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        d = c.sub(&b.derivative());
        if !a.is_one() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn factor_rational(f: &Poly) -> Factorization {
    let mut factors = Vec::new();
    let mut complete = true;
    for (g, m) in squarefree_rational(f) {
        let (roots, rest, searched) = rational_roots(&g);
        for r in roots {
            factors.push((Poly::linear(&r), m));
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(1) => factors.push((rest, m)),
            Some(2) | Some(3) if searched => factors.push((rest, m)),
            Some(_) => {
                complete = false;
                factors.push((rest, m));
            }
        }
    }
    Factorization { factors, complete }
}

/// Rational roots of a squarefree monic rational polynomial, the cofactor
/// left after removing them, and whether the candidate search was exhaustive.
fn rational_roots(g: &Poly) -> (Vec<Scalar>, Poly, bool) {
    let field = g.field();
    let mut rest = g.clone();
    let mut roots = Vec::new();
    if rest.coeff(0).is_zero() {
        roots.push(field.zero());
        rest = rest.div_exact(&Poly::t(field));
    }
    if rest.degree().is_none_or(|d| d == 0) {
        return (roots, rest, true);
    }
    // Clear denominators to get a primitive integer polynomial.
    let lcm = rest
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.to_ratio().1));
    let ints: Vec<BigInt> = rest
        .coeffs()
        .iter()
        .map(|c| {
            let (n, d) = c.to_ratio();
            n * (&lcm / d)
        })
        .collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let bound = BigInt::from(ROOT_SEARCH_BOUND);
    if a0 > bound || an > bound {
        return (roots, rest, false);
    }
    let nums = divisors(a0.to_u64().unwrap());
    let dens = divisors(an.to_u64().unwrap());
    let mut candidates = Vec::new();
    for n in &nums {
        for d in &dens {
            if BigInt::from(*n).gcd(&BigInt::from(*d)).is_one() {
                for sign in [1i64, -1] {
                    let num = BigInt::from(*n) * sign;
                    candidates.push(field.from_ratio(&num, &BigInt::from(*d)).unwrap());
                }
            }
        }
    }
    candidates.sort();
    for r in candidates {
        if rest.degree() == Some(0) {
            break;
        }
        if rest.eval(&r).is_zero() {
            rest = rest.div_exact(&Poly::linear(&r));
            roots.push(r);
        }
    }
    (roots, rest, true)
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Roots of `f` in `F_p` by evaluating at every residue.
#[cfg(test)]
pub(crate) fn roots_by_scan(f: &Poly, p: u64) -> Vec<u64> {
    let field = Field::Prime(p);
    (0..p).filter(|&r| f.eval(&field.from_i64(r as i64)).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn linear_roots(fac: &Factorization) -> Vec<u64> {
        let mut roots: Vec<u64> = fac
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| (-&g.coeff(0)).residue().unwrap())
            .collect();
        roots.sort();
        roots
    }

    #[test]
    fn t_squared_minus_one_mod_5() {
        let f5 = gf(5);
        let f = Poly::from_i64(f5, &[-1, 0, 1]);
        let fac = factor_split(&f, f5).unwrap();
        assert!(fac.complete);
        assert_eq!(linear_roots(&fac), roots_by_scan(&f, 5));
        assert_eq!(roots_by_scan(&f, 5), vec![1, 4]);
        assert!(fac.factors.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn t_fourth_minus_one_mod_5() {
        let f5 = gf(5);
        let f = Poly::from_i64(f5, &[-1, 0, 0, 0, 1]);
        let fac = factor_split(&f, f5).unwrap();
        assert!(fac.complete);
        assert_eq!(linear_roots(&fac), vec![1, 2, 3, 4]);
        assert_eq!(roots_by_scan(&f, 5), vec![1, 2, 3, 4]);
    }

    #[test]
    fn t_cubed_over_q() {
        let q = Field::Rationals;
        let fac = factor_split(&Poly::from_i64(q, &[0, 0, 0, 1]), q).unwrap();
        assert!(fac.complete);
        assert_eq!(fac.factors, vec![(Poly::t(q), 3)]);
    }

    #[test]
    fn irreducible_quadratic_over_q_is_certified() {
        let q = Field::Rationals;
        // (t^2 + 1)(t - 2)^2
        let f = Poly::from_i64(q, &[1, 0, 1]).mul(&Poly::from_i64(q, &[-2, 1]).pow(2));
        let fac = factor_split(&f, q).unwrap();
        assert!(fac.complete);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(q), f);
    }

    #[test]
    fn quartic_without_roots_is_partial() {
        let q = Field::Rationals;
        // t^4 + 1 is irreducible over Q but has degree 4, so it cannot be certified.
        let f = Poly::from_i64(q, &[1, 0, 0, 0, 1]);
        let fac = factor_split(&f, q).unwrap();
        assert!(!fac.complete);
        assert_eq!(fac.factors, vec![(f, 1)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        let q = Field::Rationals;
        // (t - 1/2)(t + 3/4)(t^2 + 2)
        let f = Poly::linear(&q.parse("1/2").unwrap())
            .mul(&Poly::linear(&q.parse("-3/4").unwrap()))
            .mul(&Poly::from_i64(q, &[2, 0, 1]));
        let fac = factor_split(&f, q).unwrap();
        assert!(fac.complete);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(q), f);
    }

    #[test]
    fn p_th_powers_mod_p() {
        let f3 = gf(3);
        // (t + 1)^3 (t^2 + 1)  over F_3: t^2 + 1 is irreducible mod 3.
        let f = Poly::from_i64(f3, &[1, 1]).pow(3).mul(&Poly::from_i64(f3, &[1, 0, 1]));
        let fac = factor_split(&f, f3).unwrap();
        assert!(fac.complete);
        assert_eq!(
            fac.factors,
            vec![(Poly::from_i64(f3, &[1, 1]), 3), (Poly::from_i64(f3, &[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn non_monic_rejected() {
        let q = Field::Rationals;
        assert!(matches!(
            factor_split(&Poly::from_i64(q, &[1, 2]), q),
            Err(Error::NonMonic(_))
        ));
    }
}
