//! Standard algebras: fields, matrix rings, group algebras, truncated and
//! quotient polynomial rings, path algebras of acyclic quivers, products.

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Poly};

/// A finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub table: Vec<Vec<usize>>,
}

impl CayleyTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<CayleyTable> {
        let t = CayleyTable { table };
        t.validate()?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.order();
        let bad = |m: String| Err(Error::Instance(format!("invalid Cayley table: {m}")));
        if n == 0 {
            return bad("empty".into());
        }
        if self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("not an n x n table on 0..n".into());
        }
        for r in &self.table {
            let mut seen = vec![false; n];
            for &x in r {
                if std::mem::replace(&mut seen[x], true) {
                    return bad("a row repeats an element".into());
                }
            }
        }
        if !(0..n).any(|e| (0..n).all(|g| self.table[e][g] == g && self.table[g][e] == g)) {
            return bad("no identity element".into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(&self) -> usize {
        (0..self.order())
            .find(|&e| (0..self.order()).all(|g| self.table[e][g] == g))
            .expect("validated table has an identity")
    }

    /// Cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> CayleyTable {
        CayleyTable {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// Direct product of two groups, element `(g, h)` numbered `g * |H| + h`.
    pub fn direct_product(g: &CayleyTable, h: &CayleyTable) -> CayleyTable {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|a| {
                (0..m * n)
                    .map(|b| g.table[a / n][b / n] * n + h.table[a % n][b % n])
                    .collect()
            })
            .collect();
        CayleyTable { table }
    }

    /// The group of all permutations of `0..k`, listed in lexicographic order.
    pub fn symmetric(k: usize) -> CayleyTable {
        let perms = permutations(k);
        Self::from_permutations(&perms)
    }

    /// Dihedral group of order `2n` as permutations of the `n`-gon's vertices.
    pub fn dihedral(n: usize) -> CayleyTable {
        let mut perms = Vec::new();
        for r in 0..n {
            perms.push((0..n).map(|i| (i + r) % n).collect::<Vec<_>>());
            perms.push((0..n).map(|i| (n + r - i) % n).collect::<Vec<_>>());
        }
        perms.sort();
        perms.dedup();
        Self::from_permutations(&perms)
    }

    /// Alternating group on `0..k`.
    pub fn alternating(k: usize) -> CayleyTable {
        let perms: Vec<Vec<usize>> = permutations(k).into_iter().filter(|p| permutation_sign(p) == 1).collect();
        Self::from_permutations(&perms)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> CayleyTable {
        // unit u in 0..4 = 1, i, j, k; element = 2*u + (sign bit)
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, neg) = unit_mul(a / 2, b / 2);
                        let s = (a % 2) ^ (b % 2) ^ usize::from(neg);
                        2 * u + s
                    })
                    .collect()
            })
            .collect();
        CayleyTable { table }
    }

    fn from_permutations(perms: &[Vec<usize>]) -> CayleyTable {
        // (p * q)(i) = p(q(i))
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                        perms.iter().position(|r| *r == pq).expect("not closed under composition")
                    })
                    .collect()
            })
            .collect();
        CayleyTable { table }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A finite quiver. Arrow `a` goes from `arrows[a].0` to `arrows[a].1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// All paths, trivial ones first (one per vertex), then by length. A path is
    /// its vertex sequence start..end together with the arrows taken.
    pub fn paths(&self) -> Result<Vec<(usize, usize, Vec<usize>)>> {
        if self.arrows.iter().any(|&(s, t)| s >= self.vertices || t >= self.vertices) {
            return Err(Error::Instance("arrow endpoint out of range".into()));
        }
        let mut all: Vec<(usize, usize, Vec<usize>)> = (0..self.vertices).map(|v| (v, v, vec![])).collect();
        let mut frontier: Vec<(usize, usize, Vec<usize>)> = all.clone();
        for _ in 0..=self.vertices {
            let mut next = Vec::new();
            for (s, t, p) in &frontier {
                for (a, &(from, to)) in self.arrows.iter().enumerate() {
                    if from == *t {
                        let mut q = p.clone();
                        q.push(a);
                        next.push((*s, to, q));
                    }
                }
            }
            if next.is_empty() {
                return Ok(all);
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        Err(Error::Instance("quiver has an oriented cycle".into()))
    }
}

impl Algebra {
    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        Algebra::product_of_fields(field, 1)
    }

    /// `k^n` with componentwise multiplication.
    pub fn product_of_fields(field: Field, n: usize) -> Algebra {
        let mut mul = vec![field.zero(); n * n * n];
        for i in 0..n {
            mul[(i * n + i) * n + i] = field.one();
        }
        Algebra {
            field,
            dim: n,
            mul,
            unit: vec![field.one(); n],
        }
    }

    /// `M_n(k)` with basis the matrix units `E_ij`, index `i * n + j`.
    pub fn matrix(field: Field, n: usize) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
        }
        let d = n * n;
        let mut mul = vec![field.zero(); d * d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (a, b, c) = (i * n + j, j * n + l, i * n + l);
                    mul[(a * d + b) * d + c] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Algebra::from_flat(field, d, mul, unit)
    }

    /// Group algebra with the group elements as basis.
    pub fn group_algebra(field: Field, group: &CayleyTable) -> Result<Algebra> {
        group.validate()?;
        let n = group.order();
        let mut mul = vec![field.zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                mul[(a * n + b) * n + group.table[a][b]] = field.one();
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[group.identity()] = field.one();
        Algebra::from_flat(field, n, mul, unit)
    }

    /// `k[x]/(f)` with basis `1, x, ..., x^{d-1}`; `f` must be monic of positive degree.
    pub fn polynomial_quotient(f: &Poly) -> Result<Algebra> {
        let field = f.field();
        let d = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => return Err(Error::InvalidAlgebra("modulus must be monic of positive degree".into())),
        };
        let mut mul = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let mut c = vec![field.zero(); i + j + 1];
                c[i + j] = field.one();
                let r = Poly::new(field, c).rem(f);
                mul.extend((0..d).map(|k| r.coeff(k)));
            }
        }
        let mut unit = vec![field.zero(); d];
        unit[0] = field.one();
        Algebra::from_flat(field, d, mul, unit)
    }

    /// `k[x]/(x^n)`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Result<Algebra> {
        let mut c = vec![field.zero(); n + 1];
        c[n] = field.one();
        Algebra::polynomial_quotient(&Poly::new(field, c))
    }

    /// Path algebra. Basis = paths as listed by [`Quiver::paths`]; the product
    /// `p * q` is "first `p`, then `q`" when the end of `p` is the start of `q`.
    pub fn path_algebra(field: Field, quiver: &Quiver) -> Result<Algebra> {
        let paths = quiver.paths()?;
        let n = paths.len();
        let mut mul = vec![field.zero(); n * n * n];
        for (i, (s1, t1, p1)) in paths.iter().enumerate() {
            for (j, (s2, t2, p2)) in paths.iter().enumerate() {
                if t1 != s2 {
                    continue;
                }
                let mut p = p1.clone();
                p.extend(p2);
                let k = paths
                    .iter()
                    .position(|(s, t, q)| s == s1 && t == t2 && *q == p)
                    .expect("path set closed under concatenation");
                mul[(i * n + j) * n + k] = field.one();
            }
        }
        let mut unit = vec![field.zero(); n];
        for u in unit.iter_mut().take(quiver.vertices) {
            *u = field.one();
        }
        if n == 0 {
            return Err(Error::InvalidAlgebra("quiver without vertices".into()));
        }
        Algebra::from_flat(field, n, mul, unit)
    }

    /// Block product `A_1 x ... x A_r`; basis of factor `t` follows those of factors `< t`.
    pub fn product(factors: &[&Algebra]) -> Result<Algebra> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidAlgebra("empty product is the zero algebra".into()));
        };
        let field = first.field;
        if factors.iter().any(|a| a.field != field) {
            return Err(Error::InvalidField("factors over different fields".into()));
        }
        let n: usize = factors.iter().map(|a| a.dim).sum();
        let mut mul = vec![field.zero(); n * n * n];
        let mut unit = Vec::with_capacity(n);
        let mut off = 0;
        for a in factors {
            let d = a.dim;
            for i in 0..d {
                for j in 0..d {
                    for (k, c) in a.product_of_basis(i, j).iter().enumerate() {
                        mul[((off + i) * n + off + j) * n + off + k] = c.clone();
                    }
                }
            }
            unit.extend(a.unit.iter().cloned());
            off += d;
        }
        Ok(Algebra { field, dim: n, mul, unit })
    }

    /// Opposite algebra (same basis, reversed product).
    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mut mul = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                mul.extend(self.product_of_basis(j, i).iter().cloned());
            }
        }
        Algebra {
            field: self.field,
            dim: n,
            mul,
            unit: self.unit.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    fn ints(field: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn groups_have_expected_orders() {
        assert_eq!(CayleyTable::symmetric(3).order(), 6);
        assert_eq!(CayleyTable::dihedral(4).order(), 8);
        assert_eq!(CayleyTable::alternating(4).order(), 12);
        for g in [
            CayleyTable::symmetric(3),
            CayleyTable::dihedral(5),
            CayleyTable::quaternion(),
            CayleyTable::alternating(4),
            CayleyTable::direct_product(&CayleyTable::cyclic(2), &CayleyTable::cyclic(3)),
        ] {
            CayleyTable::new(g.table).unwrap();
        }
    }

    #[test]
    fn bad_cayley_table_rejected() {
        assert!(CayleyTable::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(CayleyTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(CayleyTable::new(vec![vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn s3_group_algebra_is_valid() {
        let a = Algebra::group_algebra(Field::Rationals, &CayleyTable::symmetric(3)).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(!a.is_commutative());
    }

    #[test]
    fn matrix_units_multiply() {
        let f = Field::prime(2).unwrap();
        let a = Algebra::matrix(f, 2).unwrap();
        // E_01 E_10 = E_00
        assert_eq!(a.product_of_basis(1, 2), ints(f, &[1, 0, 0, 0]).as_slice());
        assert_eq!(a.product_of_basis(2, 1), ints(f, &[0, 0, 0, 1]).as_slice());
    }

    #[test]
    fn path_algebra_of_a2() {
        let q = Quiver {
            vertices: 2,
            arrows: vec![(0, 1)],
        };
        let a = Algebra::path_algebra(Field::Rationals, &q).unwrap();
        assert_eq!(a.dim(), 3);
        let cyclic = Quiver {
            vertices: 1,
            arrows: vec![(0, 0)],
        };
        assert!(Algebra::path_algebra(Field::Rationals, &cyclic).is_err());
    }

    #[test]
    fn products_and_quotients() {
        let f = Field::prime(3).unwrap();
        let m = Algebra::matrix(f, 2).unwrap();
        let k = Algebra::ground(f);
        assert_eq!(Algebra::product(&[&m, &k]).unwrap().dim(), 5);
        let c = Algebra::polynomial_quotient(&Poly::from_i64(f, &[-1, 0, 0, 1])).unwrap();
        assert!(c.is_commutative());
        let g = Algebra::group_algebra(f, &CayleyTable::cyclic(3)).unwrap();
        assert_eq!(g.dim(), c.dim());
    }
}
