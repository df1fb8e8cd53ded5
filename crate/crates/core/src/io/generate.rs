//! Curated instance generators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::InstanceFile;
use crate::algebra::{Algebra, CayleyTable, Quiver};
use crate::error::{Error, Result};
use crate::linalg::matrix::random_invertible;
use crate::linalg::Field;

const MAX_GROUP_ORDER: usize = 24;
const MAX_MATRIX_SIZE: usize = 4;
const MAX_PATHS: usize = 8;

/// One factor of a product, written `k`, `M<n>`, `T<n>` (for `k[x]/(x^n)`),
/// or a group: `C<n>`, `S<n>`, `D<n>` (order `2n`), `A<n>`, `Q8`, and
/// direct products such as `C2xC2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSpec {
    Ground,
    Matrix(usize),
    Truncated(usize),
    Group(CayleyTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerateKind {
    GroupAlgebra(CayleyTable),
    MatrixAlgebra(usize),
    PathAlgebra(Quiver),
    Product(Vec<FactorSpec>),
    /// The product of the factors in a random basis.
    Scrambled(Vec<FactorSpec>),
}

fn number(tok: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Instance(format!("bad size in factor `{tok}`")))
}

fn parse_group(tok: &str) -> Result<CayleyTable> {
    let mut acc: Option<CayleyTable> = None;
    for part in tok.split(['x', 'X']) {
        let g = match part.split_at(part.len().min(1)) {
            ("Q", "8") => CayleyTable::quaternion(),
            ("C", n) => CayleyTable::cyclic(number(tok, n)?),
            ("S", n) => CayleyTable::symmetric(number(tok, n)?),
            ("D", n) => CayleyTable::dihedral(number(tok, n)?),
            ("A", n) => CayleyTable::alternating(number(tok, n)?),
            _ => return Err(Error::Instance(format!("unknown group `{part}`"))),
        };
        if g.order() == 0 || g.order() > MAX_GROUP_ORDER {
            return Err(Error::Instance(format!("group `{part}` has order {}", g.order())));
        }
        acc = Some(match acc {
            None => g,
            Some(h) => CayleyTable::direct_product(&h, &g),
        });
    }
    acc.ok_or_else(|| Error::Instance("empty group".into()))
}

pub fn parse_factor(tok: &str) -> Result<FactorSpec> {
    let tok = tok.trim();
    match tok.split_at(tok.len().min(1)) {
        ("k", "") => Ok(FactorSpec::Ground),
        ("M", n) => Ok(FactorSpec::Matrix(number(tok, n)?)),
        ("T", n) => Ok(FactorSpec::Truncated(number(tok, n)?)),
        _ => parse_group(tok).map(FactorSpec::Group),
    }
}

fn group_algebra(field: Field, g: &CayleyTable) -> Result<Algebra> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(Error::Instance(format!("group order {} exceeds {MAX_GROUP_ORDER}", g.order())));
    }
    let g = CayleyTable::new(g.table.clone())?;
    Algebra::group_algebra(field, &g)
}

fn matrix_algebra(field: Field, n: usize) -> Result<Algebra> {
    if n == 0 || n > MAX_MATRIX_SIZE {
        return Err(Error::Instance(format!("matrix size must be 1..={MAX_MATRIX_SIZE}")));
    }
    Algebra::matrix(field, n)
}

fn build(field: Field, f: &FactorSpec) -> Result<Algebra> {
    match f {
        FactorSpec::Ground => Ok(Algebra::ground(field)),
        FactorSpec::Matrix(n) => matrix_algebra(field, *n),
        FactorSpec::Truncated(0) => Err(Error::Instance("T0 is the zero algebra".into())),
        FactorSpec::Truncated(n) => Algebra::truncated_polynomial(field, *n),
        FactorSpec::Group(g) => group_algebra(field, g),
    }
}

fn product(field: Field, fs: &[FactorSpec]) -> Result<Algebra> {
    let parts = fs.iter().map(|f| build(field, f)).collect::<Result<Vec<_>>>()?;
    Algebra::product(&parts.iter().collect::<Vec<_>>())
}

/// `a` rewritten in a random basis drawn from `seed`.
pub fn scramble(a: &Algebra, seed: u64) -> Result<Algebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    a.change_basis(&random_invertible(a.field(), a.dim(), &mut rng))
}

/// An instance holding algebra `name` and two decompositions of it: `D1`
/// canonical and `D2` seeded with `seed`.
pub fn generate(kind: &GenerateKind, field: Field, name: &str, seed: u64) -> Result<InstanceFile> {
    let a = match kind {
        GenerateKind::GroupAlgebra(g) => group_algebra(field, g)?,
        GenerateKind::MatrixAlgebra(n) => matrix_algebra(field, *n)?,
        GenerateKind::PathAlgebra(q) => {
            let paths = q.paths()?;
            if paths.len() > MAX_PATHS {
                return Err(Error::Instance(format!("quiver has {} paths, at most {MAX_PATHS} allowed", paths.len())));
            }
            Algebra::path_algebra(field, q)?
        }
        GenerateKind::Product(fs) => product(field, fs)?,
        GenerateKind::Scrambled(fs) => scramble(&product(field, fs)?, seed)?,
    };
    let mut f = InstanceFile::new(field);
    f.add_algebra(name, &a)
        .add_decomposition("D1", name, None)
        .add_decomposition("D2", name, Some(seed));
    Ok(f)
}
