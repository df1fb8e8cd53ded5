//! Composable strings of 1-cells and the 2-cells between them.
//!
//! A [`Word`] `[M_1, ..., M_k]` stands for `M_1 ∘ ... ∘ M_k`; its underlying
//! bimodule is the left-bracketed tensor product, and the empty word on `A` is
//! `A` itself. Because all bracketings and unit insertions are identified
//! through one fixed normal form, 2-cells between words compose and whisker
//! without explicit associators or unitors.

use std::sync::Arc;

use super::tensor::{compose_1cells, Tensor};
use super::{Bimodule, BimoduleMap};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_add, vec_scale};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Clone, Debug)]
pub struct Word {
    src: Arc<Algebra>,
    tgt: Arc<Algebra>,
    letters: Vec<Arc<Bimodule>>,
    flat: Arc<Flat>,
}

#[derive(Debug)]
struct Flat {
    bimodule: Arc<Bimodule>,
    /// stage `t` tensors the first `t + 1` letters with letter `t + 1`
    stages: Vec<Tensor>,
    /// pure multi-index representing each basis vector
    reps: Vec<Vec<usize>>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Word) -> bool {
        Algebra::same_as(&self.src, &other.src)
            && Algebra::same_as(&self.tgt, &other.tgt)
            && self.letters.len() == other.letters.len()
            && self
                .letters
                .iter()
                .zip(&other.letters)
                .all(|(a, b)| Arc::ptr_eq(a, b) || a == b)
    }
}

impl Word {
    /// The identity 1-cell on `a`.
    pub fn identity(a: &Arc<Algebra>) -> Word {
        let bimodule = Arc::new(Bimodule::regular(a));
        let reps = (0..a.dim()).map(|i| vec![i]).collect();
        Word {
            src: a.clone(),
            tgt: a.clone(),
            letters: Vec::new(),
            flat: Arc::new(Flat {
                bimodule,
                stages: Vec::new(),
                reps,
            }),
        }
    }

    /// `letters[0] ∘ letters[1] ∘ ...`; must be nonempty and composable.
    pub fn new(letters: Vec<Arc<Bimodule>>) -> Result<Word> {
        let Some(first) = letters.first() else {
            return Err(Error::ShapeMismatch("use Word::identity for the empty word".into()));
        };
        for w in letters.windows(2) {
            if !Algebra::same_as(w[0].right_algebra(), w[1].left_algebra()) {
                return Err(Error::AlgebraMismatch("adjacent 1-cells are not composable".into()));
            }
        }
        let mut bimodule = first.clone();
        let mut reps: Vec<Vec<usize>> = (0..first.dim()).map(|i| vec![i]).collect();
        let mut stages = Vec::with_capacity(letters.len() - 1);
        for m in &letters[1..] {
            let t = compose_1cells(&bimodule, m)?;
            reps = (0..t.bimodule.dim())
                .map(|k| {
                    let (i, j) = t.representative(k);
                    let mut r = reps[i].clone();
                    r.push(j);
                    r
                })
                .collect();
            bimodule = t.bimodule.clone();
            stages.push(t);
        }
        Ok(Word {
            src: letters.last().unwrap().right_algebra().clone(),
            tgt: first.left_algebra().clone(),
            letters,
            flat: Arc::new(Flat { bimodule, stages, reps }),
        })
    }

    pub fn single(m: &Arc<Bimodule>) -> Word {
        Word::new(vec![m.clone()]).expect("a single letter is always composable")
    }

    /// `self ∘ other`.
    pub fn then(&self, other: &Word) -> Result<Word> {
        if !Algebra::same_as(&self.src, &other.tgt) {
            return Err(Error::AlgebraMismatch("words are not composable".into()));
        }
        if other.letters.is_empty() {
            return Ok(self.clone());
        }
        if self.letters.is_empty() {
            return Ok(other.clone());
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word::new(letters)
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.src
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.tgt
    }

    pub fn letters(&self) -> &[Arc<Bimodule>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn field(&self) -> Field {
        self.src.field()
    }

    /// The composite bimodule.
    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.flat.bimodule
    }

    pub fn dim(&self) -> usize {
        self.flat.bimodule.dim()
    }

    /// Multi-index `(i_1, ..., i_k)` with basis vector `k` the class of the pure
    /// tensor of letter basis vectors (for the empty word, the algebra index).
    pub fn representative(&self, k: usize) -> &[usize] {
        &self.flat.reps[k]
    }

    /// Class of `v_1 ⊗ ... ⊗ v_k` (one vector per letter).
    pub fn project(&self, vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
        if self.letters.is_empty() {
            return vectors[0].clone();
        }
        debug_assert_eq!(vectors.len(), self.letters.len());
        let mut x = vectors[0].clone();
        for (stage, v) in self.flat.stages.iter().zip(&vectors[1..]) {
            x = stage.project(&x, v);
        }
        x
    }

    pub fn project_pure(&self, index: &[usize]) -> Vec<Scalar> {
        if self.letters.is_empty() {
            return unit_vector(self.field(), self.dim(), index[0]);
        }
        let vs: Vec<Vec<Scalar>> = index
            .iter()
            .zip(&self.letters)
            .map(|(&i, m)| unit_vector(self.field(), m.dim(), i))
            .collect();
        self.project(&vs)
    }
}

/// A 2-cell between parallel words: a bimodule map of the composites.
#[derive(Clone, Debug)]
pub struct Cell {
    src: Word,
    tgt: Word,
    matrix: Matrix,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Cell) -> bool {
        self.matrix == other.matrix && self.src == other.src && self.tgt == other.tgt
    }
}

impl Cell {
    pub fn new(src: Word, tgt: Word, matrix: Matrix) -> Result<Cell> {
        let c = Cell::new_unchecked(src, tgt, matrix)?;
        if !c.src.bimodule().is_intertwiner(c.tgt.bimodule(), &c.matrix) {
            return Err(Error::InvalidMap("2-cell matrix does not intertwine the actions".into()));
        }
        Ok(c)
    }

    fn new_unchecked(src: Word, tgt: Word, matrix: Matrix) -> Result<Cell> {
        if !Algebra::same_as(&src.src, &tgt.src) || !Algebra::same_as(&src.tgt, &tgt.tgt) {
            return Err(Error::AlgebraMismatch("2-cell between non-parallel words".into()));
        }
        if matrix.rows() != tgt.dim() || matrix.cols() != src.dim() {
            return Err(Error::ShapeMismatch(format!(
                "2-cell matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                tgt.dim(),
                src.dim()
            )));
        }
        Ok(Cell { src, tgt, matrix })
    }

    fn checked(self) -> Cell {
        debug_assert!(
            self.src.bimodule().is_intertwiner(self.tgt.bimodule(), &self.matrix),
            "constructed 2-cell is not a bimodule map"
        );
        self
    }

    pub fn identity(w: &Word) -> Cell {
        Cell {
            src: w.clone(),
            tgt: w.clone(),
            matrix: Matrix::identity(w.field(), w.dim()),
        }
    }

    pub fn zero(src: &Word, tgt: &Word) -> Result<Cell> {
        Cell::new_unchecked(src.clone(), tgt.clone(), Matrix::zeros(src.field(), tgt.dim(), src.dim()))
    }

    /// A 2-cell `[]_A => []_A` given by multiplication with a central element.
    pub fn central(a: &Arc<Algebra>, z: &[Scalar]) -> Result<Cell> {
        if !a.is_central(z) {
            return Err(Error::Precondition("element is not central".into()));
        }
        let w = Word::identity(a);
        Cell::new_unchecked(w.clone(), w, a.left_mult(z))
    }

    pub fn from_map(src: Word, tgt: Word, map: &BimoduleMap) -> Result<Cell> {
        if map.source() != src.bimodule() || map.target() != tgt.bimodule() {
            return Err(Error::ShapeMismatch("map does not match the words' composites".into()));
        }
        Cell::new_unchecked(src, tgt, map.matrix().clone())
    }

    pub fn to_map(&self) -> BimoduleMap {
        BimoduleMap {
            source: self.src.bimodule().clone(),
            target: self.tgt.bimodule().clone(),
            matrix: self.matrix.clone(),
        }
    }

    pub fn source(&self) -> &Word {
        &self.src
    }

    pub fn target(&self) -> &Word {
        &self.tgt
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Vertical composite `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Cell) -> Result<Cell> {
        if inner.tgt != self.src {
            return Err(Error::ShapeMismatch("vertical composite of non-composable 2-cells".into()));
        }
        Ok(Cell {
            src: inner.src.clone(),
            tgt: self.tgt.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    fn parallel(&self, other: &Cell) -> Result<()> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::ShapeMismatch("2-cells are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cell) -> Result<Cell> {
        self.parallel(other)?;
        Ok(Cell {
            matrix: &self.matrix + &other.matrix,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Cell) -> Result<Cell> {
        self.parallel(other)?;
        Ok(Cell {
            matrix: &self.matrix - &other.matrix,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Cell {
        Cell {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    pub fn inverse(&self) -> Option<Cell> {
        self.matrix.inverse().map(|m| Cell {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            matrix: m,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.matrix.is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// For an endomorphism of an identity word, the central element it multiplies by.
    pub fn central_element(&self) -> Option<Vec<Scalar>> {
        if !self.src.is_empty() || !self.tgt.is_empty() {
            return None;
        }
        let a = &self.src.src;
        let z = self.matrix.mul_vec(a.unit());
        (a.left_mult(&z) == self.matrix).then_some(z)
    }

    /// `u α v: u s v => u s' v` for `α: s => s'`.
    pub fn whisker(u: &Word, alpha: &Cell, v: &Word) -> Result<Cell> {
        if u.is_empty() && v.is_empty() {
            if !Algebra::same_as(&u.src, &alpha.src.tgt) || !Algebra::same_as(&v.tgt, &alpha.src.src) {
                return Err(Error::AlgebraMismatch("whiskering by words on the wrong algebras".into()));
            }
            return Ok(alpha.clone());
        }
        let src = u.then(&alpha.src)?.then(v)?;
        let tgt = u.then(&alpha.tgt)?.then(v)?;
        let field = src.field();
        let (nu, ns, nv) = (u.len(), alpha.src.len(), v.len());
        let letter_unit = |w: &Word, pos: usize, i: usize| unit_vector(field, w.letters[pos].dim(), i);
        let mut cols = Vec::with_capacity(src.dim());
        for k in 0..src.dim() {
            let rep = src.representative(k);
            let (ru, rest) = rep.split_at(nu);
            let (rs, rv) = rest.split_at(ns);
            let x = if ns == 0 {
                alpha.src.src.unit().to_vec()
            } else {
                alpha.src.project_pure(rs)
            };
            let y = alpha.matrix.mul_vec(&x);
            let col = if alpha.tgt.is_empty() {
                // absorb the algebra element y into a neighbouring letter
                let mut vecs: Vec<Vec<Scalar>> = (0..nu).map(|p| letter_unit(u, p, ru[p])).collect();
                vecs.extend((0..nv).map(|p| letter_unit(v, p, rv[p])));
                if nv > 0 {
                    vecs[nu] = v.letters[0].act_left(&y).mul_vec(&vecs[nu]);
                } else {
                    vecs[nu - 1] = u.letters[nu - 1].act_right(&y).mul_vec(&vecs[nu - 1]);
                }
                tgt.project(&vecs)
            } else {
                let mut acc = vec![field.zero(); tgt.dim()];
                for (r, yr) in y.iter().enumerate() {
                    if yr.is_zero() {
                        continue;
                    }
                    let mut idx = ru.to_vec();
                    idx.extend_from_slice(alpha.tgt.representative(r));
                    idx.extend_from_slice(rv);
                    acc = vec_add(&acc, &vec_scale(&tgt.project_pure(&idx), yr));
                }
                acc
            };
            cols.push(col);
        }
        let matrix = Matrix::from_columns(field, tgt.dim(), &cols);
        Ok(Cell::new_unchecked(src, tgt, matrix)?.checked())
    }

    /// `w α`.
    pub fn left_whisker(w: &Word, alpha: &Cell) -> Result<Cell> {
        Cell::whisker(w, alpha, &Word::identity(&alpha.src.src))
    }

    /// `α w`.
    pub fn right_whisker(alpha: &Cell, w: &Word) -> Result<Cell> {
        Cell::whisker(&Word::identity(&alpha.src.tgt), alpha, w)
    }

    /// Horizontal composite `β ∘ α: t s => t' s'` for `β: t => t'`, `α: s => s'`.
    pub fn hcomp(beta: &Cell, alpha: &Cell) -> Result<Cell> {
        let first = Cell::right_whisker(beta, &alpha.src)?;
        let second = Cell::left_whisker(&beta.tgt, alpha)?;
        second.compose(&first)
    }
}
