//! Sparse linear algebra over GF(2).
//!
//! Elimination keeps one reduced vector per pivot row (the lowest set row of
//! that vector) together with the combination of input columns that produced
//! it. Columns can be appended to an existing [`Eliminator`] at any time, so
//! nested bases (filtration levels) cost a single pass.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// A GF(2) vector stored as its strictly increasing support.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ChainF2 {
    support: Vec<usize>,
}

impl ChainF2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self { support: vec![index] }
    }

    /// Builds a chain from indices with repetition; repeated indices cancel in pairs.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        let mut support = Vec::with_capacity(v.len());
        for i in v {
            if support.last() == Some(&i) {
                support.pop();
            } else {
                support.push(i);
            }
        }
        Self { support }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.support.binary_search(&index).is_ok()
    }

    /// Symmetric difference.
    pub fn add(&self, other: &ChainF2) -> ChainF2 {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ChainF2 { support: out }
    }
}

/// Column-major sparse GF(2) matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrixF2 {
    n_rows: usize,
    columns: Vec<ChainF2>,
}

impl SparseMatrixF2 {
    pub fn new(n_rows: usize, columns: Vec<ChainF2>) -> Result<Self, LinAlgError> {
        for col in &columns {
            if let Some(&last) = col.support().last() {
                if last >= n_rows {
                    return Err(LinAlgError::IndexOutOfRange {
                        index: last,
                        dim: n_rows,
                    });
                }
            }
        }
        Ok(Self { n_rows, columns })
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            columns: vec![ChainF2::zero(); n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            columns: (0..n).map(ChainF2::basis).collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &ChainF2 {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[ChainF2] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(ChainF2::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(ChainF2::is_zero)
    }

    /// `A·x`.
    pub fn mul_chain(&self, x: &ChainF2) -> Result<ChainF2, LinAlgError> {
        if let Some(&last) = x.support().last() {
            if last >= self.n_cols() {
                return Err(LinAlgError::IndexOutOfRange {
                    index: last,
                    dim: self.n_cols(),
                });
            }
        }
        Ok(ChainF2::from_indices(
            x.support()
                .iter()
                .flat_map(|&j| self.columns[j].support().iter().copied()),
        ))
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &SparseMatrixF2) -> Result<SparseMatrixF2, LinAlgError> {
        if rhs.n_rows != self.n_cols() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.n_cols(),
                found: rhs.n_rows,
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|c| self.mul_chain(c))
            .collect::<Result<_, _>>()?;
        Ok(SparseMatrixF2 {
            n_rows: self.n_rows,
            columns,
        })
    }

    /// Keeps the listed rows, renumbered in the order given.
    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrixF2 {
        let mut new_index = vec![usize::MAX; self.n_rows];
        for (i, &r) in rows.iter().enumerate() {
            new_index[r] = i;
        }
        let columns = self
            .columns
            .iter()
            .map(|c| ChainF2::from_indices(c.support().iter().map(|&r| new_index[r]).filter(|&r| r != usize::MAX)))
            .collect();
        SparseMatrixF2 {
            n_rows: rows.len(),
            columns,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrixF2 {
        SparseMatrixF2 {
            n_rows: self.n_rows,
            columns: cols.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn with_len(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn from_support(len: usize, support: &[usize]) -> Self {
        let mut b = Self::with_len(len);
        for &i in support {
            b.flip(i);
        }
        b
    }

    fn flip(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] ^= 1 << (i % 64);
    }

    fn xor_assign(&mut self, other: &Bits) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn to_chain(&self) -> ChainF2 {
        let mut support = Vec::new();
        for (i, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                support.push(i * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        ChainF2 { support }
    }
}

/// Outcome of appending a column to an [`Eliminator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pushed {
    /// Independent of the earlier columns; carries the pivot row.
    Pivot(usize),
    /// Dependent: the returned combination of pushed columns (including the
    /// new one) sums to zero.
    Dependent(ChainF2),
}

/// Incremental Gaussian elimination over GF(2).
#[derive(Debug, Clone)]
pub struct Eliminator {
    n_rows: usize,
    n_cols: usize,
    reduced: Vec<Bits>,
    combos: Vec<Bits>,
    pivot_of_row: Vec<Option<usize>>,
}

impl Eliminator {
    pub fn new(n_rows: usize) -> Self {
        Self {
            n_rows,
            n_cols: 0,
            reduced: Vec::new(),
            combos: Vec::new(),
            pivot_of_row: vec![None; n_rows],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Number of columns pushed so far.
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    fn check(&self, v: &ChainF2) -> Result<(), LinAlgError> {
        match v.support().last() {
            Some(&last) if last >= self.n_rows => Err(LinAlgError::IndexOutOfRange {
                index: last,
                dim: self.n_rows,
            }),
            _ => Ok(()),
        }
    }

    fn reduce_bits(&self, v: &mut Bits, combo: &mut Bits) {
        while let Some(row) = v.lowest() {
            match self.pivot_of_row[row] {
                Some(p) => {
                    v.xor_assign(&self.reduced[p]);
                    combo.xor_assign(&self.combos[p]);
                }
                None => break,
            }
        }
    }

    pub fn push_column(&mut self, column: &ChainF2) -> Result<Pushed, LinAlgError> {
        self.check(column)?;
        let mut v = Bits::from_support(self.n_rows, column.support());
        let mut combo = Bits::default();
        combo.flip(self.n_cols);
        self.n_cols += 1;
        self.reduce_bits(&mut v, &mut combo);
        match v.lowest() {
            Some(row) => {
                self.pivot_of_row[row] = Some(self.reduced.len());
                self.reduced.push(v);
                self.combos.push(combo);
                Ok(Pushed::Pivot(row))
            }
            None => Ok(Pushed::Dependent(combo.to_chain())),
        }
    }

    /// Some `x` over the pushed columns with `A·x = b`, if `b` is in the span.
    pub fn solve(&self, b: &ChainF2) -> Result<Option<ChainF2>, LinAlgError> {
        self.check(b)?;
        let mut v = Bits::from_support(self.n_rows, b.support());
        let mut combo = Bits::default();
        self.reduce_bits(&mut v, &mut combo);
        Ok(match v.lowest() {
            None => Some(combo.to_chain()),
            Some(_) => None,
        })
    }
}

fn eliminate(a: &SparseMatrixF2) -> Eliminator {
    let mut e = Eliminator::new(a.n_rows());
    for col in a.columns() {
        e.push_column(col).expect("columns validated at construction");
    }
    e
}

/// Solves `A·x = b`; `None` if `b` is not in the column space.
pub fn solve(a: &SparseMatrixF2, b: &ChainF2) -> Result<Option<ChainF2>, LinAlgError> {
    if let Some(&last) = b.support().last() {
        if last >= a.n_rows() {
            return Err(LinAlgError::DimensionMismatch {
                expected: a.n_rows(),
                found: last + 1,
            });
        }
    }
    eliminate(a).solve(b)
}

pub fn rank(a: &SparseMatrixF2) -> usize {
    eliminate(a).rank()
}

/// Rank of the column concatenation `[A | B]`.
pub fn rank_of_span_union(a: &SparseMatrixF2, b: &SparseMatrixF2) -> Result<usize, LinAlgError> {
    if a.n_rows() != b.n_rows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: a.n_rows(),
            found: b.n_rows(),
        });
    }
    let mut e = eliminate(a);
    for col in b.columns() {
        e.push_column(col)?;
    }
    Ok(e.rank())
}

/// A basis of `ker A`, one vector per dependent column.
pub fn kernel_basis(a: &SparseMatrixF2) -> Vec<ChainF2> {
    let mut e = Eliminator::new(a.n_rows());
    a.columns()
        .iter()
        .filter_map(|col| match e.push_column(col).expect("validated") {
            Pushed::Dependent(k) => Some(k),
            Pushed::Pivot(_) => None,
        })
        .collect()
}
