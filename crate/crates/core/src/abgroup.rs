//! Integer matrices, Smith normal form and finitely presented abelian groups.
//!
//! A presentation `Z^n / rowspan(R)` is the common currency for every class
//! group in the crate: divisor class groups, their quotients by principal
//! divisors and the torsion tests behind the classification verdicts.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{int, parse_int, Int};

/// Dense row-major matrix over an exact integer scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Int> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from explicit rows; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + v;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![T::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + vi.clone() * self[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    /// Parses the text format: a header line `rows cols` followed by `rows`
    /// lines of whitespace-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad header {header:?}: {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("header must be `rows cols`, got {header:?}")));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", r + 1)))?;
            let before = data.len();
            for tok in line.split_whitespace() {
                data.push(
                    parse_int::<T>(tok)
                        .ok_or_else(|| Error::Parse(format!("bad integer {tok:?}")))?,
                );
            }
            if data.len() - before != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    r + 1,
                    data.len() - before
                )));
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content {extra:?}")));
        }
        Matrix::new(rows, cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[src]
    fn add_row_multiple(&mut self, target: usize, src: usize, factor: &T) {
        for j in 0..self.cols {
            let v = factor.clone() * self[(src, j)].clone();
            self[(target, j)] = self[(target, j)].clone() + v;
        }
    }

    /// col[target] += factor * col[src]
    fn add_col_multiple(&mut self, target: usize, src: usize, factor: &T) {
        for i in 0..self.rows {
            let v = factor.clone() * self[(i, src)].clone();
            self[(i, target)] = self[(i, target)].clone() + v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Int> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u * m * w == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub w: Matrix<T>,
}

impl<T: Int> SmithForm<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot policy: smallest nonzero absolute value in the remaining block,
/// ties broken by first position in row-major order. Diagonal entries are
/// non-negative and satisfy `d_1 | d_2 | ...`, zeros last.
pub fn smith_normal_form<T: Int>(m: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut w = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if a[(pi, pj)].abs() <= v.abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return SmithForm { d: a, u, w };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                w.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let p = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d: a, u, w }
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupStructure<T> {
    pub free_rank: usize,
    pub invariant_factors: Vec<T>,
}

impl<T: Int> GroupStructure<T> {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<T> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(T::one(), |acc, d| acc * d.clone()),
        )
    }
}

impl<T: Int> fmt::Display for GroupStructure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Structure of `Z^cols / rowspan(m)`.
pub fn cokernel_structure<T: Int>(m: &Matrix<T>) -> GroupStructure<T> {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    GroupStructure {
        free_rank: m.cols - rank,
        invariant_factors: diag.into_iter().filter(|x| x > &T::one()).collect(),
    }
}

/// Order of an element; `Infinite` for non-torsion elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order<T> {
    Finite(T),
    Infinite,
}

impl<T: Int> Order<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl<T: Int> fmt::Display for Order<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// The group `Z^generator_count / rowspan(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation<T> {
    generator_count: usize,
    relations: Matrix<T>,
}

impl<T: Int> AbelianGroupPresentation<T> {
    pub fn new(generator_count: usize, relations: Matrix<T>) -> Result<Self> {
        if relations.cols != generator_count {
            return Err(Error::DimensionMismatch {
                expected: generator_count,
                got: relations.cols,
            });
        }
        Ok(AbelianGroupPresentation {
            generator_count,
            relations,
        })
    }

    pub fn free(generator_count: usize) -> Self {
        AbelianGroupPresentation {
            generator_count,
            relations: Matrix::zeros(0, generator_count),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &Matrix<T> {
        &self.relations
    }

    pub fn with_relation(&self, rel: &[T]) -> Result<Self> {
        if rel.len() != self.generator_count {
            return Err(Error::DimensionMismatch {
                expected: self.generator_count,
                got: rel.len(),
            });
        }
        let mut data = self.relations.data.clone();
        data.extend(rel.iter().cloned());
        Ok(AbelianGroupPresentation {
            generator_count: self.generator_count,
            relations: Matrix::new(self.relations.rows + 1, self.generator_count, data)?,
        })
    }

    pub fn structure(&self) -> GroupStructure<T> {
        cokernel_structure(&self.relations)
    }

    /// Least `n >= 1` with `n * v` in the relation lattice.
    ///
    /// With `U R W = D`, `v` lies in `rowspan(R)` iff `v W` lies in
    /// `rowspan(D)`, so the order is read off coordinate-wise.
    pub fn element_order(&self, v: &[T]) -> Result<Order<T>> {
        if v.len() != self.generator_count {
            return Err(Error::DimensionMismatch {
                expected: self.generator_count,
                got: v.len(),
            });
        }
        let snf = smith_normal_form(&self.relations);
        let coords = snf.w.left_apply(v)?;
        let diag = snf.diagonal();
        let mut order = T::one();
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = diag.get(j).cloned().unwrap_or_else(T::zero);
            if d.is_zero() {
                return Ok(Order::Infinite);
            }
            let local = d.clone() / d.gcd(c);
            order = order.lcm(&local);
        }
        Ok(Order::Finite(order))
    }

    pub fn is_zero_element(&self, v: &[T]) -> Result<bool> {
        Ok(self.element_order(v)? == Order::Finite(T::one()))
    }
}
