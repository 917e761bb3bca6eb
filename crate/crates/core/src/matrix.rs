//! Dense exact vectors and matrices over a [`FieldContext`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{FieldContext, FieldElement, Rational};

#[derive(Debug, Clone)]
pub struct ExactVector {
    ctx: FieldContext,
    entries: Vec<FieldElement>,
}

impl ExactVector {
    pub fn new(entries: Vec<FieldElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("vector must have at least one entry".into()));
        }
        let mut ctx = FieldContext::RATIONAL;
        for e in &entries {
            ctx = ctx.join(e.context())?;
        }
        let entries = entries.into_iter().map(|e| e.in_context(ctx)).collect::<Result<_>>()?;
        Ok(ExactVector { ctx, entries })
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| FieldElement::from_int(x)).collect()).expect("nonempty")
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        Self::new(xs.iter().cloned().map(FieldElement::from_bigint).collect()).expect("nonempty")
    }

    pub fn zeros(n: usize) -> Self {
        ExactVector {
            ctx: FieldContext::RATIONAL,
            entries: vec![FieldElement::zero(); n],
        }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[i] = FieldElement::one();
        v
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FieldElement> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(FieldElement::is_rational)
    }

    pub fn dot(&self, other: &ExactVector) -> Result<FieldElement> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "dot product of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        self.ctx.join(other.ctx)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(FieldElement::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn norm_squared(&self) -> FieldElement {
        self.dot(self).expect("same vector")
    }

    pub fn scale(&self, k: &FieldElement) -> ExactVector {
        ExactVector::new(self.entries.iter().map(|e| e * k).collect()).expect("compatible")
    }

    pub fn try_add(&self, other: &ExactVector) -> Result<ExactVector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ExactVector) -> Result<ExactVector> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ExactVector,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Result<ExactVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        self.ctx.join(other.ctx)?;
        ExactVector::new(self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect())
    }
}

impl PartialEq for ExactVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for ExactVector {}

impl Hash for ExactVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl Index<usize> for ExactVector {
    type Output = FieldElement;
    fn index(&self, i: usize) -> &FieldElement {
        &self.entries[i]
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Row-major dense matrix of field elements sharing one context.
///
/// Equality is by value: a rational matrix equals the same matrix viewed
/// inside a quadratic field.
#[derive(Debug, Clone)]
pub struct ExactMatrix {
    ctx: FieldContext,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::DimensionMismatch("matrix must be nonempty".into()));
        }
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut ctx = FieldContext::RATIONAL;
        for e in rows.iter().flatten() {
            ctx = ctx.join(e.context())?;
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|e| e.in_context(ctx))
            .collect::<Result<_>>()?;
        Ok(ExactMatrix {
            ctx,
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect())
                .collect(),
        )
        .expect("well-formed integer rows")
    }

    pub fn from_rational_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(FieldElement::rational).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[ExactVector]) -> Result<Self> {
        let n = cols.first().map_or(0, ExactVector::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Self::from_rows((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ctx: FieldContext::RATIONAL,
            rows,
            cols,
            data: vec![FieldElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::one();
        }
        m
    }

    pub fn diagonal(entries: &[FieldElement]) -> Result<Self> {
        let n = entries.len();
        Self::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                entries[i].clone()
                            } else {
                                FieldElement::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks(self.cols)
    }

    pub fn column(&self, j: usize) -> ExactVector {
        ExactVector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect()).expect("nonempty")
    }

    pub fn columns(&self) -> Vec<ExactVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        ExactMatrix {
            ctx: self.ctx,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mat_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.ctx.join(other.ctx)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero();
                for k in 0..self.cols {
                    acc = acc + &self[(i, k)] * &other[(k, j)];
                }
                data.push(acc);
            }
        }
        let mut out = ExactMatrix {
            ctx,
            rows: self.rows,
            cols: other.cols,
            data,
        };
        out.rehome();
        Ok(out)
    }

    pub fn mat_vec(&self, v: &ExactVector) -> Result<ExactVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        self.ctx.join(v.context())?;
        ExactVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .fold(FieldElement::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn try_add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ExactMatrix,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Result<ExactMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.ctx.join(other.ctx)?;
        let mut out = ExactMatrix {
            ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        };
        out.rehome();
        Ok(out)
    }

    pub fn scale(&self, k: &FieldElement) -> ExactMatrix {
        let ctx = self.ctx.join(k.context()).expect("compatible scalar");
        let mut out = ExactMatrix {
            ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * k).collect(),
        };
        out.rehome();
        out
    }

    fn rehome(&mut self) {
        for e in &mut self.data {
            if e.context() != self.ctx {
                *e = e.in_context(self.ctx).expect("joined context");
            }
        }
    }

    fn require_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant: cofactor expansion up to 3x3, Bareiss elimination beyond.
    pub fn determinant(&self) -> Result<FieldElement> {
        let n = self.require_square("determinant")?;
        let a = |i: usize, j: usize| &self[(i, j)];
        Ok(match n {
            1 => a(0, 0).clone(),
            2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            3 => {
                a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                    + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
            }
            _ => self.bareiss_determinant(),
        })
    }

    fn bareiss_determinant(&self) -> FieldElement {
        let n = self.rows;
        let mut m: Vec<Vec<FieldElement>> = self.rows().map(<[_]>::to_vec).collect();
        let mut prev = FieldElement::one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return FieldElement::zero();
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = FieldElement::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].in_context(self.ctx).expect("same context");
        if negate {
            -det
        } else {
            det
        }
    }

    /// Exact inverse: adjugate up to 3x3, fraction-free Gauss-Jordan beyond.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        let n = self.require_square("inverse")?;
        if n <= 3 {
            let det = self.determinant()?;
            if det.is_zero() {
                return Err(Error::SingularMatrix);
            }
            let inv_det = det.inverse()?;
            let adj = self.adjugate_small();
            return Ok(adj.scale(&inv_det));
        }
        self.gauss_jordan_inverse()
    }

    fn adjugate_small(&self) -> ExactMatrix {
        let n = self.rows;
        let a = |i: usize, j: usize| &self[(i, j)];
        let rows: Vec<Vec<FieldElement>> = match n {
            1 => vec![vec![FieldElement::one()]],
            2 => vec![vec![a(1, 1).clone(), -a(0, 1)], vec![-a(1, 0), a(0, 0).clone()]],
            _ => {
                let minor = |r0: usize, r1: usize, c0: usize, c1: usize| a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
                // adj[i][j] = (-1)^{i+j} det(minor without row j, col i)
                let others = |k: usize| match k {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                (0..3)
                    .map(|i| {
                        (0..3)
                            .map(|j| {
                                let (r0, r1) = others(j);
                                let (c0, c1) = others(i);
                                let m = minor(r0, r1, c0, c1);
                                if (i + j) % 2 == 0 {
                                    m
                                } else {
                                    -m
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        let mut out = ExactMatrix::from_rows(rows).expect("square");
        if out.ctx != self.ctx {
            out.ctx = self.ctx;
            out.rehome();
        }
        out
    }

    fn gauss_jordan_inverse(&self) -> Result<ExactMatrix> {
        let n = self.rows;
        let mut m: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        FieldElement::one()
                    } else {
                        FieldElement::zero()
                    }
                }));
                row
            })
            .collect();
        let mut prev = FieldElement::one();
        for k in 0..n {
            let p = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(Error::SingularMatrix)?;
            m.swap(p, k);
            for i in (0..n).filter(|&i| i != k) {
                for j in (0..2 * n).filter(|&j| j != k) {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = FieldElement::zero();
            }
            prev = m[k][k].clone();
        }
        // Every left-block diagonal entry ends up equal to the last pivot.
        let rows = m
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let inv = row[i].inverse().expect("nonzero pivot");
                row[n..].iter().map(|e| e * &inv).collect()
            })
            .collect();
        let mut out = ExactMatrix::from_rows(rows)?;
        if out.ctx != self.ctx {
            out.ctx = self.ctx;
            out.rehome();
        }
        Ok(out)
    }

    /// `XᵀX`: inner products of the columns.
    pub fn gram(&self) -> ExactMatrix {
        self.transpose().mat_mul(self).expect("conformable")
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.gram().is_identity()
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(FieldElement::is_rational)
    }

    /// Position of the first entry with a nonzero surd part.
    pub fn first_irrational(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|e| !e.is_rational())
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn to_rational_rows(&self) -> Result<Vec<Vec<Rational>>> {
        if let Some((row, col)) = self.first_irrational() {
            return Err(Error::IrrationalEntries { row, col });
        }
        Ok(self
            .rows()
            .map(|r| r.iter().map(|e| e.rational_part().clone()).collect())
            .collect())
    }

    /// Least common multiple of all denominators; requires a rational matrix.
    pub fn denominator_lcm(&self) -> Result<BigInt> {
        use num_integer::Integer;
        let rows = self.to_rational_rows()?;
        Ok(rows.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom())))
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for ExactMatrix {}

impl Hash for ExactMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
