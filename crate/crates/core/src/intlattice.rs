//! Integer matrices, Hermite and Smith normal forms, and the sublattice
//! `Zⁿ ∩ M·Zⁿ` for a rational matrix `M`.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::par::{self, Execution};
use crate::scalar::{FieldElement, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 || rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch(
                "integer matrix must be nonempty and rectangular".into(),
            ));
        }
        Ok(IntMatrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("well-formed rows")
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                data.push(acc);
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Integer Bareiss elimination; every division is exact.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant needs a square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_rows(
            self.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(FieldElement::from_bigint).collect())
                .collect(),
        )
        .expect("nonempty")
    }

    /// Integer matrix with the same entries, if every entry of `m` is an integer.
    pub fn try_from_exact(m: &ExactMatrix) -> Option<IntMatrix> {
        let data = m
            .entries()
            .iter()
            .map(|e| e.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: m.n_rows(),
            cols: m.n_cols(),
            data,
        })
    }

    fn col_combine(&mut self, i: usize, j: usize, coeffs: [&BigInt; 4]) {
        // (col_i, col_j) <- (a·col_i + b·col_j, c·col_i + d·col_j)
        let [a, b, c, d] = coeffs;
        for r in 0..self.rows {
            let x = self.data[r * self.cols + i].clone();
            let y = self.data[r * self.cols + j].clone();
            self.data[r * self.cols + i] = a * &x + b * &y;
            self.data[r * self.cols + j] = c * &x + d * &y;
        }
    }

    fn col_axpy(&mut self, target: usize, k: &BigInt, source: usize) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + source] * k;
            self.data[r * self.cols + target] -= v;
        }
    }

    fn col_negate(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = &mut self.data[r * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
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

/// Column-style Hermite normal form.
///
/// For `M` of full row rank `n` with `m >= n` columns, returns `(H, U)` with
/// `H = M·U`, `U` unimodular, `H` lower-triangular (columns past `n` zero),
/// `h_ii > 0` and `0 <= h_ij < h_ii` for `j < i`.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let (n, cols) = (m.rows, m.cols);
    if cols < n {
        return Err(Error::RankDeficient);
    }
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    for i in 0..n {
        for j in i + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, i)].clone();
            let b = h[(i, j)].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let c = -(&b / &g);
            let d = &a / &g;
            h.col_combine(i, j, [&x, &y, &c, &d]);
            u.col_combine(i, j, [&x, &y, &c, &d]);
        }
        if h[(i, i)].is_zero() {
            return Err(Error::RankDeficient);
        }
        if h[(i, i)].is_negative() {
            h.col_negate(i);
            u.col_negate(i);
        }
        let pivot = h[(i, i)].clone();
        for j in 0..i {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                h.col_axpy(j, &q, i);
                u.col_axpy(j, &q, i);
            }
        }
    }
    Ok((h, u))
}

/// Invariant factors `d₁ | d₂ | … | d_k` (all positive) of a nonzero integer matrix.
#[allow(clippy::needless_range_loop)] // row and column operations index two rows at once
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut leftover = None;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                if !a[i][t].is_zero() {
                    leftover = Some((i, t));
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    leftover = Some((t, j));
                }
            }
            if let Some((i, j)) = leftover {
                // remainder is strictly smaller than the pivot
                a.swap(t, i);
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// An integer basis (as columns) of a full-rank sublattice of `Zⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeBasis {
    #[serde(with = "int_rows")]
    pub basis: IntMatrix,
    #[serde(with = "bigint_string")]
    pub index: BigInt,
}

mod int_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::format::int_rows_to_strings(&m.to_rows()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let rows = crate::format::parse_int_rows(&rows, "intersection_basis").map_err(serde::de::Error::custom)?;
        IntMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod bigint_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn rational_square(m: &ExactMatrix) -> Result<Vec<Vec<Rational>>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("square matrix required".into()));
    }
    m.to_rational_rows()
}

/// `Zⁿ ∩ M·Zⁿ` for a nonsingular rational `M`, with its index in `Zⁿ`.
///
/// The dual of the intersection is `Zⁿ + M⁻ᵀ·Zⁿ`; its Hermite basis `D`
/// yields the intersection basis `D⁻ᵀ`, which is returned in Hermite form.
pub fn intersect_with_rational_image(m: &ExactMatrix) -> Result<SublatticeBasis> {
    let n = m.n_rows();
    rational_square(m)?;
    let inv_t = m.inverse()?.transpose();
    let q = inv_t.denominator_lcm()?;
    let qe = FieldElement::from_bigint(q.clone());
    let scaled = IntMatrix::try_from_exact(&inv_t.scale(&qe)).expect("denominators cleared");
    let mut block = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: Vec<BigInt> = (0..n)
            .map(|j| if i == j { q.clone() } else { BigInt::zero() })
            .collect();
        row.extend(scaled.row(i).iter().cloned());
        block.push(row);
    }
    let (h, _) = hnf(&IntMatrix::from_rows(block)?)?;
    let dual_scaled = IntMatrix::from_rows((0..n).map(|i| h.row(i)[..n].to_vec()).collect())?;
    // C = q · (Hₙᵀ)⁻¹
    let c = dual_scaled.transpose().to_exact().inverse()?.scale(&qe);
    let c = IntMatrix::try_from_exact(&c).expect("intersection lies in Zⁿ");
    let (basis, _) = hnf(&c)?;
    let index = basis.determinant()?.abs();
    Ok(SublatticeBasis { basis, index })
}

/// Index `[Zⁿ : Zⁿ ∩ M·Zⁿ]` by enumerating residues modulo a clearing multiple `m`.
///
/// Requires `m·M` and `m·M⁻¹` integral, so `m·Zⁿ` sits inside the
/// intersection; the index is `mⁿ / #{x mod m : M⁻¹x ∈ Zⁿ}`.
pub fn residue_count_index(mat: &ExactMatrix, m: u64, exec: Execution) -> Result<BigInt> {
    let n = mat.n_rows();
    rational_square(mat)?;
    if m == 0 {
        return Err(Error::InvalidClearingMultiple(m));
    }
    let me = FieldElement::from_int(m as i64);
    let inv = mat.inverse()?;
    if IntMatrix::try_from_exact(&mat.scale(&me)).is_none() {
        return Err(Error::InvalidClearingMultiple(m));
    }
    let Some(cleared) = IntMatrix::try_from_exact(&inv.scale(&me)) else {
        return Err(Error::InvalidClearingMultiple(m));
    };
    let total = (m as u128).checked_pow(n as u32).filter(|&t| t <= u64::MAX as u128);
    let Some(total) = total else {
        return Err(Error::InvalidClearingMultiple(m));
    };
    let total = total as u64;
    let modulus = BigInt::from(m);
    let reduced: Vec<u64> = cleared
        .to_rows()
        .into_iter()
        .flatten()
        .map(|e| e.mod_floor(&modulus).to_u64().expect("below modulus"))
        .collect();
    let hits = par::count(exec, total, |code| {
        let mut x = vec![0u64; n];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = c % m;
            c /= m;
        }
        (0..n).all(|i| {
            let s: u128 = (0..n).map(|j| reduced[i * n + j] as u128 * x[j] as u128).sum();
            s.is_multiple_of(m as u128)
        })
    });
    Ok(BigInt::from(total) / BigInt::from(hits))
}
