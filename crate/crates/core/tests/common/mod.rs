//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use coincidence::decompose::reflection_matrix;
use coincidence::intlattice::IntMatrix;
use coincidence::scalar::{int, ratio};
use coincidence::{ExactMatrix, ExactVector, FieldContext, FieldElement, Lattice, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn el(d: u64, r: Rational, s: Rational) -> FieldElement {
    FieldElement::new(FieldContext::quadratic(d).unwrap(), r, s).unwrap()
}

pub fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    Rational::new(rng.random_range(-num..=num).into(), rng.random_range(1..=den).into())
}

pub fn random_element<R: Rng>(rng: &mut R, d: u64) -> FieldElement {
    el(d, random_rational(rng, 9, 6), random_rational(rng, 9, 6))
}

pub fn random_int_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.random_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// The reflection along an integer vector.
pub fn int_reflection(v: &[i64]) -> ExactMatrix {
    reflection_matrix(&ExactVector::from_ints(v)).unwrap()
}

/// Product of `k` reflections along random integer vectors of `Zⁿ`.
pub fn random_reflection_product<R: Rng>(rng: &mut R, n: usize, k: usize, bound: i64) -> ExactMatrix {
    (0..k).fold(ExactMatrix::identity(n), |acc, _| {
        acc.mat_mul(&int_reflection(&random_int_vector(rng, n, bound))).unwrap()
    })
}

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(m: &ExactMatrix) -> FieldElement {
    let n = m.n_rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = FieldElement::zero();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let term = (0..n).fold(FieldElement::one(), |acc, i| &acc * &m[(i, p[i])]);
        total = if inversions % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Integer-matrix determinant by Leibniz, for the normal-form checks.
pub fn int_det(m: &IntMatrix) -> BigInt {
    let n = m.n_rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let term: BigInt = (0..n).map(|i| &m[(i, p[i])]).product();
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

/// Entry-wise Hermite shape: lower triangular, positive diagonal, and
/// `0 ≤ h_ij < h_ii` left of the diagonal.
pub fn hnf_shape_violation(h: &IntMatrix) -> Option<String> {
    let n = h.n_rows();
    for i in 0..n {
        let hii = &h[(i, i)];
        if !hii.is_positive() {
            return Some(format!("h[{i}][{i}] = {hii} not positive"));
        }
        for j in 0..h.n_cols() {
            let hij = &h[(i, j)];
            if j > i && !hij.is_zero() {
                return Some(format!("h[{i}][{j}] = {hij} above the diagonal"));
            }
            if j < i && (hij.is_negative() || hij >= hii) {
                return Some(format!("h[{i}][{j}] = {hij} not reduced modulo {hii}"));
            }
        }
    }
    None
}

/// Gcd of every entry.
pub fn content(m: &IntMatrix) -> BigInt {
    m.to_rows().iter().flatten().fold(BigInt::zero(), |acc, e| acc.gcd(e))
}

/// Sign of `r + s√d` from a 100-digit truncation of `√d`.
pub fn sign_oracle(x: &FieldElement) -> i8 {
    let Some(d) = x.context().radicand() else {
        return sign_of(x.rational_part());
    };
    let scale = BigInt::from(10).pow(100);
    let root = (BigInt::from(d) * &scale * &scale).sqrt();
    // root/scale ≤ √d < (root + 1)/scale
    let r = x.rational_part();
    let s = x.surd_part();
    let lo = r + s * Rational::new(root.clone(), scale.clone());
    let hi = r + s * Rational::new(root + 1, scale);
    let (a, b) = (sign_of(&lo), sign_of(&hi));
    assert_eq!(a, b, "oracle precision exhausted for {x}");
    a
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rational_matrix(rows: &[&[(i64, i64)]]) -> ExactMatrix {
    ExactMatrix::from_rational_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| ratio(n, d)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn example_lattice() -> Lattice {
    Lattice::new(
        ExactMatrix::from_rows(vec![
            vec![FieldElement::one(), FieldElement::rational(ratio(2, 3))],
            vec![FieldElement::zero(), el(5, int(0), ratio(1, 3))],
        ])
        .unwrap(),
    )
    .unwrap()
}

pub fn example_rotation() -> ExactMatrix {
    let c = FieldElement::rational(ratio(-19, 21));
    let s = el(5, int(0), ratio(4, 21));
    ExactMatrix::from_rows(vec![vec![c.clone(), -&s], vec![s, c]]).unwrap()
}

/// Random nonsingular upper-triangular rational matrix.
pub fn random_rational_triangular<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        int(0)
                    } else if j == i {
                        Rational::new(rng.random_range(1i64..=6).into(), rng.random_range(1i64..=4).into())
                    } else {
                        random_rational(rng, 5, 4)
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rational_rows(rows).unwrap()
}

/// Random structure matrix with rational Gram matrix, mixing several
/// shapes: rational, a rational multiple of `√d`, and a rational matrix
/// left-multiplied by a reflection along `(1, √d, 0, …)` (which has
/// rational squared length).
pub fn random_reflective_structure<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    let b = random_rational_triangular(rng, n);
    let d = [2u64, 3, 5, 7][rng.random_range(0..4)];
    match rng.random_range(0..3) {
        0 => b,
        1 => b.scale(&el(d, int(0), int(1))),
        _ => {
            let mut v = vec![FieldElement::zero(); n];
            v[0] = FieldElement::one();
            v[1] = el(d, int(0), int(1));
            let q = reflection_matrix(&ExactVector::new(v).unwrap()).unwrap();
            q.mat_mul(&b).unwrap()
        }
    }
}

/// Random structure matrix whose last basis vector is an irrational multiple
/// of a rational direction that is not orthogonal to the first.
pub fn random_non_reflective_structure<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    loop {
        let b = random_rational_triangular(rng, n);
        let d = [2u64, 3, 5, 7][rng.random_range(0..4)];
        let mut diag = vec![FieldElement::one(); n];
        diag[n - 1] = el(d, int(rng.random_range(0..=2)), int(1));
        let a = b.mat_mul(&ExactMatrix::diagonal(&diag).unwrap()).unwrap();
        if !a.gram().is_rational() {
            return a;
        }
    }
}
