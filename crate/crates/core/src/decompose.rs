//! Reflections, orthogonal projections, and factorization of coincidence
//! isometries into reflections along primitive lattice vectors.
//!
//! Decompositions are not unique (any reflection squared is the identity);
//! [`decompose`] commits to one deterministic output: sweep the basis
//! `b₁, …, bₙ` in order and, whenever the residual map `S` moves `bᵢ`,
//! reflect along the primitive lattice vector on the ray `S·bᵢ − bᵢ`.
//! That vector is orthogonal to every basis vector already fixed, so fixed
//! vectors stay fixed and at most `n` reflections are emitted.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coincidence::{oc_member, Membership};
use crate::error::{Error, Result};
use crate::format::MatrixDocument;
use crate::lattice::{Lattice, LatticeVector, Reflectivity};
use crate::matrix::{ExactMatrix, ExactVector};
use crate::scalar::{int, FieldElement};

/// `I − (2/(v,v))·v·vᵀ`.
pub fn reflection_matrix(v: &ExactVector) -> Result<ExactMatrix> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = v.len();
    let k = FieldElement::rational(int(2)) / v.norm_squared();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let ki = &k * &v[i];
        rows.push(
            (0..n)
                .map(|j| {
                    let off = &ki * &v[j];
                    if i == j {
                        FieldElement::one() - off
                    } else {
                        -off
                    }
                })
                .collect(),
        );
    }
    ExactMatrix::from_rows(rows)
}

/// Component of `x` orthogonal to `b`.
pub fn project_off(b: &ExactVector, x: &ExactVector) -> Result<ExactVector> {
    if b.is_zero() {
        return Err(Error::ZeroVector);
    }
    let coeff = x.dot(b)? / b.norm_squared();
    x.try_sub(&b.scale(&coeff))
}

/// Reflections whose ordered product equals `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionSequence {
    pub vectors: Vec<LatticeVector>,
    pub target: ExactMatrix,
}

/// One basis-sweep step of [`decompose_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionStep {
    /// Basis index examined in this step.
    pub basis_index: usize,
    /// Reflection emitted, if the residual moved the basis vector.
    pub vector: Option<LatticeVector>,
    pub reflection: Option<ExactMatrix>,
    /// Residual after this step; fixes `b₀..=b_basis_index`.
    pub residual: ExactMatrix,
}

impl ReflectionSequence {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn reflections(&self) -> Result<Vec<ExactMatrix>> {
        self.vectors.iter().map(|v| reflection_matrix(&v.ambient)).collect()
    }

    /// Ordered product `R_{v₁}·…·R_{v_k}` (identity when empty).
    pub fn product(&self) -> Result<ExactMatrix> {
        let n = self.target.n_rows();
        self.reflections()?
            .iter()
            .try_fold(ExactMatrix::identity(n), |acc, r| acc.mat_mul(r))
    }
}

pub fn decompose(lattice: &Lattice, r: &ExactMatrix) -> Result<ReflectionSequence> {
    decompose_traced(lattice, r).map(|(seq, _)| seq)
}

/// [`decompose`] plus the residual map after each basis step.
pub fn decompose_traced(lattice: &Lattice, r: &ExactMatrix) -> Result<(ReflectionSequence, Vec<DecompositionStep>)> {
    if let Reflectivity::NotReflective(w) = lattice.reflectivity() {
        return Err(Error::NotReflectiveLattice {
            i: w.i + 1,
            j: w.j + 1,
            k: w.k + 1,
            ratio: w.ratio.to_string(),
        });
    }
    match oc_member(lattice, r)? {
        Membership::Member(_) => {}
        Membership::NotOrthogonal => return Err(Error::NotCoincidenceIsometry("matrix is not orthogonal".into())),
        Membership::NotCoincidence { row, col, entry, .. } => {
            return Err(Error::NotCoincidenceIsometry(format!(
                "conjugate entry ({row}, {col}) = {entry} is irrational"
            )))
        }
    }
    let mut residual = r.clone();
    let mut vectors = Vec::new();
    let mut steps = Vec::with_capacity(lattice.dim());
    for i in 0..lattice.dim() {
        let b = lattice.basis_vector(i);
        let moved = residual.mat_vec(&b)?;
        let mut step = DecompositionStep {
            basis_index: i,
            vector: None,
            reflection: None,
            residual: residual.clone(),
        };
        if moved != b {
            let a = moved.try_sub(&b)?;
            let v = lattice.clear_to_lattice(&a)?;
            let reflection = reflection_matrix(&v.ambient)?;
            residual = reflection.mat_mul(&residual)?;
            step.residual = residual.clone();
            step.reflection = Some(reflection);
            step.vector = Some(v.clone());
            vectors.push(v);
        }
        steps.push(step);
    }
    debug_assert!(residual.is_identity());
    Ok((
        ReflectionSequence {
            vectors,
            target: r.clone(),
        },
        steps,
    ))
}

/// The ordered product matches the target, every vector is a primitive
/// lattice vector, there are at most `n` of them, and each reflection is
/// itself a coincidence isometry of `lattice`.
pub fn verify(seq: &ReflectionSequence, lattice: &Lattice) -> bool {
    let n = lattice.dim();
    if seq.target.n_rows() != n || seq.target.n_cols() != n || seq.len() > n {
        return false;
    }
    for v in &seq.vectors {
        if v.coords.len() != n || !v.is_primitive() {
            return false;
        }
        match lattice.ambient(&v.coords) {
            Ok(amb) if amb == v.ambient => {}
            _ => return false,
        }
        let Ok(r) = reflection_matrix(&v.ambient) else {
            return false;
        };
        if !matches!(oc_member(lattice, &r), Ok(Membership::Member(_))) {
            return false;
        }
    }
    matches!(seq.product(), Ok(p) if p == seq.target)
}

/// Serialized reflection sequence: lattice coordinates plus the target.
/// Ambient vectors are re-derived from the lattice when loading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub vectors: Vec<Vec<String>>,
    pub target: MatrixDocument,
}

impl From<&ReflectionSequence> for SequenceDocument {
    fn from(seq: &ReflectionSequence) -> Self {
        SequenceDocument {
            vectors: seq
                .vectors
                .iter()
                .map(|v| v.coords.iter().map(ToString::to_string).collect())
                .collect(),
            target: MatrixDocument::from_matrix(&seq.target),
        }
    }
}

impl SequenceDocument {
    pub fn to_sequence(&self, lattice: &Lattice) -> Result<ReflectionSequence> {
        let coords = crate::format::parse_int_rows(&self.vectors, "vectors")?;
        let vectors = coords
            .into_iter()
            .map(|c: Vec<BigInt>| {
                let ambient = lattice.ambient(&c)?;
                Ok(LatticeVector { coords: c, ambient })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReflectionSequence {
            vectors,
            target: self.target.to_matrix()?,
        })
    }
}
