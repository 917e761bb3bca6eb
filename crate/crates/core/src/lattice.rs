//! Lattices given by a structure matrix, and the reflectivity criterion on
//! basis inner-product ratios.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, ExactVector};
use crate::scalar::{FieldContext, FieldElement};

/// A full-rank lattice in `Rⁿ`; the columns of the structure matrix are its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    structure: ExactMatrix,
    inverse: ExactMatrix,
}

/// Coordinates `c = A⁻¹x` of an ambient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    pub coords: ExactVector,
    pub rational: bool,
    pub integral: bool,
}

/// A lattice vector with integer coordinates and its ambient image `A·c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<BigInt>,
    pub ambient: ExactVector,
}

/// A basis ratio `(a_j, a_i) / (a_k, a_k)` (indices zero-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub ratio: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reflectivity {
    Reflective,
    /// Some basis ratio is irrational; reflecting along `a_i` then fails to
    /// map the lattice into a commensurate one.
    NotReflective(RatioWitness),
}

impl Reflectivity {
    pub fn is_reflective(&self) -> bool {
        matches!(self, Reflectivity::Reflective)
    }
}

impl Lattice {
    pub fn new(structure: ExactMatrix) -> Result<Self> {
        if !structure.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "structure matrix must be square, got {}x{}",
                structure.n_rows(),
                structure.n_cols()
            )));
        }
        let inverse = structure.inverse()?;
        Ok(Lattice { structure, inverse })
    }

    /// `Zⁿ`.
    pub fn standard(n: usize) -> Self {
        Self::new(ExactMatrix::identity(n)).expect("identity is invertible")
    }

    pub fn dim(&self) -> usize {
        self.structure.n_rows()
    }

    pub fn context(&self) -> FieldContext {
        self.structure.context()
    }

    pub fn structure(&self) -> &ExactMatrix {
        &self.structure
    }

    pub fn structure_inverse(&self) -> &ExactMatrix {
        &self.inverse
    }

    pub fn basis_vector(&self, i: usize) -> ExactVector {
        self.structure.column(i)
    }

    pub fn gram(&self) -> ExactMatrix {
        self.structure.gram()
    }

    pub fn lattice_coordinates(&self, x: &ExactVector) -> Result<Coordinates> {
        let coords = self.inverse.mat_vec(x)?;
        let rational = coords.is_rational();
        let integral = rational && coords.iter().all(|e| e.as_rational().is_some_and(|q| q.is_integer()));
        Ok(Coordinates {
            coords,
            rational,
            integral,
        })
    }

    /// Ambient vector `A·c` for integer coordinates.
    pub fn ambient(&self, coords: &[BigInt]) -> Result<ExactVector> {
        self.structure.mat_vec(&ExactVector::from_bigints(coords))
    }

    pub fn contains(&self, x: &ExactVector) -> Result<bool> {
        Ok(self.lattice_coordinates(x)?.integral)
    }

    /// The primitive lattice vector on the ray through `x`.
    pub fn clear_to_lattice(&self, x: &ExactVector) -> Result<LatticeVector> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        let c = self.lattice_coordinates(x)?;
        if !c.rational {
            return Err(Error::IrrationalCoordinates);
        }
        let rats: Vec<_> = c.coords.iter().map(|e| e.rational_part().clone()).collect();
        let t = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<BigInt> = rats.iter().map(|q| (q * &t).to_integer()).collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let coords: Vec<BigInt> = scaled.into_iter().map(|v| v / &g).collect();
        let ambient = self.ambient(&coords)?;
        Ok(LatticeVector { coords, ambient })
    }

    /// Checks every ratio `(a_j, a_i)/(a_k, a_k)`; a rational Gram matrix
    /// short-circuits to reflective.
    pub fn reflectivity(&self) -> Reflectivity {
        let g = self.gram();
        if g.is_rational() {
            return Reflectivity::Reflective;
        }
        let n = self.dim();
        for k in 0..n {
            let inv = g[(k, k)].inverse().expect("basis vectors are nonzero");
            for i in 0..n {
                for j in 0..n {
                    let ratio = &g[(j, i)] * &inv;
                    if !ratio.is_rational() {
                        return Reflectivity::NotReflective(RatioWitness { i, j, k, ratio });
                    }
                }
            }
        }
        Reflectivity::Reflective
    }

    pub fn is_reflective(&self) -> bool {
        self.reflectivity().is_reflective()
    }

    /// Whether the reflection along `x` is a coincidence isometry.
    ///
    /// In lattice coordinates the reflection is `I − 2·c·uᵀ` with `c = A⁻¹x`
    /// and `u_j = (a_j, x)/(x, x)`, so the test is rationality of every
    /// product `c_i·u_j`. For `x` with rational coordinates (any lattice
    /// vector) this reduces to rationality of each `(a_j, x)/(x, x)`.
    pub fn vector_defines_coincidence_reflection(&self, x: &ExactVector) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        let xx_inv = x.norm_squared().inverse()?;
        let ratios = (0..self.dim())
            .map(|j| Ok(&self.basis_vector(j).dot(x)? * &xx_inv))
            .collect::<Result<Vec<_>>>()?;
        let c = self.lattice_coordinates(x)?;
        if c.rational {
            return Ok(ratios.iter().all(FieldElement::is_rational));
        }
        Ok(c.coords.iter().all(|ci| ratios.iter().all(|u| (ci * u).is_rational())))
    }
}

impl LatticeVector {
    /// Coordinates are nonzero with gcd 1.
    pub fn is_primitive(&self) -> bool {
        self.coords.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v)).is_one()
    }
}
