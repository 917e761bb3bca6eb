//! Commensurability, coincidence-symmetry and coincidence-isometry membership,
//! and the coincidence index `Σ = [L : L ∩ TL]`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::MatrixDocument;
use crate::intlattice::{self, SublatticeBasis};
use crate::lattice::Lattice;
use crate::matrix::ExactMatrix;
use crate::scalar::FieldElement;

/// Proof that `T` maps `L` to a commensurate lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceCertificate {
    /// `A⁻¹TA`, always rational.
    pub conjugate: ExactMatrix,
    pub sigma: BigInt,
    /// Basis of `L ∩ TL` in lattice coordinates.
    pub intersection_basis: SublatticeBasis,
    pub is_isometry: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(CoincidenceCertificate),
    /// `A⁻¹TA` has an irrational entry.
    NotCoincidence {
        row: usize,
        col: usize,
        entry: FieldElement,
        conjugate: ExactMatrix,
    },
    NotOrthogonal,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn certificate(&self) -> Option<&CoincidenceCertificate> {
        match self {
            Membership::Member(c) => Some(c),
            _ => None,
        }
    }
}

fn check_pair(a1: &ExactMatrix, a2: &ExactMatrix) -> Result<()> {
    if !a1.is_square() || !a2.is_square() || a1.n_rows() != a2.n_rows() {
        return Err(Error::DimensionMismatch(format!(
            "structure matrices {}x{} and {}x{}",
            a1.n_rows(),
            a1.n_cols(),
            a2.n_rows(),
            a2.n_cols()
        )));
    }
    a1.context().join(a2.context())?;
    Ok(())
}

/// Lattices with structure matrices `A1`, `A2` are commensurate iff `A2⁻¹A1` is rational.
pub fn commensurate(a1: &ExactMatrix, a2: &ExactMatrix) -> Result<bool> {
    check_pair(a1, a2)?;
    if a1.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(a2.inverse()?.mat_mul(a1)?.is_rational())
}

/// Is `T` in the coincidence symmetry group `A·GLₙ(Q)·A⁻¹`?
pub fn csg_member(lattice: &Lattice, t: &ExactMatrix) -> Result<Membership> {
    check_pair(lattice.structure(), t)?;
    if t.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let conjugate = lattice.structure_inverse().mat_mul(t)?.mat_mul(lattice.structure())?;
    if let Some((row, col)) = conjugate.first_irrational() {
        let entry = conjugate[(row, col)].clone();
        return Ok(Membership::NotCoincidence {
            row,
            col,
            entry,
            conjugate,
        });
    }
    let intersection_basis = intlattice::intersect_with_rational_image(&conjugate)?;
    Ok(Membership::Member(CoincidenceCertificate {
        sigma: intersection_basis.index.clone(),
        intersection_basis,
        is_isometry: t.is_orthogonal(),
        conjugate: rationalize(conjugate),
    }))
}

/// Is `R` in the coincidence isometry group `OC(L)`? Orthogonality is
/// checked in canonical coordinates.
pub fn oc_member(lattice: &Lattice, r: &ExactMatrix) -> Result<Membership> {
    if !r.is_orthogonal() {
        return Ok(Membership::NotOrthogonal);
    }
    csg_member(lattice, r)
}

fn rationalize(m: ExactMatrix) -> ExactMatrix {
    let rows = m.to_rational_rows().expect("checked rational");
    ExactMatrix::from_rational_rows(rows).expect("nonempty")
}

/// Serialized form of a [`CoincidenceCertificate`]; all numbers are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    #[serde(rename = "M")]
    pub conjugate: Vec<Vec<String>>,
    pub sigma: String,
    pub intersection_basis: Vec<Vec<String>>,
    pub is_isometry: bool,
}

impl From<&CoincidenceCertificate> for CertificateDocument {
    fn from(c: &CoincidenceCertificate) -> Self {
        CertificateDocument {
            conjugate: MatrixDocument::from_matrix(&c.conjugate).rows,
            sigma: c.sigma.to_string(),
            intersection_basis: crate::format::int_rows_to_strings(&c.intersection_basis.basis.to_rows()),
            is_isometry: c.is_isometry,
        }
    }
}

impl CertificateDocument {
    /// Rebuild the certificate, re-deriving the index from the basis.
    pub fn to_certificate(&self) -> Result<CoincidenceCertificate> {
        let conjugate = MatrixDocument::new(0, self.conjugate.clone()).to_matrix()?;
        let basis = intlattice::IntMatrix::from_rows(crate::format::parse_int_rows(
            &self.intersection_basis,
            "intersection_basis",
        )?)?;
        let sigma: BigInt = self
            .sigma
            .parse()
            .map_err(|_| Error::parse("sigma", 0, "not an integer"))?;
        let index = num_traits::Signed::abs(&basis.determinant()?);
        if index != sigma {
            return Err(Error::Document(format!(
                "sigma {sigma} disagrees with basis index {index}"
            )));
        }
        Ok(CoincidenceCertificate {
            conjugate,
            sigma,
            intersection_basis: SublatticeBasis { basis, index },
            is_isometry: self.is_isometry,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, FieldContext};

    fn el5(r: (i64, i64), s: (i64, i64)) -> FieldElement {
        FieldElement::new(FieldContext::quadratic(5).unwrap(), ratio(r.0, r.1), ratio(s.0, s.1)).unwrap()
    }

    fn rhombic() -> ExactMatrix {
        ExactMatrix::from_rows(vec![
            vec![FieldElement::one(), FieldElement::rational(ratio(2, 3))],
            vec![FieldElement::zero(), el5((0, 1), (1, 3))],
        ])
        .unwrap()
    }

    fn example_rotation() -> ExactMatrix {
        ExactMatrix::from_rows(vec![
            vec![el5((-19, 21), (0, 1)), el5((0, 1), (-4, 21))],
            vec![el5((0, 1), (4, 21)), el5((-19, 21), (0, 1))],
        ])
        .unwrap()
    }

    fn rat_rows(rows: &[&[(i64, i64)]]) -> ExactMatrix {
        ExactMatrix::from_rational_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| ratio(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn commensurability() {
        let a = rhombic();
        assert!(commensurate(&a, &a).unwrap());
        let ra = example_rotation().mat_mul(&a).unwrap();
        assert!(commensurate(&a, &ra).unwrap());
        let d = ExactMatrix::diagonal(&[FieldElement::surd(int(1), 5).unwrap(), FieldElement::one()]).unwrap();
        assert!(!commensurate(&ExactMatrix::identity(2), &d).unwrap());
        let sing = ExactMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(commensurate(&sing, &a), Err(Error::SingularMatrix)));
        let other = ExactMatrix::diagonal(&[FieldElement::surd(int(1), 2).unwrap(), FieldElement::one()]).unwrap();
        assert!(matches!(commensurate(&a, &other), Err(Error::FieldMismatch(5, 2))));
    }

    #[test]
    fn example_rotation_certificate() {
        let l = Lattice::new(rhombic()).unwrap();
        let m = oc_member(&l, &example_rotation()).unwrap();
        let cert = m.certificate().expect("member");
        assert_eq!(cert.conjugate, rat_rows(&[&[(-9, 7), (-4, 7)], &[(4, 7), (-11, 21)]]));
        assert_eq!(cert.sigma, BigInt::from(21));
        assert!(cert.is_isometry);
    }

    #[test]
    fn identity_and_rejections() {
        let z2 = Lattice::standard(2);
        let cert = csg_member(&z2, &ExactMatrix::identity(2)).unwrap();
        assert_eq!(cert.certificate().unwrap().sigma, BigInt::from(1));

        let h = FieldElement::surd(ratio(1, 2), 2).unwrap();
        let rot45 = ExactMatrix::from_rows(vec![vec![h.clone(), -&h], vec![h.clone(), h]]).unwrap();
        assert!(rot45.is_orthogonal());
        match csg_member(&z2, &rot45).unwrap() {
            Membership::NotCoincidence { row: 0, col: 0, .. } => {}
            other => panic!("{other:?}"),
        }

        let rot = rat_rows(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]]);
        assert_eq!(
            oc_member(&z2, &rot).unwrap().certificate().unwrap().sigma,
            BigInt::from(5)
        );
        let stretch = ExactMatrix::from_int_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(oc_member(&z2, &stretch).unwrap(), Membership::NotOrthogonal);
        // still a coincidence symmetry, just not an isometry
        let c = csg_member(&z2, &stretch).unwrap();
        assert!(!c.certificate().unwrap().is_isometry);
        assert_eq!(c.certificate().unwrap().sigma, BigInt::from(2));
    }

    #[test]
    fn certificate_document_round_trip() {
        let l = Lattice::new(rhombic()).unwrap();
        let cert = oc_member(&l, &example_rotation())
            .unwrap()
            .certificate()
            .unwrap()
            .clone();
        let doc = CertificateDocument::from(&cert);
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.starts_with(r#"{"M":[["-9/7","-4/7"],["4/7","-11/21"]],"sigma":"21","#));
        let back: CertificateDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_certificate().unwrap(), cert);
    }
}
