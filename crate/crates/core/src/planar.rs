//! Coincidence isometry groups of planar lattices with structure matrix
//! `[[a, 1], [0, b]]`, `a, b > 0`.
//!
//! The group depends only on whether `a`, `b²` and `a/(1 + b²)` are
//! rational, so parameters are taken as `(a, b²)`; `b` itself is needed
//! only to build a concrete lattice for [`spot_check`].

use std::fmt;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coincidence::oc_member;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{ExactMatrix, ExactVector};
use crate::par::{self, Execution};
use crate::primes::square_free_part;
use crate::scalar::{int, FieldContext, FieldElement, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarFamilyParams {
    a: FieldElement,
    b_squared: FieldElement,
}

impl PlanarFamilyParams {
    pub fn new(a: FieldElement, b_squared: FieldElement) -> Result<Self> {
        a.context().join(b_squared.context())?;
        if !a.is_positive() {
            return Err(Error::InvalidParams(format!("a = {a} must be positive")));
        }
        if !b_squared.is_positive() {
            return Err(Error::InvalidParams(format!("b^2 = {b_squared} must be positive")));
        }
        Ok(PlanarFamilyParams { a, b_squared })
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b_squared(&self) -> &FieldElement {
        &self.b_squared
    }

    /// `a / (1 + b²)`.
    pub fn shear_ratio(&self) -> FieldElement {
        &self.a / (FieldElement::one() + &self.b_squared)
    }

    /// `b = sqrt(b²)`, when it lies in the parameters' field. A rational
    /// non-square `b²` is lifted into the matching quadratic field.
    pub fn b(&self) -> Result<FieldElement> {
        let unrepresentable = || Error::UnrepresentableB(self.b_squared.to_string());
        if let Some(b) = self.b_squared.sqrt() {
            return Ok(b);
        }
        let q = self.b_squared.as_rational().ok_or_else(unrepresentable)?;
        let k = q.numer().magnitude() * q.denom().magnitude();
        let d = square_free_part(&k).to_u64().ok_or_else(unrepresentable)?;
        let ctx = FieldContext::quadratic(d)?;
        let ctx = ctx.join(self.a.context()).map_err(|_| unrepresentable())?;
        self.b_squared.in_context(ctx)?.sqrt().ok_or_else(unrepresentable)
    }

    /// The concrete lattice, when `b` is representable.
    pub fn lattice(&self) -> Result<Lattice> {
        let b = self.b()?;
        let a = self.a.in_context(b.context())?;
        Lattice::new(ExactMatrix::from_rows(vec![
            vec![a, FieldElement::one()],
            vec![FieldElement::zero(), b],
        ])?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PlanarCase {
    /// `a, b² ∈ Q`: generated by reflections along nonzero lattice vectors.
    ReflectionGenerated,
    /// `a ∈ Q`, `b² ∉ Q`: `{±I, ±R_{a₁}}`.
    FixA1,
    /// `a ∉ Q`, `a/(1+b²) ∈ Q`: `{±I, ±R_{a₂}}`.
    FixA2,
    /// `a, a/(1+b²) ∉ Q`: `{±I}`.
    CenterOnly,
}

impl PlanarCase {
    pub fn number(self) -> u8 {
        match self {
            PlanarCase::ReflectionGenerated => 1,
            PlanarCase::FixA1 => 2,
            PlanarCase::FixA2 => 3,
            PlanarCase::CenterOnly => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlanarCase::ReflectionGenerated => "ReflectionGenerated",
            PlanarCase::FixA1 => "Z2xZ2_FixA1",
            PlanarCase::FixA2 => "Z2xZ2_FixA2",
            PlanarCase::CenterOnly => "CenterOnly",
        }
    }

    pub fn group_description(self) -> &'static str {
        match self {
            PlanarCase::ReflectionGenerated => "OC(L) is generated by the reflections along nonzero vectors of L",
            PlanarCase::FixA1 => "OC(L) = {±I, ±R_a1} ≅ Z2 x Z2",
            PlanarCase::FixA2 => "OC(L) = {±I, ±R_a2} ≅ Z2 x Z2",
            PlanarCase::CenterOnly => "OC(L) = {±I} ≅ Z2",
        }
    }
}

impl fmt::Display for PlanarCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarClassification {
    pub case: PlanarCase,
    /// Non-central generators in lattice coordinates (rational involutions).
    pub generators: Vec<ExactMatrix>,
}

fn rational_matrix(rows: [[Rational; 2]; 2]) -> ExactMatrix {
    ExactMatrix::from_rational_rows(rows.into_iter().map(Vec::from).collect()).expect("2x2")
}

pub fn classify(p: &PlanarFamilyParams) -> PlanarClassification {
    let a_rational = p.a.is_rational();
    let b2_rational = p.b_squared.is_rational();
    let case = match (a_rational, b2_rational) {
        (true, true) => PlanarCase::ReflectionGenerated,
        (true, false) => PlanarCase::FixA1,
        (false, _) if p.shear_ratio().is_rational() => PlanarCase::FixA2,
        (false, _) => PlanarCase::CenterOnly,
    };
    let generators = match case {
        PlanarCase::FixA1 => {
            // R_{a₁} in lattice coordinates
            let a = p.a.as_rational().expect("rational a");
            vec![rational_matrix([[int(-1), -int(2) / a], [int(0), int(1)]])]
        }
        PlanarCase::FixA2 => {
            let s = p.shear_ratio();
            let s = s.as_rational().expect("rational shear ratio");
            vec![rational_matrix([[int(1), int(0)], [-int(2) * s, int(-1)]])]
        }
        _ => Vec::new(),
    };
    PlanarClassification { case, generators }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheckReport {
    pub case: PlanarCase,
    pub vectors_sampled: usize,
    pub coincidence_reflections: usize,
    pub isometries_sampled: usize,
    pub isometries_accepted: usize,
    pub violations: Vec<Violation>,
}

/// A sample that disagrees with the classified group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The reflection along the lattice vector with these coordinates is
    /// (`found = true`) or is not a coincidence isometry, contrary to the case.
    Reflection { coords: [i64; 2], found: bool },
    /// An orthogonal map outside the classified group passed `oc_member`.
    Isometry { matrix: ExactMatrix },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reflection { coords, found: true } => {
                write!(
                    f,
                    "lattice vector {coords:?} defines a coincidence reflection outside the classified group"
                )
            }
            Violation::Reflection { coords, found: false } => {
                write!(
                    f,
                    "lattice vector {coords:?} does not define a coincidence reflection, contrary to the case"
                )
            }
            Violation::Isometry { matrix } => write!(f, "{matrix} passed oc_member outside the classified group"),
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl SpotCheckReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_lattice_vector(rng: &mut ChaCha8Rng) -> [i64; 2] {
    loop {
        let v = [rng.random_range(-12..=12), rng.random_range(-12..=12)];
        if v != [0, 0] {
            return v;
        }
    }
}

/// A rotation (or, with `flip`, a reflection) with rational entries
/// `((1 − t²)/(1 + t²), 2t/(1 + t²))`.
pub fn rational_orthogonal(t: &Rational, flip: bool) -> ExactMatrix {
    let one = int(1);
    let den = &one + t * t;
    let c = (&one - t * t) / &den;
    let s = int(2) * t / &den;
    if flip {
        rational_matrix([[c.clone(), s.clone()], [s, -c]])
    } else {
        rational_matrix([[c.clone(), -s.clone()], [s, c]])
    }
}

fn allowed_in_group(case: PlanarCase, m: &ExactMatrix, lattice: &Lattice) -> bool {
    let id = ExactMatrix::identity(2);
    let neg = id.scale(&FieldElement::from_int(-1));
    if *m == id || *m == neg {
        return true;
    }
    let axis = match case {
        PlanarCase::ReflectionGenerated => return true,
        PlanarCase::CenterOnly => return false,
        PlanarCase::FixA1 => lattice.basis_vector(0),
        PlanarCase::FixA2 => lattice.basis_vector(1),
    };
    let r = crate::decompose::reflection_matrix(&axis).expect("nonzero basis vector");
    *m == r || *m == r.scale(&FieldElement::from_int(-1))
}

fn reflection_allowed(case: PlanarCase, lattice: &Lattice, v: &ExactVector) -> bool {
    let axis = match case {
        PlanarCase::ReflectionGenerated => return true,
        PlanarCase::CenterOnly => return false,
        PlanarCase::FixA1 => lattice.basis_vector(0),
        PlanarCase::FixA2 => lattice.basis_vector(1),
    };
    let dot = axis.dot(v).expect("same dimension");
    let cross = &axis[0] * &v[1] - &axis[1] * &v[0];
    dot.is_zero() || cross.is_zero()
}

/// Sample random lattice vectors and random rational-parameter orthogonal
/// maps, checking each against the classified group.
///
/// Trial `i` draws from its own generator seeded with `seed + i`, so the
/// report is identical in sequential and parallel mode.
pub fn spot_check(p: &PlanarFamilyParams, trials: usize, seed: u64, exec: Execution) -> Result<SpotCheckReport> {
    let lattice = p.lattice()?;
    let case = classify(p).case;

    struct Trial {
        reflection: bool,
        accepted: usize,
        violations: Vec<Violation>,
    }

    let run = |i: usize| -> Result<Trial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let mut violations = Vec::new();
        let coords = random_lattice_vector(&mut rng);
        let x = lattice.ambient(&coords.map(num_bigint::BigInt::from))?;
        let reflection = lattice.vector_defines_coincidence_reflection(&x)?;
        let expected = reflection_allowed(case, &lattice, &x);
        if reflection != expected {
            violations.push(Violation::Reflection {
                coords,
                found: reflection,
            });
        }
        let t = Rational::new(rng.random_range(-30i64..=30).into(), rng.random_range(1i64..=30).into());
        let mut accepted = 0;
        for flip in [false, true] {
            let m = rational_orthogonal(&t, flip);
            if oc_member(&lattice, &m)?.is_member() {
                accepted += 1;
                if !allowed_in_group(case, &m, &lattice) {
                    violations.push(Violation::Isometry { matrix: m });
                }
            }
        }
        Ok(Trial {
            reflection,
            accepted,
            violations,
        })
    };

    let results = par::map(exec, trials, run);
    let mut report = SpotCheckReport {
        case,
        vectors_sampled: trials,
        coincidence_reflections: 0,
        isometries_sampled: 2 * trials,
        isometries_accepted: 0,
        violations: Vec::new(),
    };
    for r in results {
        let r = r?;
        report.coincidence_reflections += usize::from(r.reflection);
        report.isometries_accepted += r.accepted;
        report.violations.extend(r.violations);
    }
    Ok(report)
}
