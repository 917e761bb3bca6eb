//! Prime-support growth of the reflections along `e₁ + y·e₂` in `Zⁿ`.
//!
//! Sums and products of rational matrices whose denominators only involve
//! primes from a finite set `P` keep that property, so a finite generating
//! set of `OC(Zⁿ)` would bound the denominators of every coincidence
//! isometry. [`escape_witness`] exhibits, for any `P`, a reflection whose
//! reduced denominators contain a prime outside `P`; [`growth_run`] iterates
//! it to show that no finite budget closes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::decompose::reflection_matrix;
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, ExactVector};
use crate::par::{self, Execution};
use crate::primes::is_prime;
use crate::scalar::{prime_support, FieldElement};

/// A finite set of primes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrimeBudget {
    primes: BTreeSet<BigUint>,
}

impl PrimeBudget {
    pub fn empty() -> Self {
        PrimeBudget::default()
    }

    pub fn new<I: IntoIterator<Item = BigUint>>(primes: I) -> Result<Self> {
        let primes: BTreeSet<BigUint> = primes.into_iter().collect();
        if let Some(p) = primes.iter().find(|p| !is_prime(p)) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        Ok(PrimeBudget { primes })
    }

    pub fn from_u64s(primes: &[u64]) -> Result<Self> {
        Self::new(primes.iter().map(|&p| BigUint::from(p)))
    }

    pub fn primes(&self) -> &BTreeSet<BigUint> {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        self.primes.contains(p)
    }

    /// `self ∪ primes`; the caller guarantees primality.
    fn extended(&self, primes: &BTreeSet<BigUint>) -> PrimeBudget {
        PrimeBudget {
            primes: self.primes.union(primes).cloned().collect(),
        }
    }

    fn product(&self) -> BigUint {
        self.primes.iter().product()
    }
}

impl fmt::Display for PrimeBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Union of the denominator prime supports of all entries.
pub fn matrix_prime_support(m: &ExactMatrix) -> Result<BTreeSet<BigUint>> {
    let mut out = BTreeSet::new();
    for (i, row) in m.rows().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let q = e.as_rational().ok_or(Error::IrrationalEntries { row: i, col: j })?;
            out.extend(prime_support(q));
        }
    }
    Ok(out)
}

/// The reflection along `e₁ + y·e₂` in dimension `n ≥ 2`.
pub fn reflection_e1_plus_y_e2(y: &BigInt, n: usize) -> Result<ExactMatrix> {
    if n < 2 {
        return Err(Error::DimensionMismatch(format!("dimension {n} < 2")));
    }
    let mut entries = vec![FieldElement::zero(); n];
    entries[0] = FieldElement::one();
    entries[1] = FieldElement::from_bigint(y.clone());
    reflection_matrix(&ExactVector::new(entries)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeWitness {
    pub y: BigInt,
    /// Smallest prime of the reflection's support outside the budget.
    pub new_prime: BigUint,
    pub reflection: ExactMatrix,
    pub support: BTreeSet<BigUint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStrategy {
    /// Smallest `y ≥ 1`, found by scanning.
    Exhaustive(Execution),
    /// `y` is the product of the budget primes (at least 2), so `1 + y²`
    /// is coprime to all of them.
    PrimeProduct,
}

impl Default for WitnessStrategy {
    fn default() -> Self {
        WitnessStrategy::Exhaustive(Execution::default())
    }
}

const SCAN_CHUNK: u64 = 512;

fn witness_at(y: &BigInt, budget: &PrimeBudget) -> Result<Option<EscapeWitness>> {
    let reflection = reflection_e1_plus_y_e2(y, 2)?;
    let support = matrix_prime_support(&reflection)?;
    Ok(support
        .iter()
        .find(|q| !budget.contains(q))
        .cloned()
        .map(|new_prime| EscapeWitness {
            y: y.clone(),
            new_prime,
            reflection,
            support,
        }))
}

pub fn escape_witness(budget: &PrimeBudget) -> EscapeWitness {
    escape_witness_with(budget, WitnessStrategy::default())
}

pub fn escape_witness_with(budget: &PrimeBudget, strategy: WitnessStrategy) -> EscapeWitness {
    match strategy {
        WitnessStrategy::Exhaustive(exec) => {
            let mut start = 1u64;
            loop {
                let found = par::find_first(exec, start, start + SCAN_CHUNK, |y| {
                    witness_at(&BigInt::from(y), budget).expect("rational reflection")
                });
                if let Some((_, w)) = found {
                    return w;
                }
                start += SCAN_CHUNK;
            }
        }
        WitnessStrategy::PrimeProduct => {
            let mut y = BigInt::from(budget.product());
            if y < BigInt::from(2) {
                y = BigInt::from(2);
            }
            witness_at(&y, budget)
                .expect("rational reflection")
                .expect("1 + y^2 has an odd prime factor coprime to every budget prime")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRound {
    /// Budget before this round.
    pub budget: PrimeBudget,
    pub witness: EscapeWitness,
}

/// Starting from the empty budget, find a witness and add its support,
/// `rounds` times. Each budget strictly contains the previous one.
pub fn growth_run(rounds: usize, strategy: WitnessStrategy) -> Result<Vec<CensusRound>> {
    if rounds == 0 {
        return Err(Error::InvalidParams("rounds must be at least 1".into()));
    }
    let mut budget = PrimeBudget::empty();
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let witness = escape_witness_with(&budget, strategy);
        let next = budget.extended(&witness.support);
        debug_assert!(next.len() > budget.len());
        out.push(CensusRound {
            budget: std::mem::replace(&mut budget, next),
            witness,
        });
    }
    Ok(out)
}

/// `true` when `q | 1 + y²`.
pub fn divides_one_plus_y_squared(q: &BigUint, y: &BigInt) -> bool {
    let v: BigInt = BigInt::one() + y * y;
    (v % BigInt::from(q.clone())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn set(xs: &[u64]) -> BTreeSet<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn supports() {
        assert!(matrix_prime_support(&ExactMatrix::identity(3)).unwrap().is_empty());
        let m = ExactMatrix::from_rational_rows(vec![
            vec![ratio(-9, 7), ratio(-4, 7)],
            vec![ratio(4, 7), ratio(-11, 21)],
        ])
        .unwrap();
        assert_eq!(matrix_prime_support(&m).unwrap(), set(&[3, 7]));
        let irr = ExactMatrix::diagonal(&[FieldElement::one(), FieldElement::surd(ratio(1, 1), 2).unwrap()]).unwrap();
        assert!(matches!(
            matrix_prime_support(&irr),
            Err(Error::IrrationalEntries { row: 1, col: 1 })
        ));
    }

    #[test]
    fn reflections() {
        assert_eq!(
            reflection_e1_plus_y_e2(&BigInt::from(1), 2).unwrap(),
            ExactMatrix::from_int_rows(&[&[0, -1], &[-1, 0]])
        );
        let r2 = reflection_e1_plus_y_e2(&BigInt::from(2), 2).unwrap();
        assert_eq!(
            r2,
            ExactMatrix::from_rational_rows(vec![vec![ratio(3, 5), ratio(-4, 5)], vec![ratio(-4, 5), ratio(-3, 5)]])
                .unwrap()
        );
        assert_eq!(matrix_prime_support(&r2).unwrap(), set(&[5]));
        let r0 = reflection_e1_plus_y_e2(&BigInt::from(0), 3).unwrap();
        assert_eq!(r0, ExactMatrix::from_int_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(reflection_e1_plus_y_e2(&BigInt::from(1), 1).is_err());
    }

    #[test]
    fn budgets_reject_composites() {
        assert!(PrimeBudget::from_u64s(&[2, 4]).is_err());
        assert_eq!(PrimeBudget::from_u64s(&[5, 2]).unwrap().to_string(), "{2, 5}");
    }

    #[test]
    fn witnesses() {
        // y = 1 gives an integral reflection, so the first surviving prime is 5
        let w = escape_witness(&PrimeBudget::empty());
        assert_eq!(
            (w.y.clone(), w.new_prime.clone()),
            (BigInt::from(2), BigUint::from(5u32))
        );
        let w = escape_witness(&PrimeBudget::from_u64s(&[2]).unwrap());
        assert_eq!((w.y, w.new_prime), (BigInt::from(2), BigUint::from(5u32)));
        let w = escape_witness(&PrimeBudget::from_u64s(&[2, 5]).unwrap());
        assert_eq!((w.y, w.new_prime), (BigInt::from(4), BigUint::from(17u32)));
    }

    #[test]
    fn strategies_and_modes() {
        let p = PrimeBudget::from_u64s(&[2, 3, 5, 13, 17]).unwrap();
        let a = escape_witness_with(&p, WitnessStrategy::Exhaustive(Execution::Sequential));
        let b = escape_witness_with(&p, WitnessStrategy::Exhaustive(Execution::Parallel));
        assert_eq!(a, b);
        let c = escape_witness_with(&p, WitnessStrategy::PrimeProduct);
        assert_eq!(c.y, BigInt::from(2 * 3 * 5 * 13 * 17));
        assert!(!p.contains(&c.new_prime));
        assert!(c.y >= a.y);
    }

    #[test]
    fn growth() {
        assert!(growth_run(0, WitnessStrategy::default()).is_err());
        let run = growth_run(10, WitnessStrategy::default()).unwrap();
        assert_eq!(run.len(), 10);
        assert!(run[0].budget.is_empty());
        for (k, round) in run.iter().enumerate() {
            let w = &round.witness;
            assert!(divides_one_plus_y_squared(&w.new_prime, &w.y));
            assert!(!round.budget.contains(&w.new_prime));
            assert!(w.support.contains(&w.new_prime));
            if k > 0 {
                assert!(round.budget.len() > run[k - 1].budget.len());
                assert!(run[k - 1].budget.primes().is_subset(round.budget.primes()));
            }
        }
        let ys: Vec<i64> = run.iter().map(|r| i64::try_from(&r.witness.y).unwrap()).collect();
        assert_eq!(&ys[..3], &[2, 4, 5]);
    }
}
