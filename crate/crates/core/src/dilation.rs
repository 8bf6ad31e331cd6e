//! Families at pairwise-distinct dilation factors `q·√m`.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::disjointness::{
    build_family, verify_family, CopyFamily, FamilyBudget, FamilyMode, VerificationReport,
    Violation,
};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::scalar::{is_squarefree, rational_serde, QuadScalar, Rational};

/// The positive real `q·√m` with `m` squarefree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DilationFactor {
    #[serde(with = "rational_serde")]
    q: Rational,
    m: u64,
}

impl DilationFactor {
    pub fn new(q: Rational, m: u64) -> Result<Self> {
        if !is_squarefree(m) {
            return Err(Error::NotSquarefree(m));
        }
        if q <= Rational::zero() {
            return Err(Error::invalid(format!("dilation factor coefficient {q} must be positive")));
        }
        Ok(DilationFactor { q, m })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Positive scalars of the form `q` or `q·√m`; anything with both a
    /// rational and a surd part has no such form.
    pub fn from_scalar(s: &QuadScalar) -> Result<Self> {
        if s.is_rational() {
            Self::new(s.rational_part().clone(), 1)
        } else if s.rational_part().is_zero() {
            Self::new(s.irrational_coef().clone(), s.radicand())
        } else {
            Err(Error::invalid(format!("{s} is not a rational multiple of a square root")))
        }
    }

    pub fn to_scalar(&self) -> QuadScalar {
        QuadScalar::sqrt_of(self.m).scale(&self.q)
    }
}

impl fmt::Display for DilationFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.q)
        } else if self.q.is_one() {
            write!(f, "√{}", self.m)
        } else {
            write!(f, "{}√{}", self.q, self.m)
        }
    }
}

/// Exact equality of the real values; distinct squarefree radicands are
/// linearly independent over the rationals, so componentwise comparison
/// suffices.
pub fn factor_equal(f1: &DilationFactor, f2: &DilationFactor) -> bool {
    f1.q == f2.q && f1.m == f2.m
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PitchedFamily {
    pub pitch: DilationFactor,
    pub family: CopyFamily,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MultiFamily {
    pub families: Vec<PitchedFamily>,
    /// Realized factors `r·a`, grouped by family in input order.
    pub factors: Vec<DilationFactor>,
}

impl MultiFamily {
    pub fn copies(&self) -> usize {
        self.families.iter().map(|f| f.family.len()).sum()
    }
}

fn realized_factors(families: &[PitchedFamily]) -> Result<Vec<DilationFactor>> {
    families
        .iter()
        .flat_map(|f| f.family.factors())
        .map(|s| DilationFactor::from_scalar(&s))
        .collect()
}

fn repeated(factors: &[DilationFactor]) -> Option<(usize, usize)> {
    (0..factors.len()).find_map(|i| {
        (i + 1..factors.len())
            .find(|&j| factor_equal(&factors[i], &factors[j]))
            .map(|j| (i, j))
    })
}

/// One family per radicand `m` at pitch `√m`, built concurrently.
pub fn multi_dilation_family(
    coloring: &Coloring,
    set: &PointSet,
    radicands: &[u64],
    k_per: usize,
    mode: FamilyMode,
    budget: FamilyBudget,
) -> Result<MultiFamily> {
    if radicands.is_empty() {
        return Err(Error::invalid("at least one radicand is required"));
    }
    if let Some(&m) = radicands.iter().find(|&&m| !is_squarefree(m)) {
        return Err(Error::NotSquarefree(m));
    }
    for (i, m) in radicands.iter().enumerate() {
        if radicands[..i].contains(m) {
            return Err(Error::invalid(format!("radicand {m} listed twice")));
        }
    }
    if !set.is_rational() {
        return Err(Error::invalid(
            "multi-dilation families need a set with rational coordinates",
        ));
    }
    let families = radicands
        .par_iter()
        .map(|&m| {
            let pitch = DilationFactor::new(Rational::from_integer(1.into()), m)?;
            let family = build_family(coloring, set, k_per, &pitch.to_scalar(), mode, budget)?;
            Ok(PitchedFamily { pitch, family })
        })
        .collect::<Result<Vec<_>>>()?;
    let factors = realized_factors(&families)?;
    if let Some((i, j)) = repeated(&factors) {
        return Err(Error::invalid(format!(
            "dilation factors {} and {} coincide",
            factors[i], factors[j]
        )));
    }
    Ok(MultiFamily { families, factors })
}

/// Every inner family re-verified, plus distinctness of the factors
/// recomputed from the members.
pub fn verify_multi(coloring: &Coloring, set: &PointSet, multi: &MultiFamily) -> VerificationReport {
    let mut report = VerificationReport::default();
    for f in &multi.families {
        report.merge(verify_family(coloring, set, &f.family));
    }
    match realized_factors(&multi.families) {
        Ok(factors) => {
            if factors != multi.factors {
                report.violations.push(Violation::FactorMismatch {
                    detail: "recorded factors differ from the members' scales".into(),
                });
            }
            for i in 0..factors.len() {
                for j in i + 1..factors.len() {
                    if factor_equal(&factors[i], &factors[j]) {
                        report.violations.push(Violation::RepeatedFactor { first: i, second: j });
                    }
                }
            }
        }
        Err(e) => report.violations.push(Violation::FactorMismatch { detail: e.to_string() }),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn f(q: i64, m: u64) -> DilationFactor {
        DilationFactor::new(rational(q, 1), m).unwrap()
    }

    fn budget() -> FamilyBudget {
        FamilyBudget {
            a_max: 4,
            d_max: 2,
            denom_max: 8,
        }
    }

    #[test]
    fn factor_equality() {
        assert!(factor_equal(&f(3, 2), &f(3, 2)));
        assert!(!factor_equal(&f(1, 2), &f(1, 3)));
        assert!(!factor_equal(&f(2, 1), &f(1, 1)));
        assert_eq!(DilationFactor::new(rational(1, 1), 8), Err(Error::NotSquarefree(8)));
        assert!(DilationFactor::new(rational(0, 1), 2).is_err());
        assert_eq!(f(3, 5).to_string(), "3√5");
        let s: QuadScalar = "3/2√7".parse().unwrap();
        assert_eq!(DilationFactor::from_scalar(&s).unwrap().to_scalar(), s);
        assert!(DilationFactor::from_scalar(&"1+√2".parse().unwrap()).is_err());
    }

    #[test]
    fn constant_coloring_two_radicands() {
        let s = PointSet::parse("0; 1").unwrap();
        let chi = Coloring::constant(0, 1).unwrap();
        let multi = multi_dilation_family(&chi, &s, &[1, 2], 2, FamilyMode::Direct, budget()).unwrap();
        assert_eq!(multi.factors, vec![f(1, 1), f(1, 2)]);
        assert_eq!(multi.copies(), 4);
        assert!(verify_multi(&chi, &s, &multi).all_pass());
        let multi = multi_dilation_family(&chi, &s, &[2, 3, 5], 1, FamilyMode::Direct, budget()).unwrap();
        assert_eq!(multi.factors, vec![f(1, 2), f(1, 3), f(1, 5)]);
    }

    #[test]
    fn unit_radicand_matches_plain_family() {
        let s = PointSet::parse("0,0; 1,0; 0,1").unwrap();
        let chi = Coloring::checkerboard(2);
        let multi = multi_dilation_family(&chi, &s, &[1], 2, FamilyMode::ProofFaithful, budget()).unwrap();
        let plain = build_family(&chi, &s, 2, &QuadScalar::one(), FamilyMode::ProofFaithful, budget()).unwrap();
        assert_eq!(multi.families[0].family, plain);
    }

    #[test]
    fn input_validation() {
        let s = PointSet::parse("0; 1").unwrap();
        let chi = Coloring::constant(0, 1).unwrap();
        let run = |r: &[u64]| multi_dilation_family(&chi, &s, r, 1, FamilyMode::Direct, budget());
        assert_eq!(run(&[2, 12]), Err(Error::NotSquarefree(12)));
        assert!(run(&[2, 2]).is_err());
        assert!(run(&[]).is_err());
        let surd = PointSet::parse("0; √2").unwrap();
        assert!(multi_dilation_family(&chi, &surd, &[2], 1, FamilyMode::Direct, budget()).is_err());
    }

    #[test]
    fn verifier_flags_repeats() {
        let s = PointSet::parse("0; 1").unwrap();
        let chi = Coloring::constant(0, 1).unwrap();
        let mut multi = multi_dilation_family(&chi, &s, &[1, 3], 1, FamilyMode::Direct, budget()).unwrap();
        multi.families[1] = multi.families[0].clone();
        let report = verify_multi(&chi, &s, &multi);
        assert!(report.violations.contains(&Violation::RepeatedFactor { first: 0, second: 1 }));
    }
}
