use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::geometry::{Homothety, Point, PointSet};
use crate::lifting::{
    build_matrix, coset_search, pullback_color, realize_copy, simplex_color, steps_in_order,
    CosetBudget, CosetIndex, CosetWitness, EmbeddingMatrix,
};
use crate::scalar::{QuadScalar, Rational};

use super::hermite::{difference_lattice, DifferenceLattice};

const CHUNK: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyMode {
    /// Independent coset search per candidate, greedy disjoint acceptance.
    #[default]
    Direct,
    /// One shared `(a₀, d₀)` for every member.
    ProofFaithful,
}

impl FromStr for FamilyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "direct" => Ok(FamilyMode::Direct),
            "proof-faithful" | "proof_faithful" => Ok(FamilyMode::ProofFaithful),
            other => Err(Error::invalid(format!(
                "unknown mode `{other}`, expected direct or proof-faithful"
            ))),
        }
    }
}

impl fmt::Display for FamilyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyMode::Direct => "direct",
            FamilyMode::ProofFaithful => "proof-faithful",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FamilyBudget {
    pub a_max: u64,
    pub d_max: u64,
    /// Largest denominator of a candidate coset fraction `e / r`.
    pub denom_max: u64,
}

impl Default for FamilyBudget {
    fn default() -> Self {
        FamilyBudget {
            a_max: 8,
            d_max: 4,
            denom_max: 16,
        }
    }
}

impl FamilyBudget {
    pub fn coset(&self) -> CosetBudget {
        CosetBudget {
            a_max: self.a_max,
            d_max: self.d_max,
        }
    }
}

/// `a_max,d_max,denom_max`.
impl FromStr for FamilyBudget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::invalid(format!("bad budget `{s}`, expected a_max,d_max,denom_max")))?;
        match parts.as_slice() {
            &[a_max, d_max, denom_max] if a_max > 0 && denom_max > 0 => Ok(FamilyBudget {
                a_max,
                d_max,
                denom_max,
            }),
            _ => Err(Error::invalid(format!(
                "bad budget `{s}`, expected a_max,d_max,denom_max with a_max, denom_max >= 1"
            ))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Member {
    pub homothety: Homothety,
    pub color: u32,
    pub points: Vec<Point>,
    pub witness: CosetWitness,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SharedShift {
    pub a: u64,
    pub steps: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CopyFamily {
    pub set: PointSet,
    pub pitch: QuadScalar,
    pub mode: FamilyMode,
    pub shared: Option<SharedShift>,
    pub members: Vec<Member>,
}

impl CopyFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Distinct dilation factors `r·a` across members, in first-seen order.
    pub fn factors(&self) -> Vec<QuadScalar> {
        let mut out: Vec<QuadScalar> = Vec::new();
        for m in &self.members {
            if !out.contains(&m.homothety.scale) {
                out.push(m.homothety.scale.clone());
            }
        }
        out
    }
}

/// Fractions `t ∈ [0,1)^arity` with exact common denominator `q`, for
/// `q = 1, …, denom_max`, numerators in lexicographic order.
pub fn candidate_fractions(arity: usize, denom_max: u64) -> impl Iterator<Item = Vec<Rational>> {
    (1..=denom_max).flat_map(move |q| {
        let total = q.checked_pow(arity as u32).unwrap_or(u64::MAX);
        (0..total).filter_map(move |mut code| {
            let mut nums = vec![0u64; arity];
            for j in (0..arity).rev() {
                nums[j] = code % q;
                code /= q;
            }
            let g = nums.iter().fold(q, |g, &n| g.gcd(&n));
            (g == 1).then(|| {
                nums.iter()
                    .map(|&n| Rational::new((n as i64).into(), (q as i64).into()))
                    .collect()
            })
        })
    })
}

/// Cosets whose `T(e / r)` are pairwise non-congruent modulo the
/// difference lattice, in candidate order.
struct Representatives<'a> {
    matrix: &'a EmbeddingMatrix,
    lattice: &'a DifferenceLattice,
    pitch: QuadScalar,
    seen: HashSet<Vec<Rational>>,
    inner: Box<dyn Iterator<Item = Vec<Rational>> + 'a>,
}

impl Iterator for Representatives<'_> {
    type Item = Result<CosetIndex>;

    fn next(&mut self) -> Option<Self::Item> {
        for t in self.inner.by_ref() {
            let image = self
                .matrix
                .apply(&t.iter().cloned().map(QuadScalar::from_rational).collect::<Vec<_>>());
            let residue = match image.and_then(|p| self.lattice.residue(&p)) {
                Ok(r) => r,
                Err(e) => return Some(Err(e)),
            };
            if self.seen.insert(residue) {
                return Some(CosetIndex::new(self.pitch.clone(), t));
            }
        }
        None
    }
}

fn representatives<'a>(
    matrix: &'a EmbeddingMatrix,
    lattice: &'a DifferenceLattice,
    pitch: &QuadScalar,
    denom_max: u64,
) -> Representatives<'a> {
    Representatives {
        matrix,
        lattice,
        pitch: pitch.clone(),
        seen: HashSet::new(),
        inner: Box::new(candidate_fractions(matrix.arity(), denom_max)),
    }
}

fn member(matrix: &EmbeddingMatrix, set: &PointSet, witness: CosetWitness) -> Result<Member> {
    let copy = realize_copy(matrix, &witness, set)?;
    Ok(Member {
        homothety: copy.homothety,
        color: witness.color,
        points: copy.points,
        witness,
    })
}

/// Builds `k` pairwise-disjoint monochromatic homothetic copies of `set`
/// from cosets of `(rZ)^{n-1}` with `r = pitch`.
pub fn build_family(
    coloring: &Coloring,
    set: &PointSet,
    k: usize,
    pitch: &QuadScalar,
    mode: FamilyMode,
    budget: FamilyBudget,
) -> Result<CopyFamily> {
    if k == 0 {
        return Err(Error::invalid("family size k must be at least 1"));
    }
    if budget.a_max == 0 || budget.denom_max == 0 {
        return Err(Error::invalid("a_max and denom_max must be at least 1"));
    }
    if !pitch.is_positive() {
        return Err(Error::invalid(format!("pitch {pitch} must be positive")));
    }
    if !pitch.is_rational() && !set.is_rational() && pitch.radicand() != set.radicand() {
        return Err(Error::MixedRadicand(set.radicand(), pitch.radicand()));
    }
    let matrix = build_matrix(set)?;
    let lattice = difference_lattice(set)?;
    let reps = representatives(&matrix, &lattice, pitch, budget.denom_max);
    let (members, shared) = match mode {
        FamilyMode::Direct => (direct(coloring, set, &matrix, reps, k, budget)?, None),
        FamilyMode::ProofFaithful => {
            let (members, shared) = pigeonhole(coloring, set, &matrix, reps, k, budget)?;
            (members, Some(shared))
        }
    };
    Ok(CopyFamily {
        set: set.clone(),
        pitch: pitch.clone(),
        mode,
        shared,
        members,
    })
}

fn direct(
    coloring: &Coloring,
    set: &PointSet,
    matrix: &EmbeddingMatrix,
    mut reps: Representatives<'_>,
    k: usize,
    budget: FamilyBudget,
) -> Result<Vec<Member>> {
    let mut members = Vec::with_capacity(k);
    let mut used: HashSet<Point> = HashSet::new();
    let mut tried = 0usize;
    loop {
        let chunk = reps.by_ref().take(CHUNK).collect::<Result<Vec<_>>>()?;
        if chunk.is_empty() {
            break;
        }
        tried += chunk.len();
        let found: Vec<Option<Member>> = chunk
            .into_par_iter()
            .map(|coset| match coset_search(coloring, matrix, &coset, budget.coset()) {
                Ok(w) => member(matrix, set, w).map(Some),
                Err(Error::BudgetExhausted(_)) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        for m in found.into_iter().flatten() {
            if m.points.iter().any(|p| used.contains(p)) {
                continue;
            }
            used.extend(m.points.iter().cloned());
            members.push(m);
            if members.len() == k {
                return Ok(members);
            }
        }
    }
    Err(Error::BudgetExhausted(format!(
        "found {} of {k} disjoint copies among {tried} coset representatives",
        members.len()
    )))
}

fn pigeonhole(
    coloring: &Coloring,
    set: &PointSet,
    matrix: &EmbeddingMatrix,
    reps: Representatives<'_>,
    k: usize,
    budget: FamilyBudget,
) -> Result<(Vec<Member>, SharedShift)> {
    let cosets = reps.collect::<Result<Vec<_>>>()?;
    if cosets.len() < k {
        return Err(Error::BudgetExhausted(format!(
            "only {} non-congruent coset representatives with denominators <= {}, need {k}",
            cosets.len(),
            budget.denom_max
        )));
    }
    let pullbacks = cosets
        .iter()
        .map(|c| pullback_color(coloring, matrix, c))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0usize;
    for a in 1..=budget.a_max {
        for steps in steps_in_order(matrix.arity(), budget.d_max) {
            let mut hits: Vec<(usize, u32)> = Vec::with_capacity(k);
            for start in (0..cosets.len()).step_by(CHUNK) {
                let end = (start + CHUNK).min(cosets.len());
                let colors: Vec<Option<u32>> = (start..end)
                    .into_par_iter()
                    .map(|i| simplex_color(&pullbacks[i], a, &steps))
                    .collect::<Result<_>>()?;
                hits.extend((start..end).zip(colors).filter_map(|(i, c)| c.map(|c| (i, c))));
                if hits.len() >= k {
                    break;
                }
            }
            best = best.max(hits.len());
            if hits.len() >= k {
                let members = hits
                    .into_iter()
                    .take(k)
                    .map(|(i, color)| {
                        let w = CosetWitness {
                            a,
                            steps: steps.clone(),
                            coset: cosets[i].clone(),
                            color,
                        };
                        member(matrix, set, w)
                    })
                    .collect::<Result<_>>()?;
                return Ok((members, SharedShift { a, steps }));
            }
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no shared (a, d) with a <= {} and |d/r| <= {} covers {k} of {} cosets (best {best})",
        budget.a_max,
        budget.d_max,
        cosets.len()
    )))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotHomothetic { member: usize, detail: String },
    NotMonochromatic { member: usize, point: Point, expected: u32, found: u32 },
    Uncolorable { member: usize, point: Point, error: String },
    Overlap { first: usize, second: usize, point: Point },
    SharedMismatch { member: usize },
    Congruent { first: usize, second: usize },
    RepeatedFactor { first: usize, second: usize },
    FactorMismatch { detail: String },
    Certificate { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHomothetic { member, detail } => {
                write!(f, "member {member} is not a homothetic copy: {detail}")
            }
            Violation::NotMonochromatic {
                member,
                point,
                expected,
                found,
            } => write!(
                f,
                "member {member}: point {point} has color {found}, recorded {expected}"
            ),
            Violation::Uncolorable { member, point, error } => {
                write!(f, "member {member}: cannot color {point}: {error}")
            }
            Violation::Overlap { first, second, point } => {
                write!(f, "members {first} and {second} share the point {point}")
            }
            Violation::SharedMismatch { member } => {
                write!(f, "member {member} does not use the shared (a, d)")
            }
            Violation::Congruent { first, second } => write!(
                f,
                "members {first} and {second} come from congruent cosets"
            ),
            Violation::RepeatedFactor { first, second } => {
                write!(f, "dilation factors {first} and {second} coincide")
            }
            Violation::FactorMismatch { detail } => write!(f, "dilation factors: {detail}"),
            Violation::Certificate { detail } => f.write_str(detail),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub members: usize,
    pub pairs: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.members += other.members;
        self.pairs += other.pairs;
        self.violations.extend(other.violations);
    }
}

/// Re-derives the scale and translate of `points` as an image of `set`.
fn derive_homothety(set: &PointSet, points: &[Point], recorded: &QuadScalar) -> std::result::Result<(QuadScalar, Point), String> {
    if points.len() != set.len() {
        return Err(format!("{} points for a set of {}", points.len(), set.len()));
    }
    if points.iter().any(|p| p.dim() != set.dim()) {
        return Err("dimension differs from the set".into());
    }
    let base = points[0].clone();
    let generators = set.generators();
    let pivot = generators.iter().enumerate().find_map(|(j, y)| {
        y.coords().iter().position(|c| !c.is_zero()).map(|i| (j, i))
    });
    let scale = match pivot {
        Some((j, i)) => points[j + 1].coords()[i]
            .try_sub(&base.coords()[i])
            .and_then(|diff| diff.try_div(&generators[j].coords()[i]))
            .map_err(|e| e.to_string())?,
        None => recorded.clone(),
    };
    if !scale.is_positive() {
        return Err(format!("derived scale {scale} is not positive"));
    }
    for (j, y) in generators.iter().enumerate() {
        let expected = y
            .try_scale(&scale)
            .and_then(|v| v.try_add(&base))
            .map_err(|e| e.to_string())?;
        if expected != points[j + 1] {
            return Err(format!("point {} is {}, expected {expected}", j + 1, points[j + 1]));
        }
    }
    Ok((scale, base))
}

fn check_member(coloring: &Coloring, set: &PointSet, index: usize, m: &Member) -> Vec<Violation> {
    let mut out = Vec::new();
    match derive_homothety(set, &m.points, &m.homothety.scale) {
        Ok((scale, translate)) => {
            if scale != m.homothety.scale || translate != m.homothety.translate {
                out.push(Violation::NotHomothetic {
                    member: index,
                    detail: format!(
                        "points give scale {scale} and translate {translate}, recorded {} and {}",
                        m.homothety.scale, m.homothety.translate
                    ),
                });
            }
        }
        Err(detail) => out.push(Violation::NotHomothetic { member: index, detail }),
    }
    for p in &m.points {
        match coloring.color(p) {
            Ok(c) if c == m.color => {}
            Ok(found) => out.push(Violation::NotMonochromatic {
                member: index,
                point: p.clone(),
                expected: m.color,
                found,
            }),
            Err(e) => out.push(Violation::Uncolorable {
                member: index,
                point: p.clone(),
                error: e.to_string(),
            }),
        }
    }
    out
}

/// Independent check of a family: homothetic images, monochromatic under
/// `coloring`, pairwise disjoint, and for a shared-shift family the common
/// `(a, d)` and non-congruent cosets.
pub fn verify_family(coloring: &Coloring, set: &PointSet, family: &CopyFamily) -> VerificationReport {
    let n = family.members.len();
    let mut violations: Vec<Violation> = family
        .members
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, m)| check_member(coloring, set, i, m))
        .collect();

    let mut owner: HashMap<&Point, usize> = HashMap::new();
    let mut overlaps: Vec<Violation> = Vec::new();
    for (i, m) in family.members.iter().enumerate() {
        for p in &m.points {
            match owner.get(p) {
                Some(&j) if j != i => overlaps.push(Violation::Overlap {
                    first: j,
                    second: i,
                    point: p.clone(),
                }),
                Some(_) => {}
                None => {
                    owner.insert(p, i);
                }
            }
        }
    }
    violations.extend(overlaps);

    if let Some(shared) = &family.shared {
        for (i, m) in family.members.iter().enumerate() {
            if m.witness.a != shared.a || m.witness.steps != shared.steps {
                violations.push(Violation::SharedMismatch { member: i });
            }
        }
        violations.extend(congruent_pairs(set, family));
    }

    VerificationReport {
        members: n,
        pairs: n * n.saturating_sub(1) / 2,
        violations,
    }
}

fn congruent_pairs(set: &PointSet, family: &CopyFamily) -> Vec<Violation> {
    let (Ok(matrix), Ok(lattice)) = (build_matrix(set), difference_lattice(set)) else {
        return Vec::new();
    };
    let images: Vec<Option<Point>> = family
        .members
        .iter()
        .map(|m| {
            let t: Vec<QuadScalar> = m
                .witness
                .coset
                .fractions()
                .iter()
                .cloned()
                .map(QuadScalar::from_rational)
                .collect();
            matrix.apply(&t).ok()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let (Some(p), Some(q)) = (&images[i], &images[j]) else {
                continue;
            };
            let congruent = p
                .try_sub(q)
                .and_then(|v| lattice.contains(&v))
                .unwrap_or(false);
            if congruent {
                out.push(Violation::Congruent { first: i, second: j });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn set(text: &str) -> PointSet {
        PointSet::parse(text).unwrap()
    }

    fn small() -> FamilyBudget {
        FamilyBudget {
            a_max: 4,
            d_max: 2,
            denom_max: 8,
        }
    }

    #[test]
    fn candidate_order() {
        let c: Vec<Vec<Rational>> = candidate_fractions(2, 2).collect();
        assert_eq!(
            c,
            vec![
                vec![rational(0, 1), rational(0, 1)],
                vec![rational(0, 1), rational(1, 2)],
                vec![rational(1, 2), rational(0, 1)],
                vec![rational(1, 2), rational(1, 2)],
            ]
        );
        // denominators exactly q: 1 + 1 + 2 + 2 fractions in one dimension up to 4
        assert_eq!(candidate_fractions(1, 4).count(), 1 + 1 + 2 + 2);
    }

    #[test]
    fn constant_proof_faithful() {
        let s = set("0,0; 1,0; 0,1");
        let chi = Coloring::constant(0, 1).unwrap();
        let f = build_family(&chi, &s, 3, &QuadScalar::one(), FamilyMode::ProofFaithful, small()).unwrap();
        assert_eq!(f.shared, Some(SharedShift { a: 1, steps: vec![0, 0] }));
        assert_eq!(f.len(), 3);
        let report = verify_family(&chi, &s, &f);
        assert!(report.all_pass(), "{:?}", report.violations);
        assert_eq!(report.pairs, 3);
    }

    #[test]
    fn checkerboard_families() {
        let s = set("0,0; 1,0; 0,1");
        let chi = Coloring::checkerboard(2);
        for mode in [FamilyMode::Direct, FamilyMode::ProofFaithful] {
            let f = build_family(&chi, &s, 2, &QuadScalar::one(), mode, small()).unwrap();
            assert!(verify_family(&chi, &s, &f).all_pass());
            if mode == FamilyMode::ProofFaithful {
                assert_eq!(f.shared.as_ref().unwrap().a, 2);
            }
        }
    }

    #[test]
    fn single_copy_is_plain_gallai() {
        let s = set("0; 1; 3");
        let chi = Coloring::expression("floor(x) mod 3", None).unwrap();
        let f = build_family(&chi, &s, 1, &QuadScalar::one(), FamilyMode::Direct, small()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.members[0].homothety.scale, QuadScalar::from_int(3));
        assert!(verify_family(&chi, &s, &f).all_pass());
    }

    #[test]
    fn surd_pitch() {
        let s = set("0; 1");
        let chi = Coloring::constant(0, 1).unwrap();
        let r = QuadScalar::sqrt_of(2);
        let f = build_family(&chi, &s, 4, &r, FamilyMode::Direct, small()).unwrap();
        assert!(verify_family(&chi, &s, &f).all_pass());
        for m in &f.members {
            for p in &m.points {
                assert!(p.coords().iter().all(|c| c.rational_part() == &rational(0, 1)));
            }
        }
        let tri = set("0,0; 1,0; 1/2,√3/2");
        assert!(matches!(
            build_family(&chi, &tri, 1, &r, FamilyMode::Direct, small()),
            Err(Error::MixedRadicand(..))
        ));
    }

    #[test]
    fn budget_and_input_errors() {
        let s = set("0,0; 1,0; 0,1");
        let chi = Coloring::checkerboard(2);
        let tiny = FamilyBudget {
            a_max: 1,
            d_max: 1,
            denom_max: 2,
        };
        assert!(matches!(
            build_family(&chi, &s, 2, &QuadScalar::one(), FamilyMode::Direct, tiny),
            Err(Error::BudgetExhausted(_))
        ));
        assert!(matches!(
            build_family(&chi, &set("0,0; 1,1"), 1, &QuadScalar::one(), FamilyMode::Direct, small()),
            Err(Error::DegenerateConfiguration { .. })
        ));
        assert!(build_family(&chi, &s, 0, &QuadScalar::one(), FamilyMode::Direct, small()).is_err());
    }

    #[test]
    fn verifier_reports_violations() {
        let s = set("0,0; 1,0; 0,1");
        let chi = Coloring::constant(0, 1).unwrap();
        let mut f = build_family(&chi, &s, 2, &QuadScalar::one(), FamilyMode::Direct, small()).unwrap();
        let mut twin = f.members[0].clone();
        twin.witness.steps = vec![9, 9];
        f.members[1] = twin;
        let report = verify_family(&chi, &s, &f);
        assert_eq!(report.violations.len(), 3);
        assert!(report.violations.contains(&Violation::Overlap {
            first: 0,
            second: 1,
            point: f.members[0].points[0].clone(),
        }));

        let f = build_family(&chi, &s, 2, &QuadScalar::one(), FamilyMode::Direct, small()).unwrap();
        let other = Coloring::checkerboard(2);
        let report = verify_family(&other, &s, &f);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotMonochromatic { .. })));

        let mut bent = f.clone();
        bent.members[0].points[2] = Point::from_ints(&[5, 5]);
        let report = verify_family(&chi, &s, &bent);
        assert!(matches!(report.violations[0], Violation::NotHomothetic { member: 0, .. }));
    }

    #[test]
    fn shared_shift_checks() {
        let s = set("0,0; 1,0; 0,1");
        let chi = Coloring::constant(0, 1).unwrap();
        let mut f = build_family(&chi, &s, 2, &QuadScalar::one(), FamilyMode::ProofFaithful, small()).unwrap();
        f.members[1].witness.coset = f.members[0].witness.coset.clone();
        let report = verify_family(&chi, &s, &f);
        assert!(report.violations.contains(&Violation::Congruent { first: 0, second: 1 }));
    }

    #[test]
    fn parse_mode_and_budget() {
        assert_eq!("proof-faithful".parse::<FamilyMode>().unwrap(), FamilyMode::ProofFaithful);
        assert!("greedy".parse::<FamilyMode>().is_err());
        assert_eq!(
            "3, 2,5".parse::<FamilyBudget>().unwrap(),
            FamilyBudget { a_max: 3, d_max: 2, denom_max: 5 }
        );
        assert!("0,1,1".parse::<FamilyBudget>().is_err());
        assert!("1,2".parse::<FamilyBudget>().is_err());
    }
}
