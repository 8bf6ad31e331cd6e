use gallai::coloring::ColoringSpec;
use gallai::dilation::multi_dilation_family;
use gallai::disjointness::{build_family, FamilyBudget, FamilyMode};
use gallai::document::{InputEcho, Payload, WitnessDocument};
use gallai::geometry::{Point, PointSet};
use gallai::lattice::{find_copy, gallai_number, ThresholdOptions};
use gallai::scalar::{QuadScalar, Rational};
use proptest::prelude::*;

const SETS: [&str; 4] = ["0; 1", "0; 1; 3", "0,0; 1,0; 0,1", "0,0; 2,0; 1,1"];

#[derive(Debug, Clone)]
struct Scenario {
    set: usize,
    weights: Vec<i64>,
    modulus: u32,
    offset: i64,
    k: usize,
    proof_faithful: bool,
    kind: u8,
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (
        0..SETS.len(),
        prop::collection::vec(-3i64..4, 2),
        1u32..4,
        -3i64..4,
        1usize..5,
        any::<bool>(),
        0u8..4,
    )
        .prop_map(|(set, weights, modulus, offset, k, proof_faithful, kind)| Scenario {
            set,
            weights,
            modulus,
            offset,
            k,
            proof_faithful,
            kind,
        })
}

/// Builds a document for the scenario, or `None` when the search gives up.
fn document(s: &Scenario) -> Option<WitnessDocument> {
    let set = PointSet::parse(SETS[s.set]).unwrap();
    let weights: Vec<String> = s.weights[..set.dim()].iter().map(i64::to_string).collect();
    let spec = ColoringSpec::new(format!("linear:{};{};{}", weights.join(","), s.modulus, s.offset), None);
    let chi = spec.build().unwrap();
    let mode = if s.proof_faithful { FamilyMode::ProofFaithful } else { FamilyMode::Direct };
    let budget = FamilyBudget { a_max: 6, d_max: 2, denom_max: 6 };
    let mut input = InputEcho {
        set: Some(set.clone()),
        coloring: Some(spec),
        ..Default::default()
    };
    let result = match s.kind {
        0 => {
            input.command = "find".into();
            input.side = Some(6);
            let grid = chi.sample_grid(vec![6; set.dim()]).unwrap();
            let witness = find_copy(&grid, &set, u64::MAX).unwrap();
            Payload::Witness { grid, witness }
        }
        1 => {
            input.command = "family".into();
            input.k = Some(s.k);
            input.mode = Some(mode);
            input.budget = Some(budget);
            Payload::Family(build_family(&chi, &set, s.k, &QuadScalar::one(), mode, budget).ok()?)
        }
        2 => {
            input.command = "dilations".into();
            input.k = Some(s.k);
            input.mode = Some(mode);
            input.budget = Some(budget);
            input.radicands = Some(vec![1, 2]);
            Payload::Multifamily(multi_dilation_family(&chi, &set, &[1, 2], s.k, mode, budget).ok()?)
        }
        _ => {
            let set = PointSet::parse("0; 1").unwrap();
            input.command = "number".into();
            input.set = Some(set.clone());
            input.coloring = None;
            input.colors = Some(s.modulus);
            input.max_side = Some(6);
            Payload::Threshold(gallai_number(&set, s.modulus, 6, ThresholdOptions::default()).unwrap())
        }
    };
    let coloring = input.coloring.as_ref().map(|c| c.build().unwrap());
    Some(WitnessDocument::new(input, result, coloring.as_ref()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn documents_round_trip(s in scenario()) {
        let Some(doc) = document(&s) else { return Ok(()) };
        prop_assert!(doc.verification.all_pass);
        let text = doc.to_json();
        let back = WitnessDocument::from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
        let again = back.reverify().unwrap();
        prop_assert_eq!(&again, &doc.verification.report);
    }

    #[test]
    fn moved_points_fail_reverification(s in scenario(), pick in 0usize..8) {
        let s = Scenario { kind: 1, ..s };
        let Some(mut doc) = document(&s) else { return Ok(()) };
        let Payload::Family(family) = &mut doc.result else { unreachable!() };
        let member = pick % family.members.len();
        let p = &mut family.members[member].points[0];
        let nudge = Point::new(vec![QuadScalar::from_rational(Rational::new(1.into(), 7.into())); p.dim()]).unwrap();
        *p = p.try_add(&nudge).unwrap();
        let text = doc.to_json();
        let back = WitnessDocument::from_json(&text).unwrap();
        prop_assert!(!back.reverify().unwrap().all_pass());
    }
}

#[test]
fn foreign_schema_is_rejected() {
    let s = Scenario { set: 0, weights: vec![1, 0], modulus: 2, offset: 0, k: 1, proof_faithful: false, kind: 1 };
    let doc = document(&s).unwrap();
    let text = doc.to_json().replace("gallai-witness/1", "gallai-witness/9");
    assert!(WitnessDocument::from_json(&text).is_err());
    assert!(WitnessDocument::from_json("{\"schema\": \"gallai-witness/1\"}").is_err());
}
