//! The acceptance gate: ten criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use gallai::coloring::Coloring;
use gallai::dilation::factor_equal;
use gallai::disjointness::{difference_lattice, in_Y, lattice_member};
use gallai::document::{Payload, WitnessDocument};
use gallai::geometry::{make_pointset, Point, PointSet};
use gallai::lattice::{certify_avoiding, find_copy, gallai_number, ThresholdOptions, ThresholdStatus};
use gallai::lifting::{build_matrix, realize_copy, simplex, CosetIndex, CosetWitness};
use gallai::parallel::with_threads;
use gallai::scalar::{rational, QuadScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> QuadScalar {
    QuadScalar::from_int(n)
}

fn frac(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> QuadScalar {
    let d = rng.random_range(1..=max_den);
    QuadScalar::from_rational(rational(rng.random_range(-span * d..=span * d), d))
}

fn rand_point(rng: &mut ChaCha8Rng, dim: usize, span: i64, max_den: i64) -> Point {
    Point::new((0..dim).map(|_| frac(rng, span, max_den)).collect()).unwrap()
}

/// A rational set with affinely independent points, `1 ≤ dim ≤ 3`.
fn random_simplex(rng: &mut ChaCha8Rng, full: bool) -> PointSet {
    loop {
        let dim = rng.random_range(1..=3usize);
        let n = if full { dim } else { rng.random_range(1..=dim) };
        let mut pts = vec![Point::origin(dim)];
        pts.extend((0..n).map(|_| rand_point(rng, dim, 4, 3)));
        let Ok(set) = make_pointset(pts) else { continue };
        if set.len() == n + 1 && gallai::geometry::affine_dimension(&set).unwrap() == n {
            return set;
        }
    }
}

fn has_progression(cells: &[u32]) -> bool {
    let n = cells.len();
    (0..n).any(|a| (1..n).any(|b| a + 2 * b < n && cells[a] == cells[a + b] && cells[a] == cells[a + 2 * b]))
}

/// Plain enumeration of every 2-coloring of `{0..side}`.
fn some_coloring_avoids(side: usize) -> bool {
    (0..1u32 << side).any(|code| {
        let cells: Vec<u32> = (0..side).map(|i| (code >> i) & 1).collect();
        !has_progression(&cells)
    })
}

fn threshold_sanity() -> Outcome {
    let start = Instant::now();
    let line = PointSet::parse("0; 1").unwrap();
    for c in 1..=4u32 {
        let r = with_threads(1, || gallai_number(&line, c, 8, ThresholdOptions::default()))
            .unwrap()
            .map_err(|e| e.to_string())?;
        ensure(r.status == ThresholdStatus::Resolved { side: c as usize + 1 }, || {
            format!("S={{0,1}}, c={c}: {:?}", r.status)
        })?;
    }
    ensure(some_coloring_avoids(8) && !some_coloring_avoids(9), || "enumerator disagrees with 9".into())?;
    let set = PointSet::parse("0; 1; 2").unwrap();
    let r = with_threads(1, || gallai_number(&set, 2, 12, ThresholdOptions::default()))
        .unwrap()
        .map_err(|e| e.to_string())?;
    ensure(r.status == ThresholdStatus::Resolved { side: 9 }, || format!("S={{0,1,2}}: {:?}", r.status))?;
    let cert = r.certificate.ok_or("no certificate")?;
    ensure(cert.sides() == [8], || format!("certificate sides {:?}", cert.sides()))?;
    ensure(certify_avoiding(&cert, &set).unwrap() && !has_progression(cert.cells()), || {
        "certificate contains a copy".into()
    })?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("thresholds c+1 for c=1..4, 9 for {{0,1,2}}; {:.2?} on one worker", took))
}

fn determinism() -> Outcome {
    let set = PointSet::parse("0; 1; 2").unwrap();
    let run = |t| {
        with_threads(t, || gallai_number(&set, 2, 12, ThresholdOptions::default()))
            .unwrap()
            .unwrap()
    };
    let one = serde_json::to_string(&run(1)).unwrap();
    for t in [4, 8] {
        let many = serde_json::to_string(&run(t)).unwrap();
        ensure(one == many, || format!("1 worker and {t} workers differ"))?;
    }
    Ok("identical results with 1, 4 and 8 workers".into())
}

fn random_grids() -> Outcome {
    let start = Instant::now();
    let set = PointSet::parse("0; 1; 2").unwrap();
    for seed in 0..1000u64 {
        let grid = Coloring::seeded_random(seed, 2).unwrap().sample_grid(vec![20]).unwrap();
        let w = find_copy(&grid, &set, u64::MAX).unwrap().ok_or(format!("seed {seed}: no witness"))?;
        ensure(w.recheck(&grid, &set).unwrap(), || format!("seed {seed}: witness fails recheck"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("1000 witnesses re-verified in {took:.2?}"))
}

fn lifting_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..500 {
        let set = random_simplex(&mut rng, true);
        let matrix = build_matrix(&set).unwrap();
        let m = matrix.arity();
        let pitch = QuadScalar::from_rational(rational(rng.random_range(1..=6), rng.random_range(1..=4)));
        let fractions = (0..m)
            .map(|_| {
                let d = rng.random_range(1..=7);
                rational(rng.random_range(0..d), d)
            })
            .collect();
        let witness = CosetWitness {
            a: rng.random_range(1..=6),
            steps: (0..m).map(|_| rng.random_range(-5..=5)).collect(),
            coset: CosetIndex::new(pitch.clone(), fractions).unwrap(),
            color: 0,
        };
        let scale = pitch.try_mul(&int(witness.a as i64)).unwrap();
        let shift: Vec<QuadScalar> = witness
            .d()
            .iter()
            .zip(witness.coset.offset())
            .map(|(d, e)| d.try_add(&e).unwrap())
            .collect();
        let base = matrix.apply(&shift).unwrap();
        let copy = realize_copy(&matrix, &witness, &set).unwrap();
        for ((u, s), p) in simplex(m).iter().zip(set.points()).zip(&copy.points) {
            let v: Vec<QuadScalar> = u
                .iter()
                .zip(&shift)
                .map(|(&ui, x)| scale.try_mul(&int(ui)).unwrap().try_add(x).unwrap())
                .collect();
            let lhs = matrix.apply(&v).unwrap();
            let rhs = s.try_scale(&scale).unwrap().try_add(&base).unwrap();
            ensure(lhs == rhs && *p == lhs, || format!("case {case}: {lhs} vs {rhs} vs {p}"))?;
        }
    }
    Ok("500 lifted copies match a·S + T(d+e) exactly".into())
}

fn disjointness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 500 {
        let full = rng.random_bool(0.5);
        let set = random_simplex(&mut rng, full);
        let lattice = difference_lattice(&set).unwrap();
        let dim = set.dim();
        let (p, q) = (rand_point(&mut rng, dim, 3, 4), rand_point(&mut rng, dim, 3, 4));
        if lattice_member(&lattice, &p.try_sub(&q).unwrap()).unwrap() {
            continue;
        }
        let a0 = int(rng.random_range(1..=5));
        let base = rand_point(&mut rng, dim, 5, 1);
        let copy = |shift: &Point| -> Vec<Point> {
            set.points()
                .iter()
                .map(|s| s.try_scale(&a0).unwrap().try_add(&base).unwrap().try_add(shift).unwrap())
                .collect()
        };
        let (cp, cq) = (copy(&p), copy(&q));
        ensure(cp.iter().all(|x| cq.iter().all(|y| x != y)), || format!("overlap for {set:?}, p {p}, q {q}"))?;
        done += 1;
    }
    let set = PointSet::parse("0,0; 2,1; 1,3").unwrap();
    let a0 = int(2);
    let pts = set.points();
    let p = Point::new(vec![QuadScalar::from_rational(rational(1, 3)), QuadScalar::from_rational(rational(2, 5))]).unwrap();
    let q = p.try_sub(&pts[1].try_sub(&pts[2]).unwrap().try_scale(&a0).unwrap()).unwrap();
    let image = |shift: &Point| -> HashSet<Point> {
        pts.iter().map(|s| s.try_scale(&a0).unwrap().try_add(shift).unwrap()).collect()
    };
    ensure(!image(&p).is_disjoint(&image(&q)), || "adversarial copies do not meet".into())?;
    Ok("500 non-congruent pairs disjoint; adversarial pair meets".into())
}

fn cli(args: &[&str]) -> Result<(WitnessDocument, Duration, i32), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let code = out.status.code().unwrap_or(-1);
    let doc = WitnessDocument::from_json(&String::from_utf8_lossy(&out.stdout))
        .map_err(|e| format!("exit {code}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((doc, took, code))
}

/// Independent re-check of a family document: the stored report, a fresh
/// verification, and pairwise disjointness recomputed here.
fn check_family_doc(doc: &WitnessDocument, code: i32, k: usize) -> Result<(), String> {
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(doc.verification.all_pass, || format!("{:?}", doc.verification.report.violations))?;
    ensure(doc.reverify().unwrap().all_pass(), || "fresh verification fails".into())?;
    let Payload::Family(f) = &doc.result else { return Err("not a family".into()) };
    ensure(f.len() == k, || format!("{} members", f.len()))?;
    let mut seen = HashSet::new();
    let chi = doc.coloring().unwrap().unwrap();
    for m in &f.members {
        for p in &m.points {
            ensure(seen.insert(p.clone()), || format!("point {p} shared"))?;
            ensure(chi.color(p).unwrap() == m.color, || format!("point {p} off color"))?;
        }
    }
    Ok(())
}

fn family_desk_scale() -> Outcome {
    let (doc, took, code) = cli(&[
        "family", "--set", "0,0; 1,0; 0,1", "--coloring", "(floor(x)+floor(y)) mod 2", "--k", "50", "--mode", "direct",
    ])?;
    check_family_doc(&doc, code, 50)?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("50 disjoint monochromatic triangles in {took:.2?}"))
}

fn line_case() -> Outcome {
    let (doc, _, code) = cli(&["family", "--set", "0; 1; 3", "--coloring", "floor(x) mod 3", "--k", "20"])?;
    check_family_doc(&doc, code, 20)?;
    Ok("20 disjoint monochromatic copies of {0,1,3}".into())
}

fn dilations() -> Outcome {
    let (doc, _, code) = cli(&["dilations", "--set", "0; 1", "--coloring", "0", "--radicands", "1,2,3,5,7", "--k", "10"])?;
    ensure(code == 0 && doc.verification.all_pass, || format!("exit {code}"))?;
    ensure(doc.reverify().unwrap().all_pass(), || "fresh verification fails".into())?;
    let Payload::Multifamily(multi) = &doc.result else { return Err("not a multi-family".into()) };
    ensure(multi.families.len() == 5 && multi.copies() == 50, || {
        format!("{} families, {} copies", multi.families.len(), multi.copies())
    })?;
    let f = &multi.factors;
    ensure(f.len() == 5, || format!("{} factors", f.len()))?;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            ensure(!factor_equal(&f[i], &f[j]), || format!("factors {} and {} coincide", f[i], f[j]))?;
        }
    }
    let shown: Vec<String> = f.iter().map(ToString::to_string).collect();
    Ok(format!("5 families, 50 copies, factors {}", shown.join(", ")))
}

fn combination(gens: &[Point], c: &[i64]) -> Point {
    gens.iter()
        .zip(c)
        .fold(Point::origin(gens[0].dim()), |acc, (g, &x)| acc.try_add(&g.try_scale(&int(x)).unwrap()).unwrap())
}

fn enumerated_member(gens: &[Point], v: &Point) -> bool {
    let n = gens.len();
    let total = 11usize.pow(n as u32);
    (0..total).any(|mut code| {
        let c: Vec<i64> = (0..n)
            .map(|_| {
                let x = (code % 11) as i64 - 5;
                code /= 11;
                x
            })
            .collect();
        combination(gens, &c) == *v
    })
}

fn lattice_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut members = 0;
    for case in 0..1000 {
        // independent generators make coefficients unique, so the box is exhaustive
        let set = random_simplex(&mut rng, false);
        let gens = set.generators().to_vec();
        let coeffs: Vec<QuadScalar> = gens
            .iter()
            .map(|_| if rng.random_bool(0.6) { int(rng.random_range(-5..=5)) } else { frac(&mut rng, 5, 3) })
            .collect();
        let mut v = gens.iter().zip(&coeffs).fold(Point::origin(set.dim()), |acc, (g, c)| {
            acc.try_add(&g.try_scale(c).unwrap()).unwrap()
        });
        if gens.len() < set.dim() && rng.random_bool(0.3) {
            // step out of the span of the generators
            let w = rand_point(&mut rng, set.dim(), 2, 3);
            let mut pts = set.points().to_vec();
            pts.push(w.clone());
            let rank = gallai::geometry::affine_dimension(&make_pointset(pts).unwrap()).unwrap();
            if rank > gens.len() {
                v = v.try_add(&w).unwrap();
            }
        }
        let lattice = difference_lattice(&set).unwrap();
        let fast = lattice_member(&lattice, &v).unwrap();
        let slow = enumerated_member(&gens, &v);
        ensure(fast == slow, || format!("case {case}: {set:?} v={v}: hermite {fast}, enumeration {slow}"))?;
        members += fast as usize;
    }
    Ok(format!("1000 instances agree ({members} members)"))
}

fn non_transitivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..300 {
        let set = random_simplex(&mut rng, false);
        let v = rand_point(&mut rng, set.dim(), 3, 2);
        ensure(in_Y(&set, &Point::origin(set.dim())).unwrap(), || "not reflexive".into())?;
        let neg = v.try_scale(&int(-1)).unwrap();
        ensure(in_Y(&set, &v).unwrap() == in_Y(&set, &neg).unwrap(), || format!("not symmetric at {v}"))?;
        let k = int(rng.random_range(-4..=4));
        let delta = set.generators()[0].try_scale(&k).unwrap();
        ensure(in_Y(&set, &delta).unwrap(), || format!("{delta} missing"))?;
    }
    let tri = PointSet::parse("0,0; 1,0; 0,1").unwrap();
    let (p, q, r) = (Point::from_ints(&[1, 1]), Point::from_ints(&[0, 1]), Point::from_ints(&[0, 0]));
    let diff = |a: &Point, b: &Point| a.try_sub(b).unwrap();
    ensure(diff(&p, &q) == Point::from_ints(&[1, 0]) && diff(&q, &r) == Point::from_ints(&[0, 1]), || {
        "wrong differences".into()
    })?;
    let rel = |a: &Point, b: &Point| in_Y(&tri, &diff(a, b)).unwrap();
    ensure(rel(&p, &q) && rel(&q, &r) && !rel(&p, &r), || "counterexample does not hold".into())?;
    let lattice = difference_lattice(&tri).unwrap();
    ensure(lattice_member(&lattice, &diff(&p, &r)).unwrap(), || "(1,1) missing from the lattice".into())?;
    Ok("reflexive and symmetric; differences (1,0), (0,1) in 𝒴 but (1,1) not".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("threshold sanity", threshold_sanity),
        ("determinism under parallelism", determinism),
        ("random-grid witnesses", random_grids),
        ("lifting exactness", lifting_exactness),
        ("disjointness implication", disjointness),
        ("family at desk scale", family_desk_scale),
        ("line case", line_case),
        ("dilation distinctness", dilations),
        ("lattice-membership oracle", lattice_oracle),
        ("non-transitivity regression", non_transitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
