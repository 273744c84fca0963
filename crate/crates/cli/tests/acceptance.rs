//! Acceptance gate. Prints one line per criterion and exits non-zero if any fails.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use coxwalls::geometry::{
    build_realization, limit_directions, sweep_convexity, sweep_geodesic, sweep_halfspace, sweep_lemma0, sweep_lemma1,
    sweep_lemma31, sweep_lemma32, EuclideanRealization, Point, SweepReport, GEODESIC_TOL,
};
use coxwalls::parabolic::{
    cor17_hypothesis, coset_rep_counts, essential_subset, has_finite_index, min_coset_rep, quasi_density_profile,
    sphericity_report, splits_as_product, w_singleton_set, SPHERICITY_BFS_CAP,
};
use coxwalls::{ball, named, normal_form, subgroup_ball, CoxeterSystem, Element, GeneratorSubset, Word};
use coxwalls_oracle::{GeometricRep, Mat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn acceptance_systems() -> Vec<(&'static str, Arc<CoxeterSystem>)> {
    vec![
        ("A2~", named::a2_tilde()),
        ("C2~", named::c2_tilde()),
        ("A1~xA1~", named::a1_tilde_squared()),
        ("D_inf", named::infinite_dihedral()),
        ("A2", named::a2()),
    ]
}

fn affine_systems() -> Vec<(&'static str, Arc<CoxeterSystem>)> {
    acceptance_systems().into_iter().filter(|(n, _)| *n != "A2").collect()
}

fn planar_systems() -> Vec<(&'static str, Arc<CoxeterSystem>)> {
    affine_systems().into_iter().filter(|(n, _)| *n != "D_inf").collect()
}

fn set(v: &[usize]) -> GeneratorSubset {
    GeneratorSubset::from_indices(v.iter().copied())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep_ok(name: &str, r: &SweepReport) -> Result<(), String> {
    ensure(r.pass, || format!("{name}: {} of {} failed, first {:?}", r.failures, r.checked, r.witnesses.first()))
}

fn realization(name: &str, sys: &Arc<CoxeterSystem>) -> Result<EuclideanRealization, String> {
    build_realization(sys).map_err(|e| format!("{name}: {e}"))
}

fn word_problem() -> Outcome {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, sys) in acceptance_systems() {
        let rep = GeometricRep::new(&sys.order_codes()).ok_or(format!("{name}: oracle rejects the matrix"))?;
        let lengths = rep.lengths(8);
        let b = ball(&sys, 8).map_err(|e| e.to_string())?;
        ensure(b.len() == lengths.len(), || {
            format!("{name}: ball has {} elements, oracle {}", b.len(), lengths.len())
        })?;
        let mut seen: HashSet<Mat> = HashSet::new();
        for w in &b {
            let m = rep.matrix_of(w.letters());
            ensure(lengths.get(&m) == Some(&w.length()), || format!("{name}: length of {w}"))?;
            ensure(seen.insert(m), || format!("{name}: {w} collides with another normal form"))?;
            checked += 1;
        }
        for _ in 0..2000 {
            let len = rng.gen_range(0..=16);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..sys.rank())).collect();
            let nf = normal_form(&sys, &Word(word.clone())).map_err(|e| e.to_string())?;
            let m = rep.matrix_of(&word);
            ensure(m == rep.matrix_of(nf.letters()), || format!("{name}: {word:?} reduces to another element"))?;
            if let Some(&l) = lengths.get(&m) {
                ensure(l == nf.length(), || format!("{name}: {word:?} has length {l}, got {}", nf.length()))?;
            }
        }
    }
    Ok(format!("{checked} ball elements and 10000 random words agree"))
}

fn coset_decompositions() -> Outcome {
    let mut checked = 0;
    for (name, sys) in acceptance_systems() {
        let b = ball(&sys, 6).map_err(|e| e.to_string())?;
        for t in GeneratorSubset::all(sys.rank()) {
            let sub = subgroup_ball(&sys, t, 6, 100_000).map_err(|e| e.to_string())?;
            for w in &b {
                let d = min_coset_rep(w, t).map_err(|e| e.to_string())?;
                let fail = |what: &str| format!("{name}: T={t}, w={w}: {what}");
                ensure(d.v.multiply(&d.x).map_err(|e| e.to_string())? == *w, || fail("v·x ≠ w"))?;
                ensure(d.v.support().is_subset(t), || fail("v ∉ W_T"))?;
                ensure(d.v.length() + d.x.length() == w.length(), || fail("lengths not additive"))?;
                for s in t.iter() {
                    let sx = d.x.generator_mul(s).map_err(|e| e.to_string())?;
                    ensure(sx.length() > d.x.length(), || fail("x has a left descent in T"))?;
                }
                // Brute force over u·w, u ∈ W_T with ℓ(u) ≤ ℓ(w) ≤ 6: the shortest is unique and is x.
                let mut best: Vec<Element> = Vec::new();
                for u in sub.iter().filter(|u| u.length() <= w.length()) {
                    let uw = u.multiply(w).map_err(|e| e.to_string())?;
                    match best.first().map(Element::length) {
                        Some(l) if uw.length() > l => {}
                        Some(l) if uw.length() == l => {
                            if !best.contains(&uw) {
                                best.push(uw)
                            }
                        }
                        _ => best = vec![uw],
                    }
                }
                ensure(best.len() == 1 && best[0] == d.x, || fail("brute-force minimum differs"))?;
                for v in &sub {
                    let vx = v.multiply(&d.x).map_err(|e| e.to_string())?;
                    ensure(vx.length() == v.length() + d.x.length(), || fail(&format!("ℓ(vx) ≠ ℓ(v)+ℓ(x) for v={v}")))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (w, T) pairs"))
}

fn random_system(rng: &mut ChaCha8Rng) -> Arc<CoxeterSystem> {
    const CODES: [u32; 6] = [2, 3, 4, 5, 6, 0];
    let rank = rng.gen_range(1..=4);
    let mut m = vec![vec![1u32; rank]; rank];
    for i in 0..rank {
        for j in i + 1..rank {
            let c = CODES[rng.gen_range(0..CODES.len())];
            m[i][j] = c;
            m[j][i] = c;
        }
    }
    CoxeterSystem::from_codes(&m).expect("valid matrix")
}

fn sphericity() -> Outcome {
    let mut systems: Vec<Arc<CoxeterSystem>> = acceptance_systems().into_iter().map(|(_, s)| s).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    systems.extend((0..200).map(|_| random_system(&mut rng)));
    let (mut subsets, mut spherical) = (0, 0);
    for sys in &systems {
        for t in GeneratorSubset::all(sys.rank()) {
            let r = sphericity_report(sys, t, SPHERICITY_BFS_CAP).map_err(|e| e.to_string())?;
            ensure(r.agree(), || {
                format!("{:?} on {t}: order {:?}, minors {:?}", sys.order_codes(), r.order, r.minors)
            })?;
            subsets += 1;
            spherical += r.order.is_some() as usize;
        }
    }
    Ok(format!("{subsets} subsets of {} systems, {spherical} spherical", systems.len()))
}

fn lemmas_0_and_1() -> Outcome {
    let mut pairs = 0;
    for (name, sys) in affine_systems() {
        let real = realization(name, &sys)?;
        for r in [sweep_lemma0(&real, 5), sweep_lemma1(&real, 5)] {
            let r = r.map_err(|e| e.to_string())?;
            sweep_ok(name, &r)?;
            pairs += r.checked;
        }
    }
    Ok(format!("{pairs} (w, s) checks at radius 5"))
}

fn lemmas_31_and_32() -> Outcome {
    let mut checked = 0;
    for (name, sys) in [("A2~", named::a2_tilde()), ("C2~", named::c2_tilde())] {
        let real = realization(name, &sys)?;
        for r in [sweep_lemma31(&real, 6), sweep_lemma32(&real, 6)] {
            let r = r.map_err(|e| e.to_string())?;
            sweep_ok(name, &r)?;
            checked += r.checked;
        }
    }
    Ok(format!("{checked} chamber intersections at radius 6"))
}

fn geodesic_galleries() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (name, sys) in planar_systems() {
        let real = realization(name, &sys)?;
        let r = sweep_geodesic(&real, 8, 0).map_err(|e| e.to_string())?;
        sweep_ok(name, &r)?;
        parts.push(format!(
            "{name} max d_H {:.4} ≤ diam {:.4}",
            r.summary["max_d_h"].as_f64().unwrap_or(f64::NAN),
            real.diam()
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.0} s"))?;
    Ok(format!("{} (tol {GEODESIC_TOL:e}, {secs:.1} s)", parts.join("; ")))
}

fn parabolic_regions() -> Outcome {
    let mut subsets = 0;
    for (name, sys) in affine_systems() {
        let real = realization(name, &sys)?;
        let proper: Vec<GeneratorSubset> =
            GeneratorSubset::all(sys.rank()).filter(|&t| t != sys.all_generators()).collect();
        let c = sweep_convexity(&real, &proper, 10_000, 6, 0).map_err(|e| e.to_string())?;
        sweep_ok(name, &c)?;
        let h = sweep_halfspace(&real, &proper, 6, 10_000, 0, 2.0 * real.diam()).map_err(|e| e.to_string())?;
        sweep_ok(name, &h)?;
        subsets += proper.len();
    }
    Ok(format!("{subsets} proper subsets, 10^4 midpoints and 10^4 box samples each"))
}

fn limit_sets() -> Outcome {
    let tol = 1e-2;
    let real = realization("A1~xA1~", &named::a1_tilde_squared())?;
    let strip = limit_directions(&real, set(&[0, 1]), 1000.0).map_err(|e| e.to_string())?;
    let dirs: Vec<Point> = strip.directions.iter().map(|d| Point::from_column_slice(d)).collect();
    let e1 = Point::from_column_slice(&[1.0, 0.0]);
    let near = |target: &Point| dirs.iter().filter(|d| d.dot(target).clamp(-1.0, 1.0).acos() <= tol).count();
    ensure(dirs.len() == 2 && near(&e1) == 1 && near(&-&e1) == 1, || {
        format!("strip directions {:?}", strip.directions)
    })?;

    for (name, sys) in planar_systems() {
        let real = realization(name, &sys)?;
        for t in GeneratorSubset::all(sys.rank()) {
            if t.len() < sys.rank() && sphericity_report(&sys, t, 10_000).map_err(|e| e.to_string())?.order.is_some() {
                let l = limit_directions(&real, t, 1000.0).map_err(|e| e.to_string())?;
                ensure(l.directions.is_empty(), || format!("{name}: spherical T={t} has directions"))?;
            }
        }
    }

    let real = realization("A2~", &named::a2_tilde())?;
    let full = limit_directions(&real, real.system().all_generators(), 1000.0).map_err(|e| e.to_string())?;
    let gap = full.max_gap_degrees.ok_or("no gap computed for A2~")?;
    ensure(gap < 5.0, || format!("A2~ max gap {gap:.2}°"))?;
    Ok(format!("strip gives ±e1, spherical T give none, A2~ max gap {gap:.2}°"))
}

fn corollary_checkers() -> Outcome {
    let a1a1 = named::a1_tilde_squared();
    let a2t = named::a2_tilde();
    let path = CoxeterSystem::from_codes(&[vec![1, 0, 2, 2], vec![0, 1, 3, 2], vec![2, 3, 1, 2], vec![2, 2, 2, 1]])
        .expect("valid matrix");
    let cross = CoxeterSystem::from_codes(&[vec![1, 0, 2], vec![0, 1, 2], vec![2, 2, 1]]).expect("valid matrix");
    let witness = CoxeterSystem::from_codes(&[vec![1, 3, 0], vec![3, 1, 3], vec![0, 3, 1]]).expect("valid matrix");
    let commuting = CoxeterSystem::uniform(3, coxwalls::Order::Finite(2));

    ensure(essential_subset(&a1a1, a1a1.all_generators()) == a1a1.all_generators(), || {
        "essential of S in A1~xA1~".into()
    })?;
    ensure(essential_subset(&a1a1, set(&[0, 1, 2])) == set(&[0, 1]), || "essential of {a,b,c}".into())?;
    ensure(essential_subset(&a2t, set(&[0, 1])).is_empty(), || "spherical T has empty essential part".into())?;

    ensure(splits_as_product(&a1a1, set(&[0, 1])), || "A1~xA1~ splits over {a,b}".into())?;
    ensure(splits_as_product(&a2t, set(&[0, 1])), || "A2~ splits over spherical {0,1}".into())?;
    ensure(!splits_as_product(&path, set(&[0, 1])), || "m(b,c) = 3 blocks the split".into())?;

    for (name, sys) in [("A2~", &a2t), ("A1~xA1~", &a1a1), ("cross", &cross)] {
        ensure(has_finite_index(sys, sys.all_generators()), || format!("{name}: T = S"))?;
    }
    for t in GeneratorSubset::all(3).filter(|t| t.len() < 3) {
        ensure(!has_finite_index(&a2t, t), || format!("A2~: proper T={t}"))?;
    }
    ensure(!has_finite_index(&a1a1, set(&[0, 1])), || "A1~xA1~: {a,b}".into())?;
    ensure(has_finite_index(&cross, set(&[0, 1])), || "cross: {a,b}".into())?;
    let counts = coset_rep_counts(&cross, set(&[0, 1]), 6).map_err(|e| e.to_string())?;
    ensure(counts.windows(2).any(|p| p[0] == p[1]) && counts[6] == 2, || format!("cross coset counts {counts:?}"))?;

    let w = cor17_hypothesis(&witness).ok_or("no witness on the rank-3 example")?;
    ensure(w.subset == set(&[0, 1]) && w.s0 == 2, || format!("witness {w:?}"))?;
    ensure(cor17_hypothesis(&a2t).is_none() && cor17_hypothesis(&commuting).is_none(), || "spurious witness".into())?;

    let dinf = named::infinite_dihedral();
    let ws = w_singleton_set(&dinf, 0, 6).map_err(|e| e.to_string())?;
    ensure(ws.len() == 6 && ws.iter().all(|w| w.letters().last() == Some(&0)), || format!("W^s = {ws:?}"))?;
    let a2 = named::a2();
    let ws_a2: Vec<Vec<usize>> =
        w_singleton_set(&a2, 0, 3).map_err(|e| e.to_string())?.iter().map(|w| w.letters().to_vec()).collect();
    ensure(ws_a2 == vec![vec![0], vec![1, 0]], || format!("A2 W^s = {ws_a2:?}"))?;
    let q = quasi_density_profile(&dinf, &ws, 6).map_err(|e| e.to_string())?;
    ensure(q.worst_distance == 1, || format!("D_inf N = {}", q.worst_distance))?;
    Ok("essential, split, finite-index, maximal-spherical witness and D_inf N = 1".into())
}

fn systems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["coxwalls"];
    argv.extend_from_slice(args);
    let code = coxwalls_cli::run_with(argv, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a2t = systems_dir().join("a2t.cox");
    let c2t = systems_dir().join("c2t.cox");
    let (a2t, c2t) = (a2t.to_str().unwrap(), c2t.to_str().unwrap());
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", "convexity", "--system", a2t, "--trials", "2000", "--seed", "11"],
        vec!["verify", "halfspace", "--system", c2t, "--trials", "2000", "--seed", "3"],
        vec!["verify", "geodesic", "--system", c2t, "--radius", "6", "--seed", "5"],
        vec!["ball", "--system", a2t, "--radius", "5"],
    ];
    for args in &runs {
        let (c1, a) = cli(args);
        let (c2, b) = cli(args);
        ensure(c1 == 0 && c2 == 0, || format!("{args:?} exited {c1}/{c2}"))?;
        ensure(a == b, || format!("{args:?} output differs"))?;
    }
    let mut svgs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("tiling{i}.svg"));
        let p = path.to_str().unwrap().to_string();
        let (code, report) = cli(&[
            "tiling-svg",
            "--system",
            a2t,
            "--radius",
            "5",
            "--subset",
            "0,1",
            "--word",
            "0,1,2,0,1,2",
            "--seed",
            "9",
            "--out",
            &p,
        ]);
        ensure(code == 0, || format!("tiling-svg exited {code}"))?;
        svgs.push((std::fs::read(&path).map_err(|e| e.to_string())?, report));
    }
    ensure(svgs[0] == svgs[1], || "SVG or its report differs between runs".into())?;
    Ok(format!("{} JSON runs and one SVG byte-identical across repeats", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("word problem agrees with the matrix oracle on radius-8 balls", word_problem),
        ("coset decompositions on radius-6 balls, all subsets", coset_decompositions),
        ("sphericity by enumeration and by the cosine form", sphericity),
        ("wall sides and reflected walls on radius-5 balls", lemmas_0_and_1),
        ("chamber intersections on radius-6 balls", lemmas_31_and_32),
        ("gallery within diam of the geodesic on radius-8 balls", geodesic_galleries),
        ("convexity and half-space description of W_T chambers", parabolic_regions),
        ("limit directions", limit_sets),
        ("corollary checkers on the hand-built examples", corollary_checkers),
        ("determinism of JSON and SVG output", determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} [{secs:.1} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
