//! Exact acceptance criteria. Runs as a plain binary and prints one line per
//! criterion; exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bruhat_strata::atlas::{
    build_atlas, conjugates_onto, derive_k, eo_fiber, moduli_dimension, siegel_dimension, siegel_identify,
    CaseOptions, ParabolicInput, PelCase,
};
use bruhat_strata::io::{preset, standard_presets};
use bruhat_strata::oracle::{brute_double_cosets, verify_atlas, BruhatOracle};
use bruhat_strata::parabolic::{ell_jk, induced_subset, is_min_left, min_double_reps, min_left_reps, x_lower};
use bruhat_strata::root_data::validate_automorphism;
use bruhat_strata::{DiagramAutomorphism, TypeSubset, WeylElement, WeylGroup};
use itertools::Itertools;

const MATRIX: [&str; 15] = [
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "A1xA1", "A2xA2", "C2xC2",
];
const ALL_PAIRS_LIMIT: u128 = 384;
const BOUND: u64 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Fixture {
    groups: Vec<(String, WeylGroup)>,
    automorphisms: HashMap<String, Vec<DiagramAutomorphism>>,
}

impl Fixture {
    fn new() -> Self {
        let groups: Vec<(String, WeylGroup)> = MATRIX
            .iter()
            .map(|s| (s.to_string(), WeylGroup::new(&s.parse().unwrap()).unwrap()))
            .collect();
        let automorphisms = groups
            .iter()
            .map(|(name, g)| {
                let autos = (0..g.rank())
                    .permutations(g.rank())
                    .filter_map(|p| validate_automorphism(&p, g.cartan()).ok())
                    .collect();
                (name.clone(), autos)
            })
            .collect();
        Fixture { groups, automorphisms }
    }

    /// All `(J, K)` for small groups; for larger ones every `J` with the `K`
    /// that a Frobenius of the diagram assigns to it.
    fn pairs(&self, name: &str, g: &WeylGroup) -> Vec<(TypeSubset, TypeSubset)> {
        let subsets = TypeSubset::all(g.rank());
        if g.order() <= ALL_PAIRS_LIMIT {
            return subsets.iter().cartesian_product(subsets.iter()).map(|(j, k)| (j.clone(), k.clone())).collect();
        }
        let mut pairs: Vec<(TypeSubset, TypeSubset)> = subsets
            .iter()
            .flat_map(|j| self.automorphisms[name].iter().map(move |phi| (j.clone(), derive_k(g, j, phi))))
            .collect();
        pairs.sort_by_key(|(j, k)| (j.to_vec(), k.to_vec()));
        pairs.dedup();
        pairs
    }

    fn matrix_cases(&self) -> Vec<PelCase> {
        let mut cases = Vec::new();
        for (name, g) in &self.groups {
            for j in TypeSubset::all(g.rank()) {
                for phi in &self.automorphisms[name] {
                    cases.push(
                        PelCase::new(
                            g.spec().clone(),
                            Some(phi.permutation().to_vec()),
                            ParabolicInput::Subset(j.clone()),
                            CaseOptions::default(),
                        )
                        .unwrap(),
                    );
                }
            }
        }
        cases
    }
}

fn word(g: &WeylGroup, w: &WeylElement) -> String {
    g.word_string(w)
}

fn siegel_dimensions() -> Outcome {
    let start = Instant::now();
    for g in 1..=5 {
        let id = siegel_identify(g).map_err(|e| format!("g = {g}: {e}"))?;
        let atlas = &id.atlas;
        if atlas.strata.len() != g + 1 {
            return Err(format!("g = {g}: {} strata", atlas.strata.len()));
        }
        let mut dims: Vec<usize> = atlas.strata.iter().map(|s| s.dim).collect();
        let mut expected: Vec<usize> = (0..=g).map(|i| (g * (g + 1) - i * (i + 1)) / 2).collect();
        dims.sort_unstable();
        expected.sort_unstable();
        if dims != expected {
            return Err(format!("g = {g}: dims {dims:?}, expected {expected:?}"));
        }
        for a in &atlas.strata {
            for b in &atlas.strata {
                let leq = atlas.group().bruhat_leq(&a.rep, &b.rep);
                if leq != (a.siegel_a >= b.siegel_a) || atlas.orbit_poset.leq(a.id, b.id) != leq {
                    return Err(format!("g = {g}: order reversal fails at strata {} and {}", a.id, b.id));
                }
            }
        }
        if atlas.maximal().dim != g * (g + 1) / 2 || siegel_dimension(g, 0) != g * (g + 1) / 2 {
            return Err(format!("g = {g}: top dimension {}", atlas.maximal().dim));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("g = 1..5 in {elapsed:.2?}"))
}

fn howlett_lengths(fx: &Fixture) -> Outcome {
    let mut checked = 0usize;
    for (name, g) in &fx.groups {
        for (j, k) in fx.pairs(name, g) {
            for x in min_double_reps(g, &j, &k, BOUND).map_err(|e| e.to_string())? {
                let lower = x_lower(g, &x, &j, &k).map_err(|e| e.to_string())?;
                let product = g.multiply(&x, &lower).map_err(|e| e.to_string())?;
                let formula = ell_jk(g, &x, &j, &k).map_err(|e| e.to_string())?;
                if formula != product.length() || product.length() != x.length() + lower.length() {
                    return Err(format!(
                        "{name} J={j} K={k} x={}: formula {formula}, l(x x_JK) = {}",
                        word(g, &x),
                        product.length()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} representatives"))
}

fn eo_partition(fx: &Fixture) -> Outcome {
    let mut cases = 0usize;
    for (name, g) in &fx.groups {
        for (j, k) in fx.pairs(name, g) {
            let scope = format!("{name} J={j} K={k}");
            let left = min_left_reps(g, &j, BOUND).map_err(|e| e.to_string())?;
            let wk = g.parabolic_subgroup(&k, BOUND).map_err(|e| e.to_string())?;
            let mut covered: HashMap<WeylElement, usize> = HashMap::new();
            for x in min_double_reps(g, &j, &k, BOUND).map_err(|e| e.to_string())? {
                let jx = induced_subset(g, &x, &j, &k).map_err(|e| e.to_string())?;
                let mut fiber = Vec::new();
                for y in wk.iter().filter(|y| is_min_left(g, y, &jx)) {
                    let xy = g.multiply(&x, y).map_err(|e| e.to_string())?;
                    if xy.length() != x.length() + y.length() {
                        return Err(format!("{scope}: l(xy) != l(x) + l(y) at x={} y={}", word(g, &x), word(g, y)));
                    }
                    *covered.entry(xy.clone()).or_default() += 1;
                    fiber.push(xy);
                }
                let mut library = eo_fiber(g, &x, &j, &k, BOUND).map_err(|e| e.to_string())?;
                fiber.sort();
                library.sort();
                if fiber != library {
                    return Err(format!("{scope}: eo_fiber disagrees at x={}", word(g, &x)));
                }
            }
            if covered.len() != left.len() || left.iter().any(|w| covered.get(w) != Some(&1)) {
                return Err(format!("{scope}: fibers do not partition ^J W"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (J, K) pairs"))
}

fn single_eo(fx: &Fixture) -> Outcome {
    let mut checked = 0usize;
    for (name, g) in &fx.groups {
        for (j, k) in fx.pairs(name, g).into_iter().filter(|(j, k)| j.len() == k.len()) {
            for x in min_double_reps(g, &j, &k, BOUND).map_err(|e| e.to_string())? {
                let fiber = eo_fiber(g, &x, &j, &k, BOUND).map_err(|e| e.to_string())?;
                if (fiber.len() == 1) != conjugates_onto(g, &x, &j, &k) {
                    return Err(format!("{name} J={j} K={k} x={}: fiber size {}", word(g, &x), fiber.len()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} representatives with |J| = |K|"))
}

fn maximal_stratum(fx: &Fixture) -> Outcome {
    let mut cases = fx.matrix_cases();
    cases.extend(standard_presets().iter().map(|p| preset(p).unwrap()));
    for case in &cases {
        let atlas = build_atlas(case).map_err(|e| e.to_string())?;
        let scope = format!("{} phi={:?} J={}", case.spec, case.phi.permutation(), atlas.j);
        let maximal: Vec<_> = atlas.strata.iter().filter(|s| s.is_maximal).collect();
        if maximal.len() != 1 {
            return Err(format!("{scope}: {} maximal strata", maximal.len()));
        }
        let top = maximal[0];
        let all: Vec<usize> = (0..atlas.strata.len()).collect();
        if top.orbit.len() != 1
            || top.dim != moduli_dimension(atlas.group(), &atlas.j)
            || atlas.closure_set(top.id).map_err(|e| e.to_string())? != all
        {
            return Err(format!("{scope}: maximal stratum {} fails", top.id));
        }
    }
    Ok(format!("{} atlases", cases.len()))
}

fn mu_ordinary() -> Outcome {
    let mut count = 0;
    for name in standard_presets().iter().filter(|p| p.starts_with("siegel") || p.ends_with("split")) {
        let atlas = build_atlas(&preset(name).unwrap()).map_err(|e| e.to_string())?;
        if !atlas.mu_ordinary.verdict() || !atlas.maximal().single_eo {
            return Err(format!("{name} is not mu-ordinary"));
        }
        count += 1;
    }
    let atlas = build_atlas(&preset("gu:1,2:inert").unwrap()).map_err(|e| e.to_string())?;
    let lengths: Vec<usize> = atlas.maximal().eo_fiber.iter().map(|(_, l)| *l).collect();
    if atlas.j.to_vec() != vec![1] || atlas.mu_ordinary.verdict() || atlas.degree != 2 || lengths != vec![1, 2] {
        return Err(format!(
            "GU(2,1) inert: J={} mu_ordinary={} degree={} top EO lengths {lengths:?}",
            atlas.j,
            atlas.mu_ordinary.verdict(),
            atlas.degree
        ));
    }
    Ok(format!("{count} ordinary presets; GU(2,1) inert not ordinary, d = 2, top EO lengths {{1,2}}"))
}

fn hilbert() -> Outcome {
    let atlas = build_atlas(&preset("hilbert:2").unwrap()).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = atlas.strata.iter().map(|s| s.dim).collect();
    let chain = atlas.orbit_poset.hasse_edges() == vec![(0, 1), (1, 2)];
    let ok = dims == vec![0, 1, 2]
        && chain
        && atlas.strata.iter().all(|s| s.single_eo)
        && atlas.degree == 1
        && atlas.mu_ordinary.verdict()
        && atlas.j.is_empty();
    if ok {
        Ok("3 strata, dims 0 < 1 < 2".into())
    } else {
        Err(format!("dims {dims:?}, chain {chain}, degree {}", atlas.degree))
    }
}

fn oracle_equivalence(fx: &Fixture) -> Outcome {
    let mut pairs = 0usize;
    for (name, g) in &fx.groups {
        let all = g.elements(BOUND).map_err(|e| e.to_string())?;
        let mut oracle = BruhatOracle::new(g);
        for x in all {
            for w in all {
                if g.bruhat_leq(x, w) != oracle.leq(x, w) {
                    return Err(format!("{name}: bruhat order disagrees at ({}, {})", word(g, x), word(g, w)));
                }
                pairs += 1;
            }
        }
        for (j, k) in fx.pairs(name, g) {
            let brute = brute_double_cosets(g, &j, &k, BOUND).map_err(|e| e.to_string())?;
            if brute.iter().any(|(shortest, _)| shortest.len() != 1) {
                return Err(format!("{name} J={j} K={k}: a double coset has several shortest elements"));
            }
            let mut expected: Vec<WeylElement> = brute.into_iter().map(|(s, _)| s[0].clone()).collect();
            let mut found = min_double_reps(g, &j, &k, BOUND).map_err(|e| e.to_string())?;
            expected.sort();
            found.sort();
            if expected != found {
                return Err(format!("{name} J={j} K={k}: double coset representatives disagree"));
            }
        }
    }
    let presets = standard_presets();
    for name in &presets {
        let atlas = build_atlas(&preset(name).unwrap()).map_err(|e| e.to_string())?;
        let report = verify_atlas(&atlas).map_err(|e| e.to_string())?;
        let failure = report.failures().next().map(|f| format!("{name}: {} failed: {:?}", f.name, f.counterexample));
        if let Some(failure) = failure {
            return Err(failure);
        }
    }
    Ok(format!("{pairs} element pairs, {} presets verified", presets.len()))
}

fn poset_sanity(fx: &Fixture) -> Outcome {
    let mut checked = 0usize;
    for (name, g) in &fx.groups {
        let all = g.elements(BOUND).map_err(|e| e.to_string())?;
        for phi in fx.automorphisms[name].iter().filter(|p| !p.is_identity()) {
            let images: Vec<WeylElement> = all.iter().map(|w| g.apply_automorphism(phi, w)).collect();
            for (x, px) in all.iter().zip(&images) {
                if px.length() != x.length() {
                    return Err(format!("{name}: phi={:?} changes the length of {}", phi.permutation(), word(g, x)));
                }
                for (w, pw) in all.iter().zip(&images) {
                    if g.bruhat_leq(x, w) != g.bruhat_leq(px, pw) {
                        return Err(format!(
                            "{name}: phi={:?} breaks ({}, {})",
                            phi.permutation(),
                            word(g, x),
                            word(g, w)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    let presets = standard_presets();
    for name in &presets {
        let atlas = build_atlas(&preset(name).unwrap()).map_err(|e| e.to_string())?;
        atlas.orbit_poset.check_partial_order().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{checked} pairs under non-trivial automorphisms, {} orbit posets", presets.len()))
}

fn main() {
    let suite_start = Instant::now();
    let fx = Fixture::new();
    let criteria: Vec<Criterion> = vec![
        ("Siegel dimension formula", Box::new(siegel_dimensions)),
        ("Howlett length consistency", Box::new(|| howlett_lengths(&fx))),
        ("EO fiber partition", Box::new(|| eo_partition(&fx))),
        ("single-EO criterion", Box::new(|| single_eo(&fx))),
        ("maximal stratum", Box::new(|| maximal_stratum(&fx))),
        ("mu-ordinarity verdicts", Box::new(mu_ordinary)),
        ("Hilbert preset", Box::new(hilbert)),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&fx))),
        ("poset sanity", Box::new(|| poset_sanity(&fx))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let (status, detail) = match outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!("criterion {} {status} {name}: {detail} [{:.2?}]", i + 1, start.elapsed());
    }
    let total = suite_start.elapsed();
    println!("acceptance: {} of {} criteria passed in {total:.2?}", criteria.len() - failed, criteria.len());
    if failed > 0 || total > Duration::from_secs(300) {
        std::process::exit(1);
    }
}
