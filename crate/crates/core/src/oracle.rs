//! Brute-force counterparts of the structural formulas.
//!
//! Nothing here uses descent sets or the lifting recursion: Bruhat order comes
//! from the subword property, coset representatives from closing orbits under
//! multiplication, and minimality from comparing lengths across whole cosets.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::atlas::{conjugates_onto, moduli_dimension, Atlas};
use crate::coxeter::{TypeSubset, WeylElement, WeylGroup};
use crate::error::Result;
use crate::galois::GaloisData;
use crate::parabolic::ell_jk;

/// All products of subwords of a fixed reduced word of `w`, i.e. the lower
/// Bruhat interval of `w`.
pub fn subword_products(group: &WeylGroup, w: &WeylElement) -> HashSet<WeylElement> {
    let mut products: HashSet<WeylElement> = HashSet::from([group.identity()]);
    for s in group.reduced_word(w) {
        let extended: Vec<WeylElement> = products.iter().map(|v| group.right_mul_simple(v, s)).collect();
        products.extend(extended);
    }
    products
}

pub fn brute_bruhat(group: &WeylGroup, x: &WeylElement, w: &WeylElement) -> bool {
    subword_products(group, w).contains(x)
}

/// Subword comparison with the lower intervals cached per upper element.
pub struct BruhatOracle<'a> {
    group: &'a WeylGroup,
    intervals: HashMap<WeylElement, HashSet<WeylElement>>,
}

impl<'a> BruhatOracle<'a> {
    pub fn new(group: &'a WeylGroup) -> Self {
        BruhatOracle {
            group,
            intervals: HashMap::new(),
        }
    }

    pub fn leq(&mut self, x: &WeylElement, w: &WeylElement) -> bool {
        let group = self.group;
        self.intervals
            .entry(w.clone())
            .or_insert_with(|| subword_products(group, w))
            .contains(x)
    }
}

/// Closure of `{w}` under left multiplication by `J` and right by `K`.
fn double_coset(group: &WeylGroup, w: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> Vec<WeylElement> {
    let mut seen: HashSet<WeylElement> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        let left = j.iter().map(|s| group.left_mul_simple(s, &v));
        let right = k.iter().map(|s| group.right_mul_simple(&v, s));
        for u in left.chain(right).collect::<Vec<_>>() {
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every double coset `W_J w W_K` together with its shortest elements.
pub fn brute_double_cosets(
    group: &WeylGroup,
    j: &TypeSubset,
    k: &TypeSubset,
    bound: u64,
) -> Result<Vec<(Vec<WeylElement>, Vec<WeylElement>)>> {
    let mut assigned: HashSet<WeylElement> = HashSet::new();
    let mut cosets = Vec::new();
    for w in group.elements(bound)? {
        if assigned.contains(w) {
            continue;
        }
        let coset = double_coset(group, w, j, k);
        assigned.extend(coset.iter().cloned());
        let min = coset.iter().map(|v| v.length()).min().expect("coset contains w");
        let shortest = coset.iter().filter(|v| v.length() == min).cloned().collect();
        cosets.push((shortest, coset));
    }
    Ok(cosets)
}

/// `w` is no longer than anything in `W_J w`, checked against all of `W_J`.
pub fn brute_min_left(group: &WeylGroup, w: &WeylElement, parabolic_j: &[WeylElement]) -> bool {
    parabolic_j.iter().all(|u| group.compose(u, w).length() >= w.length())
}

/// `^J W` by comparing lengths across cosets.
pub fn brute_left_reps(group: &WeylGroup, j: &TypeSubset, bound: u64) -> Result<Vec<WeylElement>> {
    let wj = group.parabolic_subgroup(j, bound)?;
    Ok(group
        .elements(bound)?
        .iter()
        .filter(|w| brute_min_left(group, w, &wj))
        .cloned()
        .collect())
}

/// The shortest element of `w W_K`.
pub fn brute_pi(group: &WeylGroup, w: &WeylElement, k: &TypeSubset, bound: u64) -> Result<WeylElement> {
    Ok(group
        .parabolic_subgroup(k, bound)?
        .iter()
        .map(|v| group.compose(w, v))
        .min_by_key(|v| v.length())
        .expect("W_K contains e"))
}

/// `^J W ∩ x W_K`, sorted by length then reduced word.
pub fn brute_eo_fiber(
    group: &WeylGroup,
    x: &WeylElement,
    parabolic_j: &[WeylElement],
    parabolic_k: &[WeylElement],
) -> Vec<WeylElement> {
    let mut fiber: Vec<WeylElement> = parabolic_k
        .iter()
        .map(|v| group.compose(x, v))
        .filter(|w| brute_min_left(group, w, parabolic_j))
        .collect();
    fiber.sort_by_cached_key(|w| (w.length(), group.reduced_word(w)));
    fiber
}

/// `x^{J,K}` as the longest element of `^J W ∩ x W_K`.
pub fn brute_x_upper(
    group: &WeylGroup,
    x: &WeylElement,
    parabolic_j: &[WeylElement],
    parabolic_k: &[WeylElement],
) -> WeylElement {
    brute_eo_fiber(group, x, parabolic_j, parabolic_k)
        .pop()
        .expect("x lies in its own fiber")
}

/// `{ k in K : x(alpha_k) is a simple root alpha_j with j in J }`.
pub fn brute_induced_subset(group: &WeylGroup, x: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> TypeSubset {
    let images = group.simple_root_images(x);
    k.iter()
        .filter(|&node| {
            let image = &images[node];
            j.iter().any(|target| {
                image
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == i32::from(i == target))
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub scope: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {:<28} {}\n", c.name, c.scope));
            if let Some(cx) = &c.counterexample {
                out.push_str(&format!("      counterexample: {cx}\n"));
            }
        }
        out
    }

    fn push(&mut self, name: &'static str, scope: &str, counterexample: Option<String>) {
        self.checks.push(Check {
            name,
            scope: scope.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }
}

fn first<I: IntoIterator<Item = String>>(it: I) -> Option<String> {
    it.into_iter().next()
}

/// Recomputes every field of the atlas by brute force and compares.
pub fn verify_atlas(atlas: &Atlas) -> Result<VerificationReport> {
    let group = atlas.group();
    let bound = atlas.case.options.element_bound;
    let (j, k) = (&atlas.j, &atlas.k);
    let scope = format!("{} J={} K={}", group.spec(), j, k);
    let word = |w: &WeylElement| group.word_string(w);
    let mut report = VerificationReport::default();

    let wj = group.parabolic_subgroup(j, bound)?;
    let wk = group.parabolic_subgroup(k, bound)?;
    let cosets = brute_double_cosets(group, j, k, bound)?;
    let members: Vec<&WeylElement> = atlas.strata.iter().flat_map(|s| s.orbit.iter()).collect();
    let member_set: HashSet<&WeylElement> = members.iter().copied().collect();

    // Double coset representatives.
    report.push(
        "double-coset-representatives",
        &scope,
        first(
            cosets
                .iter()
                .filter(|(shortest, _)| shortest.len() != 1 || !member_set.contains(&shortest[0]))
                .map(|(shortest, _)| format!("coset with shortest elements {:?}", shortest.iter().map(word).collect::<Vec<_>>()))
                .chain((members.len() != cosets.len() || member_set.len() != members.len()).then(|| {
                    format!("{} orbit members but {} double cosets", members.len(), cosets.len())
                })),
        ),
    );

    // Frobenius orbits: closed, cyclic, and the representative comes first.
    let generator = GaloisData::new(atlas.case.phi.clone(), j.clone())?.generator();
    report.push(
        "galois-orbits",
        &scope,
        first(atlas.strata.iter().filter_map(|s| {
            let orbit: HashSet<&WeylElement> = s.orbit.iter().collect();
            let mut cycle = vec![s.rep.clone()];
            let mut next = group.apply_automorphism(&generator, &s.rep);
            while next != s.rep && cycle.len() <= s.orbit.len() {
                cycle.push(next.clone());
                next = group.apply_automorphism(&generator, &next);
            }
            let cycle_set: HashSet<&WeylElement> = cycle.iter().collect();
            let smallest = s.orbit.iter().min_by_key(|w| (w.length(), group.reduced_word(w)));
            (cycle_set != orbit || smallest != Some(&s.rep)).then(|| format!("orbit of {}", word(&s.rep)))
        })),
    );

    // EO fibers and the partition of ^J W.
    let left = brute_left_reps(group, j, bound)?;
    let mut covered: HashMap<WeylElement, usize> = HashMap::new();
    let mut fiber_mismatch = None;
    let mut dims = Vec::with_capacity(atlas.strata.len());
    for s in &atlas.strata {
        let mut orbit_dims = HashSet::new();
        for x in &s.orbit {
            let fiber = brute_eo_fiber(group, x, &wj, &wk);
            orbit_dims.insert(fiber.last().expect("non-empty").length());
            for w in &fiber {
                *covered.entry(w.clone()).or_default() += 1;
            }
            if x == &s.rep {
                let recorded: Vec<&WeylElement> = s.eo_fiber.iter().map(|(w, _)| w).collect();
                let lengths_ok = s.eo_fiber.iter().all(|(w, l)| w.length() == *l);
                if recorded != fiber.iter().collect::<Vec<_>>() || !lengths_ok {
                    fiber_mismatch.get_or_insert_with(|| format!("fiber of {}", word(x)));
                }
            }
        }
        dims.push(orbit_dims);
    }
    let partition_error = left
        .iter()
        .find(|w| covered.get(*w) != Some(&1))
        .map(|w| format!("{} is covered {} times", word(w), covered.get(w).copied().unwrap_or(0)))
        .or_else(|| (covered.len() != left.len()).then(|| "fiber outside ^J W".to_string()));
    report.push("eo-fibers", &scope, fiber_mismatch);
    report.push("eo-partition", &scope, partition_error);

    // Dimensions: longest element of the fiber, the closed formula, and
    // constancy along the orbit.
    let mut dim_error = None;
    for (s, orbit_dims) in atlas.strata.iter().zip(&dims) {
        let upper = brute_x_upper(group, &s.rep, &wj, &wk);
        let formula = ell_jk(group, &s.rep, j, k)?;
        if orbit_dims.len() != 1 || upper.length() != s.dim || formula != s.dim || upper != s.upper {
            dim_error.get_or_insert_with(|| {
                format!(
                    "{}: recorded {}, longest fiber element {} of length {}, formula {}",
                    word(&s.rep),
                    s.dim,
                    word(&upper),
                    upper.length(),
                    formula
                )
            });
        }
    }
    report.push("dimension", &scope, dim_error);

    // Unique maximal stratum of full dimension.
    let full = left.iter().map(|w| w.length()).max().expect("e lies in ^J W");
    let top_length = cosets.iter().map(|(s, _)| s[0].length()).max().expect("non-empty");
    let tops: Vec<&WeylElement> = cosets.iter().map(|(s, _)| &s[0]).filter(|w| w.length() == top_length).collect();
    let maximal: Vec<_> = atlas.strata.iter().filter(|s| s.is_maximal).collect();
    let max_error = if tops.len() != 1 || maximal.len() != 1 {
        Some(format!("{} longest representatives, {} maximal strata", tops.len(), maximal.len()))
    } else if &maximal[0].rep != tops[0] || maximal[0].dim != full || atlas.moduli_dim != full {
        Some(format!(
            "maximal stratum {} has dimension {} but ^J W reaches {full}",
            word(&maximal[0].rep),
            maximal[0].dim
        ))
    } else {
        None
    };
    report.push("maximal-stratum", &scope, max_error);

    // Single EO stratum exactly when x^{-1} J x = K.
    report.push(
        "single-eo",
        &scope,
        first(atlas.strata.iter().filter_map(|s| {
            let brute = brute_eo_fiber(group, &s.rep, &wj, &wk).len() == 1;
            let conj = conjugates_onto(group, &s.rep, j, k);
            let roots = brute_induced_subset(group, &s.rep, j, k) == *k && j.len() == k.len();
            (brute != s.single_eo || conj != brute || roots != brute)
                .then(|| format!("{}: fiber {brute}, conjugation {conj}, roots {roots}", word(&s.rep)))
        })),
    );

    // Closure relations from the subword property.
    let mut oracle = BruhatOracle::new(group);
    let n = atlas.strata.len();
    let relation: Vec<Vec<bool>> = atlas
        .strata
        .iter()
        .map(|lower| {
            atlas
                .strata
                .iter()
                .map(|upper| lower.orbit.iter().any(|y| upper.orbit.iter().any(|z| oracle.leq(y, z))))
                .collect()
        })
        .collect();
    let mut closure_error = None;
    for (b, stratum) in atlas.strata.iter().enumerate() {
        let expected: Vec<usize> = (0..n).filter(|&a| relation[a][b]).collect();
        if stratum.closure != expected || atlas.orbit_poset.below(b) != expected {
            closure_error.get_or_insert_with(|| {
                format!("closure of {}: recorded {:?}, expected {expected:?}", word(&stratum.rep), stratum.closure)
            });
        }
    }
    report.push("closure", &scope, closure_error);
    report.push(
        "antisymmetry",
        &scope,
        first(
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && relation[a][b] && relation[b][a])
                .map(|(a, b)| format!("strata {a} and {b}")),
        ),
    );

    // Codimension.
    let expected_moduli = moduli_dimension(group, j);
    report.push(
        "codimension",
        &scope,
        first(
            atlas
                .strata
                .iter()
                .filter(|s| s.dim + s.codim != expected_moduli)
                .map(|s| format!("{}: dim {} codim {}", word(&s.rep), s.dim, s.codim)),
        ),
    );

    // The generic stratum is a single EO stratum exactly when phi(J) = J.
    let verdict = j.image(&atlas.case.phi) == *j;
    let mu_error = match maximal.first() {
        Some(top) if top.single_eo != verdict || atlas.mu_ordinary.verdict() != verdict => Some(format!(
            "phi(J) = J is {verdict}, recorded {}, generic stratum single-EO {}",
            atlas.mu_ordinary.verdict(),
            top.single_eo
        )),
        _ => None,
    };
    report.push("mu-ordinary", &scope, mu_error);

    Ok(report)
}
