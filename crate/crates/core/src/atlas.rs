//! Assembly of the stratification atlas of a PEL-type case.
//!
//! The Bruhat strata are indexed by Frobenius orbits on `^J W^K`, where `J`
//! is the type cut out by the cocharacter and `K = phi(J)^opp`. A stratum
//! `[x]` has dimension `l(x^{J,K})`, its closure is the union of the strata
//! below it in the induced Bruhat order, and it is the union of the
//! Ekedahl-Oort strata `x y` with `y` in `^{J_x} W_K`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::coxeter::{format_word, TypeSubset, WeylElement, WeylGroup, DEFAULT_ELEMENT_BOUND};
use crate::error::{Error, Result};
use crate::galois::{galois_orbits, orbit_poset, GaloisData, OrbitPoset};
use crate::parabolic::{ell_jk, induced_subset, is_min_left, min_double_reps, x_upper};
use crate::root_data::{
    pairing, validate_automorphism, DiagramAutomorphism, DynkinSpec, Factor, FactorType,
    PositiveRootTable,
};

/// A dominant cocharacter, through its pairings `m_i = <mu, alpha_i>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CocharSpec {
    pairings: Vec<u32>,
}

impl CocharSpec {
    pub fn new(pairings: Vec<u32>) -> Self {
        CocharSpec { pairings }
    }

    /// Rejects negative pairings (non-dominant input).
    pub fn from_signed(pairings: &[i64]) -> Result<Self> {
        let pairings = pairings
            .iter()
            .enumerate()
            .map(|(node, &value)| u32::try_from(value).map_err(|_| Error::NotDominant { node, value }))
            .collect::<Result<Vec<_>>>()?;
        Ok(CocharSpec { pairings })
    }

    pub fn pairings(&self) -> &[u32] {
        &self.pairings
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParabolicInput {
    Cocharacter(CocharSpec),
    Subset(TypeSubset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseOptions {
    pub minuscule_check: bool,
    pub element_bound: u64,
}

impl Default for CaseOptions {
    fn default() -> Self {
        CaseOptions {
            minuscule_check: true,
            element_bound: DEFAULT_ELEMENT_BOUND,
        }
    }
}

/// One unit of work: a Dynkin diagram, its Frobenius, and `mu` or `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PelCase {
    pub spec: DynkinSpec,
    pub phi: DiagramAutomorphism,
    pub parabolic: ParabolicInput,
    pub options: CaseOptions,
}

impl PelCase {
    /// Validates the permutation against the Cartan matrix and the sizes of
    /// `mu` or `J` against the rank. A missing permutation means the identity.
    pub fn new(
        spec: DynkinSpec,
        permutation: Option<Vec<usize>>,
        parabolic: ParabolicInput,
        options: CaseOptions,
    ) -> Result<Self> {
        let cartan = crate::root_data::cartan_from_spec(&spec)?;
        let n = spec.rank();
        let phi = match permutation {
            Some(perm) => validate_automorphism(&perm, &cartan)?,
            None => DiagramAutomorphism::identity(n),
        };
        match &parabolic {
            ParabolicInput::Cocharacter(mu) if mu.pairings().len() != n => {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: mu.pairings().len(),
                })
            }
            ParabolicInput::Subset(j) => {
                TypeSubset::checked(j.iter(), n)?;
            }
            _ => {}
        }
        Ok(PelCase { spec, phi, parabolic, options })
    }
}

/// Positive roots pairing outside `{0, 1}` with `mu`, first one found.
pub fn minuscule_violation(mu: &CocharSpec, roots: &PositiveRootTable) -> Result<Option<(Vec<i32>, i64)>> {
    for root in roots.roots() {
        let value = pairing(mu, root)?;
        if value > 1 {
            return Ok(Some((root.clone(), value)));
        }
    }
    Ok(None)
}

/// `J = { i : <mu, alpha_i> = 0 }`.
pub fn derive_j(mu: &CocharSpec, roots: &PositiveRootTable, check_minuscule: bool) -> Result<TypeSubset> {
    if check_minuscule {
        if let Some((root, value)) = minuscule_violation(mu, roots)? {
            return Err(Error::NotMinuscule { root, value });
        }
    }
    Ok(mu
        .pairings()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m == 0)
        .map(|(i, _)| i)
        .collect())
}

/// `K = phi(J)^opp`.
pub fn derive_k(group: &WeylGroup, j: &TypeSubset, phi: &DiagramAutomorphism) -> TypeSubset {
    group.opposition(&j.image(phi))
}

/// `{ x y : y in ^{J_x} W_K }`, sorted by length then reduced word.
pub fn eo_fiber(
    group: &WeylGroup,
    x: &WeylElement,
    j: &TypeSubset,
    k: &TypeSubset,
    bound: u64,
) -> Result<Vec<WeylElement>> {
    let jx = induced_subset(group, x, j, k)?;
    let mut fiber = Vec::new();
    for y in group.parabolic_subgroup(k, bound)? {
        if !is_min_left(group, &y, &jx) {
            continue;
        }
        let xy = group.compose(x, &y);
        if xy.length() != x.length() + y.length() {
            return Err(Error::Internal(format!(
                "l(xy) != l(x) + l(y) for x = {}, y = {}",
                group.word_string(x),
                group.word_string(&y)
            )));
        }
        fiber.push(xy);
    }
    fiber.sort_by_cached_key(|w| (w.length(), group.reduced_word(w)));
    Ok(fiber)
}

/// Whether `{ x^{-1} s_j x : j in J }` is exactly `{ s_k : k in K }`.
pub fn conjugates_onto(group: &WeylGroup, x: &WeylElement, j: &TypeSubset, k: &TypeSubset) -> bool {
    let x_inv = group.inverse(x);
    let conjugated: HashSet<WeylElement> = j
        .iter()
        .map(|i| group.compose(&group.compose(&x_inv, &group.simple(i)), x))
        .collect();
    let targets: HashSet<WeylElement> = k.iter().map(|i| group.simple(i)).collect();
    conjugated == targets
}

/// `l(w0) - l(w_{0,J})`.
pub fn moduli_dimension(group: &WeylGroup, j: &TypeSubset) -> usize {
    group.longest().length() - group.longest_element(j).length()
}

/// The ordinarity verdict `phi(J) = J` under each of its equivalent readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MuOrdinaryReport {
    pub phi_fixes_j: bool,
    pub generic_bruhat_is_mu_ordinary_newton: bool,
    pub reflex_completion_is_qp: bool,
    pub ordinary_locus_nonempty: bool,
    pub ordinary_equals_mu_ordinary: bool,
}

impl MuOrdinaryReport {
    fn from_verdict(verdict: bool) -> Self {
        MuOrdinaryReport {
            phi_fixes_j: verdict,
            generic_bruhat_is_mu_ordinary_newton: verdict,
            reflex_completion_is_qp: verdict,
            ordinary_locus_nonempty: verdict,
            ordinary_equals_mu_ordinary: verdict,
        }
    }

    pub fn verdict(&self) -> bool {
        self.phi_fixes_j
    }

    pub fn readings(&self) -> [(&'static str, bool); 5] {
        [
            ("phi_fixes_j", self.phi_fixes_j),
            ("generic_bruhat_is_mu_ordinary_newton", self.generic_bruhat_is_mu_ordinary_newton),
            ("reflex_completion_is_qp", self.reflex_completion_is_qp),
            ("ordinary_locus_nonempty", self.ordinary_locus_nonempty),
            ("ordinary_equals_mu_ordinary", self.ordinary_equals_mu_ordinary),
        ]
    }
}

pub fn mu_ordinary_report(j: &TypeSubset, phi: &DiagramAutomorphism) -> MuOrdinaryReport {
    MuOrdinaryReport::from_verdict(&j.image(phi) == j)
}

/// Resolves `J` for a case, returning notes about relaxed validation.
pub fn resolve_j(case: &PelCase, roots: &PositiveRootTable) -> Result<(TypeSubset, Vec<String>)> {
    match &case.parabolic {
        ParabolicInput::Subset(j) => Ok((j.clone(), Vec::new())),
        ParabolicInput::Cocharacter(mu) => {
            let j = derive_j(mu, roots, case.options.minuscule_check)?;
            let mut notes = Vec::new();
            if !case.options.minuscule_check {
                if let Some((root, value)) = minuscule_violation(mu, roots)? {
                    notes.push(format!(
                        "warning: cocharacter is not minuscule (root {root:?} pairs to {value}); \
                         the atlas is computed from J alone and has no PEL interpretation"
                    ));
                }
            }
            Ok((j, notes))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRecord {
    pub id: usize,
    /// Orbit member with the lexicographically smallest reduced word.
    pub rep: WeylElement,
    pub orbit: Vec<WeylElement>,
    /// `x^{J,K}`.
    pub upper: WeylElement,
    pub dim: usize,
    pub codim: usize,
    /// Ekedahl-Oort strata `(w, l(w))` inside the stratum of `rep`.
    pub eo_fiber: Vec<(WeylElement, usize)>,
    pub single_eo: bool,
    pub closure: Vec<usize>,
    pub is_maximal: bool,
    pub siegel_a: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Atlas {
    pub case: PelCase,
    group: Arc<WeylGroup>,
    pub j: TypeSubset,
    pub k: TypeSubset,
    pub degree: usize,
    pub moduli_dim: usize,
    pub strata: Vec<StratumRecord>,
    pub orbit_poset: OrbitPoset,
    pub mu_ordinary: MuOrdinaryReport,
    pub notes: Vec<String>,
}

impl Atlas {
    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn group_handle(&self) -> Arc<WeylGroup> {
        Arc::clone(&self.group)
    }

    /// Ids of all strata in the closure of `id`, itself included.
    pub fn closure_set(&self, id: usize) -> Result<Vec<usize>> {
        if id >= self.strata.len() {
            return Err(Error::UnknownStratum {
                id,
                count: self.strata.len(),
            });
        }
        Ok(self.orbit_poset.below(id))
    }

    pub fn maximal(&self) -> &StratumRecord {
        self.strata.iter().find(|s| s.is_maximal).expect("atlas has a maximal stratum")
    }

    /// `|^J W^K|`.
    pub fn double_coset_count(&self) -> usize {
        self.strata.iter().map(|s| s.orbit.len()).sum()
    }
}

pub fn build_atlas(case: &PelCase) -> Result<Atlas> {
    let group = Arc::new(WeylGroup::new(&case.spec)?);
    build_atlas_in(case, group)
}

/// Same as [`build_atlas`], reusing an already constructed group.
pub fn build_atlas_in(case: &PelCase, group: Arc<WeylGroup>) -> Result<Atlas> {
    let bound = case.options.element_bound;
    let g = group.as_ref();
    g.elements(bound)?;

    let (j, mut notes) = resolve_j(case, g.roots())?;
    let k = derive_k(g, &j, &case.phi);
    let galois = GaloisData::new(case.phi.clone(), j.clone())?;
    let generator = galois.generator();
    if k.image(&generator) != k {
        return Err(Error::Internal(format!("K = {k} is not stable under phi^{}", galois.degree)));
    }

    let double = min_double_reps(g, &j, &k, bound)?;
    let mut orbits = galois_orbits(g, &double, &generator)?;
    orbits.sort_by_cached_key(|o| (o[0].length(), g.reduced_word(&o[0])));
    let poset = orbit_poset(orbits, |x, w| g.bruhat_leq(x, w))?;

    let moduli_dim = moduli_dimension(g, &j);
    let top_length = double.iter().map(|w| w.length()).max().expect("e is always a representative");
    if double.iter().filter(|w| w.length() == top_length).count() != 1 {
        return Err(Error::Internal("^J W^K has no unique longest element".into()));
    }

    let mut strata = Vec::with_capacity(poset.len());
    for (id, orbit) in poset.orbits().iter().enumerate() {
        let rep = orbit[0].clone();
        let (upper, dim) = x_upper(g, &rep, &j, &k)?;
        let formula = ell_jk(g, &rep, &j, &k)?;
        if formula != dim {
            return Err(Error::Internal(format!(
                "l_(J,K)({}) = {formula} but l(x^(J,K)) = {dim}",
                g.word_string(&rep)
            )));
        }
        if dim > moduli_dim {
            return Err(Error::Internal(format!("stratum {id} has dimension {dim} > {moduli_dim}")));
        }
        let fiber = eo_fiber(g, &rep, &j, &k, bound)?;
        if fiber.iter().map(|w| w.length()).max() != Some(dim) {
            return Err(Error::Internal(format!("EO fiber of stratum {id} does not reach dimension {dim}")));
        }
        let single_eo = fiber.len() == 1;
        if single_eo != conjugates_onto(g, &rep, &j, &k) {
            return Err(Error::Internal(format!(
                "single-EO test disagrees with the conjugation test at {}",
                g.word_string(&rep)
            )));
        }
        let is_maximal = rep.length() == top_length;
        strata.push(StratumRecord {
            id,
            orbit: orbit.clone(),
            upper,
            dim,
            codim: moduli_dim - dim,
            eo_fiber: fiber.into_iter().map(|w| {
                let l = w.length();
                (w, l)
            }).collect(),
            single_eo,
            closure: poset.below(id),
            is_maximal,
            siegel_a: None,
            rep,
        });
    }

    let top = strata.iter().find(|s| s.is_maximal).expect("checked above");
    if top.orbit.len() != 1 || top.dim != moduli_dim || top.closure.len() != strata.len() {
        return Err(Error::Internal(format!(
            "maximal stratum {} has orbit size {}, dimension {} (expected {moduli_dim}) and closure of size {}",
            top.id,
            top.orbit.len(),
            top.dim,
            top.closure.len()
        )));
    }
    let left_count = (g.order() / g.parabolic_order(&j)) as usize;
    let fiber_total: usize = strata.iter().map(|s| s.orbit.len() * s.eo_fiber.len()).sum();
    if fiber_total != left_count || strata.iter().map(|s| s.orbit.len()).sum::<usize>() != double.len() {
        return Err(Error::Internal(format!(
            "EO fibers cover {fiber_total} elements but |^J W| = {left_count}"
        )));
    }

    if let Some(genus) = siegel_genus(&case.spec, &case.phi, &j) {
        assign_a_numbers(genus, &mut strata)?;
    }
    if !case.phi.is_identity() {
        notes.push(format!(
            "Frobenius acts by {:?} (order {}); J is defined in degree {}",
            case.phi.permutation(),
            case.phi.order(),
            galois.degree
        ));
    }

    Ok(Atlas {
        case: case.clone(),
        mu_ordinary: mu_ordinary_report(&j, &case.phi),
        group,
        j,
        k,
        degree: galois.degree,
        moduli_dim,
        strata,
        orbit_poset: poset,
        notes,
    })
}

/// `d(i) = (g(g+1) - i(i+1)) / 2`, the dimension of the `a = i` locus.
pub fn siegel_dimension(g: usize, i: usize) -> usize {
    (g * (g + 1) - i * (i + 1)) / 2
}

/// Detects the Siegel shape: `C_g` with `J = {0..g-2}` (or `A1` with `J = {}`
/// for `g = 1`) and trivial Frobenius.
pub fn siegel_genus(spec: &DynkinSpec, phi: &DiagramAutomorphism, j: &TypeSubset) -> Option<usize> {
    if !phi.is_identity() {
        return None;
    }
    match spec.factors() {
        [Factor { kind: FactorType::C, rank }] if j.to_vec() == (0..rank - 1).collect::<Vec<_>>() => Some(*rank),
        [Factor { kind: FactorType::A, rank: 1 }] if j.is_empty() => Some(1),
        _ => None,
    }
}

fn assign_a_numbers(g: usize, strata: &mut [StratumRecord]) -> Result<()> {
    for s in strata.iter_mut() {
        let a = (0..=g).find(|&i| siegel_dimension(g, i) == s.dim).ok_or_else(|| {
            Error::Internal(format!("Siegel stratum of dimension {} matches no a-number", s.dim))
        })?;
        s.siegel_a = Some(a);
    }
    Ok(())
}

/// The Siegel case of genus `g`.
pub fn siegel_case(g: usize) -> Result<PelCase> {
    if g == 0 {
        return Err(Error::Case("the Siegel genus must be positive".into()));
    }
    let (spec, mu) = if g == 1 {
        (DynkinSpec::single(FactorType::A, 1)?, vec![1])
    } else {
        let mut mu = vec![0; g];
        mu[g - 1] = 1;
        (DynkinSpec::single(FactorType::C, g)?, mu)
    };
    PelCase::new(
        spec,
        None,
        ParabolicInput::Cocharacter(CocharSpec::new(mu)),
        CaseOptions::default(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiegelRow {
    pub a_number: usize,
    pub dim: usize,
    pub stratum: usize,
    pub rep_word: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SiegelIdentification {
    pub g: usize,
    /// Sorted by a-number.
    pub rows: Vec<SiegelRow>,
    pub atlas: Atlas,
}

impl SiegelIdentification {
    pub fn table(&self) -> String {
        let mut out = format!("Siegel genus {}\n{:>3}  {:>5}  {}\n", self.g, "a", "dim", "rep");
        for row in &self.rows {
            out.push_str(&format!("{:>3}  {:>5}  {}\n", row.a_number, row.dim, format_word(&row.rep_word)));
        }
        out
    }
}

/// Identifies `^J W^J` with `{0..g}` through the a-number and checks the
/// dimension formula and the order reversal.
pub fn siegel_identify(g: usize) -> Result<SiegelIdentification> {
    let atlas = build_atlas(&siegel_case(g)?)?;
    let group = atlas.group();
    let fail = |msg: String| Err(Error::Internal(format!("Siegel genus {g}: {msg}")));

    if atlas.double_coset_count() != g + 1 || atlas.strata.len() != g + 1 {
        return fail(format!("expected {} double cosets, found {}", g + 1, atlas.double_coset_count()));
    }
    let mut dims: Vec<usize> = atlas.strata.iter().map(|s| s.dim).collect();
    dims.sort_unstable();
    let mut expected: Vec<usize> = (0..=g).map(|i| siegel_dimension(g, i)).collect();
    expected.sort_unstable();
    if dims != expected {
        return fail(format!("dimensions {dims:?} differ from {expected:?}"));
    }
    let a_of: Vec<usize> = atlas.strata.iter().map(|s| s.siegel_a.expect("Siegel shape")).collect();
    for (x, sx) in atlas.strata.iter().enumerate() {
        for (y, sy) in atlas.strata.iter().enumerate() {
            let below = group.bruhat_leq(&sx.rep, &sy.rep);
            if below != (a_of[x] >= a_of[y]) {
                return fail(format!(
                    "order reversal fails for a-numbers {} and {}",
                    a_of[x], a_of[y]
                ));
            }
        }
    }
    let mut rows: Vec<SiegelRow> = atlas
        .strata
        .iter()
        .map(|s| SiegelRow {
            a_number: s.siegel_a.expect("Siegel shape"),
            dim: s.dim,
            stratum: s.id,
            rep_word: group.reduced_word(&s.rep),
        })
        .collect();
    rows.sort_by_key(|r| r.a_number);
    Ok(SiegelIdentification { g, rows, atlas })
}
