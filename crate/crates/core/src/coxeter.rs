//! Finite Weyl groups acting on their root systems.
//!
//! An element is stored as its permutation of the signed roots. Signed root
//! ids `0..N` are the positive roots (the simple roots first), and `N + r`
//! is `-root(r)`. The canonical key of an element is the tuple of images of
//! the simple roots; the rest of the permutation is determined by it.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::root_data::{
    cartan_from_spec, positive_roots, reflect, CartanMatrix, DiagramAutomorphism, DynkinSpec,
    PositiveRootTable,
};

/// Default cap on the number of group elements any operation may enumerate.
pub const DEFAULT_ELEMENT_BOUND: u64 = 1_000_000;

const BRUHAT_MEMO_CAPACITY: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A set of nodes (equivalently, of simple reflections).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSubset(BTreeSet<usize>);

impl TypeSubset {
    pub fn empty() -> Self {
        TypeSubset(BTreeSet::new())
    }

    pub fn full(rank: usize) -> Self {
        TypeSubset((0..rank).collect())
    }

    /// Builds a subset, rejecting nodes outside `0..rank`.
    pub fn checked<I: IntoIterator<Item = usize>>(nodes: I, rank: usize) -> Result<Self> {
        let set: BTreeSet<usize> = nodes.into_iter().collect();
        if let Some(&node) = set.iter().find(|&&k| k >= rank) {
            return Err(Error::InvalidNode { node, rank });
        }
        Ok(TypeSubset(set))
    }

    /// All subsets of `0..rank`, ordered by bitmask.
    pub fn all(rank: usize) -> Vec<TypeSubset> {
        (0u64..1 << rank)
            .map(|mask| TypeSubset((0..rank).filter(|&i| mask >> i & 1 == 1).collect()))
            .collect()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.contains(&node)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &TypeSubset) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &TypeSubset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &TypeSubset) -> TypeSubset {
        TypeSubset(self.0.intersection(&other.0).copied().collect())
    }

    /// Image of the subset under a diagram automorphism.
    pub fn image(&self, phi: &DiagramAutomorphism) -> TypeSubset {
        TypeSubset(self.iter().map(|i| phi.apply(i)).collect())
    }
}

impl FromIterator<usize> for TypeSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        TypeSubset(iter.into_iter().collect())
    }
}

impl fmt::Display for TypeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Element of a finite Weyl group.
#[derive(Clone)]
pub struct WeylElement {
    ambient: u64,
    rank: u16,
    length: u32,
    /// Image of each positive root (signed id).
    fwd: Arc<[u16]>,
    /// Same for the inverse element.
    inv: Arc<[u16]>,
}

impl WeylElement {
    /// Canonical key: signed ids of the images of the simple roots.
    pub fn key(&self) -> &[u16] {
        &self.fwd[..self.rank as usize]
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.key() == other.key()
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by length, then by canonical key.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.length, self.key()).cmp(&(other.length, other.key()))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylElement")
            .field("length", &self.length)
            .field("key", &self.key())
            .finish()
    }
}

/// Renders a word as `s1s0`, `e` for the empty word, dotted when ids exceed 9.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let sep = if word.iter().any(|&i| i > 9) { "." } else { "" };
    word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(sep)
}

/// The Weyl group of a classical root system together with its action tables.
type BruhatMemo = HashMap<(Box<[u16]>, Box<[u16]>), bool>;

pub struct WeylGroup {
    spec: DynkinSpec,
    cartan: CartanMatrix,
    roots: PositiveRootTable,
    fingerprint: u64,
    /// `reflections[i][r]` = `s_i(r)` on signed ids.
    reflections: Vec<Vec<u16>>,
    elements: OnceLock<Vec<WeylElement>>,
    bruhat_memo: Mutex<BruhatMemo>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup").field("spec", &self.spec.to_string()).finish()
    }
}

impl WeylGroup {
    pub fn new(spec: &DynkinSpec) -> Result<Self> {
        let cartan = cartan_from_spec(spec)?;
        let roots = positive_roots(&cartan)?;
        let n = cartan.rank();
        let npos = roots.len();
        if 2 * npos > u16::MAX as usize {
            return Err(Error::Case(format!("root system of {spec} is too large")));
        }
        let mut reflections = vec![vec![0u16; 2 * npos]; n];
        for (i, table) in reflections.iter_mut().enumerate() {
            for r in 0..npos {
                let image = if r == i {
                    (npos + i) as u16
                } else {
                    let coords = reflect(&cartan, i, roots.get(r));
                    roots.index_of(&coords).expect("closed root system") as u16
                };
                table[r] = image;
                table[r + npos] = negate(image, npos);
            }
        }
        let mut hasher = DefaultHasher::new();
        cartan.hash(&mut hasher);
        Ok(WeylGroup {
            spec: spec.clone(),
            cartan,
            roots,
            fingerprint: hasher.finish(),
            reflections,
            elements: OnceLock::new(),
            bruhat_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &DynkinSpec {
        &self.spec
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &PositiveRootTable {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    fn npos(&self) -> usize {
        self.roots.len()
    }

    /// Closed-form group order.
    pub fn order(&self) -> u128 {
        self.spec.weyl_order()
    }

    /// Image of a signed root under `w`.
    #[inline]
    fn act(&self, perm: &[u16], r: u16) -> u16 {
        let npos = self.npos();
        let r = r as usize;
        if r < npos {
            perm[r]
        } else {
            negate(perm[r - npos], npos)
        }
    }

    #[inline]
    fn is_negative(&self, r: u16) -> bool {
        r as usize >= self.npos()
    }

    fn element(&self, fwd: Vec<u16>, inv: Vec<u16>) -> WeylElement {
        let length = fwd.iter().filter(|&&r| self.is_negative(r)).count() as u32;
        WeylElement {
            ambient: self.fingerprint,
            rank: self.rank() as u16,
            length,
            fwd: fwd.into(),
            inv: inv.into(),
        }
    }

    pub fn identity(&self) -> WeylElement {
        let id: Vec<u16> = (0..self.npos() as u16).collect();
        self.element(id.clone(), id)
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        let fwd = self.reflections[i][..self.npos()].to_vec();
        self.element(fwd.clone(), fwd)
    }

    /// Product of the simple reflections in `word`, left to right.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::InvalidNode { node: i, rank: self.rank() });
            }
            w = self.right_mul_simple(&w, i);
        }
        Ok(w)
    }

    /// `s_i * w`.
    pub fn left_mul_simple(&self, i: usize, w: &WeylElement) -> WeylElement {
        let s = &self.reflections[i];
        let fwd = w.fwd.iter().map(|&t| s[t as usize]).collect();
        let inv = (0..self.npos()).map(|r| self.act(&w.inv, s[r])).collect();
        self.element(fwd, inv)
    }

    /// `w * s_i`.
    pub fn right_mul_simple(&self, w: &WeylElement, i: usize) -> WeylElement {
        let s = &self.reflections[i];
        let fwd = (0..self.npos()).map(|r| self.act(&w.fwd, s[r])).collect();
        let inv = w.inv.iter().map(|&t| s[t as usize]).collect();
        self.element(fwd, inv)
    }

    pub(crate) fn compose(&self, w: &WeylElement, v: &WeylElement) -> WeylElement {
        let fwd = v.fwd.iter().map(|&t| self.act(&w.fwd, t)).collect();
        let inv = w.inv.iter().map(|&t| self.act(&v.inv, t)).collect();
        self.element(fwd, inv)
    }

    pub fn multiply(&self, w: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        if w.ambient != self.fingerprint || v.ambient != self.fingerprint {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.compose(w, v))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        WeylElement {
            fwd: w.inv.clone(),
            inv: w.fwd.clone(),
            ..w.clone()
        }
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        w.length()
    }

    pub fn is_descent(&self, w: &WeylElement, i: usize, side: Side) -> bool {
        match side {
            Side::Right => self.is_negative(w.fwd[i]),
            Side::Left => self.is_negative(w.inv[i]),
        }
    }

    pub fn descents(&self, w: &WeylElement, side: Side) -> TypeSubset {
        (0..self.rank()).filter(|&i| self.is_descent(w, i, side)).collect()
    }

    fn first_left_descent(&self, w: &WeylElement) -> Option<usize> {
        (0..self.rank()).find(|&i| self.is_descent(w, i, Side::Left))
    }

    /// Lexicographically smallest reduced word: peel the smallest left descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut current = w.clone();
        while let Some(i) = self.first_left_descent(&current) {
            word.push(i);
            current = self.left_mul_simple(i, &current);
        }
        debug_assert!(current.is_identity());
        word
    }

    pub fn word_string(&self, w: &WeylElement) -> String {
        format_word(&self.reduced_word(w))
    }

    /// Images of the simple roots as signed coordinate vectors.
    pub fn simple_root_images(&self, w: &WeylElement) -> Vec<Vec<i32>> {
        let npos = self.npos();
        w.key()
            .iter()
            .map(|&t| {
                let t = t as usize;
                if t < npos {
                    self.roots.get(t).to_vec()
                } else {
                    self.roots.get(t - npos).iter().map(|c| -c).collect()
                }
            })
            .collect()
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_element(&self, subset: &TypeSubset) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = subset.iter().find(|&i| !self.is_descent(&w, i, Side::Right)) {
            w = self.right_mul_simple(&w, i);
        }
        w
    }

    pub fn longest(&self) -> WeylElement {
        self.longest_element(&TypeSubset::full(self.rank()))
    }

    /// The opposition involution `i -> iota(i)` with `w0 s_i w0 = s_iota(i)`.
    pub fn opposition_map(&self) -> Vec<usize> {
        let w0 = self.longest();
        let npos = self.npos();
        (0..self.rank())
            .map(|i| {
                let image = w0.fwd[i] as usize;
                debug_assert!(image >= npos && image - npos < self.rank());
                image - npos
            })
            .collect()
    }

    pub fn opposition(&self, subset: &TypeSubset) -> TypeSubset {
        let iota = self.opposition_map();
        subset.iter().map(|i| iota[i]).collect()
    }

    /// Bruhat order by the lifting recursion on the smallest left descent of `w`.
    pub fn bruhat_leq(&self, x: &WeylElement, w: &WeylElement) -> bool {
        if x.length > w.length {
            return false;
        }
        let memo_key = (Box::<[u16]>::from(x.key()), Box::<[u16]>::from(w.key()));
        if let Some(&hit) = self.bruhat_memo.lock().expect("memo lock").get(&memo_key) {
            return hit;
        }
        let answer = self.bruhat_lift(x.clone(), w.clone());
        let mut memo = self.bruhat_memo.lock().expect("memo lock");
        if memo.len() >= BRUHAT_MEMO_CAPACITY {
            memo.clear();
        }
        memo.insert(memo_key, answer);
        answer
    }

    fn bruhat_lift(&self, mut x: WeylElement, mut w: WeylElement) -> bool {
        loop {
            if x.length > w.length {
                return false;
            }
            if x.length == w.length {
                return x == w;
            }
            let s = self.first_left_descent(&w).expect("w is not the identity");
            if self.is_descent(&x, s, Side::Left) {
                x = self.left_mul_simple(s, &x);
            }
            w = self.left_mul_simple(s, &w);
        }
    }

    /// Permutation of the positive roots induced by a diagram automorphism.
    fn root_permutation(&self, phi: &DiagramAutomorphism) -> Vec<u16> {
        let n = self.rank();
        assert_eq!(phi.permutation().len(), n, "automorphism rank mismatch");
        (0..self.npos())
            .map(|r| {
                let mut coords = vec![0; n];
                for (i, &c) in self.roots.get(r).iter().enumerate() {
                    coords[phi.apply(i)] = c;
                }
                self.roots.index_of(&coords).expect("automorphism preserves the root system") as u16
            })
            .collect()
    }

    /// `phi(w)`: relabels the letters of any reduced word of `w`.
    pub fn apply_automorphism(&self, phi: &DiagramAutomorphism, w: &WeylElement) -> WeylElement {
        if phi.is_identity() {
            return w.clone();
        }
        let gamma = self.root_permutation(phi);
        let mut gamma_inv = vec![0u16; gamma.len()];
        for (r, &g) in gamma.iter().enumerate() {
            gamma_inv[g as usize] = r as u16;
        }
        let conj = |perm: &[u16]| -> Vec<u16> {
            gamma_inv
                .iter()
                .map(|&r| self.act(&gamma, perm[r as usize]))
                .collect()
        };
        self.element(conj(&w.fwd), conj(&w.inv))
    }

    /// All elements, breadth-first by length. Fails when `|W|` exceeds `bound`.
    pub fn elements(&self, bound: u64) -> Result<&[WeylElement]> {
        let order = self.order();
        if order > bound as u128 {
            return Err(Error::BoundExceeded { order, bound });
        }
        Ok(self.elements.get_or_init(|| self.enumerate_parabolic(&TypeSubset::full(self.rank()))))
    }

    /// Breadth-first enumeration of `W_K`.
    pub fn parabolic_subgroup(&self, subset: &TypeSubset, bound: u64) -> Result<Vec<WeylElement>> {
        let order = self.parabolic_order(subset);
        if order > bound as u128 {
            return Err(Error::BoundExceeded { order, bound });
        }
        Ok(self.enumerate_parabolic(subset))
    }

    /// `|W_K|` as the product of the orders of the components of `K`.
    pub fn parabolic_order(&self, subset: &TypeSubset) -> u128 {
        // Components are found via the Cartan graph; their orders by counting roots.
        let mut order = 1u128;
        let mut seen = BTreeSet::new();
        for start in subset.iter() {
            if !seen.insert(start) {
                continue;
            }
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in subset.iter() {
                    if self.cartan.get(i, j) != 0 && seen.insert(j) {
                        component.push(j);
                        stack.push(j);
                    }
                }
            }
            order = order.saturating_mul(component_order(&self.cartan, &component));
        }
        order
    }

    fn enumerate_parabolic(&self, subset: &TypeSubset) -> Vec<WeylElement> {
        let mut all = vec![self.identity()];
        let mut seen: HashSet<WeylElement> = all.iter().cloned().collect();
        let mut level_start = 0;
        while level_start < all.len() {
            let level_end = all.len();
            for idx in level_start..level_end {
                for i in subset.iter() {
                    if self.is_descent(&all[idx], i, Side::Right) {
                        continue;
                    }
                    let next = self.right_mul_simple(&all[idx], i);
                    if seen.insert(next.clone()) {
                        all.push(next);
                    }
                }
            }
            level_start = level_end;
        }
        all
    }
}

#[inline]
fn negate(r: u16, npos: usize) -> u16 {
    let r = r as usize;
    (if r < npos { r + npos } else { r - npos }) as u16
}

/// Weyl group order of a connected sub-diagram, identified by its shape.
fn component_order(cartan: &CartanMatrix, nodes: &[usize]) -> u128 {
    let r = nodes.len();
    let degree = |i: usize| nodes.iter().filter(|&&j| j != i && cartan.get(i, j) != 0).count();
    let has_double = nodes
        .iter()
        .any(|&i| nodes.iter().any(|&j| j != i && cartan.get(i, j) == -2));
    let has_branch = nodes.iter().any(|&i| degree(i) >= 3);
    let fact = (1..=r as u128).product::<u128>();
    if has_double {
        fact << r
    } else if has_branch {
        fact << (r - 1)
    } else {
        fact * (r as u128 + 1)
    }
}
