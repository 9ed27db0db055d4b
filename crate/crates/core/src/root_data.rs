//! Classical Dynkin data: specifications, Cartan matrices, positive roots and
//! diagram automorphisms.
//!
//! Nodes are numbered globally `0..n`, consecutively inside each factor and
//! in Bourbaki order inside a factor. The Cartan matrix stores
//! `a[i][j] = <alpha_i, alpha_j^vee>`, so the simple reflection `s_i` acts on
//! the root lattice by `s_i(alpha_j) = alpha_j - a[j][i] alpha_i`. With this
//! convention `C2` is `[[2, -1], [-2, 2]]` with node 1 the long root, and its
//! highest root is `2 alpha_0 + alpha_1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::atlas::CocharSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorType {
    A,
    B,
    C,
    D,
}

impl FactorType {
    pub fn letter(self) -> char {
        match self {
            FactorType::A => 'A',
            FactorType::B => 'B',
            FactorType::C => 'C',
            FactorType::D => 'D',
        }
    }

    pub fn from_letter(letter: &str) -> Result<Self> {
        match letter.trim() {
            "A" | "a" => Ok(FactorType::A),
            "B" | "b" => Ok(FactorType::B),
            "C" | "c" => Ok(FactorType::C),
            "D" | "d" => Ok(FactorType::D),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }

    fn min_rank(self) -> usize {
        match self {
            FactorType::A => 1,
            FactorType::B | FactorType::C => 2,
            FactorType::D => 3,
        }
    }

    /// Number of positive roots of the irreducible system of this type.
    pub fn positive_root_count(self, rank: usize) -> usize {
        match self {
            FactorType::A => rank * (rank + 1) / 2,
            FactorType::B | FactorType::C => rank * rank,
            FactorType::D => rank * (rank - 1),
        }
    }

    /// Order of the Weyl group, saturating on overflow.
    pub fn weyl_order(self, rank: usize) -> u128 {
        let fact = (1..=rank as u128).fold(1u128, |acc, k| acc.saturating_mul(k));
        match self {
            FactorType::A => fact.saturating_mul(rank as u128 + 1),
            FactorType::B | FactorType::C => fact.saturating_mul(pow2(rank)),
            FactorType::D => fact.saturating_mul(pow2(rank - 1)),
        }
    }
}

fn pow2(k: usize) -> u128 {
    if k >= 127 {
        u128::MAX
    } else {
        1u128 << k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: FactorType,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

/// An ordered product of classical irreducible Dynkin diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinSpec {
    factors: Vec<Factor>,
}

impl DynkinSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        for (index, factor) in factors.iter().enumerate() {
            validate_factor(index, factor)?;
        }
        if factors.is_empty() {
            return Err(Error::Case("a Dynkin specification needs at least one factor".into()));
        }
        Ok(DynkinSpec { factors })
    }

    pub fn single(kind: FactorType, rank: usize) -> Result<Self> {
        Self::new(vec![Factor { kind, rank }])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    /// Node range occupied by each factor.
    pub fn factor_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|f| {
                let range = start..start + f.rank;
                start += f.rank;
                range
            })
            .collect()
    }

    /// Closed-form order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.kind.weyl_order(f.rank)))
    }
}

fn validate_factor(index: usize, factor: &Factor) -> Result<()> {
    let min = factor.kind.min_rank();
    if factor.rank < min {
        return Err(Error::InvalidFactor {
            index,
            kind: factor.kind.letter(),
            rank: factor.rank,
            reason: format!("type {} requires rank >= {}", factor.kind.letter(), min),
        });
    }
    Ok(())
}

impl fmt::Display for DynkinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// Parses `"C2"`, `"A1xA1"` or `"A2×A2"`.
impl FromStr for DynkinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '×', '*']) {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Case(format!("malformed Dynkin specification `{s}`")));
            }
            let (letter, digits) = part.split_at(part.char_indices().nth(1).map_or(part.len(), |(i, _)| i));
            let kind = FactorType::from_letter(letter)?;
            let rank = digits
                .parse::<usize>()
                .map_err(|_| Error::Case(format!("malformed rank in `{part}`")))?;
            factors.push(Factor { kind, rank });
        }
        DynkinSpec::new(factors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl CartanMatrix {
    /// Builds a matrix from rows, checking the generalized Cartan matrix axioms.
    pub fn from_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        let m = CartanMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != 2 {
                return Err(Error::Case(format!("diagonal entry a[{i}][{i}] must be 2")));
            }
            for j in 0..n {
                if i != j && (m.get(i, j) > 0 || (m.get(i, j) == 0) != (m.get(j, i) == 0)) {
                    return Err(Error::Case(format!(
                        "entries a[{i}][{j}], a[{j}][{i}] violate the Cartan axioms"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

pub fn cartan_from_spec(spec: &DynkinSpec) -> Result<CartanMatrix> {
    let n = spec.rank();
    let mut entries = vec![0i32; n * n];
    let mut set = |i: usize, j: usize, v: i32| entries[i * n + j] = v;
    for (index, (factor, range)) in spec.factors().iter().zip(spec.factor_ranges()).enumerate() {
        validate_factor(index, factor)?;
        let o = range.start;
        let r = factor.rank;
        for i in 0..r {
            set(o + i, o + i, 2);
        }
        match factor.kind {
            FactorType::A => {
                for i in 0..r.saturating_sub(1) {
                    set(o + i, o + i + 1, -1);
                    set(o + i + 1, o + i, -1);
                }
            }
            FactorType::B | FactorType::C => {
                for i in 0..r - 2 {
                    set(o + i, o + i + 1, -1);
                    set(o + i + 1, o + i, -1);
                }
                let (p, q) = (o + r - 2, o + r - 1);
                // B: last node short; C: last node long.
                if factor.kind == FactorType::B {
                    set(p, q, -2);
                    set(q, p, -1);
                } else {
                    set(p, q, -1);
                    set(q, p, -2);
                }
            }
            FactorType::D => {
                for i in 0..r - 2 {
                    set(o + i, o + i + 1, -1);
                    set(o + i + 1, o + i, -1);
                }
                let (fork, tip) = (o + r - 3, o + r - 1);
                set(fork, tip, -1);
                set(tip, fork, -1);
            }
        }
    }
    Ok(CartanMatrix { n, entries })
}

/// Positive roots in simple-root coordinates. The first `n` entries are the
/// simple roots, in node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRootTable {
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
}

impl PositiveRootTable {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn get(&self, id: usize) -> &[i32] {
        &self.roots[id]
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Roots grouped by the factor whose nodes carry their support.
    pub fn by_factor(&self, spec: &DynkinSpec) -> Vec<Vec<usize>> {
        let ranges = spec.factor_ranges();
        let mut groups = vec![Vec::new(); ranges.len()];
        for (id, root) in self.roots.iter().enumerate() {
            let first = root.iter().position(|&c| c != 0).expect("roots are nonzero");
            let f = ranges.iter().position(|r| r.contains(&first)).expect("node in some factor");
            groups[f].push(id);
        }
        groups
    }
}

/// Reflection of a root-lattice vector in the simple root `i`.
pub(crate) fn reflect(cartan: &CartanMatrix, i: usize, coords: &[i32]) -> Vec<i32> {
    let coroot_pairing: i32 = coords.iter().enumerate().map(|(j, &c)| c * cartan.get(j, i)).sum();
    let mut out = coords.to_vec();
    out[i] -= coroot_pairing;
    out
}

pub fn positive_roots(cartan: &CartanMatrix) -> Result<PositiveRootTable> {
    let n = cartan.rank();
    let bound = n * n;
    let mut roots: Vec<Vec<i32>> = Vec::new();
    let mut index = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        index.insert(e.clone(), roots.len());
        roots.push(e);
        queue.push_back(i);
    }
    while let Some(id) = queue.pop_front() {
        for i in 0..n {
            if id == i {
                continue;
            }
            let image = reflect(cartan, i, &roots[id]);
            if image.iter().any(|&c| c < 0) {
                return Err(Error::NonFiniteType { bound });
            }
            if !index.contains_key(&image) {
                if roots.len() >= bound {
                    return Err(Error::NonFiniteType { bound });
                }
                index.insert(image.clone(), roots.len());
                queue.push_back(roots.len());
                roots.push(image);
            }
        }
    }
    Ok(PositiveRootTable { roots, index })
}

/// A permutation of the nodes preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
    order: usize,
}

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..n).collect(),
            order: 1,
        }
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn apply(&self, node: usize) -> usize {
        self.perm[node]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramAutomorphism) -> DiagramAutomorphism {
        let perm: Vec<usize> = other.perm.iter().map(|&i| self.perm[i]).collect();
        let order = permutation_order(&perm);
        DiagramAutomorphism { perm, order }
    }

    pub fn pow(&self, k: usize) -> DiagramAutomorphism {
        let mut acc = DiagramAutomorphism::identity(self.perm.len());
        for _ in 0..k % self.order {
            acc = self.compose(&acc);
        }
        acc
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut current: Vec<usize> = perm.to_vec();
    let mut order = 1;
    while current.iter().enumerate().any(|(i, &p)| i != p) {
        current = current.iter().map(|&i| perm[i]).collect();
        order += 1;
    }
    order
}

pub fn validate_automorphism(perm: &[usize], cartan: &CartanMatrix) -> Result<DiagramAutomorphism> {
    let n = cartan.rank();
    if perm.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotBijection(perm.to_vec()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let expected = cartan.get(i, j);
            let found = cartan.get(perm[i], perm[j]);
            if expected != found {
                return Err(Error::CartanMismatch { i, j, expected, found });
            }
        }
    }
    Ok(DiagramAutomorphism {
        perm: perm.to_vec(),
        order: permutation_order(perm),
    })
}

/// `<mu, alpha>` for a root `alpha = sum c_i alpha_i`, given `m_i = <mu, alpha_i>`.
pub fn pairing(mu: &CocharSpec, root: &[i32]) -> Result<i64> {
    let m = mu.pairings();
    if m.len() != root.len() {
        return Err(Error::LengthMismatch {
            expected: root.len(),
            found: m.len(),
        });
    }
    Ok(m.iter().zip(root).map(|(&mi, &c)| mi as i64 * c as i64).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> DynkinSpec {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_from_spec(&spec("A2")).unwrap().rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_from_spec(&spec("C2")).unwrap().rows(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_from_spec(&spec("A1xA1")).unwrap().rows(), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(
            cartan_from_spec(&spec("B3")).unwrap().rows(),
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
        let d4 = cartan_from_spec(&spec("D4")).unwrap();
        assert_eq!(d4.get(1, 3), -1);
        assert_eq!(d4.get(2, 3), 0);
    }

    #[test]
    fn rank_validation_names_the_factor() {
        let err = DynkinSpec::new(vec![
            Factor { kind: FactorType::A, rank: 2 },
            Factor { kind: FactorType::D, rank: 2 },
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidFactor { index: 1, kind: 'D', rank: 2, .. }));
        assert!(matches!("E6".parse::<DynkinSpec>(), Err(Error::UnsupportedType(_))));
        assert!(matches!("C1".parse::<DynkinSpec>(), Err(Error::InvalidFactor { .. })));
        assert!(matches!("A0".parse::<DynkinSpec>(), Err(Error::InvalidFactor { .. })));
    }

    #[test]
    fn small_root_systems() {
        let a2 = positive_roots(&cartan_from_spec(&spec("A2")).unwrap()).unwrap();
        let mut roots = a2.roots().to_vec();
        roots.sort();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);

        let c2 = positive_roots(&cartan_from_spec(&spec("C2")).unwrap()).unwrap();
        assert_eq!(c2.len(), 4);
        assert!(c2.index_of(&[2, 1]).is_some());
        assert_eq!(positive_roots(&cartan_from_spec(&spec("C5")).unwrap()).unwrap().len(), 25);
    }

    #[test]
    fn root_counts_match_closed_forms() {
        let cases = (1..=7)
            .map(|r| (FactorType::A, r))
            .chain((2..=6).map(|r| (FactorType::B, r)))
            .chain((2..=6).map(|r| (FactorType::C, r)))
            .chain((3..=6).map(|r| (FactorType::D, r)));
        for (kind, rank) in cases {
            let s = DynkinSpec::single(kind, rank).unwrap();
            let table = positive_roots(&cartan_from_spec(&s).unwrap()).unwrap();
            assert_eq!(table.len(), kind.positive_root_count(rank), "{kind:?}{rank}");
            assert!(table.roots().iter().flatten().all(|&c| c >= 0));
        }
        let product = spec("A2xC3xD4");
        let table = positive_roots(&cartan_from_spec(&product).unwrap()).unwrap();
        let sizes: Vec<usize> = table.by_factor(&product).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 9, 12]);
    }

    #[test]
    fn simple_reflections_permute_the_other_positive_roots() {
        for s in ["A4", "B3", "C4", "D5", "A1xB2"] {
            let cartan = cartan_from_spec(&spec(s)).unwrap();
            let table = positive_roots(&cartan).unwrap();
            for i in 0..cartan.rank() {
                let mut images: Vec<usize> = Vec::new();
                for (id, root) in table.roots().iter().enumerate() {
                    let image = reflect(&cartan, i, root);
                    if id == i {
                        assert!(image.iter().all(|&c| c <= 0));
                        assert_eq!(image.iter().sum::<i32>(), -1);
                    } else {
                        images.push(table.index_of(&image).expect("image is a positive root"));
                    }
                }
                images.sort_unstable();
                let expected: Vec<usize> = (0..table.len()).filter(|&id| id != i).collect();
                assert_eq!(images, expected);
            }
        }
    }

    #[test]
    fn affine_matrix_is_rejected() {
        let affine = CartanMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(positive_roots(&affine), Err(Error::NonFiniteType { .. })));
    }

    #[test]
    fn automorphism_examples() {
        let a2 = cartan_from_spec(&spec("A2")).unwrap();
        assert_eq!(validate_automorphism(&[0, 1], &a2).unwrap().order(), 1);
        assert_eq!(validate_automorphism(&[1, 0], &a2).unwrap().order(), 2);

        let c2 = cartan_from_spec(&spec("C2")).unwrap();
        let err = validate_automorphism(&[1, 0], &c2).unwrap_err();
        assert!(matches!(err, Error::CartanMismatch { i: 0, j: 1, .. }));

        assert!(matches!(validate_automorphism(&[1, 1], &a2), Err(Error::NotBijection(_))));
        assert!(matches!(validate_automorphism(&[0], &a2), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn automorphisms_compose() {
        let d4 = cartan_from_spec(&spec("D4")).unwrap();
        let triality = validate_automorphism(&[3, 1, 0, 2], &d4).unwrap();
        let flip = validate_automorphism(&[0, 1, 3, 2], &d4).unwrap();
        assert_eq!(triality.order(), 3);
        assert_eq!(flip.order(), 2);
        let both = triality.compose(&flip);
        let revalidated = validate_automorphism(both.permutation(), &d4).unwrap();
        // Aut(D4 diagram) = S3, exponent 6.
        assert_eq!(6 % revalidated.order(), 0);
        assert!(triality.pow(3).is_identity());
    }

    #[test]
    fn pairing_examples() {
        let mu = CocharSpec::new(vec![0, 1]);
        assert_eq!(pairing(&mu, &[1, 1]).unwrap(), 1);
        assert_eq!(pairing(&CocharSpec::new(vec![0, 0]), &[2, 1]).unwrap(), 0);
        // C2 Siegel: highest root 2 alpha_0 + alpha_1.
        assert_eq!(pairing(&mu, &[2, 1]).unwrap(), 1);
        assert!(matches!(pairing(&mu, &[1, 1, 0]), Err(Error::LengthMismatch { .. })));
    }
}
