use std::cmp::Ordering;
use std::fmt;

/// Maximum number of ambient vertices supported by [`VertexSet`].
pub const MAX_VERTICES: usize = 128;

/// A subset of the vertices of a fixed clutter, stored as a 128-bit mask.
///
/// Intersection, union and containment are single word operations; iteration
/// yields indices in ascending order. The ambient size is tracked by the
/// owning structure, not by the set itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_VERTICES);
        VertexSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for i in iter {
            s = s.with(i);
        }
        s
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn with(self, i: usize) -> Self {
        assert!(i < MAX_VERTICES);
        VertexSet(self.0 | (1u128 << i))
    }

    pub fn without(self, i: usize) -> Self {
        assert!(i < MAX_VERTICES);
        VertexSet(self.0 & !(1u128 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VERTICES && self.0 & (1u128 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement inside the ambient set `{0, .., n-1}`.
    pub fn complement_within(self, n: usize) -> Self {
        VertexSet(Self::full(n).0 & !self.0)
    }

    pub fn min_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterator over set members in ascending index order.
pub struct Indices(u128);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl Ord for VertexSet {
    /// Canonical order: by cardinality, then lexicographically on the
    /// ascending index lists. Used for all deterministic output sorting.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Keep only the inclusion-minimal sets, deduplicated and canonically sorted.
pub fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort();
    sets.dedup();
    let mut out: Vec<VertexSet> = Vec::new();
    // Sorted by size, so earlier sets can never strictly contain later ones.
    for s in sets {
        if !out.iter().any(|m| m.is_subset_of(s)) {
            out.push(s);
        }
    }
    out
}

/// All `k`-element subsets of `pool`, in lexicographic order.
pub fn k_subsets(pool: &[usize], k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if cur.len() == k {
            out.push(VertexSet::from_indices(cur.iter().copied()));
            return;
        }
        if pool.len() - start < k - cur.len() {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut cur, &mut out);
    out
}
