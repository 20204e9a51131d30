use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Hard upper bound on the number of attributes in a context.
pub const MAX_ATTRIBUTES: usize = 64;

/// A set of attribute indices, stored as a 64-bit mask.
///
/// Ordering is by cardinality first, then lexicographic on the sorted index
/// list. Every listing produced by this crate uses that order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AttrSet(u64);

impl AttrSet {
    pub const EMPTY: AttrSet = AttrSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        AttrSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ATTRIBUTES, "at most {MAX_ATTRIBUTES} attributes");
        if n == 64 {
            AttrSet(u64::MAX)
        } else {
            AttrSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_ATTRIBUTES);
        AttrSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ATTRIBUTES && (self.0 >> i) & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        AttrSet(self.0 | AttrSet::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        AttrSet(self.0 & !AttrSet::singleton(i).0)
    }

    pub fn union(self, other: AttrSet) -> Self {
        AttrSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AttrSet) -> Self {
        AttrSet(self.0 & other.0)
    }

    pub fn difference(self, other: AttrSet) -> Self {
        AttrSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AttrSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn max_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = AttrSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(AttrSet(cur))
        })
    }
}

impl Ord for AttrSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the smallest index where they differ belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for AttrSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for i in iter {
            bits |= AttrSet::singleton(i).0;
        }
        AttrSet(bits)
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A set of object indices. Objects are not bounded in number.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjSet(BTreeSet<usize>);

impl ObjSet {
    pub fn new() -> Self {
        ObjSet(BTreeSet::new())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ObjSet(it.into_iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.0.insert(i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &ObjSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }
}

impl FromIterator<usize> for ObjSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ObjSet(iter.into_iter().collect())
    }
}

/// Checks `pred` on every subset of `mask` when it has at most `limit`
/// elements, and only on `mask` itself otherwise. Callers must pass a
/// predicate that is antitone in its argument, so that the largest subset
/// decides the whole family.
pub(crate) fn forall_subsets(
    mask: AttrSet,
    limit: usize,
    mut pred: impl FnMut(AttrSet) -> bool,
) -> Option<AttrSet> {
    if mask.len() <= limit {
        mask.subsets().find(|&m| !pred(m))
    } else if pred(mask) {
        None
    } else {
        Some(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order_matches_listing() {
        let mut v = [
            AttrSet::from_indices([0, 1, 2]),
            AttrSet::from_indices([1, 2]),
            AttrSet::from_indices([1]),
            AttrSet::EMPTY,
            AttrSet::from_indices([0, 1]),
            AttrSet::from_indices([0]),
        ];
        v.sort();
        let lists: Vec<Vec<usize>> = v.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![0, 1],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn subsets_are_complete_and_distinct() {
        let m = AttrSet::from_indices([1, 4, 7, 9]);
        let subs: Vec<AttrSet> = m.subsets().collect();
        assert_eq!(subs.len(), 16);
        let uniq: BTreeSet<AttrSet> = subs.iter().copied().collect();
        assert_eq!(uniq.len(), 16);
        assert!(subs.iter().all(|s| s.is_subset(m)));
        assert_eq!(AttrSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display_lists_indices() {
        assert_eq!(AttrSet::from_indices([2, 0]).to_string(), "{0, 2}");
        assert_eq!(AttrSet::EMPTY.to_string(), "{}");
    }

    #[test]
    fn full_handles_width() {
        assert_eq!(AttrSet::full(0), AttrSet::EMPTY);
        assert_eq!(AttrSet::full(64).len(), 64);
        assert_eq!(AttrSet::full(3).to_vec(), vec![0, 1, 2]);
    }
}
