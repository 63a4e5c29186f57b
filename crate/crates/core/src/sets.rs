//! Small bitsets over vertex and edge indices.
//!
//! Both sets are capped at 64 elements; every exhaustive scan in this crate is
//! exponential in one of these sizes anyway.

use core::cmp::Ordering;
use core::fmt;

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident, $iter:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
        pub struct $name(u64);

        impl $name {
            pub const EMPTY: Self = Self(0);

            #[inline]
            pub const fn from_bits(bits: u64) -> Self {
                Self(bits)
            }

            #[inline]
            pub const fn bits(self) -> u64 {
                self.0
            }

            /// The set `{0, .., n-1}`.
            #[inline]
            pub const fn full(n: usize) -> Self {
                if n >= 64 {
                    Self(u64::MAX)
                } else {
                    Self((1u64 << n) - 1)
                }
            }

            #[inline]
            pub const fn singleton(i: usize) -> Self {
                Self(1u64 << i)
            }

            #[inline]
            pub const fn contains(self, i: usize) -> bool {
                i < 64 && self.0 & (1u64 << i) != 0
            }

            #[inline]
            pub fn insert(&mut self, i: usize) {
                self.0 |= 1u64 << i;
            }

            #[inline]
            pub fn remove(&mut self, i: usize) {
                self.0 &= !(1u64 << i);
            }

            #[inline]
            pub const fn with(self, i: usize) -> Self {
                Self(self.0 | (1u64 << i))
            }

            #[inline]
            pub const fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            #[inline]
            pub const fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub const fn union(self, other: Self) -> Self {
                Self(self.0 | other.0)
            }

            #[inline]
            pub const fn intersection(self, other: Self) -> Self {
                Self(self.0 & other.0)
            }

            #[inline]
            pub const fn difference(self, other: Self) -> Self {
                Self(self.0 & !other.0)
            }

            #[inline]
            pub const fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            #[inline]
            pub const fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            #[inline]
            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }

            #[inline]
            pub fn iter(self) -> $iter {
                $iter(self.0)
            }

            /// All nonempty subsets, in increasing order of their bit patterns.
            pub fn subsets(self) -> Subsets<Self> {
                Subsets { mask: self.0, next: Some(self.0 & self.0.wrapping_neg()), wrap: Self }
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = Self::EMPTY;
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        /// Sets compare as their sorted element lists.
        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                self.iter().cmp(other.iter())
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }

        impl IntoIterator for $name {
            type Item = usize;
            type IntoIter = $iter;
            fn into_iter(self) -> $iter {
                self.iter()
            }
        }

        #[derive(Clone, Debug)]
        pub struct $iter(u64);

        impl Iterator for $iter {
            type Item = usize;

            #[inline]
            fn next(&mut self) -> Option<usize> {
                if self.0 == 0 {
                    return None;
                }
                let i = self.0.trailing_zeros() as usize;
                self.0 &= self.0 - 1;
                Some(i)
            }

            fn size_hint(&self) -> (usize, Option<usize>) {
                let n = self.0.count_ones() as usize;
                (n, Some(n))
            }
        }

        impl ExactSizeIterator for $iter {}
    };
}

bitset!(
    /// A set of components of the curve, i.e. a subcurve when nonempty.
    ///
    /// Connectedness is a property of a subcurve relative to a graph, not an
    /// invariant of the type.
    Subcurve,
    SubcurveIter
);

bitset!(
    /// A set of edge ids (nodes of the curve).
    EdgeSet,
    EdgeSetIter
);

/// Iterator over the nonempty submasks of a mask, smallest bit pattern first.
#[derive(Clone, Debug)]
pub struct Subsets<T> {
    mask: u64,
    next: Option<u64>,
    wrap: fn(u64) -> T,
}

impl<T> Iterator for Subsets<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let cur = self.next?;
        if cur == 0 {
            self.next = None;
            return None;
        }
        // next submask in increasing numeric order
        let nxt = (cur | !self.mask).wrapping_add(1) & self.mask;
        self.next = if nxt == 0 { None } else { Some(nxt) };
        Some((self.wrap)(cur))
    }
}
