//! Lexicographic indexing of sorted triples and 4-subsets of `{1..n}`.
//!
//! Every per-`n` lookup table lives in a lazily built [`Layout`] that is
//! shared by all signotopes on `n` elements.

use std::sync::OnceLock;

use crate::error::{arg, Result};

/// Largest supported element count. `C(16,3) = 560` triples.
pub const MAX_ELEMENTS: usize = 16;

pub(crate) const MAX_TRIPLES: usize = 560;
pub(crate) const WORDS: usize = MAX_TRIPLES.div_ceil(64);

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of a sorted triple in the lexicographic order of all sorted
/// triples of `{1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleRank(pub usize);

/// 0-based lexicographic rank of `i < j < k` among the sorted triples of `{1..n}`.
pub fn triple_rank(n: usize, i: usize, j: usize, k: usize) -> Result<TripleRank> {
    if !(3..=MAX_ELEMENTS).contains(&n) {
        return arg(format!("n={n} outside 3..={MAX_ELEMENTS}"));
    }
    if !(1 <= i && i < j && j < k && k <= n) {
        return arg(format!("({i},{j},{k}) is not a sorted triple of 1..={n}"));
    }
    Ok(TripleRank(rank_unchecked(n, i, j, k)))
}

fn rank_unchecked(n: usize, i: usize, j: usize, k: usize) -> usize {
    let (n, i, j, k) = (n as u64, i as u64, j as u64, k as u64);
    // triples whose first element is below i
    let before_first = binomial(n, 3) - binomial(n - i + 1, 3);
    // triples (i, b, *) with i < b < j
    let before_second = binomial(n - i, 2) - binomial(n - j + 1, 2);
    (before_first + before_second + (k - j - 1)) as usize
}

/// A sorted 4-subset `a<b<c<d` together with the ranks of
/// `abc, abd, acd, bcd` (lexicographic order of its triples).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quad {
    pub elems: [u8; 4],
    pub ranks: [u16; 4],
}

/// Per-`n` lookup tables.
#[derive(Debug)]
pub struct Layout {
    pub n: usize,
    triples: Vec<[u8; 3]>,
    rank: Vec<u16>,
    quads: Vec<Quad>,
    /// For the triple of rank `r = (j,k,l)`, the ranks `(ijk, ijl, ikl)` for every `i < j`.
    closing: Vec<Vec<[u16; 3]>>,
}

const STRIDE: usize = MAX_ELEMENTS + 1;

impl Layout {
    fn build(n: usize) -> Self {
        let mut triples = Vec::with_capacity(binomial(n as u64, 3) as usize);
        let mut rank = vec![u16::MAX; STRIDE * STRIDE * STRIDE];
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    rank[(i * STRIDE + j) * STRIDE + k] = triples.len() as u16;
                    triples.push([i as u8, j as u8, k as u8]);
                }
            }
        }
        let r = |i: usize, j: usize, k: usize| rank[(i * STRIDE + j) * STRIDE + k];
        let mut quads = Vec::new();
        let mut closing = vec![Vec::new(); triples.len()];
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        quads.push(Quad {
                            elems: [a as u8, b as u8, c as u8, d as u8],
                            ranks: [r(a, b, c), r(a, b, d), r(a, c, d), r(b, c, d)],
                        });
                        closing[r(b, c, d) as usize].push([r(a, b, c), r(a, b, d), r(a, c, d)]);
                    }
                }
            }
        }
        Layout {
            n,
            triples,
            rank,
            quads,
            closing,
        }
    }

    /// Number of sorted triples, `C(n,3)`.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Rank of a sorted triple; the caller guarantees `1 <= i < j < k <= n`.
    #[inline]
    pub fn rank(&self, i: u8, j: u8, k: u8) -> usize {
        debug_assert!(0 < i && i < j && j < k && k as usize <= self.n);
        self.rank[(i as usize * STRIDE + j as usize) * STRIDE + k as usize] as usize
    }

    #[inline]
    pub fn triple(&self, rank: usize) -> [u8; 3] {
        self.triples[rank]
    }

    pub fn triples(&self) -> &[[u8; 3]] {
        &self.triples
    }

    /// All sorted 4-subsets in lexicographic order.
    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    pub(crate) fn closing(&self, rank: usize) -> &[[u16; 3]] {
        &self.closing[rank]
    }
}

/// Shared tables for `n` elements, built on first use.
pub fn layout(n: usize) -> &'static Layout {
    static LAYOUTS: [OnceLock<Layout>; STRIDE] = [const { OnceLock::new() }; STRIDE];
    assert!(
        (1..=MAX_ELEMENTS).contains(&n),
        "element count {n} outside 1..={MAX_ELEMENTS}"
    );
    LAYOUTS[n].get_or_init(|| Layout::build(n))
}

/// Sorts three distinct labels, returning the sorted triple and whether the
/// sorting permutation is odd.
#[inline]
pub fn sort3(mut a: u8, mut b: u8, mut c: u8) -> ([u8; 3], bool) {
    let mut odd = false;
    if a > b {
        std::mem::swap(&mut a, &mut b);
        odd = !odd;
    }
    if b > c {
        std::mem::swap(&mut b, &mut c);
        odd = !odd;
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
        odd = !odd;
    }
    ([a, b, c], odd)
}
