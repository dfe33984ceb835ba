//! Crossing types of 4-subsets and crossing numbers of signotopes.
//!
//! A sorted 4-subset is a crossing (type I) iff its sign sequence
//! `abc, abd, acd, bcd` has an even number of `+`, and planar (type II)
//! iff that number is odd.

use serde::{Deserialize, Serialize};

use crate::enumerate::{self, check_cap};
use crate::error::{arg, Result};
use crate::exec;
use crate::signotope::{Bits, Signotope};
use crate::triples::{binomial, layout, Layout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingType {
    /// One crossing.
    TypeI,
    /// Planar.
    TypeII,
}

/// Type tag per sorted 4-subset (lex order) and the number of crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingProfile {
    pub types: Vec<([u8; 4], CrossingType)>,
    pub total: usize,
}

#[inline]
fn type_of(bits: &Bits, ranks: [u16; 4]) -> CrossingType {
    let plus = ranks.iter().filter(|&&r| bits.get(r as usize)).count();
    if plus % 2 == 0 {
        CrossingType::TypeI
    } else {
        CrossingType::TypeII
    }
}

/// Crossing type of the sorted 4-subset `a < b < c < d`.
pub fn crossing_type(s: &Signotope, quad: [u8; 4]) -> Result<CrossingType> {
    let [a, b, c, d] = quad;
    if !(1 <= a && a < b && b < c && c < d && d as usize <= s.n()) {
        return arg(format!("{quad:?} is not a sorted 4-subset of 1..={}", s.n()));
    }
    let l = s.layout();
    Ok(type_of(
        &s.bits,
        [l.rank(a, b, c), l.rank(a, b, d), l.rank(a, c, d), l.rank(b, c, d)].map(|r| r as u16),
    ))
}

/// Number of type-I 4-subsets.
pub fn crossing_number(s: &Signotope) -> usize {
    s.layout()
        .quads()
        .iter()
        .filter(|q| type_of(&s.bits, q.ranks) == CrossingType::TypeI)
        .count()
}

pub fn crossing_profile(s: &Signotope) -> CrossingProfile {
    let types: Vec<_> = s
        .layout()
        .quads()
        .iter()
        .map(|q| (q.elems, type_of(&s.bits, q.ranks)))
        .collect();
    let total = types.iter().filter(|(_, t)| *t == CrossingType::TypeI).count();
    CrossingProfile { types, total }
}

/// Result of a minimum-crossing search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCrossings {
    pub n: usize,
    pub crossings: usize,
    pub witness: Signotope,
    /// False when the search stopped on its node budget; `crossings` is then
    /// only an upper bound.
    pub exact: bool,
}

/// Minimum crossing number over all signotopes on `n` elements with the
/// lex-first witness, by exhaustive scan (`n <= 6`, or 7 with `allow_large`
/// via [`min_crossings_bounded`]).
pub fn min_crossings(n: usize, allow_large: bool, jobs: usize) -> Result<MinCrossings> {
    check_cap(n, allow_large)?;
    if n >= 7 {
        return min_crossings_bounded(n, u64::MAX);
    }
    let all = enumerate::enumerate_all(n, false, jobs)?;
    let counts = exec::map(jobs, &all, crossing_number);
    // first minimum in stream order is the lex-first witness
    let (idx, &best) = counts
        .iter()
        .enumerate()
        .min_by_key(|&(i, c)| (*c, i))
        .expect("at least one signotope");
    Ok(MinCrossings {
        n,
        crossings: best,
        witness: all[idx],
        exact: true,
    })
}

/// Branch and bound over the rank-order search tree: the crossings among
/// already closed 4-subsets bound every completion from below. Stops after
/// `node_budget` nodes and reports the incumbent as an upper bound only.
pub fn min_crossings_bounded(n: usize, node_budget: u64) -> Result<MinCrossings> {
    if !(4..=crate::triples::MAX_ELEMENTS).contains(&n) {
        return arg(format!("element count {n} outside 4..=16"));
    }
    struct Search<'a> {
        l: &'a Layout,
        closing_quads: Vec<Vec<[u16; 4]>>,
        best: usize,
        witness: Bits,
        nodes: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn go(&mut self, r: usize, bits: &mut Bits, crossings: usize) -> bool {
            if crossings >= self.best {
                return true;
            }
            if self.nodes >= self.budget {
                return false;
            }
            self.nodes += 1;
            if r == self.l.len() {
                self.best = crossings;
                self.witness = *bits;
                return true;
            }
            let mut complete = true;
            for v in [false, true] {
                bits.set(r, v);
                let mut ok = true;
                let mut added = 0;
                for q in &self.closing_quads[r] {
                    let seq = q.map(|x| bits.get(x as usize));
                    if crate::signotope::alternates(seq) {
                        ok = false;
                        break;
                    }
                    if type_of(bits, *q) == CrossingType::TypeI {
                        added += 1;
                    }
                }
                if ok {
                    complete &= self.go(r + 1, bits, crossings + added);
                }
            }
            bits.set(r, false);
            complete
        }
    }
    let l = layout(n);
    let closing_quads = (0..l.len())
        .map(|r| {
            l.quads()
                .iter()
                .filter(|q| q.ranks[3] as usize == r)
                .map(|q| q.ranks)
                .collect()
        })
        .collect();
    // the all-plus signotope is a valid incumbent
    let mut search = Search {
        l,
        closing_quads,
        best: binomial(n as u64, 4) as usize + 1,
        witness: Bits::all_plus(l.len()),
        nodes: 0,
        budget: node_budget,
    };
    let exact = search.go(0, &mut Bits::default(), 0);
    let witness = Signotope::from_bits_unchecked(n, search.witness);
    Ok(MinCrossings {
        n,
        crossings: crossing_number(&witness),
        witness,
        exact,
    })
}
