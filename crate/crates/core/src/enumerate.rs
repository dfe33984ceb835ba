//! Exhaustive generation and counting of generalized signotopes.
//!
//! Two independent search orders are implemented:
//!
//! * element extension (used by [`count_all`] and [`extensions`]): elements
//!   are added in increasing label order and the `C(m-1,2)` triples that
//!   contain the new element `m` are fixed in lex order. Only 4-subsets with
//!   maximum `m` are checked, which suffices because deleting an element of
//!   a signotope leaves a signotope.
//! * rank order (used by [`enumerate`]): triples are fixed by increasing lex
//!   rank; fixing `(j,k,l)` closes every 4-subset `(i,j,k,l)` with `i < j`.
//!   This visits signotopes in lexicographic sign-string order.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::signotope::{Bits, Signotope};
use crate::triples::{layout, Layout, MAX_ELEMENTS};

/// Largest `n` materialized without an explicit opt-in.
pub const DEFAULT_MATERIALIZE_CAP: usize = 6;

/// Largest `n` materialized even with the opt-in.
pub const LARGE_MATERIALIZE_CAP: usize = 7;

/// Checks the materialization cap for `n`.
pub fn check_cap(n: usize, allow_large: bool) -> Result<()> {
    let cap = if allow_large {
        LARGE_MATERIALIZE_CAP
    } else {
        DEFAULT_MATERIALIZE_CAP
    };
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n < 3 {
        return Err(Error::Argument(format!("element count {n} below 3")));
    }
    Ok(())
}

/// Bitmask of admissible values (bit 0 = Minus, bit 1 = Plus) for the
/// triple closing the given constraints.
#[inline]
fn admissible(bits: &Bits, closing: &[[u16; 3]]) -> u8 {
    let mut allowed = 0b11u8;
    for &[r1, r2, r3] in closing {
        let (b1, b2, b3) = (
            bits.get(r1 as usize),
            bits.get(r2 as usize),
            bits.get(r3 as usize),
        );
        if b1 != b2 && b2 != b3 {
            allowed &= 1 << b3 as u8;
        }
    }
    allowed
}

// ---------------------------------------------------------------------------
// element extension

struct Step {
    rank: usize,
    closing: Vec<[u16; 3]>,
}

/// Per-element steps for extending a signotope on `m - 1` elements by `m`,
/// with ranks taken from the layout of the final size.
struct Extender {
    n: usize,
    levels: Vec<Vec<Step>>,
}

impl Extender {
    fn new(n: usize) -> Self {
        let l = layout(n);
        let mut levels: Vec<Vec<Step>> = (0..=n).map(|_| Vec::new()).collect();
        for (m, level) in levels.iter_mut().enumerate().skip(3) {
            let m8 = m as u8;
            for b in 1..m8 {
                for c in b + 1..m8 {
                    let closing = (1..b)
                        .map(|a| {
                            [
                                l.rank(a, b, c) as u16,
                                l.rank(a, b, m8) as u16,
                                l.rank(a, c, m8) as u16,
                            ]
                        })
                        .collect();
                    level.push(Step {
                        rank: l.rank(b, c, m8),
                        closing,
                    });
                }
            }
        }
        Extender { n, levels }
    }

    fn walk(&self, m: usize, step: usize, bits: &mut Bits, leaf: &mut impl FnMut(&Bits)) {
        let steps = &self.levels[m];
        if step == steps.len() {
            if m == self.n {
                leaf(bits);
            } else {
                self.walk(m + 1, 0, bits, leaf);
            }
            return;
        }
        let st = &steps[step];
        let allowed = admissible(bits, &st.closing);
        for v in [false, true] {
            if allowed & (1 << v as u8) != 0 {
                bits.set(st.rank, v);
                self.walk(m, step + 1, bits, leaf);
            }
        }
        bits.set(st.rank, false);
    }

    fn count(&self, m: usize, step: usize, bits: &mut Bits) -> u128 {
        let steps = &self.levels[m];
        if step == steps.len() {
            return if m == self.n {
                1
            } else {
                self.count(m + 1, 0, bits)
            };
        }
        let st = &steps[step];
        let allowed = admissible(bits, &st.closing);
        let mut total = 0;
        for v in [false, true] {
            if allowed & (1 << v as u8) != 0 {
                bits.set(st.rank, v);
                total += self.count(m, step + 1, bits);
            }
        }
        bits.set(st.rank, false);
        total
    }
}

/// Copies a signotope's signs into the layout of a larger element count;
/// triples touching the new elements are Minus.
fn embed(s: &Signotope, target: &Layout) -> Bits {
    let mut bits = Bits::default();
    for (r, &[i, j, k]) in s.layout().triples().iter().enumerate() {
        if s.bit(r) {
            bits.set(target.rank(i, j, k), true);
        }
    }
    bits
}

/// Exact number of generalized signotopes on `n` labeled elements.
///
/// The search tree is split below a frozen prefix level (all signotopes on
/// `min(n-1, 6)` elements) and completions are counted independently.
pub fn count_all(n: usize, jobs: usize) -> Result<u128> {
    if !(3..=MAX_ELEMENTS).contains(&n) {
        return Err(Error::Argument(format!("element count {n} outside 3..={MAX_ELEMENTS}")));
    }
    if n <= 4 {
        let ext = Extender::new(n);
        return Ok(ext.count(3, 0, &mut Bits::default()));
    }
    let split = (n - 1).min(6);
    let prefixes = all_by_extension(split);
    let ext = Extender::new(n);
    let target = layout(n);
    Ok(exec::map_reduce(
        jobs,
        &prefixes,
        0u128,
        |p| ext.count(split + 1, 0, &mut embed(p, target)),
        |a, b| a + b,
    ))
}

/// All signotopes on `n` elements in element-extension order.
fn all_by_extension(n: usize) -> Vec<Signotope> {
    let ext = Extender::new(n);
    let mut out = Vec::new();
    ext.walk(3, 0, &mut Bits::default(), &mut |b| {
        out.push(Signotope::from_bits_unchecked(n, *b))
    });
    out
}

/// Visits every signotope on `n + 1` elements whose restriction to
/// `{1..n}` is `prefix`.
pub fn extensions(prefix: &Signotope, mut visit: impl FnMut(&Signotope)) -> Result<()> {
    let n = prefix.n() + 1;
    if n > MAX_ELEMENTS {
        return Err(Error::Argument(format!("cannot extend beyond {MAX_ELEMENTS} elements")));
    }
    let ext = Extender::new(n);
    let mut bits = embed(prefix, layout(n));
    ext.walk(n, 0, &mut bits, &mut |b| {
        visit(&Signotope::from_bits_unchecked(n, *b))
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// rank order

fn walk_ranks(l: &Layout, r: usize, bits: &mut Bits, visit: &mut impl FnMut(&Bits)) {
    if r == l.len() {
        visit(bits);
        return;
    }
    let allowed = admissible(bits, l.closing(r));
    for v in [false, true] {
        if allowed & (1 << v as u8) != 0 {
            bits.set(r, v);
            walk_ranks(l, r + 1, bits, visit);
        }
    }
    bits.set(r, false);
}

/// Valid partial assignments of the first `depth` ranks, in lex order.
fn rank_prefixes(l: &Layout, depth: usize) -> Vec<Bits> {
    fn go(l: &Layout, r: usize, depth: usize, bits: &mut Bits, out: &mut Vec<Bits>) {
        if r == depth {
            out.push(*bits);
            return;
        }
        let allowed = admissible(bits, l.closing(r));
        for v in [false, true] {
            if allowed & (1 << v as u8) != 0 {
                bits.set(r, v);
                go(l, r + 1, depth, bits, out);
            }
        }
        bits.set(r, false);
    }
    let mut out = Vec::new();
    go(l, 0, depth, &mut Bits::default(), &mut out);
    out
}

/// Streams every signotope on `n` elements, in increasing sign-string order.
pub fn enumerate(n: usize, allow_large: bool, mut visit: impl FnMut(&Signotope)) -> Result<()> {
    check_cap(n, allow_large)?;
    let l = layout(n);
    walk_ranks(l, 0, &mut Bits::default(), &mut |b| {
        visit(&Signotope::from_bits_unchecked(n, *b))
    });
    Ok(())
}

/// Materializes every signotope on `n` elements in increasing sign-string
/// order. The output does not depend on `jobs`.
pub fn enumerate_all(n: usize, allow_large: bool, jobs: usize) -> Result<Vec<Signotope>> {
    check_cap(n, allow_large)?;
    let l = layout(n);
    let depth = l.len().min(12);
    let prefixes = rank_prefixes(l, depth);
    let chunks = exec::map(jobs, &prefixes, |p| {
        let mut out = Vec::new();
        let mut bits = *p;
        walk_ranks(l, depth, &mut bits, &mut |b| {
            out.push(Signotope::from_bits_unchecked(n, *b))
        });
        out
    });
    Ok(chunks.concat())
}

/// A seeded random signotope. Elements are added one at a time; the triples
/// of each new element are drawn by a randomized depth-first search with a
/// node budget, falling back to all-plus for that element (always valid) if
/// the budget runs out. Not uniform over signotopes.
pub fn random_signotope<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Signotope> {
    if !(3..=MAX_ELEMENTS).contains(&n) {
        return Err(Error::Argument(format!("element count {n} outside 3..={MAX_ELEMENTS}")));
    }
    fn go<R: Rng + ?Sized>(steps: &[Step], k: usize, bits: &mut Bits, rng: &mut R, budget: &mut u32) -> bool {
        if k == steps.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let st = &steps[k];
        let allowed = admissible(bits, &st.closing);
        let first = rng.gen::<bool>();
        for v in [first, !first] {
            if allowed & (1 << v as u8) != 0 {
                bits.set(st.rank, v);
                if go(steps, k + 1, bits, rng, budget) {
                    return true;
                }
            }
        }
        bits.set(st.rank, false);
        false
    }
    let ext = Extender::new(n);
    let mut bits = Bits::default();
    for m in 3..=n {
        let steps = &ext.levels[m];
        let mut budget = 20_000;
        if !go(steps, 0, &mut bits, rng, &mut budget) {
            for st in steps {
                bits.set(st.rank, true);
            }
        }
    }
    Ok(Signotope::from_bits_unchecked(n, bits))
}
