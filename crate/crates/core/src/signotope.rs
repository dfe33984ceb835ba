//! The signotope value type, the alternating extension, validation and the
//! relabeling/negation actions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::sign::Sign;
use crate::triples::{binomial, layout, sort3, Layout, MAX_ELEMENTS, WORDS};

/// Packed sign vector: rank `r` lives at bit `63 - r % 64` of word `r / 64`,
/// so comparing the word arrays compares sign strings lexicographically
/// with `Minus < Plus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct Bits(pub(crate) [u64; WORDS]);

impl Bits {
    #[inline]
    pub(crate) fn get(&self, r: usize) -> bool {
        (self.0[r >> 6] >> (63 - (r & 63))) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, v: bool) {
        let mask = 1u64 << (63 - (r & 63));
        if v {
            self.0[r >> 6] |= mask;
        } else {
            self.0[r >> 6] &= !mask;
        }
    }

    #[inline]
    pub(crate) fn toggle(&mut self, r: usize) {
        self.0[r >> 6] ^= 1u64 << (63 - (r & 63));
    }

    pub(crate) fn all_plus(len: usize) -> Self {
        let mut b = Bits::default();
        for (w, word) in b.0.iter_mut().enumerate() {
            let lo = w * 64;
            if lo >= len {
                break;
            }
            let take = (len - lo).min(64);
            *word = if take == 64 { u64::MAX } else { !(u64::MAX >> take) };
        }
        b
    }
}

/// A forbidden pattern found on a sorted 4-subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub quad: [u8; 4],
    /// Signs of `abc, abd, acd, bcd`.
    pub pattern: [Sign; 4],
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.quad;
        let p: String = self.pattern.iter().map(|s| s.as_char()).collect();
        write!(f, "4-subset {{{a},{b},{c},{d}}} has pattern {p}")
    }
}

/// True iff the 4-bit sequence alternates (`+-+-` or `-+-+`).
#[inline]
pub(crate) fn alternates(s: [bool; 4]) -> bool {
    s[0] != s[1] && s[1] != s[2] && s[2] != s[3]
}

/// A generalized signotope: one sign per sorted triple of `{1..n}`, with no
/// sorted 4-subset carrying `+-+-` or `-+-+`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signotope {
    n: u8,
    pub(crate) bits: Bits,
}

impl PartialOrd for Signotope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `n`, then lexicographically by sign string with `Minus < Plus`.
impl Ord for Signotope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.bits.cmp(&other.bits))
    }
}

impl fmt::Debug for Signotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signotope(n={} {})", self.n, self.sign_string())
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(3..=MAX_ELEMENTS).contains(&n) {
        return arg(format!("element count {n} outside 3..={MAX_ELEMENTS}"));
    }
    Ok(())
}

/// Checks a raw sign sequence, returning the lex-first violating 4-subset.
pub fn validate(n: usize, signs: &[Sign]) -> Result<Signotope> {
    check_n(n)?;
    let expected = binomial(n as u64, 3) as usize;
    if signs.len() != expected {
        return arg(format!(
            "expected C({n},3) = {expected} signs, got {}",
            signs.len()
        ));
    }
    let mut bits = Bits::default();
    for (r, s) in signs.iter().enumerate() {
        bits.set(r, s.is_plus());
    }
    Signotope::from_bits(n, bits)
}

impl Signotope {
    pub(crate) fn from_bits(n: usize, bits: Bits) -> Result<Self> {
        let s = Signotope { n: n as u8, bits };
        match s.first_violation() {
            None => Ok(s),
            Some(v) => Err(Error::Invalid(v)),
        }
    }

    /// Caller guarantees validity (search frontiers and constructions that
    /// are valid by case analysis).
    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: Bits) -> Self {
        debug_assert!(Signotope { n: n as u8, bits }.first_violation().is_none());
        Signotope { n: n as u8, bits }
    }

    /// Builds a signotope from the set of its `+`-triples (any order).
    pub fn from_plus_triples(n: usize, plus: &[[u8; 3]]) -> Result<Self> {
        check_n(n)?;
        let l = layout(n);
        let mut bits = Bits::default();
        for &[i, j, k] in plus {
            if !(1 <= i && i < j && j < k && k as usize <= n) {
                return arg(format!("({i},{j},{k}) is not a sorted triple of 1..={n}"));
            }
            bits.set(l.rank(i, j, k), true);
        }
        Self::from_bits(n, bits)
    }

    pub fn all_plus(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Signotope {
            n: n as u8,
            bits: Bits::all_plus(layout(n).len()),
        })
    }

    pub fn all_minus(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Signotope {
            n: n as u8,
            bits: Bits::default(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn layout(&self) -> &'static Layout {
        layout(self.n as usize)
    }

    /// Number of stored signs, `C(n,3)`.
    pub fn len(&self) -> usize {
        self.layout().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Stored sign at a triple rank.
    #[inline]
    pub fn sign_at(&self, rank: usize) -> Sign {
        Sign::from_bit(self.bits.get(rank))
    }

    #[inline]
    pub(crate) fn bit(&self, rank: usize) -> bool {
        self.bits.get(rank)
    }

    /// Stored sign of a sorted triple.
    #[inline]
    pub fn sign_sorted(&self, i: u8, j: u8, k: u8) -> Sign {
        self.sign_at(self.layout().rank(i, j, k))
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|r| self.sign_at(r)).collect()
    }

    pub fn sign_string(&self) -> String {
        (0..self.len()).map(|r| self.sign_at(r).as_char()).collect()
    }

    /// Sorted triples carrying `+`, ascending by rank.
    pub fn plus_triples(&self) -> Vec<[u8; 3]> {
        let l = self.layout();
        (0..l.len())
            .filter(|&r| self.bits.get(r))
            .map(|r| l.triple(r))
            .collect()
    }

    pub fn plus_count(&self) -> usize {
        self.bits.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Alternating extension: `sgn(sigma) * chi(sorted triple)`.
    pub fn chi(&self, a: usize, b: usize, c: usize) -> Result<Sign> {
        let n = self.n();
        if a == b || b == c || a == c {
            return arg(format!("repeated element in ({a},{b},{c})"));
        }
        if [a, b, c].iter().any(|&x| x == 0 || x > n) {
            return arg(format!("({a},{b},{c}) not within 1..={n}"));
        }
        Ok(self.chi_unchecked(a as u8, b as u8, c as u8))
    }

    #[inline]
    pub(crate) fn chi_unchecked(&self, a: u8, b: u8, c: u8) -> Sign {
        let ([i, j, k], odd) = sort3(a, b, c);
        let s = self.sign_sorted(i, j, k);
        if odd {
            -s
        } else {
            s
        }
    }

    /// Lex-first sorted 4-subset whose sign sequence alternates.
    pub fn first_violation(&self) -> Option<Violation> {
        self.layout()
            .quads()
            .iter()
            .find(|q| alternates(q.ranks.map(|r| self.bits.get(r as usize))))
            .map(|q| Violation {
                quad: q.elems,
                pattern: q.ranks.map(|r| self.sign_at(r as usize)),
            })
    }

    /// Inverts every stored sign.
    pub fn negate(&self) -> Signotope {
        let len = self.len();
        let mask = Bits::all_plus(len);
        let mut bits = self.bits;
        for (w, m) in bits.0.iter_mut().zip(mask.0) {
            *w ^= m;
        }
        Signotope { n: self.n, bits }
    }

    /// Applies a relabeling: the result satisfies
    /// `chi'(p(a), p(b), p(c)) = chi(a, b, c)`.
    pub fn relabel(&self, p: &Permutation) -> Result<Signotope> {
        if p.len() != self.n() {
            return arg(format!(
                "permutation on {} elements applied to n={}",
                p.len(),
                self.n
            ));
        }
        let l = self.layout();
        let mut bits = Bits::default();
        for (r, &[a, b, c]) in l.triples().iter().enumerate() {
            let ([x, y, z], odd) = sort3(p.image(a), p.image(b), p.image(c));
            bits.set(l.rank(x, y, z), self.bits.get(r) != odd);
        }
        Ok(Signotope::from_bits_unchecked(self.n(), bits))
    }

    /// Restriction to a set of elements, relabeled order-preservingly to
    /// `1..=elems.len()`.
    pub fn restrict(&self, elems: &[u8]) -> Result<Signotope> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != elems.len() || sorted.iter().any(|&e| e == 0 || e as usize > self.n()) {
            return arg(format!("{elems:?} is not a set of elements of 1..={}", self.n));
        }
        let m = sorted.len();
        check_n(m)?;
        let sub = layout(m);
        let mut bits = Bits::default();
        for (r, &[i, j, k]) in sub.triples().iter().enumerate() {
            let v = self.sign_sorted(sorted[i as usize - 1], sorted[j as usize - 1], sorted[k as usize - 1]);
            bits.set(r, v.is_plus());
        }
        Ok(Signotope::from_bits_unchecked(m, bits))
    }

    /// Deletes one element, relabeling the rest order-preservingly.
    pub fn delete(&self, element: u8) -> Result<Signotope> {
        let keep: Vec<u8> = (1..=self.n).filter(|&e| e != element).collect();
        if keep.len() == self.n() {
            return arg(format!("element {element} not in 1..={}", self.n));
        }
        self.restrict(&keep)
    }

    /// Signs of `abc, abd, acd, bcd` for a sorted 4-subset.
    pub fn quad_signs(&self, a: u8, b: u8, c: u8, d: u8) -> [Sign; 4] {
        [
            self.sign_sorted(a, b, c),
            self.sign_sorted(a, b, d),
            self.sign_sorted(a, c, d),
            self.sign_sorted(b, c, d),
        ]
    }
}

/// A bijection on `{1..n}`, stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// `images[k]` is the image of `k + 1`.
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return arg(format!("{images:?} is not a permutation of 1..={n}"));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// Swaps `i` and `j`.
    pub fn transposition(n: usize, i: u8, j: u8) -> Result<Self> {
        if i == 0 || j == 0 || i as usize > n || j as usize > n {
            return arg(format!("transposition ({i} {j}) outside 1..={n}"));
        }
        let mut p = Self::identity(n);
        p.images.swap(i as usize - 1, j as usize - 1);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn image(&self, x: u8) -> u8 {
        self.images[x as usize - 1]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation {
            images: first.images.iter().map(|&x| self.image(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = k as u8 + 1;
        }
        Permutation { images: inv }
    }
}

/// Visits all permutations of `0..n` in lexicographic order.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        f(&p);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}
