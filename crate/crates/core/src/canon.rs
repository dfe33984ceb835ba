//! Canonical forms: the lexicographically smallest sign string in the orbit
//! under relabeling (optionally together with global negation).
//!
//! Orbits are scanned explicitly over all `n!` permutations. For `n <= 8`
//! the per-permutation rank maps are precomputed once and shared.

use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::signotope::{for_each_permutation, Bits, Signotope};
use crate::triples::{layout, sort3, Layout};

/// Which group the canonical form quotients by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CanonMode {
    RelabelOnly,
    RelabelAndNegate,
}

/// The mode that reproduces the relabeling-class counts 1, 2, 6, 167.
pub const DEFAULT_CANON_MODE: CanonMode = CanonMode::RelabelAndNegate;

impl CanonMode {
    /// Order of the acting group on `n` elements.
    pub fn group_order(self, n: usize) -> u128 {
        let fact: u128 = (1..=n as u128).product();
        match self {
            CanonMode::RelabelOnly => fact,
            CanonMode::RelabelAndNegate => 2 * fact,
        }
    }

    fn negations(self) -> &'static [bool] {
        match self {
            CanonMode::RelabelOnly => &[false],
            CanonMode::RelabelAndNegate => &[false, true],
        }
    }
}

impl FromStr for CanonMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "relabel-only" => Ok(CanonMode::RelabelOnly),
            "relabel-and-negate" => Ok(CanonMode::RelabelAndNegate),
            other => Err(format!("unknown canonical mode {other:?}")),
        }
    }
}

const TABLE_CAP: usize = 8;
const FLIP: u16 = 1 << 15;

/// For each permutation `p` (lex order) and each target rank, the source
/// rank whose sign lands there, with `FLIP` set when the sign inverts.
struct PermTable {
    len: usize,
    entries: Vec<u16>,
}

fn row_for(l: &Layout, inverse: &[u8], row: &mut Vec<u16>) {
    row.clear();
    for &[x, y, z] in l.triples() {
        let ([a, b, c], odd) = sort3(
            inverse[x as usize - 1],
            inverse[y as usize - 1],
            inverse[z as usize - 1],
        );
        let src = l.rank(a, b, c) as u16;
        row.push(if odd { src | FLIP } else { src });
    }
}

fn inverse_of(p: &[u8]) -> Vec<u8> {
    // p is a permutation of 0..n; return the 1-based inverse images
    let mut inv = vec![0u8; p.len()];
    for (k, &x) in p.iter().enumerate() {
        inv[x as usize] = k as u8 + 1;
    }
    inv
}

fn perm_table(n: usize) -> &'static PermTable {
    static TABLES: [OnceLock<PermTable>; TABLE_CAP + 1] = [const { OnceLock::new() }; TABLE_CAP + 1];
    TABLES[n].get_or_init(|| {
        let l = layout(n);
        let mut entries = Vec::new();
        let mut row = Vec::with_capacity(l.len());
        for_each_permutation(n, |p| {
            row_for(l, &inverse_of(p), &mut row);
            entries.extend_from_slice(&row);
        });
        PermTable {
            len: l.len(),
            entries,
        }
    })
}

/// Visits the rank map of every permutation of `{1..n}`.
fn for_each_row(n: usize, mut f: impl FnMut(&[u16])) {
    if n <= TABLE_CAP {
        let t = perm_table(n);
        for row in t.entries.chunks_exact(t.len) {
            f(row);
        }
    } else {
        let l = layout(n);
        let mut row = Vec::with_capacity(l.len());
        for_each_permutation(n, |p| {
            row_for(l, &inverse_of(p), &mut row);
            f(&row);
        });
    }
}

#[inline]
fn image_bit(s: &Bits, entry: u16, negate: bool) -> bool {
    s.get((entry & !FLIP) as usize) ^ (entry & FLIP != 0) ^ negate
}

/// Lexicographically smallest sign string over the orbit of `s`.
pub fn canonical_form(s: &Signotope, mode: CanonMode) -> Signotope {
    let len = s.len();
    let mut best = s.bits;
    let mut cand = Bits::default();
    for_each_row(s.n(), |row| {
        for &neg in mode.negations() {
            let mut smaller = false;
            let mut aborted = false;
            for (r, &e) in row.iter().enumerate().take(len) {
                let bit = image_bit(&s.bits, e, neg);
                if !smaller {
                    let b = best.get(r);
                    if bit && !b {
                        aborted = true;
                        break;
                    }
                    smaller = !bit && b;
                }
                cand.set(r, bit);
            }
            if smaller && !aborted {
                best = cand;
            }
        }
    });
    Signotope::from_bits_unchecked(s.n(), best)
}

/// Number of group elements fixing `s`.
pub fn stabilizer_order(s: &Signotope, mode: CanonMode) -> u128 {
    let mut count = 0u128;
    for_each_row(s.n(), |row| {
        for &neg in mode.negations() {
            if row
                .iter()
                .enumerate()
                .all(|(r, &e)| image_bit(&s.bits, e, neg) == s.bits.get(r))
            {
                count += 1;
            }
        }
    });
    count
}

/// Number of distinct signotopes in the orbit of `s`.
pub fn orbit_size(s: &Signotope, mode: CanonMode) -> u128 {
    mode.group_order(s.n()) / stabilizer_order(s, mode)
}
