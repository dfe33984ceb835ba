//! Flips, relabeling classes and flip classes.
//!
//! Relabeling classes are generated orderly: every signotope on `n`
//! elements is a relabeling of an extension of a class representative on
//! `n - 1` elements, so the representatives on `n` elements are the
//! canonical forms of all extensions of the previous representatives. Class
//! sizes are orbit sizes, which makes `sum(sizes) == count_all(n)` an
//! independent check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, orbit_size, CanonMode};
use crate::cross::crossing_number;
use crate::enumerate::{self, check_cap};
use crate::error::{arg, Error, Result};
use crate::exec;
use crate::signotope::{Bits, Signotope};

/// An unordered pair of distinct elements whose common triples are inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlipMove {
    i: u8,
    j: u8,
}

impl FlipMove {
    pub fn new(i: u8, j: u8) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return arg(format!("flip pair ({i},{j}) must be two distinct elements"));
        }
        Ok(FlipMove {
            i: i.min(j),
            j: i.max(j),
        })
    }

    pub fn pair(&self) -> (u8, u8) {
        (self.i, self.j)
    }
}

fn flipped_bits(s: &Signotope, m: FlipMove) -> Bits {
    let l = s.layout();
    let mut bits = s.bits;
    for x in 1..=s.n() as u8 {
        if x != m.i && x != m.j {
            let mut t = [m.i, m.j, x];
            t.sort_unstable();
            bits.toggle(l.rank(t[0], t[1], t[2]));
        }
    }
    bits
}

fn check_move(s: &Signotope, m: FlipMove) -> Result<()> {
    if m.j as usize > s.n() {
        return arg(format!("flip pair ({},{}) outside 1..={}", m.i, m.j, s.n()));
    }
    Ok(())
}

/// Whether inverting the triples containing both elements of `m` yields a
/// signotope.
pub fn flippable(s: &Signotope, m: FlipMove) -> Result<bool> {
    check_move(s, m)?;
    Ok(Signotope::from_bits(s.n(), flipped_bits(s, m)).is_ok())
}

/// Inverts the `n - 2` triples containing both elements of `m`.
pub fn flip(s: &Signotope, m: FlipMove) -> Result<Signotope> {
    check_move(s, m)?;
    Signotope::from_bits(s.n(), flipped_bits(s, m)).map_err(|e| match e {
        Error::Invalid(violation) => Error::NotFlippable {
            i: m.i,
            j: m.j,
            violation,
        },
        e => e,
    })
}

/// All flippable pairs of `s`, in lex order.
pub fn flippable_moves(s: &Signotope) -> Vec<FlipMove> {
    let n = s.n() as u8;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let m = FlipMove { i, j };
            if Signotope::from_bits(s.n(), flipped_bits(s, m)).is_ok() {
                out.push(m);
            }
        }
    }
    out
}

/// Signotopes reachable by one flip.
pub fn flip_neighbors(s: &Signotope) -> Vec<Signotope> {
    flippable_moves(s)
        .into_iter()
        .map(|m| Signotope::from_bits_unchecked(s.n(), flipped_bits(s, m)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Relabeling,
    Flip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Smallest canonical form in the class.
    pub representative: Signotope,
    /// Number of member signotopes (labeled objects).
    pub size: u128,
    pub crossings: usize,
    /// Canonical forms in the class (one for relabeling classes).
    pub canonical_members: usize,
}

/// A partition of all signotopes on `n` elements into classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassIndex {
    pub kind: ClassKind,
    pub n: usize,
    pub mode: CanonMode,
    pub classes: Vec<ClassEntry>,
}

impl ClassIndex {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Sum of class sizes.
    pub fn total(&self) -> u128 {
        self.classes.iter().map(|c| c.size).sum()
    }
}

/// Canonical representatives of all relabeling classes on `n` elements.
pub fn relabeling_representatives(n: usize, mode: CanonMode, jobs: usize) -> Result<Vec<Signotope>> {
    if n < 3 {
        return arg(format!("element count {n} below 3"));
    }
    let mut reps: Vec<Signotope> = {
        let set: BTreeSet<Signotope> = [Signotope::all_plus(3)?, Signotope::all_minus(3)?]
            .iter()
            .map(|s| canonical_form(s, mode))
            .collect();
        set.into_iter().collect()
    };
    for _ in 4..=n {
        let per_rep = exec::map(jobs, &reps, |r| {
            let mut forms = BTreeSet::new();
            enumerate::extensions(r, |e| {
                forms.insert(canonical_form(e, mode));
            })
            .expect("extension stays within the element cap");
            forms
        });
        let merged: BTreeSet<Signotope> = per_rep.into_iter().flatten().collect();
        reps = merged.into_iter().collect();
    }
    Ok(reps)
}

/// Relabeling classes on `n` elements (`n <= 6`, or 7 with `allow_large`).
pub fn relabeling_classes(n: usize, mode: CanonMode, allow_large: bool, jobs: usize) -> Result<ClassIndex> {
    check_cap(n, allow_large)?;
    let reps = relabeling_representatives(n, mode, jobs)?;
    let classes = exec::map(jobs, &reps, |r| ClassEntry {
        representative: *r,
        size: orbit_size(r, mode),
        crossings: crossing_number(r),
        canonical_members: 1,
    });
    Ok(ClassIndex {
        kind: ClassKind::Relabeling,
        n,
        mode,
        classes,
    })
}

pub fn count_relabeling_classes(n: usize, mode: CanonMode, allow_large: bool, jobs: usize) -> Result<usize> {
    Ok(relabeling_classes(n, mode, allow_large, jobs)?.len())
}

/// Class sizes by canonicalizing every enumerated signotope; an
/// independent route to the relabeling classes.
pub fn relabeling_sizes_by_enumeration(n: usize, mode: CanonMode, jobs: usize) -> Result<BTreeMap<Signotope, u128>> {
    let all = enumerate::enumerate_all(n, false, jobs)?;
    let forms = exec::map(jobs, &all, |s| canonical_form(s, mode));
    let mut sizes = BTreeMap::new();
    for f in forms {
        *sizes.entry(f).or_insert(0) += 1;
    }
    Ok(sizes)
}

/// The flip class of `s` (closed under flips and the relabeling group of
/// `mode`), as the set of canonical forms reached by breadth-first search.
pub fn flip_class(s: &Signotope, mode: CanonMode) -> BTreeSet<Signotope> {
    let start = canonical_form(s, mode);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for nb in flip_neighbors(&cur) {
            let c = canonical_form(&nb, mode);
            if seen.insert(c) {
                queue.push_back(c);
            }
        }
    }
    seen
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Flip classes on `n` elements, built by joining relabeling classes that
/// are one flip apart.
pub fn flip_classes(n: usize, mode: CanonMode, allow_large: bool, jobs: usize) -> Result<ClassIndex> {
    let relabel = relabeling_classes(n, mode, allow_large, jobs)?;
    let index: BTreeMap<Signotope, usize> = relabel
        .classes
        .iter()
        .enumerate()
        .map(|(k, c)| (c.representative, k))
        .collect();
    let neighbor_forms = exec::map(jobs, &relabel.classes, |c| {
        flip_neighbors(&c.representative)
            .iter()
            .map(|nb| canonical_form(nb, mode))
            .collect::<Vec<_>>()
    });
    let mut parent: Vec<usize> = (0..relabel.len()).collect();
    for (k, forms) in neighbor_forms.iter().enumerate() {
        for f in forms {
            let other = index[f];
            let (a, b) = (find(&mut parent, k), find(&mut parent, other));
            if a != b {
                // keep the smaller index (lex-smaller representative) as root
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, ClassEntry> = BTreeMap::new();
    for (k, c) in relabel.classes.iter().enumerate() {
        let root = find(&mut parent, k);
        let entry = groups.entry(root).or_insert_with(|| ClassEntry {
            representative: relabel.classes[root].representative,
            size: 0,
            crossings: c.crossings,
            canonical_members: 0,
        });
        debug_assert_eq!(entry.crossings, c.crossings);
        entry.size += c.size;
        entry.canonical_members += 1;
    }
    Ok(ClassIndex {
        kind: ClassKind::Flip,
        n,
        mode,
        classes: groups.into_values().collect(),
    })
}

pub fn count_flip_classes(n: usize, mode: CanonMode, allow_large: bool, jobs: usize) -> Result<usize> {
    Ok(flip_classes(n, mode, allow_large, jobs)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::DEFAULT_CANON_MODE;
    use crate::cross::crossing_number;
    use crate::enumerate::enumerate_all;
    use crate::sign::parse_sign_string;
    use crate::signotope::validate;

    #[test]
    fn flip_example_on_all_plus() {
        let s = Signotope::all_plus(4).unwrap();
        let m = FlipMove::new(4, 3).unwrap();
        assert_eq!(m.pair(), (3, 4));
        assert!(flippable(&s, m).unwrap());
        assert_eq!(flip(&s, m).unwrap().sign_string(), "++--");
        assert!(FlipMove::new(2, 2).is_err());
        assert!(flip(&s, FlipMove::new(1, 5).unwrap()).is_err());
    }

    #[test]
    fn non_flippable_pair_reports_violation() {
        // (1,3) inverts 123 and 134: ++++ becomes -+-+
        let s = validate(4, &parse_sign_string("++++").unwrap()).unwrap();
        let m = FlipMove::new(1, 3).unwrap();
        assert!(!flippable(&s, m).unwrap());
        assert_eq!(flippable_moves(&s).len(), 4);
        match flip(&s, m) {
            Err(Error::NotFlippable { violation, .. }) => assert_eq!(violation.quad, [1, 2, 3, 4]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn double_flip_is_identity() {
        for s in enumerate_all(5, false, 1).unwrap() {
            for m in flippable_moves(&s) {
                let t = flip(&s, m).unwrap();
                assert!(flippable(&t, m).unwrap());
                assert_eq!(flip(&t, m).unwrap(), s);
            }
        }
    }

    #[test]
    fn n4_flip_classes_split_by_parity() {
        let idx = flip_classes(4, DEFAULT_CANON_MODE, false, 1).unwrap();
        assert_eq!(idx.len(), 2);
        for s in enumerate_all(4, false, 1).unwrap() {
            let class = flip_class(&s, DEFAULT_CANON_MODE);
            for member in &class {
                assert_eq!(member.plus_count() % 2, s.plus_count() % 2);
            }
        }
    }

    #[test]
    fn small_class_counts() {
        for (n, relabel, flips) in [(3, 1, 1), (4, 2, 2), (5, 6, 3)] {
            assert_eq!(count_relabeling_classes(n, DEFAULT_CANON_MODE, false, 1).unwrap(), relabel);
            assert_eq!(count_flip_classes(n, DEFAULT_CANON_MODE, false, 1).unwrap(), flips);
        }
    }

    #[test]
    fn n5_flip_class_sizes() {
        let idx = flip_classes(5, DEFAULT_CANON_MODE, false, 1).unwrap();
        let mut by_crossings: Vec<(usize, u128)> = idx.classes.iter().map(|c| (c.crossings, c.size)).collect();
        by_crossings.sort();
        assert_eq!(by_crossings, vec![(1, 240), (3, 280), (5, 24)]);
        assert_eq!(idx.total(), 544);
    }

    #[test]
    fn orderly_classes_match_enumeration() {
        for n in 3..=5 {
            let idx = relabeling_classes(n, DEFAULT_CANON_MODE, false, 1).unwrap();
            let oracle = relabeling_sizes_by_enumeration(n, DEFAULT_CANON_MODE, 1).unwrap();
            let got: BTreeMap<Signotope, u128> = idx.classes.iter().map(|c| (c.representative, c.size)).collect();
            assert_eq!(got, oracle);
        }
    }

    #[test]
    fn flip_class_bfs_matches_partition() {
        let idx = flip_classes(5, DEFAULT_CANON_MODE, false, 1).unwrap();
        let mut covered = 0;
        for c in &idx.classes {
            let members = flip_class(&c.representative, DEFAULT_CANON_MODE);
            assert_eq!(members.len(), c.canonical_members);
            assert_eq!(*members.first().unwrap(), c.representative);
            assert!(members.iter().all(|m| crossing_number(m) == c.crossings));
            covered += members.len();
        }
        assert_eq!(covered, 6);
    }
}
