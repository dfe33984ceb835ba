//! Separability of element sets and the Kirchberger property.
//!
//! `ij` separates `A` from `B` when `chi(i,j,x) = +` for every
//! `x in A \ {i,j}` and `chi(i,j,x) = -` for every `x in B \ {i,j}`; a side
//! that is empty after removing `i, j` imposes nothing. The separator is
//! strong when `i in A` and `j in B`. `A` and `B` must be disjoint, since a
//! shared element would need both signs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::{self, check_cap};
use crate::error::{arg, Result};
use crate::exec;
use crate::signotope::Signotope;

/// Element set as a bitmask; bit `x` stands for element `x`.
pub type ElemMask = u32;

fn mask_of(elems: &[u8]) -> ElemMask {
    elems.iter().fold(0, |m, &e| m | 1 << e)
}

fn elems_of(mask: ElemMask) -> Vec<u8> {
    (1..32u8).filter(|&e| mask >> e & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationInstance {
    s: Signotope,
    a: ElemMask,
    b: ElemMask,
}

impl SeparationInstance {
    pub fn new(s: Signotope, a: &[u8], b: &[u8]) -> Result<Self> {
        let n = s.n() as u8;
        if let Some(&x) = a.iter().chain(b).find(|&&x| x == 0 || x > n) {
            return arg(format!("element {x} outside 1..={n}"));
        }
        let (am, bm) = (mask_of(a), mask_of(b));
        if am == 0 || bm == 0 {
            return arg("A and B must be non-empty");
        }
        if am & bm != 0 {
            return arg(format!("A and B share {:?}", elems_of(am & bm)));
        }
        Ok(SeparationInstance { s, a: am, b: bm })
    }

    pub fn signotope(&self) -> &Signotope {
        &self.s
    }

    pub fn a(&self) -> Vec<u8> {
        elems_of(self.a)
    }

    pub fn b(&self) -> Vec<u8> {
        elems_of(self.b)
    }

    fn union(&self) -> ElemMask {
        self.a | self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Separator {
    pub i: u8,
    pub j: u8,
    pub strong: bool,
}

impl fmt::Display for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)?;
        if self.strong {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// Whether `ij` separates `A` from `B`, evaluated through the alternating
/// extension.
pub fn separates(inst: &SeparationInstance, i: u8, j: u8) -> Result<bool> {
    let u = inst.union();
    if i == j {
        return arg(format!("separator needs two distinct elements, got ({i},{j})"));
    }
    if u >> i & 1 == 0 || u >> j & 1 == 0 {
        return arg(format!("({i},{j}) not within A ∪ B"));
    }
    Ok(separates_unchecked(inst, i, j))
}

fn separates_unchecked(inst: &SeparationInstance, i: u8, j: u8) -> bool {
    let s = &inst.s;
    elems_of(inst.union())
        .into_iter()
        .filter(|&x| x != i && x != j)
        .all(|x| {
            let want_plus = inst.a >> x & 1 == 1;
            s.chi_unchecked(i, j, x).is_plus() == want_plus
        })
}

/// All ordered separating pairs, sorted by `(i, j)`.
pub fn find_separators(inst: &SeparationInstance) -> Vec<Separator> {
    let elems = elems_of(inst.union());
    let mut out = Vec::new();
    for &i in &elems {
        for &j in &elems {
            if i != j && separates_unchecked(inst, i, j) {
                out.push(Separator {
                    i,
                    j,
                    strong: inst.a >> i & 1 == 1 && inst.b >> j & 1 == 1,
                });
            }
        }
    }
    out
}

fn separable(inst: &SeparationInstance) -> bool {
    let elems = elems_of(inst.union());
    elems
        .iter()
        .any(|&i| elems.iter().any(|&j| i != j && separates_unchecked(inst, i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum KirchbergerOutcome {
    /// Lex-first strong separator over `A × B`.
    StrongSeparator { separator: Separator },
    /// Lex-first 4-subset `C` of `A ∪ B` with `A ∩ C`, `B ∩ C` not separable.
    HypothesisCounterexample { c: [u8; 4] },
    /// `|A ∪ B| < 4` and no strong separator exists; the theorem says nothing.
    VacuousNoSeparator,
    /// Clean hypothesis but no strong separator: the theorem would be false.
    TheoremViolation,
}

fn four_subsets(mask: ElemMask) -> Vec<[u8; 4]> {
    let e = elems_of(mask);
    let mut out = Vec::new();
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            for c in b + 1..e.len() {
                for d in c + 1..e.len() {
                    out.push([e[a], e[b], e[c], e[d]]);
                }
            }
        }
    }
    out
}

fn sub_instance(inst: &SeparationInstance, c: [u8; 4]) -> SeparationInstance {
    let cm = mask_of(&c);
    SeparationInstance {
        s: inst.s,
        a: inst.a & cm,
        b: inst.b & cm,
    }
}

fn first_strong(inst: &SeparationInstance) -> Option<Separator> {
    for i in elems_of(inst.a) {
        for j in elems_of(inst.b) {
            if separates_unchecked(inst, i, j) {
                return Some(Separator { i, j, strong: true });
            }
        }
    }
    None
}

/// Checks the hypothesis on every 4-subset of `A ∪ B` and, if it holds,
/// returns the strong separator the theorem guarantees.
pub fn kirchberger(inst: &SeparationInstance) -> KirchbergerOutcome {
    let u = inst.union();
    if u.count_ones() < 4 {
        return match first_strong(inst) {
            Some(separator) => KirchbergerOutcome::StrongSeparator { separator },
            None => KirchbergerOutcome::VacuousNoSeparator,
        };
    }
    if let Some(c) = four_subsets(u)
        .into_iter()
        .find(|&c| !separable(&sub_instance(inst, c)))
    {
        return KirchbergerOutcome::HypothesisCounterexample { c };
    }
    match first_strong(inst) {
        Some(separator) => KirchbergerOutcome::StrongSeparator { separator },
        None => KirchbergerOutcome::TheoremViolation,
    }
}

/// Converse property: if `A` and `B` are separable, so is every 4-subset.
/// Holds for signotopes whose 4-subsets change sign at most once, but not
/// for generalized signotopes in general; see the `n=5 {245}` test below.
pub fn check_converse(inst: &SeparationInstance) -> bool {
    !separable(inst) || four_subsets(inst.union()).into_iter().all(|c| separable(&sub_instance(inst, c)))
}

// ---------------------------------------------------------------------------
// separator tables for 4 elements

/// One row: the four stored signs in lex order and the separators found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub pattern: String,
    pub separators: Vec<Separator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatorTable {
    /// Display names of elements 1..4.
    pub labels: [&'static str; 4],
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub rows: Vec<TableRow>,
}

impl SeparatorTable {
    /// Renders a separator with the table's labels, strong ones starred.
    pub fn name(&self, s: &Separator) -> String {
        format!(
            "{}{}{}",
            self.labels[s.i as usize - 1],
            self.labels[s.j as usize - 1],
            if s.strong { "*" } else { "" }
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let seps = if row.separators.is_empty() {
                "(no separator)".to_string()
            } else {
                row.separators.iter().map(|s| self.name(s)).collect::<Vec<_>>().join(",")
            };
            out.push_str(&format!("{} | {}\n", row.pattern, seps));
        }
        out
    }
}

/// The 14 valid patterns on 4 labeled elements, `+` before `-` per
/// position (the order the separator tables are printed in).
pub fn four_element_patterns() -> Vec<Signotope> {
    let mut all = Vec::new();
    enumerate::enumerate(4, false, |s| all.push(*s)).expect("n=4 is within the cap");
    all.reverse();
    all
}

fn table(labels: [&'static str; 4], a: &[u8], b: &[u8]) -> SeparatorTable {
    let rows = four_element_patterns()
        .into_iter()
        .map(|s| {
            let inst = SeparationInstance::new(s, a, b).expect("fixed split is valid");
            TableRow {
                pattern: s.sign_string(),
                separators: find_separators(&inst),
            }
        })
        .collect();
    SeparatorTable {
        labels,
        a: a.to_vec(),
        b: b.to_vec(),
        rows,
    }
}

/// Separators for the 1-vs-3 split `{a}` / `{b1,b2,b3}` and the 2-vs-2 split
/// `{a1,a2}` / `{b1,b2}`, elements labeled 1..4 in that order.
pub fn separator_tables() -> (SeparatorTable, SeparatorTable) {
    (
        table(["a", "b1", "b2", "b3"], &[1], &[2, 3, 4]),
        table(["a1", "a2", "b1", "b2"], &[1, 2], &[3, 4]),
    )
}

// ---------------------------------------------------------------------------
// exhaustive and sampled verification

/// Per-signotope bitmask tables: `plus[i][j]` holds every `x` with
/// `chi(i,j,x) = +`.
struct PairMasks {
    n: u8,
    plus: Vec<ElemMask>,
}

impl PairMasks {
    fn new(s: &Signotope) -> Self {
        let n = s.n() as u8;
        let w = n as usize + 1;
        let mut plus = vec![0; w * w];
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let mut m = 0;
                for x in 1..=n {
                    if x != i && x != j && s.chi_unchecked(i, j, x).is_plus() {
                        m |= 1 << x;
                    }
                }
                plus[i as usize * w + j as usize] = m;
            }
        }
        PairMasks { n, plus }
    }

    #[inline]
    fn separates(&self, i: u8, j: u8, a: ElemMask, b: ElemMask) -> bool {
        let p = self.plus[i as usize * (self.n as usize + 1) + j as usize];
        let ij = 1 << i | 1 << j;
        (a & !ij) & !p == 0 && (b & !ij) & p == 0
    }

    fn separable(&self, a: ElemMask, b: ElemMask) -> bool {
        let u = a | b;
        let mut ii = u;
        while ii != 0 {
            let i = ii.trailing_zeros() as u8;
            ii &= ii - 1;
            let mut jj = u & !(1 << i);
            while jj != 0 {
                let j = jj.trailing_zeros() as u8;
                jj &= jj - 1;
                if self.separates(i, j, a, b) {
                    return true;
                }
            }
        }
        false
    }

    fn strongly_separable(&self, a: ElemMask, b: ElemMask) -> bool {
        let mut ii = a;
        while ii != 0 {
            let i = ii.trailing_zeros() as u8;
            ii &= ii - 1;
            let mut jj = b;
            while jj != 0 {
                let j = jj.trailing_zeros() as u8;
                jj &= jj - 1;
                if self.separates(i, j, a, b) {
                    return true;
                }
            }
        }
        false
    }
}

/// Counterexample to either property, with the offending instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Falsifier {
    pub signotope: Signotope,
    pub a: Vec<u8>,
    pub b: Vec<u8>,
}

/// Counterexamples kept per kind; the counts are always exact.
pub const KEPT_EXAMPLES: usize = 8;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub signotopes: u64,
    pub instances: u64,
    pub hypothesis_clean: u64,
    pub separable: u64,
    pub theorem_violations: u64,
    pub converse_violations: u64,
    /// The first few of each, in signotope order.
    pub theorem_examples: Vec<Falsifier>,
    pub converse_examples: Vec<Falsifier>,
}

impl VerifyReport {
    pub fn theorem_holds(&self) -> bool {
        self.theorem_violations == 0
    }

    pub fn converse_holds(&self) -> bool {
        self.converse_violations == 0
    }

    fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.n = self.n.max(other.n);
        self.signotopes += other.signotopes;
        self.instances += other.instances;
        self.hypothesis_clean += other.hypothesis_clean;
        self.separable += other.separable;
        self.theorem_violations += other.theorem_violations;
        self.converse_violations += other.converse_violations;
        for (mine, theirs) in [
            (&mut self.theorem_examples, other.theorem_examples),
            (&mut self.converse_examples, other.converse_examples),
        ] {
            let room = KEPT_EXAMPLES.saturating_sub(mine.len());
            mine.extend(theirs.into_iter().take(room));
        }
        self
    }
}

/// Disjoint non-empty pairs `(A, B)` over `{1..n}`.
fn all_splits(n: usize) -> Vec<(ElemMask, ElemMask)> {
    let mut out = Vec::new();
    // each element goes to A, B or neither
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let (mut a, mut b, mut c) = (0, 0, code);
        for x in 1..=n {
            match c % 3 {
                1 => a |= 1 << x,
                2 => b |= 1 << x,
                _ => {}
            }
            c /= 3;
        }
        if a != 0 && b != 0 {
            out.push((a, b));
        }
    }
    out
}

/// Checks both properties for one signotope over the given splits.
fn verify_signotope(s: &Signotope, splits: &[(ElemMask, ElemMask)]) -> VerifyReport {
    let n = s.n();
    let pm = PairMasks::new(s);
    let quads: Vec<(ElemMask, [u8; 4])> = s
        .layout()
        .quads()
        .iter()
        .map(|q| (mask_of(&q.elems), q.elems))
        .collect();
    // sep4[q][m]: 4-subset q separable when its A-part is given by m
    let sep4: Vec<u16> = quads
        .iter()
        .map(|&(cm, _)| {
            let mut bits = 0u16;
            for m in 0..16u32 {
                let elems = elems_of(cm);
                let a = elems
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| m >> k & 1 == 1)
                    .fold(0, |acc, (_, &e)| acc | 1 << e);
                if pm.separable(a, cm & !a) {
                    bits |= 1 << m;
                }
            }
            bits
        })
        .collect();
    let mut report = VerifyReport {
        n,
        signotopes: 1,
        ..VerifyReport::default()
    };
    for &(a, b) in splits {
        let u = a | b;
        report.instances += 1;
        let mut all_quads = true;
        for (k, &(cm, elems)) in quads.iter().enumerate() {
            if cm & !u != 0 {
                continue;
            }
            let m = elems
                .iter()
                .enumerate()
                .fold(0u32, |acc, (p, &e)| acc | (a >> e & 1) << p);
            if sep4[k] >> m & 1 == 0 {
                all_quads = false;
                break;
            }
        }
        let falsifier = || Falsifier {
            signotope: *s,
            a: elems_of(a),
            b: elems_of(b),
        };
        // theorem hypothesis is vacuous below four elements
        if all_quads && u.count_ones() >= 4 {
            report.hypothesis_clean += 1;
            if !pm.strongly_separable(a, b) {
                report.theorem_violations += 1;
                if report.theorem_examples.len() < KEPT_EXAMPLES {
                    report.theorem_examples.push(falsifier());
                }
            }
        }
        if pm.separable(a, b) {
            report.separable += 1;
            if !all_quads {
                report.converse_violations += 1;
                if report.converse_examples.len() < KEPT_EXAMPLES {
                    report.converse_examples.push(falsifier());
                }
            }
        }
    }
    report
}

/// Exhaustive check of the Kirchberger property and its converse over all
/// signotopes on `n` elements and all disjoint non-empty `(A, B)`.
pub fn verify_exhaustive(n: usize, jobs: usize) -> Result<VerifyReport> {
    check_cap(n, false)?;
    let all = enumerate::enumerate_all(n, false, jobs)?;
    let splits = all_splits(n);
    Ok(exec::map_reduce(
        jobs,
        &all,
        VerifyReport {
            n,
            ..VerifyReport::default()
        },
        |s| verify_signotope(s, &splits),
        VerifyReport::merge,
    ))
}

/// Seeded sampling: `samples` random signotopes on `n` elements, each
/// checked against `splits_per_sample` random disjoint non-empty `(A, B)`.
pub fn verify_sampled(
    n: usize,
    samples: usize,
    splits_per_sample: usize,
    seed: u64,
    jobs: usize,
) -> Result<VerifyReport> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    if !(4..=crate::triples::MAX_ELEMENTS).contains(&n) {
        return arg(format!("element count {n} outside 4..=16"));
    }
    let seeds: Vec<u64> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| rng.gen()).collect()
    };
    Ok(exec::map_reduce(
        jobs,
        &seeds,
        VerifyReport {
            n,
            ..VerifyReport::default()
        },
        |&sd| {
            let mut rng = ChaCha8Rng::seed_from_u64(sd);
            let s = enumerate::random_signotope(n, &mut rng).expect("n checked above");
            let mut splits = Vec::with_capacity(splits_per_sample);
            while splits.len() < splits_per_sample {
                let (mut a, mut b) = (0, 0);
                for x in 1..=n {
                    match rng.gen_range(0..3) {
                        1 => a |= 1 << x,
                        2 => b |= 1 << x,
                        _ => {}
                    }
                }
                if a != 0 && b != 0 {
                    splits.push((a, b));
                }
            }
            verify_signotope(&s, &splits)
        },
        VerifyReport::merge,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::parse_sign_string;
    use crate::signotope::validate;

    fn sig4(p: &str) -> Signotope {
        validate(4, &parse_sign_string(p).unwrap()).unwrap()
    }

    fn pairs(seps: &[Separator]) -> Vec<(u8, u8, bool)> {
        seps.iter().map(|s| (s.i, s.j, s.strong)).collect()
    }

    #[test]
    fn one_vs_three_examples() {
        let inst = SeparationInstance::new(sig4("++++"), &[1], &[2, 3, 4]).unwrap();
        assert!(separates(&inst, 1, 4).unwrap());
        let inst = SeparationInstance::new(sig4("+-++"), &[1], &[2, 3, 4]).unwrap();
        assert!(find_separators(&inst).is_empty());
    }

    #[test]
    fn vacuous_pair() {
        for s in four_element_patterns() {
            let inst = SeparationInstance::new(s, &[1], &[2]).unwrap();
            assert!(separates(&inst, 1, 2).unwrap());
            assert!(separates(&inst, 2, 1).unwrap());
        }
    }

    #[test]
    fn argument_errors() {
        let s = sig4("++++");
        assert!(SeparationInstance::new(s, &[], &[1]).is_err());
        assert!(SeparationInstance::new(s, &[1, 2], &[2, 3]).is_err());
        assert!(SeparationInstance::new(s, &[5], &[1]).is_err());
        let inst = SeparationInstance::new(s, &[1], &[2, 3]).unwrap();
        assert!(separates(&inst, 1, 1).is_err());
        assert!(separates(&inst, 1, 4).is_err());
    }

    #[test]
    fn two_vs_two_examples() {
        let inst = SeparationInstance::new(sig4("++++"), &[1, 2], &[3, 4]).unwrap();
        assert_eq!(
            pairs(&find_separators(&inst)),
            vec![(2, 1, false), (2, 4, true), (3, 1, false), (3, 4, false)]
        );
        let inst = SeparationInstance::new(sig4("+--+"), &[1, 2], &[3, 4]).unwrap();
        assert!(find_separators(&inst).is_empty());
    }

    #[test]
    fn table_rows_from_the_last_lines() {
        let (t1, t2) = separator_tables();
        let last = t1.rows.last().unwrap();
        assert_eq!(last.pattern, "----");
        assert_eq!(pairs(&last.separators), vec![(1, 2, true), (4, 1, false), (4, 2, false)]);
        let row = t2.rows.iter().find(|r| r.pattern == "-+--").unwrap();
        assert_eq!(pairs(&row.separators), vec![(1, 3, true), (4, 1, false), (4, 3, false)]);
        for t in [&t1, &t2] {
            assert_eq!(t.rows.len(), 14);
            assert_eq!(t.rows.iter().filter(|r| r.separators.is_empty()).count(), 2);
        }
        assert_eq!(t1.rows[0].pattern, "++++");
        assert!(t1.render().starts_with("++++ | ab3*,b1a,b1b3\n"));
    }

    #[test]
    fn separable_four_sets_are_strongly_separable() {
        for s in four_element_patterns() {
            for (a, b) in [(vec![1u8], vec![2u8, 3, 4]), (vec![1, 2], vec![3, 4])] {
                let inst = SeparationInstance::new(s, &a, &b).unwrap();
                let seps = find_separators(&inst);
                if !seps.is_empty() {
                    assert!(seps.iter().any(|s| s.strong), "{:?}", s);
                }
            }
        }
    }

    /// (i,j) separates A from B iff (j,i) separates B from A.
    #[test]
    fn separator_antisymmetry() {
        for s in four_element_patterns() {
            for (a, b) in all_splits(4) {
                let fwd = SeparationInstance::new(s, &elems_of(a), &elems_of(b)).unwrap();
                let back = SeparationInstance::new(s, &elems_of(b), &elems_of(a)).unwrap();
                for i in elems_of(a | b) {
                    for j in elems_of(a | b) {
                        if i != j {
                            assert_eq!(separates(&fwd, i, j).unwrap(), separates(&back, j, i).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn type_one_b_example() {
        // chi(2,3,1) = + and chi(2,3,4) = -
        let found = four_element_patterns().into_iter().find(|s| {
            s.chi(2, 3, 1).unwrap().is_plus() && !s.chi(2, 3, 4).unwrap().is_plus() && crate::cross::crossing_number(s) == 1
        });
        let s = found.expect("a crossing K4 with chi(2,3,1)=+, chi(2,3,4)=-");
        let inst = SeparationInstance::new(s, &[1, 2], &[3, 4]).unwrap();
        assert!(separates(&inst, 2, 3).unwrap());
        assert!(matches!(kirchberger(&inst), KirchbergerOutcome::StrongSeparator { .. }));
    }

    #[test]
    fn hypothesis_counterexample_is_reported() {
        // embed +-++ on {1,2,3,4} (1 on the A side) inside 5 elements
        let inner = sig4("+-++");
        let s = crate::construct::all_plus_extension(&inner, 5).unwrap();
        let inst = SeparationInstance::new(s, &[1], &[2, 3, 4, 5]).unwrap();
        assert_eq!(kirchberger(&inst), KirchbergerOutcome::HypothesisCounterexample { c: [1, 2, 3, 4] });
    }

    #[test]
    fn small_unions() {
        let inst = SeparationInstance::new(sig4("++++"), &[1], &[2]).unwrap();
        assert_eq!(
            kirchberger(&inst),
            KirchbergerOutcome::StrongSeparator {
                separator: Separator { i: 1, j: 2, strong: true }
            }
        );
        assert!(check_converse(&inst));
    }

    /// The mask-based verifier agrees with the direct implementation on
    /// every n=5 instance.
    #[test]
    fn fast_path_agrees_with_direct_path() {
        let all = enumerate::enumerate_all(5, false, 1).unwrap();
        let splits = all_splits(5);
        assert_eq!(splits.len(), 180);
        let (mut clean, mut separable_count, mut converse_failures) = (0u64, 0u64, 0u64);
        for s in &all {
            let pm = PairMasks::new(s);
            for &(a, b) in &splits {
                let inst = SeparationInstance::new(*s, &elems_of(a), &elems_of(b)).unwrap();
                assert_eq!(pm.separable(a, b), separable(&inst));
                assert_eq!(pm.strongly_separable(a, b), first_strong(&inst).is_some());
                let outcome = kirchberger(&inst);
                assert_ne!(outcome, KirchbergerOutcome::TheoremViolation);
                if matches!(outcome, KirchbergerOutcome::StrongSeparator { .. }) && inst.union().count_ones() >= 4 {
                    clean += 1;
                }
                separable_count += separable(&inst) as u64;
                converse_failures += !check_converse(&inst) as u64;
            }
        }
        let r = verify_exhaustive(5, 1).unwrap();
        assert_eq!(r.hypothesis_clean, clean);
        assert_eq!(r.separable, separable_count);
        assert_eq!(r.converse_violations, converse_failures);
    }

    #[test]
    fn exhaustive_n5() {
        let r = verify_exhaustive(5, 1).unwrap();
        assert_eq!(r.signotopes, 544);
        assert_eq!(r.instances, 544 * 180);
        assert!(r.theorem_holds(), "{r:?}");
        assert!(r.hypothesis_clean > 0);
        assert!(r.converse_examples.len() <= KEPT_EXAMPLES);
    }

    /// A separable pair whose 4-subset {1,2,3,4} reads `----` with the
    /// sides alternating, which no pair inside it separates.
    #[test]
    fn converse_fails_beyond_signotopes() {
        let s = crate::format::parse("n=5 {245}").unwrap();
        let inst = SeparationInstance::new(s, &[2, 4, 5], &[1, 3]).unwrap();
        assert!(separates(&inst, 4, 5).unwrap());
        assert!(!check_converse(&inst));
        let sub = SeparationInstance::new(s, &[2, 4], &[1, 3]).unwrap();
        assert!(find_separators(&sub).is_empty());
        assert_eq!(kirchberger(&inst), KirchbergerOutcome::HypothesisCounterexample { c: [1, 2, 3, 4] });
    }

    #[test]
    fn sampled_is_deterministic() {
        let a = verify_sampled(8, 20, 50, 3, 1).unwrap();
        let b = verify_sampled(8, 20, 50, 3, 2).unwrap();
        assert_eq!(a, b);
        assert!(a.theorem_holds());
    }
}
