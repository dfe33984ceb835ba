//! Named end-to-end checks against the published counts, tables and
//! listings. Shared by `gensig selftest` and the acceptance test target.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_form, DEFAULT_CANON_MODE};
use crate::classes::{self, flip_class, flip_classes, flippable_moves};
use crate::construct::{
    all_plus_extension, lower_bound_cubic, lower_bound_exponent, product_construct, product_decompose,
    upper_bound_constant, ProductMap,
};
use crate::cross::{crossing_number, crossing_profile, min_crossings};
use crate::enumerate::{count_all, enumerate_all, random_signotope};
use crate::kirch::{self, separator_tables, SeparatorTable, VerifyReport};
use crate::listings::{self, G7};
use crate::signotope::Signotope;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub jobs: usize,
    /// Also run the 7-element counts (minutes rather than seconds).
    pub large: bool,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            jobs: 1,
            large: false,
            seed: 2024,
        }
    }
}

fn timed(id: u8, name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> CheckResult {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    if !in_time {
        detail.push_str(&format!("; over the {}s limit", limit.unwrap().as_secs()));
    }
    CheckResult {
        id,
        name,
        passed: ok && in_time,
        detail,
        elapsed,
    }
}

fn fail(e: crate::Error) -> (bool, String) {
    (false, e.to_string())
}

pub const COUNTS: [(usize, u128); 4] = [(3, 2), (4, 14), (5, 544), (6, 173_128)];
pub const RELABELING_CLASSES: [(usize, usize); 4] = [(3, 1), (4, 2), (5, 6), (6, 167)];
pub const FLIP_CLASSES: [(usize, usize); 4] = [(3, 1), (4, 2), (5, 3), (6, 16)];
pub const RELABELING_CLASSES_7: usize = 63_451;
pub const FLIP_CLASSES_7: usize = 442;

pub fn check_counts(opts: &CheckOptions) -> CheckResult {
    let mut r = timed(1, "signotope counts n=3..6", Some(Duration::from_secs(10)), || {
        let mut got = Vec::new();
        for (n, want) in COUNTS {
            match count_all(n, opts.jobs) {
                Ok(c) if c == want => got.push(c),
                Ok(c) => return (false, format!("n={n}: got {c}, expected {want}")),
                Err(e) => return fail(e),
            }
        }
        (true, format!("{got:?}"))
    });
    if opts.large && r.passed {
        let start = Instant::now();
        match count_all(7, opts.jobs) {
            Ok(c) => {
                r.passed = c == G7;
                r.detail.push_str(&format!("; n=7 {c} in {:.1}s", start.elapsed().as_secs_f64()));
            }
            Err(e) => (r.passed, r.detail) = fail(e),
        }
    }
    r
}

pub fn check_relabeling(opts: &CheckOptions) -> CheckResult {
    let mut r = timed(2, "relabeling classes n=3..6", Some(Duration::from_secs(60)), || {
        let mut got = Vec::new();
        for (n, want) in RELABELING_CLASSES {
            match classes::relabeling_classes(n, DEFAULT_CANON_MODE, false, opts.jobs) {
                Ok(idx) if idx.len() == want && idx.total() == count_all(n, 1).unwrap_or(0) => got.push(idx.len()),
                Ok(idx) => return (false, format!("n={n}: {} classes totalling {}", idx.len(), idx.total())),
                Err(e) => return fail(e),
            }
        }
        (true, format!("{got:?}"))
    });
    if opts.large && r.passed {
        let start = Instant::now();
        match classes::count_relabeling_classes(7, DEFAULT_CANON_MODE, true, opts.jobs) {
            Ok(c) => {
                r.passed = c == RELABELING_CLASSES_7;
                r.detail.push_str(&format!("; n=7 {c} in {:.1}s", start.elapsed().as_secs_f64()));
            }
            Err(e) => (r.passed, r.detail) = fail(e),
        }
    }
    r
}

pub fn check_flip(opts: &CheckOptions) -> CheckResult {
    let mut r = timed(3, "flip classes n=3..6", Some(Duration::from_secs(120)), || {
        let mut got = Vec::new();
        for (n, want) in FLIP_CLASSES {
            match flip_classes(n, DEFAULT_CANON_MODE, false, opts.jobs) {
                Ok(idx) if idx.len() == want => {
                    if n == 5 {
                        let sizes: BTreeSet<u128> = idx.classes.iter().map(|c| c.size).collect();
                        if sizes != BTreeSet::from([24, 240, 280]) {
                            return (false, format!("n=5 class sizes {sizes:?}"));
                        }
                    }
                    got.push(idx.len());
                }
                Ok(idx) => return (false, format!("n={n}: {} classes", idx.len())),
                Err(e) => return fail(e),
            }
        }
        (true, format!("{got:?}, n=5 sizes {{24, 240, 280}}"))
    });
    if opts.large && r.passed {
        let start = Instant::now();
        match classes::count_flip_classes(7, DEFAULT_CANON_MODE, true, opts.jobs) {
            Ok(c) => {
                r.passed = c == FLIP_CLASSES_7;
                r.detail.push_str(&format!("; n=7 {c} in {:.1}s", start.elapsed().as_secs_f64()));
            }
            Err(e) => (r.passed, r.detail) = fail(e),
        }
    }
    r
}

/// One expected table row: `(pattern, separators)` with strong separators
/// starred, as printed by [`SeparatorTable::render`].
pub type ExpectedRow<'a> = (&'a str, &'a str);

pub const EXPECTED_TABLE_1: [ExpectedRow<'static>; 14] = [
    ("++++", "ab3*,b1a,b1b3"),
    ("+++-", "ab3*,b1a,b1b2,b2b3"),
    ("++-+", "ab2*,b1a,b1b3,b3b2"),
    ("++--", "ab2*,b1a,b1b2"),
    ("+-++", ""),
    ("+--+", "ab2*,b3a,b3b2"),
    ("+---", "ab2*,b1b2,b3a,b3b1"),
    ("-+++", "ab3*,b1b3,b2a,b2b1"),
    ("-++-", "ab3*,b2a,b2b3"),
    ("-+--", ""),
    ("--++", "ab1*,b2a,b2b1"),
    ("--+-", "ab1*,b2a,b2b3,b3b1"),
    ("---+", "ab1*,b2b1,b3a,b3b2"),
    ("----", "ab1*,b3a,b3b1"),
];

pub const EXPECTED_TABLE_2: [ExpectedRow<'static>; 14] = [
    ("++++", "a2a1,a2b2*,b1a1,b1b2"),
    ("+++-", "a2a1,a2b1*,b1a1"),
    ("++-+", "a2a1,a2b2*,b2a1"),
    ("++--", "a2a1,a2b1*,b2a1,b2b1"),
    ("+-++", "a1b2*,b1a1,b1b2"),
    ("+--+", ""),
    ("+---", "a2b1*,b2a2,b2b1"),
    ("-+++", "a2b2*,b1a2,b1b2"),
    ("-++-", ""),
    ("-+--", "a1b1*,b2a1,b2b1"),
    ("--++", "a1a2,a1b2*,b1a2,b1b2"),
    ("--+-", "a1a2,a1b2*,b2a2"),
    ("---+", "a1a2,a1b1*,b1a2"),
    ("----", "a1a2,a1b1*,b2a2,b2b1"),
];

/// Reads an expectation in the rendered `pattern | separators` form;
/// `(no separator)` stands for an empty list. Returns owned rows.
pub fn parse_expected_table(text: &str) -> std::result::Result<Vec<(String, String)>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(k, l)| {
            let (pattern, seps) = l.split_once('|').ok_or_else(|| format!("line {}: missing `|`", k + 1))?;
            let seps = seps.trim();
            let seps = if seps == "(no separator)" { "" } else { seps };
            Ok((pattern.trim().to_string(), seps.replace(' ', "")))
        })
        .collect()
}

fn split_labels(token: &str, labels: &[&str; 4]) -> Option<(u8, u8)> {
    let mut rest = token;
    let mut picked = Vec::new();
    while !rest.is_empty() {
        let (k, l) = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| rest.starts_with(*l))
            .max_by_key(|(_, l)| l.len())?;
        picked.push(k as u8 + 1);
        rest = &rest[l.len()..];
    }
    match picked[..] {
        [i, j] => Some((i, j)),
        _ => None,
    }
}

/// Row-by-row comparison as sets of `(i, j, strong)`.
pub fn compare_table(got: &SeparatorTable, expected: &[ExpectedRow<'_>]) -> std::result::Result<(), String> {
    if got.rows.len() != expected.len() {
        return Err(format!("{} rows, expected {}", got.rows.len(), expected.len()));
    }
    for (row, (pattern, seps)) in got.rows.iter().zip(expected) {
        if row.pattern != *pattern {
            return Err(format!("row {} where {} expected", row.pattern, pattern));
        }
        let mut want = BTreeSet::new();
        for tok in seps.split(',').filter(|t| !t.is_empty()) {
            let strong = tok.ends_with('*');
            let (i, j) = split_labels(tok.trim_end_matches('*'), &got.labels)
                .ok_or_else(|| format!("cannot read separator `{tok}`"))?;
            want.insert((i, j, strong));
        }
        let have: BTreeSet<_> = row.separators.iter().map(|s| (s.i, s.j, s.strong)).collect();
        if have != want {
            return Err(format!("row {}: got {:?}, expected {:?}", row.pattern, have, want));
        }
    }
    let empty = got.rows.iter().filter(|r| r.separators.is_empty()).count();
    if empty != 2 {
        return Err(format!("{empty} rows without separator, expected 2"));
    }
    Ok(())
}

pub fn check_tables(expected_1: &[ExpectedRow<'_>], expected_2: &[ExpectedRow<'_>]) -> CheckResult {
    timed(4, "separator tables", None, || {
        let (t1, t2) = separator_tables();
        match compare_table(&t1, expected_1).and_then(|_| compare_table(&t2, expected_2)) {
            Ok(()) => (true, "14 + 14 rows match, 2 + 2 without separator".into()),
            Err(e) => (false, e),
        }
    })
}

/// Exhaustive separability runs at n=5 and n=6, shared by checks 5 and 6.
pub fn kirchberger_runs(opts: &CheckOptions) -> crate::Result<Vec<VerifyReport>> {
    [5, 6].iter().map(|&n| kirch::verify_exhaustive(n, opts.jobs)).collect()
}

pub fn check_kirchberger(runs: &[VerifyReport]) -> CheckResult {
    timed(5, "strong separator under clean hypothesis, n=5,6", None, || {
        let mut parts = Vec::new();
        let mut ok = true;
        for r in runs {
            ok &= r.theorem_holds();
            parts.push(format!(
                "n={}: {} signotopes, {} instances, {} clean, {} counterexamples",
                r.n, r.signotopes, r.instances, r.hypothesis_clean, r.theorem_violations
            ));
        }
        (ok && runs.len() == 2, parts.join("; "))
    })
}

pub fn check_converse(runs: &[VerifyReport]) -> CheckResult {
    timed(6, "separable implies every 4-subset separable, n=5,6", None, || {
        let mut parts = Vec::new();
        let mut ok = true;
        for r in runs {
            ok &= r.converse_holds();
            let mut part = format!("n={}: {} of {} separable instances fail", r.n, r.converse_violations, r.separable);
            if let Some(f) = r.converse_examples.first() {
                part.push_str(&format!(
                    ", e.g. {} A={:?} B={:?}",
                    crate::format::to_triples_text(&f.signotope),
                    f.a,
                    f.b
                ));
            }
            parts.push(part);
        }
        (ok && runs.len() == 2, parts.join("; "))
    })
}

pub fn check_listings(opts: &CheckOptions) -> CheckResult {
    timed(7, "listings and minimum crossings", None, || {
        let seven = listings::seven_element_listing();
        if seven.first_violation().is_some() || crossing_number(&seven) != 7 {
            return (false, format!("7-element listing has {} crossings", crossing_number(&seven)));
        }
        let six = listings::six_element_listings();
        if six.len() != 10 || six.iter().any(|s| crossing_number(s) != 3) {
            return (false, "6-element listings do not all have 3 crossings".into());
        }
        let class = flip_class(&six[0], DEFAULT_CANON_MODE);
        if !six.iter().all(|s| class.contains(&canonical_form(s, DEFAULT_CANON_MODE))) {
            return (false, "6-element listings span several flip classes".into());
        }
        match min_crossings(5, false, opts.jobs) {
            Ok(m) if m.crossings == 1 => (
                true,
                format!("7 crossings at n=7; 10 listings, 3 crossings, one flip class of {}; min(5) = 1", class.len()),
            ),
            Ok(m) => (false, format!("min crossings at n=5 is {}", m.crossings)),
            Err(e) => fail(e),
        }
    })
}

pub fn check_flip_invariance(opts: &CheckOptions) -> CheckResult {
    timed(8, "flips keep crossing types, n=5", None, || {
        let all = match enumerate_all(5, false, opts.jobs) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        let mut flips = 0;
        for s in &all {
            let before = crossing_profile(s);
            for m in flippable_moves(s) {
                let t = classes::flip(s, m).expect("listed move is flippable");
                flips += 1;
                if crossing_profile(&t) != before {
                    let (i, j) = m.pair();
                    return (false, format!("flip ({i},{j}) changes {}", s.sign_string()));
                }
            }
        }
        (true, format!("{flips} flips over {} signotopes", all.len()))
    })
}

pub fn check_constructions(opts: &CheckOptions) -> CheckResult {
    timed(9, "all-plus extension and product construction", None, || {
        let all = match enumerate_all(5, false, opts.jobs) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        for s in &all {
            if let Err(e) = all_plus_extension(s, 8) {
                return (false, format!("extension of {}: {e}", s.sign_string()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut built = 0;
        for n in [3, 4] {
            for _ in 0..1000 {
                let parts: Vec<Signotope> =
                    (0..3).map(|_| random_signotope(n, &mut rng).expect("3 <= n <= 16")).collect();
                let m = ProductMap::random(n, &mut rng);
                let s = match product_construct(&parts[0], &parts[1], &parts[2], &m) {
                    Ok(s) => s,
                    Err(e) => return fail(e),
                };
                match product_decompose(&s) {
                    Ok((a, b, c, m2)) if [a, b, c] == parts[..] && m2 == m => built += 1,
                    _ => return (false, format!("product at n={n} does not invert")),
                }
            }
        }
        (true, format!("{} extensions to 8, {built} products", all.len()))
    })
}

pub fn check_bounds(opts: &CheckOptions) -> CheckResult {
    timed(10, "counting bounds", None, || {
        let c7 = upper_bound_constant(7, G7).expect("valid arguments");
        if (c7 - 0.8352).abs() > 5e-4 {
            return (false, format!("c(7) = {c7:.5}"));
        }
        let mut cs = Vec::new();
        for t in 3..=6 {
            match count_all(t, opts.jobs) {
                Ok(g) => cs.push(upper_bound_constant(t, g).expect("valid arguments")),
                Err(e) => return fail(e),
            }
        }
        if cs.windows(2).any(|w| w[1] > w[0]) {
            return (false, format!("c(3..6) = {cs:?} increases"));
        }
        if let Some(n) = (1..=300).find(|&n| (lower_bound_exponent(n) as f64) < lower_bound_cubic(n)) {
            return (false, format!("f({n}) below the cubic"));
        }
        let shown: Vec<String> = cs.iter().map(|c| format!("{c:.4}")).collect();
        (
            true,
            format!("c(7) = {c7:.4}; c(3..6) = [{}]; f(n) >= n^3/24 - 3n^2/8 for n <= 300", shown.join(", ")),
        )
    })
}

/// All ten checks in order, the table check against `tables`
/// (normally [`EXPECTED_TABLE_1`] and [`EXPECTED_TABLE_2`]).
pub fn run_all(
    opts: &CheckOptions,
    tables: (&[ExpectedRow<'_>], &[ExpectedRow<'_>]),
    mut report: impl FnMut(&CheckResult),
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |r: CheckResult| {
        report(&r);
        out.push(r);
    };
    push(check_counts(opts));
    push(check_relabeling(opts));
    push(check_flip(opts));
    push(check_tables(tables.0, tables.1));
    let start = Instant::now();
    match kirchberger_runs(opts) {
        Ok(runs) => {
            // the shared sweep is charged to both
            let sweep = start.elapsed();
            for mut r in [check_kirchberger(&runs), check_converse(&runs)] {
                r.elapsed += sweep;
                push(r);
            }
        }
        Err(e) => {
            for (id, name) in [(5, "strong separator under clean hypothesis"), (6, "converse")] {
                push(CheckResult {
                    id,
                    name,
                    passed: false,
                    detail: e.to_string(),
                    elapsed: start.elapsed(),
                });
            }
        }
    }
    push(check_listings(opts));
    push(check_flip_invariance(opts));
    push(check_constructions(opts));
    push(check_bounds(opts));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_splitting() {
        let t1 = ["a", "b1", "b2", "b3"];
        assert_eq!(split_labels("ab3", &t1), Some((1, 4)));
        assert_eq!(split_labels("b1b3", &t1), Some((2, 4)));
        assert_eq!(split_labels("b1", &t1), None);
        assert_eq!(split_labels("xb1", &t1), None);
    }

    #[test]
    fn tables_match_and_mutations_are_caught() {
        assert!(check_tables(&EXPECTED_TABLE_1, &EXPECTED_TABLE_2).passed);
        let mut bad = EXPECTED_TABLE_1;
        bad[0].1 = "ab3,b1a,b1b3";
        assert!(!check_tables(&bad, &EXPECTED_TABLE_2).passed);
        let mut bad = EXPECTED_TABLE_2;
        bad[5].1 = "a1b1*";
        assert!(!check_tables(&EXPECTED_TABLE_1, &bad).passed);
        assert!(!check_tables(&EXPECTED_TABLE_1[..13], &EXPECTED_TABLE_2).passed);
    }

    #[test]
    fn rendered_tables_parse_back() {
        let (t1, t2) = separator_tables();
        for (t, want) in [(t1, EXPECTED_TABLE_1), (t2, EXPECTED_TABLE_2)] {
            let rows = parse_expected_table(&t.render()).unwrap();
            let borrowed: Vec<ExpectedRow> = rows.iter().map(|(p, s)| (p.as_str(), s.as_str())).collect();
            assert_eq!(borrowed, want);
        }
        assert!(parse_expected_table("++++ ab3*").is_err());
    }
}
