use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use gensig_core::checks::{self, CheckOptions, ExpectedRow};
use gensig_core::classes::{self, ClassIndex};
use gensig_core::construct::{self, ProductMap};
use gensig_core::cross::{self, CrossingType};
use gensig_core::format::{parse_lines, to_json, to_signs_text, to_triples_text};
use gensig_core::kirch::{self, KirchbergerOutcome, SeparationInstance, VerifyReport};
use gensig_core::{enumerate, listings, validate, Error, Signotope};

use crate::{ClassArg, Cli, Cmd, Failure, OutFormat};

type Outcome = Result<(), Failure>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)
}

/// Every valid object in a file; any parse error or invalid object is a
/// usage error naming the line.
fn load_all(path: &Path) -> Result<Vec<Signotope>, Failure> {
    let text = read(path)?;
    let entries = parse_lines(&text);
    if entries.is_empty() {
        return Err(anyhow!("{}: no signotope found", path.display()).into());
    }
    entries
        .into_iter()
        .map(|e| {
            e.parsed
                .and_then(|(n, signs)| validate(n, &signs))
                .map_err(|err| anyhow!("{}:{}: {err}", path.display(), e.line).into())
        })
        .collect()
}

fn load_one(path: &Path) -> Result<Signotope, Failure> {
    let mut all = load_all(path)?;
    if all.len() != 1 {
        return Err(anyhow!("{}: expected one signotope, found {}", path.display(), all.len()).into());
    }
    Ok(all.remove(0))
}

fn need_seed(cli: &Cli, what: &str) -> Result<u64, Failure> {
    cli.seed
        .ok_or_else(|| anyhow!("{what} is randomized; pass --seed").into())
}

pub fn run(cli: &Cli) -> Outcome {
    let jobs = cli.jobs as usize;
    match &cli.cmd {
        Cmd::Count {
            n,
            classes,
            mode,
            allow_large,
        } => count(cli, *n, *classes, *mode, *allow_large, jobs),
        Cmd::Enumerate {
            n,
            out,
            format,
            allow_large,
        } => {
            let sink: Box<dyn Write> = match out {
                Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
                None => Box::new(io::stdout().lock()),
            };
            let mut w = BufWriter::new(sink);
            let mut io_err = None;
            enumerate::enumerate(*n, *allow_large, |s| {
                if io_err.is_some() {
                    return;
                }
                let line = match format {
                    OutFormat::Triples => to_triples_text(s),
                    OutFormat::Signs => to_signs_text(s),
                };
                if let Err(e) = writeln!(w, "{line}") {
                    io_err = Some(e);
                }
            })?;
            if let Some(e) = io_err {
                return Err(e.into());
            }
            w.flush()?;
            Ok(())
        }
        Cmd::Validate { input } => validate_file(cli, input),
        Cmd::Kirchberger { input, a, b } => kirchberger(cli, input, a, b),
        Cmd::Tables => {
            let (t1, t2) = kirch::separator_tables();
            if cli.json {
                let table_json = |t: &kirch::SeparatorTable| {
                    json!({
                        "labels": t.labels,
                        "a": t.a,
                        "b": t.b,
                        "rows": t.rows.iter().map(|r| json!({
                            "pattern": r.pattern,
                            "separators": r.separators.iter().map(|s| json!({
                                "i": s.i, "j": s.j, "strong": s.strong, "name": t.name(s),
                            })).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                    })
                };
                print_json(&json!({ "tables": [table_json(&t1), table_json(&t2)] }));
            } else {
                println!("# A = {{a}}, B = {{b1,b2,b3}}; strong separators starred");
                print!("{}", t1.render());
                println!();
                println!("# A = {{a1,a2}}, B = {{b1,b2}}; strong separators starred");
                print!("{}", t2.render());
            }
            Ok(())
        }
        Cmd::VerifyKirchberger { n, samples, splits } => {
            let report = match samples {
                Some(m) => {
                    let seed = need_seed(cli, "sampling")?;
                    kirch::verify_sampled(*n, *m, *splits, seed, jobs)?
                }
                None => kirch::verify_exhaustive(*n, jobs)?,
            };
            print_report(cli, &report);
            if report.theorem_holds() {
                Ok(())
            } else {
                Err(Failure::Falsified)
            }
        }
        Cmd::Crossings { input, per_tuple } => {
            let all = load_all(input)?;
            let mut out = Vec::new();
            for s in &all {
                let profile = cross::crossing_profile(s);
                if cli.json {
                    let mut v = json!({ "signotope": to_json(s), "crossings": profile.total });
                    if *per_tuple {
                        v["types"] = profile
                            .types
                            .iter()
                            .map(|(q, t)| json!({ "quad": q, "type": type_name(*t) }))
                            .collect();
                    }
                    out.push(v);
                } else {
                    println!("{} crossings={}", to_triples_text(s), profile.total);
                    if *per_tuple {
                        for (q, t) in &profile.types {
                            println!("  {}{}{}{} {}", q[0], q[1], q[2], q[3], type_name(*t));
                        }
                    }
                }
            }
            if cli.json {
                print_json(&Value::Array(out));
            }
            Ok(())
        }
        Cmd::MinCrossings { n, allow_large, budget } => {
            let m = match budget {
                Some(b) => cross::min_crossings_bounded(*n, *b)?,
                None => cross::min_crossings(*n, *allow_large, jobs)?,
            };
            if cli.json {
                print_json(&json!({
                    "n": m.n, "crossings": m.crossings, "exact": m.exact, "witness": to_json(&m.witness),
                }));
            } else {
                let bound = if m.exact { "" } else { " (upper bound, budget exhausted)" };
                println!("min crossings n={}: {}{bound}", m.n, m.crossings);
                println!("witness {}", to_triples_text(&m.witness));
            }
            Ok(())
        }
        Cmd::CheckListings => check_listings(cli, jobs),
        Cmd::Extend { input, to } => {
            let all = load_all(input)?;
            let ext: Vec<Signotope> = all
                .iter()
                .map(|s| construct::all_plus_extension(s, *to))
                .collect::<Result<_, _>>()?;
            if cli.json {
                print_json(&Value::Array(ext.iter().map(to_json).collect()));
            } else {
                for s in &ext {
                    println!("{}", to_triples_text(s));
                }
            }
            Ok(())
        }
        Cmd::Product {
            a,
            b,
            c,
            map,
            map_random,
        } => {
            let (sa, sb, sc) = (load_one(a)?, load_one(b)?, load_one(c)?);
            let m = match (map, map_random) {
                (Some(p), _) => read(p)?.parse::<ProductMap>()?,
                (None, true) => {
                    let seed = need_seed(cli, "--map-random")?;
                    ProductMap::random(sa.n(), &mut ChaCha8Rng::seed_from_u64(seed))
                }
                (None, false) => return Err(anyhow!("pass --map FILE or --map-random").into()),
            };
            let s = construct::product_construct(&sa, &sb, &sc, &m)?;
            if cli.json {
                print_json(&json!({ "signotope": to_json(&s), "map": m.to_string().trim_end() }));
            } else {
                println!("{}", to_triples_text(&s));
            }
            Ok(())
        }
        Cmd::Bounds {
            t,
            g,
            max_n,
            allow_large,
        } => bounds(cli, *t, *g, *max_n, *allow_large, jobs),
        Cmd::Selftest {
            large,
            expect_table1,
            expect_table2,
        } => selftest(cli, *large, expect_table1.as_deref(), expect_table2.as_deref(), jobs),
    }
}

fn type_name(t: CrossingType) -> &'static str {
    match t {
        CrossingType::TypeI => "I",
        CrossingType::TypeII => "II",
    }
}

fn class_json(idx: &ClassIndex) -> Value {
    idx.classes
        .iter()
        .map(|c| {
            json!({
                "representative": to_json(&c.representative),
                "size": c.size.to_string(),
                "crossings": c.crossings,
            })
        })
        .collect()
}

fn count(
    cli: &Cli,
    n: usize,
    classes: Option<ClassArg>,
    mode: gensig_core::CanonMode,
    allow_large: bool,
    jobs: usize,
) -> Outcome {
    enumerate::check_cap(n, allow_large)?;
    let Some(kind) = classes else {
        let c = enumerate::count_all(n, jobs)?;
        if cli.json {
            print_json(&json!({ "n": n, "count": c.to_string() }));
        } else {
            println!("{c}");
        }
        return Ok(());
    };
    let idx = match kind {
        ClassArg::Relabel => classes::relabeling_classes(n, mode, allow_large, jobs)?,
        ClassArg::Flip => classes::flip_classes(n, mode, allow_large, jobs)?,
    };
    if cli.json {
        print_json(&json!({
            "n": n,
            "count": idx.len(),
            "signotopes": idx.total().to_string(),
            "mode": mode,
            "classes": class_json(&idx),
        }));
    } else {
        println!("{}", idx.len());
        for c in &idx.classes {
            println!("{} crossings={} {}", c.size, c.crossings, to_triples_text(&c.representative));
        }
    }
    Ok(())
}

fn validate_file(cli: &Cli, input: &Path) -> Outcome {
    let text = read(input)?;
    let entries = parse_lines(&text);
    let mut results = Vec::new();
    let mut any_invalid = false;
    for e in entries {
        let (n, signs) = e
            .parsed
            .map_err(|err| anyhow!("{}:{}: {err}", input.display(), e.line))?;
        match validate(n, &signs) {
            Ok(s) => {
                if cli.json {
                    results.push(json!({ "line": e.line, "valid": true, "signotope": to_json(&s) }));
                } else {
                    println!("line {}: valid", e.line);
                }
            }
            Err(Error::Invalid(v)) => {
                any_invalid = true;
                if cli.json {
                    let pattern: String = v.pattern.iter().map(|s| s.as_char()).collect();
                    results.push(json!({ "line": e.line, "valid": false, "quad": v.quad, "pattern": pattern }));
                } else {
                    println!("line {}: invalid: {v}", e.line);
                }
            }
            Err(other) => return Err(anyhow!("{}:{}: {other}", input.display(), e.line).into()),
        }
    }
    if cli.json {
        print_json(&Value::Array(results));
    }
    if any_invalid {
        Err(Failure::Falsified)
    } else {
        Ok(())
    }
}

fn kirchberger(cli: &Cli, input: &Path, a: &[u8], b: &[u8]) -> Outcome {
    let s = load_one(input)?;
    let inst = SeparationInstance::new(s, a, b)?;
    let outcome = kirch::kirchberger(&inst);
    if cli.json {
        print_json(&json!({
            "a": inst.a(),
            "b": inst.b(),
            "result": outcome,
            "separators": kirch::find_separators(&inst),
        }));
    } else {
        match &outcome {
            KirchbergerOutcome::StrongSeparator { separator } => {
                println!("strong separator ({},{})", separator.i, separator.j)
            }
            KirchbergerOutcome::HypothesisCounterexample { c } => {
                println!(
                    "hypothesis fails on {{{},{},{},{}}}: A∩C and B∩C are not separable",
                    c[0], c[1], c[2], c[3]
                )
            }
            KirchbergerOutcome::VacuousNoSeparator => {
                println!("no strong separator; fewer than 4 elements, so the hypothesis is vacuous")
            }
            KirchbergerOutcome::TheoremViolation => println!("INVARIANT VIOLATION: clean hypothesis but no strong separator"),
        }
    }
    match outcome {
        KirchbergerOutcome::StrongSeparator { .. } => Ok(()),
        _ => Err(Failure::Falsified),
    }
}

fn print_report(cli: &Cli, r: &VerifyReport) {
    if cli.json {
        print_json(&serde_json::to_value(r).expect("report serializes"));
        return;
    }
    println!(
        "n={}: {} signotopes, {} instances, {} with clean hypothesis",
        r.n, r.signotopes, r.instances, r.hypothesis_clean
    );
    println!("theorem: {} counterexamples", r.theorem_violations);
    for f in &r.theorem_examples {
        println!("  {} A={:?} B={:?}", to_triples_text(&f.signotope), f.a, f.b);
    }
    println!(
        "converse: {} of {} separable instances have a non-separable 4-subset",
        r.converse_violations, r.separable
    );
    for f in &r.converse_examples {
        println!("  {} A={:?} B={:?}", to_triples_text(&f.signotope), f.a, f.b);
    }
}

fn check_listings(cli: &Cli, jobs: usize) -> Outcome {
    let six = listings::six_element_listings();
    let seven = listings::seven_element_listing();
    let result = checks::check_listings(&CheckOptions {
        jobs,
        ..CheckOptions::default()
    });
    if cli.json {
        let entry = |s: &Signotope, realizable: Option<bool>| {
            json!({
                "signotope": to_json(s),
                "valid": s.first_violation().is_none(),
                "crossings": cross::crossing_number(s),
                "realizable": realizable,
            })
        };
        let mut rows: Vec<Value> = six
            .iter()
            .enumerate()
            .map(|(k, s)| entry(s, Some(k < listings::REALIZABLE_SIX.len())))
            .collect();
        rows.push(entry(&seven, Some(false)));
        print_json(&json!({ "listings": rows, "passed": result.passed, "detail": result.detail }));
    } else {
        for (k, s) in six.iter().enumerate() {
            let tag = if k < listings::REALIZABLE_SIX.len() { "realizable" } else { "non-realizable" };
            println!("{} crossings={} {tag}", to_triples_text(s), cross::crossing_number(s));
        }
        println!(
            "{} crossings={} (every drawing of K7 has >= {})",
            to_triples_text(&seven),
            cross::crossing_number(&seven),
            listings::K7_DRAWING_MIN_CROSSINGS
        );
        println!("{result}");
    }
    if result.passed {
        Ok(())
    } else {
        Err(Failure::Falsified)
    }
}

fn bounds(cli: &Cli, t: usize, g: Option<u128>, max_n: usize, allow_large: bool, jobs: usize) -> Outcome {
    let (g_t, source) = match g {
        Some(g) => (g, "given"),
        None if t <= 6 || (t == 7 && allow_large) => (enumerate::count_all(t, jobs)?, "computed"),
        None if t == 7 => (listings::G7, "known value"),
        None => return Err(anyhow!("no count known for t={t}; pass --g").into()),
    };
    let report = construct::bound_report(t, g_t, max_n)?;
    let below: Vec<usize> = report
        .f_values
        .iter()
        .filter(|&&(n, f)| (f as f64) < construct::lower_bound_cubic(n))
        .map(|&(n, _)| n)
        .collect();
    if cli.json {
        print_json(&json!({
            "t": report.t,
            "g_t": report.g_t.to_string(),
            "g_source": source,
            "c_t": report.c_t,
            "f_values": report.f_values,
            "cubic_bound_holds": below.is_empty(),
        }));
    } else {
        println!("c({t}) = log2({g_t})/C({t},3) = {:.6} ({source})", report.c_t);
        let shown: Vec<String> = report
            .f_values
            .iter()
            .filter(|&&(n, _)| is_power_of_three(n))
            .map(|(n, f)| format!("f({n})={f}"))
            .collect();
        println!("{}", shown.join(" "));
        println!(
            "f(n) >= n^3/24 - 3n^2/8 for n <= {max_n}: {}",
            if below.is_empty() { "holds" } else { "FAILS" }
        );
    }
    if below.is_empty() {
        Ok(())
    } else {
        Err(Failure::Falsified)
    }
}

fn is_power_of_three(n: usize) -> bool {
    let mut x = n;
    while x > 1 && x.is_multiple_of(3) {
        x /= 3;
    }
    x == 1 && n >= 3
}

fn load_table(path: Option<&Path>) -> Result<Option<Vec<(String, String)>>, Failure> {
    match path {
        None => Ok(None),
        Some(p) => checks::parse_expected_table(&read(p)?)
            .map(Some)
            .map_err(|e| anyhow!("{}: {e}", p.display()).into()),
    }
}

fn borrow_rows<'a>(rows: &'a Option<Vec<(String, String)>>, default: &[ExpectedRow<'static>]) -> Vec<ExpectedRow<'a>> {
    match rows {
        Some(rows) => rows.iter().map(|(p, s)| (p.as_str(), s.as_str())).collect(),
        None => default.to_vec(),
    }
}

fn selftest(cli: &Cli, large: bool, t1: Option<&Path>, t2: Option<&Path>, jobs: usize) -> Outcome {
    let opts = CheckOptions {
        jobs,
        large,
        seed: cli.seed.unwrap_or(CheckOptions::default().seed),
    };
    let (t1, t2) = (load_table(t1)?, load_table(t2)?);
    let (e1, e2) = (borrow_rows(&t1, &checks::EXPECTED_TABLE_1), borrow_rows(&t2, &checks::EXPECTED_TABLE_2));
    let json = cli.json;
    let results = checks::run_all(&opts, (&e1, &e2), |r| {
        if !json {
            println!("{r}");
        }
    });
    let failed = results.iter().filter(|r| !r.passed).count();
    if json {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| {
                json!({
                    "id": r.id, "name": r.name, "passed": r.passed,
                    "detail": r.detail, "seconds": r.elapsed.as_secs_f64(),
                })
            })
            .collect();
        print_json(&json!({ "checks": rows, "failed": failed }));
    } else {
        println!("{} of {} checks passed", results.len() - failed, results.len());
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Falsified)
    }
}
