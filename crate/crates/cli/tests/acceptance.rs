//! End-to-end acceptance checks, one line per criterion on stdout.

use std::collections::BTreeSet;
use std::io::Write;
use std::thread;
use std::time::{Duration, Instant};

use levelcell::cells::{CellDescription, Constraint, IndexedRoot, Relation, Span, SymbolicInterval};
use levelcell::explain::{check_conflict, explain_conflict};
use levelcell::levelwise::{single_cell, Construction, Heuristic, HeuristicConfig};
use levelcell::poly::{discriminant, factor, parse_poly, rat, resultant, FactorMode, MPoly, Var};
use levelcell::proofsys::{canonical, check_trace, Origin, Property, Rule};
use levelcell::random::{random_coordinate, random_instance, random_poly, InstanceShape};
use levelcell::realalg::{sign_at, RealAlg};
use levelcell_cli::compare::compare;
use levelcell_cli::smtlib::{parse_problem, Problem};
use levelcell_cli::solve::{solve_conjunction, Verdict};
use levelcell_cli::stats::RunStats;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

const FUZZ_INSTANCES: u64 = 500;
const FUZZ_POINTS: u64 = 100;
const EXPLAIN_INSTANCES: usize = 100;
const EXPLAIN_POINTS: u64 = 50;

type Outcome = Result<String, String>;

fn report(n: usize, title: &str, outcome: &Outcome) {
    let line = match outcome {
        Ok(detail) => format!("criterion {n}: PASS {title}: {detail}\n"),
        Err(why) => format!("criterion {n}: FAIL {title}: {why}\n"),
    };
    // bypass the test harness capture so the lines always show
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn q(n: i64, d: i64) -> RealAlg {
    RealAlg::rational(rat(n, d))
}

fn running_example() -> (Vec<MPoly>, Vec<RealAlg>, Construction, Duration) {
    let ps: Vec<MPoly> =
        ["x1 - 2*x2 + 1", "x1^2 + x2^2 - 1", "x1 - 2*x2 - 1"].iter().map(|p| parse_poly(p).unwrap()).collect();
    let s = vec![q(1, 8), q(-3, 4)];
    let start = Instant::now();
    let c = single_cell(&ps, &s, &HeuristicConfig::new(Heuristic::Eq, Heuristic::Bc)).expect("running example");
    (ps, s, c, start.elapsed())
}

fn criterion_1() -> Outcome {
    let (ps, _, c, elapsed) = running_example();
    let i2 = SymbolicInterval::sector(Some(IndexedRoot::new(ps[1].normalize(), 1)), Some(IndexedRoot::new(ps[2].normalize(), 1)));
    ensure(c.cell.intervals[1] == i2, || format!("I2 = {}", c.cell.intervals[1]))?;
    let level1: BTreeSet<MPoly> = c.projection.iter().map(|(_, p)| p).filter(|p| p.level() == 1).cloned().collect();
    let expected: BTreeSet<MPoly> = ["4 - 4*x1^2", "5*x1^2 - 2*x1 - 3"].iter().map(|p| canonical(&parse_poly(p).unwrap())).collect();
    ensure(level1 == expected, || format!("level-1 projection {level1:?}"))?;
    // I1 is bounded by roots of the factors of those two polynomials
    let Some(Span::Sector(Some(lo), Some(hi))) = c.cell.intervals[0].span(&[]) else {
        return Err(format!("I1 = {}", c.cell.intervals[0]));
    };
    ensure(lo == q(-3, 5) && hi == q(1, 1), || format!("I1 spans ({lo}, {hi})"))?;
    for b in c.cell.intervals[0].roots() {
        ensure(expected.iter().any(|p| p.exact_div(&b.poly).is_some()), || format!("bound {b} is no factor"))?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("I1 = (-3/5, 1), I2 = {i2}, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let (ps, _, c, _) = running_example();
    let r = resultant(&ps[2], &ps[0], Var(2));
    ensure(r.constant_value().is_some_and(|v| v.abs() == rat(4, 1)), || format!("res(p3, p1) = {r}"))?;
    let shared = c.trace.derivation_of(&Property::ordinv(&r)).ok_or("no derivation of ordinv(res(p3, p1))")?;
    ensure(shared.antecedents.is_empty(), || format!("ordinv(4) needs {:?}", shared.antecedents.len()))?;
    for p in &ps {
        let e = c.trace.derivation_of(&Property::sgninv(p)).ok_or_else(|| format!("no derivation of sgninv({p})"))?;
        let mut kinds: Vec<&str> = e
            .antecedents
            .iter()
            .map(|a| match a {
                Property::Sample(_) => "sample",
                Property::Repr(..) => "repr",
                Property::IrOrd(..) => "irord",
                Property::AnDel(d) if *d == canonical(p) => "del",
                Property::AnSub(1) => "ansub",
                Property::Connected(1) => "connected",
                _ => "other",
            })
            .collect();
        kinds.sort_unstable();
        let expected = ["ansub", "connected", "del", "irord", "repr", "sample"];
        ensure(kinds == expected, || format!("sgninv({p}) from {kinds:?}"))?;
    }
    check_trace(&c.trace, c.axioms(), FactorMode::Finest).map_err(|e| e.to_string())?;
    Ok(format!("{} trace entries validate", c.trace.entries.len()))
}

/// Fuzz findings for criteria 3 and 6.
#[derive(Default)]
struct FuzzReport {
    built: usize,
    failed: usize,
    violations: Vec<String>,
    ordering_violations: Vec<String>,
    eq_violations: Vec<String>,
    compared: usize,
}

impl FuzzReport {
    fn merge(&mut self, o: FuzzReport) {
        self.built += o.built;
        self.failed += o.failed;
        self.violations.extend(o.violations);
        self.ordering_violations.extend(o.ordering_violations);
        self.eq_violations.extend(o.eq_violations);
        self.compared += o.compared;
    }
}

fn signs(polys: &[MPoly], x: &[RealAlg]) -> Vec<i32> {
    polys.iter().map(|p| sign_at(p, &x[..p.level()])).collect()
}

/// Resultants needed by the top-level ordering: pairs of distinct polynomials.
fn ordering_resultants(c: &Construction) -> usize {
    let top = c.representations.last().expect("nonempty sample");
    let pairs: BTreeSet<(MPoly, MPoly)> = top
        .ordering
        .pairs()
        .filter(|(a, b)| a.poly != b.poly)
        .map(|(a, b)| if a.poly < b.poly { (a.poly.clone(), b.poly.clone()) } else { (b.poly.clone(), a.poly.clone()) })
        .collect();
    pairs.len()
}

fn fuzz_instance(seed: u64) -> FuzzReport {
    let mut r = FuzzReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = random_instance(&mut rng, &InstanceShape::default());
    let (polys, s) = (&inst.polys, &inst.sample);
    let n = s.len();
    let expected = signs(polys, s);
    let mut built: Vec<(HeuristicConfig, Construction)> = Vec::new();
    for cfg in HeuristicConfig::all_combinations() {
        let c = match single_cell(polys, s, &cfg) {
            Ok(c) => c,
            Err(_) => {
                r.failed += 1;
                continue;
            }
        };
        r.built += 1;
        let tag = || format!("seed {seed} {cfg} {polys:?} at {s:?}");
        if c.cell.contains(s) != Some(true) {
            r.violations.push(format!("{}: sample outside", tag()));
        }
        if let Err(e) = check_trace(&c.trace, c.axioms(), cfg.factor_mode) {
            r.violations.push(format!("{}: {e}", tag()));
        }
        match c.cell.pick_interior_points(1..=FUZZ_POINTS) {
            Some(points) => {
                if let Some(x) = points.iter().find(|x| signs(polys, x) != expected) {
                    r.violations.push(format!("{}: sign change at {x:?}", tag()));
                }
            }
            None => r.violations.push(format!("{}: no interior points", tag())),
        }
        built.push((cfg, c));
    }
    // the top level sees the same roots under every configuration
    for section in [Heuristic::Eq, Heuristic::Ch, Heuristic::Ldb] {
        let find = |h| built.iter().find(|(cfg, _)| cfg.section == section && cfg.sector == h).map(|(_, c)| c);
        if let (Some(ch), Some(full)) = (find(Heuristic::Ch), find(Heuristic::Full)) {
            r.compared += 1;
            let closure = full.representations[n - 1].ordering.closure();
            let missing = ch.representations[n - 1].ordering.pairs().find(|p| !closure.contains(*p)).cloned();
            if let Some((a, b)) = missing {
                r.ordering_violations.push(format!("seed {seed} {section:?}: {a} <= {b} not implied by full"));
            }
            if ordering_resultants(ch) > ordering_resultants(full) {
                r.ordering_violations.push(format!("seed {seed} {section:?}: more resultants under ch"));
            }
        }
    }
    for (cfg, c) in built.iter().filter(|(cfg, _)| cfg.section == Heuristic::Eq) {
        let top = &c.representations[n - 1];
        let SymbolicInterval::Section(b) = &top.interval else { continue };
        let discs: BTreeSet<&MPoly> =
            c.projection.iter().filter(|(o, _)| *o == Origin::Discriminant).map(|(_, p)| p).collect();
        let others = polys
            .iter()
            .filter(|p| p.level() == n)
            .flat_map(|p| factor(p, cfg.factor_mode).factors.into_iter().map(|(f, _)| f))
            .filter(|f| *f != b.poly && f.degree_in(Var(n)) > 1);
        for f in others {
            let d = canonical(&discriminant(&f, Var(n)));
            if !d.is_constant() && discs.contains(&d) {
                r.eq_violations.push(format!("seed {seed} {cfg}: disc({f}) with section on {}", b.poly));
            }
        }
    }
    r
}

/// Criteria 3 and 6 share one pass over the fuzz instances.
fn fuzz() -> (FuzzReport, Duration) {
    let start = Instant::now();
    let workers = thread::available_parallelism().map_or(4, |n| n.get()) as u64;
    let mut total = FuzzReport::default();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut r = FuzzReport::default();
                    for seed in (w..FUZZ_INSTANCES).step_by(workers as usize) {
                        r.merge(fuzz_instance(seed));
                    }
                    r
                })
            })
            .collect();
        for h in handles {
            total.merge(h.join().expect("fuzz worker"));
        }
    });
    (total, start.elapsed())
}

fn criterion_3(r: &FuzzReport, elapsed: Duration) -> Outcome {
    ensure(r.violations.is_empty(), || format!("{} violations, first: {}", r.violations.len(), r.violations[0]))?;
    ensure(r.built > 10 * r.failed, || format!("only {} cells built, {} failures", r.built, r.failed))?;
    ensure(elapsed < Duration::from_secs(180), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{FUZZ_INSTANCES} instances x 12 configurations, {} cells checked at {FUZZ_POINTS} points, {} construction failures, {elapsed:.1?}",
        r.built, r.failed
    ))
}

fn criterion_4() -> Outcome {
    let p = vec![parse_poly("x1*x3 + x2").unwrap()];
    let cfg = HeuristicConfig::default();
    ensure(single_cell(&p, &[q(0, 1), q(0, 1), q(0, 1)], &cfg).is_err(), || "origin succeeded".into())?;
    let c = single_cell(&p, &[q(1, 1), q(0, 1), q(0, 1)], &cfg).map_err(|e| format!("(1, 0, 0): {e}"))?;
    ensure(c.cell.contains(&[q(1, 1), q(0, 1), q(0, 1)]) == Some(true), || "sample outside".into())?;
    Ok("fails at (0, 0, 0), succeeds at (1, 0, 0)".into())
}

fn criterion_5() -> Outcome {
    let checks: [(&str, fn()); 6] = [
        ("200 resultants vs Sylvester", || oracles::resultant_matches_sylvester_determinant(200)),
        ("bivariate specializations", || oracles::bivariate_resultant_specializes_to_sylvester(60)),
        ("discriminant identity", || oracles::discriminant_identity_and_closed_forms(100)),
        ("300 isolations vs Sturm", || oracles::isolation_count_matches_sturm(300)),
        ("200 factored products", || oracles::factorization_reconstitutes_products(200)),
        ("algebraic comparisons", oracles::algebraic_roots_order_against_rationals),
    ];
    for (name, check) in checks {
        std::panic::catch_unwind(check).map_err(|e| {
            let msg = e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into());
            format!("{name}: {msg}")
        })?;
    }
    Ok(checks.map(|(name, _)| name).join(", "))
}

fn criterion_6(r: &FuzzReport) -> Outcome {
    ensure(r.ordering_violations.is_empty(), || {
        format!("{} violations, first: {}", r.ordering_violations.len(), r.ordering_violations[0])
    })?;
    ensure(r.eq_violations.is_empty(), || format!("{} violations, first: {}", r.eq_violations.len(), r.eq_violations[0]))?;
    Ok(format!("{} ch/full comparisons, no stray discriminants under eq", r.compared))
}

/// Random constraints over `x1..x_{n+1}` with a conflicting prefix.
fn conflict_instance(rng: &mut ChaCha8Rng) -> (Vec<Constraint>, Vec<RealAlg>) {
    let shape = InstanceShape { max_degree: 2, max_terms: 3, ..InstanceShape::default() };
    const RELS: [Relation; 5] = [Relation::Lt, Relation::Gt, Relation::Le, Relation::Ge, Relation::Eq];
    loop {
        let n = rng.gen_range(1..=2);
        let count = rng.gen_range(2..=3);
        let cs: Vec<Constraint> = (0..count)
            .map(|k| {
                let level = if k == 0 { n + 1 } else { rng.gen_range(1..=n + 1) };
                let p = random_poly(rng, level, &shape);
                Constraint::poly(p, RELS[rng.gen_range(0..RELS.len())])
            })
            .collect();
        let s: Vec<RealAlg> = (0..n).map(|_| random_coordinate(rng)).collect();
        let lower_ok = cs.iter().filter(|c| c.level() <= n).all(|c| c.holds(&s[..c.level()]) == Some(true));
        if lower_ok && check_conflict(&cs, &s) == Ok(true) {
            return (cs, s);
        }
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = HeuristicConfig::default();
    let (mut explained, mut failed, mut attempts) = (0, 0, 0);
    while explained < EXPLAIN_INSTANCES {
        attempts += 1;
        ensure(attempts <= 4 * EXPLAIN_INSTANCES, || format!("only {explained} explanations in {attempts} conflicts"))?;
        let (cs, s) = conflict_instance(&mut rng);
        let e = match explain_conflict(&cs, &s, &cfg) {
            Ok(e) => e,
            Err(_) => {
                failed += 1;
                continue;
            }
        };
        explained += 1;
        let formula = e.cell.to_formula();
        let negated: Vec<Constraint> = formula.iter().map(Constraint::negate).collect();
        ensure(e.clause == negated, || format!("clause {:?} is not the negated cell", e.clause))?;
        ensure(e.cell.contains(&s) == Some(true), || format!("sample {s:?} outside {}", e.cell))?;
        let points = e.cell.pick_interior_points(1..=EXPLAIN_POINTS).ok_or("no interior points")?;
        for x in points {
            ensure(check_conflict(&cs, &x) == Ok(true), || format!("{cs:?} satisfiable over {x:?}"))?;
            ensure(e.clause.iter().all(|l| l.holds(&x[..l.level()]) == Some(false)), || format!("clause true at {x:?}"))?;
        }
    }
    Ok(format!("{explained} cells checked at {EXPLAIN_POINTS} points, {failed} explanation failures"))
}

/// Mostly constraints on the last variable, so that deeper levels conflict.
fn random_problem(rng: &mut ChaCha8Rng) -> Problem {
    let shape = InstanceShape { max_degree: 2, max_terms: 3, ..InstanceShape::default() };
    let n = rng.gen_range(2..=3);
    let names: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let mut text = String::from("(set-logic QF_NRA)\n");
    for v in &names {
        text += &format!("(declare-const {v} Real)\n");
    }
    for k in 0..rng.gen_range(2..=4) {
        let level = if k < 2 { n } else { rng.gen_range(1..=n) };
        let p = random_poly(rng, level, &shape);
        let rel = ["<", ">", "<=", ">=", "="][rng.gen_range(0..5)];
        text += &format!("(assert ({rel} {} 0))\n", smt_term(&p, &names));
    }
    parse_problem(&text).expect("generated problem parses")
}

fn smt_term(p: &MPoly, names: &[String]) -> String {
    let terms: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let mut factors = vec![if c.is_integer() { format!("{}", c.numer()) } else { format!("(/ {} {})", c.numer(), c.denom()) }];
            for (k, &e) in m.exps().iter().enumerate() {
                factors.extend(std::iter::repeat_n(names[k].clone(), e as usize));
            }
            format!("(* {})", factors.join(" "))
        })
        .collect();
    format!("(+ 0 {})", terms.join(" "))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let problems: Vec<Problem> = (0..20).map(|_| random_problem(&mut rng)).collect();
    let configs = HeuristicConfig::all_combinations();
    let summaries = compare(&problems, &configs, 64);
    ensure(summaries.len() == configs.len(), || "missing configurations".into())?;
    let mut lines = Vec::new();
    for s in &summaries {
        ensure(s.sat + s.unsat + s.unknown == s.instances, || format!("{s}: verdicts do not add up"))?;
        lines.push(s.to_string());
    }
    // verdicts never contradict each other across configurations
    for p in &problems {
        let verdicts: BTreeSet<&str> = configs
            .iter()
            .map(|cfg| solve_conjunction(p, 64, cfg).verdict.name())
            .filter(|v| *v != "unknown")
            .collect();
        ensure(verdicts.len() <= 1, || format!("conflicting verdicts {verdicts:?}"))?;
    }
    // per-run counters agree with the projection recorded in the traces
    let (_, _, c, _) = running_example();
    let mut stats = RunStats::default();
    stats.record(&c);
    stats.record(&c);
    let distinct = |o| c.projection.iter().filter(|(origin, _)| *origin == o).count();
    ensure(
        stats.cells_constructed == 2
            && stats.resultants_computed() == distinct(Origin::Resultant)
            && stats.discriminants_computed() == distinct(Origin::Discriminant)
            && stats.coefficients_computed() == distinct(Origin::Coefficient),
        || format!("stats {stats}"),
    )?;
    for (_, p) in &c.projection {
        let mentioned = c.trace.entries.iter().any(|e| {
            matches!(&e.conclusion, Property::OrdInv(q) | Property::SgnInv(q) | Property::NonNull(q) if q == p)
                || (e.rule == Rule::ReducibleOrdInv && e.conclusion.poly() == Some(p))
        });
        ensure(mentioned, || format!("projection polynomial {p} absent from the trace"))?;
    }
    let mut out = std::io::stdout().lock();
    for l in &lines {
        let _ = writeln!(out, "  {l}");
    }
    Ok(format!(
        "desk-scale heuristic comparison on {} random problems (the large benchmark campaign is not reproduced)",
        problems.len()
    ))
}

fn check_sat_models(problems: &[Problem]) -> Result<(), String> {
    for p in problems {
        if let Verdict::Sat(m) = solve_conjunction(p, 64, &HeuristicConfig::default()).verdict {
            ensure(p.constraints.iter().all(|c| c.holds(&m[..c.level()]) == Some(true)), || format!("bad model {m:?}"))?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |n, title, outcome: Outcome| {
        report(n, title, &outcome);
        results.push((n, title, outcome));
    };
    record(1, "running example cell", criterion_1());
    record(2, "trace fidelity", criterion_2());
    let (fuzz_report, elapsed) = fuzz();
    record(3, "soundness fuzz", criterion_3(&fuzz_report, elapsed));
    record(4, "nullification", criterion_4());
    record(5, "algebra oracles", criterion_5());
    record(6, "heuristic structure", criterion_6(&fuzz_report));
    record(7, "explanation soundness", criterion_7());
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let problems: Vec<Problem> = (0..10).map(|_| random_problem(&mut rng)).collect();
    record(8, "statistics report", criterion_8().and_then(|d| check_sat_models(&problems).map(|_| d)));
    let failed: Vec<String> = results.iter().filter(|(_, _, o)| o.is_err()).map(|(n, t, _)| format!("{n} ({t})")).collect();
    assert!(failed.is_empty(), "failed criteria: {}", failed.join(", "));
}

#[test]
fn learned_cells_are_parseable() {
    let (_, _, c, _) = running_example();
    let text = c.cell.to_string();
    let back = CellDescription::parse_with(&text, &[]).expect("round trip");
    assert_eq!(back, c.cell);
}
