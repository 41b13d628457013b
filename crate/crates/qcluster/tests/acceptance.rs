//! Acceptance criteria 1-14, one line each, with their time limits.
//!
//! Runs as a plain binary so the lines are always shown. The process fails
//! when a criterion fails, except criterion 8, whose printed identity is
//! known not to hold; for it the facts that do hold are asserted instead.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcluster::catalog::*;
use qcluster::ccmap::{cc_map, ClusterObject};
use qcluster::finrep::family::{eval_poly, grassmannian_poly, is_prime, RepFamily};
use qcluster::finrep::hom::ext_dim;
use qcluster::finrep::registry::Registry;
use qcluster::finrep::rep::QuiverRep;
use qcluster::finrep::subspace::grassmannian_count;
use qcluster::harness::grading::{cluster_variable_expansions, generic_basis, standard_independence, StandardBasis};
use qcluster::harness::hall::{green_sweep, hall_sweep};
use qcluster::harness::sequences::{exchange_sweep, verify_onedim, verify_tube_recursion};
use qcluster::harness::tame::{difference_with_frozen_term, kronecker_expansions, verify_difference, verify_kronecker, verify_points};
use qcluster::harness::VerifyReport;
use qcluster::quiver::verify_bilinear_identities;
use qcluster::scalar::Mode;
use qcluster::seed::{explore, mutate_seed, mutate_sequence, QuantumSeed};
use qcluster::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn all_pass(reports: &[VerifyReport]) -> std::result::Result<(), String> {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_string()),
        None => Ok(()),
    }
}

type DimFilter = Box<dyn Fn(&[usize]) -> bool>;

fn sweep_of(fq: &Framed) -> (Vec<usize>, DimFilter) {
    if fq.kind == Kind::Kronecker {
        (vec![2, 2], Box::new(|d: &[usize]| d.iter().all(|&x| x <= 2)))
    } else {
        (vec![4; fq.n()], Box::new(|d: &[usize]| d.iter().sum::<usize>() <= 4))
    }
}

fn c1() -> Result<Outcome> {
    let fq = kronecker();
    let p = 3;
    let t = fq.torus(Mode::Specialized(p));
    if let Err(e) = all_pass(&kronecker_expansions(&fq, &t)?) {
        return outcome(false, e);
    }
    let want = [
        (QuiverRep::simple(&fq.principal, p, 0), "1 * X^(-1,0,1,0) + 1 * X^(-1,2,0,0)"),
        (QuiverRep::simple(&fq.principal, p, 1), "1 * X^(0,-1,0,0) + 1 * X^(2,-1,0,1)"),
    ];
    for (m, s) in want {
        let x = cc_map(&fq, &ClusterObject::module(&fq, m), &t)?;
        if x.canonical() != s {
            return outcome(false, format!("{x} != {s}"));
        }
    }
    let r1 = "1 * X^(-1,-1,1,0) + 1 * X^(-1,1,0,0) + 1 * X^(1,-1,1,1)";
    let mut points = 0;
    for pt in Point::all(p) {
        let x = cc_map(&fq, &ClusterObject::module(&fq, kron_regular(&fq, p, pt, 1)?), &t)?;
        if x.canonical() != r1 {
            return outcome(false, format!("R(1) at {pt:?}: {x}"));
        }
        points += 1;
    }
    outcome(true, format!("S1, S2 and R(1) at all {points} points of P^1(F_3) match term for term"))
}

fn c2() -> Result<Outcome> {
    let fq = kronecker();
    let mut modes = Vec::new();
    for mode in [Mode::Specialized(3), Mode::Specialized(5), Mode::Specialized(7), Mode::Formal] {
        let r = verify_kronecker(&fq, &fq.torus(mode))?;
        if !r.passed() {
            return outcome(false, r.to_string());
        }
        modes.push(mode.prime().map_or("formal".to_string(), |p| format!("p={p}")));
    }
    outcome(true, format!("holds at {}", modes.join(", ")))
}

fn c3() -> Result<Outcome> {
    let mut total = 0;
    for fq in [a2(), a3(), kronecker()] {
        let mut reg = Registry::new(&fq.principal, 3);
        let (max, ok) = sweep_of(&fq);
        let reps = hall_sweep(&fq, &mut reg, &max, ok, &fq.torus(Mode::Specialized(3)))?;
        if let Err(e) = all_pass(&reps) {
            return outcome(false, e);
        }
        total += reps.len();
    }
    outcome(true, format!("{total} ordered pairs of indecomposables on A2, A3, Kronecker"))
}

fn c4() -> Result<Outcome> {
    let mut total = 0;
    for fq in [a2(), a3(), kronecker()] {
        let mut reg = Registry::new(&fq.principal, 3);
        let (max, ok) = sweep_of(&fq);
        let reps = green_sweep(&fq.name, &mut reg, &max, ok)?;
        if let Err(e) = all_pass(&reps) {
            return outcome(false, e);
        }
        total += reps.len();
    }
    outcome(true, format!("{total} quadruples"))
}

/// Every pair of modules, decomposable or not, with a one-dimensional
/// extension space inside the sweep bound.
fn onedim_instances(fq: &Framed, p: u32) -> Result<(usize, BTreeSet<u8>, Vec<String>)> {
    let t = fq.torus(Mode::Specialized(p));
    let mut reg = Registry::new(&fq.principal, p);
    let (max, ok) = sweep_of(fq);
    let mut mods = Vec::new();
    for d in Registry::dims_below(&max) {
        let room = (0..d.len()).any(|i| {
            let mut s = d.clone();
            s[i] += 1;
            ok(&s)
        });
        if d.iter().all(|&x| x == 0) || !room {
            continue;
        }
        for id in reg.all_classes(&d)? {
            mods.push(reg.rep(&id).clone());
        }
    }
    let (mut passed, mut cases, mut failures) = (0, BTreeSet::new(), Vec::new());
    for m in &mods {
        for n in &mods {
            let s: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
            if !ok(&s) || ext_dim(m, n)? != 1 {
                continue;
            }
            let r = verify_onedim(fq, m, n, &t)?;
            if r.passed() {
                passed += 1;
                for note in &r.notes {
                    if let Some(rest) = note.split("cases=[").nth(1) {
                        let list = rest.split(']').next().unwrap_or("");
                        cases.extend(list.split(", ").filter_map(|c| c.parse::<u8>().ok()));
                    }
                }
            } else if r.failed() {
                failures.push(r.to_string());
            }
        }
    }
    Ok((passed, cases, failures))
}

fn c5() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut seen = BTreeSet::new();
    for fq in [a2(), a3(), kronecker(), a2_partial()] {
        let (passed, cases, failures) = onedim_instances(&fq, 3)?;
        if let Some(f) = failures.first() {
            return outcome(false, f.clone());
        }
        if fq.name != "a2p" && passed < 3 {
            return outcome(false, format!("{}: only {passed} instances", fq.name));
        }
        parts.push(format!("{} {passed} (cases {:?})", fq.name, cases));
        seen.extend(cases);
    }
    if seen != BTreeSet::from([1, 2, 3]) {
        return outcome(false, format!("special cases seen: {seen:?}"));
    }
    outcome(true, format!("{}; exponent 1/2 confirmed on every rigid pair", parts.join(", ")))
}

fn c6() -> Result<Outcome> {
    let mut passed = 0;
    let mut parts = Vec::new();
    for fq in [a2(), a3(), kronecker()] {
        let mut reg = Registry::new(&fq.principal, 3);
        let reps = exchange_sweep(&fq, &mut reg, &vec![2; fq.n()], &fq.torus(Mode::Specialized(3)))?;
        if let Some(r) = reps.iter().find(|r| r.failed()) {
            return outcome(false, r.to_string());
        }
        let k = reps.iter().filter(|r| r.passed()).count();
        parts.push(format!("{} {k}", fq.name));
        passed += k;
    }
    outcome(passed >= 2, format!("{passed} instances with [P,M] = [M,I] = 1 ({})", parts.join(", ")))
}

fn c7() -> Result<Outcome> {
    let p = 3;
    let mut n = 0;
    for (fq, lower) in [(atilde(2, 2)?, false), (atilde(2, 2)?, true), (atilde(2, 1)?, false)] {
        let tube = tube_a(&fq, p, lower)?;
        assert_eq!(tube.rank(), 2);
        for i in 1..=2 {
            let r = verify_tube_recursion(&fq, &tube, i, &fq.torus(Mode::Specialized(p)))?;
            if !r.passed() {
                return outcome(false, r.to_string());
            }
            n += 1;
        }
    }
    outcome(true, format!("{n} recursions on the rank-2 tubes of A~22 (both) and A~21"))
}

/// Returns the outcome of the printed identities and whether the count
/// identity and the identity with the frozen term both held everywhere.
fn c8() -> Result<(Outcome, bool)> {
    let p = 3;
    let mut cases = Vec::new();
    for name in ["atilde12", "atilde21", "atilde22"] {
        let fq = by_name(name)?;
        for lower in [false, true] {
            if let Ok(t) = tube_a(&fq, p, lower) {
                cases.push((fq.clone(), t));
            }
        }
    }
    let d = dtilde(4)?;
    cases.push((d.clone(), tube_d(&d, p)?));
    let (mut printed_ok, mut corrected_ok, mut failing) = (0, true, Vec::new());
    for (fq, tube) in &cases {
        let r = verify_difference(fq, tube, p, &fq.torus(Mode::Specialized(p)))?;
        corrected_ok &= difference_with_frozen_term(&r);
        if r.passed() {
            printed_ok += 1;
        } else {
            failing.push(format!("{} (diff {})", fq.name, r.diff.clone().unwrap_or_default()));
        }
    }
    let n = cases.len();
    let detail = format!(
        "count identity (*) holds for every e on all {n} tubes; printed toric identity holds on {printed_ok}/{n}; fails on {}; with the term I[-1] (I injective, socle = frozen copy of dim E_1) added it holds on {}",
        failing.join(", "),
        if corrected_ok { "all" } else { "not all" },
    );
    Ok((Outcome { pass: printed_ok == n, detail }, corrected_ok))
}

fn c9() -> Result<Outcome> {
    let mut parts = Vec::new();
    for fq in [kronecker(), atilde(2, 1)?] {
        for p in [3, 5] {
            let r = verify_points(&fq, p, &fq.torus(Mode::Specialized(p)))?;
            if !r.passed() {
                return outcome(false, r.to_string());
            }
            parts.push(format!("{} p={p} {}", fq.name, r.inputs));
        }
    }
    outcome(true, parts.join("; "))
}

fn c10() -> Result<Outcome> {
    let mut checked = 0;
    for name in NAMES {
        let fq = by_name(name)?;
        let t = fq.torus(Mode::Formal);
        let s = QuantumSeed::initial(&fq, &t);
        for k in 0..fq.n() {
            let once = mutate_seed(&s, k)?;
            if once.check()? != vec![1; fq.n()] {
                return outcome(false, format!("{name}: D changes under mutation at {}", k + 1));
            }
            let twice = mutate_seed(&once, k)?;
            if twice.lambda != s.lambda || twice.btilde != s.btilde || twice.canonical() != s.canonical() {
                return outcome(false, format!("{name}: mutation at {} is not an involution", k + 1));
            }
            checked += 1;
        }
    }
    let fq = a2();
    let t = fq.torus(Mode::Formal);
    let s = QuantumSeed::initial(&fq, &t);
    let five = mutate_sequence(&s, &[0, 1, 0, 1, 0])?;
    if five.vars[0] != s.vars[1] || five.vars[1] != s.vars[0] || five.vars[2..] != s.vars[2..] {
        return outcome(false, "pentagon does not close");
    }
    let mut vars = 0;
    for (fq, depth) in [(a2(), 6), (a3(), 10), (a3_graded(), 10), (kronecker(), 4), (atilde(2, 1)?, 3)] {
        let t = fq.torus(Mode::Formal);
        let g = explore(&QuantumSeed::initial(&fq, &t), depth)?;
        for v in &g.variables {
            if !v.is_bar_invariant()? {
                return outcome(false, format!("{}: {v} is not bar-invariant", fq.name));
            }
        }
        vars += g.variables.len();
    }
    outcome(true, format!("{checked} involutions with D = I; pentagon closes after 5 steps (seed equal up to the swap); {vars} variables bar-invariant"))
}

fn c11() -> Result<Outcome> {
    let p = 3;
    let mut parts = Vec::new();
    for fq in [a2(), a3(), a3_graded(), kronecker()] {
        let t = fq.torus(Mode::Specialized(p));
        let r = standard_independence(&fq, -2, 2, &t)?;
        if !r.passed() {
            return outcome(false, r.to_string());
        }
        parts.push(format!("{} {}", fq.name, r.rhs));
    }
    for (fq, count) in [(a2(), 5), (a3_graded(), 9)] {
        let t = fq.torus(Mode::Specialized(p));
        let eps = fq.grading.clone().expect("graded");
        let basis = StandardBasis::new(&fq, -2, 2, &eps, &t)?;
        let g = explore(&QuantumSeed::initial(&fq, &t), 12)?;
        if !g.closed || g.variables.len() != count {
            return outcome(false, format!("{}: {} cluster variables", fq.name, g.variables.len()));
        }
        if let Err(e) = all_pass(&cluster_variable_expansions(&fq, &g.variables, &basis)?) {
            return outcome(false, e);
        }
        parts.push(format!("{} all {count} variables with monomial leading coefficient", fq.name));
    }
    outcome(true, format!("box [-2,2]^n independent: {}", parts.join("; ")))
}

fn c12() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let samples = 500;
    for name in NAMES {
        let fq = by_name(name)?;
        let n = fq.n();
        for _ in 0..samples {
            let mut v = || -> Vec<i64> { (0..n).map(|_| rng.gen_range(-3..=3)).collect() };
            let (m, e, f, l) = (v(), v(), v(), v());
            let r = verify_bilinear_identities(&fq.pair.lambda, &fq.ex, &m, &e, &f, &l);
            if !r.failures.is_empty() {
                return outcome(false, format!("{name} m={m:?} e={e:?} f={f:?} l={l:?}: {:?}", r.failures));
            }
        }
    }
    outcome(true, format!("{samples} random quadruples on each of {} framings", NAMES.len()))
}

fn next_prime(after: u32, avoid: &[u32]) -> u32 {
    (after + 1..).find(|&q| is_prime(q) && !avoid.contains(&q)).expect("primes are infinite")
}

fn c13() -> Result<Outcome> {
    let mut fams: Vec<(String, RepFamily, i64)> = Vec::new();
    for name in ["kronecker", "atilde21", "atilde12", "atilde22", "dtilde4"] {
        let fq = by_name(name)?;
        let lambda = if fq.kind == Kind::Kronecker { 0 } else { -1 };
        let mut fam = e_family(&fq)?;
        if let Kind::Dtilde(_) = fq.kind {
            fam.bad_primes.push(2);
        }
        fams.push((format!("E(L) on {name}"), fam, lambda));
    }
    for name in ["kronecker", "a3", "atilde21"] {
        let fq = by_name(name)?;
        for v in 0..fq.n() {
            for (kind, m) in [("P", QuiverRep::projective(&fq.principal, 3, v)), ("I", QuiverRep::injective(&fq.principal, 3, v))] {
                let mats = m.mats().iter().map(|x| x.data().iter().map(|&c| c as i64).collect()).collect();
                let fam = RepFamily::from_rep_ints(fq.principal.clone(), m.dims().to_vec(), mats)?;
                fams.push((format!("{kind}{} on {name}", v + 1), fam, 0));
            }
        }
    }
    let k = kronecker();
    let r2 = kron_regular(&k, 3, Point::infinity(), 2)?;
    let mats = r2.mats().iter().map(|x| x.data().iter().map(|&c| c as i64).collect()).collect();
    fams.push(("R(2) on kronecker".into(), RepFamily::from_rep_ints(k.principal.clone(), r2.dims().to_vec(), mats)?, 0));
    let mut polys = 0;
    for (label, fam, lambda) in &fams {
        for e in Registry::dims_below(&fam.dims) {
            let poly = grassmannian_poly(fam, &e, *lambda)?;
            let mut avoid = fam.bad_primes.clone();
            avoid.extend(&poly.primes);
            let q = next_prime(poly.held_out, &avoid);
            let direct = grassmannian_count(&fam.at_integer(q, *lambda)?, &e)?;
            if eval_poly(&poly.coeffs, q) != direct.into() {
                return outcome(false, format!("{label}, e = {e:?}: polynomial at {q} differs from {direct}"));
            }
            polys += 1;
        }
    }
    outcome(true, format!("{polys} counting polynomials over {} modules match direct counts at a fresh prime", fams.len()))
}

fn c14() -> Result<Outcome> {
    let p = 3;
    let mut parts = Vec::new();
    for fq in [kronecker(), atilde(2, 1)?] {
        let t = fq.torus(Mode::Specialized(p));
        let eps = fq.grading.clone().expect("graded");
        let basis = StandardBasis::new(&fq, -3, 3, &eps, &t)?;
        let mut reg = Registry::new(&fq.principal, p);
        let (elems, r) = generic_basis(&fq, &mut reg, -1, 1, &basis, &t)?;
        if !r.passed() {
            return outcome(false, r.to_string());
        }
        parts.push(format!("{} {} elements", fq.name, elems.len()));
    }
    outcome(true, format!("independent over Q(sqrt 3) with integral expansions: {}", parts.join(", ")))
}

fn line(k: usize, limit: Duration, elapsed: Duration, res: &Result<Outcome>) -> bool {
    let (pass, detail) = match res {
        Ok(o) => (o.pass && elapsed <= limit, o.detail.clone()),
        Err(e) => (false, format!("error: {e}")),
    };
    let timing = if elapsed > limit { " (over the time limit)" } else { "" };
    println!(
        "criterion {k:>2}: {} [{:.2}s / limit {}s{timing}] {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let before: [(usize, u64, Check); 7] = [(1, 1, c1), (2, 5, c2), (3, 300, c3), (4, 600, c4), (5, 60, c5), (6, 60, c6), (7, 120, c7)];
    let after: [(usize, u64, Check); 6] = [(9, 60, c9), (10, 30, c10), (11, 120, c11), (12, 10, c12), (13, 120, c13), (14, 300, c14)];
    let mut unexpected = Vec::new();
    let run = |list: &[(usize, u64, Check)], unexpected: &mut Vec<usize>| {
        for &(k, limit, f) in list {
            let start = Instant::now();
            let res = f();
            if !line(k, secs(limit), start.elapsed(), &res) {
                unexpected.push(k);
            }
        }
    };
    run(&before, &mut unexpected);
    let start = Instant::now();
    let (res, facts) = match c8() {
        Ok((o, facts)) => (Ok(o), facts),
        Err(e) => (Err(e), false),
    };
    // the printed form is expected to fail; the count identity and the form
    // with the frozen term must hold
    if line(8, secs(300), start.elapsed(), &res) || !facts {
        unexpected.push(8);
    }
    run(&after, &mut unexpected);
    if unexpected.is_empty() {
        println!("13 of 14 criteria pass; criterion 8 fails as printed, with the count identity and the frozen-term form holding");
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome on criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
