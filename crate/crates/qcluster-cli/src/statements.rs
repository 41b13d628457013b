//! The `verify` dispatcher: statement ids, default inputs and a worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qcluster::catalog::{tube_a, tube_d, Framed, Kind, Tube, NAMES};
use qcluster::ccmap::ClusterObject;
use qcluster::finrep::registry::Registry;
use qcluster::harness::grading::{cluster_variable_expansions, generic_basis, standard_independence, support_cone_check, StandardBasis};
use qcluster::harness::hall::{green_sweep, hall_sweep, indecomposables};
use qcluster::harness::reflection::reflection_sweep;
use qcluster::harness::sequences::{exchange_sweep, onedim_sweep, verify_tube_recursion};
use qcluster::harness::tame::{check_conjecture, kronecker_expansions, verify_difference, verify_homogeneous_sum, verify_kronecker, verify_points};
use qcluster::harness::{Verdict, VerifyReport};
use qcluster::quiver::verify_bilinear_identities;
use qcluster::scalar::Mode;
use qcluster::seed::{explore, QuantumSeed};
use qcluster::Error;

use crate::io::resolve_quiver;

pub const STATEMENTS: [&str; 15] = [
    "hall",
    "green",
    "onedim",
    "exchange",
    "tube",
    "kronecker",
    "point-invariance",
    "cone",
    "standard-basis",
    "difference",
    "tube-conjecture",
    "homogeneous-sum",
    "basis",
    "reflection",
    "pairing",
];

/// Quivers and modes a statement runs on when none are given.
pub fn defaults(statement: &str) -> (Vec<&'static str>, Vec<Mode>) {
    let p3 = vec![Mode::Specialized(3)];
    match statement {
        "hall" | "green" | "exchange" | "reflection" => (vec!["a2", "a3", "kronecker"], p3),
        "onedim" => (vec!["a2", "a2p", "a3", "kronecker"], p3),
        "tube" => (vec!["atilde21", "atilde22"], p3),
        "kronecker" => {
            (vec!["kronecker"], vec![Mode::Specialized(3), Mode::Specialized(5), Mode::Specialized(7), Mode::Formal])
        }
        "point-invariance" | "homogeneous-sum" => (vec!["kronecker", "atilde21"], vec![Mode::Specialized(3), Mode::Specialized(5)]),
        "cone" => (vec!["a2", "a3g", "atilde21"], p3),
        "standard-basis" => (vec!["a2", "a3g", "kronecker"], p3),
        "difference" => (vec!["atilde12", "atilde22", "dtilde4"], p3),
        "tube-conjecture" => (vec!["atilde21", "atilde12", "atilde22"], p3),
        "basis" => (vec!["kronecker", "atilde21"], p3),
        "pairing" => (NAMES.to_vec(), vec![Mode::Formal]),
        _ => (Vec::new(), Vec::new()),
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub all_pairs: bool,
    pub seed: u64,
    pub samples: usize,
    /// Overrides the number of matrix tuples an orbit enumeration may visit.
    pub orbit_budget: Option<u128>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { all_pairs: false, seed: 0x5eed, samples: 500, orbit_budget: None }
    }
}

fn registry(fq: &Framed, p: u32, opts: &VerifyOptions) -> Registry {
    let mut reg = Registry::new(&fq.principal, p);
    if let Some(b) = opts.orbit_budget {
        reg.budget.tuples = b;
    }
    reg
}

#[derive(Debug)]
pub enum TaskError {
    Input(String),
    Engine(Error),
}

impl From<Error> for TaskError {
    fn from(e: Error) -> Self {
        TaskError::Engine(e)
    }
}

impl std::fmt::Display for TaskError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TaskError::Input(s) => write!(f, "{s}"),
            TaskError::Engine(e) => write!(f, "{e}"),
        }
    }
}

type TaskResult = Result<Vec<VerifyReport>, TaskError>;

/// The tubes of rank at least two carried by the catalog constructors.
pub fn tubes(fq: &Framed, p: u32) -> Result<Vec<Tube>, Error> {
    Ok(match fq.kind {
        Kind::Atilde(r, s) => {
            let mut out = Vec::new();
            if r >= 2 {
                out.push(tube_a(fq, p, false)?);
            }
            if s >= 2 {
                out.push(tube_a(fq, p, true)?);
            }
            out
        }
        Kind::Dtilde(_) => vec![tube_d(fq, p)?],
        _ => Vec::new(),
    })
}

type DimFilter = Box<dyn Fn(&[usize]) -> bool>;

/// Sweep bound: componentwise `(2,2)` on the Kronecker quiver, total
/// dimension elsewhere; one step smaller without `all_pairs`.
fn sweep_bound(fq: &Framed, all_pairs: bool) -> (Vec<usize>, DimFilter) {
    let n = fq.n();
    if fq.kind == Kind::Kronecker {
        let k = if all_pairs { 2 } else { 1 };
        (vec![k; n], Box::new(move |d: &[usize]| d.iter().all(|&x| x <= k)))
    } else {
        let k = if all_pairs { 4 } else { 3 };
        (vec![k; n], Box::new(move |d: &[usize]| d.iter().sum::<usize>() <= k))
    }
}

fn need_prime(mode: Mode, statement: &str) -> Result<u32, TaskError> {
    mode.prime().ok_or_else(|| TaskError::Input(format!("{statement} needs a prime, not formal mode")))
}

/// Runs one statement on one quiver in one mode.
pub fn run_one(statement: &str, quiver: &str, mode: Mode, opts: &VerifyOptions) -> TaskResult {
    let fq = resolve_quiver(quiver, None).map_err(TaskError::Input)?;
    let torus = fq.torus(mode);
    let mut out = Vec::new();
    match statement {
        "hall" | "green" | "onedim" => {
            let p = need_prime(mode, statement)?;
            let mut reg = registry(&fq, p, opts);
            let (max, ok) = sweep_bound(&fq, opts.all_pairs);
            out = match statement {
                "hall" => hall_sweep(&fq, &mut reg, &max, ok, &torus)?,
                "green" => green_sweep(&fq.name, &mut reg, &max, ok)?,
                _ => onedim_sweep(&fq, &mut reg, &max, ok, &torus)?,
            };
        }
        "exchange" => {
            let p = need_prime(mode, statement)?;
            let mut reg = registry(&fq, p, opts);
            let k = if opts.all_pairs { 2 } else { 1 };
            out = exchange_sweep(&fq, &mut reg, &vec![k; fq.n()], &torus)?;
        }
        "tube" => {
            let p = need_prime(mode, statement)?;
            for tube in tubes(&fq, p)? {
                for i in 1..=tube.rank() {
                    out.push(verify_tube_recursion(&fq, &tube, i, &torus)?);
                }
            }
        }
        "kronecker" => {
            out = kronecker_expansions(&fq, &torus)?;
            out.push(verify_kronecker(&fq, &torus)?);
        }
        "point-invariance" => out.push(verify_points(&fq, need_prime(mode, statement)?, &torus)?),
        "homogeneous-sum" => {
            let mut reg = registry(&fq, need_prime(mode, statement)?, opts);
            out.push(verify_homogeneous_sum(&fq, &mut reg, &torus)?);
        }
        "cone" => {
            let p = need_prime(mode, statement)?;
            let mut reg = registry(&fq, p, opts);
            let k = if opts.all_pairs { 2 } else { 1 };
            let mut objs = Vec::new();
            for id in indecomposables(&mut reg, &vec![k; fq.n()], |_| true)? {
                objs.push(ClusterObject::module(&fq, reg.rep(&id).clone()));
            }
            for i in 0..fq.n() {
                objs.push(ClusterObject::shifted_projective(&fq, p, i));
            }
            for obj in &objs {
                out.push(support_cone_check(&fq, obj, &torus)?);
            }
        }
        "standard-basis" => {
            need_prime(mode, statement)?;
            out.push(standard_independence(&fq, -2, 2, &torus)?);
            if fq.kind == Kind::Finite {
                let eps = fq.grading.clone().ok_or_else(|| TaskError::Input(format!("{} is not graded", fq.name)))?;
                let basis = StandardBasis::new(&fq, -2, 2, &eps, &torus)?;
                let g = explore(&QuantumSeed::initial(&fq, &torus), 4 * fq.n() + 4)?;
                out.extend(cluster_variable_expansions(&fq, &g.variables, &basis)?);
            }
        }
        "difference" => {
            let p = need_prime(mode, statement)?;
            for tube in tubes(&fq, p)? {
                out.push(verify_difference(&fq, &tube, p, &torus)?);
            }
        }
        "tube-conjecture" => {
            let p = need_prime(mode, statement)?;
            for tube in tubes(&fq, p)? {
                for t in 1..=tube.rank() {
                    out.push(check_conjecture(&fq, &tube, t, p, &torus)?);
                }
            }
        }
        "basis" => {
            let p = need_prime(mode, statement)?;
            let eps = fq.grading.clone().ok_or_else(|| TaskError::Input(format!("{} is not graded", fq.name)))?;
            let basis = StandardBasis::new(&fq, -3, 3, &eps, &torus)?;
            let mut reg = registry(&fq, p, opts);
            out.push(generic_basis(&fq, &mut reg, -1, 1, &basis, &torus)?.1);
        }
        "reflection" => {
            let p = need_prime(mode, statement)?;
            let mut reg = registry(&fq, p, opts);
            let k = if opts.all_pairs { 2 } else { 1 };
            out = reflection_sweep(&fq, &mut reg, &vec![k; fq.n()], &torus)?;
        }
        "pairing" => out.push(pairing(&fq, opts.seed, opts.samples)),
        _ => return Err(TaskError::Input(format!("unknown statement '{statement}'"))),
    }
    Ok(out)
}

/// The bilinear identities between the form and the exchange data on
/// random integer vectors.
pub fn pairing(fq: &Framed, seed: u64, samples: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = fq.n();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-3..=3)).collect() };
    let report = VerifyReport::new("pairing", &fq.name, None, format!("{samples} random vector quadruples, seed {seed}"));
    let mut failures = Vec::new();
    for _ in 0..samples {
        let (m, e, f, l) = (draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let r = verify_bilinear_identities(&fq.pair.lambda, &fq.ex, &m, &e, &f, &l);
        if !r.failures.is_empty() {
            failures.push(format!("m={m:?} e={e:?} f={f:?} l={l:?}: {}", r.failures.join(", ")));
        }
    }
    if failures.is_empty() {
        report
    } else {
        let count = failures.len();
        report.fail(format!("{count} failures, first {}", failures[0]))
    }
}

/// Runs `tasks` on up to `jobs` threads; results come back in task order.
pub fn run_pool<T: Sync, R: Send>(tasks: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, tasks.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let r = f(&tasks[i]);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("task ran")).collect()
}

#[derive(Serialize)]
pub struct JsonReport {
    pub statement: String,
    pub quiver: String,
    pub prime: Option<u32>,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: String,
    pub diff: Option<String>,
    pub notes: Vec<String>,
}

impl From<&VerifyReport> for JsonReport {
    fn from(r: &VerifyReport) -> Self {
        let verdict = match &r.verdict {
            Verdict::Pass => "pass".to_string(),
            Verdict::Fail => "fail".to_string(),
            Verdict::Skipped(why) => format!("skipped: {why}"),
            Verdict::Reported(agree) => format!("reported: sides {}", if *agree { "agree" } else { "differ" }),
        };
        Self {
            statement: r.statement.to_string(),
            quiver: r.quiver.clone(),
            prime: r.prime,
            inputs: r.inputs.clone(),
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
            verdict,
            diff: r.diff.clone(),
            notes: r.notes.clone(),
        }
    }
}

/// Exit status of a finished `verify` run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    Input = 2,
    Budget = 3,
}

pub struct VerifyRun {
    pub reports: Vec<VerifyReport>,
    pub errors: Vec<String>,
    pub outcome: Outcome,
}

/// Every (quiver, mode) pair for `statement`, in order, on `jobs` threads.
pub fn verify(statement: &str, quivers: &[String], modes: &[Mode], jobs: usize, opts: &VerifyOptions) -> VerifyRun {
    let tasks: Vec<(String, Mode)> =
        quivers.iter().flat_map(|q| modes.iter().map(move |&m| (q.clone(), m))).collect();
    let results = run_pool(&tasks, jobs, |(q, m)| run_one(statement, q, *m, opts));
    let mut run = VerifyRun { reports: Vec::new(), errors: Vec::new(), outcome: Outcome::Pass };
    let mut worst = Outcome::Pass;
    for ((q, m), r) in tasks.iter().zip(results) {
        match r {
            Ok(reps) => {
                if reps.iter().any(|r| r.failed()) && worst == Outcome::Pass {
                    worst = Outcome::Fail;
                }
                run.reports.extend(reps);
            }
            Err(e) => {
                let code = match &e {
                    TaskError::Engine(Error::Budget { .. }) => Outcome::Budget,
                    _ => Outcome::Input,
                };
                if code as i32 > worst as i32 {
                    worst = code;
                }
                let mode = m.prime().map_or_else(|| "formal".to_string(), |p| format!("p={p}"));
                run.errors.push(format!("{statement} [{q}, {mode}]: {e}"));
            }
        }
    }
    run.outcome = worst;
    run
}
