//! Subcommand bodies; each returns the text to print.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use qcluster::catalog::Framed;
use qcluster::ccmap::{cc_map, cc_map_family, ClusterObject};
use qcluster::finrep::family::grassmannian_poly;
use qcluster::finrep::registry::Registry;
use qcluster::finrep::subspace::grassmannian_count;
use qcluster::finrep::tau::{tau, tau_inverse};
use qcluster::harness::grading::{generic_basis, StandardBasis};
use qcluster::harness::reflection::{extended_reflect, reflected_framing};
use qcluster::scalar::{poly_in_q, Mode};
use qcluster::seed::{mutate_sequence, QuantumSeed};
use qcluster::torus::ToricElement;
use qcluster::Error;

use crate::io::{print_quiver, print_rep, resolve_quiver, LoadedRep, RepFile};

/// A command failure and the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(Error::Budget { .. }) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "{s}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Input(s)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn mode_label(mode: Mode) -> String {
    match mode {
        Mode::Formal => "formal".into(),
        Mode::Specialized(p) => format!("p={p}"),
    }
}

#[derive(Serialize)]
struct JsonTerm {
    exponent: Vec<i64>,
    coeff: String,
}

pub fn toric_json(x: &ToricElement) -> String {
    let terms: Vec<JsonTerm> = x.terms().map(|(e, c)| JsonTerm { exponent: e.to_vec(), coeff: c.to_string() }).collect();
    serde_json::to_string(&terms).expect("serializable")
}

/// Shift multiplicities: one per ice vertex, or one per principal vertex
/// padded with zeros.
fn shift_vector(fq: &Framed, shifts: &[u32]) -> CliResult<Vec<u32>> {
    if shifts.is_empty() {
        return Ok(vec![0; fq.m()]);
    }
    if shifts.len() != fq.m() && shifts.len() != fq.n() {
        return Err(CliError::Input(format!("--shifts needs {} or {} entries", fq.n(), fq.m())));
    }
    let mut s = shifts.to_vec();
    s.resize(fq.m(), 0);
    Ok(s)
}

pub struct CcmapArgs<'a> {
    pub rep: &'a Path,
    pub quiver: Option<&'a str>,
    pub primes: &'a [u32],
    pub formal: bool,
    pub shifts: &'a [u32],
    pub lambda: Option<i64>,
    pub json: bool,
}

pub fn ccmap(a: &CcmapArgs) -> CliResult<String> {
    let loaded = LoadedRep::load(a.rep, a.quiver)?;
    let fq = &loaded.framed;
    let shifts = shift_vector(fq, a.shifts)?;
    let mut modes: Vec<Mode> = a.primes.iter().map(|&p| Mode::Specialized(p)).collect();
    if a.formal {
        modes.push(Mode::Formal);
    }
    if modes.is_empty() {
        modes.push(Mode::Specialized(loaded.file.prime));
    }
    if loaded.family.has_parameter() && a.lambda.is_none() {
        return Err(CliError::Input("the file uses L; pass --lambda".into()));
    }
    let lambda = a.lambda.unwrap_or(0);
    let mut out = String::new();
    for &mode in &modes {
        let torus = fq.torus(mode);
        let x = match mode {
            Mode::Specialized(p) => {
                let module = loaded.module(p, Some(lambda))?;
                cc_map(fq, &ClusterObject::new(module, shifts.clone()), &torus)?
            }
            Mode::Formal => cc_map_family(fq, &loaded.family, lambda, &shifts, &torus)?,
        };
        let body = if a.json { toric_json(&x) } else { x.canonical() };
        if modes.len() > 1 && !a.json {
            out.push_str(&format!("{}: {body}\n", mode_label(mode)));
        } else {
            out.push_str(&body);
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn grass(rep: &Path, e: &[usize], prime: Option<u32>, lambda: Option<i64>, poly: bool) -> CliResult<String> {
    let loaded = LoadedRep::load(rep, None)?;
    let p = prime.unwrap_or(loaded.file.prime);
    let module = loaded.module(p, lambda)?;
    if e.len() != module.dims().len() {
        return Err(CliError::Input(format!("--e needs {} entries", module.dims().len())));
    }
    let count = grassmannian_count(&module, e)?;
    let mut out = format!("{count}\n");
    if poly {
        let cp = grassmannian_poly(&loaded.family, e, lambda.unwrap_or(0))?;
        out.push_str(&format!(
            "{} (fitted at {:?}, checked at {})\n",
            poly_in_q(&cp.coeffs),
            cp.primes,
            cp.held_out
        ));
    }
    Ok(out)
}

/// `F^E_{MN}`: submodules of `E` isomorphic to `N` with quotient isomorphic to `M`.
pub fn hall(e: &Path, m: &Path, n: &Path, prime: Option<u32>, lambda: Option<i64>) -> CliResult<String> {
    let le = LoadedRep::load(e, None)?;
    let p = prime.unwrap_or(le.file.prime);
    let big = le.module(p, lambda)?;
    let load_on = |path: &Path| -> CliResult<_> {
        let l = LoadedRep::load(path, None)?;
        if *l.framed.principal != *le.framed.principal {
            return Err(CliError::Input(format!("{} lives on another quiver", path.display())));
        }
        Ok(l.module(p, lambda)?.with_quiver(big.quiver())?)
    };
    let (mm, nn) = (load_on(m)?, load_on(n)?);
    let mut reg = Registry::new(&le.framed.principal, p);
    Ok(format!("{}\n", reg.filtration_count(&big, &mm, &nn)?))
}

pub fn tau_cmd(rep: &Path, inverse: bool, prime: Option<u32>, lambda: Option<i64>) -> CliResult<String> {
    let loaded = LoadedRep::load(rep, None)?;
    let p = prime.unwrap_or(loaded.file.prime);
    let m = loaded.module(p, lambda)?;
    let t = if inverse { tau_inverse(&m)? } else { tau(&m)? };
    Ok(print_rep(&RepFile::from_rep(&t, &loaded.file.quiver)))
}

/// The reflected ice quiver, the reflected module over it, and the shifts.
pub fn reflect(rep: &Path, vertex: usize, prime: Option<u32>, lambda: Option<i64>, shifts: &[u32]) -> CliResult<String> {
    let loaded = LoadedRep::load(rep, None)?;
    let fq = &loaded.framed;
    let p = prime.unwrap_or(loaded.file.prime);
    if vertex == 0 || vertex > fq.n() {
        return Err(CliError::Input(format!("vertex must be in 1..{}", fq.n())));
    }
    let i = vertex - 1;
    let target = reflected_framing(fq, i)?;
    let obj = ClusterObject::new(loaded.module(p, lambda)?, shift_vector(fq, shifts)?);
    let image = extended_reflect(fq, &target, &obj, i)?;
    let name = format!("{}.quiver", target.name.replace('/', "_"));
    let shifts: Vec<String> = image.shifts.iter().map(|s| s.to_string()).collect();
    Ok(format!(
        "# quiver {name}\n{}# rep\n{}# shifts {}\n",
        print_quiver(&target.ice),
        print_rep(&RepFile::from_rep(&image.module, &name)),
        shifts.join(",")
    ))
}

pub fn mutate(quiver: &str, seq: &[usize], prime: Option<u32>, json: bool) -> CliResult<String> {
    let fq = resolve_quiver(quiver, None)?;
    let mode = prime.map_or(Mode::Formal, Mode::Specialized);
    let torus = fq.torus(mode);
    if let Some(&k) = seq.iter().find(|&&k| k == 0 || k > fq.n()) {
        return Err(CliError::Input(format!("mutation index {k} outside 1..{}", fq.n())));
    }
    let ks: Vec<usize> = seq.iter().map(|k| k - 1).collect();
    let seed = mutate_sequence(&QuantumSeed::initial(&fq, &torus), &ks)?;
    let mut out = String::new();
    if json {
        let vars: Vec<serde_json::Value> =
            seed.vars.iter().map(|v| serde_json::from_str(&toric_json(v)).expect("valid json")).collect();
        out.push_str(&serde_json::to_string(&vars).expect("serializable"));
        out.push('\n');
    } else {
        for (i, v) in seed.vars.iter().enumerate() {
            out.push_str(&format!("x{} = {}\n", i + 1, v.canonical()));
        }
        out.push_str(&format!("btilde = {}\n", seed.btilde));
    }
    Ok(out)
}

pub fn basis(quiver: &str, prime: u32, lo: i64, hi: i64, std_lo: i64, std_hi: i64, json: bool) -> CliResult<(String, bool)> {
    let fq = resolve_quiver(quiver, None)?;
    let eps = fq.grading.clone().ok_or_else(|| CliError::Input(format!("{} is not graded", fq.name)))?;
    let torus = fq.torus(Mode::Specialized(prime));
    let sb = StandardBasis::new(&fq, std_lo, std_hi, &eps, &torus)?;
    let mut reg = Registry::new(&fq.principal, prime);
    let (elems, report) = generic_basis(&fq, &mut reg, lo, hi, &sb, &torus)?;
    let mut out = String::new();
    if json {
        #[derive(Serialize)]
        struct Item {
            d: Vec<i64>,
            terms: serde_json::Value,
        }
        let items: Vec<Item> = elems
            .iter()
            .map(|(d, x)| Item { d: d.clone(), terms: serde_json::from_str(&toric_json(x)).expect("valid json") })
            .collect();
        out.push_str(&serde_json::to_string(&items).expect("serializable"));
        out.push('\n');
    } else {
        for (d, x) in &elems {
            out.push_str(&format!("{d:?}: {}\n", x.canonical()));
        }
        out.push_str(&format!("{report}\n"));
    }
    Ok((out, report.passed()))
}

/// The quiver file of a catalog entry or file, with its matrices as comments.
pub fn show(quiver: &str) -> CliResult<String> {
    let fq = resolve_quiver(quiver, None)?;
    let grading = fq.grading.as_ref().map_or_else(|| "none".to_string(), |g| format!("{g:?}"));
    Ok(format!(
        "# {}\n{}# btilde {}\n# lambda {:?}\n# grading {grading}\n",
        fq.name,
        print_quiver(&fq.ice),
        fq.ex.btilde,
        fq.pair.lambda.rows()
    ))
}
