//! Text formats for ice quivers and representations.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qcluster::catalog::{by_name, Framed, Kind, NAMES};
use qcluster::finrep::family::{Entry, EntryMat, RepFamily};
use qcluster::finrep::quiver::Quiver;
use qcluster::finrep::rep::QuiverRep;
use qcluster::quiver::IceQuiver;

/// A parse or validation failure, with the 1-based line it refers to
/// (0 when it concerns the whole file).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// Non-empty lines with comments removed, paired with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::at(line, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| ParseError::at(line, format!("bad {what} '{tok}'")))
}

fn one_based(v: usize, bound: usize, line: usize) -> Result<usize, ParseError> {
    if v == 0 || v > bound {
        return Err(ParseError::at(line, format!("vertex {v} out of range 1..{bound}")));
    }
    Ok(v - 1)
}

/// `vertices m n` followed by `arrow s t` lines, vertices 1-based.
pub fn parse_quiver(text: &str) -> Result<IceQuiver, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::at(0, "empty quiver file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("vertices") {
        return Err(ParseError::at(hl, "expected 'vertices m n'"));
    }
    let m = parse_index(toks.next(), hl, "vertex count")?;
    let n = parse_index(toks.next(), hl, "mutable count")?;
    if toks.next().is_some() {
        return Err(ParseError::at(hl, "trailing tokens"));
    }
    let mut arrows = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("arrow") {
            return Err(ParseError::at(ln, format!("expected 'arrow s t', found '{l}'")));
        }
        let s = one_based(parse_index(toks.next(), ln, "source")?, m, ln)?;
        let t = one_based(parse_index(toks.next(), ln, "target")?, m, ln)?;
        if toks.next().is_some() {
            return Err(ParseError::at(ln, "trailing tokens"));
        }
        arrows.push((s, t));
    }
    IceQuiver::new(m, n, arrows).map_err(|e| ParseError::at(hl, e.to_string()))
}

pub fn print_quiver(ice: &IceQuiver) -> String {
    let mut out = format!("vertices {} {}\n", ice.m(), ice.n());
    for &(s, t) in ice.arrows() {
        out.push_str(&format!("arrow {} {}\n", s + 1, t + 1));
    }
    out
}

/// One `mat s t` block: the map from the space at `s` to the space at `t`
/// along a module arrow, as `dim t` rows of `dim s` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatBlock {
    pub source: usize,
    pub target: usize,
    pub rows: Vec<Vec<Entry>>,
}

/// A parsed representation file. Entries are integers, optionally affine in
/// the symbol `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFile {
    pub prime: u32,
    pub quiver: String,
    pub dims: Option<Vec<usize>>,
    pub mats: Vec<MatBlock>,
}

pub fn parse_entry(tok: &str) -> Option<Entry> {
    let Some(body) = tok.strip_suffix('L') else {
        return tok.parse().ok().map(Entry::int);
    };
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    let (c, k) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let constant = if c.is_empty() { 0 } else { c.parse().ok()? };
    let lambda = match k {
        "" | "+" => 1,
        "-" => -1,
        _ => k.parse().ok()?,
    };
    Some(Entry { constant, lambda })
}

pub fn print_entry(e: &Entry) -> String {
    if e.lambda == 0 {
        return e.constant.to_string();
    }
    let coef = match e.lambda {
        1 => "L".to_string(),
        -1 => "-L".to_string(),
        k => format!("{k}L"),
    };
    match (e.constant, coef.starts_with('-')) {
        (0, _) => coef,
        (c, true) => format!("{c}{coef}"),
        (c, false) => format!("{c}+{coef}"),
    }
}

pub fn parse_rep(text: &str) -> Result<RepFile, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (hl, header) = lines.next().ok_or_else(|| ParseError::at(0, "empty representation file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("rep") {
        return Err(ParseError::at(hl, "expected 'rep p=<prime> quiver=<file>'"));
    }
    let (mut prime, mut quiver) = (None, None);
    for tok in toks {
        match tok.split_once('=') {
            Some(("p", v)) => prime = Some(v.parse::<u32>().map_err(|_| ParseError::at(hl, format!("bad prime '{v}'")))?),
            Some(("quiver", v)) => quiver = Some(v.to_string()),
            _ => return Err(ParseError::at(hl, format!("unknown header field '{tok}'"))),
        }
    }
    let prime = prime.ok_or_else(|| ParseError::at(hl, "missing p="))?;
    if !qcluster::finrep::family::is_prime(prime) {
        return Err(ParseError::at(hl, format!("{prime} is not prime")));
    }
    let quiver = quiver.ok_or_else(|| ParseError::at(hl, "missing quiver="))?;
    let mut dims = None;
    let mut mats: Vec<MatBlock> = Vec::new();
    while let Some((ln, l)) = lines.next() {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("dims") => {
                if dims.is_some() || !mats.is_empty() {
                    return Err(ParseError::at(ln, "'dims' must come once, before any matrix"));
                }
                let d: Result<Vec<usize>, _> = toks.map(|t| t.parse::<usize>()).collect();
                dims = Some(d.map_err(|_| ParseError::at(ln, "bad dimension"))?);
            }
            Some("mat") => {
                let s = parse_index(toks.next(), ln, "source")?;
                let t = parse_index(toks.next(), ln, "target")?;
                if s == 0 || t == 0 {
                    return Err(ParseError::at(ln, "vertices are 1-based"));
                }
                let mut rows = Vec::new();
                while let Some(&(rl, r)) = lines.peek() {
                    if r.starts_with("mat") || r.starts_with("dims") {
                        break;
                    }
                    let row: Option<Vec<Entry>> = r.split_whitespace().map(parse_entry).collect();
                    rows.push(row.ok_or_else(|| ParseError::at(rl, format!("bad matrix row '{r}'")))?);
                    lines.next();
                }
                if let Some(w) = rows.first().map(|r| r.len()) {
                    if let Some(i) = rows.iter().position(|r| r.len() != w) {
                        return Err(ParseError::at(ln, format!("row {} has a different length", i + 1)));
                    }
                }
                mats.push(MatBlock { source: s - 1, target: t - 1, rows });
            }
            _ => return Err(ParseError::at(ln, format!("expected 'dims' or 'mat', found '{l}'"))),
        }
    }
    Ok(RepFile { prime, quiver, dims, mats })
}

pub fn print_rep(file: &RepFile) -> String {
    let mut out = format!("rep p={} quiver={}\n", file.prime, file.quiver);
    if let Some(d) = &file.dims {
        let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("dims {}\n", parts.join(" ")));
    }
    for b in &file.mats {
        out.push_str(&format!("mat {} {}\n", b.source + 1, b.target + 1));
        for r in &b.rows {
            let parts: Vec<String> = r.iter().map(print_entry).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
    }
    out
}

impl RepFile {
    /// The integer template over `quiver`, arrows matched to `mat` blocks in
    /// the order they are listed.
    pub fn family(&self, quiver: &Arc<Quiver>) -> Result<RepFamily, ParseError> {
        let nv = quiver.vertices();
        let dims = match &self.dims {
            Some(d) if d.len() != nv => {
                return Err(ParseError::at(0, format!("{} dimensions for {nv} vertices", d.len())));
            }
            Some(d) => d.clone(),
            None => {
                let mut d = vec![0; nv];
                for b in &self.mats {
                    if b.source >= nv || b.target >= nv {
                        return Err(ParseError::at(0, format!("mat {} {} is out of range", b.source + 1, b.target + 1)));
                    }
                    d[b.target] = b.rows.len();
                    d[b.source] = b.rows.first().map_or(0, |r| r.len());
                }
                d
            }
        };
        let mut used = vec![false; self.mats.len()];
        let mut mats = Vec::new();
        for &(s, t) in quiver.arrows() {
            let found = (0..self.mats.len()).find(|&k| !used[k] && self.mats[k].source == s && self.mats[k].target == t);
            let m = match found {
                Some(k) => {
                    used[k] = true;
                    let b = &self.mats[k];
                    let (r, c) = (b.rows.len(), b.rows.first().map_or(0, |r| r.len()));
                    let empty = dims[t] * dims[s] == 0 && r == 0;
                    if (r, c) != (dims[t], dims[s]) && !empty {
                        return Err(ParseError::at(
                            0,
                            format!("mat {} {} is {r}x{c}, expected {}x{}", s + 1, t + 1, dims[t], dims[s]),
                        ));
                    }
                    let data = b.rows.iter().flatten().copied().collect();
                    EntryMat { rows: dims[t], cols: dims[s], data }
                }
                None if dims[t] == 0 || dims[s] == 0 => EntryMat::from_ints(dims[t], dims[s], &[]),
                None => return Err(ParseError::at(0, format!("no matrix for the arrow {} -> {}", s + 1, t + 1))),
            };
            mats.push(m);
        }
        if let Some(k) = used.iter().position(|u| !u) {
            let b = &self.mats[k];
            return Err(ParseError::at(0, format!("mat {} {} matches no arrow of the module quiver", b.source + 1, b.target + 1)));
        }
        RepFamily::new(quiver.clone(), dims, mats).map_err(|e| ParseError::at(0, e.to_string()))
    }

    /// The file describing a concrete module.
    pub fn from_rep(rep: &QuiverRep, quiver: &str) -> Self {
        let mats = rep
            .mats()
            .iter()
            .map(|m| {
                let data = m.data().iter().map(|&v| Entry::int(v as i64)).collect();
                EntryMat { rows: m.rows(), cols: m.cols(), data }
            })
            .collect::<Vec<_>>();
        Self::from_parts(rep.quiver(), rep.dims(), &mats, rep.p(), quiver)
    }

    pub fn from_family(fam: &RepFamily, prime: u32, quiver: &str) -> Self {
        Self::from_parts(&fam.quiver, &fam.dims, &fam.mats, prime, quiver)
    }

    fn from_parts(q: &Quiver, dims: &[usize], mats: &[EntryMat], prime: u32, quiver: &str) -> Self {
        let mut blocks = Vec::new();
        for (m, &(s, t)) in mats.iter().zip(q.arrows()) {
            if dims[s] == 0 || dims[t] == 0 {
                continue;
            }
            let rows = m.data.chunks(m.cols).map(|r| r.to_vec()).collect();
            blocks.push(MatBlock { source: s, target: t, rows });
        }
        Self { prime, quiver: quiver.to_string(), dims: Some(dims.to_vec()), mats: blocks }
    }
}

/// A framed quiver named by catalog entry or file. A file whose quiver is
/// a catalog quiver picks up the catalog entry, including its type.
pub fn resolve_quiver(spec: &str, base: Option<&Path>) -> Result<Framed, String> {
    if NAMES.contains(&spec) {
        return by_name(spec).map_err(|e| e.to_string());
    }
    let path = locate(spec, base);
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let ice = parse_quiver(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    for name in NAMES {
        let fq = by_name(name).map_err(|e| e.to_string())?;
        if fq.ice == ice {
            return Ok(fq);
        }
    }
    let stem = path.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
    Framed::from_ice(&stem, Kind::Other, ice).map_err(|e| format!("{}: {e}", path.display()))
}

/// `spec` as given, or relative to `base` when that is where it exists.
pub fn locate(spec: &str, base: Option<&Path>) -> PathBuf {
    let direct = PathBuf::from(spec);
    if direct.is_absolute() || direct.exists() {
        return direct;
    }
    match base {
        Some(b) => b.join(spec),
        None => direct,
    }
}

/// A representation file together with the framed quiver it lives on.
pub struct LoadedRep {
    pub file: RepFile,
    pub framed: Framed,
    pub family: RepFamily,
}

impl LoadedRep {
    pub fn load(path: &Path, quiver_override: Option<&str>) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let file = parse_rep(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let spec = quiver_override.unwrap_or(&file.quiver);
        let framed = resolve_quiver(spec, path.parent())?;
        let family = file.family(&framed.principal).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(Self { file, framed, family })
    }

    /// The module over `F_p`, reading `L` as `lambda`.
    pub fn module(&self, p: u32, lambda: Option<i64>) -> Result<QuiverRep, String> {
        if self.family.has_parameter() && lambda.is_none() {
            return Err("the file uses L; pass --lambda".into());
        }
        self.family.at_integer(p, lambda.unwrap_or(0)).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries() {
        for (s, c, l) in [("3", 3, 0), ("-2", -2, 0), ("L", 0, 1), ("-L", 0, -1), ("2L", 0, 2), ("1+L", 1, 1), ("-1-2L", -1, -2)] {
            let e = parse_entry(s).unwrap();
            assert_eq!((e.constant, e.lambda), (c, l), "{s}");
            assert_eq!(print_entry(&e), s);
        }
        assert!(parse_entry("x").is_none());
    }

    #[test]
    fn malformed_arrow_reports_line() {
        let err = parse_quiver("vertices 2 2\n# c\narrow 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_quiver("vertices 2 2\narrow 1 5\n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
