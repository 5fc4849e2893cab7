//! Subcommand implementations. Each returns normally on success and a
//! [`CliError`] carrying the exit status otherwise.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use tangle_core::catalog::{self, last_complete_level, read_level, write_atomic, write_level};
use tangle_core::enumerate::{enumerate_from, weak_filter};
use tangle_core::flype::{orbit_line, orbits_with};
use tangle_core::tables::{self, Mismatch};
use tangle_core::{canonical_code, invariant_root_code, CascadeCode, Class, CountsTable, Error};

use crate::render::{render, Style};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0} cell(s) differ from the published tables")]
    Mismatch(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) | CliError::Failed(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => CliError::Io(e),
            Error::Defect(m) => CliError::Failed(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Settings of an enumeration run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_n: usize,
    pub classes: Vec<Class>,
    pub legs: Option<usize>,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub resume: bool,
}

impl RunConfig {
    pub fn new(max_n: usize, classes: Vec<Class>) -> Self {
        RunConfig {
            max_n,
            classes,
            legs: None,
            out: None,
            workers: 1,
            resume: false,
        }
    }

    fn check(&self) -> CliResult<()> {
        if self.max_n == 0 {
            return Err(CliError::Invalid("--max-n must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Invalid("--workers must be at least 1".into()));
        }
        if self.resume && self.out.is_none() {
            return Err(CliError::Invalid("--resume needs --out".into()));
        }
        if self.classes.is_empty() {
            return Err(CliError::Invalid("no class selected".into()));
        }
        Ok(())
    }
}

/// What an enumeration run produced.
pub struct RunOutput {
    pub tables: Vec<CountsTable>,
    /// Per class, the codes it kept (orbit representatives for `alt`).
    pub catalogs: Vec<Vec<CascadeCode>>,
    pub orbits: Vec<Vec<CascadeCode>>,
}

struct Collector<'a> {
    cfg: &'a RunConfig,
    keep_codes: bool,
    out: RunOutput,
}

impl Collector<'_> {
    fn level(&mut self, n: usize, codes: &[CascadeCode], log: &mut dyn Write) -> CliResult<()> {
        let legs_ok = |k: usize| self.cfg.legs.map_or(true, |want| want == k);
        let mut info = Vec::with_capacity(codes.len());
        for c in codes {
            let m = c.expand()?;
            info.push((m.k(), m.is_reduced(), weak_filter(&m)));
        }
        for (ci, &class) in self.cfg.classes.iter().enumerate() {
            let table = &mut self.out.tables[ci];
            table.entries.entry((n, 2)).or_insert(0);
            if class == Class::Alternating {
                let orbits = orbits_with(codes, self.cfg.workers)?;
                for o in orbits {
                    let k = o[0].expand()?.k();
                    if !legs_ok(k) {
                        continue;
                    }
                    table.add(n, k, 1);
                    if self.keep_codes {
                        self.out.catalogs[ci].push(o[0].clone());
                        self.out.orbits.push(o);
                    }
                }
                continue;
            }
            for (c, &(k, reduced, weak)) in codes.iter().zip(&info) {
                let keep = legs_ok(k)
                    && match class {
                        Class::Projections => true,
                        Class::Reduced => reduced,
                        Class::WeakFilter => weak,
                        Class::Alternating => unreachable!(),
                    };
                if keep {
                    table.add(n, k, 1);
                    if self.keep_codes {
                        self.out.catalogs[ci].push(c.clone());
                    }
                }
            }
        }
        writeln!(log, "n={n}: {} projections", codes.len())?;
        Ok(())
    }
}

/// Generates levels `1..=max_n`, tallying every requested class, and writes
/// level spill files, catalogs and counts under `cfg.out` when set.
pub fn run_enumerate(cfg: &RunConfig, log: &mut dyn Write) -> CliResult<RunOutput> {
    cfg.check()?;
    let levels_dir = cfg.out.as_ref().map(|o| o.join("levels"));
    if let Some(d) = &levels_dir {
        fs::create_dir_all(d)?;
    }
    let mut col = Collector {
        cfg,
        keep_codes: cfg.out.is_some(),
        out: RunOutput {
            tables: cfg.classes.iter().map(|&c| CountsTable::new(c)).collect(),
            catalogs: vec![Vec::new(); cfg.classes.len()],
            orbits: Vec::new(),
        },
    };
    let done = match (&levels_dir, cfg.resume) {
        (Some(d), true) => last_complete_level(d).unwrap_or(0),
        _ => 0,
    };
    let mut seed = vec![CascadeCode::empty()];
    if done > 0 {
        writeln!(log, "resuming after level {done}")?;
        let d = levels_dir.as_deref().expect("resume has an output directory");
        for n in 1..=done.min(cfg.max_n) {
            let codes = read_level(d, n)?;
            col.level(n, &codes, log)?;
            seed = codes;
        }
    }
    if done < cfg.max_n {
        let mut failure: Option<CliError> = None;
        let mut visit = |n: usize, codes: &[CascadeCode]| -> tangle_core::Result<()> {
            if n <= done {
                return Ok(());
            }
            if let Some(d) = &levels_dir {
                write_level(d, n, codes)?;
            }
            if let Err(e) = col.level(n, codes, log) {
                failure = Some(e);
                return Err(Error::Defect("aborted".into()));
            }
            Ok(())
        };
        let res = enumerate_from(seed, cfg.max_n, cfg.workers, &mut visit);
        if let Some(e) = failure {
            return Err(e);
        }
        res?;
    }
    if let Some(out) = &cfg.out {
        write_outputs(out, cfg, &col.out)?;
    }
    Ok(col.out)
}

fn write_outputs(dir: &Path, cfg: &RunConfig, out: &RunOutput) -> io::Result<()> {
    write_atomic(&dir.join("counts.tsv"), |w| catalog::write_counts(w, &out.tables))?;
    for (class, codes) in cfg.classes.iter().zip(&out.catalogs) {
        write_atomic(&dir.join(format!("catalog-{class}.txt")), |w| {
            catalog::write_catalog(w, codes)
        })?;
    }
    if cfg.classes.contains(&Class::Alternating) {
        write_atomic(&dir.join("orbits.txt"), |w| {
            for o in &out.orbits {
                writeln!(w, "{}", orbit_line(o))?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

/// Totals line for one class: the per-`n` totals, space-separated.
pub fn totals_line(t: &CountsTable) -> String {
    let totals: Vec<String> = t.totals().iter().map(u64::to_string).collect();
    format!("{} {}", t.class, totals.join(" "))
}

/// Compares counts with the published tables. Counts come from `counts`
/// (a TSV written by `enumerate`) or are computed on the fly.
pub fn run_verify(
    max_n: usize,
    classes: &[Class],
    counts: Option<&Path>,
    workers: usize,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> CliResult<Vec<Mismatch>> {
    if let Some(c) = classes.iter().find(|c| **c == Class::WeakFilter) {
        return Err(CliError::Invalid(format!("no published table for class {c}")));
    }
    if max_n > tables::MAX_N {
        writeln!(log, "published tables stop at n={}; later cells are not compared", tables::MAX_N)?;
    }
    let found: Vec<CountsTable> = match counts {
        Some(path) => {
            let f = fs::File::open(path)?;
            let all = catalog::read_counts(BufReader::new(f))?;
            classes
                .iter()
                .map(|&c| {
                    all.iter()
                        .find(|t| t.class == c)
                        .cloned()
                        .ok_or_else(|| CliError::Invalid(format!("{} has no {c} counts", path.display())))
                })
                .collect::<CliResult<_>>()?
        }
        None => {
            let mut cfg = RunConfig::new(max_n, classes.to_vec());
            cfg.workers = workers;
            run_enumerate(&cfg, log)?.tables
        }
    };
    let mut all = Vec::new();
    for t in &found {
        let diff = tables::verify(t, max_n);
        let cells: usize = (1..=max_n.min(tables::MAX_N)).sum();
        for m in &diff {
            writeln!(out, "MISMATCH\t{m}")?;
        }
        if diff.is_empty() {
            writeln!(out, "{}: all {cells} cells match for n <= {}", t.class, max_n.min(tables::MAX_N))?;
        } else {
            writeln!(out, "{}: {} of {cells} cells differ", t.class, diff.len())?;
        }
        all.extend(diff);
    }
    Ok(all)
}

pub fn parse_code(s: &str) -> CliResult<CascadeCode> {
    let c: CascadeCode = s.parse()?;
    c.validate()?;
    Ok(c)
}

pub fn cmd_canonicalize(code: &str) -> CliResult<String> {
    let c = parse_code(code)?;
    Ok(canonical_code(&c.expand()?)?.to_string())
}

pub fn cmd_rootcode(code: &str) -> CliResult<String> {
    let m = parse_code(code)?.expand()?;
    if !m.is_connected() {
        return Err(Error::Disconnected.into());
    }
    if m.crossing_count() > 1 && m.is_composite() {
        return Err(Error::Composite.into());
    }
    Ok(invariant_root_code(&m)?.0.to_string())
}

pub fn cmd_expand(code: &str) -> CliResult<String> {
    let c = parse_code(code)?;
    let widths: Vec<String> = c.width_profile()?.iter().map(usize::to_string).collect();
    Ok(format!("widths {}\n{}", widths.join(" "), c.expand()?))
}

/// The flype class, one canonical code per line, least first.
pub fn cmd_flype_class(code: &str) -> CliResult<String> {
    let c = parse_code(code)?;
    let class = tangle_core::flype_class(&c)?;
    Ok(class.iter().map(|c| format!("{c}\n")).collect())
}

pub fn cmd_render(code: &str, style: Style) -> CliResult<String> {
    Ok(render(&parse_code(code)?, style)?)
}
