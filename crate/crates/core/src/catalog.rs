//! Text formats: code catalogs, counts TSV and per-level spill files.

use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::cascade::CascadeCode;
use crate::enumerate::{Class, CountsTable};
use crate::error::{Error, Result};

pub const CATALOG_HEADER: &str = "# tangle-catalog v1";
pub const COUNTS_HEADER: &str = "class\tn\tk\tcount";

pub fn write_catalog<W: Write>(mut w: W, codes: &[CascadeCode]) -> io::Result<()> {
    writeln!(w, "{CATALOG_HEADER}")?;
    for c in codes {
        writeln!(w, "{c}")?;
    }
    w.flush()
}

/// Reads a catalog written by [`write_catalog`]. Blank lines and further
/// `#` comments are skipped.
pub fn read_catalog<R: BufRead>(r: R) -> Result<Vec<CascadeCode>> {
    let mut lines = r.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == CATALOG_HEADER => {}
        Some(Ok(h)) => return Err(Error::Parse(format!("bad catalog header {h:?}"))),
        Some(Err(e)) => return Err(e.into()),
        None => return Err(Error::Parse("empty catalog".into())),
    }
    let mut out = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(t.parse()?);
    }
    Ok(out)
}

pub fn write_counts<W: Write>(mut w: W, tables: &[CountsTable]) -> io::Result<()> {
    writeln!(w, "{COUNTS_HEADER}")?;
    for t in tables {
        for (&(n, k), &count) in &t.entries {
            writeln!(w, "{}\t{n}\t{k}\t{count}", t.class)?;
        }
    }
    w.flush()
}

/// Reads counts TSV back into one table per class, in order of first
/// appearance.
pub fn read_counts<R: BufRead>(r: R) -> Result<Vec<CountsTable>> {
    let mut out: Vec<CountsTable> = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || (i == 0 && line.trim_end() == COUNTS_HEADER) {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 4 {
            return Err(Error::Parse(format!("line {}: expected 4 fields", i + 1)));
        }
        let class: Class = f[0].parse()?;
        let num = |s: &str| -> Result<u64> {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad number {s:?}", i + 1)))
        };
        let (n, k, count) = (num(f[1])? as usize, num(f[2])? as usize, num(f[3])?);
        let pos = match out.iter().position(|t| t.class == class) {
            Some(p) => p,
            None => {
                out.push(CountsTable::new(class));
                out.len() - 1
            }
        };
        out[pos].add(n, k, count);
    }
    Ok(out)
}

/// Writes `path` atomically: a partially written file is never visible
/// under its final name.
pub fn write_atomic<F>(path: &Path, fill: F) -> io::Result<()>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>,
{
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        fill(&mut w)?;
        w.flush()?;
        w.get_ref().sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn level_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("level-{n:02}.txt"))
}

/// Spills one complete level of codes.
pub fn write_level(dir: &Path, n: usize, codes: &[CascadeCode]) -> io::Result<()> {
    write_atomic(&level_path(dir, n), |w| write_catalog(w, codes))
}

pub fn read_level(dir: &Path, n: usize) -> Result<Vec<CascadeCode>> {
    let f = fs::File::open(level_path(dir, n))?;
    read_catalog(io::BufReader::new(f))
}

/// Highest `n` such that level files `1..=n` all exist.
pub fn last_complete_level(dir: &Path) -> Option<usize> {
    let mut n = 0;
    while level_path(dir, n + 1).is_file() {
        n += 1;
    }
    (n > 0).then_some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::Pattern::*;

    #[test]
    fn catalog_round_trip_keeps_order() {
        let codes = vec![
            CascadeCode::empty(),
            CascadeCode::from_pairs(&[(P, 0)]),
            CascadeCode::from_pairs(&[(X, 0)]),
        ];
        let mut buf = Vec::new();
        write_catalog(&mut buf, &codes).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "# tangle-catalog v1\n1;\n2;P 0\n2;X 0\n");
        assert_eq!(read_catalog(&buf[..]).unwrap(), codes);
    }

    #[test]
    fn catalog_needs_header() {
        assert!(read_catalog(&b"1;\n"[..]).is_err());
        assert!(read_catalog(&b""[..]).is_err());
    }

    #[test]
    fn counts_round_trip() {
        let mut t = CountsTable::new(Class::Reduced);
        t.add(1, 2, 1);
        t.add(3, 4, 2);
        let mut buf = Vec::new();
        write_counts(&mut buf, std::slice::from_ref(&t)).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "class\tn\tk\tcount\nreduced\t1\t2\t1\nreduced\t3\t4\t2\n"
        );
        assert_eq!(read_counts(&buf[..]).unwrap(), vec![t]);
    }
}
