//! On-disk enumeration tables.
//!
//! ```text
//! #exceptional-table v1 n=6 max_degree=2
//! 6 0 0,0,0,0,0,-1
//! 6 1 1,1,0,0,0,0
//! 6 2 1,1,1,1,1,0
//! ```
//!
//! One record per sorted representative: point count, degree, and the
//! multiplicities in full. The header fixes `n` and the degree range the
//! records are complete for, so a table needed at a higher degree is loaded
//! and extended rather than rebuilt. Empty buckets have no records.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use exceptional_core::{ClassifyError, DivisorClass, EnumerationTable};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "#exceptional-table";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache {path} line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("cache {path} failed verification: {source}")]
    Verify {
        path: PathBuf,
        source: ClassifyError,
    },
}

pub fn render(table: &EnumerationTable) -> String {
    let mut out = format!(
        "{MAGIC} v{FORMAT_VERSION} n={} max_degree={}\n",
        table.n, table.max_degree
    );
    for c in table.shapes() {
        let mults: Vec<String> = c.mults.iter().map(i64::to_string).collect();
        out.push_str(&format!("{} {} {}\n", table.n, c.degree, mults.join(",")));
    }
    out
}

/// Writes through a sibling temporary file so a failed write never leaves a
/// truncated cache behind.
pub fn write(path: &Path, table: &EnumerationTable) -> Result<(), CacheError> {
    let io_err = |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    };
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io_err)?;
    f.write_all(render(table).as_bytes()).map_err(io_err)?;
    f.sync_all().map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// Header fields of a cache file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub version: u32,
    pub n: usize,
    pub max_degree: i64,
}

fn parse_header(line: &str) -> Option<Header> {
    let mut parts = line.split_whitespace();
    if parts.next()? != MAGIC {
        return None;
    }
    let version = parts.next()?.strip_prefix('v')?.parse().ok()?;
    let n = parts.next()?.strip_prefix("n=")?.parse().ok()?;
    let max_degree = parts.next()?.strip_prefix("max_degree=")?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(Header {
        version,
        n,
        max_degree,
    })
}

pub fn parse(path: &Path, text: &str) -> Result<EnumerationTable, CacheError> {
    let err = |line: usize, message: String| CacheError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .and_then(|(_, l)| parse_header(l))
        .ok_or_else(|| err(1, "missing or malformed header".into()))?;
    if header.version != FORMAT_VERSION {
        return Err(err(
            1,
            format!("unsupported format version {}", header.version),
        ));
    }
    let mut classes = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (n, degree, mults) = match fields.as_slice() {
            [n, d] => (*n, *d, ""),
            [n, d, m] => (*n, *d, *m),
            _ => return Err(err(line_no, "expected `n degree mults`".into())),
        };
        let n: usize = n
            .parse()
            .map_err(|_| err(line_no, format!("bad point count {n:?}")))?;
        if n != header.n {
            return Err(err(
                line_no,
                format!("record has n={n}, header has n={}", header.n),
            ));
        }
        let degree: i64 = degree
            .parse()
            .map_err(|_| err(line_no, format!("bad degree {degree:?}")))?;
        if !(0..=header.max_degree).contains(&degree) {
            return Err(err(
                line_no,
                format!("degree {degree} outside 0..={}", header.max_degree),
            ));
        }
        let mults: Vec<i64> = if mults.is_empty() {
            Vec::new()
        } else {
            mults
                .split(',')
                .map(|m| {
                    m.parse()
                        .map_err(|_| err(line_no, format!("bad multiplicity {m:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        if mults.len() != n {
            return Err(err(
                line_no,
                format!("{} multiplicities for n={n}", mults.len()),
            ));
        }
        classes.push(DivisorClass::new(degree, mults));
    }
    Ok(EnumerationTable::from_parts(
        header.n,
        header.max_degree,
        classes,
    ))
}

/// Reads a cache file. With `verify`, every record is re-certified by
/// descent before the table is returned.
pub fn load(path: &Path, verify: bool) -> Result<EnumerationTable, CacheError> {
    let text = fs::read_to_string(path).map_err(|source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let table = parse(path, &text)?;
    if verify {
        table.verify().map_err(|source| CacheError::Verify {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(table)
}

pub fn read_header(path: &Path) -> Option<Header> {
    let text = fs::read_to_string(path).ok()?;
    parse_header(text.lines().next()?)
}
