//! Persisted sequence tables.
//!
//! When `HHLAB_CACHE_DIR` is set, the Stirling and Bernoulli tables are
//! loaded from `sequences-v1.bin` at start-up and written back at exit.
//! Layout, little-endian:
//!
//! ```text
//! magic "HHLABSEQ" | u32 version
//! u32 rows, then per Stirling table: per row u32 len, then len bigints
//! u32 count, then count (numerator, denominator) bigint pairs
//! bigint = u32 byte length + two's-complement big-endian bytes
//! ```
//!
//! A missing, truncated or inconsistent file is ignored; the tables are
//! recomputed and the file rewritten.

use std::io::{self, Cursor, Read, Write};
use std::path::{Path, PathBuf};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use hhlab::sequences::CacheSnapshot;
use hhlab::{Rational, SeqCache};
use num_bigint::BigInt;

use crate::error::{CliError, CliResult};

pub const ENV_VAR: &str = "HHLAB_CACHE_DIR";
pub const FILE_NAME: &str = "sequences-v1.bin";
const MAGIC: &[u8; 8] = b"HHLABSEQ";
const VERSION: u32 = 1;

pub fn cache_path() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR)
        .filter(|v| !v.is_empty())
        .map(|d| Path::new(&d).join(FILE_NAME))
}

fn write_bigint(w: &mut impl Write, v: &BigInt) -> io::Result<()> {
    let bytes = v.to_signed_bytes_be();
    w.write_u32::<LittleEndian>(bytes.len() as u32)?;
    w.write_all(&bytes)
}

fn read_bigint(r: &mut impl Read) -> io::Result<BigInt> {
    let len = r.read_u32::<LittleEndian>()? as usize;
    let mut buf = vec![0; len];
    r.read_exact(&mut buf)?;
    Ok(BigInt::from_signed_bytes_be(&buf))
}

fn write_table(w: &mut impl Write, rows: &[Vec<BigInt>]) -> io::Result<()> {
    w.write_u32::<LittleEndian>(rows.len() as u32)?;
    for row in rows {
        w.write_u32::<LittleEndian>(row.len() as u32)?;
        for v in row {
            write_bigint(w, v)?;
        }
    }
    Ok(())
}

fn read_table(r: &mut impl Read) -> io::Result<Vec<Vec<BigInt>>> {
    let rows = r.read_u32::<LittleEndian>()?;
    (0..rows)
        .map(|_| {
            let len = r.read_u32::<LittleEndian>()?;
            (0..len).map(|_| read_bigint(r)).collect()
        })
        .collect()
}

pub fn encode(snap: &CacheSnapshot) -> Vec<u8> {
    let mut out = Vec::new();
    let mut go = || -> io::Result<()> {
        out.write_all(MAGIC)?;
        out.write_u32::<LittleEndian>(VERSION)?;
        write_table(&mut out, &snap.stirling1)?;
        write_table(&mut out, &snap.stirling2)?;
        out.write_u32::<LittleEndian>(snap.bernoulli.len() as u32)?;
        for b in &snap.bernoulli {
            write_bigint(&mut out, b.numer())?;
            write_bigint(&mut out, b.denom())?;
        }
        Ok(())
    };
    go().expect("writing to a Vec cannot fail");
    out
}

pub fn decode(bytes: &[u8]) -> Option<CacheSnapshot> {
    let mut r = Cursor::new(bytes);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).ok()?;
    if &magic != MAGIC || r.read_u32::<LittleEndian>().ok()? != VERSION {
        return None;
    }
    let stirling1 = read_table(&mut r).ok()?;
    let stirling2 = read_table(&mut r).ok()?;
    let count = r.read_u32::<LittleEndian>().ok()?;
    let mut bernoulli = Vec::new();
    for _ in 0..count {
        let n = read_bigint(&mut r).ok()?;
        let d = read_bigint(&mut r).ok()?;
        bernoulli.push(Rational::new(n, d).ok()?);
    }
    if r.position() as usize != bytes.len() {
        return None;
    }
    Some(CacheSnapshot {
        stirling1,
        stirling2,
        bernoulli,
    })
}

/// A cache seeded from `path` when it holds a valid snapshot, else empty.
pub fn load(path: Option<&Path>) -> SeqCache {
    path.and_then(|p| std::fs::read(p).ok())
        .and_then(|bytes| decode(&bytes))
        .and_then(|snap| SeqCache::from_snapshot(snap).ok())
        .unwrap_or_default()
}

pub fn save(path: &Path, seq: &SeqCache) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    }
    std::fs::write(path, encode(&seq.snapshot()))
        .map_err(|e| CliError::io(format!("writing {}", path.display()), e))
}
