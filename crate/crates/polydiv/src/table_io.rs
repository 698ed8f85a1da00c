//! Root tables on disk.
//!
//! Binary layout (integers are unsigned LEB128 unless noted):
//!
//! ```text
//! "PDRT" version:u8
//! poly_len poly_utf8   bound   seed:u64 LE   degree   record_count
//! record_count × { Δp^k  p  k  root_count  root_count × Δroot }
//! ```
//!
//! Records are sorted by `p^k`; `Δp^k` and `Δroot` are differences from the
//! previous value (the first root of each record is stored as is).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use polydiv_core::rho::{PrimeRoots, RootTable};
use polydiv_core::IntPolynomial;
use sha2::{Digest, Sha256};

use crate::{parallel, Error, Result};

const MAGIC: &[u8; 4] = b"PDRT";
const VERSION: u8 = 1;

/// Environment variable naming the table cache directory.
pub const CACHE_ENV: &str = "POLYDIV_TABLE_DIR";

fn put(w: &mut impl Write, v: u64) -> Result<()> {
    leb128::write::unsigned(w, v)?;
    Ok(())
}

fn get(r: &mut impl Read) -> Result<u64> {
    leb128::read::unsigned(r).map_err(|e| match e {
        leb128::read::Error::IoError(e) => Error::Io(e),
        leb128::read::Error::Overflow => Error::Format("varint overflow".into()),
    })
}

pub fn write_table(w: &mut impl Write, poly: &IntPolynomial, table: &RootTable) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[VERSION])?;
    let text = poly.to_string();
    put(w, text.len() as u64)?;
    w.write_all(text.as_bytes())?;
    put(w, table.bound())?;
    w.write_all(&table.seed().to_le_bytes())?;
    put(w, table.degree() as u64)?;
    let records = table.records();
    put(w, records.len() as u64)?;
    let mut prev = 0;
    for (pk, p, k, roots) in records {
        put(w, pk - prev)?;
        prev = pk;
        put(w, p)?;
        put(w, k as u64)?;
        put(w, roots.len() as u64)?;
        let mut last = 0;
        for &r in roots {
            put(w, r - last)?;
            last = r;
        }
    }
    Ok(())
}

/// A table read back from disk together with the polynomial text it was
/// built for.
#[derive(Debug)]
pub struct StoredTable {
    pub poly: String,
    pub table: RootTable,
}

pub fn read_table(r: &mut impl Read) -> Result<StoredTable> {
    let mut head = [0u8; 5];
    r.read_exact(&mut head)?;
    if &head[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    if head[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", head[4])));
    }
    let len = get(r)? as usize;
    let mut text = vec![0u8; len];
    r.read_exact(&mut text)?;
    let poly = String::from_utf8(text).map_err(|_| Error::Format("polynomial is not UTF-8".into()))?;
    let bound = get(r)?;
    let mut seed = [0u8; 8];
    r.read_exact(&mut seed)?;
    let seed = u64::from_le_bytes(seed);
    let degree = get(r)? as usize;
    let count = get(r)?;
    let mut by_prime: BTreeMap<u64, Vec<(u32, Vec<u64>)>> = BTreeMap::new();
    let mut pk = 0u64;
    for _ in 0..count {
        pk = pk
            .checked_add(get(r)?)
            .ok_or_else(|| Error::Format("prime power overflow".into()))?;
        let p = get(r)?;
        let k = get(r)? as u32;
        let n = get(r)? as usize;
        let mut roots = Vec::with_capacity(n);
        let mut last = 0u64;
        for _ in 0..n {
            last += get(r)?;
            roots.push(last);
        }
        if p < 2 || k == 0 || p.checked_pow(k) != Some(pk) || pk > bound {
            return Err(Error::Format(format!("inconsistent record p^k = {pk}")));
        }
        by_prime.entry(p).or_default().push((k, roots));
    }
    let mut primes = Vec::with_capacity(by_prime.len());
    for (p, mut levels) in by_prime {
        levels.sort_by_key(|l| l.0);
        if levels.iter().enumerate().any(|(i, l)| l.0 as usize != i + 1) {
            return Err(Error::Format(format!("missing powers of {p}")));
        }
        primes.push(PrimeRoots {
            p,
            powers: levels.into_iter().map(|l| l.1).collect(),
        });
    }
    Ok(StoredTable {
        poly,
        table: RootTable::from_parts(degree, bound, seed, primes),
    })
}

pub fn save(path: &Path, poly: &IntPolynomial, table: &RootTable) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_table(&mut w, poly, table)?;
    w.flush()?;
    Ok(())
}

/// Loads a table and checks that it was built for `poly` and reaches
/// `bound`.
pub fn load_for(path: &Path, poly: &IntPolynomial, bound: u64) -> Result<RootTable> {
    let stored = read_table(&mut BufReader::new(File::open(path)?))?;
    let text = poly.to_string();
    if stored.poly != text {
        return Err(Error::Format(format!(
            "{} holds a table for {}, not {text}",
            path.display(),
            stored.poly
        )));
    }
    if stored.table.bound() < bound {
        return Err(Error::Format(format!(
            "{} reaches {}, need {bound}",
            path.display(),
            stored.table.bound()
        )));
    }
    Ok(stored.table)
}

/// CSV dump with one row per root: `p,k,root`.
pub fn write_csv(w: impl Write, table: &RootTable) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["p", "k", "root"])?;
    for (_, p, k, roots) in table.records() {
        for r in roots {
            out.write_record([p.to_string(), k.to_string(), r.to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `<dir>/<sha256(poly)[..16]>-<bound>-<seed>.pdrt`
pub fn cache_path(dir: &Path, poly: &IntPolynomial, bound: u64, seed: u64) -> PathBuf {
    let digest = Sha256::digest(poly.to_string().as_bytes());
    let key: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{key}-{bound}-{seed}.pdrt"))
}

/// Where a table comes from: an explicit file, the cache directory, or a
/// fresh build.
pub fn obtain(
    poly: &IntPolynomial,
    bound: u64,
    seed: u64,
    explicit: Option<&Path>,
    pool: &rayon::ThreadPool,
) -> Result<RootTable> {
    if let Some(path) = explicit {
        return load_for(path, poly, bound);
    }
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return parallel::build_table(poly, bound, seed, pool);
    };
    let path = cache_path(&dir, poly, bound, seed);
    if path.exists() {
        match load_for(&path, poly, bound) {
            Ok(t) => return Ok(t),
            Err(e) => log::warn!("ignoring cached table {}: {e}", path.display()),
        }
    }
    let table = parallel::build_table(poly, bound, seed, pool)?;
    std::fs::create_dir_all(&dir)?;
    // write then rename, so a concurrent reader never sees half a file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    save(&tmp, poly, &table)?;
    std::fs::rename(&tmp, &path)?;
    Ok(table)
}
