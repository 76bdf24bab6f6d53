//! Operation-table persistence: a JSON form and a compact binary form
//! (`FRC1` magic, little-endian u32 header and row-major tables).

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{Elem, FiniteRing, RingError, RingTables};

const MAGIC: &[u8; 4] = b"FRC1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON cache: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported cache version {0}")]
    Version(u32),
    #[error("binary cache truncated: expected {expected} bytes after header, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("table rows are not rectangular")]
    RaggedTable,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("cached tables fail ring validation: {0}")]
    Invalid(String),
}

fn to_tables(ring: &FiniteRing) -> RingTables {
    let n = ring.order();
    let rows = |flat: &[Elem]| -> Vec<Vec<Elem>> {
        (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect()
    };
    RingTables {
        version: 1,
        label: ring.label().to_string(),
        order: n,
        zero: ring.zero(),
        one: ring.one(),
        add: rows(ring.add_table()),
        mul: rows(ring.mul_table()),
    }
}

fn assemble_flat(
    label: String,
    n: usize,
    zero: Elem,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
) -> Result<Arc<FiniteRing>, CacheError> {
    let render = (0..n).map(|i| format!("e{i}")).collect();
    let ring = FiniteRing::assemble(
        label,
        "as cached; element renders not preserved".to_string(),
        n,
        zero,
        one,
        add,
        mul,
        render,
    )?;
    let report = ring.validate_axioms();
    if !report.is_ok() {
        return Err(CacheError::Invalid(report.to_string()));
    }
    Ok(Arc::new(ring))
}

fn from_tables(tables: RingTables) -> Result<Arc<FiniteRing>, CacheError> {
    if tables.version != 1 {
        return Err(CacheError::Version(tables.version));
    }
    let n = tables.order;
    let flatten = |rows: Vec<Vec<Elem>>| -> Result<Vec<Elem>, CacheError> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(CacheError::RaggedTable);
        }
        Ok(rows.into_iter().flatten().collect())
    };
    let add = flatten(tables.add)?;
    let mul = flatten(tables.mul)?;
    assemble_flat(tables.label, n, tables.zero, tables.one, add, mul)
}

pub fn save_json(ring: &FiniteRing, path: &Path) -> Result<(), CacheError> {
    let tables = to_tables(ring);
    let mut file = fs::File::create(path)?;
    serde_json::to_writer(&mut file, &tables)?;
    file.flush()?;
    Ok(())
}

pub fn save_binary(ring: &FiniteRing, path: &Path) -> Result<(), CacheError> {
    let n = ring.order();
    let mut buf: Vec<u8> = Vec::with_capacity(16 + 8 * n * n);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(n as u32).to_le_bytes());
    buf.extend_from_slice(&ring.zero().to_le_bytes());
    buf.extend_from_slice(&ring.one().to_le_bytes());
    for table in [ring.add_table(), ring.mul_table()] {
        for &v in table {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    fs::write(path, buf)?;
    Ok(())
}

/// Loads either format, sniffing the binary magic.
pub fn load(path: &Path) -> Result<Arc<FiniteRing>, CacheError> {
    let bytes = fs::read(path)?;
    if bytes.len() >= 4 && &bytes[..4] == MAGIC {
        return load_binary_bytes(&bytes);
    }
    let tables: RingTables = serde_json::from_slice(&bytes)?;
    from_tables(tables)
}

fn load_binary_bytes(bytes: &[u8]) -> Result<Arc<FiniteRing>, CacheError> {
    let header = 4 + 4 * 3;
    if bytes.len() < header {
        return Err(CacheError::Truncated {
            expected: header,
            got: bytes.len(),
        });
    }
    let word = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let n = word(4) as usize;
    let zero = word(8);
    let one = word(12);
    let body = n * n * 4 * 2;
    if bytes.len() != header + body {
        return Err(CacheError::Truncated {
            expected: header + body,
            got: bytes.len(),
        });
    }
    let read_table = |offset: usize| -> Vec<Elem> {
        (0..n * n).map(|i| word(offset + 4 * i)).collect()
    };
    let add = read_table(header);
    let mul = read_table(header + n * n * 4);
    assemble_flat("cached".to_string(), n, zero, one, add, mul)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::zmod;

    #[test]
    fn json_roundtrip() {
        let dir = std::env::temp_dir().join("finring-cache-test");
        fs::create_dir_all(&dir).unwrap();
        let z6 = zmod(6).unwrap();
        let path = dir.join("z6.json");
        save_json(&z6, &path).unwrap();
        let back = load(&path).unwrap();
        assert!(back.same_tables(&z6));
    }

    #[test]
    fn binary_roundtrip_and_cross_format() {
        let dir = std::env::temp_dir().join("finring-cache-test");
        fs::create_dir_all(&dir).unwrap();
        let z6 = zmod(6).unwrap();
        let bin = dir.join("z6.frc");
        let json = dir.join("z6b.json");
        save_binary(&z6, &bin).unwrap();
        save_json(&z6, &json).unwrap();
        let a = load(&bin).unwrap();
        let b = load(&json).unwrap();
        assert!(a.same_tables(&z6));
        assert!(a.same_tables(&b));
    }

    #[test]
    fn corrupt_binary_is_rejected() {
        let dir = std::env::temp_dir().join("finring-cache-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.frc");
        fs::write(&path, b"FRC1\x02\x00\x00\x00").unwrap();
        assert!(matches!(load(&path), Err(CacheError::Truncated { .. })));
    }
}
