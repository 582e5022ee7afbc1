use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraicNumber, IntPolynomial};
use crate::error::{Error, Result};
use crate::measures::FieldMeasure;

const MAGIC: &[u8; 4] = b"BCL1";

/// `{cache}/garsia/{sha256}/level.bin` for a defining polynomial and level.
pub fn cache_path(root: &Path, defining: &IntPolynomial, n: usize) -> PathBuf {
    let mut h = Sha256::new();
    h.update(format!("{}:{n}", defining.to_text()).as_bytes());
    root.join("garsia").join(hex::encode(h.finalize())).join("level.bin")
}

fn put_int(out: &mut Vec<u8>, v: &BigInt) {
    let bytes = v.to_signed_bytes_le();
    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(&bytes);
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl Reader<'_> {
    fn int(&mut self) -> Result<BigInt> {
        let bad = || Error::MalformedCache("truncated integer".into());
        if self.buf.len() < 4 {
            return Err(bad());
        }
        let len = u32::from_le_bytes(self.buf[..4].try_into().unwrap()) as usize;
        let rest = &self.buf[4..];
        if rest.len() < len {
            return Err(bad());
        }
        self.buf = &rest[len..];
        Ok(BigInt::from_signed_bytes_le(&rest[..len]))
    }

    fn small(&mut self) -> Result<usize> {
        self.int()?
            .to_usize()
            .ok_or_else(|| Error::MalformedCache("count out of range".into()))
    }
}

/// Serializes a level: header, defining polynomial, `n`, atom count, then
/// per atom the reduced vector and the weight as numerator and denominator.
pub fn encode_level(m: &FieldMeasure) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    let coeffs = m.defining().coeffs();
    put_int(&mut out, &BigInt::from(coeffs.len()));
    for c in coeffs {
        put_int(&mut out, c);
    }
    put_int(&mut out, &BigInt::from(m.n()));
    put_int(&mut out, &BigInt::from(m.len()));
    let den = BigInt::from(1u8) << m.n();
    for (k, &c) in m.keys().iter().zip(m.counts()) {
        for v in k {
            put_int(&mut out, &BigInt::from(*v));
        }
        put_int(&mut out, &BigInt::from(c));
        put_int(&mut out, &den);
    }
    out
}

pub fn decode_level(bytes: &[u8], lambda: &AlgebraicNumber) -> Result<FieldMeasure> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(Error::MalformedCache("missing BCL1 header".into()));
    }
    let mut r = Reader { buf: &bytes[4..] };
    let nc = r.small()?;
    let coeffs = (0..nc).map(|_| r.int()).collect::<Result<Vec<_>>>()?;
    if IntPolynomial::new(coeffs) != *lambda.defining() {
        return Err(Error::MalformedCache("defining polynomial differs".into()));
    }
    let n = r.small()?;
    let count = r.small()?;
    let d = nc - 1;
    let den = BigInt::from(1u8) << n.min(4096);
    let mut keys = Vec::with_capacity(count.min(1 << 26));
    let mut counts = Vec::with_capacity(count.min(1 << 26));
    for _ in 0..count {
        let key = (0..d)
            .map(|_| r.int()?.to_i128().ok_or_else(|| Error::MalformedCache("key out of range".into())))
            .collect::<Result<Vec<_>>>()?;
        let c = r.int()?.to_u64().ok_or_else(|| Error::MalformedCache("bad weight".into()))?;
        if r.int()? != den {
            return Err(Error::MalformedCache("weight denominator is not 2^n".into()));
        }
        keys.push(key);
        counts.push(c);
    }
    if !r.buf.is_empty() {
        return Err(Error::MalformedCache("trailing bytes".into()));
    }
    FieldMeasure::from_parts(lambda, n, keys, counts)
}

/// Writes to a temporary sibling and renames into place.
pub fn store_level(root: &Path, m: &FieldMeasure) -> Result<PathBuf> {
    let path = cache_path(root, m.defining(), m.n());
    let dir = path.parent().expect("cache path has a parent");
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile_in(dir)?;
    tmp.1.write_all(&encode_level(m))?;
    tmp.1.sync_all()?;
    drop(tmp.1);
    std::fs::rename(&tmp.0, &path)?;
    Ok(path)
}

fn tempfile_in(dir: &Path) -> Result<(PathBuf, std::fs::File)> {
    let pid = std::process::id();
    for i in 0u32.. {
        let p = dir.join(format!(".level.{pid}.{i}.tmp"));
        match std::fs::OpenOptions::new().write(true).create_new(true).open(&p) {
            Ok(f) => return Ok((p, f)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!()
}

/// Loads a cached level, `None` when absent.
pub fn load_level(root: &Path, lambda: &AlgebraicNumber, n: usize) -> Result<Option<FieldMeasure>> {
    let path = cache_path(root, lambda.defining(), n);
    match std::fs::read(&path) {
        Ok(bytes) => decode_level(&bytes, lambda).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Every cached level file under `root`.
pub fn list_cache(root: &Path) -> Result<Vec<PathBuf>> {
    let dir = root.join("garsia");
    let mut out = Vec::new();
    if !dir.exists() {
        return Ok(out);
    }
    for entry in std::fs::read_dir(dir)? {
        let p = entry?.path().join("level.bin");
        if p.exists() {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Removes the `garsia` subtree; returns the number of level files removed.
pub fn clear_cache(root: &Path) -> Result<usize> {
    let n = list_cache(root)?.len();
    let dir = root.join("garsia");
    if dir.exists() {
        std::fs::remove_dir_all(dir)?;
    }
    Ok(n)
}
