//! Binary space file, version 1. All integers and floats are little-endian.
//!
//! ```text
//! magic        8 bytes   "PMISPACE"
//! version      u32       1
//! flags        u32       0 (reserved)
//! smoothing_a  f64
//! window       u64
//! payload_len  u64       byte length of the payload below
//! payload:
//!   target vocabulary    n: u64, total_in_vocab: u64,
//!                        n x { len: u32, utf8 bytes, freq: u64 }
//!   context vocabulary   same layout
//!   rows                 n_rows: u64, nnz: u64,
//!                        n_rows x { len: u32, len x u32 id deltas,
//!                                   len x f64 values }
//! checksum     u32       CRC-32 (IEEE) of header and payload
//! ```
//!
//! Id deltas: the first entry of a row is the absolute context id, each
//! following entry is the gap to the previous id (always >= 1).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::corpus::Vocabulary;
use crate::error::{Error, Result};
use crate::space::BaseSpace;
use crate::sparse::SparseRows;

pub const MAGIC: &[u8; 8] = b"PMISPACE";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 4 + 8 + 8 + 8;

fn put_vocab(buf: &mut Vec<u8>, v: &Vocabulary) {
    buf.extend_from_slice(&(v.len() as u64).to_le_bytes());
    buf.extend_from_slice(&v.total_in_vocab().to_le_bytes());
    for (w, f) in v.words().iter().zip(v.frequencies()) {
        buf.extend_from_slice(&(w.len() as u32).to_le_bytes());
        buf.extend_from_slice(w.as_bytes());
        buf.extend_from_slice(&f.to_le_bytes());
    }
}

fn encode_payload(space: &BaseSpace) -> Vec<u8> {
    let rows = space.rows();
    let mut buf = Vec::with_capacity(rows.nnz() * 12 + 64);
    put_vocab(&mut buf, space.target_vocab());
    put_vocab(&mut buf, space.context_vocab());
    buf.extend_from_slice(&(rows.n_rows() as u64).to_le_bytes());
    buf.extend_from_slice(&(rows.nnz() as u64).to_le_bytes());
    for r in 0..rows.n_rows() {
        let (ids, vals) = rows.row(r);
        buf.extend_from_slice(&(ids.len() as u32).to_le_bytes());
        let mut prev = 0u32;
        for (i, &c) in ids.iter().enumerate() {
            let delta = if i == 0 { c } else { c - prev };
            buf.extend_from_slice(&delta.to_le_bytes());
            prev = c;
        }
        for v in vals {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    buf
}

/// Serialize a space to any writer.
pub fn write_space<W: Write>(space: &BaseSpace, mut out: W) -> std::io::Result<()> {
    let payload = encode_payload(space);
    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(MAGIC);
    header.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    header.extend_from_slice(&0u32.to_le_bytes());
    header.extend_from_slice(&space.smoothing_a().to_le_bytes());
    header.extend_from_slice(&(space.window() as u64).to_le_bytes());
    header.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    let mut crc = crc32fast::Hasher::new();
    crc.update(&header);
    crc.update(&payload);
    out.write_all(&header)?;
    out.write_all(&payload)?;
    out.write_all(&crc.finalize().to_le_bytes())?;
    out.flush()
}

pub fn save_space(space: &BaseSpace, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_space(space, &mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| Error::Integrity(format!("payload truncated at byte {}", self.pos)))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Read a count and make sure at least `count * min_item` bytes remain,
    /// so a corrupted count cannot trigger a huge allocation.
    fn count(&mut self, min_item: usize) -> Result<usize> {
        let n = self.u64()?;
        let remaining = (self.buf.len() - self.pos) as u64;
        if n.saturating_mul(min_item as u64) > remaining {
            return Err(Error::Integrity(format!(
                "count {n} exceeds remaining payload"
            )));
        }
        Ok(n as usize)
    }
}

fn get_vocab(cur: &mut Cursor<'_>) -> Result<Vocabulary> {
    let n = cur.count(12)?;
    let total = cur.u64()?;
    let mut words = Vec::with_capacity(n);
    let mut freq = Vec::with_capacity(n);
    for _ in 0..n {
        let len = cur.u32()? as usize;
        let bytes = cur.take(len)?;
        let w = std::str::from_utf8(bytes)
            .map_err(|_| Error::Format("vocabulary word is not UTF-8".into()))?;
        words.push(w.to_owned());
        freq.push(cur.u64()?);
    }
    let v = Vocabulary::from_ranked(words, freq).map_err(|e| Error::Format(e.to_string()))?;
    if v.total_in_vocab() != total {
        return Err(Error::Integrity(
            "vocabulary total does not match frequencies".into(),
        ));
    }
    Ok(v)
}

/// Parse a complete space file image.
pub fn read_space(bytes: &[u8]) -> Result<BaseSpace> {
    if bytes.len() < HEADER_LEN {
        if bytes.len() >= 8 && &bytes[..8] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        return Err(Error::Integrity(format!(
            "file too short ({} bytes)",
            bytes.len()
        )));
    }
    if &bytes[..8] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let mut head = Cursor {
        buf: &bytes[..HEADER_LEN],
        pos: 8,
    };
    let version = head.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let _flags = head.u32()?;
    let smoothing_a = head.f64()?;
    let window = head.u64()? as usize;
    let payload_len = head.u64()?;
    let body = &bytes[HEADER_LEN..];
    if body.len() < 4 || payload_len != (body.len() - 4) as u64 {
        return Err(Error::Integrity(format!(
            "payload length header {payload_len} does not match file size"
        )));
    }
    let (covered, crc) = bytes.split_at(bytes.len() - 4);
    if crc32fast::hash(covered).to_le_bytes() != crc {
        return Err(Error::Integrity("checksum mismatch".into()));
    }
    let payload = &body[..body.len() - 4];
    if !(smoothing_a >= 0.0 && smoothing_a.is_finite()) {
        return Err(Error::Format("invalid smoothing constant".into()));
    }

    let mut cur = Cursor {
        buf: payload,
        pos: 0,
    };
    let target_vocab = get_vocab(&mut cur)?;
    let context_vocab = get_vocab(&mut cur)?;
    let n_rows = cur.count(4)?;
    if n_rows != target_vocab.len() {
        return Err(Error::Format(
            "row count differs from target vocabulary".into(),
        ));
    }
    let nnz = cur.count(12)?;
    let mut offsets = Vec::with_capacity(n_rows + 1);
    offsets.push(0);
    let mut indices = Vec::with_capacity(nnz);
    let mut values = Vec::with_capacity(nnz);
    for r in 0..n_rows {
        let len = cur.u32()? as usize;
        let mut prev = 0u32;
        for i in 0..len {
            let d = cur.u32()?;
            let c = if i == 0 {
                d
            } else {
                if d == 0 {
                    return Err(Error::Format(format!(
                        "row {r}: ids not strictly increasing"
                    )));
                }
                prev.checked_add(d)
                    .ok_or_else(|| Error::Format(format!("row {r}: id overflow")))?
            };
            if c as usize >= context_vocab.len() {
                return Err(Error::Format(format!(
                    "row {r}: context id {c} out of range"
                )));
            }
            indices.push(c);
            prev = c;
        }
        for _ in 0..len {
            let v = cur.f64()?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Format(format!(
                    "row {r}: non-positive or non-finite value"
                )));
            }
            values.push(v);
        }
        offsets.push(indices.len());
    }
    if indices.len() != nnz {
        return Err(Error::Integrity(format!(
            "expected {nnz} entries, found {}",
            indices.len()
        )));
    }
    if cur.pos != payload.len() {
        return Err(Error::Integrity("trailing bytes after rows".into()));
    }
    Ok(BaseSpace::from_parts(
        SparseRows::from_raw(offsets, indices, values),
        smoothing_a,
        window,
        target_vocab,
        context_vocab,
    ))
}

pub fn load_space(path: impl AsRef<Path>) -> Result<BaseSpace> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    read_space(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_vocabulary, count_cooccurrences, TokenStream};
    use crate::space::weight_pmi;

    fn sample() -> BaseSpace {
        let ts = TokenStream::from_documents(vec![
            "the cat sat on the mat"
                .split(' ')
                .map(String::from)
                .collect(),
            "the dog sat on the log"
                .split(' ')
                .map(String::from)
                .collect(),
        ])
        .unwrap();
        let v = build_vocabulary(&ts, 4, 1);
        let c = build_vocabulary(&ts, 100, 1);
        weight_pmi(&count_cooccurrences(&ts, &v, &c, 2), 1.0).unwrap()
    }

    fn image(s: &BaseSpace) -> Vec<u8> {
        let mut buf = Vec::new();
        write_space(s, &mut buf).unwrap();
        buf
    }

    #[test]
    fn round_trip() {
        let s = sample();
        assert_eq!(read_space(&image(&s)).unwrap(), s);
    }

    #[test]
    fn empty_round_trip() {
        let ts = TokenStream::new();
        let v = build_vocabulary(&ts, 4, 1);
        let s = weight_pmi(&count_cooccurrences(&ts, &v, &v, 5), 0.0).unwrap();
        assert_eq!(read_space(&image(&s)).unwrap(), s);
    }

    #[test]
    fn bad_magic_and_version() {
        let mut img = image(&sample());
        img[0] = b'X';
        assert!(matches!(read_space(&img), Err(Error::Format(_))));
        let mut img = image(&sample());
        img[8] = 2;
        assert!(matches!(read_space(&img), Err(Error::Format(_))));
    }

    #[test]
    fn corrupted_length_header() {
        let mut img = image(&sample());
        img[32] ^= 0x01;
        assert!(matches!(read_space(&img), Err(Error::Integrity(_))));
    }

    #[test]
    fn corrupted_parameter_fields() {
        let clean = image(&sample());
        for at in 12..32 {
            let mut img = clean.clone();
            img[at] ^= 0x10;
            assert!(
                matches!(read_space(&img), Err(Error::Integrity(_))),
                "byte {at}"
            );
        }
    }

    #[test]
    fn truncated_file() {
        let img = image(&sample());
        for cut in [0, 10, HEADER_LEN, img.len() / 2, img.len() - 1] {
            assert!(
                matches!(read_space(&img[..cut]), Err(Error::Integrity(_))),
                "cut {cut}"
            );
        }
    }

    #[test]
    fn flipped_payload_bit() {
        let mut img = image(&sample());
        let n = img.len();
        img[n - 10] ^= 0x40;
        assert!(matches!(read_space(&img), Err(Error::Integrity(_))));
    }
}
