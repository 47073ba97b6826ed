//! Minimal LEB128 varint writer/reader used by the index file format.

use crate::error::{Error, Result};

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    pub fn u64(&mut self, mut v: u64) {
        loop {
            let byte = (v & 0x7f) as u8;
            v >>= 7;
            if v == 0 {
                self.buf.push(byte);
                return;
            }
            self.buf.push(byte | 0x80);
        }
    }

    pub fn usize(&mut self, v: usize) {
        self.u64(v as u64);
    }

    pub fn u32s(&mut self, vs: &[u32]) {
        self.usize(vs.len());
        for &v in vs {
            self.u64(v as u64);
        }
    }

    pub fn u64s(&mut self, vs: &[u64]) {
        self.usize(vs.len());
        for &v in vs {
            self.u64(v);
        }
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub fn is_at_end(&self) -> bool {
        self.pos == self.buf.len()
    }

    pub fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::Corrupt("unexpected end of data".into()));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn u64(&mut self) -> Result<u64> {
        let mut v = 0u64;
        let mut shift = 0;
        loop {
            let b = *self
                .buf
                .get(self.pos)
                .ok_or_else(|| Error::Corrupt("unexpected end of data".into()))?;
            self.pos += 1;
            if shift >= 64 {
                return Err(Error::Corrupt("varint overflow".into()));
            }
            v |= ((b & 0x7f) as u64) << shift;
            if b & 0x80 == 0 {
                return Ok(v);
            }
            shift += 7;
        }
    }

    pub fn usize(&mut self) -> Result<usize> {
        Ok(self.u64()? as usize)
    }

    pub fn u32(&mut self) -> Result<u32> {
        u32::try_from(self.u64()?).map_err(|_| Error::Corrupt("value exceeds u32".into()))
    }

    /// Length-prefixed vector; `max` bounds the length to reject garbage headers.
    pub fn u32s(&mut self, max: usize) -> Result<Vec<u32>> {
        let n = self.len_prefix(max)?;
        (0..n).map(|_| self.u32()).collect()
    }

    pub fn u64s(&mut self, max: usize) -> Result<Vec<u64>> {
        let n = self.len_prefix(max)?;
        (0..n).map(|_| self.u64()).collect()
    }

    pub fn len_prefix(&mut self, max: usize) -> Result<usize> {
        let n = self.usize()?;
        if n > max || n > self.buf.len() - self.pos {
            return Err(Error::Corrupt(format!("length {n} exceeds bound")));
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn varints_round_trip(vs in proptest::collection::vec(any::<u64>(), 0..64)) {
            let mut w = Writer::new();
            w.u64s(&vs);
            let bytes = w.into_bytes();
            let mut r = Reader::new(&bytes);
            prop_assert_eq!(r.u64s(usize::MAX).unwrap(), vs);
            prop_assert!(r.is_at_end());
        }
    }

    #[test]
    fn truncated_input_is_corrupt() {
        let mut r = Reader::new(&[0x80]);
        assert!(matches!(r.u64(), Err(Error::Corrupt(_))));
    }
}
