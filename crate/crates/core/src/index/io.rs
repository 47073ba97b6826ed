//! Index file format.

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fingerprints::FpFunction;
use crate::grammar::Slp;
use crate::lz77::Lz77Parse;
use crate::prefix_search::PrefixSearch;
use crate::range_report::Grid;

use super::{CertificateInfo, Index, Relevant, ShortIndex};

const MAGIC: &[u8; 4] = b"LZSI";
const VERSION: u64 = 1;

impl Index {
    fn write_relevant(&self, w: &mut Writer) {
        w.usize(self.relevant.len());
        for r in &self.relevant {
            w.usize(r.start);
            w.usize(r.end);
            w.usize(r.border);
        }
    }

    fn write_certificate(&self, w: &mut Writer) {
        let c = &self.certificate;
        w.usize(c.attempts);
        w.usize(c.prefixes_checked);
        w.usize(c.multiples_of_x_len);
        w.u64(c.multiples_of_x_exhaustive as u64);
        w.u64(c.pow2_checked as u64);
    }

    fn write_header(&self, w: &mut Writer) {
        w.bytes(MAGIC);
        w.u64(VERSION);
        for v in [self.n, self.z, self.z_reverse, self.z_reverse_capped] {
            w.usize(v);
        }
        w.u64(self.sigma as u64);
        w.usize(self.tau);
        w.usize(self.x);
        w.u64(self.f.p());
        w.u64(self.f.r());
        w.u64(self.seed);
    }

    fn components(&self) -> Vec<(&'static str, Writer)> {
        let mut parts: Vec<(&'static str, Writer)> = Vec::new();
        let mut part = |name, fill: &dyn Fn(&mut Writer)| {
            let mut w = Writer::new();
            fill(&mut w);
            parts.push((name, w));
        };
        part("header", &|w| self.write_header(w));
        part("parse", &|w| self.parse.write(w));
        part("grammar", &|w| self.grammar.write(w));
        part("reverse_grammar", &|w| self.reverse_grammar.write(w));
        part("relevant", &|w| self.write_relevant(w));
        part("left_search", &|w| self.left.write(w));
        part("right_search", &|w| self.right.write(w));
        part("pair_grid", &|w| self.pairs.write(w));
        part("short", &|w| self.short.write(w));
        part("source_grid", &|w| self.sources.write(w));
        part("certificate", &|w| self.write_certificate(w));
        parts
    }

    pub(super) fn component_bytes(&self) -> Vec<(String, usize)> {
        self.components()
            .into_iter()
            .map(|(name, w)| (name.to_string(), w.len()))
            .chain([("checksum".to_string(), 4)])
            .collect()
    }

    /// Components in file order followed by a CRC-32 of everything before it.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (_, w) in self.components() {
            out.extend_from_slice(&w.into_bytes());
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        if buf.len() < 4 || &buf[..4] != MAGIC {
            return Err(Error::Corrupt("bad magic".into()));
        }
        let (body, crc) = buf.split_at(buf.len() - 4);
        if crc32fast::hash(body).to_le_bytes() != crc {
            return Err(Error::Corrupt("checksum mismatch".into()));
        }
        let mut r = Reader::new(body);
        if r.bytes(4)? != MAGIC {
            return Err(Error::Corrupt("bad magic".into()));
        }
        let version = r.u64()?;
        if version != VERSION {
            return Err(Error::Corrupt(format!("unsupported version {version}")));
        }
        let n = r.usize()?;
        let z = r.usize()?;
        let z_reverse = r.usize()?;
        let z_reverse_capped = r.usize()?;
        let sigma = r.u32()?;
        let tau = r.usize()?;
        let x = r.usize()?;
        let p = r.u64()?;
        let rr = r.u64()?;
        let seed = r.u64()?;
        let f = FpFunction::new(p, rr).map_err(|e| Error::Corrupt(e.to_string()))?;
        let parse = Lz77Parse::read(&mut r)?;
        let grammar = Slp::read(&mut r, f)?;
        let reverse_grammar = Slp::read(&mut r, f)?;
        let count = r.len_prefix(usize::MAX)?;
        let mut relevant = Vec::with_capacity(count);
        for _ in 0..count {
            let rel = Relevant {
                start: r.usize()?,
                end: r.usize()?,
                border: r.usize()?,
            };
            if rel.start == 0
                || rel.start > rel.end
                || rel.end > n
                || rel.border < rel.start
                || rel.border > rel.end
            {
                return Err(Error::Corrupt("relevant substring out of range".into()));
            }
            relevant.push(rel);
        }
        let left = PrefixSearch::read(&mut r, f)?;
        let right = PrefixSearch::read(&mut r, f)?;
        let pairs = Grid::read(&mut r)?;
        let short = ShortIndex::read(&mut r)?;
        let sources = Grid::read(&mut r)?;
        let certificate = CertificateInfo {
            attempts: r.usize()?,
            prefixes_checked: r.usize()?,
            multiples_of_x_len: r.usize()?,
            multiples_of_x_exhaustive: r.u64()? != 0,
            pow2_checked: r.u64()? != 0,
        };
        if !r.is_at_end() {
            return Err(Error::Corrupt("trailing bytes".into()));
        }
        let consistent = n >= 1
            && tau >= 1
            && x >= 1
            && parse.n == n
            && grammar.len() == n
            && reverse_grammar.len() == n
            && short.tau() == tau
            && left.trie().vertex_count() > 0
            && right.trie().vertex_count() > 0
            && left.trie().validate_ids(relevant.len())
            && right.trie().validate_ids(relevant.len());
        if !consistent {
            return Err(Error::Corrupt("inconsistent components".into()));
        }
        Ok(Self {
            n,
            z,
            z_reverse,
            z_reverse_capped,
            sigma,
            tau,
            x,
            seed,
            f,
            parse,
            grammar,
            reverse_grammar,
            relevant,
            left,
            right,
            pairs,
            short,
            sources,
            certificate,
        })
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
