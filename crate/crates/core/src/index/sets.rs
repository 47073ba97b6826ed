//! Build-time views of the two string collections searched by the long-pattern
//! machinery, with constant-time lcp via suffix arrays.

use crate::fingerprints::{FpFunction, PrefixTable};
use crate::suffix::SuffixIndex;
use crate::trie::StringSet;
use crate::Symbol;

use super::Relevant;

fn terminated_fp(
    f: &FpFunction,
    table: Option<&PrefixTable>,
    start: usize,
    len: usize,
    want: usize,
) -> Option<u64> {
    let table = table?;
    let body = table.range_value(start, start + want.min(len));
    if want <= len {
        Some(body)
    } else {
        Some((body + f.mul(table.r_pow(len), f.weight(crate::TERMINATOR))) % f.p())
    }
}

fn lcp_terminated(lce: usize, la: usize, lb: usize) -> usize {
    let l = lce.min(la).min(lb);
    if la == lb && l == la {
        la + 1
    } else {
        l
    }
}

/// Reversed relevant substrings, read from `rev(S)`.
pub(crate) struct ReversedRelevant<'a> {
    pub rev: &'a [Symbol],
    pub relevant: &'a [Relevant],
    pub sx: &'a SuffixIndex,
    pub table: Option<&'a PrefixTable>,
}

impl ReversedRelevant<'_> {
    fn start(&self, id: u32) -> usize {
        self.rev.len() - self.relevant[id as usize].end
    }
}

impl StringSet for ReversedRelevant<'_> {
    fn count(&self) -> usize {
        self.relevant.len()
    }

    fn len(&self, id: u32) -> usize {
        let r = &self.relevant[id as usize];
        r.end - r.start + 1
    }

    fn symbol(&self, id: u32, pos: usize) -> Symbol {
        self.rev[self.start(id) + pos]
    }

    fn lcp(&self, a: u32, b: u32) -> usize {
        let lce = self.sx.lce(self.start(a), self.start(b));
        lcp_terminated(lce, self.len(a), self.len(b))
    }

    fn prefix_fp(&self, f: &FpFunction, id: u32, len: usize) -> u64 {
        match terminated_fp(f, self.table, self.start(id), self.len(id), len) {
            Some(v) => v,
            None => {
                let s: Vec<Symbol> = (0..len).map(|k| self.at(id, k)).collect();
                f.fingerprint(&s).value
            }
        }
    }
}

/// Suffixes `S[end + 1, n]` following each relevant substring.
pub(crate) struct AssociatedSuffixes<'a> {
    pub text: &'a [Symbol],
    pub relevant: &'a [Relevant],
    pub sx: &'a SuffixIndex,
    pub table: Option<&'a PrefixTable>,
}

impl AssociatedSuffixes<'_> {
    fn start(&self, id: u32) -> usize {
        self.relevant[id as usize].end
    }
}

impl StringSet for AssociatedSuffixes<'_> {
    fn count(&self) -> usize {
        self.relevant.len()
    }

    fn len(&self, id: u32) -> usize {
        self.text.len() - self.start(id)
    }

    fn symbol(&self, id: u32, pos: usize) -> Symbol {
        self.text[self.start(id) + pos]
    }

    fn lcp(&self, a: u32, b: u32) -> usize {
        let lce = self.sx.lce(self.start(a), self.start(b));
        lcp_terminated(lce, self.len(a), self.len(b))
    }

    fn prefix_fp(&self, f: &FpFunction, id: u32, len: usize) -> u64 {
        match terminated_fp(f, self.table, self.start(id), self.len(id), len) {
            Some(v) => v,
            None => {
                let s: Vec<Symbol> = (0..len).map(|k| self.at(id, k)).collect();
                f.fingerprint(&s).value
            }
        }
    }
}
