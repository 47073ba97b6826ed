//! Exact search for primary occurrences of patterns no longer than `tau`.
//!
//! For every phrase `S[s, e]` the strings `S[k, min(e + tau - 1, n)]` with
//! `max(s, e - tau + 1) <= k <= e` are indexed in a compact trie. They are
//! suffixes of one retained window per phrase, so only `O(z tau)` symbols are
//! kept.

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::lz77::Lz77Parse;
use crate::trie::{CompactTrie, StringSet};
use crate::Symbol;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Window {
    /// 1-based text position of `symbols[0]`.
    start: usize,
    /// Border of the phrase the window belongs to.
    border: usize,
    symbols: Vec<Symbol>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    window: u32,
    offset: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortIndex {
    tau: usize,
    windows: Vec<Window>,
    entries: Vec<Entry>,
    trie: CompactTrie,
}

struct Strings<'a> {
    windows: &'a [Window],
    entries: &'a [Entry],
}

impl StringSet for Strings<'_> {
    fn count(&self) -> usize {
        self.entries.len()
    }

    fn len(&self, id: u32) -> usize {
        let e = self.entries[id as usize];
        self.windows[e.window as usize].symbols.len() - e.offset as usize
    }

    fn symbol(&self, id: u32, pos: usize) -> Symbol {
        let e = self.entries[id as usize];
        self.windows[e.window as usize].symbols[e.offset as usize + pos]
    }
}

impl ShortIndex {
    pub fn build(text: &[Symbol], parse: &Lz77Parse, tau: usize) -> Self {
        let n = text.len();
        let mut windows = Vec::with_capacity(parse.z());
        let mut entries = Vec::new();
        let mut s = 1;
        for p in &parse.phrases {
            let e = s + p.len;
            let first = s.max((e + 1).saturating_sub(tau)).max(1);
            let last = (e + tau - 1).min(n);
            let w = windows.len() as u32;
            windows.push(Window {
                start: first,
                border: e,
                symbols: text[first - 1..last].to_vec(),
            });
            for k in first..=e {
                entries.push(Entry {
                    window: w,
                    offset: (k - first) as u32,
                });
            }
            s = e + 1;
        }
        let trie = CompactTrie::build(&Strings {
            windows: &windows,
            entries: &entries,
        });
        Self {
            tau,
            windows,
            entries,
            trie,
        }
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn string_count(&self) -> usize {
        self.entries.len()
    }

    pub fn retained_symbols(&self) -> usize {
        self.windows.iter().map(|w| w.symbols.len()).sum()
    }

    pub fn trie(&self) -> &CompactTrie {
        &self.trie
    }

    /// Starting positions (1-based) of the primary occurrences of `pattern`, `|pattern| <= tau`.
    pub fn locate(&self, pattern: &[Symbol]) -> Vec<usize> {
        let m = pattern.len();
        debug_assert!(m <= self.tau);
        let set = Strings {
            windows: &self.windows,
            entries: &self.entries,
        };
        let Some(v) = self.trie.locus_by_walk(pattern, &set) else {
            return Vec::new();
        };
        let (lo, hi) = self.trie.leaf_range(v);
        let mut out = Vec::new();
        for rank in lo..=hi {
            for &id in self.trie.leaf_ids(rank) {
                let e = self.entries[id as usize];
                let w = &self.windows[e.window as usize];
                let k = w.start + e.offset as usize;
                // primary iff the leftmost border at or after k lies inside the occurrence
                if w.border < k + m {
                    out.push(k);
                }
            }
        }
        out
    }

    pub fn write(&self, w: &mut Writer) {
        w.usize(self.tau);
        w.usize(self.windows.len());
        for win in &self.windows {
            w.usize(win.start);
            w.usize(win.border);
            w.u32s(&win.symbols);
        }
        w.usize(self.entries.len());
        for e in &self.entries {
            w.u64(e.window as u64);
            w.u64(e.offset as u64);
        }
        self.trie.write(w);
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let tau = r.usize()?;
        let nw = r.len_prefix(usize::MAX)?;
        let mut windows = Vec::with_capacity(nw);
        for _ in 0..nw {
            windows.push(Window {
                start: r.usize()?,
                border: r.usize()?,
                symbols: r.u32s(usize::MAX)?,
            });
        }
        let ne = r.len_prefix(usize::MAX)?;
        let mut entries = Vec::with_capacity(ne);
        for _ in 0..ne {
            let e = Entry {
                window: r.u32()?,
                offset: r.u32()?,
            };
            let ok = windows
                .get(e.window as usize)
                .is_some_and(|w| (e.offset as usize) < w.symbols.len());
            if !ok {
                return Err(Error::Corrupt("short index entry out of range".into()));
            }
            entries.push(e);
        }
        let trie = CompactTrie::read(r)?;
        Ok(Self {
            tau,
            windows,
            entries,
            trie,
        })
    }
}
