//! Weak prefix search over a compact trie with two fingerprint dictionaries.
//!
//! `G` maps the fingerprint of every vertex's fat prefix (the prefix whose
//! length is the 2-fattest number of the skip interval) to the vertex; `H`
//! maps x-prefixes (the shortest prefix whose length is a multiple of `x`
//! inside the skip interval). A query first walks `H` at multiples of `x` to
//! reach a vertex within `x` of the pattern length, then binary-searches the
//! remaining depth with `G` to find the exit vertex.
//!
//! Answers are exact when the pattern prefixes an indexed string; otherwise
//! they may be arbitrary.

use std::collections::HashMap;

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fingerprints::FpFunction;
use crate::trie::{CompactTrie, StringSet, ROOT};
use crate::Symbol;

/// The unique integer in `(lo, hi]` with the most trailing zero bits.
pub fn two_fattest(lo: u64, hi: u64) -> Result<u64> {
    if lo >= hi {
        return Err(Error::EmptyInterval(lo, hi));
    }
    let t = 63 - (lo ^ hi).leading_zeros();
    Ok(hi & !((1u64 << t) - 1))
}

fn fat(lo: usize, hi: usize) -> usize {
    two_fattest(lo as u64, hi as u64).expect("nonempty skip interval") as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    LocusFound,
    XRange,
    ExitFound,
}

/// Dictionary lookups performed by one query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub h_lookups: usize,
    pub g_lookups: usize,
}

/// Outcome of checking the fingerprint function against the indexed strings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Certificate {
    /// Number of prefixes checked.
    pub checked: usize,
    /// Multiples of `x` were checked for every prefix length up to this bound.
    pub x_len: usize,
    /// `true` when `x_len` covers every indexed prefix.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSearch {
    trie: CompactTrie,
    x: usize,
    f: FpFunction,
    g: HashMap<u64, u32>,
    h: HashMap<u64, u32>,
}

/// Two vertices share a dictionary key; the caller should pick another function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision;

impl PrefixSearch {
    pub fn build<S: StringSet + ?Sized>(
        trie: CompactTrie,
        set: &S,
        x: usize,
        f: FpFunction,
    ) -> std::result::Result<Self, Collision> {
        let x = x.max(1);
        let mut g = HashMap::with_capacity(trie.vertex_count());
        let mut h = HashMap::new();
        for v in 1..trie.vertex_count() as u32 {
            let (lo, hi) = trie.skip(v).unwrap();
            let sample = trie.vertex(v).sample;
            let key = set.prefix_fp(&f, sample, fat(lo, hi));
            if g.insert(key, v).is_some() {
                return Err(Collision);
            }
            if let Some(len) = x_prefix(lo, hi, x) {
                let key = set.prefix_fp(&f, sample, len);
                if h.insert(key, v).is_some() {
                    return Err(Collision);
                }
            }
        }
        Ok(Self { trie, x, f, g, h })
    }

    pub fn trie(&self) -> &CompactTrie {
        &self.trie
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn function(&self) -> &FpFunction {
        &self.f
    }

    pub fn g_len(&self) -> usize {
        self.g.len()
    }

    pub fn h_len(&self) -> usize {
        self.h.len()
    }

    /// Length of the fat prefix of `v`.
    pub fn fat_len(&self, v: u32) -> Option<usize> {
        self.trie.skip(v).map(|(lo, hi)| fat(lo, hi))
    }

    /// Length of the x-prefix of `v`, if its skip interval spans a multiple of `x`.
    pub fn x_prefix_len(&self, v: u32) -> Option<usize> {
        self.trie
            .skip(v)
            .and_then(|(lo, hi)| x_prefix(lo, hi, self.x))
    }

    pub fn g_lookup(&self, key: u64) -> Option<u32> {
        self.g.get(&key).copied()
    }

    pub fn h_lookup(&self, key: u64) -> Option<u32> {
        self.h.get(&key).copied()
    }

    /// Checks that no required prefix collides with a dictionary key of the
    /// same length: fat and pseudo-fat prefixes always, multiples of `x` for
    /// every length up to the largest bound that keeps their count within `budget`.
    pub fn certify<S: StringSet + ?Sized>(
        &self,
        set: &S,
        budget: usize,
    ) -> std::result::Result<Certificate, Collision> {
        let check = |map: &HashMap<u64, u32>,
                     len_of: &dyn Fn(u32) -> Option<usize>,
                     sample: u32,
                     len: usize|
         -> bool {
            let key = set.prefix_fp(&self.f, sample, len);
            match map.get(&key) {
                Some(&u) if len_of(u) == Some(len) => {
                    set.lcp(self.trie.vertex(u).sample, sample) >= len
                }
                _ => true,
            }
        };
        let fat_of = |u: u32| self.fat_len(u);
        let x_of = |u: u32| self.x_prefix_len(u);
        let mut checked = 0usize;
        let mut deepest = 0usize;
        for v in 1..self.trie.vertex_count() as u32 {
            let (lo, hi) = self.trie.skip(v).unwrap();
            deepest = deepest.max(hi);
            let sample = self.trie.vertex(v).sample;
            let fat_v = fat(lo, hi);
            // fat prefix, then pseudo-fat numbers: 2-fattest of [lo+1, p] for p < fat
            if !check(&self.g, &fat_of, sample, fat_v) {
                return Err(Collision);
            }
            checked += 1;
            let mut c = lo + 1;
            while c < fat_v {
                if !check(&self.g, &fat_of, sample, c) {
                    return Err(Collision);
                }
                checked += 1;
                c += c & c.wrapping_neg();
            }
        }
        let x = self.x;
        let multiples = |bound: usize| -> usize {
            (1..self.trie.vertex_count() as u32)
                .map(|v| {
                    let (lo, hi) = self.trie.skip(v).unwrap();
                    (hi.min(bound) / x).saturating_sub(lo / x)
                })
                .sum()
        };
        let x_len = if multiples(deepest) <= budget {
            deepest
        } else {
            let (mut good, mut bad) = (0, deepest);
            while bad - good > 1 {
                let mid = good + (bad - good) / 2;
                if multiples(mid) <= budget {
                    good = mid;
                } else {
                    bad = mid;
                }
            }
            good
        };
        for v in 1..self.trie.vertex_count() as u32 {
            let (lo, hi) = self.trie.skip(v).unwrap();
            let sample = self.trie.vertex(v).sample;
            let mut len = (lo / x + 1) * x;
            while len <= hi.min(x_len) {
                if !check(&self.h, &x_of, sample, len) || !check(&self.g, &fat_of, sample, len) {
                    return Err(Collision);
                }
                checked += 1;
                len += x;
            }
        }
        Ok(Certificate {
            checked,
            x_len,
            exhaustive: x_len == deepest,
        })
    }

    /// Finds a vertex in x-range of the pattern or its locus.
    ///
    /// `fp(len)` must return the fingerprint value of the pattern's length-`len` prefix.
    pub fn find_x_range(
        &self,
        m: usize,
        fp: &impl Fn(usize) -> u64,
        stats: &mut SearchStats,
    ) -> (u32, Status) {
        if m < self.x {
            return (ROOT, Status::XRange);
        }
        let mut v = ROOT;
        for i in 1..=m / self.x {
            let len = i * self.x;
            if len <= self.trie.strlen(v) {
                continue;
            }
            stats.h_lookups += 1;
            if let Some(u) = self.h_lookup(fp(len)) {
                if self.x_prefix_len(u) == Some(len) {
                    v = u;
                }
            }
        }
        if self.trie.strlen(v) >= m {
            (v, Status::LocusFound)
        } else {
            (v, Status::XRange)
        }
    }

    /// Binary search with `G` from an ancestor `start` of the exit vertex.
    pub fn find_exit_vertex(
        &self,
        start: u32,
        m: usize,
        fp: &impl Fn(usize) -> u64,
        stats: &mut SearchStats,
    ) -> (u32, Status) {
        let depth = self.trie.strlen(start);
        debug_assert!(depth < m);
        let y = (m - depth + 1).next_power_of_two();
        let mut l = depth / y * y;
        let mut r = l + 2 * y;
        let mut vc = start;
        while r - l > 1 {
            let b = (l + r) / 2;
            if b > m {
                r = b;
            } else if b <= self.trie.strlen(vc) {
                l = b;
            } else {
                stats.g_lookups += 1;
                match self.g_lookup(fp(b)) {
                    Some(u) if self.fat_len(u) == Some(b) => {
                        if self.trie.strlen(u) < m {
                            vc = u;
                            l = b;
                        } else {
                            return (u, Status::LocusFound);
                        }
                    }
                    _ => r = b,
                }
            }
        }
        (vc, Status::ExitFound)
    }

    /// Locus candidate of a pattern of length `m`, or `None` on a definite mismatch.
    ///
    /// `symbol(k)` returns the pattern symbol at 0-based position `k`.
    pub fn weak_search(
        &self,
        m: usize,
        fp: &impl Fn(usize) -> u64,
        symbol: &impl Fn(usize) -> Symbol,
        stats: &mut SearchStats,
    ) -> Option<u32> {
        if m == 0 {
            return Some(ROOT);
        }
        let (v, status) = self.find_x_range(m, fp, stats);
        if status == Status::LocusFound {
            return Some(v);
        }
        let (u, status) = self.find_exit_vertex(v, m, fp, stats);
        if status == Status::LocusFound {
            return Some(u);
        }
        self.trie.child(u, symbol(self.trie.strlen(u)))
    }

    /// Rank range of a locus candidate.
    pub fn range(&self, v: u32) -> (usize, usize) {
        self.trie.leaf_range(v)
    }

    pub fn write(&self, w: &mut Writer) {
        w.usize(self.x);
        self.trie.write(w);
        for map in [&self.g, &self.h] {
            let mut entries: Vec<(u64, u32)> = map.iter().map(|(&k, &v)| (k, v)).collect();
            entries.sort_unstable();
            w.usize(entries.len());
            for (k, v) in entries {
                w.u64(k);
                w.u64(v as u64);
            }
        }
    }

    pub fn read(r: &mut Reader, f: FpFunction) -> Result<Self> {
        let x = r.usize()?;
        if x == 0 {
            return Err(Error::Corrupt("x = 0".into()));
        }
        let trie = CompactTrie::read(r)?;
        let mut maps = [HashMap::new(), HashMap::new()];
        for map in &mut maps {
            let count = r.len_prefix(trie.vertex_count())?;
            for _ in 0..count {
                let k = r.u64()?;
                let v = r.u32()?;
                if v as usize >= trie.vertex_count() {
                    return Err(Error::Corrupt("dictionary vertex out of range".into()));
                }
                map.insert(k, v);
            }
        }
        let [g, h] = maps;
        Ok(Self { trie, x, f, g, h })
    }
}

fn x_prefix(lo: usize, hi: usize, x: usize) -> Option<usize> {
    let len = (lo / x + 1) * x;
    (len <= hi).then_some(len)
}
