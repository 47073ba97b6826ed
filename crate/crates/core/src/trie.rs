//! Compact (PATRICIA) tries over `$`-terminated string sets.
//!
//! Only string depths and first edge symbols are stored. Edge labels are read
//! through a [`StringSet`] using the sample string kept at every vertex.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fingerprints::FpFunction;
use crate::{Symbol, TERMINATOR};

/// Read access to an indexed string collection. Ids are dense `0..count()`.
pub trait StringSet {
    fn count(&self) -> usize;

    /// Length without the terminator.
    fn len(&self, id: u32) -> usize;

    /// Symbol at 0-based `pos < len(id)`.
    fn symbol(&self, id: u32, pos: usize) -> Symbol;

    /// Symbol of `id$` at `pos <= len(id)`.
    fn at(&self, id: u32, pos: usize) -> Symbol {
        if pos == self.len(id) {
            TERMINATOR
        } else {
            self.symbol(id, pos)
        }
    }

    /// Longest common prefix of `a$` and `b$`.
    fn lcp(&self, a: u32, b: u32) -> usize {
        let max = self.len(a).min(self.len(b)) + 1;
        (0..max)
            .take_while(|&k| self.at(a, k) == self.at(b, k))
            .count()
    }

    /// Fingerprint value of the length-`len` prefix of `id$`, `len <= len(id) + 1`.
    fn prefix_fp(&self, f: &FpFunction, id: u32, len: usize) -> u64 {
        let s: Vec<Symbol> = (0..len).map(|k| self.at(id, k)).collect();
        f.fingerprint(&s).value
    }

    fn compare(&self, a: u32, b: u32) -> Ordering {
        let l = self.lcp(a, b);
        if l > self.len(a).min(self.len(b)) {
            Ordering::Equal
        } else {
            self.at(a, l).cmp(&self.at(b, l))
        }
    }
}

impl StringSet for Vec<Vec<Symbol>> {
    fn count(&self) -> usize {
        self.as_slice().len()
    }

    fn len(&self, id: u32) -> usize {
        self[id as usize].len()
    }

    fn symbol(&self, id: u32, pos: usize) -> Symbol {
        self[id as usize][pos]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vertex {
    /// `|str(v)|`, counting the terminator for leaves.
    pub strlen: usize,
    pub parent: u32,
    /// First symbol of the incoming edge.
    pub first: Symbol,
    /// 1-based rank of the leftmost leaf below.
    pub lo: u32,
    /// 1-based rank of the rightmost leaf below.
    pub hi: u32,
    /// A string id whose `$`-terminated form has `str(v)` as a prefix.
    pub sample: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactTrie {
    vertices: Vec<Vertex>,
    children: Vec<Vec<u32>>,
    child_map: HashMap<(u32, Symbol), u32>,
    /// Leaf vertex for each rank (index `rank - 1`).
    leaves: Vec<u32>,
    /// String ids merged into each leaf.
    leaf_ids: Vec<Vec<u32>>,
}

pub const ROOT: u32 = 0;

impl CompactTrie {
    /// Builds the trie over all strings of `set`.
    pub fn build<S: StringSet + ?Sized>(set: &S) -> Self {
        Self::build_from(set, (0..set.count() as u32).collect())
    }

    /// Builds the trie over the given ids. Equal strings share one leaf.
    pub fn build_from<S: StringSet + ?Sized>(set: &S, mut ids: Vec<u32>) -> Self {
        ids.sort_by(|&a, &b| set.compare(a, b).then(a.cmp(&b)));
        let mut groups: Vec<Vec<u32>> = Vec::new();
        let mut lcps: Vec<usize> = Vec::new();
        for id in ids {
            if let Some(g) = groups.last_mut() {
                let prev = g[0];
                let l = set.lcp(prev, id);
                if l > set.len(prev).min(set.len(id)) {
                    g.push(id);
                    continue;
                }
                lcps.push(l);
            } else {
                lcps.push(0);
            }
            groups.push(vec![id]);
        }

        let root = Vertex {
            strlen: 0,
            parent: ROOT,
            first: TERMINATOR,
            lo: 1,
            hi: groups.len() as u32,
            sample: groups.first().map_or(0, |g| g[0]),
        };
        let mut vertices = vec![root];
        let mut children: Vec<Vec<u32>> = vec![Vec::new()];
        let mut leaves = Vec::with_capacity(groups.len());
        let mut stack = vec![ROOT];
        for (rank, g) in groups.iter().enumerate() {
            let d = lcps[rank];
            let mut last = None;
            while vertices[*stack.last().unwrap() as usize].strlen > d {
                last = stack.pop();
            }
            let top = *stack.last().unwrap();
            if vertices[top as usize].strlen < d {
                let last = last.expect("a deeper vertex was popped");
                let w = vertices.len() as u32;
                vertices.push(Vertex {
                    strlen: d,
                    parent: top,
                    first: TERMINATOR,
                    lo: 0,
                    hi: 0,
                    sample: 0,
                });
                children.push(vec![last]);
                let siblings = &mut children[top as usize];
                debug_assert_eq!(siblings.last(), Some(&last));
                *siblings.last_mut().unwrap() = w;
                vertices[last as usize].parent = w;
                stack.push(w);
            }
            let parent = *stack.last().unwrap();
            let leaf = vertices.len() as u32;
            vertices.push(Vertex {
                strlen: set.len(g[0]) + 1,
                parent,
                first: TERMINATOR,
                lo: rank as u32 + 1,
                hi: rank as u32 + 1,
                sample: g[0],
            });
            children.push(Vec::new());
            children[parent as usize].push(leaf);
            stack.push(leaf);
            leaves.push(leaf);
        }

        // Internal ranks and samples, children before parents.
        let mut order = Vec::with_capacity(vertices.len());
        let mut todo = vec![ROOT];
        while let Some(v) = todo.pop() {
            order.push(v);
            todo.extend(children[v as usize].iter().copied());
        }
        for &v in order.iter().rev() {
            let kids = &children[v as usize];
            if let (Some(&first), Some(&last)) = (kids.first(), kids.last()) {
                let lo = vertices[first as usize].lo;
                let hi = vertices[last as usize].hi;
                let sample = vertices[first as usize].sample;
                let vx = &mut vertices[v as usize];
                vx.lo = lo;
                vx.hi = hi;
                vx.sample = sample;
            }
        }
        let mut child_map = HashMap::with_capacity(vertices.len());
        for v in 1..vertices.len() {
            let vx = vertices[v];
            let first = set.at(vx.sample, vertices[vx.parent as usize].strlen);
            vertices[v].first = first;
            child_map.insert((vx.parent, first), v as u32);
        }
        Self {
            vertices,
            children,
            child_map,
            leaves,
            leaf_ids: groups,
        }
    }

    pub fn vertex(&self, v: u32) -> &Vertex {
        &self.vertices[v as usize]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of leaves, i.e. distinct strings.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn strlen(&self, v: u32) -> usize {
        self.vertices[v as usize].strlen
    }

    /// Skip interval `(|parent|, |v|]` as the pair `(|parent|, |v|)`; `None` for the root.
    pub fn skip(&self, v: u32) -> Option<(usize, usize)> {
        (v != ROOT).then(|| {
            let vx = &self.vertices[v as usize];
            (self.vertices[vx.parent as usize].strlen, vx.strlen)
        })
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    pub fn child(&self, v: u32, c: Symbol) -> Option<u32> {
        self.child_map.get(&(v, c)).copied()
    }

    /// `(l_v, r_v)`, 1-based inclusive leaf ranks.
    pub fn leaf_range(&self, v: u32) -> (usize, usize) {
        let vx = &self.vertices[v as usize];
        (vx.lo as usize, vx.hi as usize)
    }

    pub fn leaf(&self, rank: usize) -> u32 {
        self.leaves[rank - 1]
    }

    /// String ids stored at the leaf with the given 1-based rank.
    pub fn leaf_ids(&self, rank: usize) -> &[u32] {
        &self.leaf_ids[rank - 1]
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        self.children[v as usize].is_empty() && v != ROOT
    }

    /// Exact locus of `pattern`, comparing edge labels symbol by symbol.
    pub fn locus_by_walk<S: StringSet + ?Sized>(&self, pattern: &[Symbol], set: &S) -> Option<u32> {
        let m = pattern.len();
        let mut v = ROOT;
        let mut d = 0;
        loop {
            if d == m {
                return Some(v);
            }
            let c = self.child(v, pattern[d])?;
            let cx = &self.vertices[c as usize];
            let end = cx.strlen.min(m);
            for (k, &p) in pattern.iter().enumerate().take(end).skip(d + 1) {
                if set.at(cx.sample, k) != p {
                    return None;
                }
            }
            if m <= cx.strlen {
                return Some(c);
            }
            v = c;
            d = cx.strlen;
        }
    }

    /// `true` iff ids `0..count` each sit in exactly one leaf and all ranks and samples are in range.
    pub fn validate_ids(&self, count: usize) -> bool {
        let nl = self.leaves.len() as u32;
        let mut seen = vec![false; count];
        for ids in &self.leaf_ids {
            for &id in ids {
                match seen.get_mut(id as usize) {
                    Some(s) if !*s => *s = true,
                    _ => return false,
                }
            }
        }
        seen.iter().all(|&s| s)
            && self
                .vertices
                .iter()
                .all(|v| (v.sample as usize) < count && 1 <= v.lo && v.lo <= v.hi && v.hi <= nl)
    }

    pub fn write(&self, w: &mut Writer) {
        w.usize(self.vertices.len());
        for v in &self.vertices {
            w.u64(v.parent as u64);
            w.usize(v.strlen);
            w.u64(v.first as u64);
            w.u64(v.lo as u64);
            w.u64(v.hi as u64);
            w.u64(v.sample as u64);
        }
        w.usize(self.leaves.len());
        for (leaf, ids) in self.leaves.iter().zip(&self.leaf_ids) {
            w.u64(*leaf as u64);
            w.u32s(ids);
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let count = r.len_prefix(usize::MAX)?;
        if count == 0 {
            return Err(Error::Corrupt("trie without root".into()));
        }
        let mut vertices = Vec::with_capacity(count);
        for _ in 0..count {
            vertices.push(Vertex {
                parent: r.u32()?,
                strlen: r.usize()?,
                first: r.u32()?,
                lo: r.u32()?,
                hi: r.u32()?,
                sample: r.u32()?,
            });
        }
        let mut children: Vec<Vec<u32>> = vec![Vec::new(); count];
        let mut child_map = HashMap::with_capacity(count);
        for v in 1..count {
            let vx = vertices[v];
            if vx.parent as usize >= count || vertices[vx.parent as usize].strlen >= vx.strlen {
                return Err(Error::Corrupt("bad trie parent".into()));
            }
            children[vx.parent as usize].push(v as u32);
            child_map.insert((vx.parent, vx.first), v as u32);
        }
        for kids in &mut children {
            kids.sort_by_key(|&c| vertices[c as usize].first);
        }
        let nleaves = r.len_prefix(count)?;
        let mut leaves = Vec::with_capacity(nleaves);
        let mut leaf_ids = Vec::with_capacity(nleaves);
        for _ in 0..nleaves {
            let leaf = r.u32()?;
            if leaf as usize >= count {
                return Err(Error::Corrupt("bad leaf id".into()));
            }
            leaves.push(leaf);
            leaf_ids.push(r.u32s(usize::MAX)?);
        }
        Ok(Self {
            vertices,
            children,
            child_map,
            leaves,
            leaf_ids,
        })
    }
}
