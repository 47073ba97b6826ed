//! Balanced straight-line programs over a capped LZ77 parse.
//!
//! The text is cut into blocks of `block_len` characters. Each block gets its
//! own AVL-balanced grammar, built by appending one phrase at a time: the
//! phrase source is cut out of already-built grammars with persistent splits
//! and concatenated with AVL joins, so each phrase adds `O(lg block_len)`
//! nodes. Nodes store their expansion length and fingerprint, and the block
//! table stores the fingerprint of every block-aligned text prefix.

use std::collections::HashMap;

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::fingerprints::{Fingerprint, FpFunction};
use crate::lz77::Lz77Parse;
use crate::Symbol;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlpNode {
    /// Left child, or the symbol for a terminal.
    left: u32,
    /// Right child, `u32::MAX` for a terminal.
    right: u32,
    pub len: usize,
    pub height: u32,
    pub fp: Fingerprint,
}

impl SlpNode {
    pub fn is_terminal(&self) -> bool {
        self.right == NONE
    }

    pub fn symbol(&self) -> Option<Symbol> {
        self.is_terminal().then_some(self.left)
    }

    pub fn children(&self) -> Option<(u32, u32)> {
        (!self.is_terminal()).then_some((self.left, self.right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub root: u32,
    /// Fingerprint of the text before this block.
    pub prefix_fp: Fingerprint,
}

/// Block table plus the shared node arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slp {
    f: FpFunction,
    nodes: Vec<SlpNode>,
    blocks: Vec<Block>,
    block_len: usize,
    n: usize,
    total_fp: Fingerprint,
}

struct Builder<'a> {
    f: &'a FpFunction,
    nodes: Vec<SlpNode>,
    terminals: HashMap<Symbol, u32>,
    roots: Vec<u32>,
    block_len: usize,
    cur: Option<u32>,
    pos: usize,
}

impl<'a> Builder<'a> {
    fn node(&self, id: u32) -> &SlpNode {
        &self.nodes[id as usize]
    }

    fn height(&self, id: u32) -> u32 {
        self.node(id).height
    }

    fn terminal(&mut self, c: Symbol) -> u32 {
        if let Some(&id) = self.terminals.get(&c) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(SlpNode {
            left: c,
            right: NONE,
            len: 1,
            height: 0,
            fp: self.f.symbol(c),
        });
        self.terminals.insert(c, id);
        id
    }

    fn pair(&mut self, l: u32, r: u32) -> u32 {
        let (a, b) = (self.node(l), self.node(r));
        let node = SlpNode {
            left: l,
            right: r,
            len: a.len + b.len,
            height: a.height.max(b.height) + 1,
            fp: self.f.compose(&a.fp, &b.fp),
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        id
    }

    fn kids(&self, id: u32) -> (u32, u32) {
        let n = self.node(id);
        (n.left, n.right)
    }

    /// AVL concatenation; creates `O(|h(a) - h(b)| + 1)` nodes.
    fn join(&mut self, a: u32, b: u32) -> u32 {
        let (ha, hb) = (self.height(a), self.height(b));
        if ha.abs_diff(hb) <= 1 {
            return self.pair(a, b);
        }
        if ha > hb {
            let (l, r) = self.kids(a);
            let t = self.join(r, b);
            if self.height(t) <= self.height(l) + 1 {
                return self.pair(l, t);
            }
            let (tl, tr) = self.kids(t);
            if self.height(tl) <= self.height(tr) {
                let left = self.pair(l, tl);
                self.pair(left, tr)
            } else {
                let (tll, tlr) = self.kids(tl);
                let left = self.pair(l, tll);
                let right = self.pair(tlr, tr);
                self.pair(left, right)
            }
        } else {
            let (l, r) = self.kids(b);
            let t = self.join(a, l);
            if self.height(t) <= self.height(r) + 1 {
                return self.pair(t, r);
            }
            let (tl, tr) = self.kids(t);
            if self.height(tr) <= self.height(tl) {
                let right = self.pair(tr, r);
                self.pair(tl, right)
            } else {
                let (trl, trr) = self.kids(tr);
                let left = self.pair(tl, trl);
                let right = self.pair(trr, r);
                self.pair(left, right)
            }
        }
    }

    fn join_opt(&mut self, a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(a), Some(b)) => Some(self.join(a, b)),
            (a, None) => a,
            (None, b) => b,
        }
    }

    /// Balanced grammar for `exp(id)[s..e)`, `s < e`.
    fn sub(&mut self, id: u32, s: usize, e: usize) -> u32 {
        let node = *self.node(id);
        if s == 0 && e == node.len {
            return id;
        }
        let (l, r) = (node.left, node.right);
        let ll = self.node(l).len;
        if e <= ll {
            self.sub(l, s, e)
        } else if s >= ll {
            self.sub(r, s - ll, e - ll)
        } else {
            let a = self.sub(l, s, ll);
            let b = self.sub(r, 0, e - ll);
            self.join(a, b)
        }
    }

    /// Grammar for the already-built text range `[from, to)`.
    fn gather(&mut self, from: usize, to: usize) -> u32 {
        let mut acc = None;
        let mut p = from;
        while p < to {
            let b = p / self.block_len;
            let bstart = b * self.block_len;
            let bend = (bstart + self.block_len).min(to);
            let root = if b < self.roots.len() {
                self.roots[b]
            } else {
                self.cur.expect("current block covers the range")
            };
            let piece = self.sub(root, p - bstart, bend - bstart);
            acc = self.join_opt(acc, Some(piece));
            p = bend;
        }
        acc.expect("nonempty range")
    }

    /// Grammar for a copy of `len` characters starting at 0-based `src < pos`.
    fn copy(&mut self, src: usize, len: usize) -> u32 {
        if src + len <= self.pos {
            return self.gather(src, src + len);
        }
        // Self-overlapping copy: a repetition of period `pos - src`.
        let period = self.pos - src;
        let base = self.gather(src, self.pos);
        let mut acc = None;
        let mut power = base;
        let mut k = len / period;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.join_opt(acc, Some(power));
            }
            k >>= 1;
            if k > 0 {
                power = self.join(power, power);
            }
        }
        let rem = len % period;
        if rem > 0 {
            let tail = self.sub(base, 0, rem);
            acc = self.join_opt(acc, Some(tail));
        }
        acc.unwrap()
    }

    fn append(&mut self, id: u32) {
        let len = self.node(id).len;
        self.cur = self.join_opt(self.cur, Some(id));
        self.pos += len;
        if self.pos.is_multiple_of(self.block_len) {
            self.roots.push(self.cur.take().unwrap());
        }
    }

    fn room(&self) -> usize {
        self.block_len - self.pos % self.block_len
    }
}

impl Slp {
    /// Builds the block grammars; every phrase must span at most `block_len`.
    pub fn build(parse: &Lz77Parse, f: FpFunction, block_len: usize) -> Result<Self> {
        if parse.n == 0 {
            return Err(Error::EmptyText);
        }
        let block_len = block_len.max(1);
        if let Some(p) = parse.phrases.iter().find(|p| p.span() > block_len) {
            return Err(Error::PhraseTooLong {
                len: p.span(),
                block_len,
            });
        }
        parse.validate()?;
        let mut b = Builder {
            f: &f,
            nodes: Vec::new(),
            terminals: HashMap::new(),
            roots: Vec::new(),
            block_len,
            cur: None,
            pos: 0,
        };
        for p in &parse.phrases {
            let mut src = p.start.saturating_sub(1);
            let mut left = p.len;
            while left > 0 {
                let take = left.min(b.room());
                let piece = b.copy(src, take);
                b.append(piece);
                src += take;
                left -= take;
            }
            let t = b.terminal(p.border);
            b.append(t);
        }
        if let Some(c) = b.cur.take() {
            b.roots.push(c);
        }
        let mut blocks = Vec::with_capacity(b.roots.len());
        let mut acc = f.empty();
        for &root in &b.roots {
            blocks.push(Block {
                root,
                prefix_fp: acc,
            });
            acc = f.compose(&acc, &b.nodes[root as usize].fp);
        }
        Ok(Self {
            f,
            nodes: b.nodes,
            blocks,
            block_len,
            n: parse.n,
            total_fp: acc,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn function(&self) -> &FpFunction {
        &self.f
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn node(&self, id: u32) -> &SlpNode {
        &self.nodes[id as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn max_block_height(&self) -> u32 {
        self.blocks
            .iter()
            .map(|b| self.node(b.root).height)
            .max()
            .unwrap_or(0)
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > j + 1 || j > self.n {
            return Err(Error::OutOfRange { i, j, n: self.n });
        }
        Ok(())
    }

    /// `S[i..=j]`, 1-based inclusive; `j = i - 1` yields the empty string.
    pub fn extract(&self, i: usize, j: usize) -> Result<Vec<Symbol>> {
        Ok(self.extract_counted(i, j)?.0)
    }

    /// As [`Slp::extract`], also returning the number of grammar nodes visited.
    pub fn extract_counted(&self, i: usize, j: usize) -> Result<(Vec<Symbol>, usize)> {
        self.check(i, j)?;
        let mut out = Vec::with_capacity(j + 1 - i);
        let mut visits = 0;
        self.extract_range(i - 1, j, &mut out, &mut visits);
        Ok((out, visits))
    }

    /// Appends `S[from..to)` (0-based) to `out`.
    pub(crate) fn extract_range(
        &self,
        from: usize,
        to: usize,
        out: &mut Vec<Symbol>,
        visits: &mut usize,
    ) {
        let mut p = from;
        while p < to {
            let b = p / self.block_len;
            let bstart = b * self.block_len;
            let bend = (bstart + self.block_len).min(to);
            self.collect(self.blocks[b].root, p - bstart, bend - bstart, out, visits);
            p = bend;
        }
    }

    fn collect(&self, id: u32, s: usize, e: usize, out: &mut Vec<Symbol>, visits: &mut usize) {
        *visits += 1;
        let node = self.node(id);
        if node.is_terminal() {
            out.push(node.left);
            return;
        }
        let ll = self.node(node.left).len;
        if s < ll {
            self.collect(node.left, s, e.min(ll), out, visits);
        }
        if e > ll {
            self.collect(node.right, s.saturating_sub(ll), e - ll, out, visits);
        }
    }

    /// Symbol at 0-based position `p`.
    pub fn symbol_at(&self, p: usize) -> Symbol {
        let b = p / self.block_len;
        let mut id = self.blocks[b].root;
        let mut off = p - b * self.block_len;
        loop {
            let node = self.node(id);
            if node.is_terminal() {
                return node.left;
            }
            let ll = self.node(node.left).len;
            if off < ll {
                id = node.left;
            } else {
                off -= ll;
                id = node.right;
            }
        }
    }

    /// `phi(S[i..=j])`, 1-based inclusive.
    pub fn substring_fp(&self, i: usize, j: usize) -> Result<Fingerprint> {
        Ok(self.substring_fp_counted(i, j)?.0)
    }

    pub fn substring_fp_counted(&self, i: usize, j: usize) -> Result<(Fingerprint, usize)> {
        self.check(i, j)?;
        let mut visits = 0;
        let fp = self.range_fp(i - 1, j, &mut visits);
        Ok((fp, visits))
    }

    /// Fingerprint of `S[from..to)` (0-based).
    pub(crate) fn range_fp(&self, from: usize, to: usize, visits: &mut usize) -> Fingerprint {
        if from >= to {
            return self.f.empty();
        }
        let a = from / self.block_len;
        let b = (to - 1) / self.block_len;
        let astart = a * self.block_len;
        if a == b {
            return self.node_fp(self.blocks[a].root, from - astart, to - astart, visits);
        }
        let head_end = self.node(self.blocks[a].root).len;
        let head = self.node_fp(self.blocks[a].root, from - astart, head_end, visits);
        let middle = if a + 1 < b {
            self.f
                .split_suffix(&self.blocks[b].prefix_fp, &self.blocks[a + 1].prefix_fp)
                .expect("prefix fingerprints grow with the block index")
        } else {
            self.f.empty()
        };
        let bstart = b * self.block_len;
        let tail = self.node_fp(self.blocks[b].root, 0, to - bstart, visits);
        self.f.compose(&self.f.compose(&head, &middle), &tail)
    }

    fn node_fp(&self, id: u32, s: usize, e: usize, visits: &mut usize) -> Fingerprint {
        *visits += 1;
        let node = self.node(id);
        if s == 0 && e == node.len {
            return node.fp;
        }
        let ll = self.node(node.left).len;
        if e <= ll {
            self.node_fp(node.left, s, e, visits)
        } else if s >= ll {
            self.node_fp(node.right, s - ll, e - ll, visits)
        } else {
            let a = self.node_fp(node.left, s, ll, visits);
            let b = self.node_fp(node.right, 0, e - ll, visits);
            self.f.compose(&a, &b)
        }
    }

    /// Fingerprint of the whole text.
    pub fn text_fp(&self) -> Fingerprint {
        self.total_fp
    }

    pub fn write(&self, w: &mut Writer) {
        w.usize(self.n);
        w.usize(self.block_len);
        w.usize(self.nodes.len());
        for node in &self.nodes {
            if node.is_terminal() {
                w.u64(0);
                w.u64(node.left as u64);
            } else {
                w.u64(1);
                w.u64(node.left as u64);
                w.u64(node.right as u64);
            }
            w.usize(node.len);
            w.u64(node.height as u64);
            write_fp(w, &node.fp);
        }
        w.usize(self.blocks.len());
        for b in &self.blocks {
            w.u64(b.root as u64);
            write_fp(w, &b.prefix_fp);
        }
        write_fp(w, &self.total_fp);
    }

    pub fn read(r: &mut Reader, f: FpFunction) -> Result<Self> {
        let n = r.usize()?;
        let block_len = r.usize()?;
        if block_len == 0 {
            return Err(Error::Corrupt("zero block length".into()));
        }
        let count = r.len_prefix(usize::MAX)?;
        let mut nodes: Vec<SlpNode> = Vec::with_capacity(count);
        for id in 0..count {
            let tag = r.u64()?;
            let left = r.u32()?;
            let right = match tag {
                0 => NONE,
                1 => {
                    let right = r.u32()?;
                    if left as usize >= id || right as usize >= id {
                        return Err(Error::Corrupt("grammar child after parent".into()));
                    }
                    right
                }
                _ => return Err(Error::Corrupt("bad grammar node tag".into())),
            };
            let len = r.usize()?;
            let height = r.u32()?;
            let fp = read_fp(r)?;
            if right != NONE && nodes[left as usize].len + nodes[right as usize].len != len {
                return Err(Error::Corrupt("grammar length mismatch".into()));
            }
            nodes.push(SlpNode {
                left,
                right,
                len,
                height,
                fp,
            });
        }
        let nb = r.len_prefix(n)?;
        let mut blocks = Vec::with_capacity(nb);
        for _ in 0..nb {
            let root = r.u32()?;
            if root as usize >= nodes.len() {
                return Err(Error::Corrupt("block root out of range".into()));
            }
            blocks.push(Block {
                root,
                prefix_fp: read_fp(r)?,
            });
        }
        let total_fp = read_fp(r)?;
        let covered: usize = blocks.iter().map(|b| nodes[b.root as usize].len).sum();
        if covered != n {
            return Err(Error::Corrupt("blocks do not cover the text".into()));
        }
        Ok(Self {
            f,
            nodes,
            blocks,
            block_len,
            n,
            total_fp,
        })
    }
}

pub(crate) fn write_fp(w: &mut Writer, fp: &Fingerprint) {
    w.u64(fp.value);
    w.usize(fp.len);
    w.u64(fp.r_pow);
    w.u64(fp.r_inv_pow);
}

pub(crate) fn read_fp(r: &mut Reader) -> Result<Fingerprint> {
    Ok(Fingerprint {
        value: r.u64()?,
        len: r.usize()?,
        r_pow: r.u64()?,
        r_inv_pow: r.u64()?,
    })
}
