//! Primary occurrences of patterns longer than `tau`: prefix-suffix pairs
//! searched in the two tries, verified against the grammars, then matched in
//! the pair grid.

use crate::fingerprints::PrefixTable;
use crate::grammar::Slp;
use crate::prefix_search::{PrefixSearch, SearchStats};
use crate::Symbol;

use super::{Index, LocateReport};

#[derive(Clone, Copy)]
enum Side {
    /// Reversed relevant substrings, read from the reverse grammar.
    Left,
    /// Associated suffixes, read from the forward grammar.
    Right,
}

/// A searched suffix `Q` of the (possibly reversed) pattern and its locus candidate.
#[derive(Clone, Copy)]
struct Candidate {
    len: usize,
    vertex: u32,
}

fn pow2_floor(len: usize) -> usize {
    1 << (usize::BITS - 1 - len.leading_zeros())
}

impl Index {
    fn side(&self, side: Side) -> (&PrefixSearch, &Slp) {
        match side {
            Side::Left => (&self.left, &self.reverse_grammar),
            Side::Right => (&self.right, &self.grammar),
        }
    }

    /// 0-based start and length of the string sampled at `vertex`, in the side's text.
    fn sample(&self, side: Side, vertex: u32) -> (usize, usize) {
        let (ps, _) = self.side(side);
        let r = self.relevant[ps.trie().vertex(vertex).sample as usize];
        match side {
            Side::Left => (self.n - r.end, r.end - r.start + 1),
            Side::Right => (r.end, self.n - r.end),
        }
    }

    fn search(
        &self,
        side: Side,
        pv: &[Symbol],
        table: &PrefixTable,
        len: usize,
        rep: &mut LocateReport,
    ) -> Option<u32> {
        let (ps, _) = self.side(side);
        let from = pv.len() - len;
        let mut stats = SearchStats::default();
        let v = ps.weak_search(
            len,
            &|l| table.range_value(from, from + l),
            &|k| pv[from + k],
            &mut stats,
        );
        rep.prefix_searches += 1;
        rep.h_lookups += stats.h_lookups;
        rep.g_lookups += stats.g_lookups;
        v
    }

    /// Keeps exactly the candidates whose sampled string starts with their `Q`.
    ///
    /// `cands` must be ordered by increasing `len`; every `Q` is a suffix of `pv`.
    fn verify(
        &self,
        side: Side,
        pv: &[Symbol],
        table: &PrefixTable,
        cands: &[Candidate],
    ) -> Vec<bool> {
        let (_, g) = self.side(side);
        let mv = pv.len();
        let mut visits = 0;
        let mut tfp = |from: usize, to: usize| g.range_fp(from, to, &mut visits).value;
        // kept candidates form a chain: each p is a suffix of the next one's p
        let mut kept: Vec<(usize, usize, u64, u64)> = Vec::new();
        for (b, c) in cands.iter().enumerate() {
            let (start, avail) = self.sample(side, c.vertex);
            if c.len > avail {
                continue;
            }
            let l = pow2_floor(c.len);
            let pref = tfp(start, start + l);
            let suf = tfp(start + c.len - l, start + c.len);
            if pref != table.range_value(mv - c.len, mv - c.len + l)
                || suf != table.range_value(mv - l, mv)
            {
                continue;
            }
            if let Some(&(a, _, apref, asuf)) = kept.last() {
                let alen = cands[a].len;
                let la = pow2_floor(alen);
                let rs = start + c.len - alen;
                if tfp(rs, rs + la) != apref || tfp(rs + alen - la, rs + alen) != asuf {
                    continue;
                }
            }
            kept.push((b, start, pref, suf));
        }
        let mut ok = vec![false; cands.len()];
        let Some(&(f, fstart, _, _)) = kept.last() else {
            return ok;
        };
        let flen = cands[f].len;
        let mut text = Vec::with_capacity(flen);
        g.extract_range(fstart, fstart + flen, &mut text, &mut visits);
        let lcs = text
            .iter()
            .rev()
            .zip(pv.iter().rev())
            .take_while(|(a, b)| a == b)
            .count();
        for &(i, ..) in &kept {
            ok[i] = cands[i].len <= lcs;
        }
        ok
    }

    fn verified(
        &self,
        side: Side,
        pv: &[Symbol],
        table: &PrefixTable,
        cands: &[(usize, Option<u32>)],
        rep: &mut LocateReport,
    ) -> Vec<Option<u32>> {
        let present: Vec<Candidate> = cands
            .iter()
            .filter_map(|&(len, v)| v.map(|vertex| Candidate { len, vertex }))
            .collect();
        let ok = self.verify(side, pv, table, &present);
        rep.candidates += present.len();
        rep.verified += ok.iter().filter(|&&b| b).count();
        let mut it = present.iter().zip(ok);
        cands
            .iter()
            .map(|&(_, v)| {
                v?;
                let (c, keep) = it.next().unwrap();
                keep.then_some(c.vertex)
            })
            .collect()
    }

    pub(super) fn long_primary(&self, p: &[Symbol], rep: &mut LocateReport) -> Vec<usize> {
        let m = p.len();
        let tau = self.tau;
        let rp: Vec<Symbol> = p.iter().rev().copied().collect();
        let ftable = self.f.prefix_table(p);
        let rtable = self.f.prefix_table(&rp);
        let h = (m / tau).min(self.block_len().div_ceil(tau));
        let eps = !m.is_multiple_of(tau);
        // split points: i * tau for each pair, then m for the empty-suffix pair
        let mut splits: Vec<usize> = (1..=h).map(|i| i * tau).collect();
        if eps {
            splits.push(m);
        }
        rep.pairs = splits.len();

        let left: Vec<(usize, Option<u32>)> = splits
            .iter()
            .map(|&k| (k, self.search(Side::Left, &rp, &rtable, k, rep)))
            .collect();
        let left = self.verified(Side::Left, &rp, &rtable, &left, rep);

        // right parts P[k+1, m], by increasing length
        let rsplits: Vec<usize> = splits.iter().rev().copied().filter(|&k| k < m).collect();
        let right: Vec<(usize, Option<u32>)> = rsplits
            .iter()
            .map(|&k| (m - k, self.search(Side::Right, p, &ftable, m - k, rep)))
            .collect();
        let right = self.verified(Side::Right, p, &ftable, &right, rep);
        let right_of = |k: usize| -> Option<(usize, usize)> {
            if k == m {
                return Some((1, self.right.trie().leaf_count()));
            }
            let idx = rsplits.iter().position(|&x| x == k)?;
            right[idx].map(|v| self.right.range(v))
        };

        let mut out = Vec::new();
        for (s, &k) in splits.iter().enumerate() {
            let Some(lv) = left[s] else { continue };
            let Some((ylo, yhi)) = right_of(k) else {
                continue;
            };
            let (xlo, xhi) = self.left.range(lv);
            rep.pair_grid_queries += 1;
            let is_eps = k == m && eps;
            self.pairs
                .query_with(xlo as u64, xhi as u64, ylo as u64, yhi as u64, |pt| {
                    let (q, b) = (pt.payload.0 as usize, pt.payload.1 as usize);
                    let pos = q + 1 - k;
                    rep.identified.push(pos);
                    if !is_eps {
                        out.push(pos);
                        return;
                    }
                    // the pair whose left part first reaches the border reports it instead
                    let first = (b + 1 - pos).div_ceil(tau).max(1);
                    if first * tau > m {
                        out.push(pos);
                    }
                });
        }
        out
    }
}
