//! Build-time suffix machinery: suffix array, LCP array and constant-time
//! longest-common-extension queries between arbitrary suffixes.

use crate::Symbol;

/// Suffix array by prefix doubling with radix sorting, `O(n lg n)`.
pub fn suffix_array(text: &[Symbol]) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    // Compress the alphabet so the first radix pass is dense.
    let mut alphabet: Vec<Symbol> = text.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut rank: Vec<usize> = text
        .iter()
        .map(|c| alphabet.binary_search(c).unwrap() + 1)
        .collect();
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| rank[i]);
    let mut classes = alphabet.len();
    let mut tmp = vec![0usize; n];
    let mut k = 1;
    let mut second = vec![0usize; n];
    let mut count = vec![0usize; n.max(classes) + 2];
    while classes < n {
        // Order by second key: suffixes without a second half come first.
        let mut idx = 0;
        for i in n - k.min(n)..n {
            second[idx] = i;
            idx += 1;
        }
        for &s in &sa {
            if s >= k {
                second[idx] = s - k;
                idx += 1;
            }
        }
        // Stable counting sort by first key.
        count.iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            count[r] += 1;
        }
        for c in 1..count.len() {
            count[c] += count[c - 1];
        }
        for &s in second.iter().rev() {
            count[rank[s]] -= 1;
            sa[count[rank[s]]] = s;
        }
        let key = |i: usize, rank: &[usize]| (rank[i], if i + k < n { rank[i + k] } else { 0 });
        tmp[sa[0]] = 1;
        for w in 1..n {
            let bump = key(sa[w - 1], &rank) != key(sa[w], &rank);
            tmp[sa[w]] = tmp[sa[w - 1]] + bump as usize;
        }
        classes = tmp[sa[n - 1]];
        std::mem::swap(&mut rank, &mut tmp);
        k *= 2;
    }
    sa
}

/// Kasai et al. LCP array: `lcp[r]` is the LCP of suffixes `sa[r-1]` and `sa[r]`, `lcp[0] = 0`.
pub fn lcp_array(text: &[Symbol], sa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut rank = vec![0usize; n];
    for (r, &s) in sa.iter().enumerate() {
        rank[s] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Sparse table answering range-minimum queries in `O(1)`.
pub struct SparseMin {
    levels: Vec<Vec<usize>>,
}

impl SparseMin {
    pub fn new(values: &[usize]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<usize> = (0..=values.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        Self { levels }
    }

    /// Minimum over the inclusive range `[lo, hi]`.
    pub fn min(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi + 1 - (1 << level)])
    }
}

/// Suffix array with LCP and rank arrays plus RMQ for longest common extensions.
pub struct SuffixIndex {
    pub sa: Vec<usize>,
    pub rank: Vec<usize>,
    pub lcp: Vec<usize>,
    lcp_min: SparseMin,
}

impl SuffixIndex {
    pub fn new(text: &[Symbol]) -> Self {
        let sa = suffix_array(text);
        let lcp = lcp_array(text, &sa);
        let mut rank = vec![0usize; text.len()];
        for (r, &s) in sa.iter().enumerate() {
            rank[s] = r;
        }
        let lcp_min = SparseMin::new(&lcp);
        Self {
            sa,
            rank,
            lcp,
            lcp_min,
        }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Longest common prefix of the suffixes starting at `i` and `j` (0-based).
    pub fn lce(&self, i: usize, j: usize) -> usize {
        let n = self.sa.len();
        if i >= n || j >= n {
            return 0;
        }
        if i == j {
            return n - i;
        }
        let (a, b) = {
            let (ri, rj) = (self.rank[i], self.rank[j]);
            if ri < rj {
                (ri, rj)
            } else {
                (rj, ri)
            }
        };
        self.lcp_min.min(a + 1, b)
    }

    /// Minimum LCP over `lcp[lo..=hi]`.
    pub fn lcp_range_min(&self, lo: usize, hi: usize) -> usize {
        self.lcp_min.min(lo, hi)
    }
}
