//! Brute-force reference implementations for differential testing.
//!
//! Everything here is quadratic or worse and only meant for small inputs.

use crate::lz77::{Lz77Parse, Phrase};
use crate::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OracleReport {
    /// 1-based, strictly increasing.
    pub positions: Vec<usize>,
    /// `true` when the occurrence at the same index contains a phrase border.
    pub primary_flags: Vec<bool>,
}

impl OracleReport {
    pub fn new(text: &[Symbol], parse: &Lz77Parse, pattern: &[Symbol]) -> Self {
        let positions = naive_locate(text, pattern);
        let primary_flags = classify(parse, &positions, pattern.len());
        Self {
            positions,
            primary_flags,
        }
    }
}

/// All 1-based `i` with `text[i..i+m-1] == pattern`. Empty patterns yield nothing.
pub fn naive_locate(text: &[Symbol], pattern: &[Symbol]) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    (0..=text.len() - m)
        .filter(|&i| text[i..i + m] == *pattern)
        .map(|i| i + 1)
        .collect()
}

/// Flags each occurrence `[i, i+m-1]` that contains a border of `parse`.
pub fn classify(parse: &Lz77Parse, positions: &[usize], m: usize) -> Vec<bool> {
    let borders = parse.borders();
    positions
        .iter()
        .map(|&i| {
            let k = borders.partition_point(|&b| b < i);
            k < borders.len() && borders[k] < i + m
        })
        .collect()
}

/// LZ77 by direct search: for each phrase start try every earlier source.
pub fn naive_lz77(text: &[Symbol]) -> Lz77Parse {
    let n = text.len();
    let mut phrases = Vec::new();
    let mut j = 0;
    while j < n {
        let mut best = (0usize, 0usize);
        for k in 0..j {
            let mut l = 0;
            while j + l < n - 1 && text[k + l] == text[j + l] {
                l += 1;
            }
            if l > best.1 {
                best = (k + 1, l);
            }
        }
        phrases.push(Phrase {
            start: if best.1 == 0 { 0 } else { best.0 },
            len: best.1,
            border: text[j + best.1],
        });
        j += best.1 + 1;
    }
    Lz77Parse {
        phrases,
        n,
        sigma: text.iter().copied().max().unwrap_or(0),
    }
}
