//! Greedy LZ77 factorization with self-overlapping sources.
//!
//! Phrase `i` is the longest prefix of the remaining text (excluding the final
//! character) that occurs starting strictly to its left, followed by one
//! border character. Sources are 1-based; `start = 0` marks an empty source.

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::suffix::{SparseMin, SuffixIndex};
use crate::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phrase {
    /// 1-based start of the source, 0 when the source is empty.
    pub start: usize,
    /// Source length.
    pub len: usize,
    /// Trailing character.
    pub border: Symbol,
}

impl Phrase {
    pub fn literal(border: Symbol) -> Self {
        Self {
            start: 0,
            len: 0,
            border,
        }
    }

    /// Number of text characters the phrase produces.
    pub fn span(&self) -> usize {
        self.len + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lz77Parse {
    pub phrases: Vec<Phrase>,
    pub n: usize,
    pub sigma: Symbol,
}

impl Lz77Parse {
    pub fn z(&self) -> usize {
        self.phrases.len()
    }

    pub fn max_span(&self) -> usize {
        self.phrases.iter().map(Phrase::span).max().unwrap_or(0)
    }

    /// 1-based border positions, ascending.
    pub fn borders(&self) -> Vec<usize> {
        let mut pos = 0;
        self.phrases
            .iter()
            .map(|p| {
                pos += p.span();
                pos
            })
            .collect()
    }

    /// Checks the structural invariants without materializing the text.
    pub fn validate(&self) -> Result<()> {
        let mut pos = 0usize; // 0-based start of the current phrase
        for (i, p) in self.phrases.iter().enumerate() {
            if p.len == 0 {
                if p.start != 0 {
                    return Err(Error::MalformedParse(format!(
                        "phrase {i} has empty source with start {}",
                        p.start
                    )));
                }
            } else if p.start == 0 || p.start > pos {
                return Err(Error::MalformedParse(format!(
                    "phrase {i} source start {} not before position {}",
                    p.start,
                    pos + 1
                )));
            }
            if p.border == crate::TERMINATOR || p.border > self.sigma {
                return Err(Error::MalformedParse(format!(
                    "phrase {i} has invalid border"
                )));
            }
            pos += p.span();
        }
        if pos != self.n {
            return Err(Error::MalformedParse(format!(
                "phrases cover {pos} characters, expected {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn write(&self, w: &mut Writer) {
        w.usize(self.n);
        w.usize(self.z());
        w.u64(self.sigma as u64);
        for p in &self.phrases {
            w.usize(p.start);
            w.usize(p.len);
            w.u64(p.border as u64);
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let n = r.usize()?;
        let z = r.len_prefix(n)?;
        let sigma = r.u32()?;
        let mut phrases = Vec::with_capacity(z);
        for _ in 0..z {
            phrases.push(Phrase {
                start: r.usize()?,
                len: r.usize()?,
                border: r.u32()?,
            });
        }
        let parse = Self { phrases, n, sigma };
        parse
            .validate()
            .map_err(|e| Error::Corrupt(e.to_string()))?;
        Ok(parse)
    }
}

pub(crate) fn check_text(text: &[Symbol]) -> Result<Symbol> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    if let Some(&c) = text.iter().find(|&&c| c == crate::TERMINATOR) {
        return Err(Error::InvalidSymbol(c));
    }
    Ok(*text.iter().max().unwrap())
}

/// Greedy leftmost-longest LZ77 parse.
///
/// The longest previous factor at each phrase start comes from the nearest
/// suffix-array neighbours with a smaller text position; the leftmost source
/// is then the minimum text position in the SA interval sharing that prefix.
pub fn parse(text: &[Symbol]) -> Result<Lz77Parse> {
    let sigma = check_text(text)?;
    let parse = parse_with(text, sigma, &SuffixIndex::new(text));
    Ok(parse)
}

pub(crate) fn parse_with(text: &[Symbol], sigma: Symbol, sx: &SuffixIndex) -> Lz77Parse {
    let n = text.len();
    let sa = &sx.sa;
    // Previous/next smaller text position in suffix-array order.
    let mut psv = vec![usize::MAX; n];
    let mut nsv = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    for r in 0..n {
        while let Some(&top) = stack.last() {
            if sa[top] > sa[r] {
                nsv[top] = r;
                stack.pop();
            } else {
                break;
            }
        }
        psv[r] = stack.last().copied().unwrap_or(usize::MAX);
        stack.push(r);
    }
    let sa_min = SparseMin::new(sa);

    let mut phrases = Vec::new();
    let mut j = 0;
    while j < n {
        let cap = n - 1 - j;
        let r = sx.rank[j];
        let mut best = 0;
        for nb in [psv[r], nsv[r]] {
            if nb != usize::MAX {
                best = best.max(sx.lce(j, sa[nb]));
            }
        }
        let len = best.min(cap);
        if len == 0 {
            phrases.push(Phrase::literal(text[j]));
            j += 1;
            continue;
        }
        // Widen [lo, hi] around r while the shared prefix is at least `len`.
        let (mut a, mut b) = (0, r);
        while a < b {
            let mid = (a + b) / 2;
            if sx.lcp_range_min(mid + 1, r) >= len {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        let lo = a;
        let (mut a, mut b) = (r, n - 1);
        while a < b {
            let mid = (a + b).div_ceil(2);
            if sx.lcp_range_min(r + 1, mid) >= len {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        let hi = a;
        let source = sa_min.min(lo, hi);
        debug_assert!(source < j);
        phrases.push(Phrase {
            start: source + 1,
            len,
            border: text[j + len],
        });
        j += len + 1;
    }
    Lz77Parse { phrases, n, sigma }
}

/// Rebuilds the text, copying sources left to right so overlaps are legal.
pub fn decompress(parse: &Lz77Parse) -> Result<Vec<Symbol>> {
    let mut out: Vec<Symbol> = Vec::with_capacity(parse.n);
    for (i, p) in parse.phrases.iter().enumerate() {
        if p.len > 0 {
            if p.start == 0 || p.start > out.len() {
                return Err(Error::MalformedParse(format!(
                    "phrase {i} source start {} out of bounds",
                    p.start
                )));
            }
            let s = p.start - 1;
            for k in 0..p.len {
                let c = out[s + k];
                out.push(c);
            }
        } else if p.start != 0 {
            return Err(Error::MalformedParse(format!(
                "phrase {i} has start without source"
            )));
        }
        out.push(p.border);
    }
    if out.len() != parse.n {
        return Err(Error::MalformedParse(format!(
            "decoded length {} differs from n = {}",
            out.len(),
            parse.n
        )));
    }
    Ok(out)
}

/// Splits phrases so that every phrase spans at most `limit` characters.
///
/// A phrase of source length `L` becomes `ceil((L + 1) / limit)` phrases whose
/// sources are consecutive slices of the original source.
pub fn cap_phrases(parse: &Lz77Parse, limit: usize) -> Result<Lz77Parse> {
    let limit = limit.max(1);
    if parse.max_span() <= limit {
        return Ok(parse.clone());
    }
    let text = decompress(parse)?;
    let mut phrases = Vec::with_capacity(parse.z() + parse.n / limit + 1);
    let mut pos = 0;
    for p in &parse.phrases {
        let span = p.span();
        let mut off = 0;
        while off < span {
            let piece = limit.min(span - off);
            let src_len = piece - 1;
            let border = if off + piece == span {
                p.border
            } else {
                text[pos + off + src_len]
            };
            phrases.push(Phrase {
                start: if src_len == 0 { 0 } else { p.start + off },
                len: src_len,
                border,
            });
            off += piece;
        }
        pos += span;
    }
    Ok(Lz77Parse {
        phrases,
        n: parse.n,
        sigma: parse.sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn sym(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| (b - b'a' + 1) as Symbol).collect()
    }

    fn ph(start: usize, len: usize, c: char) -> Phrase {
        Phrase {
            start,
            len,
            border: (c as u8 - b'a' + 1) as Symbol,
        }
    }

    #[test]
    fn abc_repeated() {
        let p = parse(&sym("abcabcabc")).unwrap();
        assert_eq!(
            p.phrases,
            vec![ph(0, 0, 'a'), ph(0, 0, 'b'), ph(0, 0, 'c'), ph(1, 5, 'c')]
        );
    }

    #[test]
    fn small_examples() {
        assert_eq!(parse(&sym("a")).unwrap().phrases, vec![ph(0, 0, 'a')]);
        assert_eq!(
            parse(&sym("aaaa")).unwrap().phrases,
            vec![ph(0, 0, 'a'), ph(1, 2, 'a')]
        );
        assert!(matches!(parse(&[]), Err(Error::EmptyText)));
    }

    #[test]
    fn decompress_examples() {
        let p = Lz77Parse {
            phrases: vec![ph(0, 0, 'a'), ph(0, 0, 'b'), ph(0, 0, 'c'), ph(1, 5, 'c')],
            n: 9,
            sigma: 3,
        };
        assert_eq!(decompress(&p).unwrap(), sym("abcabcabc"));
        let p = Lz77Parse {
            phrases: vec![ph(0, 0, 'a'), ph(1, 2, 'a')],
            n: 4,
            sigma: 1,
        };
        assert_eq!(decompress(&p).unwrap(), sym("aaaa"));
        let bad = Lz77Parse {
            phrases: vec![ph(0, 0, 'a'), ph(3, 1, 'a')],
            n: 3,
            sigma: 1,
        };
        assert!(matches!(decompress(&bad), Err(Error::MalformedParse(_))));
    }

    #[test]
    fn cap_examples() {
        let text = sym("aaaaaaaaaa");
        let p = parse(&text).unwrap();
        assert_eq!(p.phrases, vec![ph(0, 0, 'a'), ph(1, 8, 'a')]);
        let c = cap_phrases(&p, 5).unwrap();
        assert!(c.max_span() <= 5);
        assert_eq!(decompress(&c).unwrap(), text);
        c.validate().unwrap();

        let p = parse(&sym("abcabcabc")).unwrap();
        assert_eq!(cap_phrases(&p, 9).unwrap(), p);
        let c = cap_phrases(&p, 3).unwrap();
        assert!(c.max_span() <= 3);
        assert_eq!(decompress(&c).unwrap(), sym("abcabcabc"));
    }

    proptest! {
        #[test]
        fn matches_quadratic_oracle(text in proptest::collection::vec(1u32..4, 1..300)) {
            let p = parse(&text).unwrap();
            prop_assert_eq!(&p.phrases, &oracle::naive_lz77(&text).phrases);
            prop_assert_eq!(decompress(&p).unwrap(), text);
        }

        #[test]
        fn cap_preserves_text(text in proptest::collection::vec(1u32..3, 1..400), limit in 1usize..20) {
            let p = parse(&text).unwrap();
            let c = cap_phrases(&p, limit).unwrap();
            c.validate().unwrap();
            prop_assert!(c.max_span() <= limit);
            prop_assert!(c.z() <= p.z() + text.len().div_ceil(limit));
            prop_assert_eq!(decompress(&c).unwrap(), text);
        }
    }
}
