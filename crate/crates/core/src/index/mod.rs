//! The assembled self-index.

mod io;
mod long;
mod sets;
mod short;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fingerprints::{select_function, verify_pow2_collision_free_with, FpFunction};
use crate::grammar::Slp;
use crate::lz77::{cap_phrases, check_text, parse_with, Lz77Parse};
use crate::prefix_search::PrefixSearch;
use crate::range_report::{Grid, Point};
use crate::suffix::SuffixIndex;
use crate::trie::CompactTrie;
use crate::Symbol;

use sets::{AssociatedSuffixes, ReversedRelevant};
pub use short::ShortIndex;

/// Reselections of the fingerprint function before giving up.
pub const MAX_ATTEMPTS: usize = 8;

/// Multiples-of-x prefixes checked per trie during certification.
const X_BUDGET: usize = 1 << 21;

/// Texts longer than this skip the power-of-two substring certificate.
const POW2_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IndexConfig {
    /// Defaults to `max(1, ceil(lg(n/z)))`.
    pub tau: Option<usize>,
    /// Defaults to `max(1, ceil(n/z))`.
    pub x: Option<usize>,
    pub seed: u64,
}

/// `S[start, end]` (1-based) with the leftmost phrase border it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relevant {
    pub start: usize,
    pub end: usize,
    pub border: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CertificateInfo {
    pub attempts: usize,
    pub prefixes_checked: usize,
    /// Prefix length up to which multiples of `x` were certified in both tries.
    pub multiples_of_x_len: usize,
    pub multiples_of_x_exhaustive: bool,
    pub pow2_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index {
    n: usize,
    z: usize,
    z_reverse: usize,
    z_reverse_capped: usize,
    sigma: Symbol,
    tau: usize,
    x: usize,
    seed: u64,
    f: FpFunction,
    parse: Lz77Parse,
    grammar: Slp,
    reverse_grammar: Slp,
    relevant: Vec<Relevant>,
    left: PrefixSearch,
    right: PrefixSearch,
    pairs: Grid,
    short: ShortIndex,
    sources: Grid,
    certificate: CertificateInfo,
}

/// Everything one `locate` call found, with operation counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocateReport {
    /// All occurrences, ascending.
    pub positions: Vec<usize>,
    /// Primary occurrences in the order they were reported.
    pub primary: Vec<usize>,
    /// Secondary occurrences in the order they were reported.
    pub secondary: Vec<usize>,
    /// Every identification of a primary occurrence by a pair query, reported or not.
    pub identified: Vec<usize>,
    /// Prefix-suffix pairs issued, the empty-suffix pair included.
    pub pairs: usize,
    pub prefix_searches: usize,
    pub h_lookups: usize,
    pub g_lookups: usize,
    /// Candidates kept by verification over candidates submitted.
    pub verified: usize,
    pub candidates: usize,
    pub pair_grid_queries: usize,
    pub source_grid_queries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexStats {
    pub n: usize,
    pub z: usize,
    pub z_capped: usize,
    pub z_reverse: usize,
    pub z_reverse_capped: usize,
    pub sigma: Symbol,
    pub tau: usize,
    pub x: usize,
    pub block_len: usize,
    pub seed: u64,
    pub fp_prime: u64,
    pub fp_base: u64,
    pub grammar_nodes: usize,
    pub grammar_height: u32,
    pub reverse_grammar_nodes: usize,
    pub reverse_grammar_height: u32,
    pub relevant_substrings: usize,
    pub left_trie_vertices: usize,
    pub left_fat_entries: usize,
    pub left_x_entries: usize,
    pub right_trie_vertices: usize,
    pub right_fat_entries: usize,
    pub right_x_entries: usize,
    pub pair_grid_points: usize,
    pub pair_grid_words: usize,
    pub source_grid_points: usize,
    pub source_grid_words: usize,
    pub short_strings: usize,
    pub short_symbols: usize,
    pub short_trie_vertices: usize,
    pub certificate: CertificateInfo,
    /// Serialized bytes per component, in file order.
    pub bytes: Vec<(String, usize)>,
}

/// `max(1, ceil(lg(n/z)))`.
pub fn default_tau(n: usize, z: usize) -> usize {
    let mut t = 0;
    while (z << t) < n {
        t += 1;
    }
    t.max(1)
}

/// Relevant substrings ordered by end position, at most one per end.
pub fn relevant_substrings(parse: &Lz77Parse, tau: usize) -> Vec<Relevant> {
    let n = parse.n;
    let mut best: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    let mut s = 1;
    for p in &parse.phrases {
        let e = s + p.len;
        // phrases arrive by increasing start, so the first one is the longest
        for slot in &mut best[e..(e + tau).min(n + 1)] {
            slot.get_or_insert((s, e));
        }
        s = e + 1;
    }
    best.iter()
        .enumerate()
        .filter_map(|(q, b)| {
            b.map(|(start, border)| Relevant {
                start,
                end: q,
                border,
            })
        })
        .collect()
}

fn rank_of(trie: &CompactTrie, count: usize) -> Vec<u64> {
    let mut rank = vec![0u64; count];
    for r in 1..=trie.leaf_count() {
        for &id in trie.leaf_ids(r) {
            rank[id as usize] = r as u64;
        }
    }
    rank
}

fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    seed.wrapping_add((attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

impl Index {
    pub fn build(text: &[Symbol], config: &IndexConfig) -> Result<Self> {
        let sigma = check_text(text)?;
        let n = text.len();
        let sx = SuffixIndex::new(text);
        let original = parse_with(text, sigma, &sx);
        let z = original.z();
        let block_len = n.div_ceil(z).max(1);
        let tau = match config.tau {
            Some(0) => return Err(Error::Config("tau must be at least 1".into())),
            Some(t) => t,
            None => default_tau(n, z),
        };
        let x = match config.x {
            Some(0) => return Err(Error::Config("x must be at least 1".into())),
            Some(x) => x,
            None => block_len,
        };
        let parse = cap_phrases(&original, block_len)?;
        drop(original);

        let rev: Vec<Symbol> = text.iter().rev().copied().collect();
        let rsx = SuffixIndex::new(&rev);
        let rev_original = parse_with(&rev, sigma, &rsx);
        let z_reverse = rev_original.z();
        let rev_block_len = n.div_ceil(z_reverse).max(1);
        let rev_parse = cap_phrases(&rev_original, rev_block_len)?;
        drop(rev_original);

        let relevant = relevant_substrings(&parse, tau);
        let left_trie = CompactTrie::build(&ReversedRelevant {
            rev: &rev,
            relevant: &relevant,
            sx: &rsx,
            table: None,
        });
        let right_trie = CompactTrie::build(&AssociatedSuffixes {
            text,
            relevant: &relevant,
            sx: &sx,
            table: None,
        });
        let (xs, ys) = (
            rank_of(&left_trie, relevant.len()),
            rank_of(&right_trie, relevant.len()),
        );
        let pairs = Grid::build(
            relevant
                .iter()
                .enumerate()
                .map(|(id, r)| Point {
                    x: xs[id],
                    y: ys[id],
                    payload: (r.end as u64, r.border as u64),
                })
                .collect(),
        );
        let short = ShortIndex::build(text, &parse, tau);
        let mut sources = Vec::new();
        let mut s = 1;
        for p in &parse.phrases {
            if p.len > 0 {
                sources.push(Point {
                    x: p.start as u64,
                    y: (p.start + p.len - 1) as u64,
                    payload: (s as u64, 0),
                });
            }
            s += p.span();
        }
        let sources = Grid::build(sources);

        for attempt in 0..MAX_ATTEMPTS {
            let f = select_function(n, attempt_seed(config.seed, attempt));
            let table = f.prefix_table(text);
            let rtable = f.prefix_table(&rev);
            let lset = ReversedRelevant {
                rev: &rev,
                relevant: &relevant,
                sx: &rsx,
                table: Some(&rtable),
            };
            let rset = AssociatedSuffixes {
                text,
                relevant: &relevant,
                sx: &sx,
                table: Some(&table),
            };
            let Ok(left) = PrefixSearch::build(left_trie.clone(), &lset, x, f) else {
                continue;
            };
            let Ok(right) = PrefixSearch::build(right_trie.clone(), &rset, x, f) else {
                continue;
            };
            let (Ok(lc), Ok(rc)) = (
                left.certify(&lset, X_BUDGET),
                right.certify(&rset, X_BUDGET),
            ) else {
                continue;
            };
            let pow2_checked = n <= POW2_LIMIT;
            if pow2_checked
                && !(verify_pow2_collision_free_with(&table, |a, b, l| sx.lce(a, b) >= l)
                    && verify_pow2_collision_free_with(&rtable, |a, b, l| rsx.lce(a, b) >= l))
            {
                continue;
            }
            let grammar = Slp::build(&parse, f, block_len)?;
            let reverse_grammar = Slp::build(&rev_parse, f, rev_block_len)?;
            return Ok(Self {
                n,
                z,
                z_reverse,
                z_reverse_capped: rev_parse.z(),
                sigma,
                tau,
                x,
                seed: config.seed,
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
                certificate: CertificateInfo {
                    attempts: attempt + 1,
                    prefixes_checked: lc.checked + rc.checked,
                    multiples_of_x_len: lc.x_len.min(rc.x_len),
                    multiples_of_x_exhaustive: lc.exhaustive && rc.exhaustive,
                    pow2_checked,
                },
            });
        }
        Err(Error::Certification(MAX_ATTEMPTS))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Phrase count of the parse before capping.
    pub fn z(&self) -> usize {
        self.z
    }

    pub fn sigma(&self) -> Symbol {
        self.sigma
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn function(&self) -> &FpFunction {
        &self.f
    }

    /// The capped parse used to classify occurrences.
    pub fn parse(&self) -> &Lz77Parse {
        &self.parse
    }

    pub fn grammar(&self) -> &Slp {
        &self.grammar
    }

    pub fn reverse_grammar(&self) -> &Slp {
        &self.reverse_grammar
    }

    pub fn relevant(&self) -> &[Relevant] {
        &self.relevant
    }

    pub fn certificate(&self) -> CertificateInfo {
        self.certificate
    }

    /// Maximum phrase span, also the grammar block length.
    pub fn block_len(&self) -> usize {
        self.grammar.block_len()
    }

    /// `S[i, j]`, 1-based inclusive; `i > j` gives the empty string.
    pub fn extract(&self, i: usize, j: usize) -> Result<Vec<Symbol>> {
        if i > j {
            if i == 0 || j > self.n {
                return Err(Error::OutOfRange { i, j, n: self.n });
            }
            return Ok(Vec::new());
        }
        self.grammar.extract(i, j)
    }

    /// Sorted starting positions of `pattern`.
    pub fn locate(&self, pattern: &[Symbol]) -> Vec<usize> {
        self.locate_report(pattern).positions
    }

    pub fn locate_report(&self, pattern: &[Symbol]) -> LocateReport {
        let mut rep = LocateReport::default();
        let m = pattern.len();
        if m == 0 || m > self.n || pattern.iter().any(|&c| c == 0 || c > self.sigma) {
            return rep;
        }
        rep.primary = if m <= self.tau {
            let found = self.short.locate(pattern);
            rep.identified = found.clone();
            found
        } else {
            self.long_primary(pattern, &mut rep)
        };
        self.secondary(m, &mut rep);
        rep.positions = rep.primary.iter().chain(&rep.secondary).copied().collect();
        rep.positions.sort_unstable();
        rep
    }

    fn secondary(&self, m: usize, rep: &mut LocateReport) {
        let mut queue: VecDeque<usize> = rep.primary.iter().copied().collect();
        while let Some(o) = queue.pop_front() {
            rep.source_grid_queries += 1;
            self.sources
                .query_with(1, o as u64, (o + m - 1) as u64, self.n as u64, |p| {
                    let o2 = p.payload.0 as usize + o - p.x as usize;
                    rep.secondary.push(o2);
                    queue.push_back(o2);
                });
        }
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats {
            n: self.n,
            z: self.z,
            z_capped: self.parse.z(),
            z_reverse: self.z_reverse,
            z_reverse_capped: self.z_reverse_capped,
            sigma: self.sigma,
            tau: self.tau,
            x: self.x,
            block_len: self.block_len(),
            seed: self.seed,
            fp_prime: self.f.p(),
            fp_base: self.f.r(),
            grammar_nodes: self.grammar.node_count(),
            grammar_height: self.grammar.max_block_height(),
            reverse_grammar_nodes: self.reverse_grammar.node_count(),
            reverse_grammar_height: self.reverse_grammar.max_block_height(),
            relevant_substrings: self.relevant.len(),
            left_trie_vertices: self.left.trie().vertex_count(),
            left_fat_entries: self.left.g_len(),
            left_x_entries: self.left.h_len(),
            right_trie_vertices: self.right.trie().vertex_count(),
            right_fat_entries: self.right.g_len(),
            right_x_entries: self.right.h_len(),
            pair_grid_points: self.pairs.len(),
            pair_grid_words: self.pairs.words(),
            source_grid_points: self.sources.len(),
            source_grid_words: self.sources.words(),
            short_strings: self.short.string_count(),
            short_symbols: self.short.retained_symbols(),
            short_trie_vertices: self.short.trie().vertex_count(),
            certificate: self.certificate,
            bytes: self.component_bytes(),
        }
    }
}
