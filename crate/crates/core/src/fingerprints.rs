//! Karp–Rabin fingerprints `phi(s) = sum s[i] * r^(i-1) mod p`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::suffix::SuffixIndex;
use crate::{Symbol, TERMINATOR};

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Weight given to the trie terminator so that `s` and `s$` fingerprint differently.
pub const TERMINATOR_WEIGHT: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpFunction {
    p: u64,
    r: u64,
    r_inv: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub value: u64,
    pub len: usize,
    /// `r^len mod p`.
    pub r_pow: u64,
    /// `r^-len mod p`.
    pub r_inv_pow: u64,
}

/// Picks `(p, r)` deterministically from `seed`.
///
/// `p` is fixed at `2^61 - 1`, which is at least `n^5` for every `n < 5300`.
pub fn select_function(n: usize, seed: u64) -> FpFunction {
    debug_assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(2..MERSENNE_61 - 1);
    FpFunction::new(MERSENNE_61, r).expect("valid parameters")
}

impl FpFunction {
    /// `p` must be prime and `1 <= r < p`; primality is the caller's responsibility.
    pub fn new(p: u64, r: u64) -> Result<Self> {
        if p < 2 || r == 0 || r >= p || p > MERSENNE_61 {
            return Err(Error::Config(format!(
                "invalid fingerprint parameters p={p} r={r}"
            )));
        }
        let r_inv = pow_mod(r, p - 2, p);
        Ok(Self { p, r, r_inv })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn weight(&self, c: Symbol) -> u64 {
        if c == TERMINATOR {
            TERMINATOR_WEIGHT % self.p
        } else {
            c as u64 % self.p
        }
    }

    pub fn empty(&self) -> Fingerprint {
        Fingerprint {
            value: 0,
            len: 0,
            r_pow: 1,
            r_inv_pow: 1,
        }
    }

    pub fn symbol(&self, c: Symbol) -> Fingerprint {
        Fingerprint {
            value: self.weight(c),
            len: 1,
            r_pow: self.r,
            r_inv_pow: self.r_inv,
        }
    }

    /// Direct polynomial evaluation.
    pub fn fingerprint(&self, s: &[Symbol]) -> Fingerprint {
        let mut value = 0;
        let mut pw = 1;
        for &c in s {
            value = self.add(value, self.mul(self.weight(c), pw));
            pw = self.mul(pw, self.r);
        }
        Fingerprint {
            value,
            len: s.len(),
            r_pow: pw,
            r_inv_pow: pow_mod(self.r_inv, s.len() as u64, self.p),
        }
    }

    /// `phi(yz)` from `phi(y)` and `phi(z)`.
    #[inline]
    pub fn compose(&self, y: &Fingerprint, z: &Fingerprint) -> Fingerprint {
        Fingerprint {
            value: self.add(y.value, self.mul(y.r_pow, z.value)),
            len: y.len + z.len,
            r_pow: self.mul(y.r_pow, z.r_pow),
            r_inv_pow: self.mul(y.r_inv_pow, z.r_inv_pow),
        }
    }

    /// `phi(z)` from `phi(yz)` and `phi(y)`.
    pub fn split_suffix(&self, x: &Fingerprint, y: &Fingerprint) -> Result<Fingerprint> {
        if y.len > x.len {
            return Err(Error::LengthUnderflow {
                whole: x.len,
                part: y.len,
            });
        }
        Ok(Fingerprint {
            value: self.mul(self.sub(x.value, y.value), y.r_inv_pow),
            len: x.len - y.len,
            r_pow: self.mul(x.r_pow, y.r_inv_pow),
            r_inv_pow: self.mul(x.r_inv_pow, y.r_pow),
        })
    }

    /// `phi(y)` from `phi(yz)` and `phi(z)`.
    pub fn split_prefix(&self, x: &Fingerprint, z: &Fingerprint) -> Result<Fingerprint> {
        if z.len > x.len {
            return Err(Error::LengthUnderflow {
                whole: x.len,
                part: z.len,
            });
        }
        let r_pow = self.mul(x.r_pow, z.r_inv_pow);
        Ok(Fingerprint {
            value: self.sub(x.value, self.mul(r_pow, z.value)),
            len: x.len - z.len,
            r_pow,
            r_inv_pow: self.mul(x.r_inv_pow, z.r_pow),
        })
    }

    pub fn prefix_table(&self, s: &[Symbol]) -> PrefixTable {
        PrefixTable::new(*self, s)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Prefix fingerprints of a string for `O(1)` substring fingerprints.
#[derive(Debug, Clone)]
pub struct PrefixTable {
    f: FpFunction,
    prefix: Vec<u64>,
    pow: Vec<u64>,
    inv_pow: Vec<u64>,
}

impl PrefixTable {
    pub fn new(f: FpFunction, s: &[Symbol]) -> Self {
        let n = s.len();
        let mut prefix = Vec::with_capacity(n + 1);
        let mut pow = Vec::with_capacity(n + 1);
        let mut inv_pow = Vec::with_capacity(n + 1);
        prefix.push(0);
        pow.push(1);
        inv_pow.push(1);
        for (i, &c) in s.iter().enumerate() {
            prefix.push(f.add(prefix[i], f.mul(f.weight(c), pow[i])));
            pow.push(f.mul(pow[i], f.r));
            inv_pow.push(f.mul(inv_pow[i], f.r_inv));
        }
        Self {
            f,
            prefix,
            pow,
            inv_pow,
        }
    }

    pub fn len(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn function(&self) -> &FpFunction {
        &self.f
    }

    /// Fingerprint of the 0-based half-open range `[from, to)`. Panics if out of range.
    #[inline]
    pub fn range(&self, from: usize, to: usize) -> Fingerprint {
        let len = to - from;
        Fingerprint {
            value: self.f.mul(
                self.f.sub(self.prefix[to], self.prefix[from]),
                self.inv_pow[from],
            ),
            len,
            r_pow: self.pow[len],
            r_inv_pow: self.inv_pow[len],
        }
    }

    /// Fingerprint value only, for `[from, to)`.
    #[inline]
    pub fn range_value(&self, from: usize, to: usize) -> u64 {
        self.f.mul(
            self.f.sub(self.prefix[to], self.prefix[from]),
            self.inv_pow[from],
        )
    }

    /// `phi(s[i..=j])` with 1-based inclusive bounds; `j = i - 1` is the empty string.
    pub fn substring_fp(&self, i: usize, j: usize) -> Result<Fingerprint> {
        let n = self.len();
        if i == 0 || i > j + 1 || j > n {
            return Err(Error::OutOfRange { i, j, n });
        }
        Ok(self.range(i - 1, j))
    }

    /// `r^k` for `k <= len`.
    pub fn r_pow(&self, k: usize) -> u64 {
        self.pow[k]
    }

    pub fn r_inv_pow(&self, k: usize) -> u64 {
        self.inv_pow[k]
    }
}

/// `true` iff no two distinct prefixes, with lengths drawn from `lengths`,
/// of the given strings share a fingerprint.
pub fn verify_collision_free(f: &FpFunction, strings: &[Vec<Symbol>], lengths: &[usize]) -> bool {
    let mut seen: HashMap<u64, &[Symbol]> = HashMap::new();
    for s in strings {
        let table = f.prefix_table(s);
        for &l in lengths {
            if l > s.len() {
                continue;
            }
            let prefix = &s[..l];
            match seen.get(&table.range_value(0, l)) {
                Some(other) if *other != prefix => return false,
                Some(_) => {}
                None => {
                    seen.insert(table.range_value(0, l), prefix);
                }
            }
        }
    }
    true
}

/// `true` iff for every `l`, equal fingerprints of length-`2^l` substrings of
/// `s` imply equal substrings.
pub fn verify_pow2_collision_free(f: &FpFunction, s: &[Symbol]) -> bool {
    if s.is_empty() {
        return true;
    }
    let sx = SuffixIndex::new(s);
    verify_pow2_collision_free_with(&f.prefix_table(s), |a, b, len| sx.lce(a, b) >= len)
}

/// As [`verify_pow2_collision_free`], with a caller-supplied equality test
/// `eq(a, b, len)` over 0-based starts.
pub fn verify_pow2_collision_free_with(
    table: &PrefixTable,
    eq: impl Fn(usize, usize, usize) -> bool,
) -> bool {
    let n = table.len();
    let mut len = 1;
    let mut rep: HashMap<u64, usize> = HashMap::with_capacity(n);
    while len <= n {
        rep.clear();
        for i in 0..=n - len {
            let v = table.range_value(i, i + len);
            match rep.get(&v) {
                Some(&k) => {
                    if !eq(k, i, len) {
                        return false;
                    }
                }
                None => {
                    rep.insert(v, i);
                }
            }
        }
        len *= 2;
    }
    true
}
