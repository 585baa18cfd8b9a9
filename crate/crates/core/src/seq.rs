//! Sequences over integer alphabets `{0..m}` and the containment oracles
//! every other module is checked against.
//!
//! Text format: a sequence whose symbols are all ≤ 9 is written as a digit
//! string (`120021`); larger symbols use comma-separated integers
//! (`10,0,3`). The empty string is the empty sequence.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Default cap on the number of sequences a lexicographic enumeration may
/// produce.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 26;

/// Smallest `w` with `2^w >= v`. `ceil_log2(1) == 0`.
pub(crate) fn ceil_log2(v: u64) -> u32 {
    assert!(v >= 1, "ceil_log2 of zero");
    if v == 1 {
        0
    } else {
        u64::BITS - (v - 1).leading_zeros()
    }
}

/// The alphabet `{0, 1, ..., m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    m: u32,
}

impl Alphabet {
    pub fn new(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams(format!(
                "alphabet max must be at least 1, got {m}"
            )));
        }
        Ok(Self { m })
    }

    /// Largest symbol value.
    pub fn max_symbol(&self) -> u32 {
        self.m
    }

    /// Number of symbols, `m + 1`.
    pub fn size(&self) -> u64 {
        self.m as u64 + 1
    }

    /// Width of a fixed-length binary encoding of one symbol.
    pub fn symbol_width(&self) -> u32 {
        ceil_log2(self.size())
    }

    pub fn contains(&self, symbol: u32) -> bool {
        symbol <= self.m
    }

    pub fn validate(&self, seq: &Sequence) -> Result<()> {
        for &s in seq.symbols() {
            if !self.contains(s) {
                return Err(Error::SymbolOutOfRange {
                    symbol: s,
                    max: self.m,
                });
            }
        }
        Ok(())
    }
}

/// Parameters of one subsequence-detection instance: text length `n`,
/// pattern length `k`, alphabet max `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SsdParams {
    pub n: usize,
    pub k: usize,
    pub m: u32,
}

impl SsdParams {
    pub fn new(n: usize, k: usize, m: u32) -> Result<Self> {
        if k < 1 || n < k {
            return Err(Error::InvalidParams(format!(
                "need n >= k >= 1, got n={n} k={k}"
            )));
        }
        Alphabet::new(m)?;
        Ok(Self { n, k, m })
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet { m: self.m }
    }

    /// `(m+1)^n * (m+1)^k`, the number of input pairs, or `None` on overflow.
    pub fn input_pairs(&self) -> Option<u128> {
        let size = self.m as u128 + 1;
        size.checked_pow(u32::try_from(self.n).ok()?)?
            .checked_mul(size.checked_pow(u32::try_from(self.k).ok()?)?)
    }
}

/// An immutable string over an integer alphabet. The empty sequence is
/// permitted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence(Vec<u32>);

impl Sequence {
    pub fn new(symbols: Vec<u32>) -> Self {
        Sequence(symbols)
    }

    pub fn empty() -> Self {
        Sequence(Vec::new())
    }

    /// Binary sequence from 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Self {
        Sequence(bits.iter().map(|&b| u32::from(b != 0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.0.get(i).copied()
    }

    pub fn max_symbol(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&s| s <= 1)
    }

    /// Number of symbols equal to 1.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&s| s == 1).count()
    }

    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Sequence(v)
    }

    /// Parse the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Ok(Sequence::empty());
        }
        if text.contains(',') {
            let mut symbols = Vec::new();
            for part in text.split(',') {
                let sym: u32 = part.trim().parse().map_err(|_| Error::ParseSequence {
                    text: text.to_string(),
                    reason: format!("bad integer component {part:?}"),
                })?;
                symbols.push(sym);
            }
            return Ok(Sequence(symbols));
        }
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch.to_digit(10) {
                Some(d) => symbols.push(d),
                None => {
                    return Err(Error::ParseSequence {
                        text: text.to_string(),
                        reason: format!("non-digit character {ch:?}"),
                    })
                }
            }
        }
        Ok(Sequence(symbols))
    }

    /// The `index`-th length-`n` sequence over `{0..m}` in lexicographic
    /// order (base `m+1` digits, most significant first).
    pub fn from_lex_index(index: u64, n: usize, m: u32) -> Self {
        let base = m as u64 + 1;
        let mut rem = index;
        let mut symbols = vec![0u32; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (rem % base) as u32;
            rem /= base;
        }
        debug_assert_eq!(rem, 0, "lex index out of range");
        Sequence(symbols)
    }

    /// Position of `self` in the lexicographic enumeration of its length
    /// over `{0..m}`. `None` if the value does not fit in a `u64`.
    pub fn lex_index(&self, m: u32) -> Option<u64> {
        let base = m as u64 + 1;
        let mut acc: u64 = 0;
        for &s in &self.0 {
            acc = acc.checked_mul(base)?.checked_add(s as u64)?;
        }
        Some(acc)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s <= 9) {
            for &s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({self})")
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sequence::parse(s)
    }
}

/// 1 iff the characters of `y` appear in order (not necessarily
/// contiguously) within `x`. Single left-to-right greedy pass.
pub fn is_subsequence(x: &Sequence, y: &Sequence) -> bool {
    let mut want = y.symbols().iter();
    let mut next = want.next();
    for &sym in x.symbols() {
        match next {
            Some(&w) if w == sym => next = want.next(),
            Some(_) => {}
            None => break,
        }
    }
    next.is_none()
}

/// 1 iff `y` occurs contiguously within `x`.
pub fn is_substring(x: &Sequence, y: &Sequence) -> bool {
    if y.is_empty() {
        return true;
    }
    if y.len() > x.len() {
        return false;
    }
    x.symbols().windows(y.len()).any(|w| w == y.symbols())
}

/// Replace each symbol by its order of first appearance: the first-seen
/// symbol becomes 0, the next new one 1, and so on. Idempotent.
pub fn canonical_relabel(x: &Sequence) -> Sequence {
    let mut seen: Vec<u32> = Vec::new();
    let mut out = Vec::with_capacity(x.len());
    for &s in x.symbols() {
        let label = match seen.iter().position(|&t| t == s) {
            Some(p) => p as u32,
            None => {
                seen.push(s);
                (seen.len() - 1) as u32
            }
        };
        out.push(label);
    }
    Sequence(out)
}

/// Interleave each bit of a binary sequence with its complement:
/// `s` maps to `s̄₁s₁s̄₂s₂…`, doubling the length and leaving exactly one 1
/// per input position. Shared by the indexing reduction and the shattered
/// set construction.
pub fn doubling_map(s: &Sequence) -> Result<Sequence> {
    if !s.is_binary() {
        return Err(Error::InvalidInstance(format!(
            "doubling map needs a binary sequence, got {s}"
        )));
    }
    let mut out = Vec::with_capacity(2 * s.len());
    for &b in s.symbols() {
        out.push(1 - b);
        out.push(b);
    }
    Ok(Sequence(out))
}

/// Iterator over all `(m+1)^n` sequences of length `n` over `{0..m}` in
/// lexicographic order: `0^n` first, `m^n` last.
pub struct LexEnumerator {
    current: Option<Vec<u32>>,
    m: u32,
}

impl Iterator for LexEnumerator {
    type Item = Sequence;

    fn next(&mut self) -> Option<Sequence> {
        let digits = self.current.as_mut()?;
        let item = Sequence(digits.clone());
        // increment in base m+1; exhausted once every digit wraps
        let mut done = true;
        for d in digits.iter_mut().rev() {
            if *d < self.m {
                *d += 1;
                done = false;
                break;
            }
            *d = 0;
        }
        if done {
            self.current = None;
        }
        Some(item)
    }
}

/// Number of length-`n` sequences over `{0..m}`, or `None` on overflow.
pub fn lex_count(n: usize, m: u32) -> Option<u64> {
    (m as u64 + 1).checked_pow(u32::try_from(n).ok()?)
}

/// Enumerate all length-`n` sequences over `{0..m}` in lexicographic
/// order, under [`DEFAULT_ENUM_BUDGET`].
pub fn enumerate_lex(n: usize, m: u32) -> Result<LexEnumerator> {
    enumerate_lex_budgeted(n, m, DEFAULT_ENUM_BUDGET)
}

/// Same as [`enumerate_lex`] with an explicit element budget.
pub fn enumerate_lex_budgeted(n: usize, m: u32, budget: u64) -> Result<LexEnumerator> {
    if n < 1 {
        return Err(Error::InvalidParams("enumeration needs n >= 1".into()));
    }
    Alphabet::new(m)?;
    match lex_count(n, m) {
        Some(count) if count <= budget => Ok(LexEnumerator {
            current: Some(vec![0; n]),
            m,
        }),
        other => Err(Error::BudgetExceeded {
            what: "enumeration elements",
            required: other.map_or(u128::MAX, u128::from),
            limit: budget as u128,
        }),
    }
}
