//! Shattering lab for containment classifiers.
//!
//! A pattern `σ` of length `k` classifies a binary string `s` positively
//! iff `σ` is a subsequence of `s`. This module provides the full class
//! of all `2^k` such classifiers, a shattering verifier, a pruned
//! exhaustive search for the largest shattered subset of `{0,1}^n`, and
//! the explicit construction that shatters `⌊log₂(k−1)⌋` strings.
//!
//! The search first collapses strings with identical acceptance
//! signatures (two such strings can never sit in one shattered set), then
//! runs a depth-first search over distinct signatures in lexicographic
//! order, splitting the classifier set along every chosen string. A set
//! extends to a shattered superset of size `R` only if every trace class
//! still holds at least `2^{R - |set|}` classifiers, which is the prune
//! that makes the larger tables exact in reasonable time.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::seq::{is_subsequence, Sequence};
use crate::{Error, Result};

pub use crate::seq::doubling_map;

/// Default cap on signature-table cells (`2^n · 2^k`).
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 26;

/// Default cap on search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 26;

/// A fixed-pattern containment classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pattern: Sequence,
}

impl Hypothesis {
    pub fn new(pattern: Sequence) -> Result<Self> {
        if !pattern.is_binary() {
            return Err(Error::InvalidInstance(format!(
                "classifier patterns are binary, got {pattern}"
            )));
        }
        Ok(Hypothesis { pattern })
    }

    pub fn pattern(&self) -> &Sequence {
        &self.pattern
    }

    /// Positive classification: the pattern embeds into `s`.
    pub fn accepts(&self, s: &Sequence) -> bool {
        is_subsequence(s, &self.pattern)
    }
}

/// All `2^k` length-`k` classifiers, patterns in lexicographic order.
pub fn full_class(k: usize) -> Result<Vec<Hypothesis>> {
    if !(1..=24).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "classifier class supported for 1 <= k <= 24, got {k}"
        )));
    }
    Ok((0..1u64 << k)
        .map(|v| Hypothesis {
            pattern: Sequence::from_lex_index(v, k, 1),
        })
        .collect())
}

/// The `2^d x d` matrix whose row `i` is the left-padded binary
/// representation of `i - 1` (0-based: row `r` spells `r`).
#[derive(Clone, Copy, Debug)]
pub struct BitMatrix {
    d: usize,
}

impl BitMatrix {
    pub fn rows(&self) -> usize {
        1 << self.d
    }

    pub fn cols(&self) -> usize {
        self.d
    }

    /// Bit in row `r`, column `c`, both 0-based; column 0 is the most
    /// significant bit.
    pub fn bit(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows() && c < self.d);
        r >> (self.d - 1 - c) & 1 == 1
    }

    pub fn row_sequence(&self, r: usize) -> Sequence {
        Sequence::new((0..self.d).map(|c| u32::from(self.bit(r, c))).collect())
    }

    /// Column read top to bottom as a binary string of length `2^d`.
    pub fn column_sequence(&self, c: usize) -> Sequence {
        Sequence::new(
            (0..self.rows())
                .map(|r| u32::from(self.bit(r, c)))
                .collect(),
        )
    }

    pub fn columns(&self) -> Vec<Sequence> {
        (0..self.d).map(|c| self.column_sequence(c)).collect()
    }
}

pub fn build_b_matrix(d: usize) -> Result<BitMatrix> {
    if !(1..=26).contains(&d) {
        return Err(Error::InvalidParams(format!(
            "bit matrix supported for 1 <= d <= 26, got {d}"
        )));
    }
    Ok(BitMatrix { d })
}

/// Verdict of a shattering check.
#[derive(Clone, Debug)]
pub struct ShatterVerdict {
    pub shattered: bool,
    /// On success: for each subset mask (bit `i` selects `strings[i]`) one
    /// pattern whose positive set within the strings is exactly that
    /// subset, ascending by mask.
    pub realizers: Vec<(u64, Sequence)>,
    /// On failure: the smallest unrealized subset mask.
    pub missing_subset: Option<u64>,
}

/// Does `hypotheses` realize every one of the `2^|strings|` subsets of
/// `strings`?
pub fn is_shattered(strings: &[Sequence], hypotheses: &[Hypothesis]) -> Result<ShatterVerdict> {
    if strings.len() > 30 {
        return Err(Error::BudgetExceeded {
            what: "shattering subsets",
            required: 1u128 << strings.len(),
            limit: 1 << 30,
        });
    }
    if let Some(first) = strings.first() {
        for s in strings {
            if s.len() != first.len() {
                return Err(Error::MixedLengths(first.len(), s.len()));
            }
        }
    }

    let mut realizer: HashMap<u64, usize> = HashMap::new();
    for (hi, h) in hypotheses.iter().enumerate() {
        let mask = strings
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, s)| acc | (u64::from(h.accepts(s)) << i));
        realizer.entry(mask).or_insert(hi);
    }

    let total = 1u64 << strings.len();
    if (realizer.len() as u64) < total {
        let missing = (0..total).find(|mask| !realizer.contains_key(mask));
        return Ok(ShatterVerdict {
            shattered: false,
            realizers: Vec::new(),
            missing_subset: missing,
        });
    }
    let mut realizers: Vec<(u64, Sequence)> = realizer
        .into_iter()
        .map(|(mask, hi)| (mask, hypotheses[hi].pattern().clone()))
        .collect();
    realizers.sort_by_key(|&(mask, _)| mask);
    Ok(ShatterVerdict {
        shattered: true,
        realizers,
        missing_subset: None,
    })
}

/// One equivalence class of strings under identical acceptance behavior.
#[derive(Clone, Debug)]
pub struct SignatureClass {
    /// Acceptance bitset over all `2^k` patterns in lexicographic order.
    pub signature: Vec<u64>,
    /// Lexicographically smallest string with this signature.
    pub representative: Sequence,
    pub multiplicity: usize,
}

/// Acceptance signatures of every string in `{0,1}^n` against the full
/// classifier class, plus the deduplicated signature classes.
#[derive(Clone, Debug)]
pub struct SignatureTable {
    pub k: usize,
    pub n: usize,
    /// Signature of each string, indexed lexicographically.
    pub signatures: Vec<Vec<u64>>,
    /// Distinct signatures ordered by representative.
    pub classes: Vec<SignatureClass>,
}

pub fn signature_table(k: usize, n: usize) -> Result<SignatureTable> {
    signature_table_budgeted(k, n, DEFAULT_TABLE_BUDGET)
}

pub fn signature_table_budgeted(k: usize, n: usize, max_cells: u64) -> Result<SignatureTable> {
    if k < 1 || n < 1 || k > 62 || n > 62 {
        return Err(Error::InvalidParams(format!(
            "signature table needs small positive k and n, got k={k} n={n}"
        )));
    }
    let cells = (1u128 << k) * (1u128 << n);
    if cells > max_cells as u128 {
        return Err(Error::BudgetExceeded {
            what: "signature table cells",
            required: cells,
            limit: max_cells as u128,
        });
    }
    let patterns: Vec<Sequence> = (0..1u64 << k)
        .map(|v| Sequence::from_lex_index(v, k, 1))
        .collect();
    let words = patterns.len().div_ceil(64);

    let signatures: Vec<Vec<u64>> = (0..1u64 << n)
        .into_par_iter()
        .map(|si| {
            let s = Sequence::from_lex_index(si, n, 1);
            let mut sig = vec![0u64; words];
            for (pi, p) in patterns.iter().enumerate() {
                if is_subsequence(&s, p) {
                    sig[pi / 64] |= 1 << (pi % 64);
                }
            }
            sig
        })
        .collect();

    let mut lookup: HashMap<&[u64], usize> = HashMap::new();
    let mut classes: Vec<SignatureClass> = Vec::new();
    for (si, sig) in signatures.iter().enumerate() {
        match lookup.get(sig.as_slice()) {
            Some(&ci) => classes[ci].multiplicity += 1,
            None => {
                lookup.insert(sig.as_slice(), classes.len());
                classes.push(SignatureClass {
                    signature: sig.clone(),
                    representative: Sequence::from_lex_index(si as u64, n, 1),
                    multiplicity: 1,
                });
            }
        }
    }
    // lookup borrows `signatures`; drop it before moving
    drop(lookup);
    Ok(SignatureTable {
        k,
        n,
        signatures,
        classes,
    })
}

/// Budgets for [`max_shattered`].
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_table_cells: u64,
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_table_cells: DEFAULT_TABLE_BUDGET,
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Result of the maximum-shattered-set search.
#[derive(Clone, Debug)]
pub struct ShatterReport {
    pub k: usize,
    pub n: usize,
    pub max_size: usize,
    /// Lexicographically smallest witness of maximum size.
    pub witness: Vec<Sequence>,
    /// One realizing pattern per witness subset, ascending by mask.
    pub realizers: Vec<(u64, Sequence)>,
    /// True when the search ran to completion, proving maximality; false
    /// when the node budget truncated it.
    pub exhaustive: bool,
    pub nodes_visited: u64,
}

struct Dfs<'a> {
    classes_sigs: &'a [Vec<u64>],
    words: usize,
    max_nodes: u64,
    nodes: u64,
    truncated: bool,
    best: Vec<usize>,
}

impl Dfs<'_> {
    fn run(&mut self, chosen: &mut Vec<usize>, trace_classes: &[Vec<u64>], start: usize) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.truncated = true;
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        for cand in start..self.classes_sigs.len() {
            if self.truncated {
                return;
            }
            // even taking every remaining candidate cannot beat the best
            if chosen.len() + (self.classes_sigs.len() - cand) <= self.best.len() {
                break;
            }
            let sig = &self.classes_sigs[cand];
            let mut split: Vec<Vec<u64>> = Vec::with_capacity(trace_classes.len() * 2);
            let mut all_nonempty = true;
            let mut min_pop = u64::MAX;
            for class in trace_classes {
                let mut accept = vec![0u64; self.words];
                let mut reject = vec![0u64; self.words];
                let mut pop_a = 0u64;
                let mut pop_r = 0u64;
                for w in 0..self.words {
                    accept[w] = class[w] & sig[w];
                    reject[w] = class[w] & !sig[w];
                    pop_a += accept[w].count_ones() as u64;
                    pop_r += reject[w].count_ones() as u64;
                }
                if pop_a == 0 || pop_r == 0 {
                    all_nonempty = false;
                    break;
                }
                min_pop = min_pop.min(pop_a).min(pop_r);
                split.push(reject);
                split.push(accept);
            }
            if !all_nonempty {
                continue;
            }
            let new_size = chosen.len() + 1;
            if new_size <= self.best.len() {
                // to reach best+1 every class must still split that often
                let needed = 1u64 << (self.best.len() + 1 - new_size);
                if min_pop < needed {
                    continue;
                }
            }
            chosen.push(cand);
            self.run(chosen, &split, cand + 1);
            chosen.pop();
        }
    }
}

/// Exhaustively find the largest subset of `{0,1}^n` shattered by the
/// full class of length-`k` classifiers.
pub fn max_shattered(k: usize, n: usize, budget: &SearchBudget) -> Result<ShatterReport> {
    let table = signature_table_budgeted(k, n, budget.max_table_cells)?;
    let class_sigs: Vec<Vec<u64>> = table.classes.iter().map(|c| c.signature.clone()).collect();
    let words = (1usize << k).div_ceil(64);

    // root trace class: every pattern
    let mut all = vec![u64::MAX; words];
    let used = 1usize << k;
    if !used.is_multiple_of(64) {
        all[words - 1] = (1u64 << (used % 64)) - 1;
    }

    let mut dfs = Dfs {
        classes_sigs: &class_sigs,
        words,
        max_nodes: budget.max_nodes,
        nodes: 0,
        truncated: false,
        best: Vec::new(),
    };
    dfs.run(&mut Vec::new(), &[all], 0);

    let witness: Vec<Sequence> = dfs
        .best
        .iter()
        .map(|&ci| table.classes[ci].representative.clone())
        .collect();
    let verdict = is_shattered(&witness, &full_class(k)?)?;
    assert!(
        verdict.shattered,
        "search produced a non-shattered witness, which is a bug"
    );
    assert!(
        witness.len() <= k,
        "a shattered set larger than the class size is impossible"
    );
    Ok(ShatterReport {
        k,
        n,
        max_size: witness.len(),
        witness,
        realizers: verdict.realizers,
        exhaustive: !dfs.truncated,
        nodes_visited: dfs.nodes,
    })
}

/// The explicit shattered set built from the bit-matrix columns: `d =
/// ⌊log₂(k−1)⌋` strings together with the staircase patterns `0^i 1^{…}`
/// that realize all of their subsets.
#[derive(Clone, Debug)]
pub struct Construction {
    pub d: usize,
    pub strings: Vec<Sequence>,
    pub patterns: Vec<Sequence>,
}

/// Build the construction for pattern length `k >= 2`.
///
/// With `L = 2^d <= k-1`, the natural staircase patterns have length
/// `L+1`; when `L+1 < k` each pattern is padded with trailing ones to
/// length exactly `k` and every string receives the matching run of ones,
/// which preserves containment in both directions.
pub fn construct_shattered(k: usize) -> Result<Construction> {
    if k < 2 {
        return Err(Error::InvalidParams(format!(
            "construction needs k >= 2, got {k}"
        )));
    }
    let d = (k - 1).ilog2() as usize;
    let ell = 1usize << d;
    let pad = k - ell - 1;
    let suffix = Sequence::new(vec![1; pad]);

    let strings = if d == 0 {
        Vec::new()
    } else {
        build_b_matrix(d)?
            .columns()
            .iter()
            .map(|col| {
                doubling_map(col)
                    .expect("bit-matrix columns are binary")
                    .concat(&suffix)
            })
            .collect()
    };

    let patterns = (1..=ell)
        .map(|i| {
            let mut p = vec![0u32; i];
            p.extend(std::iter::repeat_n(1, ell - i + 1 + pad));
            Sequence::new(p)
        })
        .collect();

    Ok(Construction {
        d,
        strings,
        patterns,
    })
}

/// `(⌊log₂(k−1)⌋, k)` for `k >= 2`.
pub fn vc_bounds(k: usize) -> Result<(usize, usize)> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("bounds need k >= 2, got {k}")));
    }
    Ok(((k - 1).ilog2() as usize, k))
}
