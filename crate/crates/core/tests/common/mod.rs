//! Test-only reference implementations, kept deliberately separate from
//! the library code they are used to check.

use subseq_core::Sequence;

/// Naive dynamic-programming containment check over a full two-index
/// table. Independent of the library's greedy single-pass oracle.
pub fn dp_is_subsequence(x: &Sequence, y: &Sequence) -> bool {
    let n = x.len();
    let k = y.len();
    // table[i][j]: can y[j..] be embedded into x[i..]
    let mut table = vec![vec![false; k + 1]; n + 1];
    for row in table.iter_mut() {
        row[k] = true;
    }
    for i in (0..n).rev() {
        for j in (0..k).rev() {
            let skip = table[i + 1][j];
            let take = x.symbols()[i] == y.symbols()[j] && table[i + 1][j + 1];
            table[i][j] = skip || take;
        }
    }
    table[0][0]
}

#[allow(dead_code)]
pub fn all_binary(n: usize) -> Vec<Sequence> {
    (0..1u64 << n)
        .map(|v| Sequence::from_lex_index(v, n, 1))
        .collect()
}
