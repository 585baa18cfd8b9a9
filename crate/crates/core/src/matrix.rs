//! The 0/1 communication matrix of subsequence detection, its exact rank
//! over the rationals, and the consolidated bounds report.
//!
//! Canonical orientation: rows are texts `x` (lexicographic), columns are
//! patterns `y` (lexicographic). Pattern-indexed displays of the small
//! binary case are the transpose of this; [`CommMatrix::transposed_cells`]
//! exists so the two can be compared cell-for-cell without re-deriving
//! anything.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::protocols::{cost_bound, ProtocolKind};
use crate::seq::{is_subsequence, lex_count, Sequence, SsdParams};
use crate::{Error, Result};

/// Default cap on materialized matrix entries (~2^26).
pub const DEFAULT_MATRIX_BUDGET: u64 = 1 << 26;

/// Packed row-major bit storage.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRows {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitRows {
    fn zeroed(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitRows {
            rows,
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.words[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.words[r * self.words_per_row + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }
}

/// The `(m+1)^n x (m+1)^k` matrix whose `(x, y)` entry is 1 iff `y` is a
/// subsequence of `x`.
#[derive(Clone, Debug)]
pub struct CommMatrix {
    params: SsdParams,
    grid: BitRows,
}

impl CommMatrix {
    pub fn params(&self) -> SsdParams {
        self.params
    }

    pub fn rows(&self) -> usize {
        self.grid.rows
    }

    pub fn cols(&self) -> usize {
        self.grid.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.grid.get(row, col)
    }

    /// Text indexing row `row`.
    pub fn row_sequence(&self, row: usize) -> Sequence {
        Sequence::from_lex_index(row as u64, self.params.n, self.params.m)
    }

    /// Pattern indexing column `col`.
    pub fn col_sequence(&self, col: usize) -> Sequence {
        Sequence::from_lex_index(col as u64, self.params.k, self.params.m)
    }

    /// Entry for explicit sequences.
    pub fn entry(&self, x: &Sequence, y: &Sequence) -> Option<bool> {
        let r = x.lex_index(self.params.m)? as usize;
        let c = y.lex_index(self.params.m)? as usize;
        (x.len() == self.params.n && y.len() == self.params.k && r < self.rows() && c < self.cols())
            .then(|| self.get(r, c))
    }

    /// The cells of the transpose, row by row: what a pattern-indexed
    /// display of this matrix looks like.
    pub fn transposed_cells(&self) -> Vec<Vec<bool>> {
        (0..self.cols())
            .map(|c| (0..self.rows()).map(|r| self.get(r, c)).collect())
            .collect()
    }

    /// Copy with rows and columns rearranged: row `r` of the result is row
    /// `row_perm[r]` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> CommMatrix {
        assert_eq!(row_perm.len(), self.rows());
        assert_eq!(col_perm.len(), self.cols());
        let mut grid = BitRows::zeroed(self.rows(), self.cols());
        for (r, &src_r) in row_perm.iter().enumerate() {
            for (c, &src_c) in col_perm.iter().enumerate() {
                grid.set(r, c, self.get(src_r, src_c));
            }
        }
        CommMatrix {
            params: self.params,
            grid,
        }
    }

    /// Export format: header `n k m rows cols`, then one 0/1 row per line.
    pub fn export(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(
            out,
            "{} {} {} {} {}",
            self.params.n,
            self.params.k,
            self.params.m,
            self.rows(),
            self.cols()
        )?;
        for r in 0..self.rows() {
            let line: String = (0..self.cols())
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Materialize the communication matrix under [`DEFAULT_MATRIX_BUDGET`].
pub fn build_comm_matrix(params: SsdParams) -> Result<CommMatrix> {
    build_comm_matrix_budgeted(params, DEFAULT_MATRIX_BUDGET)
}

/// Same with an explicit entry budget. The build is parallel by row.
pub fn build_comm_matrix_budgeted(params: SsdParams, budget: u64) -> Result<CommMatrix> {
    let entries = params.input_pairs().unwrap_or(u128::MAX);
    if entries > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "matrix entries",
            required: entries,
            limit: budget as u128,
        });
    }
    let rows = lex_count(params.n, params.m).expect("within budget") as usize;
    let cols = lex_count(params.k, params.m).expect("within budget") as usize;
    let patterns: Vec<Sequence> = (0..cols)
        .map(|c| Sequence::from_lex_index(c as u64, params.k, params.m))
        .collect();

    let words_per_row = cols.div_ceil(64);
    let words: Vec<u64> = (0..rows)
        .into_par_iter()
        .flat_map_iter(|r| {
            let x = Sequence::from_lex_index(r as u64, params.n, params.m);
            let mut row = vec![0u64; words_per_row];
            for (c, y) in patterns.iter().enumerate() {
                if is_subsequence(&x, y) {
                    row[c / 64] |= 1 << (c % 64);
                }
            }
            row
        })
        .collect();

    Ok(CommMatrix {
        params,
        grid: BitRows {
            rows,
            cols,
            words_per_row,
            words,
        },
    })
}

/// Rank over the rationals, via fraction-free (Bareiss) elimination on
/// arbitrary-precision integers. Deterministic pivoting: first nonzero
/// entry in the current column. No floating point is involved.
pub fn exact_rank(matrix: &CommMatrix) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..matrix.rows())
        .map(|r| {
            (0..matrix.cols())
                .map(|c| {
                    if matrix.get(r, c) {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    exact_integer_rank(rows)
}

/// Bareiss elimination; every intermediate value is a minor of the input,
/// so each division below is exact.
pub(crate) fn exact_integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev = BigInt::one();
    let mut pivot = 0usize;
    for col in 0..ncols {
        if pivot == nrows {
            break;
        }
        let Some(src) = (pivot..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot, src);
        let (top, below) = rows.split_at_mut(pivot + 1);
        let pivot_row = &top[pivot];
        let pivot_val = pivot_row[col].clone();
        for row in below.iter_mut() {
            let lead = std::mem::replace(&mut row[col], BigInt::zero());
            for c in col + 1..ncols {
                let num = &row[c] * &pivot_val - &lead * &pivot_row[c];
                row[c] = num / &prev;
            }
        }
        prev = pivot_val;
        pivot += 1;
    }
    pivot
}

/// The leading square block of the matrix, checked against the two
/// triangularity claims that drive the rank formula.
#[derive(Clone, Debug)]
pub struct TriangularWitness {
    pub params: SsdParams,
    pub size: usize,
    grid: BitRows,
}

impl TriangularWitness {
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.grid.get(r, c)
    }
}

/// First `(m+1)^k` rows of the canonical matrix, all columns. Verifies
/// that under lexicographic indexing the block is lower-triangular with a
/// unit diagonal (the pattern `s` first appears inside the text
/// `0^{n-k}s`, contiguously), and returns it.
pub fn leading_triangular_witness(params: SsdParams) -> Result<TriangularWitness> {
    leading_triangular_witness_budgeted(params, DEFAULT_MATRIX_BUDGET)
}

pub fn leading_triangular_witness_budgeted(
    params: SsdParams,
    budget: u64,
) -> Result<TriangularWitness> {
    let size_u64 = lex_count(params.k, params.m).ok_or(Error::BudgetExceeded {
        what: "triangular witness entries",
        required: u128::MAX,
        limit: budget as u128,
    })?;
    let entries = (size_u64 as u128) * (size_u64 as u128);
    if entries > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "triangular witness entries",
            required: entries,
            limit: budget as u128,
        });
    }
    let size = size_u64 as usize;
    let mut grid = BitRows::zeroed(size, size);
    for r in 0..size {
        // row r of the full matrix: x = 0^{n-k} . (r-th pattern)
        let suffix = Sequence::from_lex_index(r as u64, params.k, params.m);
        let x = Sequence::new(vec![0; params.n - params.k]).concat(&suffix);
        debug_assert_eq!(x.lex_index(params.m), Some(r as u64));
        for c in 0..size {
            let y = Sequence::from_lex_index(c as u64, params.k, params.m);
            let value = is_subsequence(&x, &y);
            if r < c && value {
                return Err(Error::TriangularViolation {
                    row: r,
                    col: c,
                    expected: 0,
                });
            }
            if r == c && !value {
                return Err(Error::TriangularViolation {
                    row: r,
                    col: c,
                    expected: 1,
                });
            }
            grid.set(r, c, value);
        }
    }
    Ok(TriangularWitness { params, size, grid })
}

/// Regime flags for bounds that only hold on part of the parameter space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DisjRegime {
    /// Weight condition `k <= n/2`.
    pub weight_ok: bool,
    /// The disjointness-based bounds are stated for the binary alphabet.
    pub binary_alphabet: bool,
}

impl DisjRegime {
    pub fn applicable(&self) -> bool {
        self.weight_ok && self.binary_alphabet
    }
}

/// Closed-form lower and upper bounds for one parameter triple.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub params: SsdParams,
    /// Exact rank value `(m+1)^k` of the communication matrix.
    pub rank: BigUint,
    /// Rank-based lower bound `k·log₂(m+1)` in bits.
    pub logrank_lb_bits: f64,
    /// Realized trivial-protocol cost `k·⌈log₂(m+1)⌉ + 1`.
    pub trivial_ub_bits: u64,
    /// Realized iterative-protocol bound `k·⌈log₂(m+1)⌉ + 2k·⌈log₂(n+2)⌉`.
    pub iterative_ub_bits: u64,
    /// Exact `C(n, k)` behind the deterministic disjointness bound.
    pub disj_binomial: BigUint,
    /// `log₂ C(n, k)` as a decimal rendering of the exact value above.
    pub disj_det_lb_log2: f64,
    /// Randomized disjointness bound, linear in the weight: `k`.
    pub disj_rand_lb_bits: u64,
    pub disj_regime: DisjRegime,
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn log2_biguint(v: &BigUint) -> f64 {
    // exact for anything desk-scale; for huge values split off the top bits
    let bits = v.bits();
    if bits <= 53 {
        let as_u64: u64 = v.try_into().ok().unwrap_or(u64::MAX);
        (as_u64 as f64).log2()
    } else {
        let shift = bits - 53;
        let top: u64 = (v >> shift).try_into().expect("53 bits fit");
        (top as f64).log2() + shift as f64
    }
}

/// All closed-form bounds for one parameter triple.
pub fn bounds_report(params: SsdParams) -> BoundsReport {
    let size = BigUint::from(params.m as u64 + 1);
    let rank = size.pow(params.k as u32);
    let logrank_lb_bits = params.k as f64 * ((params.m as f64) + 1.0).log2();
    let disj_binomial = binomial(params.n as u64, params.k as u64);
    BoundsReport {
        params,
        logrank_lb_bits,
        rank,
        trivial_ub_bits: cost_bound(ProtocolKind::Trivial, params).bits,
        iterative_ub_bits: cost_bound(ProtocolKind::Iterative, params).bits,
        disj_det_lb_log2: log2_biguint(&disj_binomial),
        disj_binomial,
        disj_rand_lb_bits: params.k as u64,
        disj_regime: DisjRegime {
            weight_ok: 2 * params.k <= params.n,
            binary_alphabet: params.m == 1,
        },
    }
}
