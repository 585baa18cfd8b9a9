//! Constructive gadgets reducing indexing and set disjointness to
//! subsequence detection, plus exhaustive desk-scale equivalence
//! verifiers.
//!
//! * Indexing: from `(x ∈ {0,1}^k, i)` build `x' = x̄₁x₁…x̄ₖxₖ` and
//!   `y' = 0^i 1^{k-i+1}`; then `x_i = 1` exactly when `y'` is a
//!   subsequence of `x'`. Targets the `(2k, k+1)` instance under the
//!   natural partition.
//! * Disjointness: from weight-`k` characteristic vectors `a, b` build
//!   `x = (a₁b₁0)(a₂b₂0)…(aₙbₙ0)` and `y = (10)^{2k}`; the `2k` ones of
//!   `x` are "isolated" exactly when the sets are disjoint. Targets the
//!   `(3n, 4k)` instance under the partition where Alice holds the `aᵢ`
//!   slots and Bob the `bᵢ` slots.

use crate::seq::{doubling_map, is_subsequence, Sequence, SsdParams};
use crate::sim::{Bipartition, Party};
use crate::{Error, Result};

/// How many witnesses a verification report retains.
pub const REPORT_WITNESS_CAP: usize = 10;

/// An indexing instance: Alice's bit string and Bob's 1-based index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndInstance {
    bits: Sequence,
    index: usize,
}

impl IndInstance {
    pub fn new(bits: Sequence, index: usize) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidInstance("indexing needs k >= 1 bits".into()));
        }
        if !bits.is_binary() {
            return Err(Error::InvalidInstance(format!(
                "indexing input must be binary, got {bits}"
            )));
        }
        if index < 1 || index > bits.len() {
            return Err(Error::InvalidInstance(format!(
                "index {index} outside 1..={}",
                bits.len()
            )));
        }
        Ok(IndInstance { bits, index })
    }

    pub fn bits(&self) -> &Sequence {
        &self.bits
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The bit the reduction must recover.
    pub fn answer(&self) -> bool {
        self.bits.symbols()[self.index - 1] == 1
    }
}

/// A disjointness instance: two weight-`k` characteristic vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjInstance {
    a: Sequence,
    b: Sequence,
    weight: usize,
}

impl DisjInstance {
    pub fn new(a: Sequence, b: Sequence, weight: usize) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::MixedLengths(a.len(), b.len()));
        }
        if !a.is_binary() || !b.is_binary() {
            return Err(Error::InvalidInstance(
                "characteristic vectors must be binary".into(),
            ));
        }
        if weight < 1 {
            return Err(Error::InvalidInstance("weight must be >= 1".into()));
        }
        if a.weight() != weight || b.weight() != weight {
            return Err(Error::InvalidInstance(format!(
                "expected Hamming weight {weight} on both sides, got {} and {}",
                a.weight(),
                b.weight()
            )));
        }
        // target instance needs 4k <= 3n so the pattern fits the text
        if 4 * weight > 3 * a.len() {
            return Err(Error::InvalidInstance(format!(
                "weight {weight} too large for universe size {}",
                a.len()
            )));
        }
        Ok(DisjInstance { a, b, weight })
    }

    pub fn a(&self) -> &Sequence {
        &self.a
    }

    pub fn b(&self) -> &Sequence {
        &self.b
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// 1 iff the encoded sets share no element.
    pub fn disjoint(&self) -> bool {
        self.a
            .symbols()
            .iter()
            .zip(self.b.symbols())
            .all(|(&ai, &bi)| ai == 0 || bi == 0)
    }
}

/// A fully specified target instance produced by a reduction.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub x: Sequence,
    pub y: Sequence,
    pub partition: Bipartition,
    pub params: SsdParams,
}

/// Indexing to subsequence detection.
pub fn ind_to_ssd(inst: &IndInstance) -> ReductionOutput {
    let k = inst.bits().len();
    let x = doubling_map(inst.bits()).expect("instance is binary");
    let mut pattern = vec![0u32; inst.index()];
    pattern.extend(std::iter::repeat_n(1, k - inst.index() + 1));
    let y = Sequence::new(pattern);
    let params = SsdParams::new(2 * k, k + 1, 1).expect("2k >= k+1 for k >= 1");
    ReductionOutput {
        x,
        y,
        partition: Bipartition::natural(2 * k, k + 1),
        params,
    }
}

/// Disjointness to subsequence detection. Alice owns the `aᵢ` slots, Bob
/// the `bᵢ` slots; the fixed spacer zeros and all of `y` go to Alice so
/// ownership is total.
pub fn disj_to_ssd(inst: &DisjInstance) -> ReductionOutput {
    let n = inst.a().len();
    let k = inst.weight();
    let mut x = Vec::with_capacity(3 * n);
    let mut owners = Vec::with_capacity(3 * n + 4 * k);
    for i in 0..n {
        x.push(inst.a().symbols()[i]);
        owners.push(Party::Alice);
        x.push(inst.b().symbols()[i]);
        owners.push(Party::Bob);
        x.push(0);
        owners.push(Party::Alice);
    }
    owners.extend(std::iter::repeat_n(Party::Alice, 4 * k));
    let y = Sequence::new([1u32, 0].repeat(2 * k));
    let params = SsdParams::new(3 * n, 4 * k, 1).expect("4k <= 3n enforced on instances");
    ReductionOutput {
        x: Sequence::new(x),
        y,
        partition: Bipartition::from_owners(owners, 3 * n, 4 * k).expect("lengths add up"),
        params,
    }
}

/// One failed equivalence case.
#[derive(Clone, Debug)]
pub struct ReductionWitness {
    pub description: String,
    pub expected: bool,
    pub got: bool,
}

/// Outcome of an exhaustive reduction sweep.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub name: &'static str,
    pub cases: u64,
    pub mismatch_count: u64,
    /// First [`REPORT_WITNESS_CAP`] mismatches in enumeration order.
    pub witnesses: Vec<ReductionWitness>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }

    fn record(&mut self, description: String, expected: bool, got: bool) {
        self.mismatch_count += 1;
        if self.witnesses.len() < REPORT_WITNESS_CAP {
            self.witnesses.push(ReductionWitness {
                description,
                expected,
                got,
            });
        }
    }
}

/// Check `x_i = SSD(x', y')` for every `x` in `{0,1}^k` and every index.
pub fn verify_ind_reduction(k: usize) -> Result<ReductionReport> {
    if !(1..=14).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "indexing sweep supports 1 <= k <= 14, got {k}"
        )));
    }
    let mut report = ReductionReport {
        name: "ind",
        cases: 0,
        mismatch_count: 0,
        witnesses: Vec::new(),
    };
    for value in 0..1u64 << k {
        let bits = Sequence::from_lex_index(value, k, 1);
        for index in 1..=k {
            let inst = IndInstance::new(bits.clone(), index).expect("valid by construction");
            let out = ind_to_ssd(&inst);
            let got = is_subsequence(&out.x, &out.y);
            let expected = inst.answer();
            report.cases += 1;
            if got != expected {
                report.record(
                    format!("x={bits} i={index} x'={} y'={}", out.x, out.y),
                    expected,
                    got,
                );
            }
        }
    }
    Ok(report)
}

/// Check `DISJ(a, b) = SSD(x, y)` for every pair of weight-`k` vectors.
pub fn verify_disj_reduction(n: usize, k: usize) -> Result<ReductionReport> {
    if !(2..=12).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "disjointness sweep supports 2 <= n <= 12, got n={n}"
        )));
    }
    if k < 1 || 2 * k > n {
        return Err(Error::InvalidParams(format!(
            "disjointness sweep needs 1 <= k <= n/2, got k={k} n={n}"
        )));
    }
    let vectors: Vec<Sequence> = weight_masks(n, k)
        .map(|mask| {
            Sequence::new(
                (0..n)
                    .map(|pos| (mask >> (n - 1 - pos) & 1) as u32)
                    .collect(),
            )
        })
        .collect();
    let mut report = ReductionReport {
        name: "disj",
        cases: 0,
        mismatch_count: 0,
        witnesses: Vec::new(),
    };
    for a in &vectors {
        for b in &vectors {
            let inst = DisjInstance::new(a.clone(), b.clone(), k).expect("weights match");
            let out = disj_to_ssd(&inst);
            let got = is_subsequence(&out.x, &out.y);
            let expected = inst.disjoint();
            report.cases += 1;
            if got != expected {
                report.record(
                    format!("a={a} b={b} x={} y={}", out.x, out.y),
                    expected,
                    got,
                );
            }
        }
    }
    Ok(report)
}

/// All `n`-bit masks of popcount `k`, ascending (Gosper's hack).
fn weight_masks(n: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 63 && k >= 1 && k <= n);
    let limit = 1u64 << n;
    let mut next = (1u64 << k) - 1;
    std::iter::from_fn(move || {
        if next >= limit {
            return None;
        }
        let current = next;
        let low = next & next.wrapping_neg();
        let ripple = next + low;
        next = ripple | (((next ^ ripple) >> 2) / low);
        Some(current)
    })
}
