//! Deterministic two-party protocol runner with bit-exact cost accounting.
//!
//! Inputs `(x, y)` are split character-by-character between Alice and Bob
//! by a [`Bipartition`]. A protocol is a [`Protocol`] value whose turn
//! function depends only on public data (parameters, partition,
//! transcript), never on private symbols; the runner owns halting, checks
//! that both parties compute the same output, and guards against
//! non-terminating protocols with a message budget.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::seq::{ceil_log2, Sequence, SsdParams};
use crate::{Error, Result};

/// Default cap on `inputs x partitions` in an exhaustive sweep.
pub const DEFAULT_CASE_BUDGET: u64 = 1 << 26;

/// Cap on how many mismatch witnesses a sweep report retains.
pub const MISMATCH_WITNESS_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Party::Alice => 'A',
            Party::Bob => 'B',
        }
    }
}

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Ownership of the `n + k` input characters: positions `0..n` are the
/// characters of `x`, positions `n..n+k` those of `y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    owners: Vec<Party>,
    n: usize,
    k: usize,
}

impl Bipartition {
    /// Alice holds all of `x`, Bob all of `y`.
    pub fn natural(n: usize, k: usize) -> Self {
        let mut owners = vec![Party::Alice; n];
        owners.extend(std::iter::repeat_n(Party::Bob, k));
        Bipartition { owners, n, k }
    }

    pub fn from_owners(owners: Vec<Party>, n: usize, k: usize) -> Result<Self> {
        if owners.len() != n + k {
            return Err(Error::PartitionFormat {
                spec: format!("{} owners", owners.len()),
                reason: format!("expected exactly n + k = {} positions", n + k),
            });
        }
        Ok(Bipartition { owners, n, k })
    }

    /// Parse a partition spec: the keyword `natural`, or a string over
    /// `{A, B}` of length exactly `n + k`.
    pub fn parse(spec: &str, n: usize, k: usize) -> Result<Self> {
        if spec == "natural" {
            return Ok(Bipartition::natural(n, k));
        }
        if spec.len() != n + k {
            return Err(Error::PartitionFormat {
                spec: spec.to_string(),
                reason: format!("length {} != n + k = {}", spec.len(), n + k),
            });
        }
        let mut owners = Vec::with_capacity(n + k);
        for ch in spec.chars() {
            match ch {
                'A' => owners.push(Party::Alice),
                'B' => owners.push(Party::Bob),
                other => {
                    return Err(Error::PartitionFormat {
                        spec: spec.to_string(),
                        reason: format!("character {other:?} is not A or B"),
                    })
                }
            }
        }
        Ok(Bipartition { owners, n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }

    pub fn owner(&self, pos: usize) -> Party {
        self.owners[pos]
    }

    /// Owner of `x`'s 0-based position `i`.
    pub fn x_owner(&self, i: usize) -> Party {
        debug_assert!(i < self.n);
        self.owners[i]
    }

    /// Owner of `y`'s 0-based position `j`.
    pub fn y_owner(&self, j: usize) -> Party {
        debug_assert!(j < self.k);
        self.owners[self.n + j]
    }

    pub fn is_natural(&self) -> bool {
        self.owners[..self.n].iter().all(|&p| p == Party::Alice)
            && self.owners[self.n..].iter().all(|&p| p == Party::Bob)
    }

    /// All `2^(n+k)` bipartitions, in lexicographic order with A < B.
    pub fn all(n: usize, k: usize) -> Result<Vec<Bipartition>> {
        let positions = n + k;
        if positions >= 24 {
            return Err(Error::BudgetExceeded {
                what: "partition enumeration",
                required: 1u128 << positions,
                limit: 1 << 24,
            });
        }
        let mut out = Vec::with_capacity(1 << positions);
        for mask in 0u32..(1 << positions) {
            let owners = (0..positions)
                .map(|p| {
                    if mask >> (positions - 1 - p) & 1 == 0 {
                        Party::Alice
                    } else {
                        Party::Bob
                    }
                })
                .collect();
            out.push(Bipartition { owners, n, k });
        }
        Ok(out)
    }

    /// `count` pseudo-random bipartitions from a fixed seed. Deterministic
    /// across platforms.
    pub fn random_set(n: usize, k: usize, count: usize, seed: u64) -> Vec<Bipartition> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let owners = (0..n + k)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            Party::Alice
                        } else {
                            Party::Bob
                        }
                    })
                    .collect();
                Bipartition { owners, n, k }
            })
            .collect()
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &p in &self.owners {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bipartition({self})")
    }
}

/// One 1-bit message.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Message {
    pub sender: Party,
    pub bit: bool,
}

/// Ordered list of messages; the cost of a run is its length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    messages: Vec<Message>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn push(&mut self, sender: Party, bit: bool) {
        self.messages.push(Message { sender, bit });
    }

    pub fn get(&self, i: usize) -> Option<Message> {
        self.messages.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Message> {
        self.messages.iter()
    }

    /// Decode `width` consecutive bits starting at message `offset` as an
    /// unsigned value, most significant bit first. `None` if the field is
    /// not fully present yet.
    pub fn field(&self, offset: usize, width: u32) -> Option<u64> {
        if offset + width as usize > self.messages.len() {
            return None;
        }
        let mut v = 0u64;
        for i in 0..width as usize {
            v = (v << 1) | u64::from(self.messages[offset + i].bit);
        }
        Some(v)
    }
}

/// Public data both parties (and the turn function) may read.
#[derive(Clone, Copy)]
pub struct PublicParams<'a> {
    pub params: SsdParams,
    pub partition: &'a Bipartition,
}

/// One party's private view: its own symbols plus everything public.
pub struct PartyView<'a> {
    party: Party,
    public: PublicParams<'a>,
    symbols: Vec<Option<u32>>,
}

impl<'a> PartyView<'a> {
    fn build(party: Party, public: PublicParams<'a>, x: &Sequence, y: &Sequence) -> PartyView<'a> {
        let n = public.params.n;
        let symbols = (0..n + public.params.k)
            .map(|pos| {
                if public.partition.owner(pos) == party {
                    Some(if pos < n {
                        x.symbols()[pos]
                    } else {
                        y.symbols()[pos - n]
                    })
                } else {
                    None
                }
            })
            .collect();
        PartyView {
            party,
            public,
            symbols,
        }
    }

    pub fn party(&self) -> Party {
        self.party
    }

    pub fn public(&self) -> &PublicParams<'a> {
        &self.public
    }

    pub fn owns(&self, pos: usize) -> bool {
        self.symbols[pos].is_some()
    }

    /// Symbol at input position `pos`, if owned by this party.
    pub fn symbol(&self, pos: usize) -> Option<u32> {
        self.symbols[pos]
    }

    /// Symbol of `x` at 0-based position `i`, if owned.
    pub fn x_symbol(&self, i: usize) -> Option<u32> {
        debug_assert!(i < self.public.params.n);
        self.symbols[i]
    }

    /// Symbol of `y` at 0-based position `j`, if owned.
    pub fn y_symbol(&self, j: usize) -> Option<u32> {
        self.symbols[self.public.params.n + j]
    }
}

/// Who speaks next, if anyone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Send(Party),
    Halt,
}

/// A deterministic 1-bit message-passing protocol.
///
/// `turn` may consult only public data; the runner hands each sender its
/// private view exclusively through `next_bit` and `output`, which is what
/// keeps the message sequence well-defined for both parties.
pub trait Protocol: Send + Sync {
    fn name(&self) -> &'static str;

    fn params(&self) -> SsdParams;

    fn supports(&self, partition: &Bipartition) -> bool;

    fn turn(&self, public: &PublicParams, transcript: &Transcript) -> Turn;

    fn next_bit(&self, view: &PartyView, transcript: &Transcript) -> bool;

    fn output(&self, view: &PartyView, transcript: &Transcript) -> bool;
}

/// Outcome of one simulated run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolResult {
    pub output: bool,
    pub transcript: Transcript,
    pub cost: usize,
}

/// Message budget guarding against non-terminating protocol specs.
pub fn message_budget(params: &SsdParams) -> usize {
    let width = ceil_log2(params.n as u64 + params.m as u64 + 2) as usize;
    4 * (params.n + params.k) * width
}

/// Simulate `p` on `(x, y)` under `partition` until its turn function
/// halts. Both parties' outputs are computed and must agree.
pub fn run_deterministic(
    p: &dyn Protocol,
    x: &Sequence,
    y: &Sequence,
    partition: &Bipartition,
) -> Result<ProtocolResult> {
    let params = p.params();
    if x.len() != params.n || y.len() != params.k {
        return Err(Error::InvalidParams(format!(
            "protocol expects |x|={} |y|={}, got |x|={} |y|={}",
            params.n,
            params.k,
            x.len(),
            y.len()
        )));
    }
    if partition.n() != params.n || partition.k() != params.k {
        return Err(Error::InvalidParams(format!(
            "partition is for (n={}, k={}), protocol wants (n={}, k={})",
            partition.n(),
            partition.k(),
            params.n,
            params.k
        )));
    }
    let alphabet = params.alphabet();
    alphabet.validate(x)?;
    alphabet.validate(y)?;
    if !p.supports(partition) {
        return Err(Error::UnsupportedPartition {
            protocol: p.name().to_string(),
            partition: partition.to_string(),
        });
    }

    let public = PublicParams { params, partition };
    let alice = PartyView::build(Party::Alice, public, x, y);
    let bob = PartyView::build(Party::Bob, public, x, y);
    let budget = message_budget(&params);

    let mut transcript = Transcript::new();
    loop {
        match p.turn(&public, &transcript) {
            Turn::Halt => break,
            Turn::Send(party) => {
                if transcript.len() >= budget {
                    return Err(Error::RunawayProtocol { budget });
                }
                let view = match party {
                    Party::Alice => &alice,
                    Party::Bob => &bob,
                };
                let bit = p.next_bit(view, &transcript);
                transcript.push(party, bit);
            }
        }
    }

    let out_a = p.output(&alice, &transcript);
    let out_b = p.output(&bob, &transcript);
    if out_a != out_b {
        return Err(Error::OutputDisagreement {
            alice: out_a,
            bob: out_b,
        });
    }
    let cost = transcript.len();
    Ok(ProtocolResult {
        output: out_a,
        transcript,
        cost,
    })
}

/// One disagreement between a protocol run and the reference oracle.
#[derive(Clone, Debug)]
pub struct SweepMismatch {
    pub x: Sequence,
    pub y: Sequence,
    pub partition: Bipartition,
    pub expected: bool,
    pub got: bool,
}

/// Aggregate result of an exhaustive verification sweep.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub protocol: String,
    pub params: SsdParams,
    pub partition_count: usize,
    pub cases: u64,
    pub max_cost: usize,
    /// Smallest cost observed (`0` for an empty sweep).
    pub min_cost: usize,
    pub mismatch_count: u64,
    /// First [`MISMATCH_WITNESS_CAP`] mismatches in input order.
    pub mismatches: Vec<SweepMismatch>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

/// Run `p` on every input pair and every listed partition, comparing the
/// output against `oracle`; uses [`DEFAULT_CASE_BUDGET`].
pub fn verify_protocol_exhaustive<F>(
    p: &dyn Protocol,
    partitions: &[Bipartition],
    oracle: F,
) -> Result<SweepReport>
where
    F: Fn(&Sequence, &Sequence) -> bool + Sync,
{
    verify_protocol_exhaustive_budgeted(p, partitions, oracle, DEFAULT_CASE_BUDGET)
}

/// Same as [`verify_protocol_exhaustive`] with an explicit case budget.
///
/// The sweep fans out across x values; the fold back into a report is
/// deterministic (mismatches in lexicographic `(x, y, partition)` order)
/// regardless of worker count.
pub fn verify_protocol_exhaustive_budgeted<F>(
    p: &dyn Protocol,
    partitions: &[Bipartition],
    oracle: F,
    case_budget: u64,
) -> Result<SweepReport>
where
    F: Fn(&Sequence, &Sequence) -> bool + Sync,
{
    let params = p.params();
    let total = params
        .input_pairs()
        .and_then(|pairs| pairs.checked_mul(partitions.len() as u128))
        .unwrap_or(u128::MAX);
    if total > case_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "sweep cases",
            required: total,
            limit: case_budget as u128,
        });
    }

    let x_count = crate::seq::lex_count(params.n, params.m).expect("within budget");
    let y_count = crate::seq::lex_count(params.k, params.m).expect("within budget");

    struct RowOutcome {
        max_cost: usize,
        min_cost: usize,
        mismatch_count: u64,
        mismatches: Vec<SweepMismatch>,
    }

    let rows: Result<Vec<RowOutcome>> = (0..x_count)
        .into_par_iter()
        .map(|xi| {
            let x = Sequence::from_lex_index(xi, params.n, params.m);
            let mut out = RowOutcome {
                max_cost: 0,
                min_cost: usize::MAX,
                mismatch_count: 0,
                mismatches: Vec::new(),
            };
            for yi in 0..y_count {
                let y = Sequence::from_lex_index(yi, params.k, params.m);
                let expected = oracle(&x, &y);
                for partition in partitions {
                    let result = run_deterministic(p, &x, &y, partition)?;
                    out.max_cost = out.max_cost.max(result.cost);
                    out.min_cost = out.min_cost.min(result.cost);
                    if result.output != expected {
                        out.mismatch_count += 1;
                        if out.mismatches.len() < MISMATCH_WITNESS_CAP {
                            out.mismatches.push(SweepMismatch {
                                x: x.clone(),
                                y: y.clone(),
                                partition: partition.clone(),
                                expected,
                                got: result.output,
                            });
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();

    let mut report = SweepReport {
        protocol: p.name().to_string(),
        params,
        partition_count: partitions.len(),
        cases: total as u64,
        max_cost: 0,
        min_cost: usize::MAX,
        mismatch_count: 0,
        mismatches: Vec::new(),
    };
    for row in rows? {
        report.max_cost = report.max_cost.max(row.max_cost);
        report.min_cost = report.min_cost.min(row.min_cost);
        report.mismatch_count += row.mismatch_count;
        for w in row.mismatches {
            if report.mismatches.len() < MISMATCH_WITNESS_CAP {
                report.mismatches.push(w);
            }
        }
    }
    if report.min_cost == usize::MAX {
        report.min_cost = 0;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(text: &str) -> Sequence {
        Sequence::parse(text).unwrap()
    }

    #[test]
    fn partition_parsing() {
        let natural = Bipartition::parse("AAABB", 3, 2).unwrap();
        assert!(natural.is_natural());
        assert_eq!(natural, Bipartition::parse("natural", 3, 2).unwrap());
        assert_eq!(natural.to_string(), "AAABB");

        let mixed = Bipartition::parse("ABABA", 3, 2).unwrap();
        assert!(!mixed.is_natural());
        assert_eq!(mixed.x_owner(0), Party::Alice);
        assert_eq!(mixed.x_owner(1), Party::Bob);
        assert_eq!(mixed.x_owner(2), Party::Alice);
        assert_eq!(mixed.y_owner(0), Party::Bob);
        assert_eq!(mixed.y_owner(1), Party::Alice);

        assert!(Bipartition::parse("AAB", 3, 2).is_err());
        assert!(Bipartition::parse("AACBB", 3, 2).is_err());
    }

    #[test]
    fn all_partitions_enumeration() {
        let all = Bipartition::all(2, 1).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].to_string(), "AAA");
        assert_eq!(all[7].to_string(), "BBB");
        let unique: std::collections::HashSet<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(unique.len(), 8);
    }

    #[test]
    fn random_partitions_are_deterministic() {
        let a = Bipartition::random_set(5, 3, 20, 7);
        let b = Bipartition::random_set(5, 3, 20, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.len() == 8));
    }

    #[test]
    fn transcript_fields() {
        let mut t = Transcript::new();
        t.push(Party::Bob, true);
        t.push(Party::Bob, false);
        t.push(Party::Bob, true);
        assert_eq!(t.field(0, 3), Some(0b101));
        assert_eq!(t.field(1, 2), Some(0b01));
        assert_eq!(t.field(2, 2), None);
    }

    /// Toy protocol: Alice announces whether her owned symbols are all
    /// zero, Bob echoes the same bit back, output is that bit. Used to
    /// exercise the runner plumbing, not the containment problem.
    struct EchoAllZero {
        params: SsdParams,
    }

    impl Protocol for EchoAllZero {
        fn name(&self) -> &'static str {
            "echo-all-zero"
        }

        fn params(&self) -> SsdParams {
            self.params
        }

        fn supports(&self, _partition: &Bipartition) -> bool {
            true
        }

        fn turn(&self, _public: &PublicParams, t: &Transcript) -> Turn {
            match t.len() {
                0 => Turn::Send(Party::Alice),
                1 => Turn::Send(Party::Bob),
                _ => Turn::Halt,
            }
        }

        fn next_bit(&self, view: &PartyView, t: &Transcript) -> bool {
            match view.party() {
                Party::Alice => {
                    let total = view.public().params.n + view.public().params.k;
                    (0..total).all(|pos| view.symbol(pos).is_none_or(|s| s == 0))
                }
                Party::Bob => t.get(0).unwrap().bit,
            }
        }

        fn output(&self, _view: &PartyView, t: &Transcript) -> bool {
            t.get(0).unwrap().bit
        }
    }

    #[test]
    fn runner_basic_flow() {
        let p = EchoAllZero {
            params: SsdParams::new(3, 2, 1).unwrap(),
        };
        let part = Bipartition::natural(3, 2);
        let run = run_deterministic(&p, &seq("000"), &seq("11"), &part).unwrap();
        assert!(run.output); // Alice owns only x = 000
        assert_eq!(run.cost, 2);
        assert_eq!(run.transcript.len(), run.cost);
        assert_eq!(run.transcript.get(0).unwrap().sender, Party::Alice);
        assert_eq!(run.transcript.get(1).unwrap().sender, Party::Bob);
    }

    #[test]
    fn runner_rejects_wrong_shapes() {
        let p = EchoAllZero {
            params: SsdParams::new(3, 2, 1).unwrap(),
        };
        let part = Bipartition::natural(3, 2);
        assert!(run_deterministic(&p, &seq("00"), &seq("11"), &part).is_err());
        let part42 = Bipartition::natural(4, 2);
        assert!(run_deterministic(&p, &seq("000"), &seq("11"), &part42).is_err());
        // symbol above the alphabet max
        assert!(run_deterministic(&p, &seq("020"), &seq("11"), &part).is_err());
    }

    struct NeverHalts {
        params: SsdParams,
    }

    impl Protocol for NeverHalts {
        fn name(&self) -> &'static str {
            "never-halts"
        }
        fn params(&self) -> SsdParams {
            self.params
        }
        fn supports(&self, _p: &Bipartition) -> bool {
            true
        }
        fn turn(&self, _public: &PublicParams, _t: &Transcript) -> Turn {
            Turn::Send(Party::Alice)
        }
        fn next_bit(&self, _view: &PartyView, _t: &Transcript) -> bool {
            false
        }
        fn output(&self, _view: &PartyView, _t: &Transcript) -> bool {
            false
        }
    }

    #[test]
    fn runaway_protocol_hits_budget() {
        let params = SsdParams::new(3, 2, 1).unwrap();
        let p = NeverHalts { params };
        let part = Bipartition::natural(3, 2);
        match run_deterministic(&p, &seq("000"), &seq("11"), &part) {
            Err(Error::RunawayProtocol { budget }) => {
                assert_eq!(budget, message_budget(&params));
            }
            other => panic!("expected runaway error, got {other:?}"),
        }
    }

    /// Deliberately unsound: each party outputs whether it owns position 0.
    struct Disagreeing {
        params: SsdParams,
    }

    impl Protocol for Disagreeing {
        fn name(&self) -> &'static str {
            "disagreeing"
        }
        fn params(&self) -> SsdParams {
            self.params
        }
        fn supports(&self, _p: &Bipartition) -> bool {
            true
        }
        fn turn(&self, _public: &PublicParams, t: &Transcript) -> Turn {
            if t.is_empty() {
                Turn::Send(Party::Alice)
            } else {
                Turn::Halt
            }
        }
        fn next_bit(&self, _view: &PartyView, _t: &Transcript) -> bool {
            true
        }
        fn output(&self, view: &PartyView, _t: &Transcript) -> bool {
            view.owns(0)
        }
    }

    #[test]
    fn output_disagreement_is_an_error() {
        let p = Disagreeing {
            params: SsdParams::new(3, 2, 1).unwrap(),
        };
        let part = Bipartition::natural(3, 2);
        match run_deterministic(&p, &seq("000"), &seq("11"), &part) {
            Err(Error::OutputDisagreement { alice, bob }) => {
                assert!(alice);
                assert!(!bob);
            }
            other => panic!("expected disagreement error, got {other:?}"),
        }
    }

    #[test]
    fn sweep_budget_is_enforced() {
        let p = EchoAllZero {
            params: SsdParams::new(3, 2, 1).unwrap(),
        };
        let partitions = vec![Bipartition::natural(3, 2)];
        let err =
            verify_protocol_exhaustive_budgeted(&p, &partitions, |_, _| true, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    proptest! {
        #[test]
        fn identical_runs_yield_identical_transcripts(
            xbits in proptest::collection::vec(0u32..2, 4),
            ybits in proptest::collection::vec(0u32..2, 2),
            mask in 0u32..64,
        ) {
            let params = SsdParams::new(4, 2, 1).unwrap();
            let p = EchoAllZero { params };
            let owners = (0..6).map(|i| {
                if mask >> i & 1 == 0 { Party::Alice } else { Party::Bob }
            }).collect();
            let part = Bipartition::from_owners(owners, 4, 2).unwrap();
            let x = Sequence::new(xbits);
            let y = Sequence::new(ybits);
            let first = run_deterministic(&p, &x, &y, &part).unwrap();
            let second = run_deterministic(&p, &x, &y, &part).unwrap();
            prop_assert_eq!(first, second);
        }
    }
}
