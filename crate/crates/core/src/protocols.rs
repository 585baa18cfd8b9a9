//! The two concrete deterministic protocols, as [`Protocol`] values.
//!
//! * [`TrivialProtocol`] — natural partition only: Bob sends every pattern
//!   character as a fixed-width field, Alice answers with one bit. Exact
//!   cost `k·⌈log₂(m+1)⌉ + 1` on every input.
//! * [`IterativeProtocol`] — any partition. Phase 1 publishes `y`
//!   character by character; phase 2 advances a public frontier through
//!   `x`, one pattern character per round, with both parties announcing
//!   their best candidate position as a fixed-width field. The transcript
//!   alone determines the output, so no answer bit is sent.
//!
//! Wire conventions: fields are most-significant-bit first. Candidate
//! positions are 1-based values `1..=n`; the value `n+1` is the "no
//! candidate" sentinel, so an index field is `⌈log₂(n+2)⌉` bits wide.

use std::str::FromStr;

use crate::seq::{ceil_log2, is_subsequence, is_substring, Sequence, SsdParams};
use crate::sim::{Bipartition, Party, PartyView, Protocol, PublicParams, Transcript, Turn};
use crate::{Error, Result};

/// Which containment relation the trivial protocol answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MatchMode {
    #[default]
    Subsequence,
    Substring,
}

impl MatchMode {
    pub fn matches(self, x: &Sequence, y: &Sequence) -> bool {
        match self {
            MatchMode::Subsequence => is_subsequence(x, y),
            MatchMode::Substring => is_substring(x, y),
        }
    }
}

/// Stable protocol identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProtocolKind {
    Trivial,
    Iterative,
}

impl ProtocolKind {
    pub fn ident(self) -> &'static str {
        match self {
            ProtocolKind::Trivial => "trivial",
            ProtocolKind::Iterative => "iterative",
        }
    }
}

impl FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(ProtocolKind::Trivial),
            "iterative" => Ok(ProtocolKind::Iterative),
            other => Err(Error::UnknownProtocol(other.to_string())),
        }
    }
}

/// Realized worst-case message count of a protocol under its encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostBound {
    pub kind: ProtocolKind,
    pub params: SsdParams,
    pub bits: u64,
}

/// Exact realized bound for the given protocol: `k·⌈log₂(m+1)⌉ + 1` for
/// the trivial protocol, `k·⌈log₂(m+1)⌉ + 2k·⌈log₂(n+2)⌉` for the
/// iterative one.
pub fn cost_bound(kind: ProtocolKind, params: SsdParams) -> CostBound {
    let k = params.k as u64;
    let w_sym = params.alphabet().symbol_width() as u64;
    let bits = match kind {
        ProtocolKind::Trivial => k * w_sym + 1,
        ProtocolKind::Iterative => {
            let w_idx = ceil_log2(params.n as u64 + 2) as u64;
            k * w_sym + 2 * k * w_idx
        }
    };
    CostBound { kind, params, bits }
}

/// Bob transmits all of `y`, Alice answers. Natural partition only.
pub struct TrivialProtocol {
    params: SsdParams,
    mode: MatchMode,
}

impl TrivialProtocol {
    pub fn new(params: SsdParams) -> Self {
        TrivialProtocol {
            params,
            mode: MatchMode::Subsequence,
        }
    }

    /// Variant answering contiguous containment instead.
    pub fn contiguous(params: SsdParams) -> Self {
        TrivialProtocol {
            params,
            mode: MatchMode::Substring,
        }
    }

    pub fn mode(&self) -> MatchMode {
        self.mode
    }

    fn symbol_width(&self) -> u32 {
        self.params.alphabet().symbol_width()
    }

    fn pattern_bits(&self) -> usize {
        self.params.k * self.symbol_width() as usize
    }

    fn decode_pattern(&self, t: &Transcript) -> Sequence {
        let w = self.symbol_width();
        let symbols = (0..self.params.k)
            .map(|j| t.field(j * w as usize, w).expect("phase complete") as u32)
            .collect();
        Sequence::new(symbols)
    }
}

impl Protocol for TrivialProtocol {
    fn name(&self) -> &'static str {
        "trivial"
    }

    fn params(&self) -> SsdParams {
        self.params
    }

    fn supports(&self, partition: &Bipartition) -> bool {
        partition.is_natural()
    }

    fn turn(&self, _public: &PublicParams, t: &Transcript) -> Turn {
        let pattern_bits = self.pattern_bits();
        match t.len() {
            l if l < pattern_bits => Turn::Send(Party::Bob),
            l if l == pattern_bits => Turn::Send(Party::Alice),
            _ => Turn::Halt,
        }
    }

    fn next_bit(&self, view: &PartyView, t: &Transcript) -> bool {
        let w = self.symbol_width() as usize;
        match view.party() {
            Party::Bob => {
                let j = t.len() / w;
                let bitpos = t.len() % w;
                let value = view.y_symbol(j).expect("natural partition: Bob owns y");
                value >> (w - 1 - bitpos) & 1 == 1
            }
            Party::Alice => {
                let x = Sequence::new(
                    (0..self.params.n)
                        .map(|i| view.x_symbol(i).expect("natural partition: Alice owns x"))
                        .collect(),
                );
                let y = self.decode_pattern(t);
                self.mode.matches(&x, &y)
            }
        }
    }

    fn output(&self, _view: &PartyView, t: &Transcript) -> bool {
        t.get(self.pattern_bits()).expect("answer bit present").bit
    }
}

/// Frontier-advancing protocol valid under every bipartition.
pub struct IterativeProtocol {
    params: SsdParams,
}

impl IterativeProtocol {
    pub fn new(params: SsdParams) -> Self {
        IterativeProtocol { params }
    }

    fn widths(&self) -> (u32, u32) {
        (
            self.params.alphabet().symbol_width(),
            ceil_log2(self.params.n as u64 + 2),
        )
    }

    fn sentinel(&self) -> u64 {
        self.params.n as u64 + 1
    }

    /// Smallest owned 1-based x-position after `frontier` whose symbol is
    /// `symbol`, else the sentinel.
    fn candidate(&self, view: &PartyView, frontier: usize, symbol: u32) -> u64 {
        (frontier..self.params.n)
            .find(|&i| view.x_symbol(i) == Some(symbol))
            .map_or(self.sentinel(), |i| i as u64 + 1)
    }
}

/// What an iterative transcript says so far. Derived entirely from public
/// data; both parties and the turn function rely on the same decoding.
#[derive(Clone, Debug)]
pub struct IterativeTrace {
    /// Pattern characters published in phase 1 (all of them, once phase 1
    /// is complete).
    pub pattern: Vec<u32>,
    /// Resolved phase-2 rounds as (alice candidate, bob candidate).
    pub rounds: Vec<(u64, u64)>,
    /// Public frontier after each resolved round; strictly increasing.
    pub frontiers: Vec<usize>,
    /// Final output once the protocol has halted.
    pub outcome: Option<bool>,
    next: Option<NextField>,
}

#[derive(Clone, Copy, Debug)]
enum NextField {
    PatternSymbol { j: usize },
    Candidate { party: Party },
}

impl IterativeTrace {
    /// Decode a (possibly partial) transcript of the iterative protocol.
    pub fn decode(params: SsdParams, t: &Transcript) -> IterativeTrace {
        let w_sym = params.alphabet().symbol_width();
        let w_idx = ceil_log2(params.n as u64 + 2);
        let sentinel = params.n as u64 + 1;

        let mut trace = IterativeTrace {
            pattern: Vec::with_capacity(params.k),
            rounds: Vec::new(),
            frontiers: Vec::new(),
            outcome: None,
            next: None,
        };

        for j in 0..params.k {
            match t.field(j * w_sym as usize, w_sym) {
                Some(v) => trace.pattern.push(v as u32),
                None => {
                    trace.next = Some(NextField::PatternSymbol { j });
                    return trace;
                }
            }
        }

        let base = params.k * w_sym as usize;
        loop {
            if trace.rounds.len() == params.k {
                trace.outcome = Some(true);
                return trace;
            }
            let off = base + trace.rounds.len() * 2 * w_idx as usize;
            let alice = t.field(off, w_idx);
            let bob = t.field(off + w_idx as usize, w_idx);
            match (alice, bob) {
                (Some(a), Some(b)) => {
                    // ownership partitions x, so equal non-sentinel
                    // candidates cannot happen
                    debug_assert!(a != b || a == sentinel, "candidate tie at {a}");
                    let min = a.min(b);
                    trace.rounds.push((a, b));
                    if min == sentinel {
                        trace.outcome = Some(false);
                        return trace;
                    }
                    trace.frontiers.push(min as usize);
                }
                (None, _) => {
                    trace.next = Some(NextField::Candidate {
                        party: Party::Alice,
                    });
                    return trace;
                }
                (Some(_), None) => {
                    trace.next = Some(NextField::Candidate { party: Party::Bob });
                    return trace;
                }
            }
        }
    }

    fn frontier(&self) -> usize {
        self.frontiers.last().copied().unwrap_or(0)
    }
}

impl Protocol for IterativeProtocol {
    fn name(&self) -> &'static str {
        "iterative"
    }

    fn params(&self) -> SsdParams {
        self.params
    }

    fn supports(&self, _partition: &Bipartition) -> bool {
        true
    }

    fn turn(&self, public: &PublicParams, t: &Transcript) -> Turn {
        let trace = IterativeTrace::decode(self.params, t);
        if trace.outcome.is_some() {
            return Turn::Halt;
        }
        match trace.next.expect("unfinished trace names a sender") {
            NextField::PatternSymbol { j } => Turn::Send(public.partition.y_owner(j)),
            NextField::Candidate { party } => Turn::Send(party),
        }
    }

    fn next_bit(&self, view: &PartyView, t: &Transcript) -> bool {
        let (w_sym, w_idx) = self.widths();
        let trace = IterativeTrace::decode(self.params, t);
        match trace.next.expect("next_bit called while running") {
            NextField::PatternSymbol { j } => {
                let value = view.y_symbol(j).expect("sender owns this y character");
                let bitpos = t.len() - j * w_sym as usize;
                value >> (w_sym as usize - 1 - bitpos) & 1 == 1
            }
            NextField::Candidate { party } => {
                debug_assert_eq!(party, view.party());
                let round = trace.rounds.len();
                let symbol = trace.pattern[round];
                let value = self.candidate(view, trace.frontier(), symbol);
                let base = self.params.k * w_sym as usize;
                let field_start = base
                    + round * 2 * w_idx as usize
                    + if party == Party::Bob {
                        w_idx as usize
                    } else {
                        0
                    };
                let bitpos = t.len() - field_start;
                value >> (w_idx as usize - 1 - bitpos) & 1 == 1
            }
        }
    }

    fn output(&self, _view: &PartyView, t: &Transcript) -> bool {
        IterativeTrace::decode(self.params, t)
            .outcome
            .expect("output requested before the protocol halted")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run_deterministic, verify_protocol_exhaustive};

    fn seq(text: &str) -> Sequence {
        Sequence::parse(text).unwrap()
    }

    fn params(n: usize, k: usize, m: u32) -> SsdParams {
        SsdParams::new(n, k, m).unwrap()
    }

    #[test]
    fn trivial_cost_is_exact_on_every_run() {
        let p = TrivialProtocol::new(params(3, 2, 1));
        let natural = Bipartition::natural(3, 2);
        let run = run_deterministic(&p, &seq("010"), &seq("00"), &natural).unwrap();
        assert!(run.output);
        assert_eq!(run.cost, 3);

        // m = 3 needs two bits per character: cost 4*2 + 1 = 9
        let p = TrivialProtocol::new(params(6, 4, 3));
        let natural = Bipartition::natural(6, 4);
        for (x, y) in [("012303", "1233"), ("000000", "0000"), ("332211", "1301")] {
            let run = run_deterministic(&p, &seq(x), &seq(y), &natural).unwrap();
            assert_eq!(run.cost, 9);
            assert_eq!(run.output, is_subsequence(&seq(x), &seq(y)));
        }
    }

    #[test]
    fn trivial_rejects_non_natural_partitions() {
        let p = TrivialProtocol::new(params(3, 2, 1));
        let part = Bipartition::parse("ABABA", 3, 2).unwrap();
        let err = run_deterministic(&p, &seq("010"), &seq("00"), &part).unwrap_err();
        assert!(matches!(err, Error::UnsupportedPartition { .. }));
    }

    #[test]
    fn trivial_contiguous_answers_substring() {
        let p = TrivialProtocol::contiguous(params(4, 2, 1));
        let natural = Bipartition::natural(4, 2);
        // 11 is a subsequence of 1011 but not a substring
        let run = run_deterministic(&p, &seq("1010"), &seq("11"), &natural).unwrap();
        assert!(!run.output);
        let run = run_deterministic(&p, &seq("0110"), &seq("11"), &natural).unwrap();
        assert!(run.output);
        assert_eq!(run.cost, 3);
    }

    #[test]
    fn iterative_handles_arbitrary_partitions() {
        let p = IterativeProtocol::new(params(4, 2, 1));
        let part = Bipartition::parse("ABABAB", 4, 2).unwrap();
        let run = run_deterministic(&p, &seq("0110"), &seq("11"), &part).unwrap();
        assert!(run.output);

        let p = IterativeProtocol::new(params(6, 3, 1));
        for spec in ["natural", "ABABABABA", "BBBBBBBBB", "BABABABAB"] {
            let part = Bipartition::parse(spec, 6, 3).unwrap();
            let run = run_deterministic(&p, &seq("101010"), &seq("111"), &part).unwrap();
            assert!(run.output, "output 0 under {spec}");
        }
    }

    #[test]
    fn iterative_rejects_absent_symbol_in_first_round() {
        let p = IterativeProtocol::new(params(3, 1, 1));
        for part in Bipartition::all(3, 1).unwrap() {
            let run = run_deterministic(&p, &seq("000"), &seq("1"), &part).unwrap();
            assert!(!run.output);
            let trace = IterativeTrace::decode(p.params(), &run.transcript);
            assert_eq!(trace.rounds.len(), 1);
            assert_eq!(trace.outcome, Some(false));
        }
    }

    #[test]
    fn cost_bound_values() {
        assert_eq!(cost_bound(ProtocolKind::Trivial, params(10, 3, 1)).bits, 4);
        assert_eq!(
            cost_bound(ProtocolKind::Iterative, params(10, 3, 1)).bits,
            27
        );
        assert_eq!(cost_bound(ProtocolKind::Trivial, params(3, 2, 3)).bits, 5);
        assert_eq!(
            cost_bound(ProtocolKind::Iterative, params(4, 2, 1)).bits,
            14
        );
    }

    #[test]
    fn protocol_kind_parsing() {
        assert_eq!(
            "trivial".parse::<ProtocolKind>().unwrap(),
            ProtocolKind::Trivial
        );
        assert_eq!(
            "iterative".parse::<ProtocolKind>().unwrap(),
            ProtocolKind::Iterative
        );
        assert!("tribial".parse::<ProtocolKind>().is_err());
    }

    #[test]
    fn trivial_sweep_natural_partition() {
        let p = TrivialProtocol::new(params(4, 2, 1));
        let partitions = vec![Bipartition::natural(4, 2)];
        let report = verify_protocol_exhaustive(&p, &partitions, is_subsequence).unwrap();
        assert_eq!(report.mismatch_count, 0);
        assert_eq!(report.cases, 64);
        // every single run costs exactly k·⌈log₂(m+1)⌉ + 1
        assert_eq!(report.max_cost, 3);
        assert_eq!(report.min_cost, 3);
    }

    #[test]
    fn trivial_contiguous_sweep_against_substring_oracle() {
        let p = TrivialProtocol::contiguous(params(4, 2, 1));
        let partitions = vec![Bipartition::natural(4, 2)];
        let report = verify_protocol_exhaustive(&p, &partitions, is_substring).unwrap();
        assert_eq!(report.mismatch_count, 0);
        assert_eq!(report.max_cost, 3);
    }

    #[test]
    fn iterative_sweep_all_partitions() {
        let p = IterativeProtocol::new(params(4, 2, 1));
        let partitions = Bipartition::all(4, 2).unwrap();
        assert_eq!(partitions.len(), 64);
        let report = verify_protocol_exhaustive(&p, &partitions, is_subsequence).unwrap();
        assert_eq!(report.mismatch_count, 0);
        let bound = cost_bound(ProtocolKind::Iterative, p.params()).bits;
        assert!(report.max_cost as u64 <= bound);
    }

    #[test]
    fn iterative_sweep_random_partitions_larger_alphabet() {
        let p = IterativeProtocol::new(params(5, 3, 2));
        let partitions = Bipartition::random_set(5, 3, 100, 0xC0FFEE);
        let report = verify_protocol_exhaustive(&p, &partitions, is_subsequence).unwrap();
        assert_eq!(report.mismatch_count, 0);
        let bound = cost_bound(ProtocolKind::Iterative, p.params()).bits;
        assert!(report.max_cost as u64 <= bound);
    }

    #[test]
    fn iterative_frontiers_strictly_increase() {
        let p = IterativeProtocol::new(params(6, 3, 1));
        for spec in ["natural", "ABBABAABA"] {
            let part = Bipartition::parse(spec, 6, 3).unwrap();
            for xi in 0..64u64 {
                let x = Sequence::from_lex_index(xi, 6, 1);
                for yi in 0..8u64 {
                    let y = Sequence::from_lex_index(yi, 3, 1);
                    let run = run_deterministic(&p, &x, &y, &part).unwrap();
                    let trace = IterativeTrace::decode(p.params(), &run.transcript);
                    for w in trace.frontiers.windows(2) {
                        assert!(w[0] < w[1]);
                    }
                    assert_eq!(trace.pattern, y.symbols());
                }
            }
        }
    }

    /// Changing one party's private symbols must not alter the other
    /// party's messages before that party itself first speaks differently.
    #[test]
    fn locality_view_swap_probe() {
        let p = IterativeProtocol::new(params(4, 2, 1));
        let part = Bipartition::parse("ABBAAB", 4, 2).unwrap();
        let x = seq("0110");
        let y = seq("10");
        let baseline = run_deterministic(&p, &x, &y, &part).unwrap();

        for pos in 0..6 {
            let owner = part.owner(pos);
            // flip the symbol at one position
            let mut xs = x.symbols().to_vec();
            let mut ys = y.symbols().to_vec();
            if pos < 4 {
                xs[pos] = 1 - xs[pos];
            } else {
                ys[pos - 4] = 1 - ys[pos - 4];
            }
            let run = run_deterministic(&p, &Sequence::new(xs), &Sequence::new(ys), &part).unwrap();
            let diff = (0..baseline.transcript.len().min(run.transcript.len()))
                .find(|&i| baseline.transcript.get(i) != run.transcript.get(i));
            if let Some(i) = diff {
                let sender = run.transcript.get(i).unwrap().sender;
                assert_eq!(
                    sender, owner,
                    "first differing message sent by {sender}, but position {pos} belongs to {owner}"
                );
            }
        }
    }
}
