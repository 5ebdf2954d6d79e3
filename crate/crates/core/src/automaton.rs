//! M-automata: finite automata whose edges also carry a monoid element that is
//! multiplied, on the right, into a register the automaton cannot read.
//!
//! A word is accepted when some path reading it ends in a terminal state with the
//! register equal to the identity.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Alphabet, GroupElement, GroupOracle, Letter, Word};
use crate::monoid::{Element, Monoid};
use crate::nfa::FiniteAutomaton;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Element,
    pub input: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    pub register: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MAutomaton {
    monoid: Monoid,
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    terminals: BTreeSet<usize>,
    edges: Vec<Edge>,
    outgoing: Vec<Vec<usize>>,
}

impl MAutomaton {
    pub fn new(
        monoid: Monoid,
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        terminals: BTreeSet<usize>,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        if initial >= states {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} of {states}")));
        }
        if let Some(t) = terminals.iter().find(|&&t| t >= states) {
            return Err(Error::InvalidAutomaton(format!("terminal state {t} of {states}")));
        }
        let mut outgoing = vec![Vec::new(); states];
        for (i, e) in edges.iter().enumerate() {
            if e.src >= states || e.dst >= states {
                return Err(Error::InvalidAutomaton(format!(
                    "edge {i} joins {} and {} but there are {states} states",
                    e.src, e.dst
                )));
            }
            monoid.check(&e.label)?;
            alphabet.check_word(&e.input)?;
            outgoing[e.src].push(i);
        }
        Ok(MAutomaton { monoid, alphabet, states, initial, terminals, edges, outgoing })
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_from(&self, q: usize) -> impl Iterator<Item = &Edge> {
        self.outgoing[q].iter().map(move |&i| &self.edges[i])
    }

    pub fn is_terminal(&self, q: usize) -> bool {
        self.terminals.contains(&q)
    }

    /// Same automaton with a different initial state.
    pub fn rerooted(&self, initial: usize) -> Result<Self> {
        MAutomaton::new(
            self.monoid.clone(),
            self.alphabet.clone(),
            self.states,
            initial,
            self.terminals.clone(),
            self.edges.clone(),
        )
    }

    pub fn with_terminals(&self, terminals: BTreeSet<usize>) -> Result<Self> {
        MAutomaton::new(
            self.monoid.clone(),
            self.alphabet.clone(),
            self.states,
            self.initial,
            terminals,
            self.edges.clone(),
        )
    }

    pub fn with_edges(&self, states: usize, edges: Vec<Edge>) -> Result<Self> {
        MAutomaton::new(
            self.monoid.clone(),
            self.alphabet.clone(),
            states,
            self.initial,
            self.terminals.clone(),
            edges,
        )
    }

    /// Re-indexes edge inputs onto `target`, which must contain every letter of this
    /// automaton's alphabet.
    pub fn with_alphabet(&self, target: &Alphabet) -> Result<Self> {
        let map: Vec<Letter> = self
            .alphabet
            .letters()
            .iter()
            .map(|&c| target.index_of(c))
            .collect::<Result<_>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { input: e.input.iter().map(|&x| map[x]).collect(), ..e.clone() })
            .collect();
        MAutomaton::new(
            self.monoid.clone(),
            target.clone(),
            self.states,
            self.initial,
            self.terminals.clone(),
            edges,
        )
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.monoid.multiply(a, b).expect("edge labels validated at construction")
    }

    /// The classical automaton obtained by forgetting register labels.
    pub fn underlying_automaton(&self) -> FiniteAutomaton {
        self.underlying_from([self.initial].into())
    }

    /// Accepts exactly the words read along some terminal-to-terminal path of the
    /// underlying automaton.
    pub fn between_terminal_fa(&self) -> FiniteAutomaton {
        self.underlying_from(self.terminals.clone())
    }

    fn underlying_from(&self, initials: BTreeSet<usize>) -> FiniteAutomaton {
        let mut fa = FiniteAutomaton::new(self.states, initials, self.terminals.clone());
        for e in &self.edges {
            fa.add_word_edge(e.src, &e.input, e.dst);
        }
        fa
    }

    /// Equivalent automaton whose edges read at most one letter: longer edges become chains
    /// through fresh states, carrying the label on the first step.
    pub fn letter_normalized(&self) -> Result<Self> {
        let mut states = self.states;
        let mut edges = Vec::new();
        for e in &self.edges {
            if e.input.len() <= 1 {
                edges.push(e.clone());
                continue;
            }
            let mut src = e.src;
            for (i, &x) in e.input.iter().enumerate() {
                let last = i + 1 == e.input.len();
                let dst = if last { e.dst } else { states };
                if !last {
                    states += 1;
                }
                let label = if i == 0 { e.label.clone() } else { self.monoid.identity() };
                edges.push(Edge { src, dst, label, input: vec![x] });
                src = dst;
            }
        }
        self.with_edges(states, edges)
    }

    /// Bounded frontier search over configurations reading exactly `word`.
    pub fn run_nondeterministic(&self, word: &[Letter], bounds: &RunBounds) -> Result<NondeterministicRun> {
        self.alphabet.check_word(word)?;
        let n = word.len();
        let mut truncated = false;
        let mut frontiers: Vec<BTreeSet<Configuration>> = vec![BTreeSet::new(); n + 1];
        frontiers[0].insert(Configuration { state: self.initial, register: self.monoid.identity() });
        for i in 0..=n {
            truncated |= self.epsilon_closure(&mut frontiers[i], bounds);
            let current: Vec<Configuration> = frontiers[i].iter().cloned().collect();
            for cfg in &current {
                for e in self.edges_from(cfg.state) {
                    if e.input.is_empty() || !word[i..].starts_with(&e.input) {
                        continue;
                    }
                    let next = Configuration { state: e.dst, register: self.mul(&cfg.register, &e.label) };
                    truncated |= !self.admit(&mut frontiers[i + e.input.len()], next, bounds);
                }
            }
        }
        Ok(NondeterministicRun { frontiers, truncated, terminals: self.terminals.clone(), identity: self.monoid.identity() })
    }

    /// Inserts `cfg` unless it is dead (zero register) or out of bounds; returns false
    /// when something was dropped for exceeding a bound.
    fn admit(&self, set: &mut BTreeSet<Configuration>, cfg: Configuration, bounds: &RunBounds) -> bool {
        if self.monoid.is_zero(&cfg.register) || set.contains(&cfg) {
            return true;
        }
        if self.monoid.size(&cfg.register) > bounds.max_register_size
            || set.len() >= bounds.max_configurations
        {
            return false;
        }
        set.insert(cfg);
        true
    }

    /// Follows empty-input edges; returns true if the chain bound cut anything off.
    fn epsilon_closure(&self, set: &mut BTreeSet<Configuration>, bounds: &RunBounds) -> bool {
        let mut truncated = false;
        let mut layer: Vec<Configuration> = set.iter().cloned().collect();
        for depth in 0..=bounds.max_epsilon_chain {
            let mut next = Vec::new();
            for cfg in &layer {
                for e in self.edges_from(cfg.state).filter(|e| e.input.is_empty()) {
                    let c = Configuration { state: e.dst, register: self.mul(&cfg.register, &e.label) };
                    if set.contains(&c) || self.monoid.is_zero(&c.register) {
                        continue;
                    }
                    if depth == bounds.max_epsilon_chain {
                        return true;
                    }
                    if self.admit(set, c.clone(), bounds) {
                        next.push(c);
                    } else {
                        truncated = true;
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        truncated
    }

    /// Shortest (then lexicographically least) word `w` such that `(1, w)` labels a path
    /// from `src` to `dst`, searching configurations within `bounds`.
    pub fn find_identity_register_path(&self, src: usize, dst: usize, bounds: &SearchBounds) -> PathSearch {
        self.identity_path(src, dst, bounds, false)
    }

    /// As [`Self::find_identity_register_path`], but the path must use at least one edge.
    pub fn find_nonempty_identity_register_path(&self, src: usize, dst: usize, bounds: &SearchBounds) -> PathSearch {
        self.identity_path(src, dst, bounds, true)
    }

    fn identity_path(&self, src: usize, dst: usize, bounds: &SearchBounds, nonempty: bool) -> PathSearch {
        let one = self.monoid.identity();
        // Entries are ordered by (length, word); extending words preserves that order.
        // (length, word, state, register, nonempty)
        type Entry = (usize, Word, usize, Element, bool);
        let mut heap: BinaryHeap<Reverse<Entry>> = BinaryHeap::new();
        let mut seen: BTreeSet<(usize, Element)> = BTreeSet::new();
        heap.push(Reverse((0, Vec::new(), src, one.clone(), false)));
        let mut explored = 0;
        while let Some(Reverse((len, word, q, reg, moved))) = heap.pop() {
            if q == dst && reg == one && (moved || !nonempty) {
                return PathSearch::Found(word);
            }
            if moved && !seen.insert((q, reg.clone())) {
                continue;
            }
            explored += 1;
            for e in self.edges_from(q) {
                let next_len = len + e.input.len();
                if next_len > bounds.max_word_len {
                    continue;
                }
                let r = self.mul(&reg, &e.label);
                if self.monoid.is_zero(&r) || self.monoid.size(&r) > bounds.max_register_size {
                    continue;
                }
                if seen.contains(&(e.dst, r.clone())) {
                    continue;
                }
                let mut w = word.clone();
                w.extend_from_slice(&e.input);
                heap.push(Reverse((next_len, w, e.dst, r, true)));
            }
        }
        PathSearch::NotFound { explored }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunBounds {
    pub max_configurations: usize,
    pub max_register_size: usize,
    pub max_epsilon_chain: usize,
}

impl Default for RunBounds {
    fn default() -> Self {
        RunBounds { max_configurations: 100_000, max_register_size: 64, max_epsilon_chain: 32 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_word_len: usize,
    pub max_register_size: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_word_len: 12, max_register_size: 8 }
    }
}

/// Result of a bounded identity-register path search. `NotFound` is inconclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathSearch {
    Found(Word),
    NotFound { explored: usize },
}

impl PathSearch {
    pub fn found(&self) -> Option<&Word> {
        match self {
            PathSearch::Found(w) => Some(w),
            PathSearch::NotFound { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceptance {
    Accepted,
    Rejected,
    /// No accepting configuration found, but the search was truncated.
    Unknown,
}

impl fmt::Display for Acceptance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Acceptance::Accepted => "ACCEPT",
            Acceptance::Rejected => "REJECT",
            Acceptance::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NondeterministicRun {
    /// Configurations after each prefix of the input, ε-closed.
    pub frontiers: Vec<BTreeSet<Configuration>>,
    pub truncated: bool,
    terminals: BTreeSet<usize>,
    identity: Element,
}

impl NondeterministicRun {
    pub fn frontier(&self) -> &BTreeSet<Configuration> {
        self.frontiers.last().expect("at least one frontier")
    }

    pub fn acceptance(&self) -> Acceptance {
        let accepted = self
            .frontier()
            .iter()
            .any(|c| self.terminals.contains(&c.state) && c.register == self.identity);
        match (accepted, self.truncated) {
            (true, _) => Acceptance::Accepted,
            (false, false) => Acceptance::Rejected,
            (false, true) => Acceptance::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RejectReason {
    NonterminalState,
    RegisterNotIdentity,
    /// No edge for the letter at this position.
    StuckAt(usize),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NonterminalState => f.write_str("nonterminal-state"),
            RejectReason::RegisterNotIdentity => f.write_str("register-not-identity"),
            RejectReason::StuckAt(i) => write!(f, "stuck-at({i})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(RejectReason),
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// Configurations visited, starting with the initial one.
    pub trace: Vec<Configuration>,
}

impl RunOutcome {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn last(&self) -> &Configuration {
        self.trace.last().expect("trace starts with the initial configuration")
    }
}

/// An M-automaton reading one letter per edge with at most one edge per `(state, letter)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicMAutomaton {
    inner: MAutomaton,
    table: Vec<Vec<Option<usize>>>,
}

impl DeterministicMAutomaton {
    pub fn new(inner: MAutomaton) -> Result<Self> {
        let mut table = vec![vec![None; inner.alphabet.len()]; inner.states];
        for (i, e) in inner.edges.iter().enumerate() {
            let [x] = e.input[..] else {
                return Err(Error::NotSingleLetter { edge: i, len: e.input.len() });
            };
            if table[e.src][x].is_some() {
                return Err(Error::Nondeterministic {
                    edge: i,
                    state: e.src,
                    letter: inner.alphabet.char_of(x),
                });
            }
            table[e.src][x] = Some(i);
        }
        Ok(DeterministicMAutomaton { inner, table })
    }

    pub fn automaton(&self) -> &MAutomaton {
        &self.inner
    }

    pub fn into_inner(self) -> MAutomaton {
        self.inner
    }

    pub fn transition(&self, q: usize, x: Letter) -> Option<&Edge> {
        self.table[q][x].map(|i| &self.inner.edges[i])
    }

    /// First `(state, letter)` among `states` without an outgoing edge.
    pub fn missing_transition<I: IntoIterator<Item = usize>>(&self, states: I) -> Option<(usize, Letter)> {
        states.into_iter().find_map(|q| self.table[q].iter().position(Option::is_none).map(|x| (q, x)))
    }

    pub fn is_complete(&self) -> bool {
        self.missing_transition(0..self.inner.states).is_none()
    }

    pub fn rerooted(&self, initial: usize) -> Result<Self> {
        DeterministicMAutomaton::new(self.inner.rerooted(initial)?)
    }

    /// Follows the unique path for `word` from the initial state.
    pub fn run(&self, word: &[Letter]) -> Result<RunOutcome> {
        self.run_from(self.inner.initial, word)
    }

    pub fn run_from(&self, start: usize, word: &[Letter]) -> Result<RunOutcome> {
        self.inner.alphabet.check_word(word)?;
        let mut cfg = Configuration { state: start, register: self.inner.monoid.identity() };
        let mut trace = vec![cfg.clone()];
        for (i, &x) in word.iter().enumerate() {
            let Some(e) = self.transition(cfg.state, x) else {
                return Ok(RunOutcome { verdict: Verdict::Rejected(RejectReason::StuckAt(i)), trace });
            };
            cfg = Configuration { state: e.dst, register: self.inner.mul(&cfg.register, &e.label) };
            trace.push(cfg.clone());
        }
        let verdict = if !self.inner.is_terminal(cfg.state) {
            Verdict::Rejected(RejectReason::NonterminalState)
        } else if !self.inner.monoid.is_identity(&cfg.register) {
            Verdict::Rejected(RejectReason::RegisterNotIdentity)
        } else {
            Verdict::Accepted
        };
        Ok(RunOutcome { verdict, trace })
    }

    /// End configuration of the path reading `word` from `start`, if the path exists.
    pub fn read_from(&self, start: usize, word: &[Letter]) -> Option<Configuration> {
        let mut state = start;
        let mut reg = self.inner.monoid.identity();
        for &x in word {
            let e = self.transition(state, x)?;
            reg = self.inner.mul(&reg, &e.label);
            state = e.dst;
        }
        Some(Configuration { state, register: reg })
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.read_from(self.inner.initial, word)
            .is_some_and(|c| self.inner.is_terminal(c.state) && self.inner.monoid.is_identity(&c.register))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    Deterministic,
    Nondeterministic(RunBounds),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub word: Word,
    pub automaton: bool,
    pub expected: bool,
}

/// Exhaustive comparison of an automaton against a membership predicate.
#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub max_len: usize,
    pub words: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Words whose nondeterministic verdict was cut off by bounds.
    pub unknown: Vec<Word>,
    /// Words decided without simulation; see [`prefix_agreement`].
    pub pruned: usize,
}

impl AgreementReport {
    pub fn is_exact(&self) -> bool {
        self.disagreements.is_empty() && self.unknown.is_empty()
    }
}

pub fn language_agreement<P>(a: &MAutomaton, membership: P, max_len: usize, mode: RunMode) -> Result<AgreementReport>
where
    P: Fn(&[Letter]) -> bool,
{
    let det = match mode {
        RunMode::Deterministic => Some(DeterministicMAutomaton::new(a.clone())?),
        RunMode::Nondeterministic(_) => None,
    };
    let mut report =
        AgreementReport { max_len, words: 0, agreements: 0, disagreements: Vec::new(), unknown: Vec::new(), pruned: 0 };
    for w in a.alphabet().words(max_len) {
        report.words += 1;
        let expected = membership(&w);
        let got = match (&det, mode) {
            (Some(d), _) => d.accepts(&w),
            (None, RunMode::Nondeterministic(bounds)) => match a.run_nondeterministic(&w, &bounds)?.acceptance() {
                Acceptance::Accepted => true,
                Acceptance::Rejected => false,
                Acceptance::Unknown => {
                    report.unknown.push(w);
                    continue;
                }
            },
            (None, RunMode::Deterministic) => unreachable!(),
        };
        if got == expected {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement { word: w, automaton: got, expected });
        }
    }
    Ok(report)
}

/// A language given letter by letter, for [`prefix_agreement`].
pub trait PrefixOracle {
    type State: Clone;
    fn start(&self) -> Self::State;
    fn step(&self, s: &Self::State, x: Letter) -> Self::State;
    fn accepts(&self, s: &Self::State) -> bool;
    /// True only if no extension of the current prefix is in the language.
    fn dead(&self, s: &Self::State) -> bool;
}

/// [`PrefixOracle`] for a word-problem oracle.
pub struct WordProblem<'a>(pub &'a GroupOracle);

impl PrefixOracle for WordProblem<'_> {
    type State = GroupElement;

    fn start(&self) -> GroupElement {
        self.0.identity()
    }

    fn step(&self, g: &GroupElement, x: Letter) -> GroupElement {
        self.0.multiply(g, self.0.letter_image(x))
    }

    fn accepts(&self, g: &GroupElement) -> bool {
        self.0.kind().is_identity(g)
    }

    fn dead(&self, _: &GroupElement) -> bool {
        false
    }
}

/// Exhaustive comparison with `oracle` on every word of length at most `max_len`, walking
/// the prefix tree. A subtree is skipped only when the oracle reports it dead and every
/// configuration of the automaton holds a register with no right inverse; then both sides
/// reject all of it, and those words are counted in `pruned` and `agreements`.
pub fn prefix_agreement<O: PrefixOracle>(
    a: &MAutomaton,
    oracle: &O,
    max_len: usize,
    bounds: &RunBounds,
) -> Result<AgreementReport> {
    let a = a.letter_normalized()?;
    let letters = a.alphabet.len();
    // subtree[r] = number of nonempty words of length at most r
    let mut subtree = vec![0usize; max_len + 1];
    for r in 1..=max_len {
        subtree[r] = subtree[r - 1].saturating_mul(letters).saturating_add(letters);
    }
    let mut report = AgreementReport {
        max_len,
        words: 0,
        agreements: 0,
        disagreements: Vec::new(),
        unknown: Vec::new(),
        pruned: 0,
    };
    let mut start = BTreeSet::from([Configuration { state: a.initial, register: a.monoid.identity() }]);
    let truncated = a.epsilon_closure(&mut start, bounds);
    let mut stack = vec![(Vec::new(), start, truncated, oracle.start())];
    while let Some((word, frontier, truncated, o)) = stack.pop() {
        report.words += 1;
        let expected = oracle.accepts(&o);
        let accepted = frontier.iter().any(|c| a.is_terminal(c.state) && a.monoid.is_identity(&c.register));
        if !accepted && truncated {
            report.unknown.push(word.clone());
        } else if accepted == expected {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement { word: word.clone(), automaton: accepted, expected });
        }
        let remaining = max_len - word.len();
        if remaining == 0 {
            continue;
        }
        if !truncated && oracle.dead(&o) && frontier.iter().all(|c| !a.monoid.has_right_inverse(&c.register)) {
            report.words += subtree[remaining];
            report.agreements += subtree[remaining];
            report.pruned += subtree[remaining];
            continue;
        }
        for x in (0..letters).rev() {
            let mut next = BTreeSet::new();
            let mut t = truncated;
            for c in &frontier {
                for e in a.edges_from(c.state).filter(|e| e.input == [x]) {
                    let cfg = Configuration { state: e.dst, register: a.mul(&c.register, &e.label) };
                    t |= !a.admit(&mut next, cfg, bounds);
                }
            }
            t |= a.epsilon_closure(&mut next, bounds);
            let mut w = word.clone();
            w.push(x);
            stack.push((w, next, t, oracle.step(&o, x)));
        }
    }
    Ok(report)
}

/// Multiplies every edge entering `q` on the right by `unit` and every edge leaving `q`
/// on the left by its inverse. Register products along paths that pass through `q`
/// without starting or ending there are unchanged.
pub fn conjugate_state(a: &MAutomaton, q: usize, unit: &Element) -> Result<MAutomaton> {
    let m = a.monoid();
    let inv = m
        .try_two_sided_inverse(unit)
        .ok_or_else(|| Error::InvalidAutomaton(format!("{unit} is not a unit")))?;
    let edges = a
        .edges()
        .iter()
        .map(|e| {
            let mut label = e.label.clone();
            if e.src == q {
                label = m.multiply(&inv, &label)?;
            }
            if e.dst == q {
                label = m.multiply(&label, unit)?;
            }
            Ok(Edge { label, ..e.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    a.with_edges(a.state_count(), edges)
}

/// Replaces each edge `(p, g, u, q)` by `(p, g1, u, r)` and `(r, g2, ε, q)` through a fresh
/// state `r`, where `factor(g) = (g1, g2)` must satisfy `g1 · g2 = g`.
pub fn split_edge_labels<F>(a: &MAutomaton, factor: F) -> Result<MAutomaton>
where
    F: Fn(&Element) -> (Element, Element),
{
    let m = a.monoid();
    let mut states = a.state_count();
    let mut edges = Vec::new();
    for e in a.edges() {
        let (g1, g2) = factor(&e.label);
        if m.multiply(&g1, &g2)? != e.label {
            return Err(Error::InvalidAutomaton(format!("{g1} · {g2} is not {}", e.label)));
        }
        let r = states;
        states += 1;
        edges.push(Edge { src: e.src, dst: r, label: g1, input: e.input.clone() });
        edges.push(Edge { src: r, dst: e.dst, label: g2, input: Vec::new() });
    }
    a.with_edges(states, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{counter_word_problem_automaton, dyck_automaton_rank, signed_alphabet};

    fn v(x: i64) -> Element {
        Element::Vector(vec![x])
    }

    fn edge(src: usize, dst: usize, label: Element, input: &[Letter]) -> Edge {
        Edge { src, dst, label, input: input.to_vec() }
    }

    fn z() -> DeterministicMAutomaton {
        counter_word_problem_automaton(1).unwrap()
    }

    /// The coset automaton for `2ℤ ≤ ℤ` with `phi(2) = 1`.
    fn schreier_z() -> DeterministicMAutomaton {
        let edges = vec![edge(0, 1, v(0), &[0]), edge(1, 0, v(1), &[0]), edge(0, 1, v(-1), &[1]), edge(1, 0, v(0), &[1])];
        let a = MAutomaton::new(Monoid::FreeAbelian { rank: 1 }, signed_alphabet(1).unwrap(), 2, 0, [0].into(), edges);
        DeterministicMAutomaton::new(a.unwrap()).unwrap()
    }

    fn exponent_sum(w: &[Letter]) -> i64 {
        w.iter().map(|&x| if x == 0 { 1 } else { -1 }).sum()
    }

    #[test]
    fn deterministic_runs() {
        let a = z();
        let out = a.run(&[0, 1, 0, 1]).unwrap();
        assert_eq!(out.verdict, Verdict::Accepted);
        assert_eq!(out.last().register, v(0));
        assert_eq!(out.trace.len(), 5);
        let out = a.run(&[0, 0]).unwrap();
        assert_eq!(out.verdict, Verdict::Rejected(RejectReason::RegisterNotIdentity));
        assert_eq!(out.last().register, v(2));
        assert!(a.run(&[7]).is_err());
    }

    #[test]
    fn dyck_accepts_brackets() {
        let d = dyck_automaton_rank(2).unwrap();
        let w = d.automaton().alphabet().parse_word("[]").unwrap();
        assert!(d.accepts(&w));
        let w = d.automaton().alphabet().parse_word("[)").unwrap();
        assert!(!d.accepts(&w));
    }

    #[test]
    fn missing_edge_is_stuck() {
        let a = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            1,
            0,
            [0].into(),
            vec![edge(0, 0, v(1), &[0])],
        )
        .unwrap();
        let d = DeterministicMAutomaton::new(a).unwrap();
        assert_eq!(d.run(&[0, 1, 0]).unwrap().verdict, Verdict::Rejected(RejectReason::StuckAt(1)));
        assert!(!d.is_complete());
        assert_eq!(d.missing_transition([0]), Some((0, 1)));
    }

    #[test]
    fn determinism_is_enforced() {
        let alphabet = signed_alphabet(1).unwrap();
        let m = Monoid::FreeAbelian { rank: 1 };
        let twice = vec![edge(0, 0, v(1), &[0]), edge(0, 0, v(-1), &[0])];
        let a = MAutomaton::new(m.clone(), alphabet.clone(), 1, 0, [0].into(), twice).unwrap();
        assert!(matches!(DeterministicMAutomaton::new(a), Err(Error::Nondeterministic { edge: 1, state: 0, .. })));
        let empty = vec![edge(0, 0, v(1), &[])];
        let a = MAutomaton::new(m, alphabet, 1, 0, [0].into(), empty).unwrap();
        assert!(matches!(DeterministicMAutomaton::new(a), Err(Error::NotSingleLetter { edge: 0, len: 0 })));
    }

    #[test]
    fn sign_guessing_frontier() {
        let m = Monoid::FreeGroup { rank: 1 };
        let a_up = m.parse_element("a").unwrap();
        let a_down = m.parse_element("A").unwrap();
        let a = MAutomaton::new(
            m.clone(),
            signed_alphabet(1).unwrap(),
            1,
            0,
            [0].into(),
            vec![edge(0, 0, a_up, &[0]), edge(0, 0, a_down, &[0])],
        )
        .unwrap();
        let run = a.run_nondeterministic(&[0, 0], &RunBounds::default()).unwrap();
        let registers: BTreeSet<String> = run.frontier().iter().map(|c| m.format_element(&c.register)).collect();
        assert_eq!(registers, ["aa", "e", "AA"].map(String::from).into());
        assert!(run.frontier().iter().all(|c| c.state == 0));
        assert_eq!(run.acceptance(), Acceptance::Accepted);
        assert!(!run.truncated);
    }

    #[test]
    fn empty_word_frontier_is_epsilon_closure() {
        let a = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            3,
            0,
            [2].into(),
            vec![edge(0, 1, v(1), &[]), edge(1, 2, v(1), &[]), edge(2, 2, v(0), &[])],
        )
        .unwrap();
        let run = a.run_nondeterministic(&[], &RunBounds::default()).unwrap();
        let expected: BTreeSet<Configuration> = [(0, 0), (1, 1), (2, 2)]
            .into_iter()
            .map(|(state, r)| Configuration { state, register: v(r) })
            .collect();
        assert_eq!(run.frontier(), &expected);
        assert_eq!(run.acceptance(), Acceptance::Rejected);
    }

    #[test]
    fn register_growth_is_truncated() {
        // An ε-loop adding 1 forever: every bound is eventually hit.
        let a = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            1,
            0,
            [0].into(),
            vec![edge(0, 0, v(1), &[]), edge(0, 0, v(-8), &[0])],
        )
        .unwrap();
        // Accepting "a" needs the register to pass through a value of size at least 4.
        let bounds = RunBounds { max_configurations: 1000, max_register_size: 3, max_epsilon_chain: 20 };
        let run = a.run_nondeterministic(&[0], &bounds).unwrap();
        assert!(run.truncated);
        assert_eq!(run.acceptance(), Acceptance::Unknown);
        let wide = RunBounds { max_register_size: 10, ..bounds };
        assert_eq!(a.run_nondeterministic(&[0], &wide).unwrap().acceptance(), Acceptance::Accepted);
    }

    #[test]
    fn deterministic_and_nondeterministic_runs_agree() {
        for d in [z(), schreier_z()] {
            for w in d.automaton().alphabet().words(8) {
                let run = d.automaton().run_nondeterministic(&w, &RunBounds::default()).unwrap();
                assert!(run.frontiers.iter().all(|f| f.len() <= 1));
                assert_eq!(run.acceptance() == Acceptance::Accepted, d.accepts(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn underlying_automaton_contains_language() {
        let fa = z().automaton().underlying_automaton();
        assert!(signed_alphabet(1).unwrap().words(5).all(|w| fa.accepts(&w)));
        let d = dyck_automaton_rank(2).unwrap();
        let fa = d.automaton().underlying_automaton();
        for w in d.automaton().alphabet().words(6) {
            assert!(!d.accepts(&w) || fa.accepts(&w));
        }
        let none = z().automaton().with_terminals(BTreeSet::new()).unwrap().underlying_automaton();
        assert!(signed_alphabet(1).unwrap().words(5).all(|w| !none.accepts(&w)));
    }

    #[test]
    fn between_terminal_words() {
        let loop_a = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            1,
            0,
            [0].into(),
            vec![edge(0, 0, v(1), &[0])],
        )
        .unwrap();
        let fa = loop_a.between_terminal_fa();
        for w in signed_alphabet(1).unwrap().words(6) {
            assert_eq!(fa.accepts(&w), w.iter().all(|&x| x == 0));
        }
        let fa = schreier_z().automaton().between_terminal_fa();
        for w in signed_alphabet(1).unwrap().words(8) {
            assert_eq!(fa.accepts(&w), w.len() % 2 == 0);
        }
        let fa = loop_a.with_terminals(BTreeSet::new()).unwrap().between_terminal_fa();
        assert!(!fa.accepts(&[]));
    }

    #[test]
    fn identity_register_paths() {
        let d = schreier_z();
        let a = d.automaton();
        let b = SearchBounds { max_word_len: 10, max_register_size: 6 };
        assert_eq!(a.find_identity_register_path(0, 0, &b), PathSearch::Found(vec![]));
        assert_eq!(a.find_nonempty_identity_register_path(0, 0, &b), PathSearch::Found(vec![0, 1]));
        // The edge 0 -a-> 1 carries the identity label.
        assert_eq!(a.find_identity_register_path(0, 1, &b), PathSearch::Found(vec![0]));
        // No path returns to 0 from 1 with register 0 except through A.
        assert_eq!(a.find_identity_register_path(1, 0, &b), PathSearch::Found(vec![1]));
        let none = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            2,
            0,
            [0].into(),
            vec![edge(0, 1, v(1), &[0])],
        )
        .unwrap();
        assert!(none.find_identity_register_path(0, 1, &b).found().is_none());
    }

    #[test]
    fn agreement_with_exponent_sum() {
        let rep = language_agreement(z().automaton(), |w| exponent_sum(w) == 0, 10, RunMode::Deterministic).unwrap();
        assert_eq!(rep.words, 2047);
        assert!(rep.is_exact());
        let broken = z().automaton().with_terminals(BTreeSet::new()).unwrap();
        let rep = language_agreement(&broken, |w| exponent_sum(w) == 0, 4, RunMode::Deterministic).unwrap();
        assert_eq!(rep.disagreements[0].word, Vec::<Letter>::new());
    }

    struct ExponentSum;

    impl PrefixOracle for ExponentSum {
        type State = i64;
        fn start(&self) -> i64 {
            0
        }
        fn step(&self, s: &i64, x: Letter) -> i64 {
            s + if x == 0 { 1 } else { -1 }
        }
        fn accepts(&self, s: &i64) -> bool {
            *s == 0
        }
        fn dead(&self, _: &i64) -> bool {
            false
        }
    }

    #[test]
    fn prefix_agreement_matches_enumeration() {
        for d in [z(), schreier_z()] {
            let rep = prefix_agreement(d.automaton(), &ExponentSum, 9, &RunBounds::default()).unwrap();
            assert_eq!(rep.words, 1023);
            assert!(rep.is_exact());
            assert_eq!(rep.pruned, 0);
        }
        let broken = schreier_z().automaton().with_terminals([1].into()).unwrap();
        let a = prefix_agreement(&broken, &ExponentSum, 6, &RunBounds::default()).unwrap();
        let b = language_agreement(&broken, |w| exponent_sum(w) == 0, 6, RunMode::Deterministic).unwrap();
        assert_eq!(a.disagreements.len(), b.disagreements.len());
    }

    #[test]
    fn multi_letter_edges_are_split() {
        let a = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            1,
            0,
            [0].into(),
            vec![edge(0, 0, v(1), &[0, 0]), edge(0, 0, v(-1), &[1])],
        )
        .unwrap();
        let n = a.letter_normalized().unwrap();
        assert_eq!(n.state_count(), 2);
        for w in a.alphabet().words(7) {
            let x = a.run_nondeterministic(&w, &RunBounds::default()).unwrap().acceptance();
            let y = n.run_nondeterministic(&w, &RunBounds::default()).unwrap().acceptance();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn blind_rewrites_keep_verdicts() {
        let d = schreier_z();
        let a = d.automaton();
        let conj = conjugate_state(a, 1, &v(5)).unwrap();
        let conj0 = conjugate_state(a, 0, &v(-3)).unwrap();
        let split = split_edge_labels(a, |g| match g {
            Element::Vector(x) => (Element::Vector(vec![x[0] + 2]), Element::Vector(vec![-2])),
            _ => unreachable!(),
        })
        .unwrap();
        let conj = DeterministicMAutomaton::new(conj).unwrap();
        let conj0 = DeterministicMAutomaton::new(conj0).unwrap();
        for w in a.alphabet().words(8) {
            let want = d.accepts(&w);
            assert_eq!(conj.accepts(&w), want);
            assert_eq!(conj0.accepts(&w), want);
            let got = split.run_nondeterministic(&w, &RunBounds::default()).unwrap().acceptance();
            assert_eq!(got == Acceptance::Accepted, want);
        }
        assert!(split_edge_labels(a, |g| (g.clone(), v(1))).is_err());
        assert!(conjugate_state(&dyck_automaton_rank(1).unwrap().into_inner(), 0, &Element::Poly(crate::monoid::Polycyclic::push(0))).is_err());
    }
}
