//! Worked families of M-automata: blind counter machines (free abelian registers),
//! pushdown automata recast over polycyclic monoids, Dyck automata, and an exhaustive
//! search showing that small deterministic polycyclic automata cannot accept `WP(ℤ)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::{
    prefix_agreement, AgreementReport, DeterministicMAutomaton, Edge, MAutomaton, PrefixOracle, RunBounds, WordProblem,
};
use crate::error::{Error, Result};
use crate::group::{Alphabet, GroupElement, GroupKind, GroupOracle, Letter};
use crate::report::{Report, Status};
use crate::monoid::{generator_char, Element, Monoid, Polycyclic};

/// One counter-machine edge: `(src, dst, counter increments, input word)`.
pub type CounterEdge<'a> = (usize, usize, &'a [i64], &'a str);

/// A `ℤⁿ`-automaton: a blind machine with `n` integer counters that accepts when all are zero.
pub fn make_counter_automaton(
    n: usize,
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    terminals: BTreeSet<usize>,
    edges: &[CounterEdge<'_>],
) -> Result<MAutomaton> {
    let monoid = Monoid::FreeAbelian { rank: n };
    let mut out = Vec::with_capacity(edges.len());
    for &(src, dst, delta, input) in edges {
        if delta.len() != n {
            return Err(Error::InvalidAutomaton(format!(
                "counter edge has {} components, expected {n}",
                delta.len()
            )));
        }
        out.push(Edge { src, dst, label: Element::Vector(delta.to_vec()), input: alphabet.parse_word(input)? });
    }
    MAutomaton::new(monoid, alphabet, states, initial, terminals, out)
}

/// Letters `a, A, b, B, ..` for `n` generators, each paired with its capital.
pub fn signed_alphabet(n: usize) -> Result<Alphabet> {
    let mut letters = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        let c = generator_char(i);
        letters.push(c);
        letters.push(c.to_ascii_uppercase());
        pairs.push((c, c.to_ascii_uppercase()));
    }
    Alphabet::new(letters)?.with_inverses(&pairs)
}

/// Single-state counter automaton accepting `WP(ℤⁿ)` over [`signed_alphabet`].
pub fn counter_word_problem_automaton(n: usize) -> Result<DeterministicMAutomaton> {
    let alphabet = signed_alphabet(n)?;
    let units: Vec<Vec<i64>> = (0..n)
        .flat_map(|i| {
            let mut up = vec![0; n];
            up[i] = 1;
            let down: Vec<i64> = up.iter().map(|x| -x).collect();
            [up, down]
        })
        .collect();
    let inputs: Vec<String> = alphabet.letters().iter().map(char::to_string).collect();
    let edges: Vec<CounterEdge<'_>> =
        units.iter().zip(&inputs).map(|(u, x)| (0, 0, u.as_slice(), x.as_str())).collect();
    DeterministicMAutomaton::new(make_counter_automaton(n, alphabet, 1, 0, [0].into(), &edges)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StackAction {
    Push(usize),
    Pop(usize),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaTransition {
    pub src: usize,
    pub dst: usize,
    /// `None` reads nothing.
    pub input: Option<Letter>,
    pub action: StackAction,
}

/// A pushdown automaton accepting by final state with empty stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushdownAutomaton {
    pub alphabet: Alphabet,
    pub stack_alphabet: Vec<char>,
    pub states: usize,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    pub transitions: Vec<PdaTransition>,
}

impl PushdownAutomaton {
    pub fn validate(&self) -> Result<()> {
        if self.initial >= self.states || self.finals.iter().any(|&q| q >= self.states) {
            return Err(Error::InvalidAutomaton("state index out of range".into()));
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if t.src >= self.states || t.dst >= self.states {
                return Err(Error::InvalidAutomaton(format!("transition {i} uses a missing state")));
            }
            if let Some(x) = t.input {
                self.alphabet.check_word(&[x])?;
            }
            if let StackAction::Push(s) | StackAction::Pop(s) = t.action {
                if s >= self.stack_alphabet.len() {
                    return Err(Error::InvalidAutomaton(format!("transition {i} uses stack letter {s}")));
                }
            }
        }
        Ok(())
    }
}

/// Replaces stack actions by polycyclic register labels: push `x` ↦ `(ε|x)`, pop `x` ↦ `(x|ε)`,
/// no action ↦ identity. A run's register is the composite of its stack actions, which is the
/// identity exactly when the actions form a balanced history from the empty stack.
pub fn pda_to_polycyclic(pda: &PushdownAutomaton) -> Result<MAutomaton> {
    pda.validate()?;
    let monoid = Monoid::Polycyclic { rank: pda.stack_alphabet.len() };
    let edges = pda
        .transitions
        .iter()
        .map(|t| Edge {
            src: t.src,
            dst: t.dst,
            label: Element::Poly(match t.action {
                StackAction::Push(x) => Polycyclic::push(x),
                StackAction::Pop(x) => Polycyclic::pop(x),
                StackAction::None => Polycyclic::identity(),
            }),
            input: t.input.into_iter().collect(),
        })
        .collect();
    MAutomaton::new(monoid, pda.alphabet.clone(), pda.states, pda.initial, pda.finals.clone(), edges)
}

pub const DEFAULT_BRACKETS: [(char, char); 4] = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')];

/// Single-state polycyclic automaton accepting the Dyck language over `pairs`.
pub fn dyck_automaton(pairs: &[(char, char)]) -> Result<DeterministicMAutomaton> {
    let letters: Vec<char> = pairs.iter().flat_map(|&(o, c)| [o, c]).collect();
    let alphabet = Alphabet::new(letters)?.with_inverses(pairs)?;
    let edges = (0..pairs.len())
        .flat_map(|i| {
            [
                Edge { src: 0, dst: 0, label: Element::Poly(Polycyclic::push(i)), input: vec![2 * i] },
                Edge { src: 0, dst: 0, label: Element::Poly(Polycyclic::pop(i)), input: vec![2 * i + 1] },
            ]
        })
        .collect();
    let a = MAutomaton::new(Monoid::Polycyclic { rank: pairs.len() }, alphabet, 1, 0, [0].into(), edges)?;
    DeterministicMAutomaton::new(a)
}

/// [`dyck_automaton`] on the first `rank` of `()`, `[]`, `{}`, `<>`.
pub fn dyck_automaton_rank(rank: usize) -> Result<DeterministicMAutomaton> {
    if rank == 0 || rank > DEFAULT_BRACKETS.len() {
        return Err(Error::InvalidAutomaton(format!("no default brackets for rank {rank}")));
    }
    dyck_automaton(&DEFAULT_BRACKETS[..rank])
}

/// Identity, push `a`, push `b`, pop `a`, pop `b` in the rank-2 polycyclic monoid.
pub fn default_polycyclic_labels() -> Vec<Element> {
    vec![
        Element::Poly(Polycyclic::identity()),
        Element::Poly(Polycyclic::push(0)),
        Element::Poly(Polycyclic::push(1)),
        Element::Poly(Polycyclic::pop(0)),
        Element::Poly(Polycyclic::pop(1)),
    ]
}

#[derive(Clone, Debug)]
pub struct RefuterReport {
    pub monoid: Monoid,
    pub state_bound: usize,
    pub max_len: usize,
    pub candidates: usize,
    pub refuted: usize,
    /// Candidates with no disagreement up to `max_len`; inconclusive rather than counterexamples.
    pub survivors: Vec<DeterministicMAutomaton>,
    /// Longest shortest-refutation over all refuted candidates.
    pub longest_refutation: usize,
}

impl RefuterReport {
    pub fn all_refuted(&self) -> bool {
        self.survivors.is_empty()
    }
}

impl fmt::Display for RefuterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monoid       {}", self.monoid)?;
        writeln!(f, "states       <= {}", self.state_bound)?;
        writeln!(f, "max_len      {}", self.max_len)?;
        writeln!(f, "candidates   {}", self.candidates)?;
        writeln!(f, "refuted      {}", self.refuted)?;
        write!(f, "inconclusive {}", self.survivors.len())
    }
}

/// Number of candidates [`refute_deterministic_candidates`] would enumerate.
pub fn candidate_count(label_count: usize, letters: usize, state_bound: usize) -> f64 {
    (1..=state_bound)
        .map(|n| {
            let per_slot = 1.0 + (n * label_count) as f64;
            per_slot.powi((n * letters) as i32) * 2f64.powi(n as i32 - 1)
        })
        .sum()
}

/// Enumerates every deterministic automaton with at most `state_bound` states over `h`'s
/// alphabet whose edges carry labels from `labels` (missing edges allowed), with state 0
/// initial and terminal, and looks for a word of length at most `max_len` on which it
/// disagrees with `WP(h)`.
pub fn refute_deterministic_candidates(
    monoid: &Monoid,
    labels: &[Element],
    state_bound: usize,
    h: &GroupOracle,
    max_len: usize,
    ceiling: usize,
) -> Result<RefuterReport> {
    for l in labels {
        monoid.check(l)?;
    }
    let letters = h.alphabet().len();
    let total = candidate_count(labels.len(), letters, state_bound);
    if total > ceiling as f64 {
        return Err(Error::Infeasible(format!("{total:.0} candidates exceeds ceiling {ceiling}")));
    }
    let words: Vec<(Vec<Letter>, bool)> = h
        .alphabet()
        .words(max_len)
        .map(|w| {
            let wp = h.in_word_problem(&w).expect("words over the oracle alphabet");
            (w, wp)
        })
        .collect();
    let mut report = RefuterReport {
        monoid: monoid.clone(),
        state_bound,
        max_len,
        candidates: 0,
        refuted: 0,
        survivors: Vec::new(),
        longest_refutation: 0,
    };
    let base_alphabet = h.alphabet().alphabet().clone();
    for n in 1..=state_bound {
        let slots = n * letters;
        let options = 1 + n * labels.len();
        let mut choice = vec![0usize; slots];
        loop {
            let edges: Vec<Edge> = choice
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(slot, &c)| {
                    let (dst, label) = ((c - 1) / labels.len(), (c - 1) % labels.len());
                    Edge { src: slot / letters, dst, label: labels[label].clone(), input: vec![slot % letters] }
                })
                .collect();
            for mask in 0..(1usize << (n - 1)) {
                let terminals: BTreeSet<usize> =
                    std::iter::once(0).chain((1..n).filter(|q| mask >> (q - 1) & 1 == 1)).collect();
                let a = DeterministicMAutomaton::new(MAutomaton::new(
                    monoid.clone(),
                    base_alphabet.clone(),
                    n,
                    0,
                    terminals,
                    edges.clone(),
                )?)?;
                report.candidates += 1;
                match words.iter().find(|(w, wp)| a.accepts(w) != *wp) {
                    Some((w, _)) => {
                        report.refuted += 1;
                        report.longest_refutation = report.longest_refutation.max(w.len());
                    }
                    None => report.survivors.push(a),
                }
            }
            // Odometer over edge choices.
            let mut i = 0;
            while i < slots {
                choice[i] += 1;
                if choice[i] < options {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == slots {
                break;
            }
        }
    }
    Ok(report)
}

/// [`refute_deterministic_candidates`] over the rank-2 polycyclic monoid with
/// [`default_polycyclic_labels`].
pub fn polycyclic_refuter(state_bound: usize, h: &GroupOracle, max_len: usize, ceiling: usize) -> Result<RefuterReport> {
    refute_deterministic_candidates(
        &Monoid::Polycyclic { rank: 2 },
        &default_polycyclic_labels(),
        state_bound,
        h,
        max_len,
        ceiling,
    )
}

/// `WP(ℤ)` over `a, A` with `a ↦ 1`.
pub fn integer_oracle() -> Result<GroupOracle> {
    GroupOracle::from_letter_images(
        GroupKind::FreeAbelian(1),
        vec![('a', GroupElement::Vector(vec![1])), ('A', GroupElement::Vector(vec![-1]))],
        &[('a', 'A')],
    )
}

/// The same search as [`polycyclic_refuter`] with `ℤ` labels `0, +1, -1`.
pub fn integer_refuter(state_bound: usize, h: &GroupOracle, max_len: usize, ceiling: usize) -> Result<RefuterReport> {
    let labels = [0, 1, -1].map(|x| Element::Vector(vec![x]));
    refute_deterministic_candidates(&Monoid::FreeAbelian { rank: 1 }, &labels, state_bound, h, max_len, ceiling)
}

/// `aⁿbⁿ`: push on `a`, guess the middle, pop on `b`.
pub fn anbn_pda() -> Result<PushdownAutomaton> {
    let pda = PushdownAutomaton {
        alphabet: Alphabet::new(vec!['a', 'b'])?,
        stack_alphabet: vec!['s'],
        states: 2,
        initial: 0,
        finals: [1].into(),
        transitions: vec![
            PdaTransition { src: 0, dst: 0, input: Some(0), action: StackAction::Push(0) },
            PdaTransition { src: 0, dst: 1, input: None, action: StackAction::None },
            PdaTransition { src: 1, dst: 1, input: Some(1), action: StackAction::Pop(0) },
        ],
    };
    pda.validate()?;
    Ok(pda)
}

/// Dyck language on `()` and `[]` as a one-state pushdown automaton.
pub fn dyck2_pda() -> Result<PushdownAutomaton> {
    let pda = PushdownAutomaton {
        alphabet: Alphabet::new(vec!['(', ')', '[', ']'])?,
        stack_alphabet: vec!['p', 'q'],
        states: 1,
        initial: 0,
        finals: [0].into(),
        transitions: (0..2)
            .flat_map(|i| {
                [
                    PdaTransition { src: 0, dst: 0, input: Some(2 * i), action: StackAction::Push(i) },
                    PdaTransition { src: 0, dst: 0, input: Some(2 * i + 1), action: StackAction::Pop(i) },
                ]
            })
            .collect(),
    };
    pda.validate()?;
    Ok(pda)
}

pub const DEMOS: [&str; 7] =
    ["counter-z", "counter-z2", "dyck-2", "anbn", "refuter-1-state", "refuter-2-state", "refuter-contrast"];

const REFUTER_CEILING: usize = 1_000_000;

/// Balanced words over letters `2i` (open) and `2i + 1` (close).
pub struct Brackets;

impl PrefixOracle for Brackets {
    /// Open brackets still pending, or `None` after a mismatch.
    type State = Option<Vec<Letter>>;

    fn start(&self) -> Self::State {
        Some(Vec::new())
    }

    fn step(&self, s: &Self::State, x: Letter) -> Self::State {
        let mut stack = s.clone()?;
        if x.is_multiple_of(2) {
            stack.push(x);
        } else if stack.pop() != Some(x - 1) {
            return None;
        }
        Some(stack)
    }

    fn accepts(&self, s: &Self::State) -> bool {
        s.as_ref().is_some_and(Vec::is_empty)
    }

    fn dead(&self, s: &Self::State) -> bool {
        s.is_none()
    }
}

/// `aⁿbⁿ` over letters 0 and 1.
pub struct AnBn;

impl PrefixOracle for AnBn {
    /// `(a count, b count)`, or `None` once an `a` follows a `b` or `b`s outnumber `a`s.
    type State = Option<(usize, usize)>;

    fn start(&self) -> Self::State {
        Some((0, 0))
    }

    fn step(&self, s: &Self::State, x: Letter) -> Self::State {
        let (a, b) = (*s)?;
        match x {
            0 if b == 0 => Some((a + 1, 0)),
            1 if b < a => Some((a, b + 1)),
            _ => None,
        }
    }

    fn accepts(&self, s: &Self::State) -> bool {
        matches!(s, Some((a, b)) if a == b)
    }

    fn dead(&self, s: &Self::State) -> bool {
        s.is_none()
    }
}

fn agreement_line(r: &mut Report, name: &str, rep: &AgreementReport) {
    let status = if !rep.disagreements.is_empty() {
        Status::Fail
    } else if !rep.unknown.is_empty() {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    r.push(
        status,
        name,
        format!(
            "{} words up to length {}, {} disagreements, {} unknown, {} decided by dead prefixes",
            rep.words,
            rep.max_len,
            rep.disagreements.len(),
            rep.unknown.len(),
            rep.pruned
        ),
    );
}

fn refuter_lines(r: &mut Report, name: &str, rep: &RefuterReport) {
    r.info(format!("{name}/candidates"), format!("{} over {}, <= {} states", rep.candidates, rep.monoid, rep.state_bound));
    r.info(format!("{name}/longest-refutation"), rep.longest_refutation.to_string());
}

/// Runs one of [`DEMOS`] with `max_len` as the word bound.
pub fn demo(name: &str, max_len: usize) -> Result<Report> {
    let mut r = Report::new(format!("gallery {name}"));
    match name {
        "counter-z" | "counter-z2" => {
            let n = if name == "counter-z" { 1 } else { 2 };
            let a = counter_word_problem_automaton(n)?;
            let kind = GroupKind::FreeAbelian(n);
            let letters = (0..n)
                .flat_map(|i| {
                    let mut up = vec![0; n];
                    up[i] = 1;
                    let down = up.iter().map(|x| -x).collect();
                    [
                        (generator_char(i), GroupElement::Vector(up)),
                        (generator_char(i).to_ascii_uppercase(), GroupElement::Vector(down)),
                    ]
                })
                .collect();
            let pairs: Vec<(char, char)> = a.automaton().alphabet().inverse_pairs();
            let h = GroupOracle::from_letter_images(kind, letters, &pairs)?;
            let rep = prefix_agreement(a.automaton(), &WordProblem(&h), max_len, &RunBounds::default())?;
            agreement_line(&mut r, "word-problem", &rep);
        }
        "dyck-2" => {
            let a = dyck_automaton_rank(2)?;
            let rep = prefix_agreement(a.automaton(), &Brackets, max_len, &RunBounds::default())?;
            agreement_line(&mut r, "automaton", &rep);
            let p = pda_to_polycyclic(&dyck2_pda()?)?;
            let rep = prefix_agreement(&p, &Brackets, max_len.min(12), &RunBounds::default())?;
            agreement_line(&mut r, "pda", &rep);
        }
        "anbn" => {
            let a = pda_to_polycyclic(&anbn_pda()?)?;
            let rep = prefix_agreement(&a, &AnBn, max_len, &RunBounds::default())?;
            agreement_line(&mut r, "pda", &rep);
        }
        "refuter-1-state" | "refuter-2-state" => {
            let bound = if name == "refuter-1-state" { 1 } else { 2 };
            let rep = polycyclic_refuter(bound, &integer_oracle()?, max_len, REFUTER_CEILING)?;
            refuter_lines(&mut r, "polycyclic", &rep);
            r.push(
                if rep.all_refuted() { Status::Pass } else { Status::Inconclusive },
                "refuted",
                format!("{} of {} candidates, {} without a disagreement", rep.refuted, rep.candidates, rep.survivors.len()),
            );
        }
        "refuter-contrast" => {
            let h = integer_oracle()?;
            let poly = polycyclic_refuter(2, &h, max_len, REFUTER_CEILING)?;
            let int = integer_refuter(2, &h, max_len, REFUTER_CEILING)?;
            refuter_lines(&mut r, "polycyclic", &poly);
            refuter_lines(&mut r, "integer", &int);
            r.check(poly.all_refuted(), "polycyclic/refuted", format!("{} of {}", poly.refuted, poly.candidates));
            r.check(!int.survivors.is_empty(), "integer/survivors", format!("{} of {}", int.survivors.len(), int.candidates));
        }
        other => return Err(Error::InvalidAutomaton(format!("unknown gallery demo {other:?}; known: {}", DEMOS.join(", ")))),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{language_agreement, RunMode};

    fn brackets_naive(w: &[Letter]) -> bool {
        let mut depth = Vec::new();
        for &x in w {
            if x.is_multiple_of(2) {
                depth.push(x / 2);
            } else if depth.pop() != Some(x / 2) {
                return false;
            }
        }
        depth.is_empty()
    }

    fn run_oracle<O: PrefixOracle>(o: &O, w: &[Letter]) -> bool {
        o.accepts(&w.iter().fold(o.start(), |s, &x| o.step(&s, x)))
    }

    #[test]
    fn counter_dimension_is_checked() {
        let alphabet = signed_alphabet(1).unwrap();
        let edges: [CounterEdge<'_>; 1] = [(0, 0, &[1, 0], "a")];
        assert!(make_counter_automaton(1, alphabet, 1, 0, [0].into(), &edges).is_err());
    }

    #[test]
    fn two_counters() {
        let a = counter_word_problem_automaton(2).unwrap();
        let alphabet = a.automaton().alphabet();
        assert!(a.accepts(&alphabet.parse_word("abAB").unwrap()));
        assert!(!a.accepts(&alphabet.parse_word("abA").unwrap()));
    }

    #[test]
    fn oracles_match_direct_checks() {
        let alphabet = dyck_automaton_rank(2).unwrap().automaton().alphabet().clone();
        for w in alphabet.words(6) {
            assert_eq!(run_oracle(&Brackets, &w), brackets_naive(&w));
        }
        let ab = Alphabet::new(vec!['a', 'b']).unwrap();
        for w in ab.words(8) {
            let n = w.len() / 2;
            let want = w.len() % 2 == 0 && w[..n].iter().all(|&x| x == 0) && w[n..].iter().all(|&x| x == 1);
            assert_eq!(run_oracle(&AnBn, &w), want);
        }
    }

    #[test]
    fn dyck_rank_bounds() {
        assert!(dyck_automaton_rank(0).is_err());
        assert!(dyck_automaton_rank(5).is_err());
        let d = dyck_automaton_rank(2).unwrap();
        let rep = language_agreement(d.automaton(), brackets_naive, 8, RunMode::Deterministic).unwrap();
        assert!(rep.is_exact());
    }

    #[test]
    fn pda_bridge_small() {
        let a = pda_to_polycyclic(&anbn_pda().unwrap()).unwrap();
        let bounds = RunBounds::default();
        let accepts = |s: &str| {
            let w = a.alphabet().parse_word(s).unwrap();
            a.run_nondeterministic(&w, &bounds).unwrap().acceptance() == crate::automaton::Acceptance::Accepted
        };
        assert!(accepts("") && accepts("ab") && accepts("aaabbb"));
        assert!(!accepts("aab") && !accepts("ba") && !accepts("abab"));
        let bad = PushdownAutomaton { initial: 4, ..anbn_pda().unwrap() };
        assert!(pda_to_polycyclic(&bad).is_err());
    }

    #[test]
    fn refuter_counts() {
        let h = integer_oracle().unwrap();
        assert_eq!(candidate_count(5, 2, 1), 36.0);
        assert_eq!(candidate_count(5, 2, 2), 36.0 + 11f64.powi(4) * 2.0);
        let one = polycyclic_refuter(1, &h, 8, 1000).unwrap();
        assert_eq!(one.candidates, 36);
        assert!(one.all_refuted());
        assert!(polycyclic_refuter(2, &h, 8, 100).is_err());
    }

    #[test]
    fn integer_refuter_keeps_the_counter() {
        let h = integer_oracle().unwrap();
        let rep = integer_refuter(1, &h, 8, 1000).unwrap();
        assert_eq!(rep.candidates, 16);
        let counter = counter_word_problem_automaton(1).unwrap();
        assert!(rep.survivors.iter().any(|s| {
            let mut x = s.automaton().edges().to_vec();
            let mut y = counter.automaton().edges().to_vec();
            x.sort_by_key(|e| e.input.clone());
            y.sort_by_key(|e| e.input.clone());
            x == y
        }));
    }

    #[test]
    fn unknown_demo() {
        assert!(demo("refuter-9-state", 4).is_err());
        assert_eq!(demo("counter-z", 6).unwrap().outcome(), crate::report::Outcome::Pass);
    }
}
