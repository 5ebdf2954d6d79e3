//! Both directions of the correspondence between deterministic M-automata accepting
//! a group's word problem and finite-index subgroups embedding in the units of M.
//!
//! [`schreier_construct`] builds the automaton from a coset table and an embedding
//! `phi : K → G(M)`. [`extract_embedding`] goes back: from a deterministic automaton it
//! recovers the subgroup `K` (as the words read between terminal states), bounds its
//! index by the accessible states, and tabulates `σ : K → G(M)` on a bounded sample,
//! checking that σ is well defined, multiplicative, injective and unit-valued.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automaton::{language_agreement, DeterministicMAutomaton, Edge, MAutomaton, PathSearch, RunMode, SearchBounds};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupOracle, InvolutiveAlphabet, Letter, SubgroupOracle, Word};
use crate::monoid::{Element, Monoid};
use crate::nfa::FiniteAutomaton;
use crate::report::{Report, Status};

/// Cap on the explored part of `K` when extending phi multiplicatively.
const PHI_SEARCH_NODES: usize = 50_000;
const PHI_SEARCH_DEPTH: usize = 16;
/// Products of up to this many generators are compared even after every target has a value.
const PHI_CHECK_DEPTH: usize = 4;

/// A subgroup `K ≤ H` with `phi` given on words lying in `K`, valued in the units of `target`.
#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    subgroup: SubgroupOracle,
    target: Monoid,
    phi_generators: Vec<(Word, Element)>,
}

impl EmbeddingSpec {
    pub fn new(subgroup: SubgroupOracle, target: Monoid, phi_generators: Vec<(Word, Element)>) -> Result<Self> {
        let h = subgroup.parent();
        for (w, g) in &phi_generators {
            let word = h.alphabet().format_word(w);
            if !subgroup.contains_word(w)? {
                return Err(Error::Embedding(format!("phi generator {word:?} is not in the subgroup")));
            }
            target.check(g)?;
            if target.try_two_sided_inverse(g).is_none() {
                return Err(Error::Embedding(format!("phi({word:?}) = {g} is not a unit")));
            }
        }
        Ok(EmbeddingSpec { subgroup, target, phi_generators })
    }

    pub fn subgroup(&self) -> &SubgroupOracle {
        &self.subgroup
    }

    pub fn group(&self) -> &GroupOracle {
        self.subgroup.parent()
    }

    pub fn target(&self) -> &Monoid {
        &self.target
    }

    pub fn phi_generators(&self) -> &[(Word, Element)] {
        &self.phi_generators
    }

    /// Values of the multiplicative extension of phi at `targets`, checking consistency
    /// over every element of `K` met along the way.
    pub fn extend_phi(&self, targets: &[GroupElement]) -> Result<BTreeMap<GroupElement, Element>> {
        let h = self.group();
        let m = &self.target;
        let mut gens: Vec<(GroupElement, Element)> = Vec::new();
        for (w, g) in &self.phi_generators {
            let hw = h.evaluate_word(w)?;
            let inv = m.try_two_sided_inverse(g).expect("checked in EmbeddingSpec::new");
            gens.push((h.inverse(&hw), inv));
            gens.push((hw, g.clone()));
        }
        let mut values: BTreeMap<GroupElement, Element> = BTreeMap::new();
        values.insert(h.identity(), m.identity());
        let pending = |values: &BTreeMap<GroupElement, Element>| targets.iter().any(|t| !values.contains_key(t));
        let mut layer = vec![h.identity()];
        let mut depth = 0;
        loop {
            let checking = depth < PHI_CHECK_DEPTH && !layer.is_empty() && values.len() <= PHI_SEARCH_NODES;
            if !pending(&values) && !checking {
                break;
            }
            if layer.is_empty() || depth == PHI_SEARCH_DEPTH || values.len() > PHI_SEARCH_NODES {
                let Some(missing) = targets.iter().find(|t| !values.contains_key(t)) else { break };
                return Err(Error::Embedding(format!(
                    "cannot express {missing} as a product of phi generators within the search bound"
                )));
            }
            let mut next = Vec::new();
            for node in &layer {
                let base = values[node].clone();
                for (hg, mg) in &gens {
                    let key = h.multiply(node, hg);
                    let val = m.multiply(&base, mg)?;
                    match values.get(&key) {
                        Some(existing) if *existing != val => {
                            return Err(Error::Embedding(format!(
                                "phi is not well defined: {key} maps to both {existing} and {val}"
                            )))
                        }
                        Some(_) => {}
                        None => {
                            values.insert(key.clone(), val);
                            next.push(key);
                        }
                    }
                }
            }
            layer = next;
            depth += 1;
        }
        Ok(values)
    }
}

/// Builds the deterministic automaton on the coset graph of `K`: one state per coset,
/// the coset of `K` itself initial and sole terminal, and the edge from coset `i` on letter
/// `x` labelled `phi(rep_i · x · rep_j⁻¹)`.
pub fn schreier_construct(spec: &EmbeddingSpec, max_cosets: usize) -> Result<DeterministicMAutomaton> {
    let h = spec.group();
    let table = spec.subgroup().coset_enumerate(max_cosets)?;
    let rep_values: Vec<GroupElement> = table.representatives.iter().map(|r| h.evaluate_unchecked(r)).collect();
    let mut schreier = Vec::new();
    for (i, row) in table.transitions.iter().enumerate() {
        for (x, &j) in row.iter().enumerate() {
            let g = h.multiply(&h.multiply(&rep_values[i], h.letter_image(x)), &h.inverse(&rep_values[j]));
            schreier.push((i, x, j, g));
        }
    }
    let targets: Vec<GroupElement> = schreier.iter().map(|(.., g)| g.clone()).collect();
    let phi = spec.extend_phi(&targets)?;
    let edges = schreier
        .into_iter()
        .map(|(i, x, j, g)| Edge { src: i, dst: j, label: phi[&g].clone(), input: vec![x] })
        .collect();
    let automaton = MAutomaton::new(
        spec.target().clone(),
        h.alphabet().alphabet().clone(),
        table.len(),
        0,
        [0].into(),
        edges,
    )?;
    DeterministicMAutomaton::new(automaton)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminalUsage {
    /// `(1, w)` labels a path from the initial state to this terminal.
    Certified(Word),
    /// No witness within bounds; the terminal was dropped without proof that it is unused.
    RemovedUnverified { explored: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneReport {
    pub terminals: Vec<(usize, TerminalUsage)>,
}

impl PruneReport {
    pub fn removed(&self) -> impl Iterator<Item = usize> + '_ {
        self.terminals
            .iter()
            .filter(|(_, u)| matches!(u, TerminalUsage::RemovedUnverified { .. }))
            .map(|(q, _)| *q)
    }
}

/// Drops terminals that no identity-register path from the initial state reaches within `bounds`.
pub fn terminal_usage_prune(
    a: &DeterministicMAutomaton,
    bounds: &SearchBounds,
) -> Result<(DeterministicMAutomaton, PruneReport)> {
    let inner = a.automaton();
    let mut kept = BTreeSet::new();
    let mut terminals = Vec::new();
    for &q in inner.terminals() {
        match inner.find_identity_register_path(inner.initial(), q, bounds) {
            PathSearch::Found(w) => {
                kept.insert(q);
                terminals.push((q, TerminalUsage::Certified(w)));
            }
            PathSearch::NotFound { explored } => {
                terminals.push((q, TerminalUsage::RemovedUnverified { explored }));
            }
        }
    }
    let pruned = DeterministicMAutomaton::new(inner.with_terminals(kept)?)?;
    Ok((pruned, PruneReport { terminals }))
}

/// False refutes any claim that the automaton accepts a word problem, which always contains ε.
pub fn check_initial_is_terminal(a: &DeterministicMAutomaton) -> bool {
    a.automaton().is_terminal(a.automaton().initial())
}

/// A path `(register, word)` from the initial state to `state`, with `inverse_word` the
/// formal inverse of `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessibleWitness {
    pub state: usize,
    pub register: Element,
    pub word: Word,
    pub inverse_word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    /// Indexed by discovery order; `by_state` maps states to positions here.
    pub witnesses: Vec<AccessibleWitness>,
    pub inaccessible: Vec<usize>,
    by_state: Vec<Option<usize>>,
}

impl Witnesses {
    pub fn get(&self, state: usize) -> Option<&AccessibleWitness> {
        self.by_state.get(state).copied().flatten().map(|i| &self.witnesses[i])
    }

    pub fn accessible_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.witnesses.iter().map(|w| w.state)
    }
}

fn involutive(a: &DeterministicMAutomaton) -> Result<InvolutiveAlphabet> {
    a.automaton().alphabet().clone().into_involutive()
}

/// Breadth-first search from the initial state, ignoring registers.
pub fn compute_accessible_witnesses(a: &DeterministicMAutomaton) -> Result<Witnesses> {
    let inner = a.automaton();
    let alphabet = involutive(a)?;
    let m = inner.monoid();
    let mut by_state = vec![None; inner.state_count()];
    let mut witnesses = Vec::new();
    let mut queue = VecDeque::new();
    let start = inner.initial();
    by_state[start] = Some(0);
    witnesses.push(AccessibleWitness { state: start, register: m.identity(), word: Vec::new(), inverse_word: Vec::new() });
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        let wp = witnesses[by_state[p].expect("queued states have witnesses")].clone();
        for x in 0..alphabet.len() {
            let Some(e) = a.transition(p, x) else { continue };
            if by_state[e.dst].is_some() {
                continue;
            }
            let mut word = wp.word.clone();
            word.push(x);
            let register = m.multiply(&wp.register, &e.label)?;
            by_state[e.dst] = Some(witnesses.len());
            witnesses.push(AccessibleWitness {
                state: e.dst,
                register,
                inverse_word: alphabet.formal_inverse(&word),
                word,
            });
            queue.push_back(e.dst);
        }
    }
    let inaccessible = (0..inner.state_count()).filter(|&q| by_state[q].is_none()).collect();
    Ok(Witnesses { witnesses, inaccessible, by_state })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub p: usize,
    pub q: usize,
    /// A word of `J` evaluating to `w_p · w_q⁻¹`.
    pub word: Word,
    pub via_alternative: bool,
}

/// Accessible states grouped by the coset of `K` their witness words represent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    /// Sorted classes; the class of the initial state comes first.
    pub classes: Vec<Vec<usize>>,
    pub merges: Vec<Merge>,
    /// Class pairs with alternative representatives, none of them in `J`.
    pub separated: Vec<(usize, usize)>,
    /// Class pairs with no alternative representative within the length bound.
    pub unresolved: Vec<(usize, usize)>,
    pub accessible_states: usize,
}

impl CosetPartition {
    pub fn index(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, q: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&q))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Merges accessible states `p`, `q` whenever `w_p · v_q` is read between terminal states,
/// then tries alternative words for `w_p · w_q⁻¹` (up to `alt_len` letters) on the remaining
/// class pairs.
pub fn coset_partition(
    a: &DeterministicMAutomaton,
    h: &GroupOracle,
    witnesses: &Witnesses,
    alt_len: usize,
) -> Result<CosetPartition> {
    let inner = a.automaton();
    if let Some((state, x)) = a.missing_transition(witnesses.accessible_states()) {
        return Err(Error::Incomplete { state, letter: inner.alphabet().char_of(x) });
    }
    let j = inner.between_terminal_fa();
    let states: Vec<usize> = witnesses.accessible_states().collect();
    let mut uf = UnionFind((0..inner.state_count()).collect());
    let mut merges = Vec::new();
    for (i, &p) in states.iter().enumerate() {
        for &q in &states[i + 1..] {
            let (wp, wq) = (witnesses.get(p).expect("accessible"), witnesses.get(q).expect("accessible"));
            for (x, y) in [(wp, wq), (wq, wp)] {
                let word = [x.word.as_slice(), y.inverse_word.as_slice()].concat();
                if j.accepts(&word) {
                    if uf.union(p, q) {
                        merges.push(Merge { p: x.state, q: y.state, word, via_alternative: false });
                    }
                    break;
                }
            }
        }
    }

    let mut by_value: BTreeMap<GroupElement, Vec<Word>> = BTreeMap::new();
    for w in h.alphabet().words(alt_len) {
        by_value.entry(h.evaluate_unchecked(&w)).or_default().push(w);
    }
    let mut separated = Vec::new();
    let mut unresolved = Vec::new();
    loop {
        let roots: BTreeSet<usize> = states.iter().map(|&s| uf.find(s)).collect();
        let roots: Vec<usize> = roots.into_iter().collect();
        separated.clear();
        unresolved.clear();
        let mut merged_any = false;
        'pairs: for (i, &p) in roots.iter().enumerate() {
            for &q in &roots[i + 1..] {
                let (wp, wq) = (witnesses.get(p).expect("accessible"), witnesses.get(q).expect("accessible"));
                let target = h.evaluate_unchecked(&[wp.word.as_slice(), wq.inverse_word.as_slice()].concat());
                match by_value.get(&target) {
                    None => unresolved.push((p, q)),
                    Some(alternatives) => match alternatives.iter().find(|z| j.accepts(z)) {
                        Some(z) => {
                            uf.union(p, q);
                            merges.push(Merge { p, q, word: z.clone(), via_alternative: true });
                            merged_any = true;
                            break 'pairs;
                        }
                        None => separated.push((p, q)),
                    },
                }
            }
        }
        if !merged_any {
            break;
        }
    }

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &s in &states {
        classes.entry(uf.find(s)).or_default().push(s);
    }
    let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
    let initial = inner.initial();
    classes.sort_by_key(|c| (!c.contains(&initial), c[0]));
    Ok(CosetPartition { classes, merges, separated, unresolved, accessible_states: states.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractionBounds {
    /// Length bound for the word-problem premise check.
    pub max_len: usize,
    /// Between-terminal words up to this length are sampled for σ.
    pub sample_len: usize,
    /// Sampled words up to this length enter the pairwise homomorphism check.
    pub pair_len: usize,
    /// Length bound for alternative coset representatives.
    pub alt_len: usize,
    pub search: SearchBounds,
}

impl Default for ExtractionBounds {
    fn default() -> Self {
        ExtractionBounds { max_len: 10, sample_len: 8, pair_len: 4, alt_len: 6, search: SearchBounds::default() }
    }
}

/// One sampled value of σ: `(value, word)` labels a path between terminal states `start` and `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaEntry {
    pub element: GroupElement,
    pub word: Word,
    pub value: Element,
    pub start: usize,
    pub end: usize,
    pub schreier_generator: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) -> bool {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
        ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Membership,
    WellDefined,
    Homomorphism,
    Injective,
    Units,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaVerdicts {
    pub membership: Tally,
    pub well_defined: Tally,
    pub homomorphism: Tally,
    pub injective: Tally,
    pub units: Tally,
}

impl SigmaVerdicts {
    pub fn all_pass(&self) -> bool {
        [self.membership, self.well_defined, self.homomorphism, self.injective, self.units]
            .iter()
            .all(|t| t.failed == 0 && t.inconclusive == 0)
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub premise_words: usize,
    pub premise_disagreements: Vec<Word>,
    pub initial_is_terminal: bool,
    pub pruned_terminals: PruneReport,
    /// Words up to `max_len` whose verdict changed when terminals were pruned.
    pub prune_changes: Vec<Word>,
    pub witnesses: Witnesses,
    pub partition: CosetPartition,
    pub index_bound: usize,
    /// σ on the sample, one entry per distinct element of `K`.
    pub sigma: Vec<SigmaEntry>,
    pub verdicts: SigmaVerdicts,
    pub failures: Vec<Failure>,
    /// Pairs or elements for which a bounded search gave up.
    pub inconclusive: Vec<String>,
}

impl EmbeddingReport {
    pub fn premise_supported(&self) -> bool {
        self.premise_disagreements.is_empty() && self.initial_is_terminal
    }

    pub fn success(&self) -> bool {
        self.premise_supported()
            && self.prune_changes.is_empty()
            && self.failures.is_empty()
            && self.verdicts.all_pass()
            && self.index_bound <= self.partition.accessible_states
    }

    pub fn to_report(&self, alphabet: &InvolutiveAlphabet) -> Report {
        let mut r = Report::new("subgroup extraction");
        r.check(
            self.premise_disagreements.is_empty(),
            "premise",
            match self.premise_disagreements.first() {
                None => format!("accepts the word problem on all {} words in bound", self.premise_words),
                Some(w) => format!(
                    "{} disagreements with the word problem, first {}",
                    self.premise_disagreements.len(),
                    alphabet.format_word(w)
                ),
            },
        );
        r.check(self.initial_is_terminal, "initial-terminal", format!("{}", self.initial_is_terminal));
        for (q, usage) in &self.pruned_terminals.terminals {
            match usage {
                TerminalUsage::Certified(w) => {
                    r.info(format!("terminal {q}"), format!("used, witness {}", alphabet.format_word(w)))
                }
                TerminalUsage::RemovedUnverified { explored } => r.push(
                    Status::Warn,
                    format!("terminal {q}"),
                    format!("removed-unverified after {explored} configurations"),
                ),
            }
        }
        if self.pruned_terminals.removed().next().is_some() {
            r.check(
                self.prune_changes.is_empty(),
                "prune-recheck",
                format!("{} words change verdict after pruning", self.prune_changes.len()),
            );
        }
        for w in &self.witnesses.witnesses {
            r.info(
                format!("witness q{}", w.state),
                format!("g={} w={} v={}", w.register, alphabet.format_word(&w.word), alphabet.format_word(&w.inverse_word)),
            );
        }
        if !self.witnesses.inaccessible.is_empty() {
            r.info("inaccessible", format!("{:?}", self.witnesses.inaccessible));
        }
        r.info("classes", format!("{:?}", self.partition.classes));
        if !self.partition.unresolved.is_empty() {
            r.push(Status::Inconclusive, "class-separation", format!("unresolved pairs {:?}", self.partition.unresolved));
        }
        r.check(
            self.index_bound <= self.partition.accessible_states,
            "index",
            format!("{} (accessible states {})", self.index_bound, self.partition.accessible_states),
        );
        for s in &self.sigma {
            r.info(
                "sigma",
                format!("{} -> {} via {} (q{}..q{})", s.element, s.value, alphabet.format_word(&s.word), s.start, s.end),
            );
        }
        let premise = self.premise_supported();
        for (name, t) in [
            ("membership", self.verdicts.membership),
            ("well-defined", self.verdicts.well_defined),
            ("homomorphism", self.verdicts.homomorphism),
            ("injective", self.verdicts.injective),
            ("units", self.verdicts.units),
        ] {
            let detail = format!("{} checked, {} failed, {} inconclusive", t.checked, t.failed, t.inconclusive);
            let status = if !premise {
                Status::Inconclusive
            } else if t.failed > 0 {
                Status::Fail
            } else if t.inconclusive > 0 {
                Status::Inconclusive
            } else {
                Status::Pass
            };
            let detail = if premise { detail } else { format!("unsupported premise; {detail}") };
            r.push(status, name, detail);
        }
        for f in self.failures.iter().take(20) {
            r.info("failure", format!("{:?}: {}", f.check, f.detail));
        }
        for s in self.inconclusive.iter().take(20) {
            r.info("inconclusive", s.clone());
        }
        r
    }
}

/// Runs the full extraction pipeline on `a` against the group `h`.
pub fn extract_embedding(a: &DeterministicMAutomaton, h: &GroupOracle, bounds: &ExtractionBounds) -> Result<EmbeddingReport> {
    let a = DeterministicMAutomaton::new(a.automaton().with_alphabet(h.alphabet())?)?;
    let premise = language_agreement(
        a.automaton(),
        |w| h.in_word_problem(w).expect("alphabet shared with oracle"),
        bounds.max_len,
        RunMode::Deterministic,
    )?;
    let initial_is_terminal = check_initial_is_terminal(&a);
    let (pruned, prune_report) = terminal_usage_prune(&a, &bounds.search)?;
    let recheck = language_agreement(pruned.automaton(), |w| a.accepts(w), bounds.max_len, RunMode::Deterministic)?;
    let witnesses = compute_accessible_witnesses(&pruned)?;
    let partition = coset_partition(&pruned, h, &witnesses, bounds.alt_len)?;
    let mut report = EmbeddingReport {
        premise_words: premise.words,
        premise_disagreements: premise.disagreements.iter().map(|d| d.word.clone()).collect(),
        initial_is_terminal,
        pruned_terminals: prune_report,
        prune_changes: recheck.disagreements.into_iter().map(|d| d.word).collect(),
        index_bound: partition.index(),
        witnesses,
        partition,
        sigma: Vec::new(),
        verdicts: SigmaVerdicts::default(),
        failures: Vec::new(),
        inconclusive: Vec::new(),
    };
    extract_sigma(&pruned, h, bounds, &mut report)?;
    Ok(report)
}

/// Samples σ and checks the embedding properties, filling `report`.
pub fn extract_sigma(
    a: &DeterministicMAutomaton,
    h: &GroupOracle,
    bounds: &ExtractionBounds,
    report: &mut EmbeddingReport,
) -> Result<()> {
    let inner = a.automaton();
    let m = inner.monoid();
    let alphabet = h.alphabet();
    let terminals: Vec<usize> = inner.terminals().iter().copied().collect();
    let j: FiniteAutomaton = inner.between_terminal_fa();
    let fmt = |w: &[Letter]| alphabet.format_word(w);

    let mut samples: Vec<SigmaEntry> = Vec::new();
    if inner.is_terminal(inner.initial()) {
        for wp in &report.witnesses.witnesses {
            for x in 0..alphabet.len() {
                let Some(e) = a.transition(wp.state, x) else { continue };
                let Some(wq) = report.witnesses.get(e.dst) else { continue };
                let word = [wp.word.as_slice(), &[x], wq.inverse_word.as_slice()].concat();
                match a.read_from(inner.initial(), &word) {
                    Some(c) if inner.is_terminal(c.state) => samples.push(SigmaEntry {
                        element: h.evaluate_unchecked(&word),
                        word,
                        value: c.register,
                        start: inner.initial(),
                        end: c.state,
                        schreier_generator: true,
                    }),
                    _ => report.inconclusive.push(format!(
                        "Schreier word {} does not return to a terminal state",
                        fmt(&word)
                    )),
                }
            }
        }
    }
    for &t in &terminals {
        for word in alphabet.words(bounds.sample_len) {
            if let Some(c) = a.read_from(t, &word) {
                if inner.is_terminal(c.state) {
                    samples.push(SigmaEntry {
                        element: h.evaluate_unchecked(&word),
                        word,
                        value: c.register,
                        start: t,
                        end: c.state,
                        schreier_generator: false,
                    });
                }
            }
        }
    }

    let verdicts = &mut report.verdicts;
    let failures = &mut report.failures;

    for s in &samples {
        if !verdicts.membership.record(j.accepts(&s.word)) {
            failures.push(Failure { check: Check::Membership, detail: format!("{} not read between terminals", fmt(&s.word)) });
        }
    }

    let mut table: BTreeMap<GroupElement, SigmaEntry> = BTreeMap::new();
    for s in &samples {
        match table.get(&s.element) {
            None => {
                table.insert(s.element.clone(), s.clone());
            }
            Some(first) => {
                if !verdicts.well_defined.record(first.value == s.value) {
                    failures.push(Failure {
                        check: Check::WellDefined,
                        detail: format!(
                            "{} and {} both represent {} but give {} and {}",
                            fmt(&first.word),
                            fmt(&s.word),
                            s.element,
                            first.value,
                            s.value
                        ),
                    });
                }
            }
        }
    }

    for s in table.values() {
        if !verdicts.units.record(m.try_two_sided_inverse(&s.value).is_some()) {
            failures.push(Failure { check: Check::Units, detail: format!("sigma({}) = {} is not a unit", s.element, s.value) });
        }
    }

    let mut preimage: BTreeMap<&Element, &SigmaEntry> = BTreeMap::new();
    for s in table.values() {
        let trivial_ok = !m.is_identity(&s.value) || (h.kind().is_identity(&s.element) && a.accepts(&s.word));
        let ok = match preimage.insert(&s.value, s) {
            Some(other) => {
                failures.push(Failure {
                    check: Check::Injective,
                    detail: format!("{} and {} both map to {}", other.element, s.element, s.value),
                });
                false
            }
            None => true,
        };
        if !trivial_ok {
            failures.push(Failure {
                check: Check::Injective,
                detail: format!("sigma({}) = 1 via {} but it is not the identity", s.element, fmt(&s.word)),
            });
        }
        verdicts.injective.record(ok && trivial_ok);
    }

    let mut pair_sample: Vec<&SigmaEntry> = Vec::new();
    let mut seen = BTreeSet::new();
    for s in &samples {
        if (s.schreier_generator || s.word.len() <= bounds.pair_len) && seen.insert((s.start, s.word.clone())) {
            pair_sample.push(s);
        }
    }
    let mut connectors: BTreeMap<(usize, usize), Option<Word>> = BTreeMap::new();
    for x in &pair_sample {
        for y in &pair_sample {
            let link = connectors
                .entry((x.end, y.start))
                .or_insert_with(|| inner.find_identity_register_path(x.end, y.start, &bounds.search).found().cloned());
            let Some(link) = link else {
                verdicts.homomorphism.inconclusive += 1;
                report.inconclusive.push(format!("no identity path from q{} to q{} within bounds", x.end, y.start));
                continue;
            };
            let word = [x.word.as_slice(), link.as_slice(), y.word.as_slice()].concat();
            let product = m.multiply(&x.value, &y.value)?;
            let path_ok = a.read_from(x.start, &word).is_some_and(|c| c.state == y.end && c.register == product);
            let element = h.multiply(&x.element, &y.element);
            let table_ok = table.get(&element).is_none_or(|s| s.value == product);
            if !verdicts.homomorphism.record(path_ok && table_ok) {
                failures.push(Failure {
                    check: Check::Homomorphism,
                    detail: format!(
                        "sigma({})·sigma({}) = {} but the joined path {} disagrees",
                        x.element,
                        y.element,
                        product,
                        fmt(&word)
                    ),
                });
            }
        }
    }

    report.sigma = table.into_values().collect();
    Ok(())
}

/// Words up to `max_len` such that `(1, w)` labels a path between two terminal states.
pub fn between_terminal_identity_words(a: &DeterministicMAutomaton, max_len: usize) -> Vec<Word> {
    let inner = a.automaton();
    inner
        .alphabet()
        .words(max_len)
        .filter(|w| {
            inner.terminals().iter().any(|&t| {
                a.read_from(t, w)
                    .is_some_and(|c| inner.is_terminal(c.state) && inner.monoid().is_identity(&c.register))
            })
        })
        .collect()
}

/// Bounds for a round trip through both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremBounds {
    pub max_len: usize,
    pub max_cosets: usize,
    pub extraction: ExtractionBounds,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub automaton: DeterministicMAutomaton,
    pub cosets: usize,
    pub words_checked: usize,
    pub disagreements: Vec<Word>,
    pub extraction: EmbeddingReport,
}

impl TheoremReport {
    pub fn to_report(&self, alphabet: &InvolutiveAlphabet) -> Report {
        let mut r = Report::new("word problem round trip");
        let a = self.automaton.automaton();
        r.check(
            self.automaton.is_complete() && a.terminals().len() == 1 && a.is_terminal(a.initial()),
            "construction",
            format!("{} states, complete, initial state is the unique terminal", a.state_count()),
        );
        r.check(
            a.edges().iter().all(|e| a.monoid().try_two_sided_inverse(&e.label).is_some()),
            "unit-labels",
            "every register label is a unit",
        );
        r.check(
            self.disagreements.is_empty(),
            "agreement",
            format!("{} words, {} disagreements", self.words_checked, self.disagreements.len()),
        );
        r.check(
            self.extraction.index_bound <= self.cosets,
            "index",
            format!("extracted {} <= {} cosets", self.extraction.index_bound, self.cosets),
        );
        r.absorb("extract", self.extraction.to_report(alphabet));
        r
    }
}

/// Builds the Schreier automaton for `spec`, checks it against the word problem, and
/// extracts the subgroup and embedding back out of it.
pub fn verify_main_theorem(spec: &EmbeddingSpec, bounds: &TheoremBounds) -> Result<TheoremReport> {
    let h = spec.group();
    let automaton = schreier_construct(spec, bounds.max_cosets)?;
    let agreement = language_agreement(
        automaton.automaton(),
        |w| h.in_word_problem(w).expect("shared alphabet"),
        bounds.max_len,
        RunMode::Deterministic,
    )?;
    let extraction = extract_embedding(&automaton, h, &bounds.extraction)?;
    Ok(TheoremReport {
        cosets: automaton.automaton().state_count(),
        words_checked: agreement.words,
        disagreements: agreement.disagreements.into_iter().map(|d| d.word).collect(),
        automaton,
        extraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Edge;
    use crate::format::{parse_scenario, Scenario};
    use crate::gallery::{counter_word_problem_automaton, integer_oracle, signed_alphabet};
    use crate::group::{Letter, SubgroupPredicate};
    use crate::monoid::Monoid;

    fn scenario(text: &str) -> Scenario {
        parse_scenario(text).unwrap()
    }

    fn z2z() -> Scenario {
        scenario(include_str!("../fixtures/z-2z.scenario"))
    }

    fn s3() -> Scenario {
        scenario(include_str!("../fixtures/s3-trivial.scenario"))
    }

    fn build(s: &Scenario) -> DeterministicMAutomaton {
        schreier_construct(&s.embedding_spec().unwrap(), s.max_cosets).unwrap()
    }

    fn v(x: i64) -> Element {
        Element::Vector(vec![x])
    }

    fn exponent_sum(w: &[Letter]) -> i64 {
        w.iter().map(|&x| if x == 0 { 1 } else { -1 }).sum()
    }

    #[test]
    fn schreier_integers_mod_two() {
        let a = build(&z2z());
        let table: Vec<(usize, usize, Element)> = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .into_iter()
            .map(|(q, x)| {
                let e = a.transition(q, x).unwrap();
                (q, e.dst, e.label.clone())
            })
            .collect();
        assert_eq!(table, vec![(0, 1, v(0)), (1, 0, v(1)), (0, 1, v(-1)), (1, 0, v(0))]);
        let w = |s: &str| a.automaton().alphabet().parse_word(s).unwrap();
        assert!(a.accepts(&w("aA")) && a.accepts(&w("aaAA")) && !a.accepts(&w("aa")));
        for word in a.automaton().alphabet().words(10) {
            assert_eq!(a.accepts(&word), exponent_sum(&word) == 0);
        }
    }

    #[test]
    fn schreier_symmetric_group_is_cayley_graph() {
        let s = s3();
        let a = build(&s);
        assert_eq!(a.automaton().state_count(), 6);
        assert!(a.is_complete());
        assert!(a.automaton().edges().iter().all(|e| e.label == Element::Trivial));
        for w in a.automaton().alphabet().words(6) {
            assert_eq!(a.accepts(&w), s.group.in_word_problem(&w).unwrap());
        }
    }

    #[test]
    fn schreier_index_one() {
        let h = integer_oracle().unwrap();
        let spec = EmbeddingSpec::new(
            SubgroupOracle::new(h, SubgroupPredicate::Full),
            Monoid::FreeAbelian { rank: 1 },
            vec![(vec![0], v(1))],
        )
        .unwrap();
        let a = schreier_construct(&spec, 4).unwrap();
        assert_eq!(a.automaton().state_count(), 1);
        assert_eq!(a.transition(0, 0).unwrap().label, v(1));
        assert_eq!(a.transition(0, 1).unwrap().label, v(-1));
    }

    #[test]
    fn bad_embeddings_are_rejected() {
        let h = integer_oracle().unwrap();
        let k = SubgroupOracle::new(h.clone(), SubgroupPredicate::Parity);
        let poly = Monoid::Polycyclic { rank: 1 };
        let push = poly.parse_element("(e|a)").unwrap();
        assert!(EmbeddingSpec::new(k.clone(), poly, vec![(vec![0, 0], push)]).is_err());
        // "a" is not in 2ℤ.
        assert!(EmbeddingSpec::new(k.clone(), Monoid::FreeAbelian { rank: 1 }, vec![(vec![0], v(1))]).is_err());
        let inconsistent = EmbeddingSpec::new(
            k.clone(),
            Monoid::FreeAbelian { rank: 1 },
            vec![(vec![0, 0], v(1)), (vec![0, 0, 0, 0], v(3))],
        )
        .unwrap();
        assert!(schreier_construct(&inconsistent, 4).is_err());
        let spec = EmbeddingSpec::new(k, Monoid::FreeAbelian { rank: 1 }, vec![(vec![0, 0], v(1))]).unwrap();
        assert!(matches!(schreier_construct(&spec, 1), Err(Error::CosetLimit(1))));
    }

    #[test]
    fn schreier_invariants() {
        for s in [z2z(), s3(), scenario(include_str!("../fixtures/dinf-translations.scenario"))] {
            let a = build(&s);
            let inner = a.automaton();
            assert!(a.is_complete());
            assert_eq!(inner.terminals(), &BTreeSet::from([inner.initial()]));
            assert!(inner.edges().iter().all(|e| inner.monoid().try_two_sided_inverse(&e.label).is_some()));
        }
    }

    fn single_edge_fixture() -> DeterministicMAutomaton {
        let a = MAutomaton::new(
            Monoid::FreeAbelian { rank: 1 },
            signed_alphabet(1).unwrap(),
            3,
            0,
            [0, 1, 2].into(),
            vec![Edge { src: 0, dst: 1, label: v(1), input: vec![0] }],
        )
        .unwrap();
        DeterministicMAutomaton::new(a).unwrap()
    }

    #[test]
    fn pruning_terminals() {
        let (pruned, report) = terminal_usage_prune(&build(&z2z()), &SearchBounds::default()).unwrap();
        assert_eq!(report.terminals, vec![(0, TerminalUsage::Certified(vec![]))]);
        assert_eq!(pruned.automaton().terminals().len(), 1);

        let a = single_edge_fixture();
        let (pruned, report) = terminal_usage_prune(&a, &SearchBounds::default()).unwrap();
        assert_eq!(report.removed().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(pruned.automaton().terminals(), &BTreeSet::from([0]));
        for w in a.automaton().alphabet().words(10) {
            assert_eq!(a.accepts(&w), pruned.accepts(&w));
        }
    }

    #[test]
    fn initial_terminal_check() {
        assert!(check_initial_is_terminal(&build(&z2z())));
        assert!(check_initial_is_terminal(&build(&s3())));
        let a = build(&z2z());
        let moved = DeterministicMAutomaton::new(a.automaton().with_terminals([1].into()).unwrap()).unwrap();
        assert!(!check_initial_is_terminal(&moved));
    }

    #[test]
    fn witnesses() {
        let w = compute_accessible_witnesses(&counter_word_problem_automaton(1).unwrap()).unwrap();
        assert_eq!(
            w.witnesses,
            vec![AccessibleWitness { state: 0, register: v(0), word: vec![], inverse_word: vec![] }]
        );
        let w = compute_accessible_witnesses(&build(&z2z())).unwrap();
        assert_eq!(
            w.witnesses,
            vec![
                AccessibleWitness { state: 0, register: v(0), word: vec![], inverse_word: vec![] },
                AccessibleWitness { state: 1, register: v(0), word: vec![0], inverse_word: vec![1] },
            ]
        );
        let w = compute_accessible_witnesses(&single_edge_fixture()).unwrap();
        assert_eq!(w.inaccessible, vec![2]);
        assert!(w.get(2).is_none());
    }

    #[test]
    fn coset_partitions() {
        let cases = [(build(&z2z()), z2z().group, 2), (build(&s3()), s3().group, 6)];
        for (a, h, index) in cases {
            let w = compute_accessible_witnesses(&a).unwrap();
            let p = coset_partition(&a, &h, &w, 6).unwrap();
            assert_eq!(p.index(), index);
            assert!(p.index() <= p.accessible_states);
            assert!(p.unresolved.is_empty());
        }
        let a = counter_word_problem_automaton(1).unwrap();
        let w = compute_accessible_witnesses(&a).unwrap();
        assert_eq!(coset_partition(&a, &integer_oracle().unwrap(), &w, 6).unwrap().index(), 1);
        let a = single_edge_fixture();
        let w = compute_accessible_witnesses(&a).unwrap();
        assert!(matches!(
            coset_partition(&a, &integer_oracle().unwrap(), &w, 6),
            Err(Error::Incomplete { state: 0, letter: 'A' })
        ));
    }

    #[test]
    fn sigma_halves_exponent_sum() {
        let s = z2z();
        let a = build(&s);
        let rep = extract_embedding(&a, &s.group, &ExtractionBounds::default()).unwrap();
        assert!(rep.success(), "{}", rep.to_report(s.group.alphabet()));
        assert_eq!(rep.index_bound, 2);
        assert!(!rep.sigma.is_empty());
        for e in &rep.sigma {
            let sum = exponent_sum(&e.word);
            assert_eq!(sum % 2, 0);
            assert_eq!(e.value, v(sum / 2), "{:?}", e.word);
        }
    }

    #[test]
    fn sigma_identity_on_integers() {
        let a = counter_word_problem_automaton(1).unwrap();
        let h = integer_oracle().unwrap();
        let rep = extract_embedding(&a, &h, &ExtractionBounds::default()).unwrap();
        assert!(rep.success());
        assert_eq!(rep.index_bound, 1);
        for e in &rep.sigma {
            assert_eq!(e.value, v(exponent_sum(&e.word)));
        }
    }

    #[test]
    fn sigma_trivial_for_symmetric_group() {
        let s = s3();
        let rep = extract_embedding(&build(&s), &s.group, &ExtractionBounds::default()).unwrap();
        assert!(rep.success());
        assert_eq!(rep.index_bound, 6);
        assert!(rep.sigma.iter().all(|e| e.value == Element::Trivial));
    }

    #[test]
    fn unsupported_premise() {
        let s = z2z();
        let a = build(&s);
        // Accepts only words of exponent sum divisible by four: not a word problem.
        let wrong = DeterministicMAutomaton::new(
            a.automaton()
                .with_edges(
                    2,
                    a.automaton()
                        .edges()
                        .iter()
                        .map(|e| Edge { label: if e.label == v(1) { v(2) } else { e.label.clone() }, ..e.clone() })
                        .collect(),
                )
                .unwrap(),
        )
        .unwrap();
        let rep = extract_embedding(&wrong, &s.group, &ExtractionBounds::default()).unwrap();
        assert!(!rep.premise_supported());
        assert!(!rep.success());
        assert_eq!(rep.to_report(s.group.alphabet()).outcome(), crate::report::Outcome::Fail);
    }

    #[test]
    fn between_terminal_identity_words_are_word_problem() {
        let s = z2z();
        let a = build(&s);
        let got: BTreeSet<Word> = between_terminal_identity_words(&a, 8).into_iter().collect();
        let want: BTreeSet<Word> = a.automaton().alphabet().words(8).filter(|w| exponent_sum(w) == 0).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn round_trip_dihedral() {
        let s = scenario(include_str!("../fixtures/dinf-translations.scenario"));
        let rep = verify_main_theorem(&s.embedding_spec().unwrap(), &s.theorem_bounds()).unwrap();
        assert!(rep.disagreements.is_empty());
        assert_eq!(rep.extraction.index_bound, 2);
        assert_eq!(rep.to_report(s.group.alphabet()).outcome(), crate::report::Outcome::Pass);
    }
}
