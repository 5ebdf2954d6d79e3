//! Classical nondeterministic finite automata with ε-moves, simulated by subsets.

use std::collections::BTreeSet;

use crate::group::Letter;

#[derive(Clone, Debug)]
pub struct FiniteAutomaton {
    states: usize,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    /// Outgoing `(label, dst)` per state; `None` is an ε-move.
    out: Vec<Vec<(Option<Letter>, usize)>>,
}

impl FiniteAutomaton {
    pub fn new(states: usize, initials: BTreeSet<usize>, finals: BTreeSet<usize>) -> Self {
        FiniteAutomaton { states, initials, finals, out: vec![Vec::new(); states] }
    }

    pub fn add_state(&mut self) -> usize {
        self.out.push(Vec::new());
        self.states += 1;
        self.states - 1
    }

    pub fn add_edge(&mut self, src: usize, label: Option<Letter>, dst: usize) {
        self.out[src].push((label, dst));
    }

    /// Adds a path reading `word` from `src` to `dst`, through fresh states if needed.
    pub fn add_word_edge(&mut self, src: usize, word: &[Letter], dst: usize) {
        match word {
            [] => self.add_edge(src, None, dst),
            [x] => self.add_edge(src, Some(*x), dst),
            [x, rest @ ..] => {
                let mid = self.add_state();
                self.add_edge(src, Some(*x), mid);
                self.add_word_edge(mid, rest, dst);
            }
        }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initials(&self) -> &BTreeSet<usize> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(label, r) in &self.out[q] {
                if label.is_none() && set.insert(r) {
                    stack.push(r);
                }
            }
        }
    }

    /// States reachable from the initial set reading exactly `word`.
    pub fn reach(&self, word: &[Letter]) -> BTreeSet<usize> {
        let mut current = self.initials.clone();
        self.closure(&mut current);
        for &x in word {
            let mut next = BTreeSet::new();
            for &q in &current {
                for &(label, r) in &self.out[q] {
                    if label == Some(x) {
                        next.insert(r);
                    }
                }
            }
            self.closure(&mut next);
            if next.is_empty() {
                return next;
            }
            current = next;
        }
        current
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.reach(word).iter().any(|q| self.finals.contains(q))
    }
}
