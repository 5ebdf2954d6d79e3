use std::fmt;

/// A generator of a free group or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        FreeLetter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        FreeLetter { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: FreeLetter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// Freely reduced word in a free group. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<FreeLetter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// Reduces an arbitrary sequence of letters by repeated leftmost cancellation.
    pub fn reduce<I: IntoIterator<Item = FreeLetter>>(letters: I) -> Self {
        let mut out: Vec<FreeLetter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        // Both operands are reduced, so cancellation only happens across the seam.
        let mut keep = self.0.len();
        let mut skip = 0;
        while keep > 0 && skip < other.0.len() && self.0[keep - 1].cancels(other.0[skip]) {
            keep -= 1;
            skip += 1;
        }
        let mut out = Vec::with_capacity(keep + other.0.len() - skip);
        out.extend_from_slice(&self.0[..keep]);
        out.extend_from_slice(&other.0[skip..]);
        FreeWord(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// All reduced words of length at most `max_len` over `rank` generators.
    pub fn enumerate(rank: usize, max_len: usize) -> Vec<FreeWord> {
        let mut all = vec![FreeWord::identity()];
        if rank == 0 {
            return all;
        }
        let mut layer = vec![FreeWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..rank {
                    for inverse in [false, true] {
                        let l = FreeLetter::new(g, inverse);
                        if w.0.last().is_some_and(|&t| t.cancels(l)) {
                            continue;
                        }
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(FreeWord(v));
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            let c = super::literal::generator_char(l.generator);
            if l.inverse {
                write!(f, "{}", c.to_ascii_uppercase())?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> FreeLetter {
        FreeLetter::new(0, false)
    }
    fn big_a() -> FreeLetter {
        FreeLetter::new(0, true)
    }
    fn b() -> FreeLetter {
        FreeLetter::new(1, false)
    }

    #[test]
    fn cancellation() {
        let x = FreeWord::reduce([a()]);
        let y = FreeWord::reduce([big_a()]);
        assert!(x.multiply(&y).is_empty());
    }

    #[test]
    fn nested_cancellation_across_seam() {
        let x = FreeWord::reduce([b(), a()]);
        let y = x.inverse();
        assert!(x.multiply(&y).is_empty());
        let z = FreeWord::reduce([big_a(), b()]);
        assert_eq!(x.multiply(&z), FreeWord::reduce([b(), b()]));
    }

    #[test]
    fn rank_one_enumeration() {
        let words = FreeWord::enumerate(1, 2);
        assert_eq!(words.len(), 5);
    }

    #[test]
    fn enumeration_counts_match_reduced_word_formula() {
        // 1 + 2r * sum (2r-1)^k
        for rank in 1..=3usize {
            for len in 0..=4usize {
                let expected: usize = 1 + (0..len)
                    .map(|k| 2 * rank * (2 * rank - 1).pow(k as u32))
                    .sum::<usize>();
                let words = FreeWord::enumerate(rank, len);
                assert_eq!(words.len(), expected);
                assert!(words.iter().all(|w| w.is_reduced()));
            }
        }
    }
}
