use std::fmt;

/// Element of a polycyclic monoid, acting on stack words from the right.
///
/// `Pair { pop, push }` sends every stack `w0 ++ pop` to `w0 ++ push`; `Zero` is
/// the empty partial map. Stack letters are generator indices. Distinct pairs denote
/// distinct partial maps, so the pair itself is the normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polycyclic {
    Zero,
    Pair { pop: Vec<usize>, push: Vec<usize> },
}

impl Polycyclic {
    pub fn identity() -> Self {
        Polycyclic::Pair { pop: Vec::new(), push: Vec::new() }
    }

    pub fn push(x: usize) -> Self {
        Polycyclic::Pair { pop: Vec::new(), push: vec![x] }
    }

    pub fn pop(x: usize) -> Self {
        Polycyclic::Pair { pop: vec![x], push: Vec::new() }
    }

    pub fn pair(pop: Vec<usize>, push: Vec<usize>) -> Self {
        Polycyclic::Pair { pop, push }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Polycyclic::Pair { pop, push } if pop.is_empty() && push.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Polycyclic::Zero)
    }

    pub fn size(&self) -> usize {
        match self {
            Polycyclic::Zero => 0,
            Polycyclic::Pair { pop, push } => pop.len() + push.len(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        match self {
            Polycyclic::Zero => None,
            Polycyclic::Pair { pop, push } => pop.iter().chain(push).copied().max(),
        }
    }

    /// Product `self · other`: apply `self` first, then `other`.
    pub fn multiply(&self, other: &Polycyclic) -> Polycyclic {
        let (Polycyclic::Pair { pop: u, push: v }, Polycyclic::Pair { pop: s, push: t }) =
            (self, other)
        else {
            return Polycyclic::Zero;
        };
        if let Some(v0) = v.strip_suffix(s.as_slice()) {
            let mut push = v0.to_vec();
            push.extend_from_slice(t);
            Polycyclic::Pair { pop: u.clone(), push }
        } else if let Some(s0) = s.strip_suffix(v.as_slice()) {
            let mut pop = s0.to_vec();
            pop.extend_from_slice(u);
            Polycyclic::Pair { pop, push: t.clone() }
        } else {
            Polycyclic::Zero
        }
    }

    /// The partial map on stack words, `None` outside the domain.
    pub fn apply(&self, stack: &[usize]) -> Option<Vec<usize>> {
        match self {
            Polycyclic::Zero => None,
            Polycyclic::Pair { pop, push } => {
                let base = stack.strip_suffix(pop.as_slice())?;
                let mut out = base.to_vec();
                out.extend_from_slice(push);
                Some(out)
            }
        }
    }

    /// Zero followed by every pair with `|pop| + |push| <= bound` over `rank` letters.
    pub fn enumerate(rank: usize, bound: usize) -> Vec<Polycyclic> {
        let mut words_by_len: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        for len in 1..=bound {
            let mut layer = Vec::new();
            for w in &words_by_len[len - 1] {
                for x in 0..rank {
                    let mut v = w.clone();
                    v.push(x);
                    layer.push(v);
                }
            }
            words_by_len.push(layer);
        }
        let mut out = vec![Polycyclic::Zero];
        for total in 0..=bound {
            for pop_len in 0..=total {
                for pop in &words_by_len[pop_len] {
                    for push in &words_by_len[total - pop_len] {
                        out.push(Polycyclic::pair(pop.clone(), push.clone()));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Polycyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn word(f: &mut fmt::Formatter<'_>, w: &[usize]) -> fmt::Result {
            if w.is_empty() {
                return f.write_str("e");
            }
            for &x in w {
                write!(f, "{}", super::literal::generator_char(x))?;
            }
            Ok(())
        }
        match self {
            Polycyclic::Zero => f.write_str("0"),
            Polycyclic::Pair { pop, push } => {
                f.write_str("(")?;
                word(f, pop)?;
                f.write_str("|")?;
                word(f, push)?;
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;

    #[test]
    fn push_then_pop_is_identity() {
        assert!(Polycyclic::push(A).multiply(&Polycyclic::pop(A)).is_identity());
    }

    #[test]
    fn pop_then_push_is_partial_identity() {
        let p = Polycyclic::pop(A).multiply(&Polycyclic::push(A));
        assert_eq!(p, Polycyclic::pair(vec![A], vec![A]));
        assert!(!p.is_identity());
        assert_eq!(p.apply(&[]), None);
        assert_eq!(p.apply(&[B, A]), Some(vec![B, A]));
    }

    #[test]
    fn mismatched_pop_is_zero() {
        assert!(Polycyclic::push(A).multiply(&Polycyclic::pop(B)).is_zero());
        assert!(Polycyclic::Zero.multiply(&Polycyclic::identity()).is_zero());
        assert!(Polycyclic::identity().multiply(&Polycyclic::Zero).is_zero());
    }

    #[test]
    fn enumeration_count() {
        // Zero + sum_{n<=b} (n+1) r^n
        assert_eq!(Polycyclic::enumerate(1, 1).len(), 1 + 1 + 2);
        assert_eq!(Polycyclic::enumerate(2, 3).len(), 1 + 1 + 4 + 12 + 32);
    }
}
