//! Register monoids: free groups, free abelian groups, polycyclic monoids,
//! symmetric groups, the trivial monoid and direct products of these.
//!
//! Every element is kept in a unique normal form, so structural equality is
//! equality in the monoid.

mod free_group;
pub(crate) mod literal;
mod permutation;
mod polycyclic;

use std::fmt;
use std::str::FromStr;

pub use free_group::{FreeLetter, FreeWord};
pub use literal::{char_generator, generator_char, MAX_RANK};
pub use permutation::Permutation;
pub use polycyclic::Polycyclic;

use crate::error::{Error, ParseError, Result};

/// Upper limit on enumerated elements before a search is declared infeasible.
pub const ENUMERATION_LIMIT: usize = 200_000;

/// Which register monoid an automaton uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monoid {
    Trivial,
    FreeGroup { rank: usize },
    FreeAbelian { rank: usize },
    Polycyclic { rank: usize },
    Symmetric { degree: usize },
    Product(Vec<Monoid>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Trivial,
    Free(FreeWord),
    Vector(Vec<i64>),
    Poly(Polycyclic),
    Perm(Permutation),
    Tuple(Vec<Element>),
}

impl Monoid {
    pub fn is_group(&self) -> bool {
        match self {
            Monoid::Polycyclic { .. } => false,
            Monoid::Product(fs) => fs.iter().all(Monoid::is_group),
            _ => true,
        }
    }

    /// Groups and polycyclic monoids (and products of these) have unique left inverses.
    pub fn claims_unique_left_inverses(&self) -> bool {
        match self {
            Monoid::Product(fs) => fs.iter().all(Monoid::claims_unique_left_inverses),
            _ => true,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Monoid::Trivial => Element::Trivial,
            Monoid::FreeGroup { .. } => Element::Free(FreeWord::identity()),
            Monoid::FreeAbelian { rank } => Element::Vector(vec![0; *rank]),
            Monoid::Polycyclic { .. } => Element::Poly(Polycyclic::identity()),
            Monoid::Symmetric { degree } => Element::Perm(Permutation::identity(*degree)),
            Monoid::Product(fs) => Element::Tuple(fs.iter().map(Monoid::identity).collect()),
        }
    }

    pub fn contains(&self, element: &Element) -> bool {
        match (self, element) {
            (Monoid::Trivial, Element::Trivial) => true,
            (Monoid::FreeGroup { rank }, Element::Free(w)) => {
                w.is_reduced() && w.max_generator().is_none_or(|g| g < *rank)
            }
            (Monoid::FreeAbelian { rank }, Element::Vector(v)) => v.len() == *rank,
            (Monoid::Polycyclic { rank }, Element::Poly(p)) => {
                p.max_generator().is_none_or(|g| g < *rank)
            }
            (Monoid::Symmetric { degree }, Element::Perm(p)) => p.degree() == *degree,
            (Monoid::Product(fs), Element::Tuple(cs)) => {
                fs.len() == cs.len() && fs.iter().zip(cs).all(|(f, c)| f.contains(c))
            }
            _ => false,
        }
    }

    pub fn check(&self, element: &Element) -> Result<()> {
        if self.contains(element) {
            Ok(())
        } else {
            Err(self.mismatch(element))
        }
    }

    fn mismatch(&self, element: &Element) -> Error {
        Error::MonoidMismatch { monoid: self.to_string(), element: format!("{element:?}") }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(product(a, b))
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    /// True for elements that absorb every product, i.e. polycyclic zero in some coordinate.
    pub fn is_zero(&self, a: &Element) -> bool {
        is_zero(a)
    }

    /// Whether `a·b = 1` for some `b`. A register without one can never return to the identity.
    pub fn has_right_inverse(&self, a: &Element) -> bool {
        has_right_inverse(a)
    }

    /// Two-sided inverse of `a`, if `a` is a unit.
    pub fn try_two_sided_inverse(&self, a: &Element) -> Option<Element> {
        if !self.contains(a) {
            return None;
        }
        inverse(a)
    }

    /// Size used to bound searches: reduced length, 1-norm, `|pop| + |push|`, 0 for permutations.
    pub fn size(&self, a: &Element) -> usize {
        element_size(a)
    }

    /// All distinct elements of size at most `bound`.
    pub fn enumerate(&self, bound: usize) -> Result<Vec<Element>> {
        let out = match self {
            Monoid::Trivial => vec![Element::Trivial],
            Monoid::FreeGroup { rank } => {
                check_feasible(free_group_count(*rank, bound))?;
                FreeWord::enumerate(*rank, bound).into_iter().map(Element::Free).collect()
            }
            Monoid::FreeAbelian { rank } => {
                let mut out = Vec::new();
                let mut v = vec![0i64; *rank];
                vectors(&mut v, 0, bound as i64, &mut out)?;
                out
            }
            Monoid::Polycyclic { rank } => {
                let count: f64 =
                    (0..=bound).map(|n| (n as f64 + 1.0) * (*rank as f64).powi(n as i32)).sum();
                check_feasible(count)?;
                Polycyclic::enumerate(*rank, bound).into_iter().map(Element::Poly).collect()
            }
            Monoid::Symmetric { degree } => {
                let count: f64 = (1..=*degree).map(|k| k as f64).product();
                check_feasible(count)?;
                Permutation::all(*degree).into_iter().map(Element::Perm).collect()
            }
            Monoid::Product(fs) => {
                let per: Vec<Vec<Element>> =
                    fs.iter().map(|f| f.enumerate(bound)).collect::<Result<_>>()?;
                let mut acc: Vec<Vec<Element>> = vec![Vec::new()];
                for factor in per {
                    let mut next = Vec::new();
                    for prefix in &acc {
                        let used: usize = prefix.iter().map(element_size).sum();
                        for e in &factor {
                            if used + element_size(e) <= bound {
                                let mut p = prefix.clone();
                                p.push(e.clone());
                                next.push(p);
                            }
                        }
                    }
                    check_feasible(next.len() as f64)?;
                    acc = next;
                }
                acc.into_iter().map(Element::Tuple).collect()
            }
        };
        Ok(out)
    }

    /// Brute-force search for triples with `b·a = 1 = c·a` and `b != c`.
    pub fn verify_unique_left_inverses(&self, size_bound: usize) -> UliReport {
        let elements = match self.enumerate(size_bound) {
            Ok(e) => e,
            Err(err) => {
                return UliReport { elements: 0, violations: Vec::new(), infeasible: Some(err.to_string()) }
            }
        };
        let n = elements.len();
        if (n as f64) * (n as f64) > 4e8 {
            return UliReport {
                elements: n,
                violations: Vec::new(),
                infeasible: Some(format!("{n} elements is too many for a pairwise scan")),
            };
        }
        let one = self.identity();
        let mut violations = Vec::new();
        for a in &elements {
            let left: Vec<&Element> = elements.iter().filter(|b| product(b, a) == one).collect();
            for (i, b) in left.iter().enumerate() {
                for c in &left[i + 1..] {
                    violations.push(UliViolation { a: a.clone(), b: (*b).clone(), c: (*c).clone() });
                }
            }
        }
        UliReport { elements: n, violations, infeasible: None }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element, ParseError> {
        literal::parse_element(self, text)
    }

    pub fn format_element(&self, element: &Element) -> String {
        literal::format_element(element)
    }
}

fn is_zero(a: &Element) -> bool {
    match a {
        Element::Poly(p) => p.is_zero(),
        Element::Tuple(cs) => cs.iter().any(is_zero),
        _ => false,
    }
}

fn has_right_inverse(a: &Element) -> bool {
    match a {
        // (u|v)·(v|e) = (u|e), which is the identity only when u is empty.
        Element::Poly(Polycyclic::Pair { pop, .. }) => pop.is_empty(),
        Element::Poly(Polycyclic::Zero) => false,
        Element::Tuple(cs) => cs.iter().all(has_right_inverse),
        _ => true,
    }
}

fn product(a: &Element, b: &Element) -> Element {
    match (a, b) {
        (Element::Trivial, Element::Trivial) => Element::Trivial,
        (Element::Free(x), Element::Free(y)) => Element::Free(x.multiply(y)),
        (Element::Vector(x), Element::Vector(y)) => {
            Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        (Element::Poly(x), Element::Poly(y)) => Element::Poly(x.multiply(y)),
        (Element::Perm(x), Element::Perm(y)) => Element::Perm(x.compose(y)),
        (Element::Tuple(x), Element::Tuple(y)) => {
            Element::Tuple(x.iter().zip(y).map(|(p, q)| product(p, q)).collect())
        }
        _ => unreachable!("operands checked against the descriptor"),
    }
}

fn inverse(a: &Element) -> Option<Element> {
    Some(match a {
        Element::Trivial => Element::Trivial,
        Element::Free(w) => Element::Free(w.inverse()),
        Element::Vector(v) => Element::Vector(v.iter().map(|x| -x).collect()),
        Element::Poly(p) if p.is_identity() => Element::Poly(Polycyclic::identity()),
        Element::Poly(_) => return None,
        Element::Perm(p) => Element::Perm(p.inverse()),
        Element::Tuple(cs) => Element::Tuple(cs.iter().map(inverse).collect::<Option<_>>()?),
    })
}

fn element_size(a: &Element) -> usize {
    match a {
        Element::Trivial | Element::Perm(_) => 0,
        Element::Free(w) => w.len(),
        Element::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
        Element::Poly(p) => p.size(),
        Element::Tuple(cs) => cs.iter().map(element_size).sum(),
    }
}

fn free_group_count(rank: usize, bound: usize) -> f64 {
    if rank == 0 {
        return 1.0;
    }
    1.0 + (0..bound).map(|k| 2.0 * rank as f64 * (2.0 * rank as f64 - 1.0).powi(k as i32)).sum::<f64>()
}

fn check_feasible(count: f64) -> Result<()> {
    if count > ENUMERATION_LIMIT as f64 {
        Err(Error::Infeasible(format!("about {count:.0} elements exceeds limit {ENUMERATION_LIMIT}")))
    } else {
        Ok(())
    }
}

fn vectors(v: &mut Vec<i64>, i: usize, budget: i64, out: &mut Vec<Element>) -> Result<()> {
    if i == v.len() {
        out.push(Element::Vector(v.clone()));
        return check_feasible(out.len() as f64);
    }
    for x in -budget..=budget {
        v[i] = x;
        vectors(v, i + 1, budget - x.abs(), out)?;
    }
    v[i] = 0;
    Ok(())
}

/// Outcome of a bounded unique-left-inverse scan.
#[derive(Clone, Debug)]
pub struct UliReport {
    pub elements: usize,
    pub violations: Vec<UliViolation>,
    /// Set when the bound was too large to enumerate.
    pub infeasible: Option<String>,
}

impl UliReport {
    pub fn holds(&self) -> bool {
        self.infeasible.is_none() && self.violations.is_empty()
    }
}

/// `b·a = 1 = c·a` with `b != c`.
#[derive(Clone, Debug)]
pub struct UliViolation {
    pub a: Element,
    pub b: Element,
    pub c: Element,
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::Trivial => f.write_str("trivial"),
            Monoid::FreeGroup { rank } => write!(f, "free-group({rank})"),
            Monoid::FreeAbelian { rank } => write!(f, "free-abelian({rank})"),
            Monoid::Polycyclic { rank } => write!(f, "polycyclic({rank})"),
            Monoid::Symmetric { degree } => write!(f, "sym({degree})"),
            Monoid::Product(fs) => {
                f.write_str("product(")?;
                for (i, m) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Monoid {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        literal::parse_monoid(s)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_element(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(m: &Monoid, s: &str) -> Element {
        m.parse_element(s).unwrap()
    }

    #[test]
    fn polycyclic_products() {
        let m = Monoid::Polycyclic { rank: 2 };
        assert_eq!(m.multiply(&poly(&m, "(e|a)"), &poly(&m, "(a|e)")).unwrap(), m.identity());
        assert_eq!(m.multiply(&poly(&m, "(a|e)"), &poly(&m, "(e|a)")).unwrap(), poly(&m, "(a|a)"));
        assert_eq!(m.multiply(&poly(&m, "(e|a)"), &poly(&m, "(b|e)")).unwrap(), poly(&m, "0"));
    }

    #[test]
    fn free_group_cancellation() {
        let m = Monoid::FreeGroup { rank: 1 };
        let p = m.multiply(&poly(&m, "a"), &poly(&m, "A")).unwrap();
        assert!(m.is_identity(&p));
    }

    #[test]
    fn mismatch_is_an_error() {
        let m = Monoid::FreeAbelian { rank: 2 };
        let err = m.multiply(&Element::Vector(vec![1]), &Element::Vector(vec![1, 2])).unwrap_err();
        assert!(matches!(err, Error::MonoidMismatch { .. }));
        assert!(m.multiply(&Element::Trivial, &m.identity()).is_err());
    }

    #[test]
    fn identity_checks() {
        assert!(Monoid::FreeAbelian { rank: 3 }.is_identity(&Element::Vector(vec![0, 0, 0])));
        let p = Monoid::Polycyclic { rank: 1 };
        assert!(!p.is_identity(&poly(&p, "(a|a)")));
        let s = Monoid::Symmetric { degree: 4 };
        assert!(s.is_identity(&poly(&s, "id")));
    }

    #[test]
    fn two_sided_inverses() {
        let z2 = Monoid::FreeAbelian { rank: 2 };
        assert_eq!(z2.try_two_sided_inverse(&Element::Vector(vec![2, -1])), Some(Element::Vector(vec![-2, 1])));
        let p = Monoid::Polycyclic { rank: 1 };
        assert_eq!(p.try_two_sided_inverse(&poly(&p, "(e|a)")), None);
        assert_eq!(p.try_two_sided_inverse(&p.identity()), Some(p.identity()));
        assert_eq!(p.try_two_sided_inverse(&poly(&p, "0")), None);
    }

    #[test]
    fn enumeration_examples() {
        let p1 = Monoid::Polycyclic { rank: 1 }.enumerate(1).unwrap();
        assert_eq!(p1.len(), 4);
        assert!(p1.contains(&Element::Poly(Polycyclic::Zero)));
        assert_eq!(Monoid::FreeGroup { rank: 1 }.enumerate(2).unwrap().len(), 5);
        assert_eq!(Monoid::Trivial.enumerate(7).unwrap(), vec![Element::Trivial]);
        // |x|+|y| <= 2 in Z^2: 1 + 4 + 8
        assert_eq!(Monoid::FreeAbelian { rank: 2 }.enumerate(2).unwrap().len(), 13);
        assert!(Monoid::Symmetric { degree: 12 }.enumerate(0).is_err());
    }

    #[test]
    fn uli_holds_for_groups_and_polycyclic() {
        for m in [
            Monoid::Polycyclic { rank: 2 },
            Monoid::FreeAbelian { rank: 2 },
            Monoid::Trivial,
            Monoid::FreeGroup { rank: 2 },
            Monoid::Symmetric { degree: 3 },
        ] {
            let r = m.verify_unique_left_inverses(3);
            assert!(r.holds(), "{m}: {:?}", r.violations.first());
            assert!(m.claims_unique_left_inverses());
        }
    }

    #[test]
    fn uli_infeasible_is_reported() {
        let r = Monoid::FreeGroup { rank: 5 }.verify_unique_left_inverses(12);
        assert!(r.infeasible.is_some());
        assert!(!r.holds());
    }

    #[test]
    fn descriptor_display_round_trip() {
        for s in ["trivial", "free-group(2)", "free-abelian(1)", "polycyclic(3)", "sym(3)", "product(sym(3), free-abelian(2))"] {
            let m: Monoid = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
    }

    #[test]
    fn right_inverse_matches_search_and_is_absorbing() {
        let m = Monoid::Polycyclic { rank: 2 };
        let elems = m.enumerate(3).unwrap();
        let one = m.identity();
        for a in &elems {
            let found = elems.iter().any(|b| m.multiply(a, b).unwrap() == one);
            assert_eq!(m.has_right_inverse(a), found, "{}", m.format_element(a));
            if !found {
                for b in &elems {
                    assert!(!m.has_right_inverse(&m.multiply(a, b).unwrap()));
                }
            }
        }
    }
}
