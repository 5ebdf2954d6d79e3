//! Concrete groups given by faithful representations, evaluated on words over
//! an involutive alphabet, together with subgroup predicates and coset tables.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::monoid::literal::{parse_term, Term};
use crate::monoid::{Element, FreeWord, Monoid, Permutation};

/// Index of a letter in an [`Alphabet`].
pub type Letter = usize;
/// A word over an alphabet, as letter indices.
pub type Word = Vec<Letter>;

/// Finite input alphabet of single characters, optionally with an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
    inverse: Vec<Option<Letter>>,
}

impl Alphabet {
    pub fn new(letters: Vec<char>) -> Result<Self> {
        for (i, &c) in letters.iter().enumerate() {
            if c.is_whitespace() || matches!(c, ',' | '#' | '"' | 'e') {
                return Err(Error::InvalidAlphabet(format!("{c:?} cannot be an input letter")));
            }
            if letters[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter {c:?}")));
            }
        }
        let inverse = vec![None; letters.len()];
        Ok(Alphabet { letters, inverse })
    }

    /// Declares `x` and `y` mutually inverse. `x == y` marks a self-inverse letter.
    pub fn set_inverse(&mut self, x: char, y: char) -> Result<()> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        for (a, b) in [(i, j), (j, i)] {
            if self.inverse[a].is_some_and(|k| k != b) {
                return Err(Error::InvalidAlphabet(format!(
                    "letter {:?} given two different inverses",
                    self.letters[a]
                )));
            }
        }
        self.inverse[i] = Some(j);
        self.inverse[j] = Some(i);
        Ok(())
    }

    pub fn with_inverses(mut self, pairs: &[(char, char)]) -> Result<Self> {
        for &(x, y) in pairs {
            self.set_inverse(x, y)?;
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn char_of(&self, x: Letter) -> char {
        self.letters[x]
    }

    pub fn index_of(&self, c: char) -> Result<Letter> {
        self.letters.iter().position(|&l| l == c).ok_or(Error::UnknownLetter(c))
    }

    pub fn inverse_of(&self, x: Letter) -> Option<Letter> {
        self.inverse[x]
    }

    /// Declared inverse pairs, each listed once.
    pub fn inverse_pairs(&self) -> Vec<(char, char)> {
        let mut out = Vec::new();
        for (i, inv) in self.inverse.iter().enumerate() {
            if let Some(j) = *inv {
                if i <= j {
                    out.push((self.letters[i], self.letters[j]));
                }
            }
        }
        out
    }

    pub fn into_involutive(self) -> Result<InvolutiveAlphabet> {
        if let Some(i) = self.inverse.iter().position(Option::is_none) {
            return Err(Error::NotInvolutive(self.letters[i]));
        }
        Ok(InvolutiveAlphabet(self))
    }

    /// Parses a word; `e` or the empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Vec::new());
        }
        t.chars().filter(|c| !c.is_whitespace()).map(|c| self.index_of(c)).collect()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            "e".to_string()
        } else {
            w.iter().map(|&x| self.letters[x]).collect()
        }
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|&&x| x >= self.len()) {
            Some(&x) => Err(Error::LetterOutOfRange(x)),
            None => Ok(()),
        }
    }

    pub fn words(&self, max_len: usize) -> Words {
        enumerate_words(self.len(), max_len)
    }
}

/// An alphabet whose involution is total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveAlphabet(Alphabet);

impl InvolutiveAlphabet {
    pub fn inverse(&self, x: Letter) -> Letter {
        self.0.inverse[x].expect("involution is total")
    }

    /// Reverse of `w` with every letter replaced by its inverse.
    pub fn formal_inverse(&self, w: &[Letter]) -> Word {
        w.iter().rev().map(|&x| self.inverse(x)).collect()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.0
    }
}

impl Deref for InvolutiveAlphabet {
    type Target = Alphabet;

    fn deref(&self) -> &Alphabet {
        &self.0
    }
}

/// All words of length at most `max_len` over `size` letters, in length-lexicographic order.
pub fn enumerate_words(size: usize, max_len: usize) -> Words {
    Words { size, max_len, next: Some(Vec::new()) }
}

pub struct Words {
    size: usize,
    max_len: usize,
    next: Option<Word>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut w = current.clone();
        // Increment as a base-`size` counter; overflow moves to the next length.
        let mut i = w.len();
        loop {
            if i == 0 {
                if w.len() < self.max_len && self.size > 0 {
                    self.next = Some(vec![0; w.len() + 1]);
                }
                break;
            }
            i -= 1;
            if w[i] + 1 < self.size {
                w[i] += 1;
                self.next = Some(w);
                break;
            }
            w[i] = 0;
        }
        Some(current)
    }
}

/// Which concrete group a [`GroupOracle`] computes in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    FreeAbelian(usize),
    FreeGroup(usize),
    Symmetric(usize),
    /// Affine maps `y ↦ ±y + n` of the integers.
    DihedralInf,
    Product(Vec<GroupKind>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Vector(Vec<i64>),
    Free(FreeWord),
    Perm(Permutation),
    /// `y ↦ sign·y + shift`.
    Affine { sign: i8, shift: i64 },
    Tuple(Vec<GroupElement>),
}

impl GroupKind {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupKind::FreeAbelian(n) => GroupElement::Vector(vec![0; *n]),
            GroupKind::FreeGroup(_) => GroupElement::Free(FreeWord::identity()),
            GroupKind::Symmetric(m) => GroupElement::Perm(Permutation::identity(*m)),
            GroupKind::DihedralInf => GroupElement::Affine { sign: 1, shift: 0 },
            GroupKind::Product(ks) => GroupElement::Tuple(ks.iter().map(GroupKind::identity).collect()),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupKind::DihedralInf, GroupElement::Affine { sign, .. }) => sign.abs() == 1,
            (GroupKind::Product(ks), GroupElement::Tuple(cs)) => {
                ks.len() == cs.len() && ks.iter().zip(cs).all(|(k, c)| k.contains(c))
            }
            (GroupKind::Product(_), _) | (GroupKind::DihedralInf, _) => false,
            _ => match (self.as_monoid(), group_to_monoid_element(g)) {
                (Some(m), Some(e)) => m.contains(&e),
                _ => false,
            },
        }
    }

    /// Product `a · b`, reading left to right.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (a, b) {
            (GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElement::Free(x), GroupElement::Free(y)) => GroupElement::Free(x.multiply(y)),
            (GroupElement::Perm(x), GroupElement::Perm(y)) => GroupElement::Perm(x.compose(y)),
            (GroupElement::Affine { sign: s1, shift: n1 }, GroupElement::Affine { sign: s2, shift: n2 }) => {
                GroupElement::Affine { sign: s1 * s2, shift: *s2 as i64 * n1 + n2 }
            }
            (GroupElement::Tuple(x), GroupElement::Tuple(y)) => {
                let GroupKind::Product(ks) = self else { unreachable!("tuple outside product") };
                GroupElement::Tuple(
                    ks.iter().zip(x.iter().zip(y)).map(|(k, (p, q))| k.multiply(p, q)).collect(),
                )
            }
            _ => panic!("group elements of different kinds"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match a {
            GroupElement::Vector(v) => GroupElement::Vector(v.iter().map(|x| -x).collect()),
            GroupElement::Free(w) => GroupElement::Free(w.inverse()),
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            // y = s·x + n  ⇒  x = s·y − s·n
            GroupElement::Affine { sign, shift } => {
                GroupElement::Affine { sign: *sign, shift: -(*sign as i64) * shift }
            }
            GroupElement::Tuple(cs) => {
                let GroupKind::Product(ks) = self else { unreachable!("tuple outside product") };
                GroupElement::Tuple(ks.iter().zip(cs).map(|(k, c)| k.inverse(c)).collect())
            }
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    /// Membership in the distinguished index-2 ("parity") subgroup: even coordinate or
    /// exponent sum, even permutations, orientation-preserving affine maps; componentwise
    /// for products.
    pub fn in_parity_subgroup(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (_, GroupElement::Vector(v)) => v.iter().sum::<i64>().rem_euclid(2) == 0,
            (_, GroupElement::Free(w)) => {
                let exp: i64 = w.letters().iter().map(|l| if l.inverse { -1 } else { 1 }).sum();
                exp.rem_euclid(2) == 0
            }
            (_, GroupElement::Perm(p)) => p.is_even(),
            (_, GroupElement::Affine { sign, .. }) => *sign == 1,
            (GroupKind::Product(ks), GroupElement::Tuple(cs)) => {
                ks.iter().zip(cs).all(|(k, c)| k.in_parity_subgroup(c))
            }
            _ => false,
        }
    }

    fn as_monoid(&self) -> Option<Monoid> {
        match self {
            GroupKind::FreeAbelian(n) => Some(Monoid::FreeAbelian { rank: *n }),
            GroupKind::FreeGroup(n) => Some(Monoid::FreeGroup { rank: *n }),
            GroupKind::Symmetric(m) => Some(Monoid::Symmetric { degree: *m }),
            _ => None,
        }
    }

    /// Parses an element literal: the monoid literal forms, plus affine maps
    /// `x`, `x+3`, `-x`, `-x-1` for the infinite dihedral group.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, ParseError> {
        match self {
            GroupKind::DihedralInf => parse_affine(text),
            GroupKind::Product(ks) => {
                let parts: Vec<&str> = text.split('*').collect();
                if parts.len() != ks.len() {
                    return Err(ParseError::new(1, format!("expected {} factors", ks.len())));
                }
                let mut offset = 0;
                let mut out = Vec::new();
                for (k, part) in ks.iter().zip(parts) {
                    out.push(k.parse_element(part).map_err(|mut e| {
                        e.column += offset;
                        e
                    })?);
                    offset += part.chars().count() + 1;
                }
                Ok(GroupElement::Tuple(out))
            }
            _ => {
                let m = self.as_monoid().expect("non-product, non-affine kinds are monoids");
                let e = m.parse_element(text)?;
                Ok(monoid_to_group_element(e))
            }
        }
    }

    pub fn format_element(&self, a: &GroupElement) -> String {
        a.to_string()
    }
}

fn monoid_to_group_element(e: Element) -> GroupElement {
    match e {
        Element::Vector(v) => GroupElement::Vector(v),
        Element::Free(w) => GroupElement::Free(w),
        Element::Perm(p) => GroupElement::Perm(p),
        other => unreachable!("group literal produced {other:?}"),
    }
}

fn group_to_monoid_element(g: &GroupElement) -> Option<Element> {
    match g {
        GroupElement::Vector(v) => Some(Element::Vector(v.clone())),
        GroupElement::Free(w) => Some(Element::Free(w.clone())),
        GroupElement::Perm(p) => Some(Element::Perm(p.clone())),
        _ => None,
    }
}

fn parse_affine(text: &str) -> Result<GroupElement, ParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (sign, rest) = match s.strip_prefix("-x") {
        Some(r) => (-1, r),
        None => match s.strip_prefix("x") {
            Some(r) => (1, r),
            None => return Err(ParseError::new(1, "expected an affine map such as x+1 or -x")),
        },
    };
    let shift = if rest.is_empty() {
        0
    } else {
        let digits = rest.strip_prefix('+').unwrap_or(rest);
        digits
            .parse::<i64>()
            .ok()
            .filter(|_| rest.starts_with(['+', '-']))
            .ok_or_else(|| ParseError::new(s.len() - rest.len() + 1, "expected +n or -n after x"))?
    };
    Ok(GroupElement::Affine { sign, shift })
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => write!(f, "{}", Element::Vector(v.clone())),
            GroupElement::Free(w) => write!(f, "{w}"),
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Affine { sign, shift } => {
                f.write_str(if *sign < 0 { "-x" } else { "x" })?;
                match shift.cmp(&0) {
                    std::cmp::Ordering::Greater => write!(f, "+{shift}"),
                    std::cmp::Ordering::Less => write!(f, "{shift}"),
                    std::cmp::Ordering::Equal => Ok(()),
                }
            }
            GroupElement::Tuple(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::FreeAbelian(n) => write!(f, "free-abelian({n})"),
            GroupKind::FreeGroup(n) => write!(f, "free-group({n})"),
            GroupKind::Symmetric(m) => write!(f, "sym({m})"),
            GroupKind::DihedralInf => f.write_str("dihedral-inf"),
            GroupKind::Product(ks) => {
                f.write_str("product(")?;
                for (i, k) in ks.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn group_kind_from_term(t: &Term) -> Result<GroupKind, String> {
    let Term::Call { name, args } = t else {
        return Err("expected a group descriptor".into());
    };
    let one = || match args.as_slice() {
        [Term::Number(n)] => Ok(*n),
        _ => Err(format!("{name} takes one numeric argument")),
    };
    Ok(match name.as_str() {
        "free-abelian" => GroupKind::FreeAbelian(one()?),
        "free-group" => {
            let n = one()?;
            if n > crate::monoid::MAX_RANK {
                return Err(format!("rank {n} too large"));
            }
            GroupKind::FreeGroup(n)
        }
        "sym" => GroupKind::Symmetric(one()?),
        "dihedral-inf" if args.is_empty() => GroupKind::DihedralInf,
        "product" if !args.is_empty() => {
            let ks = args.iter().map(group_kind_from_term).collect::<Result<Vec<_>, _>>()?;
            if ks.iter().any(|k| matches!(k, GroupKind::Product(_))) {
                return Err("nested products are not supported".into());
            }
            GroupKind::Product(ks)
        }
        other => return Err(format!("unknown group kind {other:?}")),
    })
}

impl FromStr for GroupKind {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = parse_term(s)?;
        group_kind_from_term(&t).map_err(|m| ParseError::new(1, m))
    }
}

/// A computable group `H`, presented by the images of the letters of an involutive alphabet.
///
/// The kernel of evaluation is the normal subgroup whose membership language is the word problem.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    kind: GroupKind,
    alphabet: InvolutiveAlphabet,
    images: Vec<GroupElement>,
}

impl GroupOracle {
    pub fn new(kind: GroupKind, alphabet: InvolutiveAlphabet, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidGroup(format!(
                "{} letters but {} images",
                alphabet.len(),
                images.len()
            )));
        }
        for (x, g) in images.iter().enumerate() {
            if !kind.contains(g) {
                return Err(Error::InvalidGroup(format!(
                    "image {g} of {:?} is not an element of {kind}",
                    alphabet.char_of(x)
                )));
            }
        }
        for x in 0..alphabet.len() {
            let y = alphabet.inverse(x);
            if kind.inverse(&images[x]) != images[y] {
                return Err(Error::InvalidGroup(format!(
                    "images of {:?} and {:?} are not mutually inverse",
                    alphabet.char_of(x),
                    alphabet.char_of(y)
                )));
            }
        }
        Ok(GroupOracle { kind, alphabet, images })
    }

    /// Builds an oracle from `(letter, image)` pairs. Inverse letters come from `inverses`
    /// when given, and otherwise from the unique letter whose image is the group inverse.
    pub fn from_letter_images(
        kind: GroupKind,
        letters: Vec<(char, GroupElement)>,
        inverses: &[(char, char)],
    ) -> Result<Self> {
        let mut alphabet = Alphabet::new(letters.iter().map(|(c, _)| *c).collect())?;
        alphabet = alphabet.with_inverses(inverses)?;
        for (i, (c, g)) in letters.iter().enumerate() {
            if alphabet.inverse_of(i).is_some() {
                continue;
            }
            let inv = kind.inverse(g);
            let matches: Vec<char> =
                letters.iter().filter(|(_, h)| *h == inv).map(|(d, _)| *d).collect();
            match matches.as_slice() {
                [d] => alphabet.set_inverse(*c, *d)?,
                [] => return Err(Error::NotInvolutive(*c)),
                _ => {
                    return Err(Error::InvalidGroup(format!(
                        "inverse of {c:?} is ambiguous; declare it with an inv line"
                    )))
                }
            }
        }
        let images = letters.into_iter().map(|(_, g)| g).collect();
        GroupOracle::new(kind, alphabet.into_involutive()?, images)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn alphabet(&self) -> &InvolutiveAlphabet {
        &self.alphabet
    }

    pub fn letter_image(&self, x: Letter) -> &GroupElement {
        &self.images[x]
    }

    pub fn identity(&self) -> GroupElement {
        self.kind.identity()
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.kind.multiply(a, b)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.kind.inverse(a)
    }

    pub fn evaluate_word(&self, w: &[Letter]) -> Result<GroupElement> {
        self.alphabet.check_word(w)?;
        Ok(self.evaluate_unchecked(w))
    }

    pub(crate) fn evaluate_unchecked(&self, w: &[Letter]) -> GroupElement {
        w.iter().fold(self.identity(), |acc, &x| self.kind.multiply(&acc, &self.images[x]))
    }

    pub fn in_word_problem(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.kind.is_identity(&self.evaluate_word(w)?))
    }

    pub fn formal_inverse(&self, w: &[Letter]) -> Word {
        self.alphabet.formal_inverse(w)
    }
}

/// Named subgroup membership predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupPredicate {
    /// The distinguished parity subgroup of the group kind.
    Parity,
    Trivial,
    Full,
}

impl FromStr for SubgroupPredicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "parity" => Ok(SubgroupPredicate::Parity),
            "trivial" => Ok(SubgroupPredicate::Trivial),
            "full" => Ok(SubgroupPredicate::Full),
            other => Err(format!("unknown subgroup predicate {other:?}")),
        }
    }
}

impl fmt::Display for SubgroupPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgroupPredicate::Parity => "parity",
            SubgroupPredicate::Trivial => "trivial",
            SubgroupPredicate::Full => "full",
        })
    }
}

/// A subgroup `K` of a [`GroupOracle`] with decidable membership.
#[derive(Clone, Debug)]
pub struct SubgroupOracle {
    parent: GroupOracle,
    predicate: SubgroupPredicate,
    claimed_index_bound: Option<usize>,
}

impl SubgroupOracle {
    pub fn new(parent: GroupOracle, predicate: SubgroupPredicate) -> Self {
        let claimed_index_bound = match predicate {
            SubgroupPredicate::Full => Some(1),
            SubgroupPredicate::Parity => None,
            SubgroupPredicate::Trivial => match parent.kind() {
                GroupKind::Symmetric(m) => Some((1..=*m).product()),
                _ => None,
            },
        };
        SubgroupOracle { parent, predicate, claimed_index_bound }
    }

    pub fn parent(&self) -> &GroupOracle {
        &self.parent
    }

    pub fn predicate(&self) -> SubgroupPredicate {
        self.predicate
    }

    pub fn claimed_index_bound(&self) -> Option<usize> {
        self.claimed_index_bound
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match self.predicate {
            SubgroupPredicate::Full => true,
            SubgroupPredicate::Trivial => self.parent.kind().is_identity(g),
            SubgroupPredicate::Parity => self.parent.kind().in_parity_subgroup(g),
        }
    }

    pub fn contains_word(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.contains(&self.parent.evaluate_word(w)?))
    }

    /// Breadth-first Schreier coset enumeration; fails once more than `max_cosets` appear.
    pub fn coset_enumerate(&self, max_cosets: usize) -> Result<CosetTable> {
        let h = &self.parent;
        let n_letters = h.alphabet().len();
        let mut reps: Vec<Word> = vec![Vec::new()];
        let mut rep_values: Vec<GroupElement> = vec![h.identity()];
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < reps.len() {
            let mut row = Vec::with_capacity(n_letters);
            for x in 0..n_letters {
                let rx = h.multiply(&rep_values[i], h.letter_image(x));
                let found = rep_values
                    .iter()
                    .position(|r| self.contains(&h.multiply(&rx, &h.inverse(r))));
                let j = match found {
                    Some(j) => j,
                    None => {
                        if reps.len() == max_cosets {
                            return Err(Error::CosetLimit(max_cosets));
                        }
                        let mut w = reps[i].clone();
                        w.push(x);
                        reps.push(w);
                        rep_values.push(rx);
                        reps.len() - 1
                    }
                };
                row.push(j);
            }
            transitions.push(row);
            i += 1;
        }
        Ok(CosetTable { representatives: reps, transitions })
    }
}

/// Right cosets `K·g` of a subgroup, with transitions by right multiplication by letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub representatives: Vec<Word>,
    /// `transitions[i][x]` is the coset of `representatives[i] · x`.
    pub transitions: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Checks totality, involution consistency and representative correctness.
    pub fn check(&self, subgroup: &SubgroupOracle) -> Vec<String> {
        let h = subgroup.parent();
        let mut problems = Vec::new();
        if self.representatives.first().is_some_and(|r| !r.is_empty()) {
            problems.push("representative 0 is not the empty word".to_string());
        }
        let values: Vec<GroupElement> =
            self.representatives.iter().map(|r| h.evaluate_unchecked(r)).collect();
        for (i, row) in self.transitions.iter().enumerate() {
            if row.len() != h.alphabet().len() {
                problems.push(format!("coset {i}: {} transitions", row.len()));
                continue;
            }
            for (x, &j) in row.iter().enumerate() {
                if j >= self.len() {
                    problems.push(format!("coset {i}: transition to missing coset {j}"));
                    continue;
                }
                let back = self.transitions[j][h.alphabet().inverse(x)];
                if back != i {
                    problems.push(format!("coset {i}: letter and its inverse do not return"));
                }
                let g = h.multiply(&h.multiply(&values[i], h.letter_image(x)), &h.inverse(&values[j]));
                if !subgroup.contains(&g) {
                    problems.push(format!("coset {i}: wrong target {j} for letter {x}"));
                }
            }
        }
        for i in 0..self.len() {
            for j in 0..i {
                let g = h.multiply(&values[i], &h.inverse(&values[j]));
                if subgroup.contains(&g) {
                    problems.push(format!("cosets {j} and {i} coincide"));
                }
            }
        }
        problems
    }
}
