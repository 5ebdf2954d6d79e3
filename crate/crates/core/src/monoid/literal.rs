//! Text forms of monoid descriptors and element literals.
//!
//! Generator letters run `a, b, c, d, f, ..` with `e` skipped, since `e` denotes
//! the empty word. Uppercase letters are formal inverses in free-group literals.

use super::{Element, FreeLetter, FreeWord, Monoid, Permutation, Polycyclic};
use crate::error::ParseError;

pub const MAX_RANK: usize = 25;

pub fn generator_char(i: usize) -> char {
    assert!(i < MAX_RANK, "generator index {i} has no letter");
    let c = b'a' + i as u8;
    if c >= b'e' {
        (c + 1) as char
    } else {
        c as char
    }
}

pub fn char_generator(c: char) -> Option<usize> {
    match c {
        'a'..='d' => Some(c as usize - 'a' as usize),
        'f'..='z' => Some(c as usize - 'a' as usize - 1),
        _ => None,
    }
}

/// `name` or `name(arg, ..)` where each argument is a number or a nested term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Term {
    Number(usize),
    Call { name: String, args: Vec<Term> },
}

pub(crate) fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Cursor::new(text);
    let t = p.term()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input after descriptor"));
    }
    Ok(t)
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, _src: src }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos + 1, msg)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| ParseError::new(start + 1, "number out of range"))
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            false
        };
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[digits_start..self.pos].iter().collect();
        let v: i64 = s.parse().map_err(|_| ParseError::new(start + 1, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(Term::Number(self.number()?));
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a descriptor name"));
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let mut args = Vec::new();
        if self.eat('(') {
            loop {
                args.push(self.term()?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(Term::Call { name, args })
    }
}

fn single_number(name: &str, args: &[Term]) -> Result<usize, String> {
    match args {
        [Term::Number(n)] => Ok(*n),
        _ => Err(format!("{name} takes one numeric argument")),
    }
}

pub(crate) fn monoid_from_term(term: &Term) -> Result<Monoid, String> {
    let Term::Call { name, args } = term else {
        return Err("expected a monoid descriptor, found a number".into());
    };
    let rank_checked = |n: usize| {
        if n > MAX_RANK {
            Err(format!("rank {n} exceeds the {MAX_RANK} available generator letters"))
        } else {
            Ok(n)
        }
    };
    let m = match name.as_str() {
        "trivial" if args.is_empty() => Monoid::Trivial,
        "free-group" => Monoid::FreeGroup { rank: rank_checked(single_number(name, args)?)? },
        "free-abelian" => Monoid::FreeAbelian { rank: single_number(name, args)? },
        "polycyclic" => Monoid::Polycyclic { rank: rank_checked(single_number(name, args)?)? },
        "sym" => Monoid::Symmetric { degree: single_number(name, args)? },
        "product" if !args.is_empty() => {
            let factors = args.iter().map(monoid_from_term).collect::<Result<Vec<_>, _>>()?;
            if factors.iter().any(|f| matches!(f, Monoid::Product(_))) {
                return Err("nested products are not supported".into());
            }
            Monoid::Product(factors)
        }
        other => return Err(format!("unknown monoid kind {other:?}")),
    };
    Ok(m)
}

pub(crate) fn parse_monoid(text: &str) -> Result<Monoid, ParseError> {
    let term = parse_term(text)?;
    monoid_from_term(&term).map_err(|m| ParseError::new(1, m))
}

pub(crate) fn parse_element(monoid: &Monoid, text: &str) -> Result<Element, ParseError> {
    if let Monoid::Product(factors) = monoid {
        let parts = split_top_level(text, '*');
        if parts.len() != factors.len() {
            return Err(ParseError::new(
                1,
                format!("expected {} factors separated by '*', found {}", factors.len(), parts.len()),
            ));
        }
        let mut comps = Vec::with_capacity(parts.len());
        for ((offset, part), factor) in parts.into_iter().zip(factors) {
            let e = parse_element(factor, part).map_err(|mut err| {
                err.column += offset;
                err
            })?;
            comps.push(e);
        }
        return Ok(Element::Tuple(comps));
    }
    let mut c = Cursor::new(text);
    let e = parse_simple(monoid, &mut c)?;
    c.skip_ws();
    if !c.at_end() {
        return Err(c.error("trailing input after element"));
    }
    Ok(e)
}

/// Splits on `sep`, returning each piece with its character offset.
fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start_byte = 0;
    let mut start_char = 0;
    for (ci, (bi, ch)) in text.char_indices().enumerate() {
        if ch == sep {
            out.push((start_char, &text[start_byte..bi]));
            start_byte = bi + ch.len_utf8();
            start_char = ci + 1;
        }
    }
    out.push((start_char, &text[start_byte..]));
    out
}

fn parse_simple(monoid: &Monoid, c: &mut Cursor<'_>) -> Result<Element, ParseError> {
    c.skip_ws();
    match monoid {
        Monoid::Trivial => {
            c.expect('1')?;
            Ok(Element::Trivial)
        }
        Monoid::FreeGroup { rank } => {
            if c.eat('e') {
                return Ok(Element::Free(FreeWord::identity()));
            }
            let mut letters = Vec::new();
            loop {
                c.skip_ws();
                let Some(ch) = c.peek() else { break };
                let Some(g) = char_generator(ch.to_ascii_lowercase()) else {
                    if letters.is_empty() {
                        return Err(c.error(format!("expected a generator letter, found {ch:?}")));
                    }
                    break;
                };
                if g >= *rank {
                    return Err(c.error(format!("generator {ch:?} outside rank {rank}")));
                }
                letters.push(FreeLetter::new(g, ch.is_ascii_uppercase()));
                c.pos += 1;
            }
            if letters.is_empty() {
                return Err(c.error("empty free-group literal; use 'e'"));
            }
            Ok(Element::Free(FreeWord::reduce(letters)))
        }
        Monoid::FreeAbelian { rank } => {
            c.expect('[')?;
            let mut v = Vec::new();
            if !c.eat(']') {
                loop {
                    v.push(c.signed()?);
                    if c.eat(']') {
                        break;
                    }
                    c.expect(',')?;
                }
            }
            if v.len() != *rank {
                return Err(c.error(format!("expected {rank} coordinates, found {}", v.len())));
            }
            Ok(Element::Vector(v))
        }
        Monoid::Polycyclic { rank } => {
            if c.eat('0') {
                return Ok(Element::Poly(Polycyclic::Zero));
            }
            c.expect('(')?;
            let pop = stack_word(c, *rank)?;
            c.expect('|')?;
            let push = stack_word(c, *rank)?;
            c.expect(')')?;
            Ok(Element::Poly(Polycyclic::pair(pop, push)))
        }
        Monoid::Symmetric { degree } => {
            if c.eat('i') {
                c.expect('d')?;
                return Ok(Element::Perm(Permutation::identity(*degree)));
            }
            let mut cycles = Vec::new();
            while c.eat('(') {
                let mut cycle = Vec::new();
                while !c.eat(')') {
                    let x = c.number()?;
                    if x >= *degree {
                        return Err(c.error(format!("point {x} outside degree {degree}")));
                    }
                    cycle.push(x);
                    if c.at_end() {
                        return Err(c.error("unterminated cycle"));
                    }
                }
                if cycle.is_empty() {
                    return Err(c.error("empty cycle"));
                }
                cycles.push(cycle);
                c.skip_ws();
            }
            if cycles.is_empty() {
                return Err(c.error("expected cycle notation or 'id'"));
            }
            Permutation::from_cycles(*degree, &cycles)
                .map(Element::Perm)
                .ok_or_else(|| c.error("cycle repeats a point"))
        }
        Monoid::Product(_) => Err(c.error("nested product literal")),
    }
}

fn stack_word(c: &mut Cursor<'_>, rank: usize) -> Result<Vec<usize>, ParseError> {
    c.skip_ws();
    if c.eat('e') {
        return Ok(Vec::new());
    }
    let mut w = Vec::new();
    while let Some(ch) = c.peek() {
        let Some(g) = char_generator(ch) else { break };
        if g >= rank {
            return Err(c.error(format!("stack letter {ch:?} outside rank {rank}")));
        }
        w.push(g);
        c.pos += 1;
    }
    if w.is_empty() {
        return Err(c.error("expected a stack word or 'e'"));
    }
    Ok(w)
}

pub(crate) fn format_element(element: &Element) -> String {
    match element {
        Element::Trivial => "1".to_string(),
        Element::Free(w) => w.to_string(),
        Element::Vector(v) => {
            let parts: Vec<String> = v.iter().map(i64::to_string).collect();
            format!("[{}]", parts.join(","))
        }
        Element::Poly(p) => p.to_string(),
        Element::Perm(p) => p.to_string(),
        Element::Tuple(cs) => cs.iter().map(format_element).collect::<Vec<_>>().join(" * "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_letters_skip_e() {
        assert_eq!(generator_char(3), 'd');
        assert_eq!(generator_char(4), 'f');
        for i in 0..MAX_RANK {
            assert_eq!(char_generator(generator_char(i)), Some(i));
        }
        assert_eq!(char_generator('e'), None);
    }

    #[test]
    fn free_group_literal_with_capitals() {
        let m = Monoid::FreeGroup { rank: 2 };
        let e = parse_element(&m, "a B").unwrap();
        assert_eq!(
            e,
            Element::Free(FreeWord::reduce([FreeLetter::new(0, false), FreeLetter::new(1, true)]))
        );
        assert_eq!(parse_element(&m, "aA").unwrap(), Element::Free(FreeWord::identity()));
    }

    #[test]
    fn vector_literal() {
        let m = Monoid::FreeAbelian { rank: 2 };
        assert_eq!(parse_element(&m, "[1,-2]").unwrap(), Element::Vector(vec![1, -2]));
        assert_eq!(parse_element(&m, "[ +1 , -2 ]").unwrap(), Element::Vector(vec![1, -2]));
        assert!(parse_element(&m, "[1]").is_err());
    }

    #[test]
    fn polycyclic_literal() {
        let m = Monoid::Polycyclic { rank: 2 };
        assert_eq!(
            parse_element(&m, "(ab|e)").unwrap(),
            Element::Poly(Polycyclic::pair(vec![0, 1], vec![]))
        );
        assert_eq!(parse_element(&m, "0").unwrap(), Element::Poly(Polycyclic::Zero));
        let err = parse_element(&m, "(ac|e)").unwrap_err();
        assert_eq!(err.column, 3);
    }

    #[test]
    fn permutation_and_product_literals() {
        let m = Monoid::Product(vec![Monoid::Symmetric { degree: 5 }, Monoid::FreeAbelian { rank: 1 }]);
        let e = parse_element(&m, "(0 2 1)(3 4) * [3]").unwrap();
        assert_eq!(format_element(&e), "(0 2 1)(3 4) * [3]");
        let err = parse_element(&m, "(0 2 1) * [x]").unwrap_err();
        assert_eq!(err.column, 12);
    }

    #[test]
    fn descriptors() {
        assert_eq!(parse_monoid("free-abelian(3)").unwrap(), Monoid::FreeAbelian { rank: 3 });
        assert_eq!(
            parse_monoid("product(sym(3), trivial)").unwrap(),
            Monoid::Product(vec![Monoid::Symmetric { degree: 3 }, Monoid::Trivial])
        );
        let err = parse_monoid("bicyclic(1)").unwrap_err();
        assert!(err.message.contains("bicyclic"));
        assert!(parse_monoid("free-group(26)").is_err());
    }
}
