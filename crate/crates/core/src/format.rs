//! Line-oriented text formats for automata, pushdown automata and scenarios.
//!
//! ```text
//! dautomaton
//! monoid = free-abelian(1)
//! alphabet = a,A
//! inv a A
//! states = 2
//! initial = 0
//! terminals = 0
//! edge 0 1 [0] a
//! edge 1 0 [1] a
//! ```
//!
//! `#` starts a comment. In an `edge` line the last field is the input word (`e` for
//! empty) and everything between the endpoints and the word is the register literal.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automaton::{DeterministicMAutomaton, Edge, MAutomaton};
use crate::constructions::{EmbeddingSpec, ExtractionBounds, TheoremBounds};
use crate::error::{Error, ParseError, Result};
use crate::gallery::{PdaTransition, PushdownAutomaton, StackAction};
use crate::group::{Alphabet, GroupElement, GroupKind, GroupOracle, SubgroupOracle, SubgroupPredicate, Word};
use crate::automaton::SearchBounds;
use crate::monoid::{Element, Monoid};

fn err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(column, msg).at_line(line))
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

/// Non-empty lines with comments stripped, and the header keyword.
fn lines(text: &str) -> Result<(Line<'_>, Vec<Line<'_>>)> {
    let mut out = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line { number: i + 1, text: l.split('#').next().unwrap_or("").trim() })
        .filter(|l| !l.text.is_empty());
    let header = out.next().ok_or_else(|| err(1, 1, "empty file"))?;
    Ok((header, out.collect()))
}

fn key_value<'a>(line: &Line<'a>) -> Option<(&'a str, &'a str)> {
    let (k, v) = line.text.split_once('=')?;
    let k = k.trim();
    if k.contains(char::is_whitespace) {
        return None;
    }
    Some((k, v.trim()))
}

fn number(line: &Line<'_>, v: &str) -> Result<usize> {
    v.parse().map_err(|_| err(line.number, 1, format!("expected a number, found {v:?}")))
}

fn number_list(line: &Line<'_>, v: &str) -> Result<BTreeSet<usize>> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| number(line, s)).collect()
}

fn letter_list(line: &Line<'_>, v: &str) -> Result<Vec<char>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(err(line.number, 1, format!("letters are single characters, found {s:?}"))),
            }
        })
        .collect()
}

fn inv_pair(line: &Line<'_>) -> Result<(char, char)> {
    let parts: Vec<&str> = line.text.split_whitespace().collect();
    match parts.as_slice() {
        ["inv", x, y] if x.chars().count() == 1 && y.chars().count() == 1 => {
            Ok((x.chars().next().unwrap(), y.chars().next().unwrap()))
        }
        _ => Err(err(line.number, 1, "expected `inv <letter> <letter>`")),
    }
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(if p.line == 0 { p.at_line(line) } else { p }),
        other => err(line, 1, other.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomatonFile {
    Nondeterministic(MAutomaton),
    Deterministic(DeterministicMAutomaton),
}

impl AutomatonFile {
    pub fn automaton(&self) -> &MAutomaton {
        match self {
            AutomatonFile::Nondeterministic(a) => a,
            AutomatonFile::Deterministic(d) => d.automaton(),
        }
    }

    pub fn deterministic(&self) -> Option<&DeterministicMAutomaton> {
        match self {
            AutomatonFile::Deterministic(d) => Some(d),
            AutomatonFile::Nondeterministic(_) => None,
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<AutomatonFile> {
    let (header, body) = lines(text)?;
    let deterministic = match header.text {
        "automaton" => false,
        "dautomaton" => true,
        other => return Err(err(header.number, 1, format!("expected `automaton` or `dautomaton`, found {other:?}"))),
    };
    let mut monoid: Option<Monoid> = None;
    let mut letters: Option<Vec<char>> = None;
    let mut invs = Vec::new();
    let mut states = None;
    let mut initial = None;
    let mut terminals = None;
    let mut edge_lines = Vec::new();
    for line in &body {
        if line.text.starts_with("edge ") || line.text == "edge" {
            edge_lines.push(line);
            continue;
        }
        if line.text.starts_with("inv ") {
            invs.push((line.number, inv_pair(line)?));
            continue;
        }
        let Some((k, v)) = key_value(line) else {
            return Err(err(line.number, 1, format!("unrecognised line {:?}", line.text)));
        };
        match k {
            "monoid" => monoid = Some(v.parse::<Monoid>().map_err(|e| at_line(line.number, e.into()))?),
            "alphabet" => letters = Some(letter_list(line, v)?),
            "states" => states = Some(number(line, v)?),
            "initial" => initial = Some(number(line, v)?),
            "terminals" => terminals = Some(number_list(line, v)?),
            other => return Err(err(line.number, 1, format!("unknown key {other:?}"))),
        }
    }
    let last = body.last().map_or(header.number, |l| l.number);
    let monoid = monoid.ok_or_else(|| err(last, 1, "missing `monoid =`"))?;
    let letters = letters.ok_or_else(|| err(last, 1, "missing `alphabet =`"))?;
    let states = states.ok_or_else(|| err(last, 1, "missing `states =`"))?;
    let initial = initial.ok_or_else(|| err(last, 1, "missing `initial =`"))?;
    let terminals = terminals.unwrap_or_default();
    let mut alphabet = Alphabet::new(letters).map_err(|e| at_line(last, e))?;
    for (n, (x, y)) in invs {
        alphabet.set_inverse(x, y).map_err(|e| at_line(n, e))?;
    }
    let mut edges = Vec::new();
    for line in &edge_lines {
        let fields: Vec<&str> = line.text.split_whitespace().collect();
        if fields.len() < 5 {
            return Err(err(line.number, 1, "expected `edge <src> <dst> <element> <word|e>`"));
        }
        let src = number(line, fields[1])?;
        let dst = number(line, fields[2])?;
        let literal = fields[3..fields.len() - 1].join(" ");
        let label = monoid.parse_element(&literal).map_err(|e| at_line(line.number, e.into()))?;
        let input = alphabet.parse_word(fields[fields.len() - 1]).map_err(|e| at_line(line.number, e))?;
        if src >= states || dst >= states {
            return Err(err(line.number, 1, format!("edge endpoint outside 0..{states}")));
        }
        edges.push(Edge { src, dst, label, input });
    }
    let a = MAutomaton::new(monoid, alphabet, states, initial, terminals, edges).map_err(|e| at_line(last, e))?;
    if !deterministic {
        return Ok(AutomatonFile::Nondeterministic(a));
    }
    DeterministicMAutomaton::new(a).map(AutomatonFile::Deterministic).map_err(|e| match e {
        Error::Nondeterministic { edge, state, letter } => err(
            edge_lines[edge].number,
            1,
            format!("determinism violation: second edge leaving state {state} on {letter:?}"),
        ),
        Error::NotSingleLetter { edge, len } => err(
            edge_lines[edge].number,
            1,
            format!("deterministic edges read exactly one letter, this one reads {len}"),
        ),
        other => other,
    })
}

pub fn format_automaton(a: &MAutomaton, deterministic: bool) -> String {
    let mut s = String::new();
    s.push_str(if deterministic { "dautomaton\n" } else { "automaton\n" });
    let _ = writeln!(s, "monoid = {}", a.monoid());
    let letters: Vec<String> = a.alphabet().letters().iter().map(char::to_string).collect();
    let _ = writeln!(s, "alphabet = {}", letters.join(","));
    for (x, y) in a.alphabet().inverse_pairs() {
        let _ = writeln!(s, "inv {x} {y}");
    }
    let _ = writeln!(s, "states = {}", a.state_count());
    let _ = writeln!(s, "initial = {}", a.initial());
    let terms: Vec<String> = a.terminals().iter().map(usize::to_string).collect();
    let _ = writeln!(s, "terminals = {}", terms.join(","));
    for e in a.edges() {
        let _ = writeln!(
            s,
            "edge {} {} {} {}",
            e.src,
            e.dst,
            a.monoid().format_element(&e.label),
            a.alphabet().format_word(&e.input)
        );
    }
    s
}

pub fn parse_pda(text: &str) -> Result<PushdownAutomaton> {
    let (header, body) = lines(text)?;
    if header.text != "pda" {
        return Err(err(header.number, 1, format!("expected `pda`, found {:?}", header.text)));
    }
    let (mut letters, mut stack, mut states, mut initial, mut finals) = (None, None, None, None, None);
    let mut trans_lines = Vec::new();
    for line in &body {
        if line.text.starts_with("trans") {
            trans_lines.push(line);
            continue;
        }
        let Some((k, v)) = key_value(line) else {
            return Err(err(line.number, 1, format!("unrecognised line {:?}", line.text)));
        };
        match k {
            "alphabet" => letters = Some(letter_list(line, v)?),
            "stack" => stack = Some(letter_list(line, v)?),
            "states" => states = Some(number(line, v)?),
            "initial" => initial = Some(number(line, v)?),
            "finals" => finals = Some(number_list(line, v)?),
            other => return Err(err(line.number, 1, format!("unknown key {other:?}"))),
        }
    }
    let last = body.last().map_or(header.number, |l| l.number);
    let alphabet = Alphabet::new(letters.ok_or_else(|| err(last, 1, "missing `alphabet =`"))?).map_err(|e| at_line(last, e))?;
    let stack_alphabet: Vec<char> = stack.unwrap_or_default();
    let states = states.ok_or_else(|| err(last, 1, "missing `states =`"))?;
    let initial = initial.ok_or_else(|| err(last, 1, "missing `initial =`"))?;
    let finals = finals.unwrap_or_default();
    let mut transitions = Vec::new();
    for line in trans_lines {
        let f: Vec<&str> = line.text.split_whitespace().collect();
        let bad = || err(line.number, 1, "expected `trans <src> <dst> <letter|e> push x|pop x|none`");
        if f.len() < 5 || f[0] != "trans" {
            return Err(bad());
        }
        let src = number(line, f[1])?;
        let dst = number(line, f[2])?;
        let input = match f[3] {
            "e" => None,
            s => {
                let w = alphabet.parse_word(s).map_err(|e| at_line(line.number, e))?;
                if w.len() != 1 {
                    return Err(bad());
                }
                Some(w[0])
            }
        };
        let stack_index = |s: &str| -> Result<usize> {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => stack_alphabet
                    .iter()
                    .position(|&x| x == c)
                    .ok_or_else(|| err(line.number, 1, format!("unknown stack letter {c:?}"))),
                _ => Err(bad()),
            }
        };
        let action = match f[4..] {
            ["push", x] => StackAction::Push(stack_index(x)?),
            ["pop", x] => StackAction::Pop(stack_index(x)?),
            ["none"] => StackAction::None,
            _ => return Err(bad()),
        };
        transitions.push(PdaTransition { src, dst, input, action });
    }
    let pda = PushdownAutomaton { alphabet, stack_alphabet, states, initial, finals, transitions };
    pda.validate().map_err(|e| at_line(last, e))?;
    Ok(pda)
}

pub fn format_pda(p: &PushdownAutomaton) -> String {
    let mut s = String::from("pda\n");
    let join = |cs: &[char]| cs.iter().map(char::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(s, "alphabet = {}", join(p.alphabet.letters()));
    let _ = writeln!(s, "stack = {}", join(&p.stack_alphabet));
    let _ = writeln!(s, "states = {}", p.states);
    let _ = writeln!(s, "initial = {}", p.initial);
    let finals: Vec<String> = p.finals.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "finals = {}", finals.join(","));
    for t in &p.transitions {
        let input = t.input.map_or("e".to_string(), |x| p.alphabet.char_of(x).to_string());
        let action = match t.action {
            StackAction::Push(x) => format!("push {}", p.stack_alphabet[x]),
            StackAction::Pop(x) => format!("pop {}", p.stack_alphabet[x]),
            StackAction::None => "none".to_string(),
        };
        let _ = writeln!(s, "trans {} {} {} {}", t.src, t.dst, input, action);
    }
    s
}

/// A group, a subgroup predicate, a target monoid, phi on generators, and bounds.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub group: GroupOracle,
    pub subgroup: SubgroupPredicate,
    pub monoid: Monoid,
    pub phi: Vec<(Word, Element)>,
    pub max_len: usize,
    pub max_register_size: usize,
    pub max_cosets: usize,
}

impl Scenario {
    pub fn embedding_spec(&self) -> Result<EmbeddingSpec> {
        EmbeddingSpec::new(SubgroupOracle::new(self.group.clone(), self.subgroup), self.monoid.clone(), self.phi.clone())
    }

    pub fn search_bounds(&self) -> SearchBounds {
        SearchBounds { max_word_len: self.max_len, max_register_size: self.max_register_size }
    }

    pub fn extraction_bounds(&self) -> ExtractionBounds {
        ExtractionBounds {
            max_len: self.max_len,
            sample_len: self.max_len.min(8),
            pair_len: (self.max_len / 2).min(4),
            alt_len: self.max_len.min(6),
            search: self.search_bounds(),
        }
    }

    pub fn theorem_bounds(&self) -> TheoremBounds {
        TheoremBounds { max_len: self.max_len, max_cosets: self.max_cosets, extraction: self.extraction_bounds() }
    }
}

/// Splits on commas outside brackets and parentheses.
fn split_commas(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_letters(line: &Line<'_>, kind: &GroupKind, v: &str) -> Result<Vec<(char, GroupElement)>> {
    let inner = v
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err(line.number, 1, "expected `letters = [ x -> <element>, .. ]`"))?;
    let mut out = Vec::new();
    for (_, item) in split_commas(inner) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (c, lit) = item
            .split_once("->")
            .ok_or_else(|| err(line.number, 1, format!("expected `x -> <element>`, found {item:?}")))?;
        let c = c.trim();
        let mut cs = c.chars();
        let letter = match (cs.next(), cs.next()) {
            (Some(l), None) => l,
            _ => return Err(err(line.number, 1, format!("letters are single characters, found {c:?}"))),
        };
        let g = kind.parse_element(lit.trim()).map_err(|e| at_line(line.number, e.into()))?;
        out.push((letter, g));
    }
    Ok(out)
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let (header, body) = lines(text)?;
    if header.text != "scenario" {
        return Err(err(header.number, 1, format!("expected `scenario`, found {:?}", header.text)));
    }
    let mut kind: Option<GroupKind> = None;
    let mut letters_line: Option<&Line<'_>> = None;
    let mut invs = Vec::new();
    let mut subgroup = None;
    let mut monoid: Option<Monoid> = None;
    let mut phi_lines = Vec::new();
    let (mut max_len, mut max_register_size, mut max_cosets) = (10, 8, 64);
    for line in &body {
        if line.text.starts_with("inv ") {
            invs.push(inv_pair(line)?);
            continue;
        }
        if line.text.starts_with("phi ") {
            phi_lines.push(line);
            continue;
        }
        let Some((k, v)) = key_value(line) else {
            return Err(err(line.number, 1, format!("unrecognised line {:?}", line.text)));
        };
        match k {
            "group" => kind = Some(v.parse::<GroupKind>().map_err(|e| at_line(line.number, e.into()))?),
            "letters" => letters_line = Some(line),
            "subgroup" => subgroup = Some(v.parse::<SubgroupPredicate>().map_err(|m| err(line.number, 1, m))?),
            "monoid" => monoid = Some(v.parse::<Monoid>().map_err(|e| at_line(line.number, e.into()))?),
            "max_len" => max_len = number(line, v)?,
            "max_register_size" => max_register_size = number(line, v)?,
            "max_cosets" => max_cosets = number(line, v)?,
            other => return Err(err(line.number, 1, format!("unknown key {other:?}"))),
        }
    }
    let last = body.last().map_or(header.number, |l| l.number);
    let kind = kind.ok_or_else(|| err(last, 1, "missing `group =`"))?;
    let letters_line = letters_line.ok_or_else(|| err(last, 1, "missing `letters =`"))?;
    let (_, v) = key_value(letters_line).expect("matched as key-value");
    let letters = parse_letters(letters_line, &kind, v)?;
    let group = GroupOracle::from_letter_images(kind, letters, &invs).map_err(|e| at_line(letters_line.number, e))?;
    let monoid = monoid.ok_or_else(|| err(last, 1, "missing `monoid =`"))?;
    let mut phi = Vec::new();
    for line in phi_lines {
        // phi "word" = literal
        let rest = line.text["phi".len()..].trim_start();
        let bad = || err(line.number, 1, "expected `phi \"<word>\" = <element>`");
        let rest = rest.strip_prefix('"').ok_or_else(bad)?;
        let (word, rest) = rest.split_once('"').ok_or_else(bad)?;
        let lit = rest.trim_start().strip_prefix('=').ok_or_else(bad)?;
        let w = group.alphabet().parse_word(word).map_err(|e| at_line(line.number, e))?;
        let g = monoid.parse_element(lit.trim()).map_err(|e| at_line(line.number, e.into()))?;
        phi.push((w, g));
    }
    Ok(Scenario {
        group,
        subgroup: subgroup.ok_or_else(|| err(last, 1, "missing `subgroup =`"))?,
        monoid,
        phi,
        max_len,
        max_register_size,
        max_cosets,
    })
}

pub fn format_scenario(s: &Scenario) -> String {
    let h = &s.group;
    let mut out = String::from("scenario\n");
    let _ = writeln!(out, "group = {}", h.kind());
    let items: Vec<String> = (0..h.alphabet().len())
        .map(|x| format!("{} -> {}", h.alphabet().char_of(x), h.kind().format_element(h.letter_image(x))))
        .collect();
    let _ = writeln!(out, "letters = [ {} ]", items.join(", "));
    for (x, y) in h.alphabet().inverse_pairs() {
        let _ = writeln!(out, "inv {x} {y}");
    }
    let _ = writeln!(out, "subgroup = {}", s.subgroup);
    let _ = writeln!(out, "monoid = {}", s.monoid);
    for (w, g) in &s.phi {
        let _ = writeln!(out, "phi \"{}\" = {}", h.alphabet().format_word(w), s.monoid.format_element(g));
    }
    let _ = writeln!(out, "max_len = {}", s.max_len);
    let _ = writeln!(out, "max_register_size = {}", s.max_register_size);
    let _ = writeln!(out, "max_cosets = {}", s.max_cosets);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::schreier_construct;
    use crate::gallery::{anbn_pda, counter_word_problem_automaton, dyck2_pda, dyck_automaton_rank};

    const Z2Z: &str = include_str!("../fixtures/z-2z.scenario");

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse(p) => p.line,
            other => panic!("not a parse error: {other}"),
        }
    }

    #[test]
    fn automata_round_trip() {
        let s = parse_scenario(Z2Z).unwrap();
        let fixtures = [
            schreier_construct(&s.embedding_spec().unwrap(), 8).unwrap(),
            dyck_automaton_rank(2).unwrap(),
            counter_word_problem_automaton(2).unwrap(),
        ];
        for d in fixtures {
            let text = format_automaton(d.automaton(), true);
            assert_eq!(parse_automaton(&text).unwrap(), AutomatonFile::Deterministic(d.clone()), "{text}");
            let text = format_automaton(d.automaton(), false);
            assert_eq!(parse_automaton(&text).unwrap().automaton(), d.automaton());
        }
    }

    #[test]
    fn schreier_file_text() {
        let s = parse_scenario(Z2Z).unwrap();
        let d = schreier_construct(&s.embedding_spec().unwrap(), 8).unwrap();
        let text = format_automaton(d.automaton(), true);
        assert!(text.contains("edge 0 1 [0] a\n"));
        assert!(text.contains("edge 1 0 [1] a\n"));
        assert!(text.contains("edge 0 1 [-1] A\n"));
        assert!(text.contains("edge 1 0 [0] A\n"));
    }

    #[test]
    fn multi_token_literals_and_comments() {
        let text = "automaton # free\nmonoid = product(free-abelian(1), sym(3))\nalphabet = a,A\ninv a A\n\
                    states = 1\ninitial = 0\nterminals = 0\nedge 0 0 [1] * (0 1 2) a  # loop\nedge 0 0 [-1] * (0 2 1) A\n";
        let f = parse_automaton(text).unwrap();
        assert!(f.deterministic().is_none());
        assert_eq!(f.automaton().edges().len(), 2);
        assert_eq!(parse_automaton(&format_automaton(f.automaton(), false)).unwrap(), f);
    }

    #[test]
    fn determinism_violation_points_at_second_edge() {
        let text = "dautomaton\nmonoid = free-abelian(1)\nalphabet = a,A\ninv a A\nstates = 2\ninitial = 0\n\
                    terminals = 0\nedge 0 1 [0] a\n\nedge 0 0 [1] a\n";
        let e = parse_automaton(text).unwrap_err();
        assert_eq!(line_of(e), 10);
        let text = "dautomaton\nmonoid = free-abelian(1)\nalphabet = a,A\nstates = 1\ninitial = 0\nedge 0 0 [0] aa\n";
        assert_eq!(line_of(parse_automaton(text).unwrap_err()), 6);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_automaton("automaton\nmonoid = bicyclic(2)\n").unwrap_err();
        assert!(e.to_string().contains("bicyclic"), "{e}");
        assert_eq!(line_of(e), 2);
        let e = parse_automaton("automaton\nmonoid = trivial\nalphabet = a\nstates = 1\ninitial = 0\nedge 0 3 1 a\n")
            .unwrap_err();
        assert_eq!(line_of(e), 6);
        let e = parse_automaton("automaton\nmonoid = trivial\nalphabet = a\nstates = 1\ninitial = 0\nedge 0 0 1 b\n")
            .unwrap_err();
        assert_eq!(line_of(e), 6);
        let e = parse_automaton("automaton\nmonoid = trivial\nalphabet = a\nstates = 1\ninitial = 0\nedge 0 0 [1] a\n")
            .unwrap_err();
        assert_eq!(line_of(e), 6);
        assert_eq!(line_of(parse_automaton("").unwrap_err()), 1);
        assert_eq!(line_of(parse_automaton("auto\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_automaton("automaton\nwhat\n").unwrap_err()), 2);
    }

    #[test]
    fn involution_must_close() {
        let text = "automaton\nmonoid = trivial\nalphabet = a,b\ninv a b\ninv a a\nstates = 1\ninitial = 0\n";
        assert_eq!(line_of(parse_automaton(text).unwrap_err()), 5);
    }

    #[test]
    fn scenarios_round_trip() {
        for text in [
            Z2Z,
            include_str!("../fixtures/dinf-translations.scenario"),
            include_str!("../fixtures/s3-trivial.scenario"),
        ] {
            let s = parse_scenario(text).unwrap();
            let again = parse_scenario(&format_scenario(&s)).unwrap();
            assert_eq!(format_scenario(&again), format_scenario(&s));
            assert_eq!(again.phi, s.phi);
        }
    }

    #[test]
    fn scenario_errors() {
        let bad = Z2Z.replace("phi \"aa\" = [1]", "phi \"aa\" = [1, 2]");
        assert!(parse_scenario(&bad).is_err());
        let bad = Z2Z.replace("subgroup = parity", "subgroup = centre");
        let e = parse_scenario(&bad).unwrap_err();
        assert!(e.to_string().contains("centre"), "{e}");
        let bad = Z2Z.replace("A -> [-1]", "A -> [1]");
        assert!(parse_scenario(&bad).is_err());
        let bad = Z2Z.replace("phi \"aa\"", "phi aa");
        assert!(parse_scenario(&bad).is_err());
    }

    #[test]
    fn pdas_round_trip() {
        for p in [anbn_pda().unwrap(), dyck2_pda().unwrap()] {
            assert_eq!(parse_pda(&format_pda(&p)).unwrap(), p);
        }
        let text = "pda\nalphabet = a\nstack = s\nstates = 1\ninitial = 0\nfinals = 0\ntrans 0 0 a pop t\n";
        assert_eq!(line_of(parse_pda(text).unwrap_err()), 7);
    }
}
