#![no_main]

use libfuzzer_sys::fuzz_target;
use mauto::format::{format_automaton, parse_automaton};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_automaton(text) else { return };
    let det = file.deterministic().is_some();
    let shown = format_automaton(file.automaton(), det);
    let back = parse_automaton(&shown).expect("formatted automaton parses");
    assert!(back.automaton() == file.automaton(), "{shown}");
    assert_eq!(back.deterministic().is_some(), det);
});
