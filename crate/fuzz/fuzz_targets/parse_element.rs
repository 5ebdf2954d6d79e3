#![no_main]

//! Input: a monoid or group name on the first line, an element literal after it.

use libfuzzer_sys::fuzz_target;
use mauto::group::GroupKind;
use mauto::Monoid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (head, literal) = text.split_once('\n').unwrap_or((text, ""));
    if let Ok(m) = head.parse::<Monoid>() {
        if let Ok(x) = m.parse_element(literal) {
            let shown = m.format_element(&x);
            assert_eq!(m.parse_element(&shown).as_ref(), Ok(&x), "{shown}");
        }
    }
    if let Ok(g) = head.parse::<GroupKind>() {
        if let Ok(x) = g.parse_element(literal) {
            let shown = g.format_element(&x);
            assert_eq!(g.parse_element(&shown).as_ref(), Ok(&x), "{shown}");
        }
    }
});
