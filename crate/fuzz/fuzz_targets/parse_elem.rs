#![no_main]

use hecke_eta::quad_ring::{format_canonical, ParsedElem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<ParsedElem>() {
        assert_eq!(format_canonical(&p.elem, p.d), text);
    }
});
