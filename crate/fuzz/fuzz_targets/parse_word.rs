#![no_main]

use hecke_eta::analytic::{parse_word, GroupWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ks) = parse_word(text) {
        let _ = GroupWord::new(&ks, 5);
    }
});
