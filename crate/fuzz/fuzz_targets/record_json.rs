#![no_main]

use hecke_eta::records::parse_record_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_record_json(text) {
        let again = parse_record_json(&r.to_json()).expect("re-parse");
        assert_eq!(again, r);
    }
});
