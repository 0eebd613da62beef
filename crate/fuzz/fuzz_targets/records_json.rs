#![no_main]

use hecke_eta::records::{parse_records_json, records_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rs) = parse_records_json(text) {
        let again = parse_records_json(&records_to_json(&rs)).expect("re-parse");
        assert_eq!(again, rs);
    }
});
