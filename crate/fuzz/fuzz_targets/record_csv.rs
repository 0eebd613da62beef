#![no_main]

use hecke_eta::records::CoeffRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = CoeffRecord::from_csv_row(text) {
        let again = CoeffRecord::from_csv_row(&r.to_csv_row()).expect("re-parse");
        assert_eq!(again, r);
    }
});
