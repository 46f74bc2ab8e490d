#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(k) = kolam::parse_kolam(s) {
        let text = kolam::serialize_kolam(&k);
        assert_eq!(kolam::parse_kolam(&text).unwrap(), k);
    }
});
