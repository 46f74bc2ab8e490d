#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = kolam::format::parse_partial(s) {
        let report = kolam::feasibility::validate_partial(&p);
        if report.complete_and_valid {
            assert!(p.to_kolam().is_some());
        }
    }
});
