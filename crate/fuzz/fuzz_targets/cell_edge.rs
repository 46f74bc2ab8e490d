#![no_main]

use kolam::{CellId, EdgeId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<CellId>() {
        assert_eq!(c.to_string().parse::<CellId>().unwrap(), c);
    }
    if let Ok(e) = s.parse::<EdgeId>() {
        assert_eq!(e.to_string().parse::<EdgeId>().unwrap(), e);
    }
});
