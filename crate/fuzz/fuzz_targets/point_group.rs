#![no_main]

use kolam::{GroupLabel, PointGroup};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = s.parse::<PointGroup>() {
        assert_eq!(g.to_string().parse::<PointGroup>().unwrap(), g);
    }
    if let Ok(label) = s.parse::<GroupLabel>() {
        assert_eq!(label.name().parse::<GroupLabel>().unwrap(), label);
    }
});
