#![no_main]

use kolam::{EdgeDir, TileKind, TilePlacement};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = s.parse::<TileKind>();
        let _ = s.parse::<EdgeDir>();
    }
    if let Ok(p) = serde_json::from_slice::<TilePlacement>(data) {
        let back = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<TilePlacement>(&back).unwrap(), p);
    }
});
