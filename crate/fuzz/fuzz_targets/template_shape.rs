#![no_main]

use kolam::{TemplateShape, Variant};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(shape) = serde_json::from_slice::<TemplateShape>(data) {
        if shape.k <= 64 && shape.l <= 64 {
            let _ = shape.build();
        }
    }
    if let Ok(Ok(v)) = std::str::from_utf8(data).map(str::parse::<Variant>) {
        assert_eq!(v.name().parse::<Variant>().unwrap(), v);
    }
});
