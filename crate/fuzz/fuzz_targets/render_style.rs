#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(style) = serde_json::from_slice::<kolam::RenderStyle>(data) {
        let _ = style.validate();
    }
});
