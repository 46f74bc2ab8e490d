#![no_main]

use kolam::Port;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Port>() {
        assert_eq!(p.to_string().parse::<Port>().unwrap(), p);
    }
});
