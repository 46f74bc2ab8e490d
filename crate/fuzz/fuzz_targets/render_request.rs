#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok((k, style)) = kolam_cli::api::parse_render_request(data) {
        if k.template().cell_count() <= 64 {
            if let Ok(svg) = kolam::render_svg(&k, &style) {
                assert_eq!(kolam::render::path_count(&svg), kolam::loop_count(&k));
            }
        }
    }
});
