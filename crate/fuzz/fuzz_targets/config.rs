#![no_main]

use libfuzzer_sys::fuzz_target;
use rdp_core::parse::parse_config;

fuzz_target!(|data: &[u8]| {
    let Some((&c, rest)) = data.split_first() else { return };
    if let Ok(src) = std::str::from_utf8(rest) {
        let _ = parse_config(src, [0, 2, 3, 5, 7][c as usize % 5]);
    }
});
