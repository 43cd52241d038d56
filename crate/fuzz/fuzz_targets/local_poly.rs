#![no_main]

use libfuzzer_sys::fuzz_target;
use rdp_core::parse::parse_local_poly;

fuzz_target!(|data: &[u8]| {
    let Some((&c, rest)) = data.split_first() else { return };
    if let Ok(src) = std::str::from_utf8(rest) {
        let _ = parse_local_poly(src, [2, 3, 5][c as usize % 3]);
    }
});
