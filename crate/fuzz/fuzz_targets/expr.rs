#![no_main]

use libfuzzer_sys::fuzz_target;
use rdp_core::parse::parse_expr;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        let _ = parse_expr(src);
    }
});
