#![no_main]

use libfuzzer_sys::fuzz_target;
use rdp_core::parse::parse_equation;

fuzz_target!(|data: &[u8]| {
    let Some((&c, rest)) = data.split_first() else { return };
    let Ok(src) = std::str::from_utf8(rest) else { return };
    let p = [2, 3, 5, 7][c as usize % 4];
    if let Ok(eq) = parse_equation(src, p) {
        // printing must reparse to the same equation
        let again = parse_equation(&eq.to_string(), p).expect("printed equation reparses");
        assert_eq!(again, eq);
    }
});
