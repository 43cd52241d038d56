#![no_main]

use libfuzzer_sys::fuzz_target;
use rdp_core::lattice::AdeType;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(t) = src.parse::<AdeType>() {
            let again: AdeType = t.to_string().parse().expect("printed type reparses");
            assert_eq!(again, t);
        }
    }
});
