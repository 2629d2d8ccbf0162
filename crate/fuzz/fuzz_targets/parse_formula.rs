#![no_main]

use libfuzzer_sys::fuzz_target;
use sabotage_bisim::{parse, print};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse(text) {
        let printed = print(&f);
        assert_eq!(
            parse(&printed).as_ref(),
            Ok(&f),
            "round trip failed for {printed}"
        );
    }
});
