#![no_main]

use libfuzzer_sys::fuzz_target;
use sabotage_bisim::model::validate_text;
use sabotage_bisim::{load_model, save_model};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let violations = validate_text(text);
    match load_model(text) {
        Ok(m) => {
            assert!(matches!(violations, Ok(ref v) if v.is_empty()));
            let saved = save_model(&m);
            assert_eq!(load_model(&saved).ok().as_ref(), Some(&m));
        }
        Err(_) => assert!(!matches!(violations, Ok(ref v) if v.is_empty())),
    }
});
