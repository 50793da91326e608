#![no_main]

use libfuzzer_sys::fuzz_target;
use qrm_core::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(j) = json::parse(text) else {
        return;
    };
    if let Ok(s) = json::scenario_from_json(&j) {
        let encoded = json::scenario_to_json(&s);
        let back = json::scenario_from_json(&encoded).expect("encoded scenario decodes");
        assert_eq!(json::scenario_to_json(&back), encoded);
    }
});
