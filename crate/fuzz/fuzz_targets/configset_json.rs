#![no_main]

use libfuzzer_sys::fuzz_target;
use qrm_core::{json, pareto};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(j) = json::parse(text) else {
        return;
    };
    let Ok(set) = json::set_from_json(&j) else {
        return;
    };
    let back = json::set_from_json(&json::set_to_json(&set)).expect("encoded set decodes");
    assert_eq!(back.sorted(), set.sorted());
    if set.len() <= 64 {
        let _ = pareto::minimize(&set);
    }
});
