#![no_main]

use libfuzzer_sys::fuzz_target;
use qrm_core::qrml;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(model) = qrml::load(src) else {
        return;
    };
    let names: Vec<String> = model.component_names().map(str::to_string).collect();
    for name in names {
        let _ = model.evaluate(&name);
    }
});
