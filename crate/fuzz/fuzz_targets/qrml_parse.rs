#![no_main]

use libfuzzer_sys::fuzz_target;
use qrm_core::qrml;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(model) = qrml::parse(src) {
        // printing and reparsing must give the same model
        let printed = model.to_string();
        assert_eq!(
            qrml::parse(&printed).expect("printed model reparses"),
            model
        );
    }
});
