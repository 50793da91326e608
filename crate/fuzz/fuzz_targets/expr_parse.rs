#![no_main]

use libfuzzer_sys::fuzz_target;
use qrm_core::qrml;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = qrml::parse_expr(src) {
        assert_eq!(
            qrml::parse_expr(&e.to_string()).expect("printed expression reparses"),
            e
        );
    }
});
