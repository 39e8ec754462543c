#![no_main]

use libfuzzer_sys::fuzz_target;
use pbwforge_core::linalg::Scalar;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = text.parse::<Scalar>() {
        // Display is canonical, so it must parse back to the same value.
        let again: Scalar = x.to_string().parse().expect("display round-trips");
        assert_eq!(x, again);
    }
    let _ = serde_json::from_str::<Scalar>(text);
});
