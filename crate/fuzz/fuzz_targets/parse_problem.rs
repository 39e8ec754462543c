#![no_main]

use libfuzzer_sys::fuzz_target;

// Parsing and building must reject bad input with an error, never a panic.
// The small limit keeps accepted problems cheap to construct.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = pbwforge_cli::parse_problem(text) {
        let _ = pbwforge_cli::build_problem(spec, 300);
    }
});
