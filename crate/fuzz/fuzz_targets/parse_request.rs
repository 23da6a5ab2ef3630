#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argv, program name prepended
fuzz_target!(|input: &str| {
    let argv = std::iter::once("linrank").chain(input.split('\0'));
    if let Err(e) = linrank_cli::parse_request(argv) {
        assert!(matches!(e.exit, 0 | 1 | 2));
    }
});
