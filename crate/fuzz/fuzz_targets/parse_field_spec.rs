#![no_main]

use libfuzzer_sys::fuzz_target;
use linrank::format::parse_field_spec;

fuzz_target!(|input: &str| {
    if let Ok(spec) = parse_field_spec(input) {
        // printing and reparsing must give the same spec
        assert_eq!(parse_field_spec(&spec.to_string()).unwrap(), spec);
        if let Ok(ctx) = spec.build() {
            assert_eq!(ctx.modulus().len(), ctx.degree() + 1);
        }
    }
});
