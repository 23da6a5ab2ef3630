#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use linrank::format::parse_poly_spec;
use linrank::FieldCtx;

fuzz_target!(|input: &str| {
    if let Ok(spec) = parse_poly_spec(input) {
        assert_eq!(parse_poly_spec(&spec.to_string()).unwrap(), spec);
        let ctx = Arc::new(FieldCtx::with_params(3, 1, 4).unwrap());
        if let Ok(f) = spec.build(&ctx) {
            assert!(f.encodings().iter().all(|&e| e < 81));
        }
    }
});
