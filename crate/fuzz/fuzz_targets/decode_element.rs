#![no_main]

use libfuzzer_sys::fuzz_target;
use linrank::FieldCtx;

const FIELDS: [(u64, u32, u32); 5] = [(2, 1, 8), (3, 1, 5), (2, 3, 3), (65_521, 1, 2), (2, 1, 63)];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let mut word = [0u8; 8];
    let len = rest.len().min(8);
    word[..len].copy_from_slice(&rest[..len]);
    let value = u64::from_le_bytes(word);
    let (p, s, n) = FIELDS[pick as usize % FIELDS.len()];
    let ctx = FieldCtx::with_params(p, s, n).unwrap();
    match ctx.decode(value) {
        Ok(a) => {
            assert!(value < ctx.order());
            assert_eq!(ctx.encode(&a), value);
        }
        Err(_) => assert!(value >= ctx.order()),
    }
});
