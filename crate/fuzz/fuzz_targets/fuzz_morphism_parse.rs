//! Fuzz the matrix text format: no panics, no oversized allocations, and a
//! stable round trip for every accepted morphism.

#![no_main]

use libfuzzer_sys::fuzz_target;
use zstar::Morphism;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 1 << 16 {
        return;
    }
    if let Ok(m) = text.parse::<Morphism>() {
        let canonical = m.to_string();
        let back: Morphism = canonical.parse().expect("canonical form must reparse");
        assert_eq!(back, m, "round trip changed the morphism");
    }
});
