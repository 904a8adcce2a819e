//! Fuzz the diagram file format: parsing and validation must never panic,
//! and accepted diagrams must survive a print/parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use zstar::diagram::Diagram;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 1 << 16 {
        return;
    }
    if let Ok(d) = text.parse::<Diagram>() {
        let printed = d.to_string();
        let back: Diagram = printed.parse().expect("printed diagram must reparse");
        assert_eq!(back, d, "round trip changed the diagram");
    }
});
