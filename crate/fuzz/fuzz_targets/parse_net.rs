#![no_main]

use libfuzzer_sys::fuzz_target;

// The document parser must reject arbitrary input gracefully: no panics,
// no hangs. Accepted documents must survive resolution and validation.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = nupn::text::parse(text) {
        let resolved = doc.resolve();
        let _ = resolved.net.validate();
    }
});
