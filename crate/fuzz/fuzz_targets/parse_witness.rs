#![no_main]

use libfuzzer_sys::fuzz_target;

const NET: &str = "\
net nu lanes
place p0
place p1
place p2
place p3
trans t
arc p0 -> t x
arc p2 -> t y
arc t -> p1 x
arc t -> p3 nu
marking p0 = {a:1}
marking p2 = {b:1}
";

// Witness parsing and replay over arbitrary input: firings that do not
// apply must surface as errors, never as panics.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let doc = nupn::text::parse(NET).expect("embedded net parses");
    let resolved = doc.resolve();
    if let Ok(steps) = nupn::text::parse_witness(&resolved, text) {
        let mut marking = resolved.initial.clone();
        for (t, mode) in &steps {
            match resolved.net.fire(&marking, *t, mode) {
                Ok(next) => marking = next,
                Err(_) => break,
            }
        }
    }
});
