#![no_main]

use libfuzzer_sys::fuzz_target;

// Rendering a parsed document must reproduce it exactly: parse and render
// form an identity pair on everything the parser accepts.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = nupn::text::parse(text) {
        let rendered = nupn::text::render(&doc);
        let reparsed = nupn::text::parse(&rendered)
            .expect("rendered documents always parse");
        assert_eq!(doc, reparsed, "parse/render round trip drifted");
        assert_eq!(rendered, nupn::text::render(&reparsed));
    }
});
