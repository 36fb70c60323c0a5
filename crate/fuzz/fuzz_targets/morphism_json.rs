#![no_main]
use gentorsion::morphism::parse_morphism;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_morphism(text) {
        let again = parse_morphism(&p.to_file().to_json()).expect("canonical files parse");
        assert_eq!(again.to_file(), p.to_file());
    }
});
