#![no_main]
use gentorsion::Witness;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = Witness::from_json(text) {
        let again = Witness::from_json(&w.to_json()).expect("canonical files parse");
        assert_eq!(again.verify(), w.verify());
        assert_eq!(again.to_json(), w.to_json());
    }
});
