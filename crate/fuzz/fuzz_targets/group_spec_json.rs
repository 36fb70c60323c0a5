#![no_main]
use gentorsion::{Group, GroupSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = serde_json::from_slice::<GroupSpec>(data) else {
        return;
    };
    let Ok(g) = Group::new(spec) else { return };
    let again: GroupSpec = serde_json::from_str(&serde_json::to_string(g.spec()).unwrap()).unwrap();
    assert_eq!(&again, g.spec());
});
