#![no_main]
use gentorsion::{Group, GroupSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for spec in [
        GroupSpec::dihedral(),
        GroupSpec::free(2),
        GroupSpec::free_product(&[2, 3]),
        GroupSpec::baumslag_solitar(-2),
        GroupSpec::abelian(1, &[2]),
        GroupSpec::product(GroupSpec::cyclic(3), GroupSpec::dihedral()),
    ] {
        let g = Group::new(spec).unwrap();
        if let Ok(x) = g.parse(text) {
            // rendering is canonical and parses back to the same element
            let back = g.parse(&g.render(&x)).expect("rendered elements parse");
            assert_eq!(back, x);
        }
    }
});
