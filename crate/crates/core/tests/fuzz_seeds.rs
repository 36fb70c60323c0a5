//! Replays the checked-in fuzz corpus through the same round-trip checks the
//! fuzz targets make, so regressions surface under `cargo test`.

use std::path::{Path, PathBuf};

use gentorsion::morphism::parse_morphism;
use gentorsion::{Group, GroupSpec, Witness};

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = std::fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_word_seeds() {
    let groups: Vec<Group> = [
        GroupSpec::dihedral(),
        GroupSpec::free(2),
        GroupSpec::free_product(&[2, 3]),
        GroupSpec::baumslag_solitar(-2),
        GroupSpec::abelian(1, &[2]),
        GroupSpec::product(GroupSpec::cyclic(3), GroupSpec::dihedral()),
    ]
    .into_iter()
    .map(|s| Group::new(s).unwrap())
    .collect();
    let mut parsed = 0;
    for (path, bytes) in seeds("parse_word") {
        let Ok(text) = std::str::from_utf8(&bytes) else {
            continue;
        };
        for g in &groups {
            if let Ok(x) = g.parse(text) {
                assert_eq!(g.parse(&g.render(&x)).unwrap(), x, "{}", path.display());
                parsed += 1;
            }
        }
    }
    assert!(parsed > 0);
}

#[test]
fn group_spec_seeds() {
    for (path, bytes) in seeds("group_spec_json") {
        let spec: GroupSpec =
            serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let g = Group::new(spec).unwrap();
        let again: GroupSpec =
            serde_json::from_str(&serde_json::to_string(g.spec()).unwrap()).unwrap();
        assert_eq!(&again, g.spec());
    }
}

#[test]
fn witness_seeds() {
    let mut verified = 0;
    for (path, bytes) in seeds("witness_json") {
        let w = Witness::from_json(std::str::from_utf8(&bytes).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = Witness::from_json(&w.to_json()).unwrap();
        assert_eq!(again.to_json(), w.to_json());
        verified += usize::from(w.verify());
    }
    assert!(verified > 0);
}

#[test]
fn morphism_seeds() {
    for (path, bytes) in seeds("morphism_json") {
        let p = parse_morphism(std::str::from_utf8(&bytes).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            parse_morphism(&p.to_file().to_json()).unwrap().to_file(),
            p.to_file()
        );
    }
}

proptest::proptest! {
    // stable-toolchain stand-in for the libFuzzer parse_word target
    #[test]
    fn arbitrary_words_never_panic(text in "[abgk_12^ \\-0-9()*]{0,24}") {
        for spec in [GroupSpec::dihedral(), GroupSpec::free_product(&[2, 3]), GroupSpec::baumslag_solitar(-2)] {
            let g = Group::new(spec).unwrap();
            if let Ok(x) = g.parse(&text) {
                proptest::prop_assert_eq!(g.parse(&g.render(&x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn arbitrary_witness_json_never_panics(base in "[kg^\\-1 ]{0,8}", conj in proptest::collection::vec("[kg^\\-1 ]{0,6}", 0..4)) {
        let text = serde_json::json!({"group": {"family": "infinite_dihedral"}, "base": base, "conjugators": conj}).to_string();
        if let Ok(w) = Witness::from_json(&text) {
            proptest::prop_assert_eq!(Witness::from_json(&w.to_json()).unwrap().verify(), w.verify());
        }
    }
}
