use std::path::PathBuf;

use ghocolim::generate::{generate, Caps, SChoice};
use ghocolim::resolve::resolve;
use ghocolim::{parse, serialize};
use proptest::prelude::*;

fn corpus() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn corpus_round_trips() {
    let files = corpus();
    assert!(files.len() >= 5);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = parse(&serialize(&doc)).unwrap();
        assert_eq!(doc, again, "{}", path.display());
        assert_eq!(serialize(&doc), serialize(&again));
    }
}

#[test]
fn two_line_group_has_order_two() {
    let m = resolve(&parse("group G\n  row 0 1\n  row 1 0\nend\n").unwrap(), None).unwrap();
    assert_eq!(m.groups["G"].order(), 2);
}

#[test]
fn interval_at_truncation_two_is_valid() {
    let text = "sset I top=2\n  count 0 2\n  count 1 3\n  count 2 4\n  face 1 0 0 1 1\n  face 1 1 0 0 1\n  \
                face 2 0 0 1 2 2\n  face 2 1 0 1 1 2\n  face 2 2 0 0 1 2\n  degen 0 0 0 2\n  degen 1 0 0 1 3\n  degen 1 1 0 2 3\nend\n";
    let m = resolve(&parse(text).unwrap(), None).unwrap();
    assert!(m.validate().is_empty());
    assert_eq!(m.ssets["I"].counts(), vec![2, 3, 4]);
}

#[test]
fn comments_and_blank_lines_do_not_change_the_document() {
    let plain = parse("group G shape=cyclic:3\nend\n").unwrap();
    let noisy = parse("# a comment\n\ngroup G shape=cyclic:3   # trailing\n\n  # inside\nend\n").unwrap();
    assert_eq!(plain, noisy);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_documents_round_trip(seed in any::<u64>()) {
        let caps = Caps { max_group: 4, max_objects: 3, max_morphisms: 12, truncation: 2, s: SChoice::Random };
        let doc = generate(seed, &caps).unwrap();
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn generation_is_a_function_of_seed_and_caps(seed in any::<u64>()) {
        let caps = Caps { max_group: 6, max_objects: 4, max_morphisms: 16, truncation: 2, s: SChoice::Any };
        prop_assert_eq!(serialize(&generate(seed, &caps).unwrap()), serialize(&generate(seed, &caps).unwrap()));
    }

    #[test]
    fn generated_documents_resolve_and_validate(seed in any::<u64>()) {
        let caps = Caps { max_group: 6, max_objects: 4, max_morphisms: 16, truncation: 2, s: SChoice::Any };
        let m = resolve(&generate(seed, &caps).unwrap(), None).unwrap();
        prop_assert!(m.validate().is_empty());
    }
}
