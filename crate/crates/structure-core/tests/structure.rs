use proptest::prelude::*;
use structure_core::*;

#[test]
fn parses_edge_list() {
    let s = parse_structure("universe 3\nrelation E 2 { (0,1) (1,2) }").unwrap();
    assert_eq!(s.universe_size(), 3);
    let e = s.relation("E").unwrap();
    assert_eq!(e.tuples(), vec![vec![0, 1], vec![1, 2]]);
}

#[test]
fn binary_string_00101() {
    let s = parse_structure("universe 5\nrelation B 1 { (2) (4) }").unwrap();
    let b = s.relation("B").unwrap();
    assert_eq!(b.characteristic_bits(), "00101");
}

#[test]
fn element_out_of_range_is_rejected() {
    let err = parse_structure("universe 2\nrelation E 2 { (0,3) }").unwrap_err();
    assert!(err.to_string().contains("out of range"), "{err}");
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_structure("universe 2\nrelation E 2 { (0,1 }").unwrap_err();
    match err {
        StructureError::Syntax { line, .. } => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn duplicates_collapse_and_comments_are_skipped() {
    let s = parse_structure(
        "# graph\nuniverse 2 # two nodes\nrelation E 2 {\n (0,1)\n (0,1) }\n",
    )
    .unwrap();
    assert_eq!(s.relation("E").unwrap().len(), 1);
}

#[test]
fn duplicate_and_reserved_names_are_rejected() {
    assert!(parse_structure("universe 2 relation E 1 {} relation E 1 {}").is_err());
    assert!(parse_structure("universe 2 relation <= 2 {}").is_err());
    assert!(parse_structure("universe 2 relation E 2 { (0) }").is_err());
    assert!(parse_structure("universe 0").is_err());
}

#[test]
fn structure_text_round_trips() {
    let s = parse_structure("universe 4 relation E 2 {(0,1) (3,2)} relation P 1 {(1)}").unwrap();
    assert_eq!(parse_structure(&s.to_text()).unwrap(), s);
}

#[test]
fn singleton_enumeration() {
    let rels: Vec<_> = enumerate_relations(1, 1).unwrap().collect();
    assert_eq!(rels.len(), 2);
    assert!(rels[0].is_empty());
    assert_eq!(rels[1].tuples(), vec![vec![0]]);
}

/// Orders subsets of the tuple list by the binary number whose digit `i`
/// is membership of the i-th tuple.
fn counter_order_oracle(n: u32, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut tuples: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    tuples.sort();
    let mut subsets: Vec<(u64, Vec<Vec<u32>>)> = (0..1u64 << tuples.len())
        .map(|mask| {
            let members = tuples
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect();
            (mask, members)
        })
        .collect();
    subsets.sort_by_key(|(mask, _)| *mask);
    subsets.into_iter().map(|(_, m)| m).collect()
}

#[test]
fn two_element_enumeration_order() {
    let got: Vec<_> = enumerate_relations(2, 1)
        .unwrap()
        .map(|r| r.tuples())
        .collect();
    let expected: Vec<Vec<Vec<u32>>> = vec![vec![], vec![vec![0]], vec![vec![1]], vec![vec![0], vec![1]]];
    assert_eq!(got, expected);
    assert_eq!(got, counter_order_oracle(2, 1));
}

#[test]
fn enumeration_matches_oracle_for_small_spaces() {
    for (n, k) in [(2, 2), (3, 1), (3, 2), (1, 3), (4, 1)] {
        let got: Vec<_> = enumerate_relations(n, k).unwrap().map(|r| r.tuples()).collect();
        assert_eq!(got, counter_order_oracle(n, k), "n={n} k={k}");
    }
}

#[test]
fn enumeration_guard() {
    assert!(matches!(
        enumerate_relations(2, 13),
        Err(StructureError::GuardExceeded { .. })
    ));
    assert!(enumerate_relations(24, 1).is_ok());
    assert!(enumerate_relations(5, 2).is_err());
}

#[test]
fn encoding_examples() {
    let s5 = Structure::new(5).unwrap();
    assert_eq!(encode_string(&SymbolString::epsilon(), &s5, 1).unwrap(), "");
    assert_eq!(encode_string(&SymbolString::elems(&[2]), &s5, 1).unwrap(), "010");

    let s2 = Structure::new(2).unwrap();
    let r = RelationValue::from_tuples(2, 1, [[1u32]]).unwrap();
    let bits = encode_string(&SymbolString::letter(Symbol::Rel(r)), &s2, 1).unwrap();
    assert_eq!(bits, "101", "one tag bit then characteristic bits 01");

    let r2 = RelationValue::empty(2, 2).unwrap();
    assert!(encode_string(&SymbolString::letter(Symbol::Rel(r2)), &s2, 1).is_err());
}

fn arb_rel(n: u32, k: usize) -> impl Strategy<Value = RelationValue> {
    let space = (n as usize).pow(k as u32);
    proptest::collection::vec(any::<bool>(), space).prop_map(move |bits| {
        let mut i = 0;
        RelationValue::from_fn(n, k, |_| {
            let b = bits[i];
            i += 1;
            b
        })
        .unwrap()
    })
}

fn arb_symbol(n: u32) -> impl Strategy<Value = Symbol> {
    prop_oneof![
        (0..n).prop_map(Symbol::Elem),
        arb_rel(n, 1).prop_map(Symbol::Rel),
        arb_rel(n, 2).prop_map(Symbol::Rel),
    ]
}

fn arb_string(n: u32) -> impl Strategy<Value = SymbolString> {
    proptest::collection::vec(arb_symbol(n), 0..5).prop_map(SymbolString::from_letters)
}

fn letter_kinds(s: &SymbolString) -> Vec<usize> {
    s.letters()
        .iter()
        .map(|l| match l {
            Symbol::Elem(_) => 0,
            Symbol::Rel(r) => r.arity(),
        })
        .collect()
}

proptest! {
    #[test]
    fn concatenation_lengths_add(a in arb_string(3), b in arb_string(3)) {
        prop_assert_eq!(a.concat(&b).len(), a.len() + b.len());
    }

    #[test]
    fn encoding_is_injective_for_fixed_letter_kinds(a in arb_string(3), b in arb_string(3)) {
        let ctx = Structure::new(3).unwrap();
        if letter_kinds(&a) == letter_kinds(&b) {
            let ea = encode_string(&a, &ctx, 2).unwrap();
            let eb = encode_string(&b, &ctx, 2).unwrap();
            prop_assert_eq!(ea == eb, a == b);
        }
    }

    #[test]
    fn element_strings_encode_within_log_bound(elems in proptest::collection::vec(0u32..5, 0..6)) {
        let ctx = Structure::new(5).unwrap();
        let s = SymbolString::elems(&elems);
        let bits = encode_string(&s, &ctx, 1).unwrap();
        prop_assert_eq!(bits.len(), s.len() * 3);
    }

    #[test]
    fn enumeration_is_strictly_increasing(n in 1u32..4, k in 1usize..3) {
        prop_assume!((n as u64).pow(k as u32) <= 12);
        let rels: Vec<_> = enumerate_relations(n, k).unwrap().collect();
        prop_assert_eq!(rels.len(), 1usize << (n as usize).pow(k as u32));
        for w in rels.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn tuples_round_trip(r in arb_rel(3, 2)) {
        let again = RelationValue::from_tuples(3, 2, r.tuples()).unwrap();
        prop_assert_eq!(again, r);
    }
}
