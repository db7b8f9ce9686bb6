use igm_cli::corpus::default_dir;
use igm_cli::document::{parse, render, ActionLine, CocycleSpec, Document, Generators, IgDocument, ITypeDocument, Monomial};
use proptest::prelude::*;

#[test]
fn corpus_files_round_trip() {
    for entry in std::fs::read_dir(default_dir()).unwrap() {
        let path = entry.unwrap().path();
        if !matches!(path.extension().and_then(|e| e.to_str()), Some("igm" | "irel")) {
            continue;
        }
        let doc = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let again = render(&doc);
        assert_eq!(parse(&again).unwrap(), doc, "{}", path.display());
        assert_eq!(render(&parse(&again).unwrap()), again);
    }
}

const CYCLES: [&str; 4] = ["(12)", "(12)(34)", "(1324)", "(23)"];

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(prop_oneof![Just(0i64), -2i64..=3], n).prop_map(|exps| {
        Monomial(exps.into_iter().enumerate().filter(|(_, k)| *k != 0).map(|(i, k)| (format!("u{}", i + 1), k)).collect())
    })
}

fn ig_document() -> impl Strategy<Value = Document> {
    (1usize..5, 1usize..3).prop_flat_map(|(n, acts)| {
        let names: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
        let actions: Vec<ActionLine> =
            (0..acts).map(|i| ActionLine { name: format!("a{i}"), ambient: false, cycles: CYCLES[i].into() }).collect();
        let word = proptest::collection::vec((0..=acts).prop_map(|i| if i == 0 { "e".to_string() } else { format!("a{}", i - 1) }), 1..3);
        let relations = proptest::collection::vec((monomial(n), monomial(n)), 0..3);
        let grading = (proptest::collection::vec(-2i64..3, n), 2i64..4, proptest::collection::vec(word.clone(), 4));
        let generated = proptest::collection::vec(word, n);
        (relations, grading, generated, any::<bool>()).prop_map(move |(relations, (weights, modulus, words), gen_words, by_grading)| {
            let cocycle = if by_grading {
                CocycleSpec::Grading { weights, modulus, values: (0..modulus).zip(words).collect() }
            } else {
                CocycleSpec::OnGenerators(names.iter().cloned().zip(gen_words).collect())
            };
            Document::Ig(IgDocument {
                generators: Generators::Presented { names: names.clone(), relations },
                actions: actions.clone(),
                cocycle,
            })
        })
    })
}

fn itype_document() -> impl Strategy<Value = Document> {
    let names: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
    let pick = proptest::sample::select(names.clone());
    proptest::collection::vec(((pick.clone(), pick.clone()), (pick.clone(), pick)), 0..6)
        .prop_map(move |relations| Document::IType(ITypeDocument { names: names.clone(), relations }))
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(doc in prop_oneof![ig_document(), itype_document()]) {
        let text = render(&doc);
        prop_assert_eq!(parse(&text).unwrap(), doc);
    }
}
