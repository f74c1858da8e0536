//! Phrase compositions against term-by-term loops, and the bundled
//! synthetic dataset end to end.

mod common;

use std::collections::BTreeMap;

use bangl_core::experiment::*;
use bangl_core::formula::parse_formula;
use bangl_core::lexicon::{EmbeddingTable, LexEntry, SourceKind, TriplesCorpus, TypedLexicon};
use common::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_lexicon(rng: &mut impl Rng, d: usize) -> TypedLexicon {
    let mut entries = BTreeMap::new();
    for (w, ty, kind, rank) in [
        ("a", "N", SourceKind::Embedding, 1),
        ("b", "NP", SourceKind::Embedding, 1),
        ("c", "(NP\\S)/NP", SourceKind::CopyObject, 2),
        ("d", "NP/NP", SourceKind::Relational, 2),
    ] {
        entries.insert(
            w.to_string(),
            LexEntry {
                formula: parse_formula(ty).unwrap(),
                kind,
                tensor: random_tensor(rng, vec![d; rank]),
            },
        );
    }
    TypedLexicon {
        format: "bangl-lexicon".into(),
        dims: ["N", "NP", "S"]
            .iter()
            .map(|a| (a.to_string(), d))
            .collect(),
        entries,
    }
}

#[test]
fn four_compositions_match_term_by_term_oracles() {
    let mut r = rng(61);
    for _ in 0..50 {
        let d = r.gen_range(1..=5);
        let lex = random_lexicon(&mut r, d);
        let pl = PhraseLexicon {
            lex: &lex,
            zero_unknown: false,
        };
        let a = lex.get("a").unwrap().tensor.data().to_vec();
        let b = lex.get("b").unwrap().tensor.data().to_vec();
        let c = &lex.get("c").unwrap().tensor;
        let dm = &lex.get("d").unwrap().tensor;
        let basis_sum = vec![1.0; d];
        let k: f64 = r.gen_range(0.1..3.0);
        let kv = vec![k; d];
        let cases = [
            (Composition::Full, plus(&c_term(c, &b, &a), &d_term(dm, &a))),
            (
                Composition::CogebraA,
                plus(&c_term(c, &b, &a), &d_term(dm, &basis_sum)),
            ),
            (
                Composition::CogebraB,
                plus(&c_term(c, &b, &basis_sum), &d_term(dm, &a)),
            ),
            (
                Composition::Cofree { k },
                plus(
                    &plus(&c_term(c, &b, &a), &d_term(dm, &kv)),
                    &plus(&c_term(c, &b, &kv), &d_term(dm, &a)),
                ),
            ),
        ];
        for (comp, want) in cases {
            let got = compose_pgap("a", "b", "c", "after", "d", comp, &pl).unwrap();
            assert!(max_diff(&got, &want) <= 1e-10, "{comp}");
        }
        // Cogebra (a) differs from Full exactly in the D term
        let full = compose_pgap("a", "b", "c", "after", "d", Composition::Full, &pl).unwrap();
        let ca = compose_pgap("a", "b", "c", "after", "d", Composition::CogebraA, &pl).unwrap();
        let diff: Vec<f64> = full.iter().zip(&ca).map(|(x, y)| x - y).collect();
        let want: Vec<f64> = d_term(dm, &a)
            .iter()
            .zip(d_term(dm, &basis_sum))
            .map(|(x, y)| x - y)
            .collect();
        assert!(max_diff(&diff, &want) <= 1e-10);
    }
}

fn synthetic() -> (Vec<PgapEntry>, TypedLexicon) {
    let ds = load_dataset(&data("pgap_synthetic.tsv")).unwrap();
    let emb = EmbeddingTable::load(&data("embeddings.txt"), false).unwrap();
    let triples = TriplesCorpus::load(&data("triples.tsv"), false).unwrap();
    let lex = dataset_lexicon(&ds, &emb, &triples);
    (ds, lex)
}

#[test]
fn synthetic_dataset_is_separable() {
    let (ds, lex) = synthetic();
    assert_eq!(ds.len(), 20);
    let pl = PhraseLexicon {
        lex: &lex,
        zero_unknown: false,
    };
    let report = evaluate(&ds, &Composition::all(1.0), &pl).unwrap();
    assert_eq!(report.modes.len(), 4);
    for m in &report.modes {
        assert_eq!(m.accuracy, 1.0, "{}", m.model);
        assert_eq!(m.map, 1.0);
        assert!(m.entries.iter().all(|e| (e.sim_good - 1.0).abs() < 1e-12));
    }
    assert!(report.substituted.is_empty());

    let inverted: Vec<PgapEntry> = ds
        .iter()
        .cloned()
        .map(|mut e| {
            e.label = 3 - e.label;
            e
        })
        .collect();
    let report = evaluate(&inverted, &[Composition::Full], &pl).unwrap();
    assert_eq!(report.modes[0].accuracy, 0.0);
    assert_eq!(report.modes[0].map, 0.5);
}

#[test]
fn evaluation_ignores_dataset_order() {
    let (mut ds, lex) = synthetic();
    let pl = PhraseLexicon {
        lex: &lex,
        zero_unknown: false,
    };
    // make a few entries wrong so the order could matter
    for e in ds.iter_mut().step_by(3) {
        e.label = 3 - e.label;
    }
    let comps = Composition::all(0.5);
    let base = evaluate(&ds, &comps, &pl).unwrap();
    let mut r = rng(62);
    for _ in 0..5 {
        ds.shuffle(&mut r);
        let again = evaluate(&ds, &comps, &pl).unwrap();
        for (x, y) in base.modes.iter().zip(&again.modes) {
            assert_eq!(x.accuracy, y.accuracy);
            assert_eq!(x.map, y.map);
        }
    }
}

#[test]
fn ties_count_half() {
    let (ds, lex) = synthetic();
    let pl = PhraseLexicon {
        lex: &lex,
        zero_unknown: false,
    };
    let tied: Vec<PgapEntry> = ds
        .iter()
        .cloned()
        .map(|mut e| {
            e.candidate2 = e.candidate1.clone();
            e
        })
        .collect();
    let report = evaluate(&tied, &[Composition::Full], &pl).unwrap();
    assert_eq!(report.modes[0].accuracy, 0.5);
    assert_eq!(report.modes[0].map, 0.75);
    assert_eq!(report.modes[0].ties, 20);
}

#[test]
fn cosine_decisions_are_scale_invariant() {
    let mut r = rng(63);
    for _ in 0..100 {
        let d = r.gen_range(1..=5);
        let [p, q1, q2] = [0, 1, 2].map(|_| random_tensor(&mut r, vec![d]).into_data());
        let s: f64 = r.gen_range(0.01..100.0);
        let scaled: Vec<f64> = q1.iter().map(|x| x * s).collect();
        let before = cosine(&p, &q1).unwrap() > cosine(&p, &q2).unwrap();
        let after = cosine(&p, &scaled).unwrap() > cosine(&p, &q2).unwrap();
        assert_eq!(before, after);
    }
}

#[test]
fn unknown_words_can_be_zeroed() {
    let (mut ds, lex) = synthetic();
    ds[0].second_verb = "unheard".into();
    let strict = PhraseLexicon {
        lex: &lex,
        zero_unknown: false,
    };
    assert!(matches!(
        evaluate(&ds, &[Composition::Full], &strict),
        Err(ExperimentError::Missing(_))
    ));
    let lenient = PhraseLexicon {
        lex: &lex,
        zero_unknown: true,
    };
    let report = evaluate(&ds, &[Composition::Full], &lenient).unwrap();
    assert_eq!(report.substituted, vec!["unheard".to_string()]);
}
