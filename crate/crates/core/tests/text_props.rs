use medqual::text::{lemmatize, remove_stopwords, LemmaLexicon, TextPipeline, WordList};
use proptest::prelude::*;

const WORDS: &[&str] = &[
    "the",
    "The",
    "of",
    "and",
    "patients",
    "Patients",
    "disease",
    "diseases",
    "injuries",
    "boxes",
    "churches",
    "virus",
    "analysis",
    "fever",
    "is",
    "was",
    "Dr.",
    "e.g.",
    "3.5",
    "mg",
    ",",
    ".",
    "!",
    "?",
    ";",
    "(",
    ")",
    "Ménière's",
    "children",
    "mice",
    "\n",
    "\n\n",
    "A",
    "an",
    "it",
    "blood",
];

fn prose() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS), 0..60).prop_map(|v| v.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn stopword_removal_is_idempotent(src in prose()) {
        let p = TextPipeline::bundled();
        let once = remove_stopwords(&p.tokenize(&src), &p.stopwords);
        let twice = remove_stopwords(&once, &p.stopwords);
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.tokens().all(|t| !p.stopwords.contains(&t.surface)));
        prop_assert!(once.sentences.iter().all(|s| !s.is_empty()));
    }

    #[test]
    fn lemmatization_is_idempotent(w in "[a-zA-Z]{1,14}") {
        let lex = LemmaLexicon::bundled();
        let once = lemmatize(&w, &lex);
        prop_assert_eq!(lemmatize(&once, &lex), once.clone());
        prop_assert_eq!(once.to_lowercase(), once);
    }

    #[test]
    fn function_words_ignore_case(src in prose()) {
        let p = TextPipeline::bundled();
        for t in p.tokenize(&src).tokens() {
            prop_assert_eq!(p.is_function_word(&t.surface), p.is_function_word(&t.surface.to_uppercase()));
            prop_assert_eq!(t.is_function_word, p.is_function_word(&t.surface));
        }
    }

    #[test]
    fn tokens_cover_the_words(src in prose()) {
        let p = TextPipeline::bundled();
        let text = p.tokenize(&src);
        prop_assert_eq!(text.token_count(), text.tokens().count());
        // every whitespace-separated word contributes at least one token
        let words = src.split_whitespace().count();
        prop_assert!(text.token_count() >= words, "{} < {}", text.token_count(), words);
        prop_assert!(text.tokens().all(|t| !t.surface.trim().is_empty()));
    }

    #[test]
    fn tokenizing_never_panics(src in "\\PC{0,300}") {
        let p = TextPipeline::bundled();
        let _ = p.tokenize(&src);
    }
}

#[test]
fn plural_rules() {
    let lex = LemmaLexicon::default();
    for (w, l) in [
        ("injuries", "injury"),
        ("boxes", "box"),
        ("churches", "church"),
        ("diseases", "disease"),
        ("virus", "virus"),
        ("analysis", "analysis"),
        ("patients", "patient"),
        ("gas", "gas"),
    ] {
        assert_eq!(lemmatize(w, &lex), l, "{w}");
    }
}

#[test]
fn stoplist_is_case_insensitive() {
    let list = WordList::parse("the\nOf\n");
    assert!(list.contains("THE") && list.contains("of") && !list.contains("fever"));
}
