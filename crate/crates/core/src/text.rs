//! Sentence splitting, tokenization and lemma normalization.
//!
//! A lexicon-driven stand-in for a statistical NLP pipeline. The only
//! morphology handled is plural folding (a lemma lexicon for irregular forms
//! plus suffix rules), and part-of-speech information is reduced to a
//! closed-class list of function words: articles, determiners, prepositions
//! and coordinating conjunctions, plus punctuation.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_segmentation::UnicodeSegmentation;

use crate::error::{Error, Result};
use crate::resources;

/// Abbreviations whose trailing period does not end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "dr", "mr", "mrs", "ms", "prof", "st", "vs", "etc", "e.g", "i.e", "fig", "no", "approx", "jr", "sr", "al", "ca",
    "cf", "resp", "vol", "pp",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub is_stopword: bool,
    pub is_function_word: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedText {
    pub sentences: Vec<Vec<Token>>,
}

impl TokenizedText {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }
}

/// `surface -> lemma` pairs for forms the suffix rules cannot fold.
#[derive(Debug, Clone, Default)]
pub struct LemmaLexicon {
    forms: HashMap<String, String>,
    lemmas: HashSet<String>,
}

impl LemmaLexicon {
    /// Parses `surface<TAB>lemma` lines; `#` comments and blank lines are ignored.
    pub fn parse(src: &str) -> Result<Self> {
        let mut lexicon = LemmaLexicon::default();
        for (lineno, line) in src.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (surface, lemma) = line
                .split_once('\t')
                .filter(|(s, l)| !s.trim().is_empty() && !l.trim().is_empty())
                .ok_or_else(|| Error::Data(format!("lemma lexicon line {}: expected surface<TAB>lemma", lineno + 1)))?;
            let lemma = lemma.trim().to_lowercase();
            lexicon.lemmas.insert(lemma.clone());
            lexicon.forms.insert(surface.trim().to_lowercase(), lemma);
        }
        Ok(lexicon)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&src)
    }

    pub fn bundled() -> Self {
        Self::parse(resources::LEMMAS).expect("bundled lexicon is well formed")
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// A set of lowercase words, one per line in its file form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordList {
    words: HashSet<String>,
}

impl WordList {
    pub fn parse(src: &str) -> Self {
        let words = src
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        WordList { words }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&src))
    }

    pub fn bundled_stopwords() -> Self {
        Self::parse(resources::STOPWORDS)
    }

    pub fn bundled_function_words() -> Self {
        Self::parse(resources::FUNCTION_WORDS)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<'a> FromIterator<&'a str> for WordList {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        WordList {
            words: iter.into_iter().map(str::to_lowercase).collect(),
        }
    }
}

/// Lowercase normal form: lexicon lookup first, then plural suffix rules
/// (`-ies` to `-y`, `-es` after x/z/ch/sh/ss, otherwise `-s`) for alphabetic
/// words longer than three characters.
pub fn lemmatize(surface: &str, lexicon: &LemmaLexicon) -> String {
    let lower = surface.to_lowercase();
    if let Some(lemma) = lexicon.forms.get(&lower) {
        return lemma.clone();
    }
    if lexicon.lemmas.contains(&lower) {
        return lower;
    }
    match fold_plural(&lower) {
        Some(stem) => match lexicon.forms.get(&stem) {
            Some(lemma) => lemma.clone(),
            None => stem,
        },
        None => lower,
    }
}

fn fold_plural(word: &str) -> Option<String> {
    if word.chars().count() <= 3 || !word.chars().all(char::is_alphabetic) {
        return None;
    }
    if let Some(stem) = word.strip_suffix("ies") {
        if word.chars().count() > 4 {
            return Some(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if ["x", "z", "ch", "sh", "ss"].iter().any(|s| stem.ends_with(s)) {
            return Some(stem.to_string());
        }
    }
    let stem = word.strip_suffix('s')?;
    if stem.ends_with('s') || stem.ends_with('u') || stem.ends_with('i') {
        return None;
    }
    Some(stem.to_string())
}

/// Pure punctuation: no letters or digits at all.
pub fn is_punctuation(surface: &str) -> bool {
    !surface.is_empty() && !surface.chars().any(char::is_alphanumeric)
}

/// Closed-class membership test, case-insensitive. Punctuation always counts.
pub fn classify_function_word(surface: &str, function_words: &WordList) -> bool {
    is_punctuation(surface) || function_words.contains(surface)
}

/// Drops tokens whose lowercased surface is in `stoplist`. Sentences left
/// empty are dropped too.
pub fn remove_stopwords(text: &TokenizedText, stoplist: &WordList) -> TokenizedText {
    TokenizedText {
        sentences: text
            .sentences
            .iter()
            .map(|s| {
                s.iter()
                    .filter(|t| !stoplist.contains(&t.surface))
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .filter(|s| !s.is_empty())
            .collect(),
    }
}

/// The lexica the pipeline needs, loaded once and shared read-only.
#[derive(Debug, Clone)]
pub struct TextPipeline {
    pub lexicon: LemmaLexicon,
    pub stopwords: WordList,
    pub function_words: WordList,
}

impl Default for TextPipeline {
    fn default() -> Self {
        Self::bundled()
    }
}

impl TextPipeline {
    pub fn new(lexicon: LemmaLexicon, stopwords: WordList, function_words: WordList) -> Self {
        TextPipeline {
            lexicon,
            stopwords,
            function_words,
        }
    }

    pub fn bundled() -> Self {
        Self::new(
            LemmaLexicon::bundled(),
            WordList::bundled_stopwords(),
            WordList::bundled_function_words(),
        )
    }

    pub fn lemmatize(&self, surface: &str) -> String {
        lemmatize(surface, &self.lexicon)
    }

    pub fn is_function_word(&self, surface: &str) -> bool {
        classify_function_word(surface, &self.function_words)
    }

    pub fn token(&self, surface: &str) -> Token {
        Token {
            surface: surface.to_string(),
            lemma: self.lemmatize(surface),
            is_stopword: self.stopwords.contains(surface),
            is_function_word: self.is_function_word(surface),
        }
    }

    /// Splits markup-free text into sentences of tokens.
    ///
    /// Each line is segmented on its own. Within a line, `.`, `!` or `?`
    /// ends a sentence when followed by whitespace and a capitalized token,
    /// unless the period closes a known abbreviation.
    pub fn tokenize(&self, text: &str) -> TokenizedText {
        let mut sentences = Vec::new();
        for line in text.lines() {
            let spans: Vec<(usize, &str)> = line
                .split_word_bound_indices()
                .filter(|(_, s)| !s.chars().all(char::is_whitespace))
                .collect();
            let mut current = Vec::new();
            for (k, &(offset, surface)) in spans.iter().enumerate() {
                current.push(self.token(surface));
                if !matches!(surface, "." | "!" | "?") {
                    continue;
                }
                let Some(&(next_offset, next)) = spans.get(k + 1) else {
                    continue;
                };
                let gap = &line[offset + surface.len()..next_offset];
                let capital = next.chars().next().is_some_and(char::is_uppercase);
                let abbreviation =
                    surface == "." && k > 0 && ABBREVIATIONS.contains(&spans[k - 1].1.to_lowercase().as_str());
                if !gap.is_empty() && capital && !abbreviation {
                    sentences.push(std::mem::take(&mut current));
                }
            }
            if !current.is_empty() {
                sentences.push(current);
            }
        }
        TokenizedText { sentences }
    }
}
