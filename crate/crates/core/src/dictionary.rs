//! Medical terminology and n-gram entity matching.
//!
//! Every dictionary entry gets two keys: the exact key (lowercased tokens of
//! the definition) and the approximate key (lemmas of the content tokens,
//! function words and punctuation removed). `aneurysm of the vein of galen`
//! becomes `aneurysm vein galen`.
//!
//! Matching walks each sentence left to right and tries windows of 10 down
//! to 1 tokens at every position. A window matches exactly when its lowercased
//! surfaces equal an exact key, approximately when its content lemmas equal an
//! approximate key. The first (longest) hit wins and scanning resumes after
//! it, so mentions never overlap.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resources;
use crate::text::{TextPipeline, Token, TokenizedText};

/// Longest n-gram considered by the matcher.
pub const MAX_NGRAM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SemanticGroup {
    Treatment,
    SignOrSymptom,
    BodyPart,
    Disorder,
    Drug,
    ActiveIngredient,
}

impl SemanticGroup {
    pub const ALL: [SemanticGroup; 6] = [
        SemanticGroup::Treatment,
        SemanticGroup::SignOrSymptom,
        SemanticGroup::BodyPart,
        SemanticGroup::Disorder,
        SemanticGroup::Drug,
        SemanticGroup::ActiveIngredient,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SemanticGroup::Treatment => "Treatment",
            SemanticGroup::SignOrSymptom => "SignOrSymptom",
            SemanticGroup::BodyPart => "BodyPart",
            SemanticGroup::Disorder => "Disorder",
            SemanticGroup::Drug => "Drug",
            SemanticGroup::ActiveIngredient => "ActiveIngredient",
        }
    }
}

impl fmt::Display for SemanticGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemanticGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictionaryEntry {
    pub surface: String,
    pub semantic_group: SemanticGroup,
    pub exact_key: Vec<String>,
    pub approx_key: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatchKind {
    Exact,
    Approximate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntityMention {
    pub entry_id: usize,
    pub sentence_index: usize,
    pub token_start: usize,
    /// Exclusive.
    pub token_end: usize,
    pub match_kind: MatchKind,
}

impl EntityMention {
    pub fn len(&self) -> usize {
        self.token_end - self.token_start
    }

    pub fn is_empty(&self) -> bool {
        self.token_end == self.token_start
    }
}

/// Lines skipped while loading, reported as warnings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadWarnings {
    pub malformed: usize,
    pub empty_approx_key: usize,
    /// Definitions longer than the matcher's window.
    pub too_long: usize,
}

impl LoadWarnings {
    pub fn total(&self) -> usize {
        self.malformed + self.empty_approx_key + self.too_long
    }
}

#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    entries: Vec<DictionaryEntry>,
    exact_index: HashMap<String, Vec<usize>>,
    approx_index: HashMap<String, Vec<usize>>,
    /// Every leading run of tokens of some key, joined by spaces.
    exact_prefixes: HashSet<String>,
    approx_prefixes: HashSet<String>,
}

fn join_key<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut key = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            key.push(' ');
        }
        key.push_str(t.as_ref());
    }
    key
}

/// Lemmatized, lowercased content tokens of a definition, in order.
pub fn build_approx_key(surface: &str, pipeline: &TextPipeline) -> Vec<String> {
    pipeline
        .tokenize(surface)
        .tokens()
        .filter(|t| !t.is_function_word)
        .map(|t| t.lemma.clone())
        .collect()
}

/// Lowercased tokens of a definition.
pub fn build_exact_key(surface: &str, pipeline: &TextPipeline) -> Vec<String> {
    pipeline
        .tokenize(surface)
        .tokens()
        .map(|t| t.surface.to_lowercase())
        .collect()
}

impl Dictionary {
    pub fn max_ngram(&self) -> usize {
        MAX_NGRAM
    }

    pub fn entries(&self) -> &[DictionaryEntry] {
        &self.entries
    }

    pub fn entry(&self, id: usize) -> Option<&DictionaryEntry> {
        self.entries.get(id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry ids sharing an exact key, lowest first.
    pub fn exact_ids(&self, key: &[String]) -> &[usize] {
        self.exact_index.get(&join_key(key)).map_or(&[], Vec::as_slice)
    }

    /// Entry ids sharing an approximate key, lowest first.
    pub fn approx_ids(&self, key: &[String]) -> &[usize] {
        self.approx_index.get(&join_key(key)).map_or(&[], Vec::as_slice)
    }

    /// Adds one definition. Returns `None` (and adds nothing) when the
    /// definition has no content word left for its approximate key or is
    /// longer than [`MAX_NGRAM`] tokens.
    pub fn insert(&mut self, surface: &str, group: SemanticGroup, pipeline: &TextPipeline) -> Option<usize> {
        let approx_key = build_approx_key(surface, pipeline);
        let exact_key = build_exact_key(surface, pipeline);
        if approx_key.is_empty() || exact_key.len() > MAX_NGRAM {
            return None;
        }
        let id = self.entries.len();
        for n in 1..=exact_key.len() {
            self.exact_prefixes.insert(join_key(&exact_key[..n]));
        }
        for n in 1..=approx_key.len() {
            self.approx_prefixes.insert(join_key(&approx_key[..n]));
        }
        self.exact_index.entry(join_key(&exact_key)).or_default().push(id);
        self.approx_index.entry(join_key(&approx_key)).or_default().push(id);
        self.entries.push(DictionaryEntry {
            surface: surface.to_string(),
            semantic_group: group,
            exact_key,
            approx_key,
        });
        Some(id)
    }

    /// Parses `surface<TAB>semantic_group` lines. `#` lines and blank lines
    /// are ignored; bad lines are skipped and counted.
    pub fn parse(src: &str, pipeline: &TextPipeline) -> (Self, LoadWarnings) {
        let mut dict = Dictionary::default();
        let mut warnings = LoadWarnings::default();
        for (lineno, line) in src.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let parsed = line
                .split_once('\t')
                .filter(|(s, _)| !s.trim().is_empty())
                .and_then(|(s, g)| g.trim().parse::<SemanticGroup>().ok().map(|g| (s.trim(), g)));
            let Some((surface, group)) = parsed else {
                log::warn!("dictionary line {}: malformed, skipped", lineno + 1);
                warnings.malformed += 1;
                continue;
            };
            if build_exact_key(surface, pipeline).len() > MAX_NGRAM {
                log::warn!(
                    "dictionary line {}: {surface:?} exceeds {MAX_NGRAM} tokens, skipped",
                    lineno + 1
                );
                warnings.too_long += 1;
                continue;
            }
            if dict.insert(surface, group, pipeline).is_none() {
                log::warn!(
                    "dictionary line {}: {surface:?} has no content words, skipped",
                    lineno + 1
                );
                warnings.empty_approx_key += 1;
            }
        }
        (dict, warnings)
    }

    pub fn bundled(pipeline: &TextPipeline) -> Self {
        Self::parse(resources::DICTIONARY, pipeline).0
    }
}

pub fn load_dictionary(path: &Path, pipeline: &TextPipeline) -> Result<(Dictionary, LoadWarnings)> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(Dictionary::parse(&src, pipeline))
}

/// Greedy leftmost-longest matching, exact before approximate per window.
pub fn match_entities(text: &TokenizedText, dict: &Dictionary) -> Vec<EntityMention> {
    let mut mentions = Vec::new();
    for (sentence_index, sentence) in text.sentences.iter().enumerate() {
        let lower: Vec<String> = sentence.iter().map(|t| t.surface.to_lowercase()).collect();
        let mut start = 0;
        while start < sentence.len() {
            match longest_match(sentence, &lower, start, dict) {
                Some((len, entry_id, match_kind)) => {
                    mentions.push(EntityMention {
                        entry_id,
                        sentence_index,
                        token_start: start,
                        token_end: start + len,
                        match_kind,
                    });
                    start += len;
                }
                None => start += 1,
            }
        }
    }
    mentions
}

fn longest_match(
    sentence: &[Token],
    lower: &[String],
    start: usize,
    dict: &Dictionary,
) -> Option<(usize, usize, MatchKind)> {
    let longest = MAX_NGRAM.min(sentence.len() - start);

    // widest windows that can still grow into a key
    let mut exact_max = 0;
    let mut key = String::new();
    for len in 1..=longest {
        if len > 1 {
            key.push(' ');
        }
        key.push_str(&lower[start + len - 1]);
        if !dict.exact_prefixes.contains(&key) {
            break;
        }
        exact_max = len;
    }
    // approximate spans start and end on content words
    let mut approx_max = 0;
    if !sentence[start].is_function_word {
        let mut key = String::new();
        for len in 1..=longest {
            let t = &sentence[start + len - 1];
            if t.is_function_word {
                continue;
            }
            if !key.is_empty() {
                key.push(' ');
            }
            key.push_str(&t.lemma);
            if !dict.approx_prefixes.contains(&key) {
                break;
            }
            approx_max = len;
        }
    }

    for len in (1..=exact_max.max(approx_max)).rev() {
        let window = &sentence[start..start + len];
        if len <= exact_max {
            if let Some(ids) = dict.exact_index.get(&join_key(&lower[start..start + len])) {
                return Some((len, ids[0], MatchKind::Exact));
            }
        }
        if len > approx_max || window[len - 1].is_function_word {
            continue;
        }
        let content: Vec<&str> = window
            .iter()
            .filter(|t| !t.is_function_word)
            .map(|t| t.lemma.as_str())
            .collect();
        if let Some(ids) = dict.approx_index.get(&join_key(&content)) {
            return Some((len, ids[0], MatchKind::Approximate));
        }
    }
    None
}

pub fn count_mentions(mentions: &[EntityMention]) -> usize {
    mentions.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dict(lines: &str, p: &TextPipeline) -> Dictionary {
        let (d, w) = Dictionary::parse(lines, p);
        assert_eq!(w.total(), 0);
        d
    }

    #[test]
    fn loads_keys() {
        let p = TextPipeline::bundled();
        let (d, w) = Dictionary::parse(
            "aneurysm of the vein of galen\tDisorder\nfever\tSignOrSymptom\nof the\tDisorder\n",
            &p,
        );
        assert_eq!(
            w,
            LoadWarnings {
                malformed: 0,
                empty_approx_key: 1,
                too_long: 0
            }
        );
        assert_eq!(d.len(), 2);
        assert_eq!(d.entries()[0].approx_key, vec!["aneurysm", "vein", "galen"]);
        assert_eq!(d.entries()[0].exact_key.len(), 6);
        assert_eq!(d.entries()[1].exact_key, vec!["fever"]);
        assert_eq!(d.entries()[1].approx_key, vec!["fever"]);
    }

    #[test]
    fn malformed_lines_are_counted() {
        let p = TextPipeline::bundled();
        let (d, w) = Dictionary::parse(
            "# comment\n\nfever\nfever\tSymptom\n\tDisorder\ncough\tSignOrSymptom\n",
            &p,
        );
        assert_eq!(d.len(), 1);
        assert_eq!(w.malformed, 3);
    }

    #[test]
    fn approx_keys() {
        let p = TextPipeline::bundled();
        assert_eq!(
            build_approx_key("aneurysm of the vein of galen", &p),
            ["aneurysm", "vein", "galen"]
        );
        assert_eq!(build_approx_key("Fever", &p), ["fever"]);
        assert_eq!(
            build_approx_key("history of head injuries", &p),
            ["history", "head", "injury"]
        );
    }

    #[test]
    fn interleaved_function_words_match_approximately() {
        let p = TextPipeline::bundled();
        let d = dict("aneurysm of the vein of galen\tDisorder\n", &p);
        let m = match_entities(&p.tokenize("the aneurysm and vein of galen"), &d);
        assert_eq!(
            m,
            vec![EntityMention {
                entry_id: 0,
                sentence_index: 0,
                token_start: 1,
                token_end: 6,
                match_kind: MatchKind::Approximate
            }]
        );
    }

    #[test]
    fn plural_matches_through_lemma() {
        let p = TextPipeline::bundled();
        let d = dict("injury\tDisorder\n", &p);
        let m = match_entities(&p.tokenize("head injuries"), &d);
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].token_start, m[0].token_end), (1, 2));
        assert_eq!(m[0].match_kind, MatchKind::Approximate);
    }

    #[test]
    fn empty_text() {
        let p = TextPipeline::bundled();
        assert!(match_entities(&TokenizedText::default(), &Dictionary::bundled(&p)).is_empty());
    }

    #[test]
    fn longest_match_and_exact_precedence() {
        let p = TextPipeline::bundled();
        let d = dict(
            "alpha beta\tDisorder\nalpha\tDisorder\nfevers\tSignOrSymptom\nfever\tSignOrSymptom\n",
            &p,
        );
        let m = match_entities(&p.tokenize("alpha beta"), &d);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 2);
        // "fevers" is both an exact key and (via lemma) the approx key of "fever"
        let m = match_entities(&p.tokenize("fevers"), &d);
        assert_eq!(m[0].match_kind, MatchKind::Exact);
        assert_eq!(m[0].entry_id, 2);
    }

    #[test]
    fn shared_key_uses_lowest_id() {
        let p = TextPipeline::bundled();
        let d = dict("pain\tSignOrSymptom\npain\tDisorder\n", &p);
        let m = match_entities(&p.tokenize("pain"), &d);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].entry_id, 0);
        assert_eq!(d.exact_ids(&["pain".to_string()]), &[0, 1]);
    }

    #[test]
    fn repeated_sentence_doubles_count() {
        let p = TextPipeline::bundled();
        let d = Dictionary::bundled(&p);
        let s = "Fever and cough are common in influenza.";
        let once = count_mentions(&match_entities(&p.tokenize(s), &d));
        let twice = count_mentions(&match_entities(&p.tokenize(&format!("{s} {s}")), &d));
        assert_eq!(once, 3);
        assert_eq!(twice, 2 * once);
    }

    #[test]
    fn count_mentions_counts() {
        assert_eq!(count_mentions(&[]), 0);
    }

    #[test]
    fn bundled_dictionary_is_clean() {
        let p = TextPipeline::bundled();
        let (d, w) = Dictionary::parse(resources::DICTIONARY, &p);
        assert_eq!(w.total(), 0);
        assert!(d.len() >= 190);
        for g in SemanticGroup::ALL {
            assert!(d.entries().iter().any(|e| e.semantic_group == g), "{g}");
        }
    }
}
