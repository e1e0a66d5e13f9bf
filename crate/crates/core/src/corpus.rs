//! Labelled articles and the JSON Lines corpus format.
//!
//! One object per line: `{"title": ..., "wikitext": ..., "label": ...}` where
//! `label` is one of `Stub`, `Start`, `C`, `B`, `GA`, `FA`.

use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// WikiProject quality rating, lowest to highest. Class A is never used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QualityClass {
    Stub,
    Start,
    C,
    B,
    GA,
    FA,
}

impl QualityClass {
    pub const ALL: [QualityClass; 6] = [
        QualityClass::Stub,
        QualityClass::Start,
        QualityClass::C,
        QualityClass::B,
        QualityClass::GA,
        QualityClass::FA,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QualityClass::Stub => "Stub",
            QualityClass::Start => "Start",
            QualityClass::C => "C",
            QualityClass::B => "B",
            QualityClass::GA => "GA",
            QualityClass::FA => "FA",
        }
    }
}

impl fmt::Display for QualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QualityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArticle {
    pub title: String,
    pub wikitext: String,
    pub label: QualityClass,
}

impl RawArticle {
    pub fn new(title: impl Into<String>, wikitext: impl Into<String>, label: QualityClass) -> Self {
        RawArticle {
            title: title.into(),
            wikitext: wikitext.into(),
            label,
        }
    }

    /// UTF-8 size of the wikitext.
    pub fn byte_length(&self) -> usize {
        self.wikitext.len()
    }
}

/// Result of reading a corpus: the articles that parsed plus the 1-based line
/// numbers of the ones that did not.
#[derive(Debug, Default)]
pub struct CorpusRead {
    pub articles: Vec<RawArticle>,
    pub skipped: Vec<usize>,
}

/// Reads JSON Lines from any buffered reader. Blank lines are ignored;
/// malformed lines are skipped and recorded.
pub fn read_jsonl<R: BufRead>(reader: R, origin: &Path) -> Result<CorpusRead> {
    let mut out = CorpusRead::default();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RawArticle>(&line) {
            Ok(article) => out.articles.push(article),
            Err(err) => {
                log::warn!("{}:{}: skipping malformed line: {err}", origin.display(), lineno + 1);
                out.skipped.push(lineno + 1);
            }
        }
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<CorpusRead> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_jsonl(std::io::BufReader::new(file), path)
}

pub fn write_jsonl<W: std::io::Write>(mut writer: W, articles: &[RawArticle]) -> std::io::Result<()> {
    for article in articles {
        serde_json::to_writer(&mut writer, article)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
