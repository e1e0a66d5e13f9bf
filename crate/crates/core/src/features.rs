//! Per-article feature vectors.
//!
//! Five baseline features come from article structure and text:
//!
//! | feature           | definition                                    |
//! |-------------------|-----------------------------------------------|
//! | `completeness`    | 0.4 * broken wikilinks + 0.4 * wikilinks      |
//! | `informativeness` | 0.6 * InfoNoise + 0.3 * images                |
//! | `num_headings`    | headings                                      |
//! | `article_length`  | log10 of the wikitext size in bytes           |
//! | `refs_per_length` | references / `article_length`                 |
//!
//! Three medical-domain features extend them: `domain_informativeness` (the
//! number of terminology mentions in the prose), `infobox_norm_size`
//! (log10 infobox bytes / `article_length`) and `category` (a coarse topic
//! assigned from the article's category tags).

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{QualityClass, RawArticle};
use crate::dictionary::{count_mentions, match_entities, Dictionary};
use crate::error::{Error, Result};
use crate::text::{is_punctuation, TextPipeline, TokenizedText};
use crate::wikitext::{count_wikilinks, extract_infobox_bytes, parse_article, StructuralElements, TitleIndex};

/// Coarse article topic derived from category tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    /// anatomy
    A,
    /// biography or history
    B,
    /// disorder
    D,
    /// first aid
    F,
    /// other
    O,
}

impl Category {
    pub const ALL: [Category; 5] = [Category::A, Category::B, Category::D, Category::F, Category::O];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::A => "A",
            Category::B => "B",
            Category::D => "D",
            Category::F => "F",
            Category::O => "O",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Data(format!("unknown category {s:?}")))
    }
}

enum Keyword {
    Prefix(&'static str),
    Word(&'static str),
    Phrase(&'static [&'static str]),
}

const CATEGORY_KEYWORDS: &[(Category, &[Keyword])] = &[
    (
        Category::A,
        &[
            Keyword::Prefix("anatom"),
            Keyword::Prefix("embryolog"),
            Keyword::Word("organ"),
            Keyword::Word("tissue"),
        ],
    ),
    (
        Category::B,
        &[Keyword::Word("born"), Keyword::Word("death"), Keyword::Word("birth")],
    ),
    (
        Category::D,
        &[
            Keyword::Word("disorder"),
            Keyword::Word("disease"),
            Keyword::Word("pathology"),
        ],
    ),
    (Category::F, &[Keyword::Phrase(&["first", "aid"])]),
];

/// First category (in the order A, B, D, F) whose keywords occur in any of
/// the category strings; `O` otherwise.
///
/// `anatom*` and `embryolog*` are prefix matches. Other
/// keywords match a whole word, either as written or through its lemma, so
/// `Births` and `Rare diseases` match `birth` and `disease`.
pub fn assign_category<S: AsRef<str>>(category_strings: &[S], pipeline: &TextPipeline) -> Category {
    let tagged: Vec<Vec<(String, String)>> = category_strings
        .iter()
        .map(|s| {
            s.as_ref()
                .to_lowercase()
                .split(|c: char| !c.is_alphanumeric())
                .filter(|w| !w.is_empty())
                .map(|w| (w.to_string(), pipeline.lemmatize(w)))
                .collect()
        })
        .collect();

    for (category, keywords) in CATEGORY_KEYWORDS {
        let hit = tagged.iter().any(|words| {
            keywords.iter().any(|kw| match kw {
                Keyword::Prefix(p) => words.iter().any(|(w, _)| w.starts_with(p)),
                Keyword::Word(k) => words.iter().any(|(w, l)| w == k || l == k),
                Keyword::Phrase(phrase) => words
                    .windows(phrase.len())
                    .any(|win| win.iter().zip(phrase.iter()).all(|((w, _), p)| w == p)),
            })
        });
        if hit {
            return *category;
        }
    }
    Category::O
}

/// The eight model inputs. Each variant uses a prefix of this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Feature {
    ArticleLength,
    NumHeadings,
    Completeness,
    RefsPerLength,
    Informativeness,
    DomainInformativeness,
    InfoboxNormSize,
    Category,
}

impl Feature {
    pub const ALL: [Feature; 8] = [
        Feature::ArticleLength,
        Feature::NumHeadings,
        Feature::Completeness,
        Feature::RefsPerLength,
        Feature::Informativeness,
        Feature::DomainInformativeness,
        Feature::InfoboxNormSize,
        Feature::Category,
    ];

    /// Column name used in CSV files and reports.
    pub fn name(self) -> &'static str {
        match self {
            Feature::ArticleLength => "article_length",
            Feature::NumHeadings => "num_headings",
            Feature::Completeness => "completeness",
            Feature::RefsPerLength => "refs_per_length",
            Feature::Informativeness => "informativeness",
            Feature::DomainInformativeness => "domain_informativeness",
            Feature::InfoboxNormSize => "infobox_norm_size",
            Feature::Category => "category",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Number of values for nominal features, `None` for numeric ones.
    pub fn nominal_values(self) -> Option<usize> {
        match self {
            Feature::Category => Some(Category::ALL.len()),
            _ => None,
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which feature subset a model sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Baseline,
    MedicalDomain,
    FullMedicalDomain,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Baseline, Variant::MedicalDomain, Variant::FullMedicalDomain];

    pub fn features(self) -> &'static [Feature] {
        match self {
            Variant::Baseline => &Feature::ALL[..5],
            Variant::MedicalDomain => &Feature::ALL[..6],
            Variant::FullMedicalDomain => &Feature::ALL[..],
        }
    }

    pub fn needs_dictionary(self) -> bool {
        self != Variant::Baseline
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Baseline => "Baseline",
            Variant::MedicalDomain => "MedicalDomain",
            Variant::FullMedicalDomain => "FullMedicalDomain",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub title: String,
    pub completeness: f64,
    pub informativeness: f64,
    /// Integral for real articles; SMOTE rows interpolate it.
    pub num_headings: f64,
    pub article_length: f64,
    pub refs_per_length: f64,
    pub domain_informativeness: f64,
    pub infobox_norm_size: f64,
    pub category: Category,
    pub label: QualityClass,
    #[serde(default)]
    pub synthetic: bool,
}

impl FeatureVector {
    /// Numeric value of a feature; the category is its index.
    pub fn value(&self, feature: Feature) -> f64 {
        match feature {
            Feature::ArticleLength => self.article_length,
            Feature::NumHeadings => self.num_headings,
            Feature::Completeness => self.completeness,
            Feature::RefsPerLength => self.refs_per_length,
            Feature::Informativeness => self.informativeness,
            Feature::DomainInformativeness => self.domain_informativeness,
            Feature::InfoboxNormSize => self.infobox_norm_size,
            Feature::Category => self.category.index() as f64,
        }
    }

    pub fn set_value(&mut self, feature: Feature, value: f64) {
        match feature {
            Feature::ArticleLength => self.article_length = value,
            Feature::NumHeadings => self.num_headings = value,
            Feature::Completeness => self.completeness = value,
            Feature::RefsPerLength => self.refs_per_length = value,
            Feature::Informativeness => self.informativeness = value,
            Feature::DomainInformativeness => self.domain_informativeness = value,
            Feature::InfoboxNormSize => self.infobox_norm_size = value,
            Feature::Category => self.category = Category::from_index(value as usize).unwrap_or(Category::O),
        }
    }

    pub fn project(&self, features: &[Feature]) -> Vec<f64> {
        features.iter().map(|&f| self.value(f)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractionIntermediates {
    pub num_wikilinks: usize,
    pub num_broken_wikilinks: usize,
    pub info_noise: f64,
    pub num_images: usize,
    pub num_references: usize,
    pub num_headings: usize,
    pub raw_bytes: usize,
    pub infobox_bytes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineFeatures {
    pub completeness: f64,
    pub informativeness: f64,
    pub num_headings: f64,
    pub article_length: f64,
    pub refs_per_length: f64,
}

pub fn completeness(num_broken: f64, num_wikilinks: f64) -> f64 {
    0.4 * num_broken + 0.4 * num_wikilinks
}

pub fn informativeness(info_noise: f64, num_images: f64) -> f64 {
    0.6 * info_noise + 0.3 * num_images
}

/// log10 of the byte size, with empty articles mapped to 0.
pub fn article_length(raw_bytes: usize) -> f64 {
    (raw_bytes.max(1) as f64).log10()
}

/// Bytes of prose left after removing stopwords and punctuation, over the
/// raw wikitext size, clamped to [0, 1].
pub fn compute_info_noise(raw: &RawArticle, elems: &StructuralElements, pipeline: &TextPipeline) -> f64 {
    info_noise_of(raw.byte_length(), &pipeline.tokenize(&elems.plain_text), pipeline)
}

fn info_noise_of(raw_bytes: usize, tokens: &TokenizedText, pipeline: &TextPipeline) -> f64 {
    if raw_bytes == 0 {
        return 0.0;
    }
    let kept: Vec<&str> = tokens
        .tokens()
        .filter(|t| !is_punctuation(&t.surface) && !pipeline.stopwords.contains(&t.surface))
        .map(|t| t.surface.as_str())
        .collect();
    // words joined by single spaces
    let bytes = kept.iter().map(|w| w.len()).sum::<usize>() + kept.len().saturating_sub(1);
    (bytes as f64 / raw_bytes as f64).clamp(0.0, 1.0)
}

pub fn compute_baseline(inter: &ExtractionIntermediates) -> BaselineFeatures {
    let length = article_length(inter.raw_bytes);
    BaselineFeatures {
        completeness: completeness(inter.num_broken_wikilinks as f64, inter.num_wikilinks as f64),
        informativeness: informativeness(inter.info_noise, inter.num_images as f64),
        num_headings: inter.num_headings as f64,
        article_length: length,
        refs_per_length: if length > 0.0 {
            inter.num_references as f64 / length
        } else {
            0.0
        },
    }
}

/// log10 of the infobox size relative to `article_length`; 0 without an
/// infobox or for a one-byte article.
pub fn infobox_norm_size(infobox_bytes: usize, raw_bytes: usize) -> f64 {
    let length = article_length(raw_bytes);
    if infobox_bytes == 0 || length == 0.0 {
        return 0.0;
    }
    (infobox_bytes.max(1) as f64).log10() / length
}

pub fn compute_infobox_norm_size(raw: &RawArticle, elems: &StructuralElements) -> f64 {
    infobox_norm_size(extract_infobox_bytes(elems), raw.byte_length())
}

/// Resources needed to turn articles into feature vectors.
#[derive(Debug, Clone, Copy)]
pub struct FeatureExtractor<'a> {
    pub index: &'a TitleIndex,
    pub dictionary: &'a Dictionary,
    pub pipeline: &'a TextPipeline,
}

/// Everything computed for one article.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub elements: StructuralElements,
    pub intermediates: ExtractionIntermediates,
    pub vector: FeatureVector,
}

impl<'a> FeatureExtractor<'a> {
    pub fn new(index: &'a TitleIndex, dictionary: &'a Dictionary, pipeline: &'a TextPipeline) -> Self {
        FeatureExtractor {
            index,
            dictionary,
            pipeline,
        }
    }

    pub fn extract_detailed(&self, raw: &RawArticle) -> Extraction {
        let elements = parse_article(raw);
        let tokens = self.pipeline.tokenize(&elements.plain_text);
        let (num_wikilinks, num_broken_wikilinks) = count_wikilinks(&elements, self.index);
        let intermediates = ExtractionIntermediates {
            num_wikilinks,
            num_broken_wikilinks,
            info_noise: info_noise_of(raw.byte_length(), &tokens, self.pipeline),
            num_images: elements.images,
            num_references: elements.references,
            num_headings: elements.headings.len(),
            raw_bytes: raw.byte_length(),
            infobox_bytes: extract_infobox_bytes(&elements),
        };
        let base = compute_baseline(&intermediates);
        let mentions = count_mentions(&match_entities(&tokens, self.dictionary));
        let vector = FeatureVector {
            title: raw.title.clone(),
            completeness: base.completeness,
            informativeness: base.informativeness,
            num_headings: base.num_headings,
            article_length: base.article_length,
            refs_per_length: base.refs_per_length,
            domain_informativeness: mentions as f64,
            infobox_norm_size: infobox_norm_size(intermediates.infobox_bytes, intermediates.raw_bytes),
            category: assign_category(&elements.category_strings, self.pipeline),
            label: raw.label,
            synthetic: false,
        };
        Extraction {
            elements,
            intermediates,
            vector,
        }
    }

    pub fn extract(&self, raw: &RawArticle) -> FeatureVector {
        self.extract_detailed(raw).vector
    }

    /// Extracts in parallel; output order follows input order.
    pub fn extract_all(&self, corpus: &[RawArticle]) -> Vec<FeatureVector> {
        corpus.par_iter().map(|a| self.extract(a)).collect()
    }
}

pub fn extract_features(
    raw: &RawArticle,
    index: &TitleIndex,
    dictionary: &Dictionary,
    pipeline: &TextPipeline,
) -> FeatureVector {
    FeatureExtractor::new(index, dictionary, pipeline).extract(raw)
}

pub const CSV_HEADER: [&str; 10] = [
    "title",
    "completeness",
    "informativeness",
    "num_headings",
    "article_length",
    "refs_per_length",
    "domain_informativeness",
    "infobox_norm_size",
    "category",
    "label",
];

fn real(x: f64) -> String {
    format!("{x:.6}")
}

fn count_or_real(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        real(x)
    }
}

/// Writes the feature matrix. With `with_synthetic` an extra trailing
/// `synthetic` column marks SMOTE rows.
pub fn write_csv<W: Write>(writer: W, vectors: &[FeatureVector], with_synthetic: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if with_synthetic {
        header.push("synthetic");
    }
    w.write_record(&header)?;
    for v in vectors {
        let mut record = vec![
            v.title.clone(),
            real(v.completeness),
            real(v.informativeness),
            count_or_real(v.num_headings),
            real(v.article_length),
            real(v.refs_per_length),
            real(v.domain_informativeness),
            real(v.infobox_norm_size),
            v.category.to_string(),
            v.label.to_string(),
        ];
        if with_synthetic {
            record.push(v.synthetic.to_string());
        }
        w.write_record(&record)?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Reads a feature matrix written by [`write_csv`]; columns are located by
/// name and the `synthetic` column is optional.
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<FeatureVector>> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Data(format!("feature CSV is missing column {name:?}")))
    };
    let cols: Vec<usize> = CSV_HEADER.iter().map(|h| col(h)).collect::<Result<_>>()?;
    let synthetic_col = headers.iter().position(|h| h == "synthetic");

    let mut out = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        let field = |i: usize| record.get(cols[i]).unwrap_or("");
        let num = |i: usize| -> Result<f64> {
            field(i).parse::<f64>().map_err(|_| {
                Error::Data(format!(
                    "row {}: {} is not a number: {:?}",
                    row + 1,
                    CSV_HEADER[i],
                    field(i)
                ))
            })
        };
        out.push(FeatureVector {
            title: field(0).to_string(),
            completeness: num(1)?,
            informativeness: num(2)?,
            num_headings: num(3)?,
            article_length: num(4)?,
            refs_per_length: num(5)?,
            domain_informativeness: num(6)?,
            infobox_norm_size: num(7)?,
            category: field(8).parse()?,
            label: field(9).parse()?,
            synthetic: synthetic_col.and_then(|c| record.get(c)).is_some_and(|s| s == "true"),
        });
    }
    Ok(out)
}
