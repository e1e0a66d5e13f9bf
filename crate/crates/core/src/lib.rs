//! Quality assessment for medical wiki articles.
//!
//! The pipeline turns raw wikitext into a small feature vector per article
//! (structural, linguistic and medical-domain features), rebalances the
//! labelled set with random undersampling and SMOTE, and evaluates a random
//! forest under stratified cross-validation with per-class F-measure and
//! ROC area.
//!
//! Each stage lives in its own module and can be used on its own:
//!
//! - [`wikitext`]: markup parsing, link counting, title index
//! - [`text`]: sentence splitting, tokenization, lemmas, stopwords
//! - [`dictionary`]: terminology loading and n-gram entity matching
//! - [`features`]: feature vectors and CSV export
//! - [`sampling`]: undersampling and SMOTE
//! - [`learner`]: information gain, random forest, metrics, cross-validation
//!
//! Runnable walkthroughs of every stage live in `crates/core/examples/`.

pub mod corpus;
pub mod dictionary;
pub mod error;
pub mod features;
pub mod learner;
pub mod resources;
pub mod sampling;
pub mod synth;
pub mod text;
pub mod wikitext;

#[doc(hidden)]
pub mod cli;

pub use corpus::{QualityClass, RawArticle};
pub use error::{Error, Result};
