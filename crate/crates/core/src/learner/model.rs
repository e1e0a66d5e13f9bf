//! On-disk model: the forest plus what classification needs to rebuild
//! feature vectors for unseen articles.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::forest::ForestModel;
use crate::error::{Error, Result};
use crate::features::Variant;
use crate::wikitext::TitleIndex;

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub format_version: u32,
    pub variant: Variant,
    pub forest: ForestModel,
    /// Titles of the training corpus, used to count broken links at
    /// classification time. Empty when trained from a feature CSV.
    pub title_index: TitleIndex,
}

impl ModelBundle {
    pub fn new(variant: Variant, forest: ForestModel, title_index: TitleIndex) -> Self {
        ModelBundle {
            format_version: MODEL_FORMAT_VERSION,
            variant,
            forest,
            title_index,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Parses and validates a model document.
    pub fn from_json(src: &str) -> Result<Self> {
        let bundle: ModelBundle =
            serde_json::from_str(src).map_err(|e| Error::Model(format!("malformed model: {e}")))?;
        if bundle.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Model(format!(
                "unsupported format_version {} (expected {MODEL_FORMAT_VERSION})",
                bundle.format_version
            )));
        }
        if bundle.forest.features != bundle.variant.features() {
            return Err(Error::Model(format!(
                "feature schema does not match variant {}",
                bundle.variant
            )));
        }
        bundle.forest.check()?;
        Ok(bundle)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&src)
    }
}
