//! Feature ranking, random forest and cross-validated evaluation.

pub mod cv;
pub mod forest;
pub mod info_gain;
pub mod metrics;
pub mod model;
pub mod report;

pub use cv::{cross_validate, stratified_folds, CvOptions, EvalReport};
pub use forest::{train_forest, ForestConfig, ForestModel};
pub use info_gain::{info_gain, rank_features};
pub use metrics::{f_measure, roc_auc};
pub use model::ModelBundle;
pub use report::ReportDocument;
