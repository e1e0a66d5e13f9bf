//! Command-line front end. `main.rs` only calls [`run`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::corpus::{load_corpus, QualityClass, RawArticle};
use crate::dictionary::{load_dictionary, Dictionary};
use crate::error::{Error, Result};
use crate::features::{read_csv, write_csv, FeatureExtractor, FeatureVector, Variant};
use crate::learner::{
    cross_validate, rank_features, train_forest, CvOptions, ForestConfig, ModelBundle, ReportDocument,
};
use crate::sampling::{smote, standard_smote_percent, standard_undersample_targets, undersample, Dataset, SmoteConfig};
use crate::text::{LemmaLexicon, TextPipeline, WordList};
use crate::wikitext::{build_title_index, TitleIndex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "medqual", version, about = "Quality classification of medical wiki articles")]
struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// TOML file with defaults for any flag; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Seed for sampling, fold assignment and the forest.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a JSONL corpus and write one feature row per article.
    Extract {
        #[command(flatten)]
        input: CorpusArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Undersample and/or SMOTE a feature CSV.
    Sample {
        #[arg(long, value_name = "CSV")]
        features: Option<PathBuf>,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Information gain of each feature, highest first.
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Train a forest and save it with the title index.
    Train {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        forest: ForestArgs,
        #[arg(long, value_name = "PATH")]
        model_out: Option<PathBuf>,
    },
    /// Cross-validate one or more variants and write the report.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        forest: ForestArgs,
        #[arg(long)]
        folds: Option<usize>,
        /// Oversample inside each training split only.
        #[arg(long)]
        smote_in_folds: bool,
        #[arg(long, value_name = "PATH")]
        report_out: Option<PathBuf>,
    },
    /// Predict classes for a corpus with a saved model.
    Classify {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[command(flatten)]
        input: CorpusArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Default)]
struct CorpusArgs {
    /// JSON Lines corpus: {"title", "wikitext", "label"} per line.
    #[arg(long, value_name = "PATH")]
    corpus: Option<PathBuf>,
    /// Terminology file, `surface<TAB>semantic group` per line.
    #[arg(long, value_name = "PATH")]
    dictionary: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    lemmas: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    function_words: Option<PathBuf>,
    /// Baseline, MedicalDomain or FullMedicalDomain.
    #[arg(long, value_parser = parse_variant)]
    variant: Vec<Variant>,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Feature CSV, instead of a corpus.
    #[arg(long, value_name = "CSV", conflicts_with = "corpus")]
    features: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
struct SamplingArgs {
    /// Keep N random vectors of CLASS, e.g. `Stub=1015`.
    #[arg(long, value_name = "CLASS=N", value_parser = parse_undersample)]
    undersample: Vec<(QualityClass, usize)>,
    /// Add PERCENT% synthetic vectors to CLASS, e.g. `GA=40`.
    #[arg(long, value_name = "CLASS=PERCENT", value_parser = parse_smote)]
    smote: Vec<(QualityClass, u32)>,
    #[arg(long, value_name = "K")]
    smote_k: Option<usize>,
    /// Start from the medical-corpus targets (four majority classes to
    /// 1015, GA +40%, FA +180%); explicit targets override them.
    #[arg(long)]
    standard_sampling: bool,
}

#[derive(Debug, Args, Default)]
struct ForestArgs {
    #[arg(long, value_name = "N")]
    trees: Option<usize>,
    #[arg(long, value_name = "K")]
    features_per_split: Option<usize>,
    #[arg(long, value_name = "M")]
    min_leaf: Option<usize>,
    #[arg(long, value_name = "D")]
    max_depth: Option<usize>,
    /// Train trees one at a time (same forest, fewer threads).
    #[arg(long)]
    serial: bool,
}

fn split_kv(s: &str) -> std::result::Result<(QualityClass, &str), String> {
    let (class, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected CLASS=VALUE, got {s:?}"))?;
    Ok((class.trim().parse().map_err(|e: Error| e.to_string())?, value.trim()))
}

fn parse_undersample(s: &str) -> std::result::Result<(QualityClass, usize), String> {
    let (c, v) = split_kv(s)?;
    Ok((c, v.parse().map_err(|_| format!("bad count {v:?}"))?))
}

fn parse_smote(s: &str) -> std::result::Result<(QualityClass, u32), String> {
    let (c, v) = split_kv(s)?;
    Ok((
        c,
        v.trim_end_matches('%')
            .parse()
            .map_err(|_| format!("bad percentage {v:?}"))?,
    ))
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Optional TOML defaults. Every key mirrors a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub lemmas: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub function_words: Option<PathBuf>,
    pub variants: Option<Vec<Variant>>,
    pub seed: Option<u64>,
    pub folds: Option<usize>,
    pub sampling: SamplingConfig,
    pub forest: ForestSection,
    pub output: OutputConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingConfig {
    pub undersample: BTreeMap<QualityClass, usize>,
    pub smote: BTreeMap<QualityClass, u32>,
    pub smote_k: Option<usize>,
    pub standard_sampling: bool,
    pub smote_in_folds: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForestSection {
    pub trees: Option<usize>,
    pub features_per_split: Option<usize>,
    pub min_leaf: Option<usize>,
    pub max_depth: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub features: Option<PathBuf>,
    pub sample: Option<PathBuf>,
    pub rank: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub predictions: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&src).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .try_init();

    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("medqual: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.seed = cli.seed.or(cfg.seed);
    match cli.command {
        Command::Extract { input, out } => cmd_extract(&cfg, &input, pick(out, &cfg.output.features)),
        Command::Sample {
            features,
            sampling,
            out,
        } => cmd_sample(
            &cfg,
            pick(features, &cfg.features),
            &sampling,
            pick(out, &cfg.output.sample),
        ),
        Command::Rank { input, out } => cmd_rank(&cfg, &input, pick(out, &cfg.output.rank)),
        Command::Train {
            input,
            sampling,
            forest,
            model_out,
        } => cmd_train(&cfg, &input, &sampling, &forest, pick(model_out, &cfg.output.model)),
        Command::Evaluate {
            input,
            sampling,
            forest,
            folds,
            smote_in_folds,
            report_out,
        } => cmd_evaluate(
            &cfg,
            &input,
            &sampling,
            &forest,
            folds.or(cfg.folds).unwrap_or(10),
            smote_in_folds || cfg.sampling.smote_in_folds,
            pick(report_out, &cfg.output.report),
        ),
        Command::Classify { model, input, out } => {
            cmd_classify(&cfg, &model, &input, pick(out, &cfg.output.predictions))
        }
    }
}

fn pick(flag: Option<PathBuf>, config: &Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| config.clone())
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so a failed run never leaves a partial file. `None` means stdout.
pub fn write_output(path: Option<&Path>, content: &[u8]) -> Result<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(content)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io("<stdout>", e));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(content).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn require_file(path: &Path, what: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} {} does not exist", path.display())))
    }
}

fn require_out_dir(path: Option<&Path>) -> Result<()> {
    if let Some(dir) = path.and_then(Path::parent).filter(|p| !p.as_os_str().is_empty()) {
        if !dir.is_dir() {
            return Err(Error::Config(format!(
                "output directory {} does not exist",
                dir.display()
            )));
        }
    }
    Ok(())
}

/// Text resources resolved from flags, then config, then bundled data.
struct Resources {
    pipeline: TextPipeline,
    dictionary: Dictionary,
}

struct ResourcePaths {
    dictionary: Option<PathBuf>,
    lemmas: Option<PathBuf>,
    stopwords: Option<PathBuf>,
    function_words: Option<PathBuf>,
}

impl ResourcePaths {
    fn resolve(cfg: &RunConfig, args: &CorpusArgs, variants: &[Variant]) -> Result<Self> {
        let paths = ResourcePaths {
            dictionary: pick(args.dictionary.clone(), &cfg.dictionary),
            lemmas: pick(args.lemmas.clone(), &cfg.lemmas),
            stopwords: pick(args.stopwords.clone(), &cfg.stopwords),
            function_words: pick(args.function_words.clone(), &cfg.function_words),
        };
        if paths.dictionary.is_none() {
            if let Some(v) = variants.iter().find(|v| v.needs_dictionary()) {
                return Err(Error::Config(format!("variant {v} needs --dictionary")));
            }
        }
        for (p, what) in [
            (&paths.dictionary, "dictionary"),
            (&paths.lemmas, "lemma lexicon"),
            (&paths.stopwords, "stopword list"),
            (&paths.function_words, "function-word list"),
        ] {
            if let Some(p) = p {
                require_file(p, what)?;
            }
        }
        Ok(paths)
    }

    fn load(&self) -> Result<Resources> {
        let pipeline = TextPipeline::new(
            match &self.lemmas {
                Some(p) => LemmaLexicon::load(p)?,
                None => LemmaLexicon::bundled(),
            },
            match &self.stopwords {
                Some(p) => WordList::load(p)?,
                None => WordList::bundled_stopwords(),
            },
            match &self.function_words {
                Some(p) => WordList::load(p)?,
                None => WordList::bundled_function_words(),
            },
        );
        let dictionary = match &self.dictionary {
            Some(p) => {
                let (d, warnings) = load_dictionary(p, &pipeline)?;
                if warnings.total() > 0 {
                    log::warn!(
                        "{}: skipped {} malformed, {} without content words, {} longer than the match window",
                        p.display(),
                        warnings.malformed,
                        warnings.empty_approx_key,
                        warnings.too_long
                    );
                }
                d
            }
            None => Dictionary::default(),
        };
        Ok(Resources { pipeline, dictionary })
    }
}

fn variants_of(cfg: &RunConfig, args: &CorpusArgs, default: &[Variant]) -> Vec<Variant> {
    if !args.variant.is_empty() {
        args.variant.clone()
    } else if let Some(v) = &cfg.variants {
        v.clone()
    } else {
        default.to_vec()
    }
}

fn read_corpus(path: &Path) -> Result<Vec<RawArticle>> {
    let read = load_corpus(path)?;
    eprintln!(
        "{}: parsed {} articles, skipped {} malformed lines",
        path.display(),
        read.articles.len(),
        read.skipped.len()
    );
    Ok(read.articles)
}

fn read_features(path: &Path) -> Result<Vec<FeatureVector>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(std::io::BufReader::new(file))
}

/// Feature vectors plus the title index of the corpus they came from.
fn load_vectors(cfg: &RunConfig, input: &InputArgs, variants: &[Variant]) -> Result<(Vec<FeatureVector>, TitleIndex)> {
    if let Some(csv) = pick(input.features.clone(), &cfg.features).filter(|_| input.corpus.corpus.is_none()) {
        require_file(&csv, "feature CSV")?;
        return Ok((read_features(&csv)?, TitleIndex::default()));
    }
    let corpus_path = pick(input.corpus.corpus.clone(), &cfg.corpus)
        .ok_or_else(|| Error::Config("give --corpus or --features".into()))?;
    require_file(&corpus_path, "corpus")?;
    let paths = ResourcePaths::resolve(cfg, &input.corpus, variants)?;
    let res = paths.load()?;
    let articles = read_corpus(&corpus_path)?;
    let index = build_title_index(&articles)?;
    let vectors = FeatureExtractor::new(&index, &res.dictionary, &res.pipeline).extract_all(&articles);
    Ok((vectors, index))
}

fn cmd_extract(cfg: &RunConfig, input: &CorpusArgs, out: Option<PathBuf>) -> Result<()> {
    let corpus_path =
        pick(input.corpus.clone(), &cfg.corpus).ok_or_else(|| Error::Config("--corpus is required".into()))?;
    let variants = variants_of(cfg, input, &[Variant::FullMedicalDomain]);
    let paths = ResourcePaths::resolve(cfg, input, &variants)?;
    require_file(&corpus_path, "corpus")?;
    require_out_dir(out.as_deref())?;

    let res = paths.load()?;
    let articles = read_corpus(&corpus_path)?;
    let index = build_title_index(&articles)?;
    let vectors = FeatureExtractor::new(&index, &res.dictionary, &res.pipeline).extract_all(&articles);
    let mut buf = Vec::new();
    write_csv(&mut buf, &vectors, false)?;
    write_output(out.as_deref(), &buf)
}

fn sampling_plan(cfg: &RunConfig, args: &SamplingArgs) -> (BTreeMap<QualityClass, usize>, SmoteConfig) {
    let standard = args.standard_sampling || cfg.sampling.standard_sampling;
    let mut targets = if standard {
        standard_undersample_targets()
    } else {
        BTreeMap::new()
    };
    targets.extend(cfg.sampling.undersample.iter().map(|(k, v)| (*k, *v)));
    targets.extend(args.undersample.iter().copied());
    let mut percent = if standard {
        standard_smote_percent()
    } else {
        BTreeMap::new()
    };
    percent.extend(cfg.sampling.smote.iter().map(|(k, v)| (*k, *v)));
    percent.extend(args.smote.iter().copied());
    let seed = cfg.seed.unwrap_or(1);
    let smote_cfg = SmoteConfig {
        k: args.smote_k.or(cfg.sampling.smote_k).unwrap_or(5),
        percent,
        seed,
    };
    (targets, smote_cfg)
}

fn rebalance(
    data: Dataset,
    targets: &BTreeMap<QualityClass, usize>,
    smote_cfg: Option<&SmoteConfig>,
) -> Result<Dataset> {
    let seed = smote_cfg.map_or(1, |s| s.seed);
    let mut data = if targets.is_empty() {
        data
    } else {
        undersample(&data, targets, seed)?
    };
    if let Some(s) = smote_cfg.filter(|s| s.percent.values().any(|&p| p > 0)) {
        data = smote(&data, s)?;
    }
    log::info!("rebalanced class counts: {:?}", data.class_counts());
    Ok(data)
}

fn cmd_sample(cfg: &RunConfig, features: Option<PathBuf>, args: &SamplingArgs, out: Option<PathBuf>) -> Result<()> {
    let path = features.ok_or_else(|| Error::Config("--features is required".into()))?;
    require_file(&path, "feature CSV")?;
    require_out_dir(out.as_deref())?;
    let (targets, smote_cfg) = sampling_plan(cfg, args);
    smote_cfg.validate()?;
    let data = rebalance(Dataset::new(read_features(&path)?), &targets, Some(&smote_cfg))?;
    let mut buf = Vec::new();
    write_csv(&mut buf, &data.vectors, true)?;
    write_output(out.as_deref(), &buf)
}

fn cmd_rank(cfg: &RunConfig, input: &InputArgs, out: Option<PathBuf>) -> Result<()> {
    let variants = variants_of(cfg, &input.corpus, &[Variant::FullMedicalDomain]);
    require_out_dir(out.as_deref())?;
    let (vectors, _) = load_vectors(cfg, input, &variants)?;
    let data = Dataset::new(vectors);
    let features = variants.iter().max_by_key(|v| v.features().len()).unwrap().features();
    let mut text = String::from("feature,info_gain\n");
    for (f, g) in rank_features(&data, features) {
        let _ = writeln!(text, "{f},{g:.6}");
    }
    write_output(out.as_deref(), text.as_bytes())
}

fn forest_config(cfg: &RunConfig, args: &ForestArgs, seed: u64) -> ForestConfig {
    let d = ForestConfig::default();
    ForestConfig {
        num_trees: args.trees.or(cfg.forest.trees).unwrap_or(d.num_trees),
        features_per_split: args.features_per_split.or(cfg.forest.features_per_split),
        min_leaf: args.min_leaf.or(cfg.forest.min_leaf).unwrap_or(d.min_leaf),
        max_depth: args.max_depth.or(cfg.forest.max_depth),
        seed,
        parallel: !args.serial,
    }
}

fn single_variant(variants: &[Variant]) -> Result<Variant> {
    match variants {
        [v] => Ok(*v),
        _ => Err(Error::Config("train needs exactly one --variant".into())),
    }
}

fn cmd_train(
    cfg: &RunConfig,
    input: &InputArgs,
    sampling: &SamplingArgs,
    forest: &ForestArgs,
    model_out: Option<PathBuf>,
) -> Result<()> {
    let variant = single_variant(&variants_of(cfg, &input.corpus, &[Variant::FullMedicalDomain]))?;
    let model_out = model_out.ok_or_else(|| Error::Config("--model-out is required".into()))?;
    require_out_dir(Some(&model_out))?;
    let (targets, smote_cfg) = sampling_plan(cfg, sampling);
    let forest_cfg = forest_config(cfg, forest, smote_cfg.seed);
    forest_cfg.validate(variant.features().len())?;
    smote_cfg.validate()?;

    let (vectors, index) = load_vectors(cfg, input, &[variant])?;
    if index.is_empty() {
        log::warn!("training from a feature CSV: the model has no title index, so every link of a classified article counts as broken");
    }
    let data = rebalance(Dataset::new(vectors), &targets, Some(&smote_cfg))?;
    let model = train_forest(&data, variant.features(), &forest_cfg)?;
    let bundle = ModelBundle::new(variant, model, index);
    write_output(Some(&model_out), bundle.to_json()?.as_bytes())
}

fn cmd_evaluate(
    cfg: &RunConfig,
    input: &InputArgs,
    sampling: &SamplingArgs,
    forest: &ForestArgs,
    folds: usize,
    smote_in_folds: bool,
    report_out: Option<PathBuf>,
) -> Result<()> {
    let variants = variants_of(cfg, &input.corpus, &Variant::ALL);
    require_out_dir(report_out.as_deref())?;
    let (targets, smote_cfg) = sampling_plan(cfg, sampling);
    let forest_cfg = forest_config(cfg, forest, smote_cfg.seed);
    for v in &variants {
        forest_cfg.validate(v.features().len())?;
    }
    smote_cfg.validate()?;

    let (vectors, _) = load_vectors(cfg, input, &variants)?;
    let data = rebalance(
        Dataset::new(vectors),
        &targets,
        if smote_in_folds { None } else { Some(&smote_cfg) },
    )?;
    let opts = CvOptions {
        folds,
        seed: smote_cfg.seed,
        smote_in_folds: smote_in_folds.then(|| smote_cfg.clone()),
    };
    let runs = variants
        .iter()
        .map(|&v| cross_validate(&data, v, &forest_cfg, &opts))
        .collect::<Result<Vec<_>>>()?;
    let doc = ReportDocument::new(runs);
    if report_out.is_some() {
        print!("{}", doc.to_text());
    }
    write_output(report_out.as_deref(), doc.to_json()?.as_bytes())
}

fn cmd_classify(cfg: &RunConfig, model_path: &Path, input: &CorpusArgs, out: Option<PathBuf>) -> Result<()> {
    require_file(model_path, "model")?;
    let corpus_path =
        pick(input.corpus.clone(), &cfg.corpus).ok_or_else(|| Error::Config("--corpus is required".into()))?;
    require_file(&corpus_path, "corpus")?;
    require_out_dir(out.as_deref())?;
    let bundle = ModelBundle::load(model_path)?;
    let res = ResourcePaths::resolve(cfg, input, &[bundle.variant])?.load()?;
    let articles = read_corpus(&corpus_path)?;

    // models trained from a feature CSV carry no titles
    let own_index;
    let index = if bundle.title_index.is_empty() {
        log::warn!("model has no title index; resolving links against the classified corpus");
        own_index = build_title_index(&articles)?;
        &own_index
    } else {
        &bundle.title_index
    };
    let extractor = FeatureExtractor::new(index, &res.dictionary, &res.pipeline);
    let vectors = extractor.extract_all(&articles);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec!["title".to_string(), "predicted_class".to_string()];
    header.extend(bundle.forest.class_list.iter().map(|c| format!("p_{c}")));
    w.write_record(&header)?;
    for v in &vectors {
        let p = bundle.forest.predict_proba(v);
        let best = crate::learner::forest::argmax(&p);
        let mut row = vec![v.title.clone(), bundle.forest.class_list[best].to_string()];
        row.extend(p.iter().map(|x| x.to_string()));
        w.write_record(&row)?;
    }
    let buf = w.into_inner().map_err(|e| Error::Data(e.to_string()))?;
    write_output(out.as_deref(), &buf)
}
