use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    medqual::resources::data_dir().join(name)
}

fn medqual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_medqual")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn extract_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let o = medqual(&[
        "extract",
        "--corpus",
        s(&data("mini_corpus.jsonl")),
        "--dictionary",
        s(&data("dictionary.tsv")),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(data("mini_features.golden.csv")).unwrap()
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("parsed 60 articles, skipped 0 malformed lines"));
}

#[test]
fn empty_corpus_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("empty.jsonl");
    std::fs::write(&corpus, "").unwrap();
    let o = medqual(&[
        "extract",
        "--corpus",
        s(&corpus),
        "--dictionary",
        s(&data("dictionary.tsv")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        format!("{}\n", medqual::features::CSV_HEADER.join(","))
    );
}

#[test]
fn malformed_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    std::fs::write(
        &corpus,
        "{\"title\":\"A\",\"wikitext\":\"fever\",\"label\":\"Stub\"}\nnot json\n",
    )
    .unwrap();
    let o = medqual(&[
        "extract",
        "--corpus",
        s(&corpus),
        "--dictionary",
        s(&data("dictionary.tsv")),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped 1 malformed"));
}

#[test]
fn missing_dictionary_is_a_usage_error_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let o = medqual(&[
        "extract",
        "--corpus",
        s(&data("mini_corpus.jsonl")),
        "--dictionary",
        "/nonexistent/dict.tsv",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
    assert!(o.stdout.is_empty());
}

#[test]
fn full_variant_requires_a_dictionary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let o = medqual(&["extract", "--corpus", s(&data("mini_corpus.jsonl")), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!out.exists());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(medqual(&["extract", "--bogus"]).status.code(), Some(1));
    assert_eq!(medqual(&["--help"]).status.code(), Some(0));
}

#[test]
fn class_smaller_than_fold_count_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = std::fs::read_to_string(data("mini_features.golden.csv")).unwrap();
    // drop one Stub row, leaving 9
    let mut lines: Vec<&str> = csv.lines().collect();
    let stub = lines.iter().position(|l| l.ends_with(",Stub")).unwrap();
    lines.remove(stub);
    let features = dir.path().join("f.csv");
    std::fs::write(&features, lines.join("\n") + "\n").unwrap();
    let report = dir.path().join("r.json");
    let o = medqual(&[
        "evaluate",
        "--features",
        s(&features),
        "--folds",
        "10",
        "--trees",
        "5",
        "--report-out",
        s(&report),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("Stub") && err.contains("9"), "{err}");
    assert!(!report.exists());
}

#[test]
fn train_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    let preds = dir.path().join("p.csv");
    let corpus = data("mini_corpus.jsonl");
    let dict = data("dictionary.tsv");
    let o = medqual(&[
        "--seed",
        "3",
        "train",
        "--corpus",
        s(&corpus),
        "--dictionary",
        s(&dict),
        "--variant",
        "FullMedicalDomain",
        "--trees",
        "20",
        "--model-out",
        s(&model),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = medqual(&[
        "classify",
        "--model",
        s(&model),
        "--corpus",
        s(&corpus),
        "--dictionary",
        s(&dict),
        "--out",
        s(&preds),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let text = std::fs::read_to_string(&preds).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "title,predicted_class,p_Stub,p_Start,p_C,p_B,p_GA,p_FA"
    );
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let mut n = 0;
    for row in rows.records() {
        let row = row.unwrap();
        let p: Vec<f64> = (2..8).map(|i| row[i].parse().unwrap()).collect();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9, "{row:?}");
        let best = medqual::learner::forest::argmax(&p);
        assert_eq!(&row[1], medqual::QualityClass::ALL[best].as_str());
        n += 1;
    }
    assert_eq!(n, 60);
}

#[test]
fn corrupted_model_fails_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    let preds = dir.path().join("p.csv");
    std::fs::write(&model, "{\"format_version\": 1, \"variant\": ").unwrap();
    let o = medqual(&[
        "classify",
        "--model",
        s(&model),
        "--corpus",
        s(&data("mini_corpus.jsonl")),
        "--out",
        s(&preds),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!preds.exists());
}

#[test]
fn sample_and_rank_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let features = data("mini_features.golden.csv");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = medqual(&[
            "--seed",
            "5",
            "sample",
            "--features",
            s(&features),
            "--undersample",
            "Stub=8",
            "--smote",
            "FA=180",
            "--smote-k",
            "3",
            "--out",
            s(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(out).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let rows: Vec<&str> = a.lines().skip(1).collect();
    assert_eq!(rows.iter().filter(|l| l.contains(",Stub,")).count(), 8);
    assert_eq!(rows.iter().filter(|l| l.contains(",FA,")).count(), 28);
    assert_eq!(rows.iter().filter(|l| l.ends_with(",true")).count(), 18);

    let o = medqual(&["rank", "--features", s(&features)]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().next(), Some("feature,info_gain"));
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "corpus = {:?}\ndictionary = {:?}\n\n[output]\nfeatures = {:?}\n",
            s(&data("mini_corpus.jsonl")),
            s(&data("dictionary.tsv")),
            s(&out)
        ),
    )
    .unwrap();
    let o = medqual(&["--config", s(&cfg), "extract"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(data("mini_features.golden.csv")).unwrap()
    );

    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(medqual(&["--config", s(&cfg), "extract"]).status.code(), Some(1));
}

#[test]
fn model_from_csv_resolves_links_against_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    let o = medqual(&[
        "train",
        "--features",
        s(&data("mini_features.golden.csv")),
        "--variant",
        "Baseline",
        "--trees",
        "10",
        "--model-out",
        s(&model),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = medqual(&[
        "classify",
        "--model",
        s(&model),
        "--corpus",
        s(&data("mini_corpus.jsonl")),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 61);
}
