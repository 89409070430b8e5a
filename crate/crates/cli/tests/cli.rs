use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use glyphcast::{preprocess, GrayImage};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glyphcast"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn synth(dir: &Path, name: &str, count: usize, features: &str) -> std::path::PathBuf {
    let out = dir.join(name);
    let o = run(&[
        "synth",
        "--count",
        &count.to_string(),
        "--features",
        features,
        "--seed",
        "7",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

fn train(dir: &Path, kind: &str, data: &Path, extra: &[&str]) -> Output {
    let model = dir.join(format!("{kind}.gcma"));
    let mut args = vec![
        "train",
        "--kind",
        kind,
        "--data",
        p(data),
        "--out",
        p(&model),
    ];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn synth_writes_requested_count_deterministically() {
    let dir = TempDir::new().unwrap();
    let a = synth(dir.path(), "a.gcds", 2500, "raw");
    let b = synth(dir.path(), "b.gcds", 2500, "raw");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let data = glyphcast::glyphset::io::read(&a).unwrap();
    assert_eq!(data.len(), 2500);

    let o = run(&[
        "synth",
        "--count",
        "2500",
        "--out",
        p(&dir.path().join("c.gcds")),
    ]);
    let counts: Vec<usize> = stdout(&o)
        .lines()
        .map(|l| l.rsplit(' ').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(counts.len(), 95);
    assert_eq!(counts.iter().sum::<usize>(), 2500);
    assert!(counts.iter().all(|&c| c == 26 || c == 27));
}

#[test]
fn synth_rejects_fewer_samples_than_classes() {
    let dir = TempDir::new().unwrap();
    let o = run(&[
        "synth",
        "--count",
        "10",
        "--out",
        p(&dir.path().join("d.gcds")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("too few samples"), "{}", stderr(&o));
}

#[test]
fn invalid_flags_exit_with_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.gcds");
    for args in [
        vec!["synth", "--count", "abc", "--out", p(&out)],
        vec!["synth", "--features", "sift", "--out", p(&out)],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn train_reports_accuracies_and_checks_kind() {
    let dir = TempDir::new().unwrap();
    let raw = synth(dir.path(), "raw.gcds", 475, "raw");
    let o = train(dir.path(), "rf", &raw, &["--trees", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let acc = |prefix: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(prefix)).unwrap();
        line[prefix.len()..].trim().parse().unwrap()
    };
    assert!((0.0..=1.0).contains(&acc("train accuracy")), "{text}");
    assert!((0.0..=1.0).contains(&acc("test accuracy")), "{text}");
    assert!(dir.path().join("rf.gcma").exists());

    let o = train(dir.path(), "knn", &raw, &["--trees", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--trees"));

    let lp = synth(dir.path(), "lp.gcds", 95, "logpolar");
    let o = train(dir.path(), "aiss", &lp, &["--test-fraction", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("train accuracy"));

    let hog = synth(dir.path(), "hog.gcds", 95, "hog");
    let o = train(dir.path(), "cnn", &hog, &["--epochs", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hog"), "{}", stderr(&o));
}

#[test]
fn convert_blank_image_and_scale() {
    let dir = TempDir::new().unwrap();
    let raw = synth(dir.path(), "raw.gcds", 475, "raw");
    let o = train(dir.path(), "knn", &raw, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let model = dir.path().join("knn.gcma");

    let blank = dir.path().join("blank.png");
    preprocess::save_png(&GrayImage::filled(200, 80, 255).unwrap(), &blank).unwrap();
    let o = run(&["convert", "--model", p(&model), "--image", p(&blank)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines
        .iter()
        .all(|l| l.len() == 20 && l.chars().all(|c| c == ' ')));

    let o = run(&[
        "convert",
        "--model",
        p(&model),
        "--image",
        p(&blank),
        "--scale",
        "0.5",
    ]);
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.len() == 10), "{text:?}");

    let rendered = dir.path().join("out.png");
    let o = run(&[
        "convert",
        "--model",
        p(&model),
        "--image",
        p(&blank),
        "--no-aspect",
        "--render-png",
        p(&rendered),
    ]);
    assert!(o.status.success());
    let img = preprocess::load_image(&rendered).unwrap();
    assert_eq!((img.width(), img.height()), (200, 80));

    let o = run(&[
        "convert",
        "--model",
        p(&model),
        "--image",
        p(&dir.path().join("none.png")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "convert",
        "--model",
        p(&model),
        "--image",
        p(&blank),
        "--scale",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn bench_emits_parseable_json() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bench.toml");
    fs::write(
        &cfg,
        "classical_samples = 190\ntiming_repetitions = 1\n\n[[rows]]\nname = \"knn\"\nkind = \"knn\"\n",
    )
    .unwrap();
    let o = run(&["bench", "--config", p(&cfg), "--seed", "3", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["rows"][0]["name"], "knn");
    assert_eq!(v["rows"][0]["image_ssim"].as_array().unwrap().len(), 4);

    fs::write(&cfg, "rows = []\n").unwrap();
    let o = run(&["bench", "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
}
