use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glyphcast::classify::{self, artifact, Classifier};
use glyphcast::convert::{self, ConvertOptions};
use glyphcast::eval::{run_benchmark, BenchConfig};
use glyphcast::glyphset::{self, io as dataset_io, SynthConfig};
use glyphcast::{preprocess, Charset, Error, FeatureMode, ModelKind};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "glyphcast",
    version,
    about = "Structure-based ASCII art from line images"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a labeled glyph dataset.
    Synth(SynthArgs),
    /// Train a classifier on a dataset.
    Train(TrainArgs),
    /// Convert an image to ASCII art.
    Convert(ConvertArgs),
    /// Train and score every configured backend.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = glyphset::CLASSICAL_SAMPLES)]
    count: usize,
    #[arg(long, default_value_t = 10)]
    tile_size: usize,
    #[arg(long, default_value = "raw")]
    features: FeatureMode,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Also write the samples as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    kind: ModelKind,
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Fraction held out to report test accuracy; 0 trains on everything.
    #[arg(long, default_value_t = glyphset::DEFAULT_TEST_FRACTION)]
    test_fraction: f64,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    lr: Option<f64>,
    #[arg(long)]
    batch: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    image: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Treat light strokes on a dark background as the structure.
    #[arg(long, conflicts_with = "no_invert")]
    invert: bool,
    /// Never invert, even for dark images.
    #[arg(long)]
    no_invert: bool,
    #[arg(long, default_value_t = preprocess::DEFAULT_THRESHOLD)]
    threshold: u8,
    /// Keep the image height instead of halving it for text output.
    #[arg(long)]
    no_aspect: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the result as a PNG.
    #[arg(long)]
    render_png: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// `default` or a TOML file.
    #[arg(long, default_value = "default")]
    config: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    match std::panic::catch_unwind(|| run(cli.command)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Stage { source, .. } => exit_code(source),
        Error::InvalidParameter(_) | Error::InvalidHyperparam { .. } => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

fn run(cmd: Command) -> glyphcast::Result<()> {
    match cmd {
        Command::Synth(a) => synth(a),
        Command::Train(a) => train(a),
        Command::Convert(a) => convert(a),
        Command::Bench(a) => bench(a),
    }
}

fn synth(a: SynthArgs) -> glyphcast::Result<()> {
    let charset = Charset::default();
    let data = glyphset::synthesize(
        &charset,
        &SynthConfig::new(a.tile_size, a.count, a.seed, a.features),
    )?;
    dataset_io::write(&data, &a.out)?;
    if let Some(p) = &a.csv {
        fs::write(p, dataset_io::to_csv(&data))?;
    }
    let mut out = String::new();
    for (class, count) in data.class_counts().iter().enumerate() {
        let code = charset.code(class).expect("class in charset");
        out += &format!("{code:>3} {:?} {count}\n", code as char);
    }
    print(&out)
}

fn train(a: TrainArgs) -> glyphcast::Result<()> {
    let data = dataset_io::read(&a.data)?;
    let mut hp = classify::default_hyperparams(a.kind);
    let overrides = [
        ("k", a.k.map(|v| v as f64)),
        ("trees", a.trees.map(|v| v as f64)),
        ("epochs", a.epochs.map(|v| v as f64)),
        ("lr", a.lr),
        ("batch", a.batch.map(|v| v as f64)),
        ("lambda", a.lambda),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            if !hp.contains_key(key) {
                return Err(Error::InvalidParameter(format!(
                    "--{key} does not apply to {}",
                    a.kind
                )));
            }
            hp.insert(key.to_string(), v);
        }
    }
    if !(0.0..1.0).contains(&a.test_fraction) {
        return Err(Error::InvalidParameter(format!(
            "--test-fraction {} must be in [0, 1)",
            a.test_fraction
        )));
    }
    let (train_set, test_set) = if a.test_fraction > 0.0 {
        let (tr, te) = glyphset::split(&data, a.test_fraction, a.seed)?;
        (tr, Some(te))
    } else {
        (data, None)
    };
    let model = classify::train(a.kind, &train_set, &hp, a.seed)?;
    artifact::write(&model, &a.out)?;

    let mut out = match model.train_accuracy {
        Some(acc) => format!("train accuracy {acc:.4}\n"),
        None => "train accuracy n/a\n".to_string(),
    };
    if let Some(te) = test_set {
        let clf = Classifier::from_artifact(&model)?;
        if clf.extractor().mode() == te.feature_mode() {
            out += &format!("test accuracy {:.4}\n", clf.accuracy(&te)?);
        } else {
            out += "test accuracy n/a\n";
        }
    }
    print(&out)
}

fn convert(a: ConvertArgs) -> glyphcast::Result<()> {
    let model = artifact::read(&a.model)?;
    let clf = Classifier::from_artifact(&model)?;
    let img = preprocess::load_image(&a.image)?;
    let opts = ConvertOptions {
        scale: a.scale,
        aspect_correction: !a.no_aspect,
        threshold: a.threshold,
        invert: match (a.invert, a.no_invert) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        },
    };
    let grid = convert::convert_image(&img, &clf, &opts)?;
    if let Some(p) = &a.render_png {
        preprocess::save_png(&convert::grid_to_image(&grid, model.tile_size)?, p)?;
    }
    let mut text = convert::grid_to_text(&grid);
    text.push('\n');
    match &a.out {
        Some(p) => Ok(fs::write(p, text)?),
        None => print(&text),
    }
}

fn load_config(source: &str) -> glyphcast::Result<BenchConfig> {
    if source == "default" {
        return Ok(BenchConfig::default());
    }
    let text = fs::read_to_string(Path::new(source))
        .map_err(|e| Error::Config(format!("cannot read {source}: {e}")))?;
    BenchConfig::from_toml(&text)
}

fn bench(a: BenchArgs) -> glyphcast::Result<()> {
    let mut cfg = load_config(&a.config)?;
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let report = run_benchmark(&cfg)?;
    let out = if a.json {
        report.to_json() + "\n"
    } else if a.csv {
        report.to_csv()
    } else {
        report.to_table()
    };
    print(&out)
}

fn print(s: &str) -> glyphcast::Result<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(s.as_bytes())?;
    stdout.flush()?;
    Ok(())
}
