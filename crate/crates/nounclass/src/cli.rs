use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use nounclass_core::tree::ConfidenceMode;
use nounclass_core::{
    class_cue_frequencies, cross_validate, extract_dataset, synth_corpus, threshold_sweep, Corpus, CueSet,
    Dataset, GoldStandard, Model, SynthSpec, TagMap, TrainParams,
};

use crate::builtin::{builtin_cueset, builtin_name, builtin_rates};
use crate::error::{Error, ParseError, Result};
use crate::formats;

const EXIT_CODES: &str = "\
Exit status:
  0  success
  2  usage error: unknown command or flag, missing argument, unsupported builtin
  3  an input file could not be read or an output file could not be written
  4  an input file is malformed (the message names the file and line)
  5  the data were rejected: unlabelled or empty dataset, class smaller than k,
     model and dataset groups differ, invalid parameter values

Cue sources are a cue file path or builtin:CLASS-lang, with CLASS one of HUMAN,
LOCATION and lang one of en, es.";

#[derive(Debug, Parser)]
#[command(name = "nounclass", version, about = "Cue-based lexical semantic classification of nouns", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a feature dataset from a tagged corpus and a cue set
    Extract(ExtractArgs),
    /// Train a pruned decision tree on a labelled dataset
    Train(TrainArgs),
    /// Classify the rows of a dataset with a trained model
    Classify(ClassifyArgs),
    /// Cross-validate on a labelled dataset and pick a confidence threshold
    Evaluate(EvaluateArgs),
    /// Per-group cue frequencies for members and non-members
    CueStats(CueStatsArgs),
    /// Generate a synthetic corpus and gold list with planted cue contexts
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Vertical corpus file (surface, lemma, pos per line)
    #[arg(long)]
    pub corpus: PathBuf,
    /// Cue file or builtin:CLASS-lang
    #[arg(long)]
    pub cues: String,
    /// File mapping the corpus tags onto the coarse tag set
    #[arg(long)]
    pub tag_map: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[arg(long, default_value_t = 2)]
    pub min_leaf: usize,
    /// Pruning confidence factor, in (0, 1)
    #[arg(long, default_value_t = 0.25)]
    pub confidence_factor: f64,
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Prune by collapsing to leaves only
    #[arg(long)]
    pub no_subtree_raising: bool,
}

impl LearnArgs {
    fn params(&self) -> TrainParams {
        TrainParams {
            min_leaf: self.min_leaf,
            confidence_factor: self.confidence_factor,
            max_depth: self.max_depth,
            subtree_raising: !self.no_subtree_raising,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("words").required(true).args(["gold", "vocab"])))]
pub struct ExtractArgs {
    #[command(flatten)]
    pub input: CorpusArgs,
    /// Gold list (lemma, 1 or 0); rows come out labelled
    #[arg(long)]
    pub gold: Option<PathBuf>,
    /// Plain lemma list; rows come out unlabelled
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    /// Drop nouns that never occur in the corpus
    #[arg(long)]
    pub exclude_unseen: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[command(flatten)]
    pub learn: LearnArgs,
    #[arg(long)]
    pub exclude_unseen: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub dataset: PathBuf,
    /// Report (k+1)/(n+2) instead of raw leaf purity
    #[arg(long)]
    pub laplace_confidence: bool,
    #[arg(long)]
    pub exclude_unseen: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[command(flatten)]
    pub learn: LearnArgs,
    /// Number of cross-validation folds
    #[arg(long = "k", default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Precision the confidence threshold should reach, in (0, 1]
    #[arg(long, default_value_t = 0.90)]
    pub target_precision: f64,
    #[arg(long)]
    pub laplace_confidence: bool,
    #[arg(long)]
    pub exclude_unseen: bool,
    /// Where to write the pooled out-of-fold predictions
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CueStatsArgs {
    #[command(flatten)]
    pub input: CorpusArgs,
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Cue file or builtin:CLASS-lang
    #[arg(long)]
    pub cues: String,
    /// Rates file (group, member rate, non-member rate); defaults to the
    /// builtin rates when the cues are builtin
    #[arg(long)]
    pub rates: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub members: usize,
    #[arg(long, default_value_t = 200)]
    pub nonmembers: usize,
    /// Occurrences generated per noun
    #[arg(long, default_value_t = 50)]
    pub occurrences: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub corpus_out: PathBuf,
    #[arg(long)]
    pub gold_out: PathBuf,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn parsed<T>(path: &Path, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|source| Error::Parse { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}

pub fn load_cues(source: &str) -> Result<CueSet> {
    if let Some((class, lang)) = builtin_name(source) {
        return builtin_cueset(class, lang);
    }
    let path = Path::new(source);
    let text = read(path)?;
    parsed(path, formats::parse_cueset(&text, path.parent()))
}

fn load_corpus(args: &CorpusArgs, cues: &CueSet) -> Result<Corpus> {
    let tags = match &args.tag_map {
        Some(p) => parsed(p, formats::parse_tag_map(&read(p)?))?,
        None => TagMap::new(),
    };
    parsed(&args.corpus, formats::parse_corpus(&read(&args.corpus)?, cues.language.clone(), &tags))
}

fn load_gold(path: &Path, cues: &CueSet) -> Result<GoldStandard> {
    parsed(path, formats::parse_gold(&read(path)?, &cues.class_name))
}

fn load_dataset(path: &Path, exclude_unseen: bool) -> Result<Dataset> {
    let data = parsed(path, formats::parse_dataset(&read(path)?))?;
    Ok(if exclude_unseen { data.without_unseen() } else { data })
}

fn confidence(laplace: bool) -> ConfidenceMode {
    if laplace {
        ConfidenceMode::Laplace
    } else {
        ConfidenceMode::Purity
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Extract(a) => {
            let cues = load_cues(&a.input.cues)?;
            let corpus = load_corpus(&a.input, &cues)?;
            let data = match (&a.gold, &a.vocab) {
                (Some(g), _) => {
                    let gold = load_gold(g, &cues)?;
                    extract_dataset(&corpus, &cues, &gold.vocabulary(), Some(&gold))?
                }
                (None, Some(v)) => {
                    let vocab = formats::parse_vocabulary(&read(v)?);
                    extract_dataset(&corpus, &cues, &vocab, None)?
                }
                (None, None) => return Err(Error::Usage("extract needs --gold or --vocab".into())),
            };
            let data = if a.exclude_unseen { data.without_unseen() } else { data };
            emit(a.output.as_deref(), &formats::serialize_dataset(&data), stdout)
        }
        Command::Train(a) => {
            let data = load_dataset(&a.dataset, a.exclude_unseen)?;
            let model = Model::train(&data, a.learn.params())?;
            emit(a.output.as_deref(), &formats::serialize_model(&model), stdout)
        }
        Command::Classify(a) => {
            let model = parsed(&a.model, formats::parse_model(&read(&a.model)?))?;
            let data = load_dataset(&a.dataset, a.exclude_unseen)?;
            if data.groups() != model.groups.as_slice() {
                return Err(Error::Invalid(format!(
                    "{}: feature groups differ from those of model {}",
                    a.dataset.display(),
                    a.model.display()
                )));
            }
            let preds = data
                .rows()
                .iter()
                .map(|r| model.classify(&r.vector, confidence(a.laplace_confidence)))
                .collect::<nounclass_core::Result<Vec<_>>>()?;
            emit(a.output.as_deref(), &formats::serialize_predictions(&preds), stdout)
        }
        Command::Evaluate(a) => {
            let data = load_dataset(&a.dataset, a.exclude_unseen)?;
            let (report, judged) = cross_validate(&data, a.learn.params(), a.k, a.seed, confidence(a.laplace_confidence))?;
            let sweep = threshold_sweep(&judged, a.target_precision)?;
            for w in &report.warnings {
                writeln!(stderr, "nounclass: warning: {w}").ok();
            }
            if let Some(p) = &a.predictions {
                let preds: Vec<_> = judged.iter().map(|j| j.prediction.clone()).collect();
                write(p, &formats::serialize_predictions(&preds))?;
            }
            let ctx = formats::ReportContext { k: a.k, seed: a.seed };
            emit(a.output.as_deref(), &formats::serialize_report(&report, &sweep, &ctx), stdout)
        }
        Command::CueStats(a) => {
            let cues = load_cues(&a.input.cues)?;
            let corpus = load_corpus(&a.input, &cues)?;
            let gold = load_gold(&a.gold, &cues)?;
            let freqs = class_cue_frequencies(&corpus, &cues, &gold)?;
            emit(a.output.as_deref(), &formats::serialize_cue_stats(&freqs), stdout)
        }
        Command::Synth(a) => {
            let cues = load_cues(&a.cues)?;
            let groups = match (&a.rates, builtin_name(&a.cues)) {
                (Some(src), _) => match builtin_name(src) {
                    Some((class, lang)) => builtin_rates(class, lang)?,
                    None => parsed(Path::new(src), formats::parse_rates(&read(Path::new(src))?))?,
                },
                (None, Some((class, lang))) => builtin_rates(class, lang)?,
                (None, None) => return Err(Error::Usage("synth needs --rates unless the cues are builtin".into())),
            };
            let spec = SynthSpec { groups, members: a.members, nonmembers: a.nonmembers, occurrences: a.occurrences };
            let (corpus, gold) = synth_corpus(&cues, &spec, a.seed)?;
            write(&a.corpus_out, &formats::serialize_corpus(&corpus))?;
            write(&a.gold_out, &formats::serialize_gold(&gold))
        }
    }
}
