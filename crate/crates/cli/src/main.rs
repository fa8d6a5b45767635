use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{debug, info, warn};

use depbits::conllu::{write_conllu_to, Sentence};
use depbits::labels_io::LabeledSentence;
use depbits::{
    read_conllu, read_labels, report, write_labels, CoverageReport, Encoding, EventKind,
    LabelSyntax, RepairCounts, RepairOptions, ReportFormat, Treebank,
};

/// Encode dependency trees as per-word bit-vector labels and back.
#[derive(Parser)]
#[command(name = "depbits", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CoNLL-U to label TSV.
    Encode {
        #[command(flatten)]
        io: Io,
        #[arg(short, long, default_value = "4bit")]
        encoding: Encoding,
        #[arg(long, default_value = "bits")]
        syntax: LabelSyntax,
    },
    /// Label TSV to CoNLL-U, repairing invalid label sequences.
    Decode {
        #[command(flatten)]
        io: Io,
        #[arg(short, long, default_value = "4bit")]
        encoding: Encoding,
        /// Keep several root words instead of attaching extras to the first.
        #[arg(long)]
        allow_forest: bool,
    },
    /// Encode and decode each sentence, print coverage.
    Roundtrip {
        #[command(flatten)]
        io: Io,
        #[arg(short, long, default_value = "4bit")]
        encoding: Encoding,
        /// Also write the decoded trees as CoNLL-U.
        #[arg(long, value_name = "PATH")]
        trees: Option<PathBuf>,
    },
    /// Label inventory and coverage per treebank and encoding.
    Stats {
        /// CoNLL-U files; standard input if none.
        files: Vec<PathBuf>,
        /// Repeat for one row per encoding. Default: both.
        #[arg(short, long)]
        encoding: Vec<Encoding>,
        #[arg(short, long, default_value = "text")]
        format: ReportFormat,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Io {
    /// Input file; standard input if omitted.
    #[arg(short, long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

impl Io {
    fn reader(&self) -> Result<Box<dyn BufRead>> {
        open_input(self.input.as_deref())
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        open_output(self.output.as_deref())
    }

    fn input_name(&self) -> String {
        self.input.as_deref().map_or("stdin".into(), treebank_name)
    }
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open {}", p.display()))?,
        )),
        None => Box::new(io::stdin().lock()),
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn treebank_name(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn load_treebank(reader: impl BufRead, name: &str) -> Result<Treebank> {
    let treebank = read_conllu(reader).with_context(|| format!("cannot read {name}"))?;
    for skipped in &treebank.skipped {
        warn!(
            "{name}: skipping sentence at line {}: {}",
            skipped.start_line, skipped.error
        );
    }
    Ok(treebank)
}

fn summarize_counts(what: &str, counts: &RepairCounts) {
    if counts.total() == 0 {
        return;
    }
    let parts: Vec<String> = EventKind::ALL
        .iter()
        .filter(|&&k| counts.get(k) > 0)
        .map(|&k| format!("{} {}", counts.get(k), k.as_str()))
        .collect();
    info!("{what}: {}", parts.join(", "));
}

fn encode(io: &Io, encoding: Encoding, syntax: LabelSyntax) -> Result<()> {
    let name = io.input_name();
    let treebank = load_treebank(io.reader()?, &name)?;
    let mut counts = RepairCounts::default();
    let mut out = Vec::with_capacity(treebank.len());
    for (k, sentence) in treebank.sentences.iter().enumerate() {
        let tree = &sentence.tree;
        let (labels, log) = encoding
            .encode(tree)
            .with_context(|| format!("{name}: sentence {}", k + 1))?;
        for event in log.events() {
            debug!(
                "sentence {}: {} at word {}: {}",
                k + 1,
                event.kind.as_str(),
                event.word,
                event.detail
            );
        }
        counts += log.counts();
        out.push(LabeledSentence {
            forms: tree.forms().to_vec(),
            labels,
            deprels: tree.deprels().to_vec(),
        });
    }
    let mut writer = io.writer()?;
    write_labels(&mut writer, &out, syntax)?;
    writer.flush()?;
    info!(
        "encoded {} sentences, skipped {}",
        out.len(),
        treebank.skipped.len()
    );
    summarize_counts("encoder", &counts);
    Ok(())
}

fn decode(io: &Io, encoding: Encoding, allow_forest: bool) -> Result<()> {
    let name = io.input_name();
    let sentences =
        read_labels(io.reader()?, encoding).with_context(|| format!("cannot read {name}"))?;
    let options = RepairOptions {
        enforce_single_root: !allow_forest,
    };
    let mut counts = RepairCounts::default();
    let mut treebank = Treebank::default();
    for (k, sentence) in sentences.iter().enumerate() {
        let decoded = encoding
            .decode(&sentence.labels, options)
            .with_context(|| format!("{name}: sentence {}", k + 1))?;
        for event in decoded.log.events() {
            debug!(
                "sentence {}: {} at word {}: {}",
                k + 1,
                event.kind.as_str(),
                event.word,
                event.detail
            );
        }
        counts += decoded.log.counts();
        let tree = decoded
            .tree
            .with_forms(sentence.forms.clone())?
            .with_deprels(sentence.deprels.clone())?;
        treebank.sentences.push(Sentence::new(tree));
    }
    let mut writer = io.writer()?;
    write_conllu_to(&mut writer, &treebank)?;
    writer.flush()?;
    info!("decoded {} sentences", treebank.len());
    summarize_counts("decoder", &counts);
    Ok(())
}

fn roundtrip(io: &Io, encoding: Encoding, trees: Option<&Path>) -> Result<()> {
    let name = io.input_name();
    let treebank = load_treebank(io.reader()?, &name)?;
    let mut report = CoverageReport::new(name.clone(), encoding);
    let mut decoded_trees = Treebank::default();
    for (k, sentence) in treebank.sentences.iter().enumerate() {
        report.add_tree(&sentence.tree);
        if trees.is_some() {
            let (labels, _) = encoding
                .encode(&sentence.tree)
                .with_context(|| format!("{name}: sentence {}", k + 1))?;
            let decoded = encoding.decode(&labels, RepairOptions::single_root())?;
            let tree = decoded
                .tree
                .with_forms(sentence.tree.forms().to_vec())?
                .with_deprels(sentence.tree.deprels().to_vec())?;
            decoded_trees.sentences.push(Sentence::new(tree));
        }
    }
    report.skipped_sentences += treebank.skipped.len() as u64;

    if let Some(path) = trees {
        let mut writer = open_output(Some(path))?;
        write_conllu_to(&mut writer, &decoded_trees)?;
        writer.flush()?;
    }
    let mut writer = io.writer()?;
    writeln!(
        writer,
        "{}\t{}\tsentences {}\twords {}\tarc coverage {}%\ttree coverage {}%",
        name,
        encoding.name(),
        report.sentences,
        report.words,
        depbits::stats::format_percent(report.arc_coverage()),
        depbits::stats::format_percent(report.tree_coverage()),
    )?;
    writer.flush()?;
    summarize_counts("round trip", &report.repair_counts);
    Ok(())
}

fn stats(
    files: &[PathBuf],
    encodings: &[Encoding],
    format: ReportFormat,
    output: Option<&Path>,
) -> Result<()> {
    let encodings = if encodings.is_empty() {
        &[Encoding::FourBit, Encoding::SevenBit][..]
    } else {
        encodings
    };
    let inputs: Vec<Option<&Path>> = if files.is_empty() {
        vec![None]
    } else {
        files.iter().map(|p| Some(p.as_path())).collect()
    };

    let mut reports = Vec::new();
    for input in inputs {
        let name = input.map_or("stdin".into(), treebank_name);
        let treebank = load_treebank(open_input(input)?, &name)?;
        for &encoding in encodings {
            reports.push(depbits::measure(&treebank, &name, encoding));
        }
    }
    let mut writer = open_output(output)?;
    writer.write_all(report(&reports, format).as_bytes())?;
    writer.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Encode {
            io,
            encoding,
            syntax,
        } => encode(&io, encoding, syntax),
        Command::Decode {
            io,
            encoding,
            allow_forest,
        } => decode(&io, encoding, allow_forest),
        Command::Roundtrip {
            io,
            encoding,
            trees,
        } => roundtrip(&io, encoding, trees.as_deref()),
        Command::Stats {
            files,
            encoding,
            format,
            output,
        } => stats(&files, &encoding, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DEPBITS_LOG", "info"))
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
