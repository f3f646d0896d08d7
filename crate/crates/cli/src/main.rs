use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand};

use comhnn_cli::commands::{self, Splitting, WordOptions};
use comhnn_cli::files::{read_fsa, read_group};
use comhnn_cli::svg::render_svg;

/// Exact computations for HNN-extensions of free abelian groups.
#[derive(Parser)]
#[command(name = "comhnn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a group file: CAT(0), biautomatic, residually finite, non-Hopf.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Solve the word problem for a word in the generators and the stable letter.
    Word {
        file: PathBuf,
        word: String,
        /// Print the Britton normal form.
        #[arg(long)]
        form: bool,
        /// Print the translation length on the Bass-Serre tree.
        #[arg(long)]
        tree_length: bool,
        /// Print the squared translation length on the Euclidean factor.
        #[arg(long)]
        euclid_sq: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build and verify a certificate.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Find reflections and build the index-two amalgam containing the group.
    #[command(group(ArgGroup::new("splitting").args(["split", "nonsplit"])))]
    Amalgam {
        file: PathBuf,
        /// Search reflections with entries in [-B, B].
        #[arg(long, default_value_t = 1)]
        bound: u32,
        #[arg(long)]
        split: bool,
        #[arg(long)]
        nonsplit: bool,
        /// Check the embedding relator by relator.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Boundary points of an automatic structure given as an automaton file.
    Boundary {
        fsafile: PathBuf,
        /// List the simple boundary sequences.
        #[arg(long)]
        sequences: bool,
        #[arg(long)]
        json: bool,
    },
    /// Fellow traveller constant over accepted words up to a length.
    Fellow {
        fsafile: PathBuf,
        #[arg(long)]
        maxlen: usize,
        #[arg(long)]
        two_sided: bool,
        #[arg(long)]
        json: bool,
    },
    /// Draw the lattice, the fundamental domains of L' and L'' and the rotation angle.
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        range: u32,
    },
    /// Write example group and automaton files.
    Examples {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// A surjective, non-injective endomorphism.
    Nonhopf {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The lattice vector h and the index of <n e1, h>.
    Wise {
        #[arg(long)]
        n: u32,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Analyze { file, json } => commands::analyze_report(&read_group(&file)?, json),
        Command::Word {
            file,
            word,
            form,
            tree_length,
            euclid_sq,
            json,
        } => {
            let opts = WordOptions {
                form,
                tree_length,
                euclid_sq,
            };
            commands::word_report(&read_group(&file)?, &word, opts, json)
        }
        Command::Witness { kind } => match kind {
            WitnessKind::Nonhopf { file, json } => commands::nonhopf_report(&read_group(&file)?, json),
            WitnessKind::Wise { n, file, json } => commands::wise_report(&read_group(&file)?, n, json),
        },
        Command::Amalgam {
            file,
            bound,
            nonsplit,
            verify,
            json,
            ..
        } => {
            let splitting = if nonsplit { Splitting::Nonsplit } else { Splitting::Split };
            commands::amalgam_report(&read_group(&file)?, bound, splitting, verify, json)
        }
        Command::Boundary {
            fsafile,
            sequences,
            json,
        } => commands::boundary_report(&read_fsa(&fsafile)?, sequences, json),
        Command::Fellow {
            fsafile,
            maxlen,
            two_sided,
            json,
        } => commands::fellow_report(&read_fsa(&fsafile)?, maxlen, two_sided, json),
        Command::Plot { file, out, range } => {
            let svg = render_svg(&read_group(&file)?, range)?;
            std::fs::write(&out, svg).with_context(|| format!("cannot write {}", out.display()))?;
            Ok(format!("wrote {}\n", out.display()))
        }
        Command::Examples { out } => {
            let names = commands::write_examples(&out)?;
            Ok(names.iter().map(|n| format!("wrote {}\n", out.join(n).display())).collect())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
