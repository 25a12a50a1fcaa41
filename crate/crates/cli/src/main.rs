use std::path::PathBuf;
use std::process::ExitCode;

use carpet_jder_cli::{render, run_corpus, run_file, Action, Command, Format, Overrides};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "carpet-jder", version, about = "Jordan derivations of structural matrix rings R_n(K, J)")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Jordan identity and the Leibniz rule for a table
    Verify(Common),
    /// Compute JDer(R) and Der(R)
    Solve(Common),
    /// Split a Jordan derivation into its standard parts
    Decompose(Common),
    /// Check JDer = Der + Extremal and decompose every basis table
    TheoremCheck(Common),
    /// Build a table from family parameters and print it as a session file
    Build(Common),
    /// Compare Ann(R) with its closed form
    Annihilator(Common),
    /// Decompose random Jordan derivations drawn with a seed
    PropertyTest(Common),
    /// Run the command named in the file's [run] section
    Run(Common),
    /// Run every .cfg file in a directory and compare exit codes with `expect`
    Corpus {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Fmt>,
    },
}

#[derive(Args)]
struct Common {
    /// Session file
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
    #[arg(long)]
    max_unknowns: Option<usize>,
    #[arg(long)]
    max_equations: Option<usize>,
    /// Seed for property-test
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Json => Format::Json,
        }
    }
}

fn overrides(c: &Common) -> Overrides {
    Overrides {
        format: c.format.map(Format::from),
        max_unknowns: c.max_unknowns,
        max_equations: c.max_equations,
        seed: c.seed,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, action) = match &cli.command {
        Cmd::Verify(c) => (c, Some(Action::Session(Command::Verify))),
        Cmd::Solve(c) => (c, Some(Action::Session(Command::Solve))),
        Cmd::Decompose(c) => (c, Some(Action::Session(Command::Decompose))),
        Cmd::TheoremCheck(c) => (c, Some(Action::Session(Command::TheoremCheck))),
        Cmd::Build(c) => (c, Some(Action::Session(Command::Build))),
        Cmd::Annihilator(c) => (c, Some(Action::Session(Command::Annihilator))),
        Cmd::PropertyTest(c) => (c, Some(Action::PropertyTest)),
        Cmd::Run(c) => (c, None),
        Cmd::Corpus { dir, format } => {
            let o = Overrides { format: format.map(Format::from), ..Overrides::default() };
            let out = run_corpus(dir, &o);
            print!("{}", render(&out, o.format.unwrap_or_default()));
            return ExitCode::from(out.code as u8);
        }
    };
    let (out, format) = run_file(&common.input, action, &overrides(common));
    let rendered = render(&out, format);
    if out.code == 2 && format == Format::Text {
        eprint!("{rendered}");
    } else {
        print!("{rendered}");
    }
    ExitCode::from(out.code as u8)
}
