//! Command-line front-end: build, encode, corrupt, decode, verify, bounds,
//! and count, wired for scripted reproduction runs. Plain-text output only;
//! exit codes are the machine interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use burst_codes::bounds;
use burst_codes::codes::{ArrayWord, BurstCode, CodeSpec, DesignChoice, Variant};
use burst_codes::indexing::to_value;
use burst_codes::models::{count_l1, count_linf, count_straight, sample_error};
use burst_codes::verify::run_suite;
use burst_codes::Caps;

#[derive(Parser)]
#[command(
    name = "burst-codes",
    version,
    about = "Multidimensional 2-weight-limited burst-correcting codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for all randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the enumeration cap on array cells.
    #[arg(long, global = true)]
    cap_cells: Option<u64>,
    /// Override the cap on syndrome-table patterns.
    #[arg(long, global = true)]
    cap_patterns: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and print its summary; optionally write a spec file.
    Build(BuildArgs),
    /// Encode a message (random under --seed unless -i is given).
    Encode {
        #[arg(long)]
        spec: PathBuf,
        /// Message file: a string of '0'/'1' characters of length k.
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode a word file and print the outcome.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        input: PathBuf,
        /// Write the corrected word here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Flip a uniformly sampled in-model error pattern in a word file.
    Corrupt {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the exhaustive verification suite for a spec.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Audit that the code's packing design matches this exported file.
        #[arg(long)]
        expect_design: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Print the excess-redundancy bound table at (b, D).
    Bounds {
        #[arg(short)]
        b: i64,
        #[arg(short = 'D')]
        dim: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Print the three pattern counts at (n, b, D).
    Count {
        #[arg(short)]
        n: i64,
        #[arg(short)]
        b: i64,
        #[arg(short = 'D')]
        dim: usize,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// One of linf, l1, straight.
    #[arg(long)]
    model: String,
    /// linf: basic | extended | extended-pow2; l1: basic | b3; straight: basic.
    #[arg(long, default_value = "basic")]
    variant: String,
    #[arg(short)]
    n: i64,
    #[arg(short)]
    b: i64,
    #[arg(short = 'D')]
    dim: usize,
    /// Packing design for the straight model: trivial | steiner.
    #[arg(long)]
    design: Option<String>,
    /// Write the spec file here.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Export the packing design as text (straight model only).
    #[arg(long)]
    design_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Some(c) = cli.cap_cells {
        caps.max_cells = c;
    }
    if let Some(c) = cli.cap_patterns {
        caps.max_patterns = c;
    }
    match run(cli.cmd, cli.seed, &caps) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Cmd, seed: u64, caps: &Caps) -> Result<ExitCode> {
    match cmd {
        Cmd::Build(args) => cmd_build(args, caps),
        Cmd::Encode {
            spec,
            input,
            output,
        } => cmd_encode(&spec, input.as_deref(), &output, seed, caps),
        Cmd::Decode {
            spec,
            input,
            output,
        } => cmd_decode(&spec, &input, output.as_deref(), caps),
        Cmd::Corrupt {
            spec,
            input,
            output,
        } => cmd_corrupt(&spec, &input, &output, seed, caps),
        Cmd::Verify {
            spec,
            samples,
            expect_design,
            csv,
        } => cmd_verify(&spec, samples, seed, expect_design.as_deref(), csv, caps),
        Cmd::Bounds { b, dim, csv } => {
            let report = bounds::summary_table(b, dim);
            print!(
                "{}",
                if csv {
                    report.render_csv()
                } else {
                    report.render_text()
                }
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Count { n, b, dim } => {
            println!("linf {}", count_linf(n, b, dim)?);
            println!("l1 {}", count_l1(n, b, dim, caps.max_cells)?);
            println!("straight {}", count_straight(n, b, dim)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_code(spec_path: &Path, caps: &Caps) -> Result<(CodeSpec, BurstCode)> {
    let text = fs::read_to_string(spec_path)
        .with_context(|| format!("reading spec {}", spec_path.display()))?;
    let spec = CodeSpec::parse_kv(&text)?;
    let code = BurstCode::build(&spec, caps)?;
    Ok((spec, code))
}

fn load_word(path: &Path) -> Result<ArrayWord> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading word {}", path.display()))?;
    Ok(ArrayWord::from_text(&text)?)
}

fn cmd_build(args: BuildArgs, caps: &Caps) -> Result<ExitCode> {
    let variant = Variant::parse(&args.model, &args.variant)?;
    let design = match (&args.design, variant) {
        (Some(d), Variant::Straight) => Some(DesignChoice::parse(d)?),
        (None, Variant::Straight) => Some(DesignChoice::Trivial),
        (Some(_), _) => bail!("--design only applies to the straight model"),
        (None, _) => None,
    };
    let spec = CodeSpec {
        variant,
        n: args.n,
        b: args.b,
        d: args.dim,
        design,
    };
    let code = BurstCode::build(&spec, caps)?;
    let (bound, source) = bounds::matching_upper_bound(&spec);
    let prime = code
        .lee_prime()
        .map(|p| format!(" p={p}"))
        .unwrap_or_default();
    println!(
        "model={} variant={} n={} b={} D={}{} side={} N={} rows={} rank={} k={} xi={} bound={:.4} ({})",
        spec.model_kind().name(),
        variant.name(),
        spec.n,
        spec.b,
        spec.d,
        prime,
        code.side(),
        code.ncells(),
        code.rows(),
        code.rank(),
        code.dimension(),
        code.xi(),
        bound,
        source,
    );
    if let Some(path) = &args.output {
        fs::write(path, spec.to_kv())
            .with_context(|| format!("writing spec {}", path.display()))?;
    }
    if let Some(path) = &args.design_out {
        let design = code
            .design()
            .context("--design-out applies to the straight model only")?;
        fs::write(path, design.to_text())
            .with_context(|| format!("writing design {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode(
    spec_path: &Path,
    input: Option<&Path>,
    output: &Path,
    seed: u64,
    caps: &Caps,
) -> Result<ExitCode> {
    let (_, code) = load_code(spec_path, caps)?;
    let k = code.dimension();
    let word = match input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading message {}", path.display()))?;
            let message: Vec<bool> = text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => bail!("message must be 0/1 characters, found '{other}'"),
                })
                .collect::<Result<_>>()?;
            code.encode(&message)?
        }
        None => code.random_codeword_seeded(seed),
    };
    fs::write(output, word.to_text())
        .with_context(|| format!("writing word {}", output.display()))?;
    println!("encoded k={} into N={} cells", k, code.ncells());
    Ok(ExitCode::SUCCESS)
}

fn cmd_corrupt(
    spec_path: &Path,
    input: &Path,
    output: &Path,
    seed: u64,
    caps: &Caps,
) -> Result<ExitCode> {
    let (spec, code) = load_code(spec_path, caps)?;
    let mut word = load_word(input)?;
    if word.len() != code.ncells() {
        bail!(
            "word has {} cells, code expects {}",
            word.len(),
            code.ncells()
        );
    }
    let model = spec.model()?;
    let pattern = sample_error(code.side(), spec.d, &model, caps.max_cells, seed)?;
    for pos in pattern.positions() {
        let cell = to_value(pos, code.side())? as usize;
        word.flip(cell);
    }
    fs::write(output, word.to_text())
        .with_context(|| format!("writing word {}", output.display()))?;
    println!("injected {pattern}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(
    spec_path: &Path,
    input: &Path,
    output: Option<&Path>,
    caps: &Caps,
) -> Result<ExitCode> {
    let (_, code) = load_code(spec_path, caps)?;
    let word = load_word(input)?;
    let outcome = code.decode(&word)?;
    println!("{outcome}");
    let corrected = code.correct(&word, &outcome);
    match output {
        Some(path) => fs::write(path, corrected.to_text())
            .with_context(|| format!("writing word {}", path.display()))?,
        None => print!("{}", corrected.to_text()),
    }
    Ok(
        if outcome == burst_codes::codes::DecodeOutcome::Uncorrectable {
            ExitCode::FAILURE
        } else {
            ExitCode::SUCCESS
        },
    )
}

fn cmd_verify(
    spec_path: &Path,
    samples: usize,
    seed: u64,
    expect_design: Option<&Path>,
    csv: bool,
    caps: &Caps,
) -> Result<ExitCode> {
    let (_, code) = load_code(spec_path, caps)?;
    if let Some(path) = expect_design {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading design {}", path.display()))?;
        let expected = burst_codes::designs::PackingDesign::from_text(&text)?;
        let actual = code
            .design()
            .context("--expect-design applies to the straight model only")?;
        if actual.v() != expected.v() || actual.blocks() != expected.blocks() {
            bail!(
                "design audit failed: rebuilt design differs from {}",
                path.display()
            );
        }
        println!("design audit: {} matches", path.display());
    }
    let report = run_suite(&code, samples, seed, caps)?;
    print!(
        "{}",
        if csv {
            report.render_csv()
        } else {
            report.render_text()
        }
    );
    Ok(if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
