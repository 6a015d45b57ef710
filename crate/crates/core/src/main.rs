use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use damerau_codes::block_td_codes::{BlockTDSpec, TensorErrorSpec};
use damerau_codes::burst_codes::{
    parse_triangular_levels, GeneralBurstSpec, OddBurstSpec, Scale, Triangular,
};
use damerau_codes::single_edit_codes::SingleEditCodeSpec;
use damerau_codes::td_codes::{one_td_params, EllTDSpec, OneTDSpec};
use damerau_codes::verify::suites::{render_checks, run_suite, SUITES};
use damerau_codes::verify::{codes_of_shape, redundancy_sweep, render, CodeSpec, Format};
use damerau_codes::{ball, BitSeq, Error, ErrorBallKind};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DECODE: u8 = 3;

/// Codes for deletions and adjacent transpositions.
#[derive(Parser, Debug)]
#[command(name = "damerau", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the error ball of each word, one member per line in lexicographic order.
    Ball {
        /// Ball tag: d, t, t-or-d, tl, tl-d (with --ell); d-exact, d-atmost, bt, bt-and-d (with --b).
        #[arg(long)]
        kind: String,
        #[arg(long)]
        ell: Option<usize>,
        /// Burst or block length.
        #[arg(long = "b")]
        b: Option<usize>,
        #[command(flatten)]
        input: Words,
    },
    /// Enumerate, test membership in, or decode one code.
    Codes {
        #[command(subcommand)]
        family: Family,
    },
    /// Run a verification suite: single-edit, td, burst, block-td or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        /// Keep wall-clock times in the output.
        #[arg(long)]
        timing: bool,
    },
    /// Reports on measured redundancy.
    Report {
        #[command(subcommand)]
        report: Report,
    },
}

#[derive(Subcommand, Debug)]
enum Report {
    /// Largest code of each family next to its redundancy bound.
    Redundancy {
        /// Restrict to one family: t-or-d, td, one-td, burst or block-td.
        #[arg(long)]
        family: Option<String>,
        #[arg(short = 'n', long = "n", default_value_t = 10)]
        n: usize,
        /// Burst and block length of the burst families.
        #[arg(long = "b", default_value_t = 3)]
        b: usize,
        /// Print every code of the shape, not only the largest.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutFormat {
    Text,
    JsonLines,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::JsonLines => Format::JsonLines,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Single transposition or single deletion codes.
    #[command(name = "t-or-d")]
    TorD {
        #[command(subcommand)]
        action: Action<TorDArgs>,
    },
    /// Codes for ell transpositions and one deletion.
    Td {
        #[command(subcommand)]
        action: Action<TdArgs>,
    },
    /// Codes for one transposition and one deletion.
    #[command(name = "one-td")]
    OneTd {
        #[command(subcommand)]
        action: OneTdAction,
    },
    /// Codes for one burst of deletions.
    Burst {
        #[command(subcommand)]
        action: Action<BurstArgs>,
    },
    /// Codes for one adjacent block transposition and one block deletion.
    #[command(name = "block-td")]
    BlockTd {
        #[command(subcommand)]
        action: Action<BlockTdArgs>,
    },
}

#[derive(Subcommand, Debug)]
enum Action<A: Args> {
    /// Print the codebook, one word per line in lexicographic order.
    Enumerate {
        #[command(flatten)]
        code: A,
        /// Try every syndrome and print the largest code.
        #[arg(long)]
        sweep: bool,
    },
    /// Print "<word> yes" or "<word> no" for each word.
    Contains {
        #[command(flatten)]
        code: A,
        #[command(flatten)]
        input: Words,
    },
    /// Print the decoded codeword for each received word.
    Decode {
        #[command(flatten)]
        code: A,
        #[command(flatten)]
        input: Words,
    },
}

#[derive(Subcommand, Debug)]
enum OneTdAction {
    #[command(flatten)]
    Code(Action<OneTdArgs>),
    /// Print the offset L and the prime p = n + 2L + 1.
    Params {
        #[arg(short = 'n', long = "n")]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct Words {
    /// Words as 0/1 strings.
    words: Vec<String>,
    /// Read further words from a file, one per line.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TorDArgs {
    #[arg(short = 'n', long = "n")]
    n: usize,
    #[arg(short = 'a', long = "a", default_value_t = 0)]
    a: u64,
    /// Also fix the residue of the integral's substitution syndrome.
    #[arg(long)]
    h: Option<u64>,
}

#[derive(Args, Debug)]
struct TdArgs {
    #[arg(short = 'n', long = "n")]
    n: usize,
    #[arg(short = 'a', long = "a", default_value_t = 0)]
    a: u64,
    /// Weight parity.
    #[arg(short = 'b', default_value_t = 0)]
    parity: u8,
    #[arg(long, default_value_t = 1)]
    ell: usize,
}

#[derive(Args, Debug)]
struct OneTdArgs {
    #[arg(short = 'n', long = "n")]
    n: usize,
    #[arg(short = 'a', long = "a", default_value_t = 0)]
    a: u64,
    #[arg(long, default_value_t = 0)]
    a2: u64,
}

type LevelSyndromes = (u64, Triangular<u64>, Triangular<u8>);

#[derive(Args, Debug, Clone)]
struct ScaleArgs {
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// Burst or block length.
    #[arg(long = "b")]
    b: usize,
    /// Small windows and moduli, defaulting to W = b² with the family's SVT modulus.
    #[arg(long)]
    scaled: bool,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    svt_mod: Option<u64>,
    /// VT residue per level, comma separated.
    #[arg(short = 'a', long = "a", value_delimiter = ',')]
    a: Vec<u64>,
    /// Shifted VT residues, one triangular array per level.
    #[arg(long)]
    c_file: Option<PathBuf>,
    /// Interleave parities, one triangular array per level.
    #[arg(long)]
    d_file: Option<PathBuf>,
}

impl ScaleArgs {
    fn scale(&self) -> Scale {
        let mut s = if self.scaled {
            Scale::SCALED
        } else {
            Scale::FULL
        };
        if let Some(w) = self.window {
            s = s.with_window(w);
        }
        if let Some(m) = self.svt_mod {
            s = s.with_svt_modulus(m);
        }
        s
    }

    /// Per-level (a, C, D) overrides, defaulting to zero.
    fn levels(&self, sizes: &[usize]) -> Result<Vec<LevelSyndromes>, Error> {
        let c: Vec<Triangular<u64>> = read_levels(self.c_file.as_ref())?;
        let d: Vec<Triangular<u8>> = read_levels(self.d_file.as_ref())?;
        for (what, count) in [
            ("-a", self.a.len()),
            ("--c-file", c.len()),
            ("--d-file", d.len()),
        ] {
            if count != 0 && count != sizes.len() {
                return Err(Error::InvalidParameter(format!(
                    "{what} gives {count} levels, the code has {}",
                    sizes.len()
                )));
            }
        }
        Ok(sizes
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                (
                    self.a.get(j).copied().unwrap_or(0),
                    c.get(j).cloned().unwrap_or_else(|| Triangular::zeros(b)),
                    d.get(j).cloned().unwrap_or_else(|| Triangular::zeros(b)),
                )
            })
            .collect())
    }
}

fn read_levels<T: Copy + Default + std::str::FromStr>(
    path: Option<&PathBuf>,
) -> Result<Vec<Triangular<T>>, Error> {
    match path {
        None => Ok(Vec::new()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", p.display()))
            })?;
            parse_triangular_levels(&text)
        }
    }
}

#[derive(Args, Debug)]
struct BurstArgs {
    #[command(flatten)]
    scale: ScaleArgs,
    /// Odd burst lengths only (a single level).
    #[arg(long)]
    odd: bool,
}

#[derive(Args, Debug)]
struct BlockTdArgs {
    #[command(flatten)]
    scale: ScaleArgs,
    /// Block length of the tensor code.
    #[arg(long)]
    tp_m: Option<usize>,
    /// Nonzero blocks corrected by the tensor code.
    #[arg(long)]
    tp_t1: Option<usize>,
    /// Weight corrected within each block.
    #[arg(long)]
    tp_t2: Option<usize>,
    /// Tensor syndrome of the code.
    #[arg(long, default_value_t = 0)]
    coset: u64,
}

trait CodeArgs {
    fn spec(&self) -> Result<CodeSpec, Error>;
}

impl CodeArgs for TorDArgs {
    fn spec(&self) -> Result<CodeSpec, Error> {
        Ok(CodeSpec::TorD(match self.h {
            Some(h) => SingleEditCodeSpec::with_integral_residue(self.n, self.a, h)?,
            None => SingleEditCodeSpec::new(self.n, self.a)?,
        }))
    }
}

impl CodeArgs for TdArgs {
    fn spec(&self) -> Result<CodeSpec, Error> {
        Ok(CodeSpec::EllTD(EllTDSpec::new(
            self.n,
            self.a,
            self.parity,
            self.ell,
        )?))
    }
}

impl CodeArgs for OneTdArgs {
    fn spec(&self) -> Result<CodeSpec, Error> {
        Ok(CodeSpec::OneTD(OneTDSpec::new(self.n, self.a, self.a2)?))
    }
}

impl CodeArgs for BurstArgs {
    fn spec(&self) -> Result<CodeSpec, Error> {
        let s = &self.scale;
        if self.odd {
            let base = OddBurstSpec::new(s.n, s.b, s.scale())?;
            let (a, c, d) = s.levels(&[base.b])?.remove(0);
            return Ok(CodeSpec::OddBurst(base.with_syndromes(a, c, d)?));
        }
        let mut spec = GeneralBurstSpec::new(s.n, s.b, s.scale())?;
        let sizes: Vec<usize> = spec.levels.iter().map(|l| l.b).collect();
        let levels = s.levels(&sizes)?;
        spec.levels = spec
            .levels
            .into_iter()
            .zip(levels)
            .map(|(l, (a, c, d))| l.with_syndromes(a, c, d))
            .collect::<Result<_, _>>()?;
        Ok(CodeSpec::GeneralBurst(spec))
    }
}

impl CodeArgs for BlockTdArgs {
    fn spec(&self) -> Result<CodeSpec, Error> {
        let s = &self.scale;
        let scale = s.scale();
        let tensor = match (self.tp_m, self.tp_t1, self.tp_t2) {
            (None, None, None) => BlockTDSpec::default_tensor(s.n, s.b, &scale)?,
            (m, t1, t2) => {
                let d = BlockTDSpec::default_tensor(s.n, s.b, &scale)?;
                TensorErrorSpec::with_len(
                    s.n,
                    m.unwrap_or(d.m),
                    t1.unwrap_or(d.t1),
                    t2.unwrap_or(d.t2),
                )?
            }
        };
        let base = BlockTDSpec::with_tensor(s.n, s.b, scale, tensor)?;
        let sizes: Vec<usize> = base.levels.iter().map(|l| l.b).collect();
        let levels = base
            .levels
            .iter()
            .cloned()
            .zip(s.levels(&sizes)?)
            .map(|(mut l, (a, c, d))| {
                l.a = a;
                l.c = c;
                l.d = d;
                l.validate().map(|_| l)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CodeSpec::BlockTD(base.with_levels(levels, self.coset)?))
    }
}

/// Failure of a command, mapped to the exit status.
enum Failure {
    Usage(String),
    Decode,
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_words(input: &Words) -> Result<Vec<BitSeq>, Failure> {
    let mut raw: Vec<String> = input.words.clone();
    if let Some(path) = &input.input {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        raw.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    if raw.is_empty() {
        return Err(Failure::Usage("no input words".into()));
    }
    raw.iter()
        .map(|w| {
            w.parse::<BitSeq>()
                .map_err(|e| Failure::Usage(format!("{w:?}: {e}")))
        })
        .collect()
}

fn write_lines<'a>(
    out: &mut impl Write,
    words: impl IntoIterator<Item = &'a BitSeq>,
) -> io::Result<()> {
    for w in words {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

fn run_ball(
    kind: &str,
    ell: Option<usize>,
    b: Option<usize>,
    input: &Words,
    out: &mut impl Write,
) -> Outcome {
    let kind = ErrorBallKind::from_tag(kind, ell, b)?;
    for x in read_words(input)? {
        write_lines(out, &ball(&x, kind)?)?;
    }
    Ok(())
}

fn run_action<A: Args + CodeArgs>(action: &Action<A>, out: &mut impl Write) -> Outcome {
    match action {
        Action::Enumerate { code, sweep } => {
            let spec = code.spec()?;
            if *sweep {
                let groups = codes_of_shape(&spec, damerau_codes::codebook::SWEEP_CAP)?;
                let best = groups
                    .iter()
                    .max_by(|a, b| a.1 .1.len().cmp(&b.1 .1.len()).then_with(|| b.0.cmp(a.0)))
                    .ok_or_else(|| Failure::Usage("shape has no codewords".into()))?;
                eprintln!("{}", best.0);
                write_lines(out, &best.1 .1)?;
            } else {
                write_lines(out, spec.enumerate()?.words())?;
            }
            Ok(())
        }
        Action::Contains { code, input } => {
            let spec = code.spec()?;
            for x in read_words(input)? {
                writeln!(out, "{x} {}", if spec.contains(&x)? { "yes" } else { "no" })?;
            }
            Ok(())
        }
        Action::Decode { code, input } => {
            let spec = code.spec()?;
            let mut failed = false;
            for y in read_words(input)? {
                match spec.decode(&y) {
                    Ok(x) => writeln!(out, "{x}")?,
                    Err(e) => {
                        eprintln!("{y}: {e}");
                        failed = true;
                    }
                }
            }
            if failed {
                Err(Failure::Decode)
            } else {
                Ok(())
            }
        }
    }
}

fn run_codes(family: &Family, out: &mut impl Write) -> Outcome {
    match family {
        Family::TorD { action } => run_action(action, out),
        Family::Td { action } => run_action(action, out),
        Family::OneTd { action } => match action {
            OneTdAction::Code(a) => run_action(a, out),
            OneTdAction::Params { n } => {
                let p = one_td_params(*n)?;
                writeln!(out, "L: {}\np: {}", p.offset, p.prime)?;
                Ok(())
            }
        },
        Family::Burst { action } => run_action(action, out),
        Family::BlockTd { action } => run_action(action, out),
    }
}

fn run_verify(
    suite: &str,
    max_n: usize,
    format: OutFormat,
    timing: bool,
    out: &mut impl Write,
) -> Outcome {
    if !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!(
            "unknown suite {suite}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let mut checks = run_suite(suite, max_n)?;
    if !timing {
        for c in &mut checks {
            c.report.wall_time_ms = None;
        }
    }
    out.write_all(render_checks(&checks, format.into()).as_bytes())?;
    let bad = checks.iter().filter(|c| !c.ok()).count();
    if bad > 0 {
        eprintln!("{bad} of {} checks did not end as expected", checks.len());
        return Err(Failure::Verify);
    }
    Ok(())
}

fn report_shapes(family: Option<&str>, n: usize, b: usize) -> Result<Vec<CodeSpec>, Failure> {
    let scaled = Scale::SCALED.with_window(b * b);
    let all = ["t-or-d", "td", "one-td", "burst", "block-td"];
    let chosen: Vec<&str> = match family {
        Some(f) if all.contains(&f) => vec![f],
        Some(f) => {
            return Err(Failure::Usage(format!(
                "unknown family {f}; expected one of {}",
                all.join(", ")
            )))
        }
        None => all.to_vec(),
    };
    let mut shapes = Vec::new();
    for f in chosen {
        shapes.push(match f {
            "t-or-d" => CodeSpec::TorD(SingleEditCodeSpec::new(n, 0)?),
            "td" => CodeSpec::EllTD(EllTDSpec::new(n, 0, 0, 1)?),
            "one-td" => CodeSpec::OneTD(OneTDSpec::new(n - n % 2, 0, 0)?),
            "burst" => CodeSpec::GeneralBurst(GeneralBurstSpec::new(
                n,
                b,
                scaled.with_svt_modulus(2 * b as u64 + 1),
            )?),
            _ => CodeSpec::BlockTD(BlockTDSpec::new(
                n,
                b,
                scaled.with_svt_modulus(2 * b as u64 + 2),
            )?),
        });
    }
    Ok(shapes)
}

fn run_report(report: &Report, out: &mut impl Write) -> Outcome {
    let Report::Redundancy {
        family,
        n,
        b,
        all,
        format,
        timing,
    } = report;
    let mut reports = Vec::new();
    for shape in report_shapes(family.as_deref(), *n, *b)? {
        let mut sweep = redundancy_sweep(&shape)?;
        if !all {
            sweep.truncate(1);
        }
        reports.extend(sweep);
    }
    if !timing {
        for r in &mut reports {
            r.wall_time_ms = None;
        }
    }
    out.write_all(render(&reports, (*format).into()).as_bytes())?;
    Ok(())
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Ball {
            kind,
            ell,
            b,
            input,
        } => run_ball(kind, *ell, *b, input, out),
        Command::Codes { family } => run_codes(family, out),
        Command::Verify {
            suite,
            max_n,
            format,
            timing,
        } => run_verify(suite, *max_n, *format, *timing, out),
        Command::Report { report } => run_report(report, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Decode) => ExitCode::from(EXIT_DECODE),
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
    }
}
