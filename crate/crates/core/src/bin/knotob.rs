use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use knotob::json::{big, big_vec};
use knotob::milnor::{self, LongitudeSystem, ScreenResult};
use knotob::obstruction::{self, FamilyTable, Triple};
use knotob::report::{self, KnotSpec, ReportError};
use knotob::seifert::SelectionPattern;

#[derive(Parser)]
#[command(name = "knotob", version, about = "Homology-ribbon obstructions from Seifert-form data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Block form with A = 0 and a Borromean derivative on every {δ, J} pattern.
    Example1,
    /// As example1 but the δδδ derivative is an unlink.
    Example1Ribbon,
    /// A = diag(1, -1, 1) with Borromean derivatives on every {J, ε} pattern.
    Example2,
    /// example1 at (2^e + 1, 2^2e + 1, 2^4e + 1).
    Family,
}

#[derive(clap::Args)]
struct SpecSource {
    /// Knot spec JSON file.
    #[arg(long, conflicts_with = "preset")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Twist parameters for a preset, e.g. 3,5,17.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Option<Vec<BigInt>>,
    /// Family exponent for the family preset.
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Full obstruction report for a knot spec.
    Analyze {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate and verify metabolisers.
    Metabolisers {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Triple linking number of a longitude system.
    Milnor {
        /// Longitude system JSON file.
        #[arg(long, visible_alias = "longitudes")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        triple: Vec<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// n_i, m_i and n_i/m_i for the 2^e + 1 family.
    Family {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Brute-force search of im(t - 1) ∩ im(j) against n/m.
    Oracle {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        p: Vec<BigInt>,
        /// Defaults to 4|n|.
        #[arg(long)]
        search_bound: Option<BigInt>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn input_err(msg: impl Into<String>) -> ReportError {
    ReportError::Input(msg.into())
}

fn read(path: &PathBuf) -> Result<String, ReportError> {
    fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), ReportError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn triple_of(p: &[BigInt]) -> Result<Triple, ReportError> {
    match p {
        [a, b, c] => Ok([a.clone(), b.clone(), c.clone()]),
        _ => Err(input_err(format!("expected three parameters, got {}", p.len()))),
    }
}

fn load_spec(src: &SpecSource) -> Result<KnotSpec, ReportError> {
    if let Some(path) = &src.input {
        return KnotSpec::from_json(&read(path)?);
    }
    let preset = src.preset.ok_or_else(|| input_err("give --input or --preset"))?;
    let p = || -> Result<Triple, ReportError> {
        match &src.p {
            Some(p) => triple_of(p),
            None => Ok(obstruction::triple(3, 5, 17)),
        }
    };
    match preset {
        Preset::Example1 => report::preset_example1(&p()?, &report::delta_j_patterns()),
        Preset::Example1Ribbon => {
            let ddd = SelectionPattern::parse("δδδ").expect("valid pattern");
            let seven: Vec<_> = report::delta_j_patterns().into_iter().filter(|s| *s != ddd).collect();
            report::preset_example1(&p()?, &seven)
        }
        Preset::Example2 => report::preset_example2(&p()?),
        Preset::Family => Ok(report::preset_family(src.e.unwrap_or(1))?.0),
    }
}

fn family_table_text(t: &FamilyTable) -> String {
    let mut out = format!(
        "e = {}, p = ({}, {}, {})\n\nrow  n_i  m_i  n_i/m_i  closed form  match\n",
        t.e, t.p[0], t.p[1], t.p[2]
    );
    for r in &t.rows {
        out.push_str(&format!(
            "{}  {}  {}  {}  {}  {}\n",
            r.row, r.n, r.m, r.ratio, r.closed_form, r.matches_closed_form
        ));
    }
    out.push_str(&format!("\nall |n_i/m_i| > 1: {}\n", t.admissible));
    for d in &t.discrepancies {
        out.push_str(&format!("discrepancy (row {}): {}\n", d.row, d.note));
    }
    out
}

#[derive(Serialize)]
struct MilnorOutput {
    triple: Vec<usize>,
    #[serde(with = "big")]
    mu: BigInt,
    linking_numbers: Vec<Vec<String>>,
    screen: ScreenResult,
}

#[derive(Serialize)]
struct OracleOutput {
    #[serde(with = "big_vec")]
    p: Vec<BigInt>,
    #[serde(with = "big")]
    n: BigInt,
    #[serde(with = "big")]
    m: BigInt,
    #[serde(with = "big")]
    search_bound: BigInt,
    #[serde(with = "big")]
    oracle: BigInt,
    #[serde(with = "big")]
    closed_form: BigInt,
    #[serde(with = "big")]
    d_supported_formula: BigInt,
    agree: bool,
}

fn run(cli: Cli) -> Result<(), ReportError> {
    match cli.command {
        Command::Analyze { source, output, format } => {
            let r = report::analyze(&load_spec(&source)?)?;
            let text = match format {
                Format::Json => {
                    let mut s = r.to_json();
                    s.push('\n');
                    s
                }
                Format::Table => report::render_table(&r),
            };
            emit(&text, &output)
        }
        Command::Metabolisers { source, output, format } => {
            let l = report::list_metabolisers(&load_spec(&source)?)?;
            let text = match format {
                Format::Json => to_json(&l),
                Format::Table => {
                    let mut s = format!("genus {}, eigenvalues {}\n", l.genus, l.eigenvalues.join(", "));
                    for (i, m) in l.metabolisers.iter().enumerate() {
                        let cols: Vec<String> = m
                            .basis
                            .iter()
                            .map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
                            .collect();
                        s.push_str(&format!(
                            "{i}  {}  {}  verified={}\n",
                            m.label.clone().unwrap_or_else(|| "-".into()),
                            cols.join(" "),
                            m.verified
                        ));
                    }
                    for (a, b) in &l.complementary_pairs {
                        s.push_str(&format!("pair {a} {b}\n"));
                    }
                    s
                }
            };
            emit(&text, &output)
        }
        Command::Milnor { input, triple, output, format } => {
            let ls: LongitudeSystem = serde_json::from_str(&read(&input)?)
                .map_err(|e| input_err(format!("longitudes: {e}")))?;
            ls.validate()?;
            let [i, j, k] = triple[..] else {
                return Err(input_err("--triple needs three indices"));
            };
            let mu = milnor::mu_triple(&ls, i, j, k)?;
            let text = match format {
                Format::Table => format!("{mu}\n"),
                Format::Json => {
                    let lk = milnor::linking_numbers(&ls)?;
                    to_json(&MilnorOutput {
                        triple: triple.clone(),
                        mu,
                        linking_numbers: lk.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
                        screen: milnor::zero_solvable_screen(&ls)?,
                    })
                }
            };
            emit(&text, &output)
        }
        Command::Family { e, output, format } => {
            if e == 0 {
                return Err(input_err("--e must be positive"));
            }
            let t = obstruction::family_table(e);
            let text = match format {
                Format::Json => to_json(&t),
                Format::Table => family_table_text(&t),
            };
            emit(&text, &output)
        }
        Command::Oracle { p, search_bound, output, format } => {
            let p = triple_of(&p)?;
            let data = obstruction::obstruction_data(&p)?;
            let bound = search_bound.unwrap_or_else(|| obstruction::default_search_bound(&p));
            let k = obstruction::intersection_oracle(&p, &bound)?;
            let d_part = obstruction::d_supported_part(&data.n, &p);
            let agree = k == data.modulus && d_part == data.m;
            let out = OracleOutput {
                p: p.to_vec(),
                n: data.n.clone(),
                m: data.m.clone(),
                search_bound: bound,
                oracle: k,
                closed_form: data.modulus.clone(),
                d_supported_formula: d_part,
                agree,
            };
            let text = match format {
                Format::Json => to_json(&out),
                Format::Table => format!(
                    "p = ({}, {}, {})\nn = {}\nm = {}\noracle = {}\n|n/m| = {}\nD-supported part of n = {}\nagree: {}\n",
                    p[0], p[1], p[2], out.n, out.m, out.oracle, out.closed_form, out.d_supported_formula, agree
                ),
            };
            emit(&text, &output)?;
            if !agree {
                return Err(ReportError::Invariant("oracle and closed form disagree".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("knotob: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
