use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use atmodel::adem::{self, E3Table};
use atmodel::coops::CohomologyClass;
use atmodel::io::{ComplexDocument, InputOrder, ModelDump};
use atmodel::report::{FuzzFailure, FuzzReport, Report};
use atmodel::{fixtures, reductions, ATModel, Error, Simplex, TauStrategy};

/// Homology, cup products, Steenrod squares and the Adem operation Ψ₂ of a
/// simplicial complex over GF(2).
#[derive(Parser, Debug)]
#[command(name = "atmodel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Complex file (JSON document or one maximal simplex per line; `-` for stdin)
    file: Option<PathBuf>,
    /// Use a bundled fixture instead of a file
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
    /// Filtration order
    #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
    order: OrderArg,
    /// Which generator a boundary-killing simplex eliminates
    #[arg(long, value_enum, default_value_t = TauArg::Largest)]
    tau: TauArg,
    /// Print the report as key-sorted JSON
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrderArg {
    Lex,
    Input,
    Maximal,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum TauArg {
    Largest,
    Smallest,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum E3Arg {
    Standard,
    Alternate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers, generators and representative cycles
    Homology(Input),
    /// Check the contraction identities and the rank oracle
    Verify {
        #[command(flatten)]
        input: Input,
        /// Verify N random complexes instead of an input file
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 8)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay a model dump written by `contraction --json`
        #[arg(long, value_name = "DUMP")]
        model: Option<PathBuf>,
    },
    /// Nonzero structure constants of the cohomology ring
    Ring(Input),
    /// Matrix, kernel and image of Sq^i: H^q -> H^{q+i}
    Sq {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        dim: usize,
    },
    /// The Adem operation Ψ₂ of a class in H²
    Psi2 {
        #[command(flatten)]
        input: Input,
        /// Sum of generator duals, e.g. "1,2,3;1,5,6" (empty for zero)
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, value_enum, default_value_t = E3Arg::Standard)]
        e3: E3Arg,
    },
    /// Dump f, φ and the generators
    Contraction(Input),
    /// Collapse thinning and the homology of the thinned complex
    Reduce(Input),
    /// List the bundled fixtures
    Fixtures,
}

enum Failure {
    /// Bad input: exit code 2.
    Input(String),
    /// Mathematical failure or violation: exit code 1.
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInSq2Kernel { .. }
            | Error::Verification(_)
            | Error::NotACocycle { .. }
            | Error::NotACycle { .. }
            | Error::NotABoundary { .. }
            | Error::LinkCondition { .. }
            | Error::Internal(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Loaded {
    name: Option<String>,
    model: ATModel,
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let doc = match (&input.fixture, &input.file) {
        (Some(name), _) => fixtures::document(name)?,
        (None, Some(path)) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
            };
            let mut doc = ComplexDocument::parse(&text)?;
            if doc.name.is_none() {
                doc.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            }
            doc
        }
        (None, None) => {
            return Err(Failure::Input(
                "give a complex file or --fixture NAME".into(),
            ))
        }
    };
    let order = match input.order {
        OrderArg::Lex => InputOrder::Lex,
        OrderArg::Input => InputOrder::Input,
        OrderArg::Maximal => InputOrder::Maximal,
    };
    let tau = match input.tau {
        TauArg::Largest => TauStrategy::Largest,
        TauArg::Smallest => TauStrategy::Smallest,
    };
    let k = doc.to_complex(order)?;
    Ok(Loaded {
        name: doc.name,
        model: ATModel::build(k, tau),
    })
}

fn parse_class(model: &ATModel, text: &str) -> Result<CohomologyClass, Failure> {
    let mut gens = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let labels = part
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Failure::Input(format!("bad vertex label {t:?} in --class")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        gens.push(Simplex::new(labels)?);
    }
    Ok(CohomologyClass::from_generators(model, 2, &gens)?)
}

fn emit(report: &Report, json: bool) {
    let mut out = std::io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = if json {
        writeln!(out, "{}", report.to_json())
    } else {
        write!(out, "{report}")
    };
}

fn fuzz(trials: usize, vertices: usize, seed: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let k = fixtures::random_complex(&mut rng, vertices, 6, vertices.saturating_sub(1).min(4));
        let model = ATModel::new(k.clone());
        let violations = model.verify_contraction();
        let oracle = k.betti_by_rank();
        let reason = if let Some(v) = violations.first() {
            Some(v.to_string())
        } else if oracle != model.betti_numbers() {
            Some(format!(
                "betti {:?} but rank oracle gives {oracle:?}",
                model.betti_numbers()
            ))
        } else {
            None
        };
        if let Some(reason) = reason {
            failures.push(FuzzFailure {
                trial,
                maximal_simplices: k
                    .maximal_simplices()
                    .iter()
                    .map(|s| s.vertices().to_vec())
                    .collect(),
                reason,
            });
        }
    }
    FuzzReport {
        seed,
        trials,
        vertices,
        failures,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Homology(input) => {
            let l = load(&input)?;
            emit(
                &Report::new(l.name, &l.model).with_cycles(&l.model),
                input.json,
            );
        }
        Command::Verify {
            input,
            random,
            vertices,
            seed,
            model,
        } => {
            let report = if let Some(trials) = random {
                let z = fuzz(trials, vertices, seed);
                let failed = !z.failures.is_empty();
                let report = Report {
                    fuzz: Some(z),
                    ..Report::default()
                };
                emit(&report, input.json);
                if failed {
                    return Err(Failure::Math("random complexes failed verification".into()));
                }
                return Ok(());
            } else if let Some(path) = model {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let dump = match serde_json::from_str::<Report>(&text) {
                    Ok(Report {
                        contraction: Some(d),
                        ..
                    }) => d,
                    _ => ModelDump::parse(&text)?,
                };
                let m = dump.to_model()?;
                Report::new(None, &m).with_verification(&m)
            } else {
                let l = load(&input)?;
                Report::new(l.name, &l.model).with_verification(&l.model)
            };
            emit(&report, input.json);
            let v = report.verification.as_ref().expect("verification section");
            if !v.passed {
                let what = v.violations.first().map_or(
                    "betti numbers differ from the rank oracle".to_string(),
                    |x| format!("{} fails", x.identity),
                );
                return Err(Failure::Math(what));
            }
        }
        Command::Ring(input) => {
            let l = load(&input)?;
            emit(
                &Report::new(l.name, &l.model).with_ring(&l.model),
                input.json,
            );
        }
        Command::Sq { input, i, dim } => {
            let l = load(&input)?;
            emit(
                &Report::new(l.name, &l.model).with_sq(&l.model, i, dim),
                input.json,
            );
        }
        Command::Psi2 { input, class, e3 } => {
            let l = load(&input)?;
            let alpha = parse_class(&l.model, &class)?;
            let table = match e3 {
                E3Arg::Standard => E3Table::Standard,
                E3Arg::Alternate => E3Table::Alternate,
            };
            let r = adem::psi2_with(&l.model, &alpha, table)?;
            emit(
                &Report::new(l.name, &l.model).with_psi2(&l.model, &r, table),
                input.json,
            );
        }
        Command::Contraction(input) => {
            let l = load(&input)?;
            emit(
                &Report::new(l.name, &l.model).with_contraction(&l.model),
                input.json,
            );
        }
        Command::Reduce(input) => {
            let l = load(&input)?;
            let k = l.model.complex();
            let (m, _) = reductions::collapse_thinning(k)?;
            emit(
                &Report::new(l.name, &l.model).with_reduction(k, &m),
                input.json,
            );
        }
        Command::Fixtures => {
            for name in fixtures::names() {
                println!("{name}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
