use charp::filtration::FiltrationStrategy;
use charp::poly::MonomialOrder;
use charp::Error;
use charp_cli::commands::{self, CommandOutput};
use charp_cli::report::EXIT_INPUT_ERROR;
use charp_cli::suite::{SuiteOptions, DEFAULT_EBUDGET, DEFAULT_QMAX, DEFAULT_SEED};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> MonomialOrder {
        match o {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grevlex => MonomialOrder::Grevlex,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Adic,
    Closure,
}

impl From<StrategyArg> for FiltrationStrategy {
    fn from(s: StrategyArg) -> FiltrationStrategy {
        match s {
            StrategyArg::Adic => FiltrationStrategy::Adic,
            StrategyArg::Closure => FiltrationStrategy::Closure,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "charp",
    version,
    about = "Exact prime-characteristic singularity checks and filtration invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    emit: Emit,
    /// Monomial order override for the input document.
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,
    /// Jet precision override for the input document.
    #[arg(long, global = true)]
    jet: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Binomial coefficient modulo p via base-p digits.
    Binom {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// F-purity of a hypersurface by reduction modulo the p-th power frame.
    Fpure {
        /// Input document path, or - for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        /// Binding that holds the hypersurface.
        #[arg(long, default_value = "f")]
        name: String,
    },
    /// Splitting witness for strong F-regularity at one Frobenius level.
    Fregular {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value = "f")]
        name: String,
        /// Multiplier polynomial (literal or binding name).
        #[arg(long)]
        c: String,
        /// Frobenius level e, so q = p^e.
        #[arg(long)]
        e: u32,
        /// Work budget for the incremental reduction.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Classify a double point after Weierstrass normalization.
    Normalize {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value = "f")]
        name: String,
        /// Largest Frobenius level tried for split certificates.
        #[arg(long, default_value_t = DEFAULT_EBUDGET)]
        ebudget: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Integral closure of a monomial ideal power via its Newton polyhedron.
    Closure {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value = "I")]
        name: String,
        /// Which power I^n to close.
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
    /// Reduction number and a-invariant check for a filtration.
    Redno {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value = "I")]
        name: String,
        /// Reduction ideal binding; defaults to the filtration ideal.
        #[arg(long)]
        j: Option<String>,
        #[arg(long, value_enum, default_value = "closure")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
    /// Hilbert data of a filtration or a hypersurface's associated graded ring.
    Hilbert {
        #[arg(long, default_value = "-")]
        input: String,
        /// Binding to analyze; a polynomial gives the hypersurface series,
        /// an ideal gives the filtration table.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "closure")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
    /// Bounded tight-closure certificate for an element against an ideal.
    Tc {
        #[arg(long, default_value = "-")]
        input: String,
        /// Candidate element (literal or binding name).
        #[arg(long)]
        z: String,
        /// Ideal binding tested against.
        #[arg(long, default_value = "I")]
        ideal: String,
        /// Multiplier; defaults to the candidate element.
        #[arg(long)]
        c: Option<String>,
        /// Assert that the multiplier is a test element, making failed
        /// levels decisive.
        #[arg(long)]
        test_element: bool,
        /// Largest Frobenius power sampled.
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u64,
        /// Binding whose generators cut the quotient ring; defaults to the
        /// binding named f when present, else the ambient ring.
        #[arg(long = "mod")]
        modulus: Option<String>,
    },
    /// Intersection identity for closure powers against bracket powers.
    Vv {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value = "I")]
        name: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
    },
    /// Run the reproduction suite and report every check.
    PaperVerify {
        /// Comma-separated subset of check ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u64,
        #[arg(long, default_value_t = DEFAULT_EBUDGET)]
        ebudget: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run independent checks on up to N threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<String>,
    },
    /// Re-derive every certificate embedded in a JSON report.
    Replay {
        /// Report path, or - for stdin.
        #[arg(long, default_value = "-")]
        report: String,
    },
}

fn run(cli: &Cli) -> charp::Result<CommandOutput> {
    let order = cli.order.map(MonomialOrder::from);
    let jet = cli.jet;
    match &cli.command {
        Command::Binom { p, m, n } => commands::binom(*p, *m, *n),
        Command::Fpure { input, name } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::fpure(&doc, name)
        }
        Command::Fregular { input, name, c, e, budget } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::fregular(&doc, name, c, *e, *budget)
        }
        Command::Normalize { input, name, ebudget, seed } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::normalize(&doc, name, *ebudget, *seed)
        }
        Command::Closure { input, name, power } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::closure(&doc, name, *power)
        }
        Command::Redno { input, name, j, strategy, horizon } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::redno(&doc, name, j.as_deref(), (*strategy).into(), *horizon)
        }
        Command::Hilbert { input, name, strategy, horizon } => {
            let doc = commands::load_doc(input, order, jet)?;
            let name = match name {
                Some(n) => n.clone(),
                None => {
                    let names = doc.names();
                    if names.contains(&"f") {
                        "f".to_string()
                    } else if names.contains(&"I") {
                        "I".to_string()
                    } else {
                        return Err(Error::input(format!(
                            "no binding named f or I; pass --name (available: {})",
                            names.join(", ")
                        )));
                    }
                }
            };
            commands::hilbert(&doc, &name, (*strategy).into(), *horizon)
        }
        Command::Tc { input, z, ideal, c, test_element, qmax, modulus } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::tc(&doc, z, ideal, c.as_deref(), *test_element, *qmax, modulus.as_deref())
        }
        Command::Vv { input, name, k, l } => {
            let doc = commands::load_doc(input, order, jet)?;
            commands::vv(&doc, name, *k, *l)
        }
        Command::PaperVerify { only, qmax, ebudget, seed, jobs, report } => {
            let opts = SuiteOptions {
                only: only.clone(),
                qmax: *qmax,
                ebudget: *ebudget,
                seed: *seed,
                jobs: *jobs,
            };
            commands::paper_verify(&opts, report.as_deref())
        }
        Command::Replay { report } => commands::replay(report),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendering but reserve exit code 2 for inconclusive
            // results; usage problems are input errors.
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.emit {
                Emit::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON"))
                }
                Emit::Text => print!("{}", out.text),
            }
            std::process::exit(out.exit);
        }
        Err(Error::BudgetExhausted(limit)) => {
            eprintln!("inconclusive: work budget of {limit} exhausted");
            std::process::exit(charp_cli::report::EXIT_INCONCLUSIVE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_INPUT_ERROR);
        }
    }
}
