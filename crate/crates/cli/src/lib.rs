//! Command-line front end for the entropy decomposition library.
//!
//! [`run`] takes the full argument list and returns the exit status together
//! with what should be written to standard output and standard error, so the
//! binary stays a thin wrapper and tests can drive it in-process.

mod payloads;
pub mod report;

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entropy_decomp::gallery::{self, System};
use entropy_decomp::gaussian::{gaussian_decomposition, gaussian_info, latent_decomposition};
use entropy_decomp::maxent::{delta_h3_synergy_split, external_spectrum, lost_tc_fraction};
use entropy_decomp::netinfo::{
    excess_rates, gaussian_broadcast_capacities, mac_region, mac_textbook, slepian_wolf_region,
    slepian_wolf_textbook, wiretap_capacities,
};
use entropy_decomp::{
    decompose_markov, decompose_pairwise_independent, entropy_three_layer, max_synergy_search,
    Error, GaussianTriple, JointPmf, TripleInfo, Units,
};
use serde::Deserialize;
use serde_json::{json, Value};

use report::{digest, render_json, render_table, AnalysisReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "entropy-decomp",
    version,
    about = "Shared, private and synergistic information of three-variable systems"
)]
struct Cli {
    /// Logarithm base of every reported quantity.
    #[arg(long, global = true, default_value = "bits")]
    units: Units,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropies, mutual informations and multivariate dependence measures.
    Measures {
        /// Distribution JSON file, or `-` for standard input.
        #[arg(long)]
        input: String,
    },
    /// External and internal entropy layers.
    Spectrum {
        #[arg(long)]
        input: String,
        /// Also report the fraction of total correlation missed by the
        /// maximum-entropy fit to the k-marginals.
        #[arg(long, value_name = "K")]
        lost_tc: Option<usize>,
    },
    /// Shared, private and synergistic information of a discrete triple.
    Decompose {
        #[arg(long)]
        input: String,
        /// Use the Markov-chain closed form with this middle variable (1-3).
        #[arg(long, value_name = "MIDDLE", conflicts_with = "independent")]
        markov: Option<usize>,
        /// Use the closed form for two independent variables, e.g. `1,2`.
        #[arg(long, value_name = "I,J", value_delimiter = ',')]
        independent: Option<Vec<usize>>,
    },
    /// Closed-form analysis of a zero-mean Gaussian triple.
    Gaussian {
        #[arg(value_enum, default_value_t = GaussianAction::Measures)]
        action: GaussianAction,
        /// Parameters as JSON: {"sigma": [..], "corr": {"a": .., "b": .., "g": ..}}.
        #[arg(long, conflicts_with_all = ["s1", "s2", "s3", "a", "b", "g"])]
        input: Option<String>,
        #[command(flatten)]
        params: GaussianParams,
        /// Transmitting variable for `broadcast` (1-3).
        #[arg(long, default_value_t = 1)]
        sender: usize,
    },
    /// Rate regions and capacities of network scenarios.
    Netinfo {
        #[arg(value_enum)]
        scenario: Scenario,
        /// Distribution JSON (Gaussian parameter JSON for `broadcast`).
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        params: GaussianParams,
        /// Rates to test for membership, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        rates: Option<Vec<f64>>,
        /// Channel inputs for `mac` (1-3).
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
        inputs: Vec<usize>,
        /// Channel output for `mac` (1-3).
        #[arg(long, default_value_t = 3)]
        output: usize,
        /// Transmitting variable for `broadcast` (1-3).
        #[arg(long, default_value_t = 1)]
        sender: usize,
    },
    /// Largest synergy of a function of two K-ary inputs.
    SearchSynergy {
        #[arg(long)]
        k: usize,
    },
    /// Built-in example systems.
    Examples {
        #[arg(long)]
        name: Option<String>,
        /// Print the entry as an input file instead of analysing it.
        #[arg(long, requires = "name")]
        emit_input: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GaussianAction {
    Measures,
    Decompose,
    Latent,
    Broadcast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    SlepianWolf,
    Mac,
    Wiretap,
    Broadcast,
}

#[derive(Debug, Clone, Args)]
struct GaussianParams {
    #[arg(long)]
    s1: Option<f64>,
    #[arg(long)]
    s2: Option<f64>,
    #[arg(long)]
    s3: Option<f64>,
    /// corr(X1, X2)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// corr(X1, X3)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// corr(X2, X3)
    #[arg(long, allow_hyphen_values = true)]
    g: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianJson {
    #[serde(default = "unit_sigma")]
    sigma: [f64; 3],
    corr: CorrJson,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorrJson {
    a: f64,
    b: f64,
    g: f64,
}

fn unit_sigma() -> [f64; 3] {
    [1.0; 3]
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConvergenceFailure { .. } => EXIT_CONVERGENCE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))
    }
}

fn load_pmf(path: &str) -> CliResult<JointPmf> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{path}: {e}")))
}

fn load_gaussian(input: Option<&str>, p: &GaussianParams) -> CliResult<GaussianTriple> {
    let g = match input {
        Some(path) => {
            let text = read_source(path)?;
            let raw: GaussianJson =
                serde_json::from_str(&text).map_err(|e| input_error(format!("{path}: {e}")))?;
            GaussianTriple::new(raw.sigma, raw.corr.a, raw.corr.b, raw.corr.g)?
        }
        None => GaussianTriple::new(
            [p.s1.unwrap_or(1.0), p.s2.unwrap_or(1.0), p.s3.unwrap_or(1.0)],
            p.a.unwrap_or(0.0),
            p.b.unwrap_or(0.0),
            p.g.unwrap_or(0.0),
        )?,
    };
    Ok(g)
}

fn variable(i: usize) -> CliResult<usize> {
    if (1..=3).contains(&i) {
        Ok(i - 1)
    } else {
        Err(input_error(format!("variable index {i} outside 1..=3")))
    }
}

fn pair_arg(v: &[usize], flag: &str) -> CliResult<[usize; 2]> {
    match v {
        [i, j] => Ok([variable(*i)?, variable(*j)?]),
        _ => Err(input_error(format!("{flag} takes two variable indices"))),
    }
}

fn pmf_digest(p: &JointPmf) -> String {
    digest(&serde_json::to_value(p).expect("pmf serializes"))
}

fn gaussian_digest(g: &GaussianTriple) -> String {
    digest(&payloads::gaussian_input(g))
}

fn require_triple(p: &JointPmf) -> CliResult<()> {
    if p.num_vars() == 3 {
        Ok(())
    } else {
        Err(input_error(format!(
            "this analysis needs exactly 3 variables, got {}",
            p.num_vars()
        )))
    }
}

fn add_measures(r: &mut AnalysisReport, p: &JointPmf, units: Units) -> CliResult<()> {
    r.add("measures", payloads::discrete_measures(p, units)?);
    Ok(())
}

fn add_decompose(r: &mut AnalysisReport, p: &JointPmf, units: Units, forced: Forced) -> CliResult<()> {
    require_triple(p)?;
    let info = TripleInfo::from_pmf(p, units)?;
    let d = match forced {
        Forced::None => entropy_decomp::decomposition::decompose_info(&info)?,
        Forced::Markov(m) => decompose_markov(p, m, units)?,
        Forced::Independent(i, j) => decompose_pairwise_independent(p, (i, j), units)?,
    };
    let layers = entropy_three_layer(p, &d)?;
    let payload = payloads::decomposition(&d, &info, Some(&layers), r);
    r.add("decompose", payload);
    Ok(())
}

fn add_spectrum(r: &mut AnalysisReport, p: &JointPmf, units: Units) -> CliResult<bool> {
    let s = external_spectrum(p, units)?;
    let payload = payloads::spectrum(&s, r);
    r.add("spectrum", payload);
    if p.num_vars() == 3 && s.converged {
        let split = delta_h3_synergy_split(p, units)?;
        r.add("synergy_split", payloads::synergy_split(&split));
    }
    Ok(s.converged)
}

fn add_gaussian(r: &mut AnalysisReport, g: &GaussianTriple, action: GaussianAction, sender: usize, units: Units) -> CliResult<()> {
    match action {
        GaussianAction::Measures => r.add("measures", payloads::gaussian_measures(g, units)?),
        GaussianAction::Decompose => {
            let info = gaussian_info(g, units)?;
            let d = gaussian_decomposition(g, units)?;
            let payload = payloads::decomposition(&d, &info, None, r);
            r.add("decompose", payload);
        }
        GaussianAction::Latent => {
            let w = latent_decomposition(g)?;
            r.add("latent", payloads::latent(&w, g));
        }
        GaussianAction::Broadcast => {
            let c = gaussian_broadcast_capacities(g, sender, units)?;
            r.add("broadcast", payloads::broadcast(&c, sender, units));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum Forced {
    None,
    Markov(usize),
    Independent(usize, usize),
}

/// A rendered report plus whether any fit failed to converge.
struct Produced {
    value: Value,
    converged: bool,
}

fn report_value(r: AnalysisReport, converged: bool) -> Produced {
    Produced {
        value: r.to_value(),
        converged,
    }
}

fn execute(cli: &Cli) -> CliResult<Produced> {
    let units = cli.units;
    match &cli.command {
        Command::Measures { input } => {
            let p = load_pmf(input)?;
            let mut r = AnalysisReport::new(pmf_digest(&p), units.as_str());
            add_measures(&mut r, &p, units)?;
            Ok(report_value(r, true))
        }
        Command::Spectrum { input, lost_tc } => {
            let p = load_pmf(input)?;
            let mut r = AnalysisReport::new(pmf_digest(&p), units.as_str());
            let converged = add_spectrum(&mut r, &p, units)?;
            if let Some(k0) = lost_tc {
                let f = lost_tc_fraction(&p, *k0, units)?;
                r.add("lost_tc_fraction", json!({"k0": k0, "fraction": f}));
            }
            Ok(report_value(r, converged))
        }
        Command::Decompose {
            input,
            markov,
            independent,
        } => {
            let p = load_pmf(input)?;
            let forced = match (markov, independent) {
                (Some(m), _) => Forced::Markov(variable(*m)?),
                (None, Some(v)) => {
                    let [i, j] = pair_arg(v, "--independent")?;
                    Forced::Independent(i, j)
                }
                (None, None) => Forced::None,
            };
            let mut r = AnalysisReport::new(pmf_digest(&p), units.as_str());
            add_decompose(&mut r, &p, units, forced)?;
            Ok(report_value(r, true))
        }
        Command::Gaussian {
            action,
            input,
            params,
            sender,
        } => {
            let g = load_gaussian(input.as_deref(), params)?;
            let mut r = AnalysisReport::new(gaussian_digest(&g), units.as_str());
            add_gaussian(&mut r, &g, *action, variable(*sender)?, units)?;
            Ok(report_value(r, true))
        }
        Command::Netinfo {
            scenario,
            input,
            params,
            rates,
            inputs,
            output,
            sender,
        } => netinfo(*scenario, input.as_deref(), params, rates.as_deref(), inputs, *output, *sender, units),
        Command::SearchSynergy { k } => {
            let s = max_synergy_search(*k, units)?;
            let mut r = AnalysisReport::new(digest(&json!({"k": k})), units.as_str());
            r.add("search_synergy", payloads::synergy_search(&s));
            Ok(report_value(r, true))
        }
        Command::Examples { name, emit_input } => examples(name.as_deref(), *emit_input, units),
    }
}

#[allow(clippy::too_many_arguments)]
fn netinfo(
    scenario: Scenario,
    input: Option<&str>,
    params: &GaussianParams,
    rates: Option<&[f64]>,
    inputs: &[usize],
    output: usize,
    sender: usize,
    units: Units,
) -> CliResult<Produced> {
    if scenario == Scenario::Broadcast {
        let g = load_gaussian(input, params)?;
        let mut r = AnalysisReport::new(gaussian_digest(&g), units.as_str());
        add_gaussian(&mut r, &g, GaussianAction::Broadcast, variable(sender)?, units)?;
        return Ok(report_value(r, true));
    }
    let path = input.ok_or_else(|| input_error("--input is required for this scenario"))?;
    let p = load_pmf(path)?;
    require_triple(&p)?;
    let mut r = AnalysisReport::new(pmf_digest(&p), units.as_str());
    match scenario {
        Scenario::SlepianWolf => {
            let d = entropy_decomp::decompose(&p, units)?;
            if !d.unique {
                r.warn(
                    "decomposition is not unique; the min-MI point is used (the region bounds do not depend on this choice)",
                );
            }
            let excess = slepian_wolf_region(&p, &d)?;
            let plain = slepian_wolf_textbook(&p, units)?;
            let mut payload = json!({
                "excess_region": payloads::region(&excess),
                "region": payloads::region(&plain),
            });
            if let Some(rates) = rates {
                let rates: [f64; 3] = rates
                    .try_into()
                    .map_err(|_| input_error(format!("expected 3 rates, got {}", rates.len())))?;
                let e = excess_rates(&p, &rates, units)?;
                payload["membership"] = payloads::membership(&plain, &rates)?;
                payload["excess_membership"] = payloads::membership(&excess, &e)?;
            }
            r.add("slepian_wolf", payload);
        }
        Scenario::Mac => {
            let [a, b] = pair_arg(inputs, "--inputs")?;
            let o = variable(output)?;
            let m = mac_region(&p, (a, b), o, units)?;
            let direct = mac_textbook(&p, (a, b), o, units)?;
            let mut payload = json!({
                "c1": m.c1,
                "c2": m.c2,
                "c_s": m.cs,
                "region": payloads::region(&m.region),
                "textbook_region": payloads::region(&direct),
                "units": units.as_str(),
            });
            if let Some(rates) = rates {
                payload["membership"] = payloads::membership(&m.region, rates)?;
            }
            r.add("mac", payload);
        }
        Scenario::Wiretap => {
            let w = wiretap_capacities(&p, units)?;
            r.add("wiretap", payloads::wiretap(&w, units));
        }
        Scenario::Broadcast => unreachable!("handled above"),
    }
    Ok(report_value(r, true))
}

fn examples(name: Option<&str>, emit_input: bool, units: Units) -> CliResult<Produced> {
    let Some(name) = name else {
        let list: Vec<Value> = gallery::all()
            .iter()
            .map(|e| {
                let kind = match e.system {
                    System::Discrete(_) => "discrete",
                    System::Gaussian(_) => "gaussian",
                };
                json!({"name": e.name, "description": e.description, "kind": kind})
            })
            .collect();
        return Ok(Produced {
            value: json!({ "examples": list }),
            converged: true,
        });
    };
    let entry = gallery::lookup(name).ok_or_else(|| {
        input_error(format!(
            "unknown example '{name}'; available: {}",
            gallery::names().join(", ")
        ))
    })?;
    match entry.system {
        System::Discrete(p) => {
            if emit_input {
                return Ok(Produced {
                    value: serde_json::to_value(&p).expect("pmf serializes"),
                    converged: true,
                });
            }
            let mut r = AnalysisReport::new(pmf_digest(&p), units.as_str());
            add_measures(&mut r, &p, units)?;
            add_decompose(&mut r, &p, units, Forced::None)?;
            let converged = add_spectrum(&mut r, &p, units)?;
            Ok(report_value(r, converged))
        }
        System::Gaussian(g) => {
            if emit_input {
                return Ok(Produced {
                    value: payloads::gaussian_input(&g),
                    converged: true,
                });
            }
            let mut r = AnalysisReport::new(gaussian_digest(&g), units.as_str());
            add_gaussian(&mut r, &g, GaussianAction::Measures, 0, units)?;
            add_gaussian(&mut r, &g, GaussianAction::Decompose, 0, units)?;
            match add_gaussian(&mut r, &g, GaussianAction::Latent, 0, units) {
                Ok(()) => {}
                Err(f) => r.warn(format!("latent construction unavailable: {}", f.message)),
            }
            add_gaussian(&mut r, &g, GaussianAction::Broadcast, 0, units)?;
            Ok(report_value(r, true))
        }
    }
}

/// Runs one command line (including the program name) and returns what the
/// process should print and its exit status.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(produced) => {
            let stdout = match cli.format {
                Format::Json => render_json(&produced.value),
                Format::Table => render_table(&produced.value),
            };
            let (code, stderr) = if produced.converged {
                (EXIT_OK, String::new())
            } else {
                (
                    EXIT_CONVERGENCE,
                    "error: maximum-entropy fitting did not converge; see warnings\n".to_string(),
                )
            };
            Outcome { code, stdout, stderr }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
