use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qbridge_core::bridge::{
    defense_encode, defense_message_card, rkb_encode, rkb_message_bid, scenario_evaluate, Attitude,
    CountParity, DefenseHolding, DefenseInterest, RkbAnswer, RkbHolding, RkbInterest, ScenarioConfig,
    ScenarioKind,
};
use qbridge_core::format::{parse_distribution, parse_scenario};
use qbridge_core::protocol::{run_trials, shot_rng, RoundRecord, RoundSampler, SimulationConfig};
use qbridge_core::strategy::{
    bias_pair, biased_chsh_bound, classical_value_closed_form, classical_value_enumerated, hwp_angles,
    optimal_beta, optimal_settings, protocol_success, BiasPair, JointInputDistribution, ProductForm,
    TIE_TOL,
};
use rand::Rng;

use crate::output::write_atomic;
use crate::sweep::{curves_csv, fmt7, surface_csv, Axis, SweepSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qbridge", version, about = "Classical vs entanglement-assisted signalling in bridge")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// I_C(q) and I_Q(q) at fixed p' as CSV
    Curves(CurvesArgs),
    /// I_C and I_Q over a (p', q) grid as CSV
    Surface(SurfaceArgs),
    /// Monte Carlo run of the entangled protocol
    Simulate(SimulateArgs),
    /// One end-to-end protocol round for a concrete holding
    Bid(BidArgs),
    /// Optimal Bloch angles and wave-plate orientations
    Angles(AnglesArgs),
    /// Exhaustive classical optimum over deterministic strategies
    ClassicalOpt(ClassicalOptArgs),
    /// Classical and quantum values for a bridge scenario
    Scenario(ScenarioArgs),
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long = "p-prime", default_value = "0.5")]
    pub p_prime: Axis,
    #[arg(long, default_value = "0:1:101")]
    pub q: Axis,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long = "p-prime", default_value = "0:1:11")]
    pub p_prime: Axis,
    #[arg(long, default_value = "0:1:11")]
    pub q: Axis,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Inputs as either a distribution file or independent probabilities.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Eight probabilities or key=value product form
    #[arg(long)]
    pub joint: Option<PathBuf>,
    /// P(a0 = 0)
    #[arg(long, default_value_t = 0.5)]
    pub p0: f64,
    /// P(a1 = 0)
    #[arg(long, default_value_t = 0.55)]
    pub p1: f64,
    /// P(b = 0)
    #[arg(long, default_value_t = 0.75)]
    pub q: f64,
}

impl InputArgs {
    fn load(&self) -> Result<Inputs, CliError> {
        match &self.joint {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                let file = parse_distribution(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                Ok(Inputs {
                    dist: file.joint(),
                    product: match file {
                        qbridge_core::format::DistributionFile::Product(f) => Some(f),
                        qbridge_core::format::DistributionFile::Joint(_) => None,
                    },
                })
            }
            None => {
                let form = ProductForm::new(self.p0, self.p1, self.q)?;
                Ok(Inputs {
                    dist: form.expand(),
                    product: Some(form),
                })
            }
        }
    }
}

struct Inputs {
    dist: JointInputDistribution,
    product: Option<ProductForm>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Per-party detection probability per attempt
    #[arg(long, default_value_t = 1.0)]
    pub efficiency: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum YesNo {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Rkb,
    Defense,
}

impl From<KindArg> for ScenarioKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Rkb => ScenarioKind::Rkb,
            KindArg::Defense => ScenarioKind::Defense,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AttitudeArg {
    Encourage,
    Discourage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterestArg {
    Keycards,
    Queen,
    Attitude,
    Count,
}

#[derive(Debug, Args)]
pub struct BidArgs {
    #[arg(long, value_enum, default_value = "rkb")]
    pub scenario: KindArg,
    #[arg(long)]
    pub keycards: Option<u8>,
    #[arg(long, value_enum)]
    pub queen: Option<YesNo>,
    #[arg(long, value_enum)]
    pub attitude: Option<AttitudeArg>,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Which bit the receiver wants; drawn from q when omitted
    #[arg(long, value_enum)]
    pub interest: Option<InterestArg>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub p0: Option<f64>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AnglesArgs {
    /// Probability of each hand bit being 0; p = p'^2 + (1-p')^2
    #[arg(long = "p-prime", conflicts_with = "p")]
    pub p_prime: Option<f64>,
    /// XOR bias p = P(a0 xor a1 = 0) given directly
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: f64,
}

#[derive(Debug, Args)]
pub struct ClassicalOptArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[arg(long, value_enum, default_value = "rkb")]
    pub scenario: KindArg,
    /// Scenario file (key=value lines); flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p0: Option<f64>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub bypass: Option<f64>,
}

/// Runs a parsed command and returns what should go to stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Curves(a) => emit_csv(
            curves_csv(&SweepSpec {
                p_prime: a.p_prime,
                q: a.q,
            })?,
            a.out,
        ),
        Command::Surface(a) => emit_csv(
            surface_csv(&SweepSpec {
                p_prime: a.p_prime,
                q: a.q,
            })?,
            a.out,
        ),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Bid(a) => cmd_bid(&a),
        Command::Angles(a) => cmd_angles(&a),
        Command::ClassicalOpt(a) => cmd_classical_opt(&a),
        Command::Scenario(a) => cmd_scenario(&a),
    }
}

fn emit_csv(csv: String, out: Option<PathBuf>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            write_atomic(&path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<String, CliError> {
    if args.shots == 0 {
        return Err(CliError::Usage("--shots must be at least 1".into()));
    }
    if !(args.efficiency > 0.0 && args.efficiency <= 1.0) {
        return Err(CliError::Usage("--efficiency must lie in (0, 1]".into()));
    }
    let inputs = args.inputs.load()?;
    let bias = bias_pair(&inputs.dist);
    let settings = optimal_settings(bias)?;
    let expected = protocol_success(&inputs.dist, &settings);
    let config = SimulationConfig::new(inputs.dist, settings, args.shots, args.seed).with_efficiency(args.efficiency);
    let result = run_trials(&config)?;

    let mut out = String::new();
    writeln!(out, "p: {}", fmt7(bias.p)).unwrap();
    writeln!(out, "q: {}", fmt7(bias.q)).unwrap();
    writeln!(out, "i_quantum_closed_form: {}", fmt7(0.5 * (1.0 + biased_chsh_bound(bias)))).unwrap();
    writeln!(out, "i_expected: {}", fmt7(expected)).unwrap();
    writeln!(out, "shots: {}", result.shots).unwrap();
    writeln!(out, "seed: {}", args.seed).unwrap();
    writeln!(out, "efficiency: {}", fmt7(args.efficiency)).unwrap();
    writeln!(out, "successes: {}", result.successes).unwrap();
    writeln!(out, "i_empirical: {}", fmt7(result.empirical_i)).unwrap();
    writeln!(out, "std_error: {}", fmt7(result.std_error)).unwrap();
    writeln!(out, "z_score: {}", fmt7(result.z_score(expected))).unwrap();
    writeln!(out, "mean_herald_attempts: {}", fmt7(result.mean_herald_attempts)).unwrap();
    Ok(out)
}

fn bid_config(args: &BidArgs) -> Result<ScenarioConfig, CliError> {
    let mut cfg = ScenarioConfig::default_for(args.scenario.into());
    cfg.p0_prime = args.p0.unwrap_or(cfg.p0_prime);
    cfg.p1_prime = args.p1.unwrap_or(cfg.p1_prime);
    cfg.q = args.q.unwrap_or(cfg.q);
    cfg.validate()?;
    Ok(cfg)
}

/// Plays one round of the entangled protocol for the given inputs.
fn play_round(cfg: &ScenarioConfig, inputs: (u8, u8), interest: Option<u8>, seed: u64) -> Result<RoundRecord, CliError> {
    let form = cfg.product_form()?;
    let settings = optimal_settings(form.bias())?;
    let sampler = RoundSampler::new(&settings, 1.0)?;
    let mut rng = shot_rng(seed, 0);
    let b = match interest {
        Some(b) => b,
        None => u8::from(rng.random::<f64>() >= cfg.q),
    };
    Ok(sampler.run_round((inputs.0, inputs.1, b), &mut rng))
}

pub fn cmd_bid(args: &BidArgs) -> Result<String, CliError> {
    let cfg = bid_config(args)?;
    let mut out = String::new();
    match args.scenario {
        KindArg::Rkb => {
            let keycards = args
                .keycards
                .ok_or_else(|| CliError::Usage("--keycards is required for rkb".into()))?;
            let queen = args.queen.ok_or_else(|| CliError::Usage("--queen yes|no is required for rkb".into()))?;
            let interest = match args.interest {
                None => None,
                Some(InterestArg::Keycards) => Some(RkbInterest::Keycards),
                Some(InterestArg::Queen) => Some(RkbInterest::TrumpQueen),
                Some(other) => {
                    return Err(CliError::Usage(format!(
                        "--interest {other:?} is not valid for rkb (keycards|queen)"
                    )))
                }
            };
            let holding = RkbHolding::new(keycards, queen == YesNo::Yes)?;
            writeln!(out, "scenario: rkb").unwrap();
            writeln!(
                out,
                "holding: {} key cards, {}",
                keycards,
                if holding.has_trump_queen() { "trump queen" } else { "no trump queen" }
            )
            .unwrap();
            match rkb_encode(holding) {
                RkbAnswer::Bypass(bid) => {
                    writeln!(out, "answer: bypass bid {bid}").unwrap();
                    writeln!(out, "protocol round: none").unwrap();
                }
                RkbAnswer::ProtocolInputs { a0, a1 } => {
                    let r = play_round(&cfg, (a0, a1), interest.map(RkbInterest::bit), args.seed)?;
                    let interest = if r.b == 0 { RkbInterest::Keycards } else { RkbInterest::TrumpQueen };
                    write_round(&mut out, &r, &rkb_message_bid(r.message).to_string(), |g| interest.describe(g));
                }
            }
        }
        KindArg::Defense => {
            let attitude = args
                .attitude
                .ok_or_else(|| CliError::Usage("--attitude is required for defense".into()))?;
            let parity = args
                .parity
                .ok_or_else(|| CliError::Usage("--parity is required for defense".into()))?;
            let interest = match args.interest {
                None => None,
                Some(InterestArg::Attitude) => Some(DefenseInterest::Attitude),
                Some(InterestArg::Count) => Some(DefenseInterest::Count),
                Some(other) => {
                    return Err(CliError::Usage(format!(
                        "--interest {other:?} is not valid for defense (attitude|count)"
                    )))
                }
            };
            let holding = DefenseHolding {
                attitude: match attitude {
                    AttitudeArg::Encourage => Attitude::Encourage,
                    AttitudeArg::Discourage => Attitude::Discourage,
                },
                parity: match parity {
                    ParityArg::Odd => CountParity::Odd,
                    ParityArg::Even => CountParity::Even,
                },
            };
            writeln!(out, "scenario: defense").unwrap();
            writeln!(out, "holding: {:?}, {:?} count", holding.attitude, holding.parity).unwrap();
            let (a0, a1) = defense_encode(holding);
            let r = play_round(&cfg, (a0, a1), interest.map(DefenseInterest::bit), args.seed)?;
            let interest = if r.b == 0 { DefenseInterest::Attitude } else { DefenseInterest::Count };
            write_round(&mut out, &r, &defense_message_card(r.message).to_string(), |g| interest.describe(g));
        }
    }
    Ok(out)
}

fn write_round(out: &mut String, r: &RoundRecord, signal: &str, describe: impl Fn(u8) -> &'static str) {
    writeln!(out, "inputs: a0={} a1={}", r.a0, r.a1).unwrap();
    writeln!(out, "interest: b={}", r.b).unwrap();
    writeln!(out, "sender: setting a={} outcome A={}", r.a, r.alice_outcome).unwrap();
    writeln!(out, "message: m={} as {}", r.message, signal).unwrap();
    writeln!(out, "receiver: outcome B={} guess R={}", r.bob_outcome, r.guess).unwrap();
    writeln!(out, "guess: {}", describe(r.guess)).unwrap();
    writeln!(out, "correct: {}", if r.success { "yes" } else { "no" }).unwrap();
}

pub fn cmd_angles(args: &AnglesArgs) -> Result<String, CliError> {
    let bias = match (args.p_prime, args.p) {
        (Some(pp), None) => BiasPair::from_symmetric_prime(pp, args.q)?,
        (None, Some(p)) => BiasPair::new(p, args.q)?,
        _ => return Err(CliError::Usage("give exactly one of --p-prime or --p".into())),
    };
    let solution = optimal_beta(bias);
    if !solution.in_region() {
        let cos = solution
            .cos_beta
            .map_or_else(|| "undefined".to_string(), |c| format!("{c:.4}"));
        return Err(CliError::OutOfRegion(format!(
            "p={} q={} is outside the quantum region: cos beta = {cos}",
            fmt7(bias.p),
            fmt7(bias.q)
        )));
    }
    let s = optimal_settings(bias)?;
    let h = hwp_angles(bias)?;
    let mut out = String::new();
    writeln!(out, "p: {}", fmt7(bias.p)).unwrap();
    writeln!(out, "q: {}", fmt7(bias.q)).unwrap();
    writeln!(out, "cos_beta: {}", fmt7(solution.cos_beta.unwrap())).unwrap();
    writeln!(out, "beta: {}", fmt7(solution.beta.unwrap())).unwrap();
    writeln!(out, "{:<10}{:>12}{:>12}{:>12}", "observable", "bloch", "hwp", "residual").unwrap();
    let rows = [
        ("A1", s.alpha0, h.phi_a1, Some(h.residual_a1)),
        ("A2", s.alpha1, h.phi_a2, Some(h.residual_a2)),
        ("B1", s.gamma0, h.phi_b1, None),
        ("B2", s.gamma1, h.phi_b2, None),
    ];
    for (name, bloch, plate, residual) in rows {
        let residual = residual.map_or_else(|| "-".to_string(), fmt7);
        writeln!(out, "{name:<10}{:>12}{:>12}{residual:>12}", fmt7(bloch), fmt7(plate)).unwrap();
    }
    writeln!(out, "consistency_residual: {}", fmt7(h.consistency_residual)).unwrap();
    Ok(out)
}

pub fn cmd_classical_opt(args: &ClassicalOptArgs) -> Result<String, CliError> {
    let inputs = args.inputs.load()?;
    let dist = inputs.dist;
    let opt = classical_value_enumerated(&dist);
    let closed = match inputs.product {
        Some(f) => classical_value_closed_form(f.q, f.p0_prime, f.p1_prime)?,
        None => classical_value_closed_form(dist.q(), dist.a0_zero_given_b0(), dist.a1_zero_given_b1())?,
    };
    let mut out = String::new();
    writeln!(out, "candidates: {}", opt.candidates).unwrap();
    writeln!(out, "optimum: {}", fmt7(opt.value)).unwrap();
    writeln!(out, "optimal_strategies: {}", opt.optima.len()).unwrap();
    for s in &opt.optima {
        writeln!(out, "  #{:03} {s}", s.index()).unwrap();
    }
    writeln!(out, "closed_form: {}", fmt7(closed)).unwrap();
    let agrees = (opt.value - closed).abs() <= TIE_TOL;
    writeln!(
        out,
        "closed_form_status: {}",
        if agrees { "agrees" } else { "DIFFERS (closed form assumes independent hand bits)" }
    )
    .unwrap();
    Ok(out)
}

pub fn cmd_scenario(args: &ScenarioArgs) -> Result<String, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_scenario(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => ScenarioConfig::default_for(args.scenario.into()),
    };
    cfg.p0_prime = args.p0.unwrap_or(cfg.p0_prime);
    cfg.p1_prime = args.p1.unwrap_or(cfg.p1_prime);
    cfg.q = args.q.unwrap_or(cfg.q);
    cfg.bypass_probability = args.bypass.unwrap_or(cfg.bypass_probability);
    let report = scenario_evaluate(&cfg)?;

    let mut out = String::new();
    let kind = match cfg.kind {
        ScenarioKind::Rkb => "rkb",
        ScenarioKind::Defense => "defense",
    };
    writeln!(out, "scenario: {kind}").unwrap();
    writeln!(out, "p0_prime: {}", fmt7(cfg.p0_prime)).unwrap();
    writeln!(out, "p1_prime: {}", fmt7(cfg.p1_prime)).unwrap();
    writeln!(out, "q: {}", fmt7(cfg.q)).unwrap();
    if cfg.kind == ScenarioKind::Rkb {
        writeln!(out, "bypass_probability: {}", fmt7(cfg.bypass_probability)).unwrap();
    }
    writeln!(out, "i_classical: {}", fmt7(report.classical_value)).unwrap();
    writeln!(out, "i_quantum: {}", fmt7(report.quantum_value)).unwrap();
    writeln!(out, "in_region: {}", report.quantum_in_region).unwrap();
    if let Some(v) = report.protocol_value {
        writeln!(out, "i_protocol: {}", fmt7(v)).unwrap();
    }
    writeln!(out, "advantage: {}", fmt7(report.advantage)).unwrap();
    writeln!(out, "classical_optima: {}", report.classical_optima.len()).unwrap();
    Ok(out)
}
