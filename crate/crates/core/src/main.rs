use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbitquant::apps::{fidelity, phase_retrieve, scalogram, RetrievalConfig};
use orbitquant::config::RunConfig;
use orbitquant::groupfn::GroupFunction;
use orbitquant::hilbert::KernelOperator;
use orbitquant::io::{export_function, export_state, read_oqf};
use orbitquant::verify::{run_suite, Suite};
use orbitquant::Error;

#[derive(Parser, Debug)]
#[command(name = "orbitquant", version, about = "Weyl quantization on exponential Lie groups")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (default: config `out`, else `out`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long = "tolerance-scale", global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Wigner,
    Dequantize,
    Fko,
    Fw,
    Scalogram,
    Wavelet,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Runs an identity suite and writes a JSON report.
    Verify {
        /// groups, transforms, quant, qha, apps, shearlet or all.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Computes one object on the configured grids and exports it.
    Compute {
        what: What,
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long = "fn")]
        function: Option<String>,
    },
    /// Recovers a signal from a scalogram stored as OQF1.
    #[command(name = "phase_retrieve")]
    PhaseRetrieve {
        #[arg(long)]
        input: PathBuf,
        /// Window signal name from the config.
        #[arg(long)]
        window: String,
        /// Ground-truth signal name; prints the fidelity when given.
        #[arg(long)]
        truth: Option<String>,
    },
}

enum Failure {
    Checks(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn load(path: &Option<PathBuf>) -> Result<RunConfig, Error> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Err(Error::Config("--config is required".into())),
    }
}

fn out_dir(cli: &Cli, cfg: Option<&RunConfig>) -> PathBuf {
    cli.out.clone().or_else(|| cfg.and_then(|c| c.out.clone())).unwrap_or_else(|| PathBuf::from("out"))
}

fn need<'a>(name: &'a Option<String>, flag: &str) -> Result<&'a str, Error> {
    name.as_deref().ok_or_else(|| Error::Config(format!("--{} is required", flag)))
}

fn verify(cli: &Cli, suite: &Option<String>) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(p) => Some(RunConfig::load(p)?),
        None => None,
    };
    let name = suite.clone().or_else(|| cfg.as_ref().and_then(|c| c.suite.clone())).unwrap_or_else(|| "all".into());
    let suite: Suite = name.parse()?;
    let seed = cli.seed.or(cfg.as_ref().map(|c| c.seed)).unwrap_or(0);
    let overrides = cfg.as_ref().map(|c| c.tolerances.clone()).unwrap_or_else(BTreeMap::new);
    let (report, timings) = run_suite(suite, seed, cli.tolerance_scale, overrides)?;
    let dir = out_dir(cli, cfg.as_ref());
    std::fs::create_dir_all(&dir).map_err(Error::from)?;
    let path = dir.join(format!("report_{}.json", suite.name()));
    std::fs::write(&path, report.to_json()).map_err(Error::from)?;
    let tpath = dir.join(format!("timings_{}.json", suite.name()));
    std::fs::write(&tpath, serde_json::to_string_pretty(&timings).map_err(Error::from)? + "\n").map_err(Error::from)?;
    for r in report.records.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {} error {:e} tolerance {:e}", r.id, r.error, r.tolerance);
    }
    println!(
        "{}: {}/{} passed, report {}",
        suite.name(),
        report.summary.passed,
        report.summary.total,
        path.display()
    );
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Checks(format!("{} checks failed", report.summary.failed)))
    }
}

fn compute(cli: &Cli, what: What, psi: &Option<String>, phi: &Option<String>, function: &Option<String>) -> Result<(), Failure> {
    let cfg = load(&cli.config)?;
    let q = cfg.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let dir = out_dir(cli, Some(&cfg));
    let pair = || -> Result<_, Error> { Ok((cfg.signal(need(psi, "psi")?, &c)?, cfg.signal(need(phi, "phi")?, &c)?)) };
    let (name, f, anchor): (&str, GroupFunction, &str) = match what {
        What::Wigner => {
            let (a, b) = pair()?;
            ("wigner", q.wigner(&a, &b)?, "W(psi, phi) = a_{psi (x) phi}")
        }
        What::Dequantize => {
            let (a, b) = pair()?;
            ("dequantize", q.dequantize(&KernelOperator::rank_one(&a, &b)?)?, "a_S = F_KO(F_W(S))")
        }
        What::Fko => {
            let f = cfg.function(need(function, "fn")?, &q.ctx)?;
            ("fko", q.ctx.fourier_kirillov(&f, q.mode)?, "F_KO(f)(kappa(x)) = int f(exp X) sqrt(Theta(X)) e^{2 pi i <kappa(x), X>} dX / sqrt(|Pf| Delta(x))")
        }
        What::Fw => {
            let (a, b) = pair()?;
            ("fw", q.ctx.fourier_wigner(&KernelOperator::rank_one(&a, &b)?)?, "F_W(A)(x) = tr(A D pi(x))")
        }
        What::Scalogram => {
            let (a, b) = pair()?;
            ("scalogram", scalogram(&q, &a, &b)?, "|W_phi psi(x)|^2")
        }
        What::Wavelet => {
            let (a, b) = pair()?;
            ("wavelet", q.ctx.rep.wavelet(&a, &b, &q.ctx.exp)?, "W_phi psi(x) = <psi, pi(x)^* phi>")
        }
    };
    for p in export_function(&dir, name, &f, anchor)? {
        println!("{}", p.display());
    }
    Ok(())
}

fn retrieve(cli: &Cli, input: &Path, window: &str, truth: &Option<String>) -> Result<(), Failure> {
    let cfg = load(&cli.config)?;
    let q = cfg.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    if !input.is_file() {
        return Err(Error::Config(format!("{}: input file not found", input.display())).into());
    }
    let (shape, values) = read_oqf(input)?;
    if shape != q.ctx.exp.shape() {
        return Err(Error::GridMismatch(format!(
            "input shape {:?} does not match the configured lattice {:?}",
            shape,
            q.ctx.exp.shape()
        ))
        .into());
    }
    let s = GroupFunction::new(q.ctx.exp.clone(), values)?;
    let phi = cfg.signal(window, &c)?;
    let rc = RetrievalConfig {
        regularization: cfg.retrieval.cutoff,
        reference: None,
        fidelity_floor: cfg.retrieval.fidelity_floor,
    };
    let out = phase_retrieve(&q, &s, &phi, &rc)?;
    let dir = out_dir(cli, Some(&cfg));
    for p in export_state(&dir, "retrieved", &out.signal, cfg.group.name(), "psi = A_{W(psi)} xi / ||A_{W(psi)} xi||")? {
        println!("{}", p.display());
    }
    println!("kept rank {} of {}", out.kept_rank, out.singular_values.len());
    if let Some(t) = truth {
        let fid = fidelity(&out.signal, &cfg.signal(t, &c)?)?;
        println!("fidelity {:.17e}", fid);
        if fid < rc.fidelity_floor {
            return Err(Failure::Checks(format!("fidelity {} below floor {}", fid, rc.fidelity_floor)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    let result = match &cli.cmd {
        Command::Verify { suite } => verify(&cli, suite),
        Command::Compute { what, psi, phi, function } => compute(&cli, *what, psi, phi, function),
        Command::PhaseRetrieve { input, window, truth } => retrieve(&cli, input, window, truth),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(m)) => {
            eprintln!("{}", m);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
