//! tomokit command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure (an
//! inequality or bound violated beyond tolerance), 3 numerical failure
//! (decay precondition, eigensolver refutation).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tomokit::entropy;
use tomokit::error::Error;
use tomokit::fidelity::{fidelity_from_tomograms, DEFAULT_LAMBDA_MAX};
use tomokit::grid::Grid1D;
use tomokit::haar::{haar_unitary, seeded_rng, Unitary};
use tomokit::multimode::{center_of_mass_tomogram, MultimodeState};
use tomokit::recon::{
    classify_tomogram, reconstruct_density_matrix, reconstruct_phase_space, DEFAULT_CLASS_CUTOFF,
    DEFAULT_CLASS_TOLERANCE,
};
use tomokit::report::{fmt_g, Report};
use tomokit::spec::{
    default_dims_for, parse_cv_state, parse_cv_state_on, parse_spin_state, CvState,
};
use tomokit::spin::{
    bipartite_subadditivity, group_average_entropy, measurement_bounds, qft_inequality_check,
    random_pure_state, renyi_tomo_entropy, shannon_tomo_entropy, spin_tomogram, tripartite_ssa,
    GroupAverageTarget, ObservablePair,
};
use tomokit::states::DEFAULT_FOCK_CUTOFF;
use tomokit::tomo::{OpticalTomogram, Quadrature};

#[derive(Parser)]
#[command(
    name = "tomokit",
    about = "Tomographic-probability toolkit: tomograms, reconstruction, classification, fidelity, entropic inequalities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit the report as JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a state and report its basic moments.
    State {
        #[arg(long)]
        state: String,
        /// Position-grid override "xmin,xmax,n" for pure states.
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Tomogram computations.
    Tomo {
        #[command(subcommand)]
        what: TomoCommand,
    },
    /// Invert a tomogram to a phase-space map or a density matrix.
    Recon {
        #[arg(long)]
        state: String,
        /// ps (phase space) or dm (density matrix).
        #[arg(long, default_value = "dm")]
        kind: String,
        #[arg(long, default_value_t = DEFAULT_FOCK_CUTOFF)]
        cutoff: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a tomogram as classical / quantum / both / neither.
    Classify {
        #[arg(long)]
        state: String,
        /// Relative negativity tolerance.
        #[arg(long, default_value_t = DEFAULT_CLASS_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Fidelity between the states behind two optical tomogram files.
    Fidelity {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Entropy reports.
    Entropy {
        #[command(subcommand)]
        what: EntropyCommand,
    },
    /// Inequality and bound checks (exit 2 on violation).
    Ineq {
        #[command(subcommand)]
        what: IneqCommand,
    },
    /// Haar-average Monte-Carlo runs.
    Haar {
        #[command(subcommand)]
        what: HaarCommand,
    },
    /// Run the acceptance suite (exit 2 on any failing criterion).
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum TomoCommand {
    /// Optical tomogram row entropies; optionally saved as CSV.
    Optical {
        #[arg(long)]
        state: String,
        /// Number of local-oscillator angles in [0, 2 pi).
        #[arg(long, default_value_t = 256)]
        thetas: usize,
        /// Position-grid override "xmin,xmax,n" for pure states.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Symplectic tomogram values at explicit (X, mu, nu) points.
    Symplectic {
        #[arg(long)]
        state: String,
        /// Evaluation point "X,mu,nu"; repeatable.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Center-of-mass tomogram row for a product state.
    Cm {
        #[arg(long)]
        state: String,
        /// Comma-separated mu vector, one entry per mode.
        #[arg(long)]
        mu: String,
        /// Comma-separated nu vector, one entry per mode.
        #[arg(long)]
        nu: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum EntropyCommand {
    /// Shannon tomographic entropies over a theta sweep.
    Cv {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 16)]
        thetas: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Renyi conjugate-pair residuals at one angle.
    Renyi {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Comma-separated q values in (0, 1).
        #[arg(long, default_value = "0.1,0.25,0.5,0.75,0.9")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Spin tomographic entropies in a Haar frame and in the eigenframe.
    Tomo {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum IneqCommand {
    /// Shannon entropic uncertainty relation over a theta sweep.
    Ur {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 16)]
        thetas: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Renyi conjugate-pair uncertainty relation.
    RenyiUr {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, default_value = "0.1,0.25,0.5,0.75,0.9")]
        q: String,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// QFT conjugate-pair inequalities over Haar-random frames.
    SpinQft {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0 / 3.0)]
        beta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Bipartite subadditivity over Haar-random frames.
    Subadd {
        #[arg(long)]
        state: String,
        /// Tensor factorization, e.g. "2,3"; defaults follow the state.
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Tripartite strong subadditivity over Haar-random frames.
    Ssa {
        #[arg(long)]
        state: String,
        /// Tensor factorization, e.g. "2,2,2"; defaults follow the state.
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Deutsch / Maassen-Uffink / MUB measurement bounds.
    Bounds {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum HaarCommand {
    /// Haar-average tomographic entropy against the group-average bound.
    Avg {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Conjugate Renyi pair "alpha,beta"; Shannon when absent.
        #[arg(long)]
        renyi: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    // usage problems exit 1; clap's default would be 2, which is reserved
    // for validation failures here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NonDecaying(_) | Error::NumericalFailure(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number '{t}': {e}")))
        })
        .collect()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad integer '{t}': {e}")))
        })
        .collect()
}

fn grid_override(grid: &Option<String>) -> Result<Option<Grid1D>, Error> {
    match grid {
        None => Ok(None),
        Some(s) => {
            let v = parse_f64_list(s)?;
            if v.len() != 3 {
                return Err(Error::Parse("--grid needs xmin,xmax,n".into()));
            }
            Ok(Some(Grid1D::new(v[0], v[1], v[2] as usize)?))
        }
    }
}

fn theta_sweep(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| i as f64 * std::f64::consts::TAU / count as f64)
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::State {
            state,
            grid,
            common,
        } => {
            let parsed = parse_cv_state_on(&state, grid_override(&grid)?)?;
            let mut report = Report::new();
            match &parsed {
                CvState::Product(p) => {
                    report
                        .line()
                        .text("kind", "product")
                        .int("modes", p.mode_count() as i64);
                }
                _ => {
                    let tomo = parsed.tomogram()?;
                    let q1 = tomo.moment(1, Quadrature::Position)?;
                    let q2 = tomo.moment(2, Quadrature::Position)?;
                    let p1 = tomo.moment(1, Quadrature::Momentum)?;
                    let p2 = tomo.moment(2, Quadrature::Momentum)?;
                    report
                        .line()
                        .text("kind", parsed.kind_name())
                        .float("mean_q", q1)
                        .float("mean_p", p1)
                        .float("var_q", q2 - q1 * q1)
                        .float("var_p", p2 - p1 * p1);
                }
            }
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tomo { what } => run_tomo(what),
        Command::Recon {
            state,
            kind,
            cutoff,
            common,
        } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let mut report = Report::new();
            match kind.as_str() {
                "ps" => {
                    let ps = reconstruct_phase_space(&tomo)?;
                    report
                        .line()
                        .text("kind", "phase_space")
                        .float("mass", ps.total_mass)
                        .float("min_f", ps.min_value)
                        .float("max_abs", ps.max_abs);
                }
                "dm" => {
                    let rho = reconstruct_density_matrix(&tomo, cutoff)?;
                    let purity = (&rho * &rho).trace().re;
                    let min_eig = tomokit::linalg::min_eigenvalue(&rho);
                    report
                        .line()
                        .text("kind", "density_matrix")
                        .float("trace", rho.trace().re)
                        .float("min_eig", min_eig)
                        .float("purity", purity);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "recon kind '{other}' is not ps or dm"
                    )))
                }
            }
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { state, tol, common } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let cls = classify_tomogram(&tomo, tol, DEFAULT_CLASS_CUTOFF)?;
            let mut report = Report::new();
            report
                .line()
                .bool("classical", cls.classical)
                .bool("quantum", cls.quantum)
                .float("min_f", cls.min_phase_space_value)
                .float("min_eig", cls.min_density_eigenvalue);
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fidelity { a, b, common } => {
            let wa = OpticalTomogram::load(&a)?;
            let wb = OpticalTomogram::load(&b)?;
            let fid = fidelity_from_tomograms(&wa, &wb, DEFAULT_LAMBDA_MAX)?;
            let mut report = Report::new();
            report
                .line()
                .float("F", fid.fidelity)
                .float("im_residual", fid.im_residual)
                .bool("bounds_ok", fid.bounds_ok);
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Entropy { what } => run_entropy(what),
        Command::Ineq { what } => run_ineq(what),
        Command::Haar { what } => run_haar(what),
        Command::Selftest { seed, common } => {
            let results = tomokit::selftest::run_all(seed)?;
            let report = tomokit::selftest::render_report(&results);
            emit(&report, common.json);
            if results.iter().all(|r| r.passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn run_tomo(cmd: TomoCommand) -> Result<ExitCode, Error> {
    match cmd {
        TomoCommand::Optical {
            state,
            thetas,
            grid,
            out,
            common,
        } => {
            let tomo = parse_cv_state_on(&state, grid_override(&grid)?)?.tomogram()?;
            let thetagrid = Grid1D::new(0.0, std::f64::consts::TAU, thetas)?;
            let w = tomo.optical(thetagrid)?;
            if let Some(path) = out {
                w.save(&path)?;
            }
            let mut report = Report::new();
            for it in 0..w.thetagrid().count() {
                let s = entropy::differential_entropy(w.row(it), w.xgrid().spacing())?;
                report
                    .line()
                    .float("theta", w.thetagrid().point(it))
                    .float("S", s);
            }
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        TomoCommand::Symplectic { state, at, common } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let mut report = Report::new();
            for point in &at {
                let coords = parse_f64_list(point)?;
                if coords.len() != 3 {
                    return Err(Error::Parse(format!("--at needs X,mu,nu; got '{point}'")));
                }
                let value = tomo.evaluate(coords[0], coords[1], coords[2])?;
                report
                    .line()
                    .float("X", coords[0])
                    .float("mu", coords[1])
                    .float("nu", coords[2])
                    .float("M", value);
            }
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        TomoCommand::Cm {
            state,
            mu,
            nu,
            out,
            common,
        } => {
            let product = match parse_cv_state(&state)? {
                CvState::Product(p) => p,
                CvState::Pure(psi) => MultimodeState::product_pure(vec![psi])?,
                CvState::Mixed(rho) => MultimodeState::product_mixed(vec![rho])?,
                CvState::Classical(f) => MultimodeState::classical(vec![f])?,
            };
            let mus = parse_f64_list(&mu)?;
            let nus = parse_f64_list(&nu)?;
            let cm = center_of_mass_tomogram(&product);
            let (grid, row) = cm.row(&mus, &nus)?;
            let dx = grid.spacing();
            let mass: f64 = row.iter().sum::<f64>() * dx;
            let mean: f64 = row
                .iter()
                .enumerate()
                .map(|(i, &v)| grid.point(i) * v)
                .sum::<f64>()
                * dx;
            let var: f64 = row
                .iter()
                .enumerate()
                .map(|(i, &v)| grid.point(i).powi(2) * v)
                .sum::<f64>()
                * dx
                - mean * mean;
            if let Some(path) = out {
                let mut text = String::from("X,M\n");
                for (i, &v) in row.iter().enumerate() {
                    text.push_str(&format!("{},{}\n", fmt_g(grid.point(i)), fmt_g(v)));
                }
                std::fs::write(&path, text)?;
            }
            let mut report = Report::new();
            report
                .line()
                .float("mass", mass)
                .float("mean", mean)
                .float("var", var);
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_entropy(cmd: EntropyCommand) -> Result<ExitCode, Error> {
    match cmd {
        EntropyCommand::Cv {
            state,
            thetas,
            common,
        } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let entries = entropy::entropic_ur_check(&tomo, &theta_sweep(thetas))?;
            let mut report = Report::new();
            for e in &entries {
                report
                    .line()
                    .float("theta", e.theta)
                    .float("S", e.entropy)
                    .float("S_conj", e.entropy_conjugate)
                    .float("residual", e.residual);
            }
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        EntropyCommand::Renyi {
            state,
            theta,
            q,
            common,
        } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let qs = parse_f64_list(&q)?;
            let entries = entropy::renyi_ur_check(&tomo, theta, &qs)?;
            let mut report = Report::new();
            for e in &entries {
                report.line().float("q", e.q).float("residual", e.residual);
            }
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
        EntropyCommand::Tomo {
            state,
            seed,
            common,
        } => {
            let rho = parse_spin_state(&state)?;
            let u = haar_unitary(rho.dim(), &mut seeded_rng(seed));
            let w = spin_tomogram(&rho, &u)?;
            let (_, u_min) = rho.eigen_frame();
            let w_min = spin_tomogram(&rho, &u_min)?;
            let mut report = Report::new();
            report
                .line()
                .text("frame", "haar")
                .float("H", shannon_tomo_entropy(&w))
                .float("R_half", renyi_tomo_entropy(&w, 0.5)?)
                .float("R_2", renyi_tomo_entropy(&w, 2.0)?);
            report
                .line()
                .text("frame", "eigen")
                .float("H", shannon_tomo_entropy(&w_min))
                .float("S_vN", rho.von_neumann_entropy());
            emit(&report, common.json);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_ineq(cmd: IneqCommand) -> Result<ExitCode, Error> {
    match cmd {
        IneqCommand::Ur {
            state,
            thetas,
            tol,
            common,
        } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let entries = entropy::entropic_ur_check(&tomo, &theta_sweep(thetas))?;
            let mut report = Report::new();
            let mut min_res = f64::INFINITY;
            for e in &entries {
                min_res = min_res.min(e.residual);
                report
                    .line()
                    .float("theta", e.theta)
                    .float("S", e.entropy)
                    .float("S_conj", e.entropy_conjugate)
                    .float("residual", e.residual);
            }
            report
                .line()
                .float("min_residual", min_res)
                .bool("pass", min_res >= -tol);
            emit(&report, common.json);
            Ok(exit_on(min_res >= -tol))
        }
        IneqCommand::RenyiUr {
            state,
            theta,
            q,
            tol,
            common,
        } => {
            let tomo = parse_cv_state(&state)?.tomogram()?;
            let qs = parse_f64_list(&q)?;
            let entries = entropy::renyi_ur_check(&tomo, theta, &qs)?;
            let mut report = Report::new();
            let mut min_res = f64::INFINITY;
            for e in &entries {
                min_res = min_res.min(e.residual);
                report.line().float("q", e.q).float("residual", e.residual);
            }
            report
                .line()
                .float("min_residual", min_res)
                .bool("pass", min_res >= -tol);
            emit(&report, common.json);
            Ok(exit_on(min_res >= -tol))
        }
        IneqCommand::SpinQft {
            state,
            samples,
            seed,
            alpha,
            beta,
            common,
        } => {
            let rho = parse_spin_state(&state)?;
            let mut rng = seeded_rng(seed);
            let mut min_res = f64::INFINITY;
            for _ in 0..samples.max(1) {
                let u = haar_unitary(rho.dim(), &mut rng);
                let rep = qft_inequality_check(&rho, &u, alpha, beta)?;
                min_res = min_res.min(rep.min_residual());
            }
            let mut report = Report::new();
            report
                .line()
                .int("dim", rho.dim() as i64)
                .int("samples", samples as i64)
                .float("min_residual", min_res)
                .bool("pass", min_res >= -1e-10);
            emit(&report, common.json);
            Ok(exit_on(min_res >= -1e-10))
        }
        IneqCommand::Subadd {
            state,
            dims,
            samples,
            seed,
            common,
        } => {
            let rho = parse_spin_state(&state)?;
            let dims = resolve_dims(&state, rho.dim(), dims, 2)?;
            let mut rng = seeded_rng(seed);
            let mut frames: Vec<Unitary> = vec![Unitary::identity(rho.dim())];
            for _ in 0..samples {
                frames.push(haar_unitary(rho.dim(), &mut rng));
            }
            let mut min_res = f64::INFINITY;
            for u in &frames {
                let rep = bipartite_subadditivity(&rho, (dims[0], dims[1]), u)?;
                min_res = min_res.min(rep.residual.min(rep.von_neumann_residual));
            }
            let mut report = Report::new();
            report
                .line()
                .int("samples", frames.len() as i64)
                .float("min_residual", min_res)
                .bool("pass", min_res >= -1e-10);
            emit(&report, common.json);
            Ok(exit_on(min_res >= -1e-10))
        }
        IneqCommand::Ssa {
            state,
            dims,
            samples,
            seed,
            common,
        } => {
            let rho = parse_spin_state(&state)?;
            let dims = resolve_dims(&state, rho.dim(), dims, 3)?;
            let mut rng = seeded_rng(seed);
            let mut frames: Vec<Unitary> = vec![Unitary::identity(rho.dim())];
            for _ in 0..samples {
                frames.push(haar_unitary(rho.dim(), &mut rng));
            }
            let mut min_res = f64::INFINITY;
            for u in &frames {
                let rep = tripartite_ssa(&rho, (dims[0], dims[1], dims[2]), u)?;
                min_res = min_res.min(rep.residual.min(rep.von_neumann_residual));
            }
            let mut report = Report::new();
            report
                .line()
                .int("samples", frames.len() as i64)
                .float("min_residual", min_res)
                .bool("pass", min_res >= -1e-10);
            emit(&report, common.json);
            Ok(exit_on(min_res >= -1e-10))
        }
        IneqCommand::Bounds {
            dim,
            samples,
            seed,
            common,
        } => {
            let pair = ObservablePair::standard_vs_qft(dim)?;
            let mut rng = seeded_rng(seed);
            let mut min_res = f64::INFINITY;
            for _ in 0..samples.max(1) {
                let psi = random_pure_state(dim, &mut rng);
                let rep = measurement_bounds(&pair, &psi)?;
                min_res = min_res
                    .min(rep.deutsch_residual)
                    .min(rep.maassen_uffink_residual)
                    .min(rep.mub_residual.unwrap_or(f64::INFINITY));
            }
            let mut report = Report::new();
            report
                .line()
                .int("dim", dim as i64)
                .int("samples", samples as i64)
                .float("min_residual", min_res)
                .bool("pass", min_res >= -1e-12);
            emit(&report, common.json);
            Ok(exit_on(min_res >= -1e-12))
        }
    }
}

fn run_haar(cmd: HaarCommand) -> Result<ExitCode, Error> {
    match cmd {
        HaarCommand::Avg {
            state,
            samples,
            seed,
            renyi,
            common,
        } => {
            let rho = parse_spin_state(&state)?;
            let target = match renyi {
                Some(pair) => {
                    let v = parse_f64_list(&pair)?;
                    if v.len() != 2 {
                        return Err(Error::Parse("--renyi needs alpha,beta".into()));
                    }
                    GroupAverageTarget::RenyiPair(v[0], v[1])
                }
                None => GroupAverageTarget::Shannon,
            };
            let rep = group_average_entropy(&rho, target, samples, seed)?;
            let pass = rep.bound_residual >= -3.0 * rep.stderr
                && rep.column_residual >= -3.0 * rep.column_stderr;
            let mut report = Report::new();
            report
                .line()
                .float("mean", rep.mean)
                .float("stderr", rep.stderr)
                .float("bound_residual", rep.bound_residual)
                .float("column_mean", rep.column_mean)
                .float("column_stderr", rep.column_stderr)
                .float("column_residual", rep.column_residual)
                .bool("pass", pass);
            emit(&report, common.json);
            Ok(exit_on(pass))
        }
    }
}

fn resolve_dims(
    spec: &str,
    dim: usize,
    dims: Option<String>,
    want: usize,
) -> Result<Vec<usize>, Error> {
    let dims = match dims {
        Some(s) => parse_usize_list(&s)?,
        None => default_dims_for(spec, dim),
    };
    if dims.len() != want {
        return Err(Error::Parse(format!(
            "need {want} tensor factors, got {dims:?} (pass --dims)"
        )));
    }
    if dims.iter().product::<usize>() != dim {
        return Err(Error::DimensionMismatch(format!(
            "factors {dims:?} do not multiply to the state dimension {dim}"
        )));
    }
    Ok(dims)
}

fn exit_on(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
