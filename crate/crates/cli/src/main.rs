//! zspiral: command-line front end.
//!
//! Exit codes: 0 ok, 2 domain/unsupported region, 3 i/o, 4 usage.

mod figures;
mod output;

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{csv_document, fmt_g, g17};
use zeta_spiral::types::{Method, StripPoint};
use zeta_spiral::{afe, chi, summation, zeros};

#[derive(Parser)]
#[command(name = "zspiral", version, about = "Vector-geometric zeta evaluation and zero scans")]
struct Cli {
    /// Optional key=value defaults; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv for data commands, csv or svg for figures.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Default, Clone)]
struct PointArgs {
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate zeta by one of the methods and print a single line.
    Eval {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        method: Option<String>,
        /// Number of terms for method partial_sum.
        #[arg(long)]
        m: Option<u64>,
        /// Cesaro window override: first partial-sum vertex.
        #[arg(long)]
        start: Option<u64>,
        /// Cesaro window override: vertex count.
        #[arg(long)]
        width: Option<u64>,
    },
    /// Term vectors, partial sums and spiral geometry as CSV.
    Spiral {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        count: Option<u64>,
    },
    /// The finite vector system at s as CSV.
    Afe {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Chi diagnostics over the sigma grid at one height (or the default
    /// t = 1000..9000 grid when --t is omitted).
    Chi {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Scan for critical-line zeros.
    Zeros {
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
    },
    /// Base points with kinds, interval classes and zero counts.
    Basepoints {
        #[arg(long = "from-k")]
        from_k: Option<u64>,
        #[arg(long = "to-k")]
        to_k: Option<u64>,
    },
    /// Zero census up to height T: counting formula vs sign-change scan.
    Census {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        step: Option<f64>,
    },
    /// Emit the data behind one named figure as SVG (or CSV).
    Figure {
        #[arg(long)]
        id: Option<String>,
    },
}

enum AppError {
    Domain(String),
    Io(String),
    Usage(String),
}

impl From<zeta_spiral::Error> for AppError {
    fn from(e: zeta_spiral::Error) -> Self {
        AppError::Domain(e.to_string())
    }
}

type AppResult<T> = Result<T, AppError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(4) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(AppError::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(AppError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}

/// key=value lines; '#' starts a comment.
fn load_config(path: Option<&PathBuf>) -> AppResult<HashMap<String, String>> {
    let mut map = HashMap::new();
    if let Some(p) = path {
        let text = std::fs::read_to_string(p)
            .map_err(|e| AppError::Io(format!("cannot read config {}: {e}", p.display())))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(AppError::Usage(format!("bad config line `{line}` (want key=value)")));
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok(map)
}

struct Resolver {
    config: HashMap<String, String>,
}

impl Resolver {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> AppResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| AppError::Usage(format!("config {key}={raw} does not parse"))),
        }
    }

    fn require<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> AppResult<T> {
        self.get(flag, key)?
            .ok_or_else(|| AppError::Usage(format!("missing required value --{key}")))
    }
}

fn emit(out: Option<&PathBuf>, content: &str) -> AppResult<()> {
    match out {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| AppError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> AppResult<()> {
    let r = Resolver { config: load_config(cli.config.as_ref())? };
    if let Some(n) = r.get(cli.threads, "threads")? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| AppError::Usage(format!("thread pool: {e}")))?;
    }
    let format = r.get(cli.format.clone(), "format")?.unwrap_or_else(|| "csv".to_string());
    if format != "csv" && format != "svg" {
        return Err(AppError::Usage(format!("unknown format `{format}` (want csv or svg)")));
    }
    let out = cli.out.clone();

    match cli.cmd {
        Cmd::Eval { point, method, m, start, width } => {
            let sigma = r.require(point.sigma, "sigma")?;
            let t = r.require(point.t, "t")?;
            let method: Method = r
                .require(method, "method")?
                .parse()
                .map_err(|e: String| AppError::Usage(e))?;
            let s = strip_point(sigma, t)?;
            let z = match method {
                Method::PartialSum => {
                    let m = r.get(m, "m")?.unwrap_or(10_000);
                    let v = zeta_spiral::spiral::partial_sum(s, m);
                    zeta_spiral::ZetaValue {
                        value: v,
                        method: Method::PartialSum,
                        est_error: f64::NAN,
                    }
                }
                Method::Cesaro => {
                    let window = match (r.get(start, "start")?, r.get(width, "width")?) {
                        (Some(a), Some(w)) => Some(summation::CesaroWindow::new(a, w)),
                        (None, None) => None,
                        _ => {
                            return Err(AppError::Usage(
                                "cesaro window override needs both --start and --width".into(),
                            ))
                        }
                    };
                    summation::cesaro_zeta_checked(s, window)?
                }
                Method::EulerMaclaurin => summation::euler_maclaurin_zeta(s)?,
                Method::Afe => {
                    let sys = afe::build_system(s)?;
                    let inv = afe::invariants(&sys);
                    let total = inv.l1 + inv.l2 + sys.r_leading;
                    let oracle = summation::zeta_oracle(s)?;
                    zeta_spiral::ZetaValue {
                        value: total,
                        method: Method::Afe,
                        est_error: total.distance(&oracle),
                    }
                }
            };
            let err = if z.est_error.is_nan() { "n/a".to_string() } else { fmt_g(z.est_error, 3) };
            let line = format!(
                "re={} im={} est_error={} method={}\n",
                g17(z.value.x),
                g17(z.value.y),
                err,
                z.method
            );
            emit(out.as_ref(), &line)
        }
        Cmd::Spiral { point, count } => {
            let sigma = r.require(point.sigma, "sigma")?;
            let t = r.require(point.t, "t")?;
            let count = r.get(count, "count")?.unwrap_or(90);
            let s = strip_point(sigma, t)?;
            let prof = zeta_spiral::spiral::spiral_profile(s, count)?;
            let rows: Vec<Vec<String>> = prof
                .iter()
                .map(|p| {
                    vec![
                        p.n.to_string(),
                        g17(p.vector.x),
                        g17(p.vector.y),
                        g17(p.partial_sum.x),
                        g17(p.partial_sum.y),
                        g17(p.phi),
                        g17(p.dphi),
                        g17(p.curvature_radius),
                    ]
                })
                .collect();
            emit(out.as_ref(), &csv_document("n,x,y,px,py,phi,dphi,r", &rows))
        }
        Cmd::Afe { point } => {
            let sigma = r.require(point.sigma, "sigma")?;
            let t = r.require(point.t, "t")?;
            let s = strip_point(sigma, t)?;
            let sys = afe::build_system(s)?;
            let oracle = summation::zeta_oracle(s)?;
            let d = afe::decompose(&sys, oracle);
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (i, v) in sys.x.iter().enumerate() {
                rows.push(vec!["X".into(), (i + 1).to_string(), g17(v.x), g17(v.y)]);
            }
            for (i, v) in sys.y.iter().enumerate() {
                rows.push(vec!["Y".into(), (i + 1).to_string(), g17(v.x), g17(v.y)]);
            }
            rows.push(vec!["R".into(), "0".into(), g17(sys.r_leading.x), g17(sys.r_leading.y)]);
            let mut doc = csv_document("kind,n,x,y", &rows);
            doc.push_str("L1x,L1y,L2x,L2y,phiL,phiM,zetaL,zetaM\n");
            doc.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                g17(d.l1.x),
                g17(d.l1.y),
                g17(d.l2.x),
                g17(d.l2.y),
                g17(sys.phi_l),
                g17(sys.phi_m),
                g17(d.zeta_l),
                g17(d.zeta_m)
            ));
            emit(out.as_ref(), &doc)
        }
        Cmd::Chi { point } => {
            let heights: Vec<f64> = match r.get(point.t, "t")? {
                Some(t) => vec![t],
                None => (1..=9).map(|k| 1000.0 * k as f64).collect(),
            };
            let mut rows = Vec::new();
            for &t in &heights {
                for i in 0..=10 {
                    let sigma = i as f64 * 0.1;
                    let cmp = chi::chi_compare(strip_point(sigma, t)?)?;
                    let approx = chi::chi_approx(StripPoint::new(sigma, t));
                    rows.push(vec![
                        g17(sigma),
                        g17(t),
                        g17(cmp.ratio_modulus * approx.modulus),
                        g17(approx.modulus),
                        g17(cmp.delta_phi),
                        g17(cmp.lambda),
                    ]);
                }
            }
            emit(out.as_ref(), &csv_document("sigma,t,mod_exact,mod_approx,dphi,lambda", &rows))
        }
        Cmd::Zeros { from, to, step } => {
            let from = r.require(from, "from")?;
            let to = r.require(to, "to")?;
            let step = r.get(step, "step")?.unwrap_or(0.05);
            let zs = zeros::find_zeros(from, to, step)?;
            let rows: Vec<Vec<String>> = zs
                .iter()
                .map(|z| vec![g17(z.t), g17(z.bracket.0), g17(z.bracket.1), g17(z.residual)])
                .collect();
            emit(out.as_ref(), &csv_document("t,lo,hi,residual", &rows))
        }
        Cmd::Basepoints { from_k, to_k } => {
            let from_k = r.require(from_k, "from-k")?;
            let to_k = r.require(to_k, "to-k")?;
            if !(from_k >= 1 && to_k > from_k) {
                return Err(AppError::Usage(format!(
                    "need 1 <= from-k < to-k, got {from_k}..{to_k}"
                )));
            }
            let recs = zeros::classify_intervals(from_k, to_k)?;
            let last = zeros::base_point(to_k);
            let mut rows: Vec<Vec<String>> = recs
                .iter()
                .map(|rec| {
                    let bp = zeros::base_point(rec.from_k);
                    vec![
                        rec.from_k.to_string(),
                        g17(bp.t),
                        bp.kind.name().into(),
                        rec.kind.name().into(),
                        rec.zeros.len().to_string(),
                    ]
                })
                .collect();
            rows.push(vec![
                last.k.to_string(),
                g17(last.t),
                last.kind.name().into(),
                String::new(),
                String::new(),
            ]);
            emit(out.as_ref(), &csv_document("k,t,kind,interval_kind,zeros_in_interval", &rows))
        }
        Cmd::Census { point, step } => {
            let t_cap = r.require(point.t, "t")?;
            let step = r.get(step, "step")?.unwrap_or(0.05);
            let n0 = zeros::count_zeros_line(t_cap)?;
            let census = zeros::count_sign_changes(6.5, t_cap, step)?;
            let rvm = zeros::riemann_von_mangoldt(t_cap)?;
            let rows = vec![vec![
                g17(t_cap),
                n0.to_string(),
                census.to_string(),
                g17(rvm.main),
                g17(rvm.s_bound),
            ]];
            emit(out.as_ref(), &csv_document("T,N0,census_count,rvm_main,s_bound", &rows))
        }
        Cmd::Figure { id } => {
            let id = r.require(id, "id")?;
            if !figures::FIGURE_IDS.contains(&id.as_str()) {
                return Err(AppError::Usage(format!(
                    "unknown figure id `{id}`; valid ids: {}",
                    figures::FIGURE_IDS.join(", ")
                )));
            }
            let fig = figures::build(&id)?;
            let content = if format == "svg" {
                output::svg_chart(&fig.title, fig.xlabel, fig.ylabel, &fig.series, fig.equal_aspect)
            } else {
                figures::figure_csv(&fig)
            };
            let default_name = PathBuf::from(format!("figure_{id}.{format}"));
            let target = out.clone().unwrap_or(default_name);
            emit(Some(&target), &content)
        }
    }
}

fn strip_point(sigma: f64, t: f64) -> AppResult<StripPoint> {
    if !sigma.is_finite() || !t.is_finite() || t < 0.0 {
        return Err(AppError::Domain(format!(
            "point sigma={sigma}, t={t} is outside the supported half plane"
        )));
    }
    Ok(StripPoint::new(sigma, t))
}
