//! Figure builders: each id maps to the data series behind one plot.

use zeta_spiral::types::StripPoint;
use zeta_spiral::{afe, chi, spiral, summation, zeros};

use crate::output::Series;

pub const FIGURE_IDS: [&str; 13] = [
    "s1_1",
    "s3_1",
    "s7_1",
    "absolute_angles",
    "relative_angles",
    "curvature_radius",
    "average_vectors",
    "reverse_spiral",
    "ratio_chi",
    "lambda_func",
    "projections",
    "delta_varphi_r",
    "frac_part",
];

const T_LOW: f64 = 279.229250928;
const T_MID: f64 = 959.459168807;
const S_SYSTEM: (f64, f64) = (0.25, 5002.981);

pub struct Figure {
    pub title: String,
    pub xlabel: &'static str,
    pub ylabel: &'static str,
    pub series: Vec<Series>,
    /// Plane figures keep both axes at the same scale.
    pub equal_aspect: bool,
}

impl Figure {
    fn plane(title: String, series: Vec<Series>) -> Self {
        Figure { title, xlabel: "Re", ylabel: "Im", series, equal_aspect: true }
    }
}

/// Number of term vectors that completes the first full twist: t/pi rounded
/// up to a multiple of ten.
fn full_twist_count(t: f64) -> u64 {
    let raw = t / std::f64::consts::PI;
    ((raw / 10.0).ceil() * 10.0) as u64
}

fn polyline_with_zeta(sigma: f64, t: f64) -> Result<Figure, zeta_spiral::Error> {
    let s = StripPoint::new(sigma, t);
    let count = full_twist_count(t);
    let sums = spiral::partial_sums(s, count);
    let mut pts = vec![(0.0, 0.0)];
    pts.extend(sums.iter().map(|p| (p.x, p.y)));
    let z = summation::euler_maclaurin_zeta(s)?.value;
    Ok(Figure::plane(
        format!("Partial sums, s = {sigma}+{t}i"),
        vec![
            Series::new(format!("first {count} partial sums"), pts),
            Series::new("zeta(s)", vec![(z.x, z.y)]),
        ],
    ))
}

fn profile_figure(
    id: &str,
    title: &str,
    ylabel: &'static str,
    pick: impl Fn(&spiral::SpiralProfile) -> f64,
) -> Result<Figure, zeta_spiral::Error> {
    let s = StripPoint::new(0.75, T_MID);
    let prof = spiral::spiral_profile(s, full_twist_count(T_MID))?;
    let pts: Vec<(f64, f64)> = prof.iter().map(|p| (p.n as f64, pick(p))).collect();
    Ok(Figure {
        title: format!("{title}, s = 0.75+{T_MID}i"),
        xlabel: "n",
        ylabel,
        series: vec![Series::new(id, pts)],
        equal_aspect: false,
    })
}

pub fn build(id: &str) -> Result<Figure, zeta_spiral::Error> {
    match id {
        "s1_1" => polyline_with_zeta(1.25, T_LOW),
        "s3_1" => polyline_with_zeta(0.75, T_LOW),
        "s7_1" => polyline_with_zeta(0.75, T_MID),
        "absolute_angles" => {
            profile_figure("phi_n", "Absolute angles of the term vectors", "phi_n, rad", |p| p.phi)
        }
        "relative_angles" => profile_figure(
            "dphi_n",
            "Relative angles of the term vectors",
            "dphi_n, rad",
            |p| p.dphi,
        ),
        "curvature_radius" => profile_figure(
            "r_n",
            "Curvature radius of the partial-sum spiral",
            "r_n",
            |p| p.curvature_radius,
        ),
        "average_vectors" => {
            let s = StripPoint::new(S_SYSTEM.0, S_SYSTEM.1);
            let centers = afe::spiral_centers(s, 7)?;
            let pts: Vec<(f64, f64)> = centers.iter().map(|c| (c.x, c.y)).collect();
            Ok(Figure::plane(
                format!("Spiral centers and middle vectors, s = {}+{}i", S_SYSTEM.0, S_SYSTEM.1),
                vec![
                    Series::new("centers (middle-vector chain)", pts),
                    Series::new("zeta(s)", {
                        let z = summation::euler_maclaurin_zeta(s)?.value;
                        vec![(z.x, z.y)]
                    }),
                ],
            ))
        }
        "reverse_spiral" => {
            let s = StripPoint::new(S_SYSTEM.0, S_SYSTEM.1);
            let sys = afe::build_system(s)?;
            let z = summation::euler_maclaurin_zeta(s)?.value;
            let mut walk = vec![(z.x, z.y)];
            let mut cur = z;
            for y in &sys.y {
                cur = cur - *y;
                walk.push((cur.x, cur.y));
            }
            Ok(Figure::plane(
                format!("Inverse spiral walk, s = {}+{}i", S_SYSTEM.0, S_SYSTEM.1),
                vec![
                    Series::new("zeta(s) - sum Y_n", walk),
                    Series::new("origin", vec![(0.0, 0.0)]),
                ],
            ))
        }
        "ratio_chi" => {
            let mut series = Vec::new();
            for k in 1..=9 {
                let t = 1000.0 * k as f64;
                let mut pts = Vec::new();
                for i in 0..=10 {
                    let sigma = i as f64 * 0.1;
                    let cmp = chi::chi_compare(StripPoint::new(sigma, t))?;
                    pts.push((sigma, cmp.ratio_modulus));
                }
                series.push(Series::new(format!("t = {t}"), pts));
            }
            Ok(Figure {
                title: "Exact-to-approximate chi modulus ratio".into(),
                xlabel: "sigma",
                ylabel: "|chi| / |chi~|",
                series,
                equal_aspect: false,
            })
        }
        "lambda_func" => {
            let t = 5000.0;
            let mut pts = Vec::new();
            for i in 0..=20 {
                let sigma = i as f64 * 0.05;
                let cmp = chi::chi_compare(StripPoint::new(sigma, t))?;
                pts.push((sigma, cmp.lambda));
            }
            Ok(Figure {
                title: format!("lambda(sigma) at t = {t}"),
                xlabel: "sigma",
                ylabel: "lambda",
                series: vec![Series::new("lambda", pts)],
                equal_aspect: false,
            })
        }
        "projections" => {
            let sigma = 0.25;
            let lambda = chi::chi_compare(StripPoint::new(sigma, 5005.0))?.lambda;
            let mut zl = Vec::new();
            let mut zm = Vec::new();
            for i in 0..=1000 {
                let t = 5000.0 + 0.01 * i as f64;
                let (l, m) = zeros::projections_with_lambda(StripPoint::new(sigma, t), lambda)?;
                zl.push((t, l));
                zm.push((t, m));
            }
            Ok(Figure {
                title: format!("Frame projections of zeta, sigma = {sigma}"),
                xlabel: "t",
                ylabel: "projection",
                series: vec![Series::new("zeta_L", zl), Series::new("zeta_M", zm)],
                equal_aspect: false,
            })
        }
        "delta_varphi_r" => {
            // ordinate where zeta_L vanishes just past base point 4525
            let sigma0 = 0.35;
            let lambda = chi::chi_compare(StripPoint::new(sigma0, 5006.0))?.lambda;
            let zl = |t: f64| -> f64 {
                zeros::projections_with_lambda(StripPoint::new(sigma0, t), lambda)
                    .map(|(l, _)| l)
                    .unwrap_or(f64::NAN)
            };
            let (mut lo, mut hi) = (5005.9, 5006.4);
            let f_lo = zl(lo);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if zl(mid) * f_lo > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t0 = 0.5 * (lo + hi);
            let mut pts = Vec::new();
            for i in 0..=20 {
                let sigma = i as f64 * 0.05;
                let s = StripPoint::new(sigma, t0);
                let sys = afe::build_system(s)?;
                let d = afe::decompose(&sys, summation::zeta_oracle(s)?);
                pts.push((sigma, d.delta_phi_r));
            }
            Ok(Figure {
                title: format!("Remainder deviation angle at t = {t0:.4}"),
                xlabel: "sigma",
                ylabel: "delta_phi_R, rad",
                series: vec![Series::new("delta_phi_R", pts)],
                equal_aspect: false,
            })
        }
        "frac_part" => {
            let mut pts = Vec::new();
            for i in 0..=1000 {
                let t = 5000.0 + 0.1 * i as f64;
                pts.push((t, (t / (2.0 * std::f64::consts::PI)).sqrt().fract()));
            }
            Ok(Figure {
                title: "Fractional part of sqrt(t/2pi)".into(),
                xlabel: "t",
                ylabel: "frac",
                series: vec![Series::new("frac sqrt(t/2pi)", pts)],
                equal_aspect: false,
            })
        }
        other => Err(zeta_spiral::Error::Domain(format!("unknown figure id `{other}`"))),
    }
}

/// CSV fallback: the same series as `series,x,y` rows.
pub fn figure_csv(fig: &Figure) -> String {
    let mut rows = Vec::new();
    for s in &fig.series {
        for &(x, y) in &s.points {
            rows.push(vec![s.name.clone(), crate::output::g17(x), crate::output::g17(y)]);
        }
    }
    crate::output::csv_document("series,x,y", &rows)
}
