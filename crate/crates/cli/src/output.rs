//! Number formatting, CSV assembly and the self-contained SVG writer.

/// printf %g-style formatting with a given number of significant digits;
/// round-trip safe at 17.
pub fn fmt_g(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let e = format!("{:.*e}", sig - 1, x);
    let (mant_raw, exp_raw) = e.split_once('e').unwrap();
    let exp: i32 = exp_raw.parse().unwrap();
    let mant = mant_raw.trim_end_matches('0').trim_end_matches('.');
    if exp >= -4 && exp < sig as i32 {
        let digits_after = mant.len() as i32
            - if mant.starts_with('-') { 2 } else { 1 }
            - if mant.contains('.') { 1 } else { 0 };
        let prec = (digits_after - exp).max(0) as usize;
        let s = format!("{x:.prec$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{mant}e{exp}")
    }
}

/// 17 significant digits: the round-trip default for all CSV output.
pub fn g17(x: f64) -> String {
    fmt_g(x, 17)
}

/// Assembles a CSV document from a header and pre-formatted rows.
pub fn csv_document(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::with_capacity(rows.len() * 32 + header.len() + 2);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// One plotted series: a polyline when it has many points, a marker when one.
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Series { name: name.into(), points }
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.abs().log10().floor());
    let norm = raw / mag;
    let factor = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let step = nice_step((hi - lo) / 5.0);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        out.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    out
}

/// Renders series into a standalone SVG line/scatter chart.
///
/// `equal_aspect` keeps x and y scales identical (plane figures).
pub fn svg_chart(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[Series],
    equal_aspect: bool,
) -> String {
    const W: f64 = 840.0;
    const H: f64 = 600.0;
    const ML: f64 = 72.0;
    const MR: f64 = 24.0;
    const MT: f64 = 40.0;
    const MB: f64 = 56.0;

    let finite: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter())
        .filter(|p| p.0.is_finite() && p.1.is_finite())
        .copied()
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = finite.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), p| (a.min(p.0), b.max(p.0), c.min(p.1), d.max(p.1)),
    );
    if !x0.is_finite() {
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    if x1 - x0 < 1e-300 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 < 1e-300 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad_x = (x1 - x0) * 0.04;
    let pad_y = (y1 - y0) * 0.04;
    x0 -= pad_x;
    x1 += pad_x;
    y0 -= pad_y;
    y1 += pad_y;
    if equal_aspect {
        let sx = (x1 - x0) / (W - ML - MR);
        let sy = (y1 - y0) / (H - MT - MB);
        let s = sx.max(sy);
        let cx = 0.5 * (x0 + x1);
        let cy = 0.5 * (y0 + y1);
        let hw = 0.5 * s * (W - ML - MR);
        let hh = 0.5 * s * (H - MT - MB);
        x0 = cx - hw;
        x1 = cx + hw;
        y0 = cy - hh;
        y1 = cy + hh;
    }
    let px = |x: f64| ML + (x - x0) / (x1 - x0) * (W - ML - MR);
    let py = |y: f64| H - MB - (y - y0) / (y1 - y0) * (H - MT - MB);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" \
         font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        W / 2.0,
        xml_escape(title)
    ));

    // grid and ticks
    for t in ticks(x0, x1) {
        let x = px(t);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{MT}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#ddd\"/>\n",
            H - MB
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            H - MB + 18.0,
            fmt_g(t, 6)
        ));
    }
    for t in ticks(y0, y1) {
        let y = py(t);
        svg.push_str(&format!(
            "<line x1=\"{ML}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>\n",
            W - MR
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            ML - 6.0,
            y + 4.0,
            fmt_g(t, 6)
        ));
    }
    // zero axes when in range
    if y0 < 0.0 && y1 > 0.0 {
        let y = py(0.0);
        svg.push_str(&format!(
            "<line x1=\"{ML}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#999\"/>\n",
            W - MR
        ));
    }
    if x0 < 0.0 && x1 > 0.0 {
        let x = px(0.0);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{MT}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#999\"/>\n",
            H - MB
        ));
    }
    svg.push_str(&format!(
        "<rect x=\"{ML}\" y=\"{MT}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#333\"/>\n",
        W - ML - MR,
        H - MT - MB
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        W / 2.0,
        H - 12.0,
        xml_escape(xlabel)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
        H / 2.0,
        H / 2.0,
        xml_escape(ylabel)
    ));

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = s
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| (px(x), py(y)))
            .collect();
        if pts.len() == 1 {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{color}\"/>\n",
                pts[0].0, pts[0].1
            ));
        } else {
            let path: Vec<String> =
                pts.iter().map(|p| format!("{:.2},{:.2}", p.0, p.1)).collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.4\"/>\n",
                path.join(" ")
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{color}\">{}</text>\n",
            W - MR - 170.0,
            MT + 18.0 + 18.0 * i as f64,
            xml_escape(&s.name)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_round_trips() {
        for x in [
            0.22903651233853001,
            5000.0,
            -1.25,
            2.4492935982947064e-16,
            1.0 / 3.0,
            9.9e300,
        ] {
            let s = g17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{x} -> {s}");
        }
        assert_eq!(g17(0.0), "0");
        assert_eq!(g17(f64::INFINITY), "inf");
    }

    #[test]
    fn fmt_g_short_forms() {
        assert_eq!(fmt_g(1.25, 17), "1.25");
        assert_eq!(fmt_g(5000.0, 17), "5000");
        assert_eq!(fmt_g(0.05, 3), "0.05");
        assert_eq!(fmt_g(1.0e-9, 3), "1e-9");
    }

    #[test]
    fn svg_is_self_contained() {
        let s = svg_chart(
            "demo",
            "x",
            "y",
            &[Series::new("a", vec![(0.0, 0.0), (1.0, 1.0)])],
            false,
        );
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert!(!s.contains("http://") || s.contains("xmlns"));
    }
}
