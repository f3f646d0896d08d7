//! SVG picture of `ℤ²` in the flat metric preserved by `A`.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use comhnn::criteria::{invariant_form, is_cat0};
use comhnn::{GroupSpec, RatMatrix};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("plots are only drawn for n = 2, found n = {0}")]
    Dimension(usize),
    #[error("the group is not CAT(0): A is not conjugate to an orthogonal matrix")]
    NotCat0,
    #[error("range must be at least 1")]
    Range,
    #[error(transparent)]
    Form(#[from] comhnn::criteria::CriteriaError),
}

type Point = (f64, f64);

fn float(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

/// Upper triangular `R` with `G = RᵀR`.
fn cholesky(g: &RatMatrix) -> [[f64; 2]; 2] {
    let (a, b, d) = (float(&g[(0, 0)]), float(&g[(0, 1)]), float(&g[(1, 1)]));
    let r11 = a.sqrt();
    let r12 = b / r11;
    let r22 = (d - r12 * r12).sqrt();
    [[r11, r12], [0.0, r22]]
}

fn num(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    format!("{:.3}", if r == 0.0 { 0.0 } else { r })
}

struct Frame {
    r: [[f64; 2]; 2],
    scale: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> Point {
        let u = self.r[0][0] * x + self.r[0][1] * y;
        let v = self.r[1][1] * y;
        (SIZE / 2.0 + self.scale * u, SIZE / 2.0 - self.scale * v)
    }
}

fn polygon(out: &mut String, frame: &Frame, columns: &[Vec<f64>], class: &str, fill: &str) {
    let (b1, b2) = (&columns[0], &columns[1]);
    let corners = [
        (0.0, 0.0),
        (b1[0], b1[1]),
        (b1[0] + b2[0], b1[1] + b2[1]),
        (b2[0], b2[1]),
    ];
    let points: Vec<String> = corners
        .iter()
        .map(|&(x, y)| {
            let (px, py) = frame.map(x, y);
            format!("{},{}", num(px), num(py))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"  <polygon class="{class}" points="{}" fill="{fill}" fill-opacity="0.35" stroke="{fill}" stroke-width="1.5"/>"#,
        points.join(" ")
    );
}

fn lattice_columns(spec: &GroupSpec, second: bool) -> Vec<Vec<f64>> {
    let l = if second { spec.lsecond() } else { spec.lprime() };
    l.basis_vectors()
        .iter()
        .map(|v| v.iter().map(|x| x.to_f64().expect("small entry")).collect())
        .collect()
}

/// The label of the rotation `A` performs in the flat metric.
pub fn angle_label(spec: &GroupSpec) -> String {
    let a = spec.matrix();
    if a.det().is_ok_and(|d| d.is_one()) {
        let half = a.trace() / BigRational::from_integer(2.into());
        format!("arccos({half})")
    } else {
        "reflection".to_string()
    }
}

/// Renders the dots of `ℤ²` in `[-range, range]²`, the fundamental domains of
/// `L'` and `L''` and the angle from `e₁` to `A·e₁`.
pub fn render_svg(spec: &GroupSpec, range: u32) -> Result<String, PlotError> {
    if spec.dim() != 2 {
        return Err(PlotError::Dimension(spec.dim()));
    }
    if !is_cat0(spec) {
        return Err(PlotError::NotCat0);
    }
    if range == 0 {
        return Err(PlotError::Range);
    }
    let g = invariant_form(spec.matrix())?;
    let r = cholesky(&g);
    let lprime = lattice_columns(spec, false);
    let lsecond = lattice_columns(spec, true);
    let rf = f64::from(range);

    let mut extent: f64 = 0.0;
    let unit = Frame { r, scale: 1.0 };
    let mut extend = |x: f64, y: f64| {
        let (px, py) = unit.map(x, y);
        extent = extent.max((px - SIZE / 2.0).abs()).max((py - SIZE / 2.0).abs());
    };
    for (x, y) in [(rf, rf), (rf, -rf), (-rf, rf), (-rf, -rf)] {
        extend(x, y);
    }
    for cols in [&lprime, &lsecond] {
        extend(cols[0][0], cols[0][1]);
        extend(cols[1][0], cols[1][1]);
        extend(cols[0][0] + cols[1][0], cols[0][1] + cols[1][1]);
    }
    let frame = Frame {
        r,
        scale: (SIZE / 2.0 - MARGIN) / extent,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(out, "  <title>G(A, L') with A = {}</title>", spec.matrix());
    let _ = writeln!(out, r#"  <rect width="{s}" height="{s}" fill="white"/>"#, s = SIZE);
    polygon(&mut out, &frame, &lprime, "lprime", "#4c72b0");
    polygon(&mut out, &frame, &lsecond, "lsecond", "#dd8452");

    let radius = 0.6 * frame.scale.min(SIZE / 8.0);
    let a = spec.matrix();
    let ae1 = (float(&a[(0, 0)]), float(&a[(1, 0)]));
    let (ox, oy) = frame.map(0.0, 0.0);
    let direction = |(x, y): Point| {
        let (px, py) = frame.map(x, y);
        let len = ((px - ox).powi(2) + (py - oy).powi(2)).sqrt();
        ((px - ox) / len, (py - oy) / len)
    };
    let (u, v) = (direction((1.0, 0.0)), direction(ae1));
    let start = (ox + radius * u.0, oy + radius * u.1);
    let end = (ox + radius * v.0, oy + radius * v.1);
    // screen y points down, so a positive cross product is a clockwise turn
    let sweep = u8::from(u.0 * v.1 - u.1 * v.0 > 0.0);
    let _ = writeln!(
        out,
        r#"  <path class="angle" d="M {} {} A {} {} 0 0 {sweep} {} {}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        num(start.0),
        num(start.1),
        num(radius),
        num(radius),
        num(end.0),
        num(end.1)
    );
    let mid = (u.0 + v.0, u.1 + v.1);
    let mid_len = (mid.0 * mid.0 + mid.1 * mid.1).sqrt();
    let label_dir = if mid_len < 1e-9 { (-u.1, u.0) } else { (mid.0 / mid_len, mid.1 / mid_len) };
    let _ = writeln!(
        out,
        r#"  <text class="angle" x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
        num(ox + 1.3 * radius * label_dir.0),
        num(oy + 1.3 * radius * label_dir.1),
        angle_label(spec)
    );

    let range = i64::from(range);
    for i in -range..=range {
        for j in -range..=range {
            let (px, py) = frame.map(i as f64, j as f64);
            let _ = writeln!(out, r#"  <circle cx="{}" cy="{}" r="3" fill="black"/>"#, num(px), num(py));
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
