//! Figure and evaluation commands behind the `spinor-squeeze` binary. Each
//! figure command returns its table together with the largest deviation
//! between the closed-form columns and the brute-force pipeline.

use std::fmt::Write as _;

use serde::Serialize;

use crate::correlations::{canonical_correlations, mutual_correlations, CorrelationTensor, FrameTag};
use crate::dynamics::{dyn_correlations, evolve_closed, evolve_oracle, initial_state, q_dynamic};
use crate::error::{Error, Result};
use crate::frames::{lakin_angles, LakinAngles, Subsystem};
use crate::scalar::ci;
use crate::frames::DEGENERATE_MEAN;
use crate::spinor::{canonical_form, is_entangled, Classification};
use crate::squeezing::{q_canonical, q_optimized, squeezing_report, OptimizedQ, SqueezingReport};
use crate::State;

pub const DEFAULT_STEPS: usize = 181;
pub const DEFAULT_TOL: f64 = 1e-8;
const SIG_DIGITS: usize = 12;
/// Default precision assumed for hand-typed amplitudes in `eval`.
pub const DEFAULT_RESOLUTION: f64 = 1e-6;
const EVAL_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Gnuplot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVar {
    Theta,
    Tau,
}

/// Uniform sweep of one angle (radians) with the other held at `fixed`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub fixed: Option<f64>,
}

impl SweepSpec {
    pub fn new(variable: SweepVar, start: f64, stop: f64, steps: usize, fixed: Option<f64>) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Input(format!("steps must be at least 2, got {steps}")));
        }
        if !(start <= stop) {
            return Err(Error::Input(format!("sweep start {start} exceeds stop {stop}")));
        }
        Ok(Self {
            variable,
            start,
            stop,
            steps,
            fixed,
        })
    }

    /// Grid points, endpoints included exactly.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.steps - 1;
        (0..self.steps).map(move |i| {
            if i == n {
                self.stop
            } else {
                self.start + (self.stop - self.start) * i as f64 / n as f64
            }
        })
    }
}

/// Formats with 12 significant digits, `%g` style; `-0` prints as `0`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    // rounding may push the mantissa to 10.0; trust the formatter's exponent
    let (mant, e) = sci.split_once('e').unwrap();
    let e: i32 = e.parse().unwrap();
    if (-5..SIG_DIGITS as i32).contains(&e) {
        let decimals = (SIG_DIGITS as i32 - 1 - e).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v))
    } else {
        let sign = if e < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mant), sign, e.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub footer: Vec<String>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let (sep, head_prefix) = match format {
            OutputFormat::Csv => (",", ""),
            OutputFormat::Gnuplot => (" ", "# "),
        };
        let mut out = String::new();
        let _ = writeln!(out, "{head_prefix}{}", self.header.join(sep));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
            let _ = writeln!(out, "{}", cells.join(sep));
        }
        for f in &self.footer {
            let _ = writeln!(out, "# {f}");
        }
        out
    }
}

/// A table plus its closed-form vs pipeline cross-check.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureOutput {
    pub table: Table,
    pub max_deviation: f64,
}

impl FigureOutput {
    pub fn within(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

fn theta_sweep(steps: usize) -> Result<SweepSpec> {
    SweepSpec::new(SweepVar::Theta, 0.0, std::f64::consts::PI, steps, None)
}

/// Squeezing margins of the canonical family against `theta`.
pub fn cmd_fig1(steps: usize) -> Result<FigureOutput> {
    let mut table = Table::new(&["theta_deg", "q_x", "q_y"]);
    let mut dev = 0.0f64;
    for theta in theta_sweep(steps)?.points() {
        let (qx, qy) = q_canonical(theta);
        let r = squeezing_report(&State::canonical(theta));
        dev = dev.max((qx - r.q_x).abs()).max((qy - r.q_y).abs());
        table.rows.push(vec![theta.to_degrees(), qx, qy]);
    }
    Ok(FigureOutput {
        table,
        max_deviation: dev,
    })
}

/// Canonical-family correlations alongside the squeezing margins.
pub fn cmd_fig2(steps: usize) -> Result<FigureOutput> {
    let mut table = Table::new(&["theta_deg", "d_xx", "d_yy", "d_zz", "q_x", "q_y"]);
    let mut dev = 0.0f64;
    for theta in theta_sweep(steps)?.points() {
        let (qx, qy) = q_canonical(theta);
        let d = canonical_correlations(theta);
        let s = State::canonical(theta);
        let r = squeezing_report(&s);
        dev = dev
            .max((qx - r.q_x).abs())
            .max((qy - r.q_y).abs())
            .max(d.max_abs_diff(&mutual_correlations(&s, FrameTag::Lakin)));
        table.rows.push(vec![theta.to_degrees(), d.d[0][0], d.d[1][1], d.d[2][2], qx, qy]);
    }
    Ok(FigureOutput {
        table,
        max_deviation: dev,
    })
}

/// Time-dependent margins against `theta` at a fixed `tau` (degrees).
pub fn cmd_fig3(tau_deg: f64, steps: usize) -> Result<FigureOutput> {
    let tau = tau_deg.to_radians();
    let mut table = Table::new(&["theta_deg", "q_x_t", "q_y_t"]);
    let mut dev = 0.0f64;
    for theta in theta_sweep(steps)?.points() {
        let (qx, qy) = q_dynamic(theta, tau);
        let r = squeezing_report(&evolve_closed(theta, tau));
        dev = dev.max((qx - r.q_x).abs()).max((qy - r.q_y).abs());
        table.rows.push(vec![theta.to_degrees(), qx, qy]);
    }
    Ok(FigureOutput {
        table,
        max_deviation: dev,
    })
}

/// Time-dependent Lakin-frame correlations at a fixed `tau` (degrees).
/// `d_x1y2` is identically zero and left out.
pub fn cmd_fig4(tau_deg: f64, steps: usize) -> Result<FigureOutput> {
    let tau = tau_deg.to_radians();
    let mut table = Table::new(&["theta_deg", "d_x1x2", "d_y1y2", "d_z1z2", "d_x1z2", "q_x_t", "q_y_t"]);
    let mut dev = 0.0f64;
    for theta in theta_sweep(steps)?.points() {
        let (qx, qy) = q_dynamic(theta, tau);
        let d = dyn_correlations(theta, tau);
        let s = evolve_closed(theta, tau);
        let r = squeezing_report(&s);
        dev = dev
            .max((qx - r.q_x).abs())
            .max((qy - r.q_y).abs())
            .max(d.max_abs_diff(&mutual_correlations(&s, FrameTag::Lakin)));
        table
            .rows
            .push(vec![theta.to_degrees(), d.d[0][0], d.d[1][1], d.d[2][2], d.d[0][2], qx, qy]);
    }
    Ok(FigureOutput {
        table,
        max_deviation: dev,
    })
}

/// Time series from 0 to `t` of the evolved tilted product state.
pub fn cmd_evolve(theta_deg: f64, xi: f64, t: f64, steps: usize) -> Result<FigureOutput> {
    if !(t >= 0.0) {
        return Err(Error::Input(format!("t must be non-negative, got {t}")));
    }
    let theta = theta_deg.to_radians();
    let sweep = SweepSpec::new(SweepVar::Tau, 0.0, t, steps, Some(theta))?;
    let start = initial_state(theta);
    let mut table = Table::new(&[
        "t", "tau", "a_pp_re", "a_pp_im", "a_pm_re", "a_pm_im", "a_mp_re", "a_mp_im", "a_mm_re", "a_mm_im",
        "oracle_dev", "q_x_t", "q_y_t", "det_abs",
    ]);
    let mut dev = 0.0f64;
    for ti in sweep.points() {
        let tau = xi * ti;
        let closed = evolve_closed(theta, tau);
        let d = evolve_oracle(&start, xi, ti).distance(&closed);
        dev = dev.max(d);
        let (qx, qy) = q_dynamic(theta, tau);
        let mut row = vec![ti, tau];
        for a in closed.amps() {
            row.push(a.re);
            row.push(a.im);
        }
        row.extend([d, qx, qy, closed.det().norm()]);
        table.rows.push(row);
    }
    table.footer.push(format!("max_divergence={}", fmt_num(dev)));
    Ok(FigureOutput {
        table,
        max_deviation: dev,
    })
}

/// Eight whitespace-separated reals, `re im` per amplitude in basis order.
pub fn parse_amps(s: &str) -> Result<[f64; 8]> {
    let vals: Vec<f64> = s
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|e| Error::Input(format!("bad amplitude {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    vals.try_into()
        .map_err(|v: Vec<f64>| Error::Input(format!("expected 8 reals, got {}", v.len())))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationSummary {
    pub label: String,
    pub margin: Option<f64>,
    pub near_boundary: bool,
    pub theta_c: Option<f64>,
    pub theta_full: Option<f64>,
    pub detail: Option<Classification<f64>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub resolution: f64,
    /// `q > resolution`; the raw squeezing flags use the library threshold.
    pub verdict_squeezed: [bool; 2],
    pub amps: [[f64; 2]; 4],
    pub det: [f64; 2],
    pub det_abs: f64,
    pub entangled: bool,
    pub classification: ClassificationSummary,
    pub lakin_angles: [Option<LakinAngles<f64>>; 2],
    pub squeezing: SqueezingReport<f64>,
    pub correlations_lab: CorrelationTensor<f64>,
    pub correlations_lakin: CorrelationTensor<f64>,
    pub optimized: OptimizedQ<f64>,
}

fn near_boundary(cls: &Classification<f64>, tol: f64) -> bool {
    let rel = 0.1;
    match cls {
        Classification::Product { margin } => *margin < rel * tol,
        Classification::Singlet { margin } => *margin < rel * DEGENERATE_MEAN,
        Classification::Canonical(cf) => cf.margin < tol.max(DEGENERATE_MEAN),
    }
}

/// Evaluates a user-supplied state.
///
/// `resolution` is the precision of the typed amplitudes: it serves as the
/// classification tolerance and as the margin `q` must clear for the
/// squeezing verdict. The library default for exact inputs is
/// [`DEFAULT_CLASSIFY_TOL`](crate::spinor::DEFAULT_CLASSIFY_TOL).
pub fn cmd_eval(raw: [f64; 8], resolution: f64) -> Result<EvalReport> {
    if !(resolution > 0.0) {
        return Err(Error::Input(format!("resolution must be positive, got {resolution}")));
    }
    let amps = [0, 1, 2, 3].map(|k| ci(raw[2 * k], raw[2 * k + 1]));
    let s = State::normalized(amps)?;
    let (entangled, det) = is_entangled(&s, resolution);
    let classification = match canonical_form(&s, resolution) {
        Ok(cls) => {
            let (theta_c, theta_full) = match &cls {
                Classification::Canonical(cf) => (Some(cf.theta_c), Some(cf.theta_full)),
                _ => (None, None),
            };
            ClassificationSummary {
                label: cls.label().to_string(),
                margin: Some(cls.margin()),
                near_boundary: near_boundary(&cls, resolution),
                theta_c,
                theta_full,
                detail: Some(cls),
                error: None,
            }
        }
        Err(e) => ClassificationSummary {
            label: "unresolved".to_string(),
            margin: match e {
                Error::AmbiguousCase { margin, .. } | Error::Unclassifiable { margin } => Some(margin),
                _ => None,
            },
            near_boundary: true,
            theta_c: None,
            theta_full: None,
            detail: None,
            error: Some(e.to_string()),
        },
    };
    let squeezing = squeezing_report(&s);
    Ok(EvalReport {
        resolution,
        verdict_squeezed: [squeezing.q_x > resolution, squeezing.q_y > resolution],
        amps: s.amps().map(|a| [a.re, a.im]),
        det: [det.re, det.im],
        det_abs: det.norm(),
        entangled,
        classification,
        lakin_angles: [lakin_angles(&s, Subsystem::One), lakin_angles(&s, Subsystem::Two)],
        squeezing,
        correlations_lab: mutual_correlations(&s, FrameTag::Lab),
        correlations_lakin: mutual_correlations(&s, FrameTag::Lakin),
        optimized: q_optimized(&s, EVAL_GRID)?,
    })
}

fn fmt_tensor(out: &mut String, name: &str, t: &CorrelationTensor<f64>) {
    let _ = writeln!(out, "{name}:");
    for row in &t.d {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>20}", fmt_num(*v))).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

impl EvalReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let amps: Vec<String> = self
            .amps
            .iter()
            .map(|[re, im]| format!("{}{:+}i", fmt_num(*re), im))
            .collect();
        let _ = writeln!(out, "normalized amplitudes (++, +-, -+, --): {}", amps.join(", "));
        let _ = writeln!(
            out,
            "det = a11 a22 - a12 a21 = {} {:+}i  (|det| = {})",
            fmt_num(self.det[0]),
            self.det[1],
            fmt_num(self.det_abs)
        );
        let _ = writeln!(out, "entangled: {}", self.entangled);
        let _ = writeln!(out, "input resolution: {}", fmt_num(self.resolution));
        let c = &self.classification;
        let _ = write!(out, "classification: {}", c.label);
        if let Some(t) = c.theta_c {
            let _ = write!(out, " (theta_c = {} rad", fmt_num(t));
            if let Some(tf) = c.theta_full {
                let _ = write!(out, ", unordered theta = {} rad", fmt_num(tf));
            }
            let _ = write!(out, ")");
        }
        if let Some(m) = c.margin {
            let _ = write!(out, ", margin {}", fmt_num(m));
        }
        if c.near_boundary {
            let _ = write!(out, "  [near a case boundary]");
        }
        if let Some(e) = &c.error {
            let _ = write!(out, " -- {e}");
        }
        let _ = writeln!(out);
        for (i, a) in self.lakin_angles.iter().enumerate() {
            match a {
                Some(a) => {
                    let _ = writeln!(
                        out,
                        "lakin angles {}: phi = {}, theta = {}",
                        i + 1,
                        fmt_num(a.phi),
                        fmt_num(a.theta)
                    );
                }
                None => {
                    let _ = writeln!(out, "lakin angles {}: undefined (mean spin vanishes; lab axes used)", i + 1);
                }
            }
        }
        let r = &self.squeezing;
        let _ = writeln!(out, "mean spins: |<S1>| = {}, |<S2>| = {}", fmt_num(r.mean1), fmt_num(r.mean2));
        let _ = writeln!(
            out,
            "x: var sum = {}, cross = {}, q_x = {}, squeezed = {}",
            fmt_num(r.var_sum_x),
            fmt_num(r.cross_x),
            fmt_num(r.q_x),
            r.squeezed_x
        );
        let _ = writeln!(
            out,
            "y: var sum = {}, cross = {}, q_y = {}, squeezed = {}",
            fmt_num(r.var_sum_y),
            fmt_num(r.cross_y),
            fmt_num(r.q_y),
            r.squeezed_y
        );
        let verdict = match self.verdict_squeezed {
            [false, false] => "not squeezed".to_string(),
            [x, y] => format!("squeezed in{}{}", if x { " x" } else { "" }, if y { " y" } else { "" }),
        };
        let _ = writeln!(out, "verdict: {verdict}");
        fmt_tensor(&mut out, "mutual correlations (lab)", &self.correlations_lab);
        fmt_tensor(&mut out, "mutual correlations (lakin)", &self.correlations_lakin);
        let o = &self.optimized;
        let _ = writeln!(
            out,
            "optimized q = {} at azimuths ({}, {})",
            fmt_num(o.best_q),
            fmt_num(o.angle1),
            fmt_num(o.angle2)
        );
        out
    }
}
