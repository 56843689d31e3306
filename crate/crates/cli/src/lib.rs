//! Report types and command bodies behind the `lpsum` binary.

use std::fmt::Write as _;

use lpsum::cremona::{pack_decision, Outcome, Verdict};
use lpsum::lp_lagrangian::{self, boundary_curve};
use lpsum::symplectic_lp::{self, b1_into_ellipsoid, bp_boundary, Ellipsoid};
use lpsum::toric::{c1_c2_symmetric, DEFAULT_SAMPLES};
use lpsum::verify::SuiteReport;
use lpsum::{PParam, Rational, Result, Scalar};
use serde::{Deserialize, Serialize};

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Lagrangian,
    Symplectic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Rigid,
    ToricallyRigid,
    NonRigid,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Rigid => "rigid",
            Regime::ToricallyRigid => "torically-rigid",
            Regime::NonRigid => "non-rigid",
        }
    }
}

/// One line of the radii table. `regime` refers to the outer problem
/// (embedding the domain into a ball), `regime_inner` to the inner one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub p: PParam,
    pub r_inner: f64,
    pub r_outer: f64,
    pub regime: Regime,
    pub regime_inner: Regime,
    pub c1: f64,
    pub c2: f64,
}

fn regimes(p: PParam, domain: Domain) -> (Regime, Regime) {
    let pv = p.value();
    match domain {
        Domain::Lagrangian => {
            let inner = if pv <= 2.0 { Regime::Rigid } else { Regime::ToricallyRigid };
            let outer = if pv < 2.0 {
                Regime::ToricallyRigid
            } else if pv <= 4.5 {
                Regime::Rigid
            } else {
                Regime::NonRigid
            };
            (inner, outer)
        }
        Domain::Symplectic => (Regime::Rigid, if pv >= 2.0 { Regime::Rigid } else { Regime::NonRigid }),
    }
}

pub fn radii_row(p: PParam, domain: Domain) -> Result<ReportRow> {
    let (r_inner, r_outer, boundary) = match domain {
        Domain::Lagrangian => (
            lp_lagrangian::inner_radius(p),
            lp_lagrangian::outer_radius(p)?,
            boundary_curve(p, DEFAULT_SAMPLES)?,
        ),
        Domain::Symplectic => (
            symplectic_lp::bp_inner_radius(p),
            symplectic_lp::bp_outer_radius(p),
            bp_boundary(p, DEFAULT_SAMPLES)?,
        ),
    };
    let (c1, c2) = c1_c2_symmetric(&boundary)?;
    let (regime_inner, regime) = regimes(p, domain);
    Ok(ReportRow {
        p,
        r_inner: sig12(r_inner),
        r_outer: sig12(r_outer),
        regime,
        regime_inner,
        c1: sig12(c1),
        c2: sig12(c2),
    })
}

pub fn rows_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("p,r_inner,r_outer,regime,regime_inner,c1,c2\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.p,
            r.r_inner,
            r.r_outer,
            r.regime.as_str(),
            r.regime_inner.as_str(),
            r.c1,
            r.c2
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub p: PParam,
    /// Boundary points ordered by increasing `x`.
    pub points: Vec<[f64; 2]>,
}

pub fn curve_data(p: PParam, domain: Domain, samples: usize) -> Result<CurveData> {
    let b = match domain {
        Domain::Lagrangian => boundary_curve(p, samples)?,
        Domain::Symplectic => bp_boundary(p, samples)?,
    };
    let mut points: Vec<[f64; 2]> = b.samples().iter().map(|s| [sig12(s.x), sig12(s.y)]).collect();
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
    points.dedup();
    Ok(CurveData { p, points })
}

pub fn curve_csv(c: &CurveData) -> String {
    let mut out = String::from("x,y\n");
    for [x, y] in &c.points {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackReport {
    pub outcome: Outcome,
    pub reason: String,
    pub moves: usize,
    pub padded: bool,
    /// Each vector `(c; a_1, ..., a_N)` visited, starting from the ordered input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

impl PackReport {
    pub fn from_verdict<S: Scalar>(v: &Verdict<S>, with_trace: bool) -> Self {
        PackReport {
            outcome: v.outcome,
            reason: v.reason.clone(),
            moves: v.moves(),
            padded: v.padded,
            trace: with_trace.then(|| v.trace.iter().map(|t| t.to_string()).collect()),
        }
    }
}

pub fn pack_float(c: f64, balls: Vec<f64>, max_moves: usize, with_trace: bool) -> PackReport {
    let eps = 1e-9 * c.abs().max(1.0);
    PackReport::from_verdict(&pack_decision(c, balls, max_moves, &eps), with_trace)
}

pub fn pack_exact(c: Rational, balls: Vec<Rational>, max_moves: usize, with_trace: bool) -> PackReport {
    let zero = Rational::from_integer(0.into());
    PackReport::from_verdict(&pack_decision(c, balls, max_moves, &zero), with_trace)
}

pub fn pack_b1_ellipsoid(a: f64, b: f64) -> Result<PackReport> {
    let v = b1_into_ellipsoid(Ellipsoid::new(a, b)?, 50, 11)?;
    Ok(PackReport::from_verdict(&v, false))
}

/// Parses `"7/60"`, `"3"` or a decimal such as `"0.05"` into an exact rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| format!("invalid rational {s:?}"))?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| format!("invalid rational {s:?}"))?;
        if d == 0.into() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(format!("invalid rational {s:?}"));
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| format!("invalid rational {s:?}"))?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    Ok(Rational::new(digits, den))
}

/// Rounds every reported number of a suite report to 12 significant digits.
pub fn rounded_report(mut r: SuiteReport) -> SuiteReport {
    r.seconds = sig12(r.seconds);
    for c in &mut r.checks {
        c.deviation = c.deviation.map(sig12);
        c.tolerance = sig12(c.tolerance);
    }
    r
}
