//! Both sides of Herbert's identity `f* n_r = m_{r+1} + e ∪ m_r`, row by
//! row, with the evidence behind each bit.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use crate::curves2d::CertifiedMulticurve;
use crate::surfaces3d::{CertifiedImmersion3, SourceCycle};

pub const TSV_HEADER: &str = "scene\tr\ttarget\tlhs\tmu\teuler\tverdict";

/// The row name used for the fundamental class of a surface.
pub const FUNDAMENTAL_CLASS: &str = "[M]";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Error(String),
}

impl Verdict {
    fn of(lhs: bool, mu: bool, euler: bool) -> Self {
        if lhs == (mu ^ euler) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail => f.write_str("FAIL"),
            Verdict::Error(_) => f.write_str("ERROR"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerbertRow {
    pub r: usize,
    pub target: String,
    pub lhs: bool,
    pub mu: bool,
    pub euler: bool,
    pub verdict: Verdict,
}

impl HerbertRow {
    pub fn new(r: usize, target: impl Into<String>, lhs: bool, mu: bool, euler: bool) -> Self {
        HerbertRow {
            r,
            target: target.into(),
            lhs,
            mu,
            euler,
            verdict: Verdict::of(lhs, mu, euler),
        }
    }

    fn error(r: usize, target: impl Into<String>, msg: String) -> Self {
        HerbertRow {
            r,
            target: target.into(),
            lhs: false,
            mu: false,
            euler: false,
            verdict: Verdict::Error(msg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerbertReport {
    pub scene: String,
    pub rows: Vec<HerbertRow>,
    /// Number of double points (curves) or double circles (surfaces).
    pub double_count: usize,
    pub triple_count: usize,
    pub evidence: Vec<String>,
    pub elapsed: Duration,
}

impl HerbertReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.verdict, Verdict::Error(_)))
    }

    /// Rows in the tab-separated format, without header.
    pub fn tsv_rows(&self) -> String {
        let bit = |b: bool| if b { '1' } else { '0' };
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                self.scene,
                r.r,
                r.target,
                bit(r.lhs),
                bit(r.mu),
                bit(r.euler),
                r.verdict
            );
        }
        out
    }
}

/// Reports as one table.
pub fn to_tsv(reports: &[HerbertReport]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.tsv_rows());
    }
    out
}

/// The r = 1 identity on each component of a multicurve (all components
/// when `components` is empty).
pub fn verify_curves(scene: &str, f: &CertifiedMulticurve, components: &[String]) -> HerbertReport {
    let start = Instant::now();
    let d = f.double_points();
    let mut evidence = Vec::new();
    if d.points.is_empty() {
        evidence.push("no double points".to_string());
    }
    for (k, p) in d.points.iter().enumerate() {
        let (a, b) = &d.ordered_preimages[2 * k];
        evidence.push(format!("double point {p} with preimages {a} and {b}"));
    }
    let targets: Vec<usize> = if components.is_empty() {
        (0..f.components().len()).collect()
    } else {
        components.iter().filter_map(|c| f.component_index(c).ok()).collect()
    };
    let mut rows = Vec::new();
    for c in components.iter().filter(|c| f.component_index(c).is_err()) {
        rows.push(HerbertRow::error(1, c.clone(), format!("unknown component {c}")));
    }
    for i in targets {
        let id = f.ids()[i].clone();
        let (mu, euler) = f.herbert_rhs_r1(i);
        match f.pairing_witness(i, f) {
            Ok(w) => {
                evidence.push(format!(
                    "{id}: {} crossings with the pushoff at epsilon {}{}; {} preimages on it; transport {}",
                    w.crossings,
                    w.epsilon,
                    if w.reconnected.iter().any(|r| *r) {
                        " (reconnected)"
                    } else {
                        ""
                    },
                    f.preimages_on(i),
                    u8::from(euler)
                ));
                rows.push(HerbertRow::new(1, id, w.bit(), mu, euler));
            }
            Err(e) => rows.push(HerbertRow::error(1, id, e.to_string())),
        }
    }
    HerbertReport {
        scene: scene.to_string(),
        rows,
        double_count: d.points.len(),
        triple_count: 0,
        evidence,
        elapsed: start.elapsed(),
    }
}

/// The r = 2 identity on the fundamental class and the r = 1 identity on
/// each supplied cycle.
pub fn verify_surface(scene: &str, f: &CertifiedImmersion3, cycles: &[SourceCycle]) -> HerbertReport {
    let start = Instant::now();
    let arr = f.double_curves();
    let tp = f.triple_points();
    let mut evidence = Vec::new();
    if arr.circles.is_empty() && tp.points.is_empty() {
        evidence.push("no intersections".to_string());
    }
    for (i, c) in arr.circles.iter().enumerate() {
        let pre: Vec<String> = arr
            .preimages
            .iter()
            .filter(|p| p.circle == i)
            .map(|p| {
                format!(
                    "{} pieces w1 {}{}",
                    p.pieces.len(),
                    u8::from(p.w1),
                    if p.double_cover { " (double cover)" } else { "" }
                )
            })
            .collect();
        evidence.push(format!(
            "double circle {i}: {} segments, preimages [{}]",
            c.segments.len(),
            pre.join(", ")
        ));
    }
    for t in &tp.points {
        evidence.push(format!("triple point {}", t.point));
    }
    let mut rows = Vec::new();
    let (mu, euler) = f.herbert_rhs_r2();
    match f.translate_crossings(&arr.lifted_segments()) {
        Ok((n, delta)) => {
            evidence.push(format!(
                "{FUNDAMENTAL_CLASS}: {n} crossings of the double curve with the translate at delta {delta}"
            ));
            rows.push(HerbertRow::new(2, FUNDAMENTAL_CLASS, n % 2 == 1, mu, euler));
        }
        Err(e) => rows.push(HerbertRow::error(2, FUNDAMENTAL_CLASS, e.to_string())),
    }
    for c in cycles {
        match f.herbert_r1_on_cycle(c) {
            Ok(ev) => {
                evidence.push(format!(
                    "{}: {} crossings with the translate; {} crossings with preimage curves; transport {}",
                    c.name,
                    ev.translate_crossings,
                    ev.preimage_crossings,
                    u8::from(ev.euler)
                ));
                rows.push(HerbertRow::new(1, c.name.clone(), ev.lhs, ev.mu, ev.euler));
            }
            Err(e) => rows.push(HerbertRow::error(1, c.name.clone(), e.to_string())),
        }
    }
    HerbertReport {
        scene: scene.to_string(),
        rows,
        double_count: arr.circles.len(),
        triple_count: tp.points.len(),
        evidence,
        elapsed: start.elapsed(),
    }
}

/// A readable account of a report.
pub fn explain(report: &HerbertReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scene {}", report.scene);
    let _ = writeln!(out, "  {} double, {} triple", report.double_count, report.triple_count);
    for e in &report.evidence {
        let _ = writeln!(out, "  {e}");
    }
    for r in &report.rows {
        match &r.verdict {
            Verdict::Error(msg) => {
                let _ = writeln!(out, "  r={} {}: ERROR {msg}", r.r, r.target);
            }
            v => {
                let _ = writeln!(
                    out,
                    "  r={} {}: lhs {} = mu {} + euler {} ... {}{}",
                    r.r,
                    r.target,
                    u8::from(r.lhs),
                    u8::from(r.mu),
                    u8::from(r.euler),
                    v,
                    if *v == Verdict::Fail { "  <-- mismatch" } else { "" }
                );
            }
        }
    }
    out
}
