//! Sweep execution and CSV emission.

use std::fmt::Write as _;
use std::time::Instant;

use crate::exec::Executor;
use crate::montecarlo::{simulate_both_with, OutageEstimate};
use crate::outage::{
    db_to_linear, outage_asymptotic_cc, outage_asymptotic_type1, outage_cc_convolution_with,
    outage_exact_cc_with, outage_exact_type1, GridSpec, HarqConfig, MgfRoute, Scheme,
};
use crate::special::BromwichConfig;

use super::config::{Method, Resolved, SweepSpec, SweepVariable};

pub const CSV_HEADER: &str = "variable_value,scheme,method,p_out,half_width,regime_flag,flags";

/// One emitted row; `p_out = None` marks a numeric failure.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub scheme: Scheme,
    pub method: Method,
    pub p_out: Option<f64>,
    pub half_width: Option<f64>,
    pub regime_flag: i8,
    pub flags: Vec<String>,
    pub seconds: f64,
}

impl SweepRow {
    fn csv_line(&self) -> String {
        let p = self.p_out.map_or("NaN".to_string(), |p| p.to_string());
        let hw = self.half_width.map_or(String::new(), |h| h.to_string());
        format!(
            "{},{},{},{},{},{},{}",
            self.value,
            self.scheme.label(),
            self.method.label(),
            p,
            hw,
            self.regime_flag,
            self.flags.join(";")
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub csv: String,
    /// Rows carrying the error sentinel.
    pub failures: usize,
}

fn sanitize(msg: &str) -> String {
    msg.chars()
        .map(|c| if matches!(c, ',' | ';' | '\n' | '\r') { ' ' } else { c })
        .collect()
}

fn point_config(spec: &SweepSpec, rounds: u32, value: f64) -> Option<HarqConfig> {
    let (rate, snr_db) = match spec.variable {
        SweepVariable::Rate => (value, spec.fixed),
        SweepVariable::SnrDb => (spec.fixed, value),
    };
    HarqConfig::new(Scheme::TypeI, rounds, rate, db_to_linear(snr_db)).ok()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64())
}

fn rows_for_point(r: &Resolved, spec: &SweepSpec, value: f64, exec: Executor) -> Vec<SweepRow> {
    let fp = &r.fading;
    let regime_flag = fp.regime().sign();
    let row = |scheme, method, res: crate::Result<(f64, Option<f64>, Vec<String>)>, seconds| {
        match res {
            Ok((p, hw, flags)) => SweepRow {
                value,
                scheme,
                method,
                p_out: Some(p),
                half_width: hw,
                regime_flag,
                flags,
                seconds,
            },
            Err(e) => SweepRow {
                value,
                scheme,
                method,
                p_out: None,
                half_width: None,
                regime_flag,
                flags: vec![format!("error: {}", sanitize(&e.to_string()))],
                seconds,
            },
        }
    };
    let Some(base) = point_config(spec, r.rounds, value) else {
        return spec
            .schemes
            .iter()
            .flat_map(|&s| spec.methods.iter().map(move |&m| (s, m)))
            .map(|(s, m)| {
                row(s, m, Err(crate::Error::domain("sweep", format!("invalid point {value}"))), 0.0)
            })
            .collect();
    };

    let exact = |scheme: Scheme| -> (crate::Result<(f64, Option<f64>, Vec<String>)>, f64) {
        timed(|| match scheme {
            Scheme::TypeI => outage_exact_type1(fp, r.h_l, &base).map(|p| (p, None, vec![])),
            Scheme::ChaseCombining => outage_exact_cc_with(
                fp,
                r.h_l,
                &base.with_scheme(scheme),
                MgfRoute::Quadrature,
                &BromwichConfig::default(),
                exec,
            )
            .map(|o| {
                let mut flags = vec![];
                if o.low_confidence {
                    flags.push("low-confidence".to_string());
                    if let Some(a) = o.asymptotic {
                        flags.push(format!("asymptotic={a}"));
                    }
                }
                (o.value, None, flags)
            }),
        })
    };

    let wants_mc = spec.methods.contains(&Method::Mc);
    let (mc, mc_secs) = if wants_mc {
        timed(|| simulate_both_with(fp, r.h_l, &base, &spec.mc, exec))
    } else {
        (Err(crate::Error::domain("mc", "not requested")), 0.0)
    };

    let mut rows = Vec::new();
    for &scheme in &spec.schemes {
        let cfg = base.with_scheme(scheme);
        let exact_result = spec
            .methods
            .iter()
            .any(|m| matches!(m, Method::Exact | Method::Mc))
            .then(|| exact(scheme));
        for &method in &spec.methods {
            match method {
                Method::Exact => {
                    let (res, secs) = exact_result.clone().expect("computed above");
                    rows.push(row(scheme, method, res, secs));
                }
                Method::Asymptotic => {
                    let (res, secs) = timed(|| match scheme {
                        Scheme::TypeI => outage_asymptotic_type1(fp, r.h_l, &cfg),
                        Scheme::ChaseCombining => outage_asymptotic_cc(fp, r.h_l, &cfg),
                    });
                    rows.push(row(scheme, method, res.map(|p| (p, None, vec![])), secs));
                }
                Method::Mc => {
                    let res = mc.clone().map(|(t1, cc)| {
                        let est: OutageEstimate = match scheme {
                            Scheme::TypeI => t1,
                            Scheme::ChaseCombining => cc,
                        };
                        let mut flags = vec![];
                        let reference = exact_result
                            .as_ref()
                            .and_then(|(e, _)| e.as_ref().ok().map(|x| x.0));
                        if reference.is_some_and(|p| p < 10.0 / est.trials as f64) {
                            flags.push("insufficient-trials".to_string());
                        }
                        (est.p_hat, Some(est.half_width), flags)
                    });
                    rows.push(row(scheme, method, res, mc_secs));
                }
                Method::Convolution => {
                    // The convolution oracle only exists for combined SNRs.
                    if scheme == Scheme::ChaseCombining {
                        let (res, secs) = timed(|| {
                            outage_cc_convolution_with(fp, r.h_l, &cfg, &GridSpec::default(), exec)
                        });
                        rows.push(row(scheme, method, res.map(|p| (p, None, vec![])), secs));
                    }
                }
            }
        }
    }
    rows
}

/// Runs the configured sweep; rows are ordered by swept value, then scheme
/// (type1 before cc), then method (exact, asymptotic, mc, convolution).
pub fn execute(r: &Resolved, exec: Executor) -> crate::Result<SweepOutcome> {
    let spec = r
        .sweep
        .as_ref()
        .ok_or_else(|| crate::Error::domain("sweep", "configuration has no [sweep] section"))?;
    let started = Instant::now();
    let points = spec.points();
    let mut rows: Vec<SweepRow> = exec
        .map_slice(&points, |&v| rows_for_point(r, spec, v, exec))
        .into_iter()
        .flatten()
        .collect();
    rows.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.scheme.cmp(&b.scheme))
            .then(a.method.cmp(&b.method))
    });
    let failures = rows.iter().filter(|r| r.p_out.is_none()).count();
    let csv = render(r, spec, &rows, started.elapsed().as_secs_f64());
    Ok(SweepOutcome {
        rows,
        csv,
        failures,
    })
}

fn render(r: &Resolved, spec: &SweepSpec, rows: &[SweepRow], total: f64) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    let fixed = match spec.variable {
        SweepVariable::Rate => format!("snr_db={}", spec.fixed),
        SweepVariable::SnrDb => format!("rate={}", spec.fixed),
    };
    let _ = writeln!(out, "# variable={} {fixed} rounds={}", spec.variable.label(), r.rounds);
    let fp = &r.fading;
    let _ = writeln!(
        out,
        "# h_l={} alpha={} mu={} h_f_hat={} s0={} phi={}",
        r.h_l, fp.alpha, fp.mu, fp.h_f_hat, fp.s0, fp.phi
    );
    if matches!(
        r.pointing.source,
        crate::channel::PointingSource::Direct { s0_defaulted: true }
    ) {
        let _ = writeln!(out, "# s0 defaulted to erf(1)^2; curves are shape-comparable only");
    }
    if let Some(note) = &r.pointing_note {
        let _ = writeln!(out, "# note: {note}");
    }
    let _ = writeln!(
        out,
        "# mc trials={} seed={} streams={} confidence={} rng=ChaCha8",
        spec.mc.trials, spec.mc.seed, spec.mc.streams, spec.mc.confidence
    );
    for (i, row) in rows.iter().enumerate() {
        let _ = writeln!(out, "# wall_clock_s row={} seconds={:.6}", i + 1, row.seconds);
    }
    let _ = writeln!(out, "# wall_clock_s total={total:.6}");
    out
}
