//! Named experiment registry, deterministic reports, and serialization.
//!
//! Every scenario in the registry reproduces one statement of the theory at
//! desk scale and emits rows of (index, value, bound, error interval) — never
//! a bare number. Reports are deterministic for a fixed spec: fixed seeds,
//! fixed summation orders, fixed float formatting, and no wall-clock content
//! (timings are printed by the CLI, not serialized).

mod runs;

pub mod acceptance;

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

/// One registry entry: the experiment name, the anchor it reproduces, and a
/// one-line description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentInfo {
    pub name: &'static str,
    pub anchor: &'static str,
    pub description: &'static str,
}

/// The closed registry. One entry per reproduced statement.
pub const REGISTRY: [ExperimentInfo; 23] = [
    ExperimentInfo {
        name: "lp_identity",
        anchor: "Theorem 2.1",
        description: "area-integral norm identity with the identity symbol collapses to the coefficient norm",
    },
    ExperimentInfo {
        name: "stanton_identity",
        anchor: "Theorem 2.2",
        description: "change-of-variables norm identity for C_{phi_a^n} against direct composition",
    },
    ExperimentInfo {
        name: "nevanlinna_affine",
        anchor: "Section 2.1",
        description: "counting function of the univalent affine iterates: single logarithm on D_n, zero outside",
    },
    ExperimentInfo {
        name: "prop22_bounded",
        anchor: "Proposition 2.2",
        description: "an eventually bounded seed pushes to a bounded function under C_{phi_a^n}",
    },
    ExperimentInfo {
        name: "prop24_pairing_decay",
        anchor: "Proposition 2.4",
        description: "pairings <C^n f, e_m> decay for EB-derivative f, blocking hypercyclicity",
    },
    ExperimentInfo {
        name: "prop25_kernel_cyclic",
        anchor: "Proposition 2.5",
        description: "kernel orbits: full-rank Gram for alpha != 0, one-dimensional span for alpha = 0",
    },
    ExperimentInfo {
        name: "thm31_constants",
        anchor: "Theorem 3.1",
        description: "nonzero limit at 1 pulls the constants into the orbit span",
    },
    ExperimentInfo {
        name: "thm32_eigen_recovery",
        anchor: "Theorem 3.2",
        description: "normalized orbits of f_s*g recover the eigenfunction f_s",
    },
    ExperimentInfo {
        name: "rem33_polynomial_rank",
        anchor: "Remark 3.3",
        description: "polynomial orbits stay inside the degree cap: rank <= deg + 1",
    },
    ExperimentInfo {
        name: "cor34_case_a",
        anchor: "Corollary 3.4",
        description: "boundary values bounded away from zero put the constants in the span (s = 0)",
    },
    ExperimentInfo {
        name: "ex35_counterexample",
        anchor: "Example 3.5",
        description: "oscillatory eigenfunction: distance from the constants floors at d_inf, rank one",
    },
    ExperimentInfo {
        name: "lemma36_decay",
        anchor: "Lemma 3.6",
        description: "counting integrals decay like a^{2n} for EB derivatives; no decay for the oscillatory eigenfunction",
    },
    ExperimentInfo {
        name: "thm37_case_ac",
        anchor: "Theorem 3.7",
        description: "case A and case C boundary classifications with the recovery pipeline on case A",
    },
    ExperimentInfo {
        name: "thm38_analytic_at_1",
        anchor: "Theorem 3.8",
        description: "zero of order K at 1: the normalized orbit recovers f_K ((1-z)^2(2+z), K = 2)",
    },
    ExperimentInfo {
        name: "thm39_slow_decay",
        anchor: "Theorem 3.9",
        description: "boundary decay slower than a^{n(1-eps)} still recovers the constants, rate a^{2n*eps}",
    },
    ExperimentInfo {
        name: "prop310_series",
        anchor: "Proposition 3.10",
        description: "series of composed orbits: Cauchy increments vs the proof bound, divergence for f_t, h_k span data",
    },
    ExperimentInfo {
        name: "prop41_finite_zero_rank",
        anchor: "Proposition 4.1",
        description: "finitely many zeros force orbit rank >= 2",
    },
    ExperimentInfo {
        name: "prop42_zero_orbit",
        anchor: "Proposition 4.2",
        description: "nonzero at w with a vanishing forward orbit flags non-minimality",
    },
    ExperimentInfo {
        name: "ex43_blaschke",
        anchor: "Example 4.3",
        description: "partial Blaschke product on 1-a^n: zero hits, nonzero at 0, modulus one near the circle",
    },
    ExperimentInfo {
        name: "ex44_infinite_zero_eigen",
        anchor: "Example 4.4",
        description: "1 + f_t: an eigenvector with infinitely many zeros (a = 1/2)",
    },
    ExperimentInfo {
        name: "prop45_orthogonal",
        anchor: "Proposition 4.5",
        description: "projection of the kernel at a zero is orthogonal to every span element vanishing there",
    },
    ExperimentInfo {
        name: "thm51_cyclic_codim",
        anchor: "Theorem 5.1",
        description: "cyclic matrices have range codimension 0 or 1 (random companion sweep)",
    },
    ExperimentInfo {
        name: "caradus_pozzi_report",
        anchor: "Theorem 1.1",
        description: "kernel dimension / range codimension measurements with the finite-dimension disclaimer",
    },
];

/// The full registry listing.
pub fn list_experiments() -> &'static [ExperimentInfo] {
    &REGISTRY
}

pub fn find_experiment(name: &str) -> Option<&'static ExperimentInfo> {
    REGISTRY.iter().find(|e| e.name == name)
}

/// Parameters of one run. `degree` is the truncation degree N.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub a: f64,
    pub degree: usize,
    pub m: usize,
    pub tol: f64,
    pub seed: u64,
}

impl ExperimentSpec {
    /// Pinned defaults: a = 0.5, N = 1024 (4096 for the slowly-converging
    /// purely-imaginary-exponent scenarios), m = 40, tol = 1e-10, seed = 7.
    pub fn defaults(name: &str) -> Result<Self> {
        let info = find_experiment(name).ok_or_else(|| Error::UnknownExperiment(name.into()))?;
        let degree = match info.name {
            "ex35_counterexample" | "lemma36_decay" | "prop310_series" | "thm37_case_ac"
            | "ex44_infinite_zero_eigen" | "ex43_blaschke" | "prop42_zero_orbit" => 4096,
            _ => 1024,
        };
        Ok(Self { name: info.name.to_string(), a: 0.5, degree, m: 40, tol: 1e-10, seed: 7 })
    }

    pub fn validate(&self) -> Result<()> {
        if find_experiment(&self.name).is_none() {
            return Err(Error::UnknownExperiment(self.name.clone()));
        }
        if !(self.a > 0.0 && self.a < 1.0) {
            return Err(Error::InvalidParameter(format!("a must lie in (0,1), got {}", self.a)));
        }
        if self.degree < 16 {
            return Err(Error::InvalidParameter(format!("N must be >= 16, got {}", self.degree)));
        }
        if self.m < 1 {
            return Err(Error::InvalidParameter("m must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be > 0, got {}", self.tol)));
        }
        Ok(())
    }
}

/// One report row. `label` names the measured quantity (JSON only; the CSV
/// schema is fixed to index,value,bound,err_lo,err_hi).
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub index: i64,
    pub label: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub err_lo: f64,
    pub err_hi: f64,
}

impl Row {
    /// Row with a symmetric error interval of half-width `err`.
    pub fn new(index: i64, label: impl Into<String>, value: f64, bound: Option<f64>, err: f64) -> Self {
        Self { index, label: label.into(), value, bound, err_lo: value - err, err_hi: value + err }
    }
}

/// A finished experiment: spec echo, registry anchor, rows, notes.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub anchor: String,
    pub description: String,
    pub params: ExperimentSpec,
    pub version: String,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    fn new(info: &ExperimentInfo, params: ExperimentSpec) -> Self {
        Self {
            name: info.name.to_string(),
            anchor: info.anchor.to_string(),
            description: info.description.to_string(),
            params,
            version: env!("CARGO_PKG_VERSION").to_string(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// CSV with the fixed header `index,value,bound,err_lo,err_hi`, UTF-8,
    /// LF line endings, shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value,bound,err_lo,err_hi\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.index,
                fmt_float(row.value),
                row.bound.map(fmt_float).unwrap_or_default(),
                fmt_float(row.err_lo),
                fmt_float(row.err_hi),
            ));
        }
        out
    }

    /// Pretty JSON of the full report (metadata, rows with labels, notes).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Shortest round-trip decimal for a finite f64; scientific notation outside
/// [1e-4, 1e16) so columns stay readable. Parsing either form recovers the
/// exact bits.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs();
    if (1e-4..1e16).contains(&magnitude) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameter(format!("format must be csv or json, got {other}"))),
        }
    }
}

/// Renders and writes a report; the content is bit-stable for a fixed spec.
pub fn write_report(report: &ExperimentReport, format: ReportFormat, path: &Path) -> Result<()> {
    let payload = match format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => report.to_json(),
    };
    std::fs::write(path, payload).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Runs a registry experiment. Deterministic for a fixed spec.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let info = find_experiment(&spec.name).expect("validated");
    let mut report = ExperimentReport::new(info, spec.clone());
    runs::dispatch(info.name, spec, &mut report)?;
    if report.rows.iter().any(|r| r.bound.is_some()) {
        report.note(format!("bound column: {}", info.anchor));
    }
    Ok(report)
}

/// Flat key=value config mirroring the CLI flags; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub a: Option<f64>,
    pub degree: Option<usize>,
    pub m: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<ReportFormat>,
}

pub fn parse_config(text: &str) -> Result<ConfigOverrides> {
    let mut overrides = ConfigOverrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mk_err = |msg: String| Error::Config { line: lineno + 1, msg };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| mk_err(format!("expected key=value, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let parse_err = |what: &str| mk_err(format!("cannot parse `{value}` as {what} for key `{key}`"));
        match key {
            "a" => overrides.a = Some(value.parse().map_err(|_| parse_err("a float"))?),
            "N" => overrides.degree = Some(value.parse().map_err(|_| parse_err("an integer"))?),
            "m" => overrides.m = Some(value.parse().map_err(|_| parse_err("an integer"))?),
            "tol" => overrides.tol = Some(value.parse().map_err(|_| parse_err("a float"))?),
            "seed" => overrides.seed = Some(value.parse().map_err(|_| parse_err("an integer"))?),
            "out" => overrides.out = Some(PathBuf::from(value)),
            "format" => overrides.format = Some(value.parse()?),
            other => return Err(mk_err(format!("unknown key `{other}`"))),
        }
    }
    Ok(overrides)
}

impl ConfigOverrides {
    /// Config fills in whatever the CLI did not set; CLI-set values win.
    pub fn apply_defaults_to(&self, spec: &mut ExperimentSpec, cli_set: &ConfigOverrides) {
        if cli_set.a.is_none() {
            if let Some(a) = self.a {
                spec.a = a;
            }
        }
        if cli_set.degree.is_none() {
            if let Some(n) = self.degree {
                spec.degree = n;
            }
        }
        if cli_set.m.is_none() {
            if let Some(m) = self.m {
                spec.m = m;
            }
        }
        if cli_set.tol.is_none() {
            if let Some(tol) = self.tol {
                spec.tol = tol;
            }
        }
        if cli_set.seed.is_none() {
            if let Some(seed) = self.seed {
                spec.seed = seed;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_the_closed_set() {
        let expected = [
            "lp_identity",
            "stanton_identity",
            "nevanlinna_affine",
            "prop22_bounded",
            "prop24_pairing_decay",
            "prop25_kernel_cyclic",
            "thm31_constants",
            "thm32_eigen_recovery",
            "rem33_polynomial_rank",
            "cor34_case_a",
            "ex35_counterexample",
            "lemma36_decay",
            "thm37_case_ac",
            "thm38_analytic_at_1",
            "thm39_slow_decay",
            "prop310_series",
            "prop41_finite_zero_rank",
            "prop42_zero_orbit",
            "ex43_blaschke",
            "ex44_infinite_zero_eigen",
            "prop45_orthogonal",
            "thm51_cyclic_codim",
            "caradus_pozzi_report",
        ];
        assert_eq!(REGISTRY.len(), expected.len());
        for name in expected {
            assert!(find_experiment(name).is_some(), "missing {name}");
        }
    }

    #[test]
    fn registry_covers_every_in_scope_item_exactly_once() {
        let anchors = [
            "Theorem 2.1",
            "Theorem 2.2",
            "Section 2.1",
            "Proposition 2.2",
            "Proposition 2.4",
            "Proposition 2.5",
            "Theorem 3.1",
            "Theorem 3.2",
            "Remark 3.3",
            "Corollary 3.4",
            "Example 3.5",
            "Lemma 3.6",
            "Theorem 3.7",
            "Theorem 3.8",
            "Theorem 3.9",
            "Proposition 3.10",
            "Proposition 4.1",
            "Proposition 4.2",
            "Example 4.3",
            "Example 4.4",
            "Proposition 4.5",
            "Theorem 5.1",
            "Theorem 1.1",
        ];
        assert_eq!(anchors.len(), REGISTRY.len());
        for anchor in anchors {
            let hits = REGISTRY.iter().filter(|e| e.anchor == anchor).count();
            assert_eq!(hits, 1, "anchor {anchor} appears {hits} times");
        }
        assert_eq!(list_experiments().len(), 23);
    }

    #[test]
    fn spec_validation() {
        let mut spec = ExperimentSpec::defaults("lp_identity").unwrap();
        assert!(spec.validate().is_ok());
        spec.a = 1.0;
        assert!(matches!(spec.validate(), Err(Error::InvalidParameter(_))));
        spec.a = 0.5;
        spec.degree = 8;
        assert!(matches!(spec.validate(), Err(Error::InvalidParameter(_))));
        assert!(matches!(ExperimentSpec::defaults("nope"), Err(Error::UnknownExperiment(_))));
    }

    #[test]
    fn float_formatting_round_trips() {
        for x in [0.0, -0.0, 1.5, -2.25e-9, 3.141592653589793, 1e300, -7.02e-308, 123456789.123] {
            let s = fmt_float(x);
            let back: f64 = s.parse().unwrap();
            if x == 0.0 {
                assert_eq!(back, 0.0);
            } else {
                assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s}");
            }
        }
    }

    #[test]
    fn csv_shape_and_round_trip() {
        let spec = ExperimentSpec::defaults("lp_identity").unwrap();
        let info = find_experiment("lp_identity").unwrap();
        let mut report = ExperimentReport::new(info, spec);
        report.push(Row::new(0, "x", 1.25, Some(2.0), 0.5));
        report.push(Row::new(1, "y", -3.5e-30, None, 0.0));
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "index,value,bound,err_lo,err_hi");
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[0], "0");
        assert_eq!(fields[1].parse::<f64>().unwrap(), 1.25);
        assert_eq!(fields[2].parse::<f64>().unwrap(), 2.0);
        assert_eq!(fields[3].parse::<f64>().unwrap(), 0.75);
        assert_eq!(fields[4].parse::<f64>().unwrap(), 1.75);
        let second: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(second[2], "");
        assert_eq!(second[1].parse::<f64>().unwrap(), -3.5e-30);
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn json_is_valid_and_carries_schema_fields() {
        let spec = ExperimentSpec::defaults("lp_identity").unwrap();
        let report = run_experiment(&spec).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in ["name", "anchor", "description", "params", "version", "rows", "notes"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        let row = &value["rows"][0];
        for key in ["index", "label", "value", "bound", "err_lo", "err_hi"] {
            assert!(row.get(key).is_some(), "row missing {key}");
        }
    }

    #[test]
    fn config_parsing() {
        let text =
            "# comment\n\na = 0.3\nN=2048\nm = 10\ntol=1e-8\nseed = 42\nout = /tmp/report.csv\nformat = json\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.a, Some(0.3));
        assert_eq!(cfg.degree, Some(2048));
        assert_eq!(cfg.m, Some(10));
        assert_eq!(cfg.tol, Some(1e-8));
        assert_eq!(cfg.seed, Some(42));
        assert_eq!(cfg.format, Some(ReportFormat::Json));

        assert!(matches!(parse_config("bogus"), Err(Error::Config { line: 1, .. })));
        assert!(matches!(parse_config("x=1"), Err(Error::Config { .. })));
        assert!(matches!(parse_config("a=abc"), Err(Error::Config { .. })));
    }

    #[test]
    fn cli_overrides_beat_config() {
        let mut spec = ExperimentSpec::defaults("lp_identity").unwrap();
        let config = ConfigOverrides { a: Some(0.3), m: Some(5), ..Default::default() };
        let cli = ConfigOverrides { a: Some(0.7), ..Default::default() };
        spec.a = 0.7; // CLI already applied
        config.apply_defaults_to(&mut spec, &cli);
        assert_eq!(spec.a, 0.7);
        assert_eq!(spec.m, 5);
    }

    #[test]
    fn reports_are_deterministic() {
        for name in ["lp_identity", "thm51_cyclic_codim", "prop45_orthogonal"] {
            let spec = ExperimentSpec::defaults(name).unwrap();
            let r1 = run_experiment(&spec).unwrap();
            let r2 = run_experiment(&spec).unwrap();
            assert_eq!(r1.to_csv(), r2.to_csv(), "{name} CSV differs");
            assert_eq!(r1.to_json(), r2.to_json(), "{name} JSON differs");
        }
    }
}
