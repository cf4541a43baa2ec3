//! JSON problem files, command dispatch and report rendering for the `toricloc` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::charge::{charge_value, preset, CentralCharge, ChargeSpec};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::invariants::{
    digest, donaldson_futaki, fz_hat, futaki, stability_indicator, theorem_residual, z_hat, InvariantReport, Verdict,
};
use crate::localize::{evaluate, generic_parameter, EquivariantIntegrand, LocalizedValue, Parameter};
use crate::polytope::{DelzantPolytope, PolytopeSpec};
use crate::testconfig::{TestConfigSpec, ToricTestConfiguration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Futaki,
    Df,
    ChargeEval,
    ZHat,
    Stability,
    Fz,
    TheoremCheck,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Validate,
        Command::Futaki,
        Command::Df,
        Command::ChargeEval,
        Command::ZHat,
        Command::Stability,
        Command::Fz,
        Command::TheoremCheck,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Futaki => "futaki",
            Command::Df => "df",
            Command::ChargeEval => "charge-eval",
            Command::ZHat => "z-hat",
            Command::Stability => "stability",
            Command::Fz => "fz",
            Command::TheoremCheck => "theorem-check",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChargeInput {
    Preset(String),
    Explicit(ChargeSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_configuration: Option<TestConfigSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge: Option<ChargeInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Vec<Rational>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

pub fn load_config(path: &Path) -> Result<ProblemConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

fn require<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Schema(key.to_string()))
}

fn as_object<'a>(value: &'a Value, key: &str) -> Result<&'a serde_json::Map<String, Value>> {
    value.as_object().ok_or_else(|| Error::Schema(key.to_string()))
}

fn decode<T: serde::de::DeserializeOwned>(value: &Value, key: &str) -> Result<T> {
    serde_json::from_value(value.clone()).map_err(|e| {
        let msg = e.to_string();
        if msg.contains("malformed rational") {
            Error::Parse(format!("{key}: {msg}"))
        } else {
            Error::Schema(key.to_string())
        }
    })
}

fn check_polytope(value: &Value, key: &str) -> Result<()> {
    let obj = as_object(value, key)?;
    require(obj, "dim")?;
    let facets = require(obj, "facets")?.as_array().ok_or_else(|| Error::Schema("facets".into()))?;
    for facet in facets {
        let f = as_object(facet, "facets")?;
        require(f, "normal")?;
        require(f, "offset")?;
    }
    Ok(())
}

/// Parses and schema-checks a problem description.
pub fn parse_config(text: &str) -> Result<ProblemConfig> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    let obj = as_object(&root, "<root>")?;

    let command = require(obj, "command")?
        .as_str()
        .and_then(Command::parse)
        .ok_or_else(|| Error::Schema("command".into()))?;

    let polytope = match obj.get("polytope") {
        Some(v) => {
            check_polytope(v, "polytope")?;
            Some(decode(v, "polytope")?)
        }
        None => None,
    };
    let test_configuration = match obj.get("test_configuration") {
        Some(v) => {
            let tc = as_object(v, "test_configuration")?;
            check_polytope(require(tc, "base")?, "base")?;
            require(tc, "xi")?;
            require(tc, "c")?;
            Some(decode(v, "test_configuration")?)
        }
        None => None,
    };
    let charge = match obj.get("charge") {
        Some(Value::String(name)) => Some(ChargeInput::Preset(name.clone())),
        Some(v) => {
            let c = as_object(v, "charge")?;
            for key in ["dim", "rho", "chern", "theta"] {
                require(c, key)?;
            }
            Some(ChargeInput::Explicit(decode(v, "charge")?))
        }
        None => None,
    };
    let parameter = match obj.get("parameter") {
        Some(Value::String(s)) => Some(parse_param(s)?),
        Some(v) => Some(decode(v, "parameter")?),
        None => None,
    };
    let seed = match obj.get("seed") {
        Some(v) => v.as_u64().ok_or_else(|| Error::Schema("seed".into()))?,
        None => 0,
    };
    let output = match obj.get("output") {
        Some(v) => Some(PathBuf::from(v.as_str().ok_or_else(|| Error::Schema("output".into()))?)),
        None => None,
    };
    Ok(ProblemConfig { command, polytope, test_configuration, charge, parameter, seed, output })
}

/// `"a,b,…"` as a rational vector.
pub fn parse_param(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| x.trim().parse()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Command,
    pub inputs: String,
    pub reports: Vec<InvariantReport>,
    /// Generic localisation parameters drawn from the seed.
    pub parameters: Vec<Vec<Rational>>,
    pub warnings: Vec<String>,
    pub diagnostics: Option<String>,
    pub exit_status: i32,
}

/// Exit status for a failed run: 2 for mathematically infeasible input, 1 otherwise.
pub fn exit_status(err: &Error) -> i32 {
    if err.is_domain() {
        2
    } else {
        1
    }
}

struct Run<'a> {
    cfg: &'a ProblemConfig,
    inputs: String,
    reports: Vec<InvariantReport>,
    parameters: Vec<Vec<Rational>>,
    warnings: Vec<String>,
}

impl Run<'_> {
    fn polytope(&self) -> Result<DelzantPolytope> {
        match (&self.cfg.polytope, &self.cfg.test_configuration) {
            (Some(p), _) => DelzantPolytope::from_spec(p),
            (None, Some(tc)) => DelzantPolytope::from_spec(&tc.base),
            (None, None) => Err(Error::Schema("polytope".into())),
        }
    }

    fn test_configuration(&self) -> Result<ToricTestConfiguration> {
        self.cfg.test_configuration.as_ref().ok_or_else(|| Error::Schema("test_configuration".into()))?.build()
    }

    fn charge(&mut self, n: usize) -> Result<CentralCharge> {
        let charge = match self.cfg.charge.as_ref().ok_or_else(|| Error::Schema("charge".into()))? {
            ChargeInput::Preset(name) => preset(name, n).ok_or_else(|| Error::Schema("charge".into()))?,
            ChargeInput::Explicit(spec) => spec.build()?,
        };
        if charge.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: charge.dim() });
        }
        self.warnings.extend(charge.warnings());
        Ok(charge)
    }

    fn parameter(&self) -> Result<Vec<Rational>> {
        self.cfg.parameter.clone().ok_or(Error::ParameterRequired)
    }

    fn record_seeded(&mut self, p: &DelzantPolytope) {
        let xi = generic_parameter(&p.vertex_frames(), self.cfg.seed);
        if !self.parameters.contains(&xi) {
            self.parameters.push(xi);
        }
    }

    fn push(&mut self, name: &str, value: LocalizedValue) -> &mut InvariantReport {
        self.reports.push(InvariantReport::new(name, self.inputs.clone(), value));
        self.reports.last_mut().unwrap()
    }

    fn dispatch(&mut self) -> Result<()> {
        let seed = self.cfg.seed;
        match self.cfg.command {
            Command::Validate => {
                let p = self.polytope()?;
                let n = p.dim() as i32;
                self.push("vertices", LocalizedValue::new(p.vertex_count() as i64, 0));
                self.push("volume", LocalizedValue::new(p.volume(), n));
                if self.cfg.test_configuration.is_some() {
                    let tc = self.test_configuration()?;
                    self.push("total_volume", LocalizedValue::new(tc.total().volume(), n + 1));
                }
            }
            Command::Futaki => {
                let p = self.polytope()?;
                let xi = self.parameter()?;
                let value = futaki(&p, &xi)?;
                let verdict = Verdict::of(value.real_part());
                self.push("futaki", value).verdict = Some(verdict);
            }
            Command::Df => {
                let tc = self.test_configuration()?;
                let value = donaldson_futaki(&tc, seed)?;
                self.record_seeded(tc.total());
                let verdict = Verdict::of(value.real_part());
                self.push("donaldson_futaki", value).verdict = Some(verdict);
            }
            Command::ChargeEval => {
                let p = self.polytope()?;
                let charge = self.charge(p.dim())?;
                let value = charge_value(&charge, &p, &Parameter::Seed(seed))?;
                self.record_seeded(&p);
                let n = p.dim();
                let frames = p.vertex_frames();
                let mut breakdown = std::collections::BTreeMap::new();
                for l in 0..=n {
                    let integrand = EquivariantIntegrand::monomial(n, 1, l as u32, (n - l) as u32, 0);
                    breakdown.insert(format!("{},{}", n - l, l), evaluate(&frames, &[], &Parameter::Seed(seed), &integrand)?);
                }
                self.push("charge", value).breakdown = breakdown;
            }
            Command::ZHat => {
                let tc = self.test_configuration()?;
                let charge = self.charge(tc.dim())?;
                if charge_value(&charge, tc.base(), &Parameter::Seed(seed))?.is_zero() {
                    self.warnings.push(Error::ZeroCentralCharge.to_string());
                }
                let report = z_hat(&tc, &charge, seed)?;
                self.record_seeded(tc.base());
                self.record_seeded(tc.total());
                self.reports.push(InvariantReport { inputs: self.inputs.clone(), ..report });
            }
            Command::Stability => {
                let tc = self.test_configuration()?;
                let charge = self.charge(tc.dim())?;
                if charge.is_real() {
                    self.warnings.push("real charge: use df".into());
                }
                let s = stability_indicator(&tc, &charge, seed)?;
                self.record_seeded(tc.base());
                self.record_seeded(tc.total());
                let power = 2 * tc.dim() as i32 + 1;
                self.push("sigma", LocalizedValue::new(s.sigma, power)).verdict = Some(s.verdict);
            }
            Command::Fz => {
                let p = self.polytope()?;
                let xi = self.parameter()?;
                let charge = self.charge(p.dim())?;
                let f = fz_hat(&p, &xi, &charge, seed)?;
                self.record_seeded(&p);
                let power = 2 * p.dim() as i32;
                let breakdown = f.breakdown.into_iter().map(|(k, v)| (k, LocalizedValue::new(v, power))).collect();
                let verdict = Verdict::of(&f.tau);
                let report = self.push("fz_hat", LocalizedValue::new(f.tau, power));
                report.breakdown = breakdown;
                report.verdict = Some(verdict);
            }
            Command::TheoremCheck => {
                let tc = self.test_configuration()?;
                let charge = self.charge(tc.dim())?;
                let n = tc.dim() as i32;
                let sigma = stability_indicator(&tc, &charge, seed)?.sigma;
                let x0 = tc.central_fibre();
                let tau = fz_hat(&x0.polytope, &x0.v0, &charge, seed)?.tau;
                let residual = theorem_residual(&tc, &charge, seed)?;
                self.record_seeded(tc.base());
                self.record_seeded(tc.total());
                let verdict = Verdict::of(&residual);
                let report = self.push("theorem_residual", LocalizedValue::new(residual, 0));
                report.breakdown.insert("sigma".into(), LocalizedValue::new(sigma, 2 * n + 1));
                report.breakdown.insert("tau".into(), LocalizedValue::new(tau, 2 * n));
                report.verdict = Some(verdict);
            }
        }
        Ok(())
    }
}

/// Runs the configured command. Failures are reported in the result, never raised.
pub fn run_command(cfg: &ProblemConfig) -> RunReport {
    let mut run = Run { cfg, inputs: digest(cfg), reports: Vec::new(), parameters: Vec::new(), warnings: Vec::new() };
    let outcome = run.dispatch();
    let (diagnostics, exit_status) = match outcome {
        Ok(()) => (None, 0),
        Err(e) => (Some(e.to_string()), exit_status(&e)),
    };
    RunReport {
        command: cfg.command,
        inputs: run.inputs,
        reports: run.reports,
        parameters: run.parameters,
        warnings: run.warnings,
        diagnostics,
        exit_status,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

fn verdict_line(name: &str, verdict: Verdict) -> String {
    match (name, verdict) {
        ("sigma", Verdict::Negative) => "UNSTABLE (σ < 0)".into(),
        ("sigma", Verdict::Zero) => "SEMISTABLE (σ = 0)".into(),
        ("sigma", Verdict::Positive) => "STABLE (σ > 0)".into(),
        (_, Verdict::Negative) => "negative".into(),
        (_, Verdict::Zero) => "zero".into(),
        (_, Verdict::Positive) => "positive".into(),
    }
}

fn vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn emit_report(report: &RunReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "command: {}", report.command.name());
            let _ = writeln!(s, "inputs: {}", report.inputs);
            for p in &report.parameters {
                let _ = writeln!(s, "generic parameter: {}", vector(p));
            }
            for r in &report.reports {
                let _ = writeln!(s, "{} = {}", r.name, r.value());
                for (key, v) in &r.breakdown {
                    let _ = writeln!(s, "  [{key}] {v}");
                }
                if let Some(v) = r.verdict {
                    let _ = writeln!(s, "verdict: {}", verdict_line(&r.name, v));
                }
            }
            for w in &report.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            if let Some(d) = &report.diagnostics {
                let _ = writeln!(s, "error: {d}");
            }
            let _ = writeln!(s, "exit status: {}", report.exit_status);
            s.into_bytes()
        }
    }
}

/// Text rendering of a single value, e.g. `2 · (2π)^1`.
pub fn render_value(value: &GaussianRational, two_pi_power: i32) -> String {
    LocalizedValue { value: value.clone(), two_pi_power }.to_string()
}
