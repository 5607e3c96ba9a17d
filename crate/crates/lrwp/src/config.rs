//! INI-style run configuration.
//!
//! ```text
//! [system]            # optional, m = hbar = 1
//! m = 1
//! hbar = 1
//! [force]             # optional, zero force
//! kind = constant     # zero | constant | sinusoidal | piecewise_linear | tabulated
//! amplitude = 1       # constant and sinusoidal
//! omega = 2           # sinusoidal
//! phase = 0           # sinusoidal
//! points = 0:0, 1:2   # piecewise_linear and tabulated, t:F pairs
//! [packet]            # optional, matched Gaussian sigma = 1 at rest
//! sigma = 1           # Gaussian momentum parameterization ...
//! F0 = 0-0.5i         # ... or invariant: F0 or A0/B0, C0, alpha0
//! x0 = 0
//! p0 = 0
//! [grid]              # required
//! x_min = -20
//! x_max = 20
//! n = 2048
//! dt = 1e-3
//! t_max = 2
//! output_every = 100
//! [run]               # optional
//! mode = validate     # analytic | validate | momentum | sweep
//! outputs = out
//! sweep_axis = dt     # sigma | F0_imag | dt | n | force-amplitude
//! sweep_values = 2e-3, 1e-3, 5e-4
//! sweep_mode = validate
//! ```
//!
//! Complex values are written `re+imi`, e.g. `0-0.5i`, `-i`, `2.5`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use lrwp_core::{
    classify_ratio, Complex64, Error as CoreError, ForceProfile, GaussianMomentumParams, InvariantSpec, PacketMode,
    PacketState,
};
use thiserror::Error;

use crate::oracle::GridSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub kind: ConfigErrorKind,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.kind),
            None => write!(f, "config: {}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("unknown key `{key}` in [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("duplicate key `{0}`")]
    DuplicateKey(String),
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
    #[error("missing key `{key}` in [{section}]")]
    MissingKey { section: &'static str, key: &'static str },
    #[error("bad value for `{key}`: {reason}")]
    BadValue { key: String, reason: String },
    #[error("unphysical invariant: Im(F0) > 0")]
    UnphysicalInvariant,
    #[error("divergent invariant: Im(F0) = 0 with F0 != 0")]
    DivergentInvariant,
    #[error("unsupported invariant: A0 = 0")]
    ZeroA0,
    #[error("both packet parameterizations present (sigma together with {0})")]
    BothPackets(String),
    #[error("`{0}` conflicts with `B0`; give one of them")]
    RatioConflict(String),
    #[error("{0}")]
    Invalid(String),
}

impl ConfigError {
    fn at(line: usize, kind: ConfigErrorKind) -> Self {
        Self { line: Some(line), kind }
    }

    pub fn global(kind: ConfigErrorKind) -> Self {
        Self { line: None, kind }
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct System {
    pub mass: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PacketConfig {
    Gaussian(GaussianMomentumParams),
    Invariant { spec: InvariantSpec, x0: f64, p0: f64, alpha0: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Analytic,
    Validate,
    Momentum,
    Sweep,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "validate" => Ok(Mode::Validate),
            "momentum" => Ok(Mode::Momentum),
            "sweep" => Ok(Mode::Sweep),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Analytic => "analytic",
            Mode::Validate => "validate",
            Mode::Momentum => "momentum",
            Mode::Sweep => "sweep",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Sigma,
    F0Imag,
    Dt,
    N,
    ForceAmplitude,
}

impl FromStr for SweepAxis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sigma" => Ok(SweepAxis::Sigma),
            "F0_imag" => Ok(SweepAxis::F0Imag),
            "dt" => Ok(SweepAxis::Dt),
            "n" => Ok(SweepAxis::N),
            "force-amplitude" => Ok(SweepAxis::ForceAmplitude),
            _ => Err(format!("unknown sweep axis `{s}`")),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::Sigma => "sigma",
            SweepAxis::F0Imag => "F0_imag",
            SweepAxis::Dt => "dt",
            SweepAxis::N => "n",
            SweepAxis::ForceAmplitude => "force-amplitude",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    /// Values with their original spelling, used to name output directories.
    pub values: Vec<(String, f64)>,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSection {
    pub mode: Option<Mode>,
    pub outputs: Option<PathBuf>,
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: System,
    pub force: ForceProfile,
    pub packet: PacketConfig,
    pub grid: GridSpec,
    pub run: RunSection,
}

impl RunConfig {
    /// Configuration-space packet; Gaussian parameters go through the matching.
    pub fn packet_state(&self) -> std::result::Result<PacketState, CoreError> {
        let System { mass, hbar } = self.system;
        match &self.packet {
            PacketConfig::Gaussian(g) => g.packet_state(mass, hbar),
            PacketConfig::Invariant { spec, x0, p0, alpha0 } => PacketState::new(mass, hbar, *x0, *p0, *spec, *alpha0),
        }
    }
}

/// Parses `re+imi` complex literals.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a complex number (expected re+imi)");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let imag = |t: &str| -> std::result::Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

struct Entry {
    line: usize,
    value: String,
    used: bool,
}

struct Section {
    line: usize,
    entries: BTreeMap<String, Entry>,
}

struct Document {
    sections: BTreeMap<String, Section>,
}

const SECTIONS: [&str; 5] = ["system", "force", "packet", "grid", "run"];

impl Document {
    fn parse(text: &str) -> Result<Self> {
        let mut sections: BTreeMap<String, Section> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| {
                        ConfigError::at(
                            line,
                            ConfigErrorKind::Syntax(format!("unterminated section header `{content}`")),
                        )
                    })?
                    .trim();
                if !SECTIONS.contains(&name) {
                    return Err(ConfigError::at(line, ConfigErrorKind::UnknownSection(name.to_string())));
                }
                if sections.contains_key(name) {
                    return Err(ConfigError::at(line, ConfigErrorKind::Syntax(format!("section [{name}] repeated"))));
                }
                sections.insert(name.to_string(), Section { line, entries: BTreeMap::new() });
                current = Some(name.to_string());
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                ConfigError::at(line, ConfigErrorKind::Syntax(format!("expected `key = value`, got `{content}`")))
            })?;
            let section = current
                .as_ref()
                .ok_or_else(|| ConfigError::at(line, ConfigErrorKind::Syntax("key outside of any section".into())))?;
            let entries = &mut sections.get_mut(section).expect("inserted above").entries;
            let key = key.trim().to_string();
            if entries.contains_key(&key) {
                return Err(ConfigError::at(line, ConfigErrorKind::DuplicateKey(key)));
            }
            entries.insert(key, Entry { line, value: value.trim().to_string(), used: false });
        }
        Ok(Self { sections })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<(usize, String)> {
        let entry = self.sections.get_mut(section)?.entries.get_mut(key)?;
        entry.used = true;
        Some((entry.line, entry.value.clone()))
    }

    fn has(&self, section: &str, key: &str) -> Option<usize> {
        self.sections.get(section)?.entries.get(key).map(|e| e.line)
    }

    fn parsed<T: FromStr>(&mut self, section: &str, key: &str) -> Result<Option<(usize, T)>> {
        match self.take(section, key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<T>().map(|x| Some((line, x))).map_err(|_| {
                ConfigError::at(
                    line,
                    ConfigErrorKind::BadValue { key: key.into(), reason: format!("cannot parse `{v}`") },
                )
            }),
        }
    }

    fn float(&mut self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.parsed::<f64>(section, key)? {
            Some((line, v)) if !v.is_finite() => Err(ConfigError::at(
                line,
                ConfigErrorKind::BadValue { key: key.into(), reason: "must be finite".into() },
            )),
            other => Ok(other.map(|(_, v)| v)),
        }
    }

    fn complex(&mut self, section: &str, key: &str) -> Result<Option<(usize, Complex64)>> {
        match self.take(section, key) {
            None => Ok(None),
            Some((line, v)) => parse_complex(&v)
                .map(|z| Some((line, z)))
                .map_err(|reason| ConfigError::at(line, ConfigErrorKind::BadValue { key: key.into(), reason })),
        }
    }

    fn required<T>(&self, section: &'static str, key: &'static str, v: Option<T>) -> Result<T> {
        v.ok_or_else(|| {
            let line = self.sections.get(section).map(|s| s.line);
            ConfigError { line, kind: ConfigErrorKind::MissingKey { section, key } }
        })
    }

    fn check_unused(&self) -> Result<()> {
        let mut leftovers: Vec<(usize, &str, &str)> = self
            .sections
            .iter()
            .flat_map(|(s, sec)| {
                sec.entries.iter().filter(|(_, e)| !e.used).map(move |(k, e)| (e.line, s.as_str(), k.as_str()))
            })
            .collect();
        leftovers.sort();
        match leftovers.first() {
            Some(&(line, section, key)) => {
                Err(ConfigError::at(line, ConfigErrorKind::UnknownKey { section: section.into(), key: key.into() }))
            }
            None => Ok(()),
        }
    }
}

fn invalid(line: Option<usize>, e: impl fmt::Display) -> ConfigError {
    ConfigError { line, kind: ConfigErrorKind::Invalid(e.to_string()) }
}

fn parse_points(line: usize, key: &str, text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .map(|pair| {
            let (t, f) = pair.split_once(':').ok_or_else(|| {
                ConfigError::at(
                    line,
                    ConfigErrorKind::BadValue { key: key.into(), reason: format!("`{}` is not t:F", pair.trim()) },
                )
            })?;
            let num = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| {
                    ConfigError::at(
                        line,
                        ConfigErrorKind::BadValue { key: key.into(), reason: format!("cannot parse `{}`", s.trim()) },
                    )
                })
            };
            Ok((num(t)?, num(f)?))
        })
        .collect()
}

fn ratio_error(line: Option<usize>, e: CoreError) -> ConfigError {
    let kind = match e {
        CoreError::UnphysicalInvariant { .. } => ConfigErrorKind::UnphysicalInvariant,
        CoreError::DivergentInvariant { .. } => ConfigErrorKind::DivergentInvariant,
        CoreError::ZeroMomentumCoefficient => ConfigErrorKind::ZeroA0,
        other => ConfigErrorKind::Invalid(other.to_string()),
    };
    ConfigError { line, kind }
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut doc = Document::parse(text)?;
    if !doc.sections.contains_key("grid") {
        return Err(ConfigError::global(ConfigErrorKind::MissingSection("grid")));
    }

    let mass = doc.float("system", "m")?.unwrap_or(1.0);
    let hbar = doc.float("system", "hbar")?.unwrap_or(1.0);
    if !(mass > 0.0 && hbar > 0.0) {
        let line = doc.sections.get("system").map(|s| s.line);
        return Err(invalid(line, "m and hbar must be positive"));
    }
    let system = System { mass, hbar };

    let force = parse_force(&mut doc)?;
    let packet = parse_packet(&mut doc, system)?;

    let grid_line = doc.sections.get("grid").map(|s| s.line);
    let x_min = doc.float("grid", "x_min")?;
    let x_min = doc.required("grid", "x_min", x_min)?;
    let x_max = doc.float("grid", "x_max")?;
    let x_max = doc.required("grid", "x_max", x_max)?;
    let n = doc.parsed::<usize>("grid", "n")?.map(|(_, v)| v);
    let n = doc.required("grid", "n", n)?;
    let dt = doc.float("grid", "dt")?;
    let dt = doc.required("grid", "dt", dt)?;
    let t_max = doc.float("grid", "t_max")?;
    let t_max = doc.required("grid", "t_max", t_max)?;
    let output_every = doc.parsed::<usize>("grid", "output_every")?.map(|(_, v)| v).unwrap_or(1);
    let grid = GridSpec::new(x_min, x_max, n, dt, t_max, output_every).map_err(|e| invalid(grid_line, e))?;
    if t_max > force.horizon() {
        return Err(invalid(grid_line, format!("t_max = {t_max} exceeds the tabulated force range")));
    }

    let run = parse_run(&mut doc)?;
    doc.check_unused()?;
    Ok(RunConfig { system, force, packet, grid, run })
}

fn parse_force(doc: &mut Document) -> Result<ForceProfile> {
    let Some((line, kind)) = doc.take("force", "kind") else {
        if let Some(sec) = doc.sections.get("force") {
            if !sec.entries.is_empty() {
                return Err(ConfigError {
                    line: Some(sec.line),
                    kind: ConfigErrorKind::MissingKey { section: "force", key: "kind" },
                });
            }
        }
        return Ok(ForceProfile::Zero);
    };
    let profile = match kind.as_str() {
        "zero" => ForceProfile::Zero,
        "constant" => {
            let a = doc.float("force", "amplitude")?;
            ForceProfile::constant(doc.required("force", "amplitude", a)?)
        }
        "sinusoidal" => {
            let a = doc.float("force", "amplitude")?;
            let a = doc.required("force", "amplitude", a)?;
            let w = doc.float("force", "omega")?;
            let w = doc.required("force", "omega", w)?;
            let phase = doc.float("force", "phase")?.unwrap_or(0.0);
            ForceProfile::sinusoidal(a, w, phase)
        }
        "piecewise_linear" | "tabulated" => {
            let (pl, text) = doc.take("force", "points").ok_or(ConfigError {
                line: Some(line),
                kind: ConfigErrorKind::MissingKey { section: "force", key: "points" },
            })?;
            let points = parse_points(pl, "points", &text)?;
            let built = if kind == "tabulated" {
                ForceProfile::tabulated(points)
            } else {
                ForceProfile::piecewise_linear(points)
            };
            built.map_err(|e| invalid(Some(pl), e))?
        }
        other => {
            return Err(ConfigError::at(
                line,
                ConfigErrorKind::BadValue { key: "kind".into(), reason: format!("unknown force kind `{other}`") },
            ))
        }
    };
    Ok(profile)
}

const INVARIANT_KEYS: [&str; 5] = ["F0", "A0", "B0", "C0", "alpha0"];

fn parse_packet(doc: &mut Document, system: System) -> Result<PacketConfig> {
    let x0 = doc.float("packet", "x0")?.unwrap_or(0.0);
    let p0 = doc.float("packet", "p0")?.unwrap_or(0.0);
    let sigma_line = doc.has("packet", "sigma");
    let invariant_keys: Vec<(&str, usize)> =
        INVARIANT_KEYS.iter().filter_map(|k| doc.has("packet", k).map(|l| (*k, l))).collect();

    if let Some(line) = sigma_line {
        if let Some((key, other)) = invariant_keys.first() {
            return Err(ConfigError::at(line.max(*other), ConfigErrorKind::BothPackets((*key).to_string())));
        }
    }
    if invariant_keys.is_empty() {
        let sigma = doc.float("packet", "sigma")?.unwrap_or(1.0);
        let params = GaussianMomentumParams::new(sigma, x0, p0).map_err(|e| invalid(sigma_line, e))?;
        return Ok(PacketConfig::Gaussian(params));
    }

    let f0 = doc.complex("packet", "F0")?;
    let a0 = doc.complex("packet", "A0")?;
    let b0 = doc.complex("packet", "B0")?;
    let c0 = doc.complex("packet", "C0")?.map(|(_, z)| z).unwrap_or_default();
    let alpha0 = doc.complex("packet", "alpha0")?;
    let one = Complex64::new(1.0, 0.0);
    let a0_value = a0.map(|(_, z)| z).unwrap_or(one);
    let (b0_value, ratio_line) = match (f0, b0) {
        (Some((line, _)), Some((other, _))) => {
            return Err(ConfigError::at(line.max(other), ConfigErrorKind::RatioConflict("F0".into())))
        }
        (Some((line, f)), None) => (f * a0_value, Some(line)),
        (None, Some((line, b))) => (b, Some(line)),
        (None, None) => (Complex64::new(0.0, 0.0), a0.map(|(l, _)| l)),
    };
    if a0_value == Complex64::new(0.0, 0.0) {
        return Err(ConfigError { line: a0.map(|(l, _)| l), kind: ConfigErrorKind::ZeroA0 });
    }
    let ratio = match f0 {
        Some((_, f)) => f,
        None => b0_value / a0_value,
    };
    let mode = classify_ratio(ratio).map_err(|e| ratio_error(ratio_line, e))?;
    let spec = InvariantSpec::new(a0_value, b0_value, c0).map_err(|e| ratio_error(ratio_line, e))?;
    let alpha0 = match (alpha0, mode) {
        (Some((_, a)), _) => a,
        (None, PacketMode::Gaussian) => {
            lrwp_core::normalized_alpha0(spec.ratio(), system.hbar).map_err(|e| ratio_error(ratio_line, e))?
        }
        (None, PacketMode::PlaneWave) => Complex64::new(0.0, 0.0),
    };
    Ok(PacketConfig::Invariant { spec, x0, p0, alpha0 })
}

fn parse_run(doc: &mut Document) -> Result<RunSection> {
    let bad = |line: usize, key: &str, reason: String| {
        ConfigError::at(line, ConfigErrorKind::BadValue { key: key.into(), reason })
    };
    let mode = match doc.take("run", "mode") {
        Some((line, v)) => Some(v.parse::<Mode>().map_err(|r| bad(line, "mode", r))?),
        None => None,
    };
    let outputs = doc.take("run", "outputs").map(|(_, v)| PathBuf::from(v));
    let axis = match doc.take("run", "sweep_axis") {
        Some((line, v)) => Some((line, v.parse::<SweepAxis>().map_err(|r| bad(line, "sweep_axis", r))?)),
        None => None,
    };
    let values = doc.take("run", "sweep_values");
    let sweep_mode = match doc.take("run", "sweep_mode") {
        Some((line, v)) => {
            let m = v.parse::<Mode>().map_err(|r| bad(line, "sweep_mode", r))?;
            if m == Mode::Sweep {
                return Err(bad(line, "sweep_mode", "a sweep cannot repeat itself".into()));
            }
            Some(m)
        }
        None => None,
    };
    let sweep = match (axis, values) {
        (None, None) => None,
        (Some((line, _)), None) => {
            return Err(ConfigError {
                line: Some(line),
                kind: ConfigErrorKind::MissingKey { section: "run", key: "sweep_values" },
            })
        }
        (None, Some((line, _))) => {
            return Err(ConfigError {
                line: Some(line),
                kind: ConfigErrorKind::MissingKey { section: "run", key: "sweep_axis" },
            })
        }
        (Some((_, axis)), Some((line, text))) => {
            let values = text
                .split(',')
                .map(|v| {
                    let v = v.trim();
                    v.parse::<f64>()
                        .map(|x| (v.to_string(), x))
                        .map_err(|_| bad(line, "sweep_values", format!("cannot parse `{v}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if values.is_empty() {
                return Err(bad(line, "sweep_values", "empty list".into()));
            }
            Some(SweepSpec { axis, values, mode: sweep_mode.unwrap_or(Mode::Validate) })
        }
    };
    Ok(RunSection { mode, outputs, sweep })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: &str = "[grid]\nx_min = -20\nx_max = 20\nn = 2048\ndt = 1e-3\nt_max = 2\n";

    fn err(text: &str) -> ConfigError {
        parse_config(text).unwrap_err()
    }

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0-0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("1+i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("2.5").unwrap(), c(2.5, 0.0));
        assert_eq!(parse_complex("1e-3-2E+2i").unwrap(), c(1e-3, -200.0));
        assert_eq!(parse_complex("-1e-2i").unwrap(), c(0.0, -1e-2));
        assert_eq!(parse_complex(" 3 - 4i ").unwrap(), c(3.0, -4.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
    }

    #[test]
    fn minimal_config_defaults() {
        let cfg = parse_config(GRID).unwrap();
        assert_eq!(cfg.system, System { mass: 1.0, hbar: 1.0 });
        assert_eq!(cfg.force, ForceProfile::Zero);
        assert_eq!(cfg.packet, PacketConfig::Gaussian(GaussianMomentumParams::new(1.0, 0.0, 0.0).unwrap()));
        assert_eq!(cfg.grid.output_every, 1);
        assert_eq!(cfg.run.mode, None);
    }

    #[test]
    fn sigma_sets_spreading_time() {
        let cfg = parse_config(&format!("[packet]\nsigma = 0.5\n{GRID}")).unwrap();
        let PacketConfig::Gaussian(g) = cfg.packet else { panic!() };
        assert_eq!(g.spreading_time(1.0, 1.0), 0.5);
    }

    #[test]
    fn physicality_gate() {
        let e = err(&format!("[packet]\nF0 = 0+1i\n{GRID}"));
        assert_eq!(e.kind, ConfigErrorKind::UnphysicalInvariant);
        assert_eq!(e.line, Some(2));
        assert!(e.to_string().contains("unphysical invariant: Im(F0) > 0"));

        let e = err(&format!("[packet]\nF0 = 0.5\n{GRID}"));
        assert_eq!(e.kind, ConfigErrorKind::DivergentInvariant);

        let e = err(&format!("[packet]\nA0 = 1\nB0 = 0+2i\n{GRID}"));
        assert_eq!(e.kind, ConfigErrorKind::UnphysicalInvariant);
        // A0 = i, B0 = −1: F0 = i
        let e = err(&format!("[packet]\nA0 = i\nB0 = -1\n{GRID}"));
        assert_eq!(e.kind, ConfigErrorKind::UnphysicalInvariant);
        assert_eq!(err(&format!("[packet]\nA0 = 0\nB0 = 1\n{GRID}")).kind, ConfigErrorKind::ZeroA0);
    }

    #[test]
    fn invariant_packets() {
        let cfg = parse_config(&format!("[packet]\nF0 = 0-0.5i\nx0 = 1\n{GRID}")).unwrap();
        let state = cfg.packet_state().unwrap();
        assert_eq!(state.spec().ratio(), Complex64::new(0.0, -0.5));
        assert_eq!(state.x0, 1.0);
        // default α0 normalizes
        let g = GaussianMomentumParams::new(1.0, 0.0, 0.0).unwrap().match_parameters(1.0, 1.0).unwrap();
        assert!((state.alpha0 - g.alpha0).norm() < 1e-15);

        let cfg = parse_config(&format!("[packet]\nF0 = 0\np0 = 2\n{GRID}")).unwrap();
        assert_eq!(cfg.packet_state().unwrap().mode(), PacketMode::PlaneWave);

        let cfg = parse_config(&format!("[packet]\nA0 = 2\nB0 = 0-1i\nC0 = 1+1i\nalpha0 = 0.1\n{GRID}")).unwrap();
        let state = cfg.packet_state().unwrap();
        assert_eq!(state.spec().ratio(), Complex64::new(0.0, -0.5));
        assert_eq!(state.spec().c0(), Complex64::new(1.0, 1.0));
        assert_eq!(state.alpha0, Complex64::new(0.1, 0.0));
    }

    #[test]
    fn both_parameterizations_rejected() {
        let e = err(&format!("[packet]\nsigma = 1\nF0 = 0-1i\n{GRID}"));
        assert_eq!(e.kind, ConfigErrorKind::BothPackets("F0".into()));
        assert_eq!(e.line, Some(3));
        let e = err(&format!("[packet]\nF0 = 0-1i\nB0 = 0-1i\n{GRID}"));
        assert_eq!(e.kind, ConfigErrorKind::RatioConflict("F0".into()));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(err("[system]\nm = 1\n").kind, ConfigErrorKind::MissingSection("grid"));
        let e = err(&format!("{GRID}bogus = 3\n"));
        assert_eq!(e.kind, ConfigErrorKind::UnknownKey { section: "grid".into(), key: "bogus".into() });
        assert_eq!(e.line, Some(7));
        assert_eq!(err(&format!("[extra]\n{GRID}")).kind, ConfigErrorKind::UnknownSection("extra".into()));
        assert!(matches!(err(&format!("{GRID}n = 4\n")).kind, ConfigErrorKind::DuplicateKey(_)));
        assert!(matches!(err("m = 1\n").kind, ConfigErrorKind::Syntax(_)));
        assert!(matches!(err(&format!("{GRID}[run]\nmode = fast\n")).kind, ConfigErrorKind::BadValue { .. }));
        assert_eq!(
            err("[grid]\nx_min = -1\nx_max = 1\nn = 64\ndt = 0.1\n").kind,
            ConfigErrorKind::MissingKey { section: "grid", key: "t_max" }
        );
        assert!(matches!(
            err("[grid]\nx_min = -1\nx_max = 1\nn = 100\ndt = 0.1\nt_max = 1\n").kind,
            ConfigErrorKind::Invalid(_)
        ));
    }

    #[test]
    fn forces_and_sweeps() {
        let text = format!(
            "# comment\n[force]\nkind = sinusoidal\namplitude = 1 # inline\nomega = 2\n{GRID}[run]\nmode = sweep\nsweep_axis = dt\nsweep_values = 2e-3, 1e-3\n"
        );
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.force, ForceProfile::sinusoidal(1.0, 2.0, 0.0));
        let sweep = cfg.run.sweep.unwrap();
        assert_eq!(sweep.axis, SweepAxis::Dt);
        assert_eq!(sweep.values, vec![("2e-3".to_string(), 2e-3), ("1e-3".to_string(), 1e-3)]);
        assert_eq!(sweep.mode, Mode::Validate);

        let cfg = parse_config(&format!("[force]\nkind = piecewise_linear\npoints = 0:0, 1:1, 2:0\n{GRID}")).unwrap();
        assert!(matches!(cfg.force, ForceProfile::PiecewiseLinear(_)));
        let e = err(&format!("[force]\nkind = tabulated\npoints = 0:0, 1:1\n{GRID}"));
        assert!(matches!(e.kind, ConfigErrorKind::Invalid(_)));
        assert!(matches!(err(&format!("[force]\nkind = constant\n{GRID}")).kind, ConfigErrorKind::MissingKey { .. }));
    }
}
