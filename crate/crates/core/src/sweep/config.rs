use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::dynamics::Variant;
use crate::error::{Error, Result};

/// Generator used for each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Reduced,
    FiveLevel,
}

impl ModelKind {
    pub fn variant(self) -> Variant {
        match self {
            ModelKind::Reduced => Variant::Reduced,
            ModelKind::FiveLevel => Variant::FiveLevel,
        }
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "reduced" => Ok(ModelKind::Reduced),
            "five_level" | "five-level" => Ok(ModelKind::FiveLevel),
            other => Err(format!(
                "unknown model '{other}' (expected reduced or five_level)"
            )),
        }
    }
}

/// Density sweep in units where `gamma_vis` sets the time scale. Pump rates
/// are `k_i * n_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub gamma_vis: f64,
    pub gamma_uv_list: Vec<f64>,
    pub p_list: Vec<f64>,
    pub k_vis: f64,
    pub k_e: f64,
    pub k_uv: f64,
    pub ne_min: f64,
    pub ne_max: f64,
    pub ne_points: usize,
    pub model: ModelKind,
    /// Decay rate of `e`; only used by the five-level model. `None` means
    /// `1e6 * gamma_vis`.
    pub gamma_e: Option<f64>,
    pub delta: f64,
    pub output_path: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            gamma_vis: 1.0,
            gamma_uv_list: vec![0.1, 1.0, 5.0],
            p_list: vec![1.0, 0.0, -1.0],
            k_vis: 0.3,
            k_e: 0.1,
            k_uv: 0.001,
            ne_min: 1e-3,
            ne_max: 1e4,
            ne_points: 60,
            model: ModelKind::Reduced,
            gamma_e: None,
            delta: 0.0,
            output_path: None,
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub ne_min: Option<f64>,
    pub ne_max: Option<f64>,
    pub ne_points: Option<usize>,
    pub gamma_uv_list: Option<Vec<f64>>,
    pub p_list: Option<Vec<f64>>,
    pub model: Option<ModelKind>,
    pub output_path: Option<PathBuf>,
}

fn parse_number<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse::<T>().map_err(|_| Error::Config {
        line: Some(line),
        field: Some(key.to_string()),
        message: format!("cannot parse '{value}'"),
    })
}

fn parse_list(key: &str, value: &str, line: usize) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|item| parse_number::<f64>(key, item.trim(), line))
        .collect()
}

/// Parse a list given on the command line, e.g. `--p=1,0,-1`.
pub fn parse_flag_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|item| {
            item.trim()
                .parse::<f64>()
                .map_err(|_| Error::config(key, format!("cannot parse '{item}'")))
        })
        .collect()
}

impl SweepConfig {
    /// Parse flat `key = value` text. `#` and `;` start comments; lists are
    /// comma separated. Unknown keys are errors.
    pub fn from_ini_str(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split(['#', ';']).next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Config {
                    line: Some(line),
                    field: None,
                    message: format!("expected 'key = value', found '{content}'"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "gamma_vis" => cfg.gamma_vis = parse_number(key, value, line)?,
                "gamma_uv_list" | "gamma_uv" => cfg.gamma_uv_list = parse_list(key, value, line)?,
                "p_list" | "p" => cfg.p_list = parse_list(key, value, line)?,
                "k_vis" => cfg.k_vis = parse_number(key, value, line)?,
                "k_e" => cfg.k_e = parse_number(key, value, line)?,
                "k_uv" => cfg.k_uv = parse_number(key, value, line)?,
                "ne_min" => cfg.ne_min = parse_number(key, value, line)?,
                "ne_max" => cfg.ne_max = parse_number(key, value, line)?,
                "ne_points" => cfg.ne_points = parse_number(key, value, line)?,
                "model" => {
                    cfg.model = value.parse().map_err(|message| Error::Config {
                        line: Some(line),
                        field: Some(key.to_string()),
                        message,
                    })?
                }
                "gamma_e" => cfg.gamma_e = Some(parse_number(key, value, line)?),
                "delta" => cfg.delta = parse_number(key, value, line)?,
                "output_path" => cfg.output_path = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config {
                        line: Some(line),
                        field: Some(other.to_string()),
                        message: "unknown key".into(),
                    })
                }
            }
        }
        Ok(cfg)
    }

    pub fn apply_overrides(mut self, o: &ConfigOverrides) -> Self {
        if let Some(v) = o.ne_min {
            self.ne_min = v;
        }
        if let Some(v) = o.ne_max {
            self.ne_max = v;
        }
        if let Some(v) = o.ne_points {
            self.ne_points = v;
        }
        if let Some(v) = &o.gamma_uv_list {
            self.gamma_uv_list = v.clone();
        }
        if let Some(v) = &o.p_list {
            self.p_list = v.clone();
        }
        if let Some(v) = o.model {
            self.model = v;
        }
        if let Some(v) = &o.output_path {
            self.output_path = Some(v.clone());
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::config(
                    field,
                    format!("{v} must be positive and finite"),
                ))
            }
        };
        positive("gamma_vis", self.gamma_vis)?;
        positive("k_vis", self.k_vis)?;
        positive("k_e", self.k_e)?;
        positive("k_uv", self.k_uv)?;
        positive("ne_min", self.ne_min)?;
        positive("ne_max", self.ne_max)?;
        if self.ne_max <= self.ne_min {
            return Err(Error::config("ne_max", "must exceed ne_min"));
        }
        if self.ne_points < 2 {
            return Err(Error::config("ne_points", "need at least 2 grid points"));
        }
        if self.gamma_uv_list.is_empty() {
            return Err(Error::config("gamma_uv_list", "empty list"));
        }
        for &g in &self.gamma_uv_list {
            positive("gamma_uv_list", g)?;
        }
        if self.p_list.is_empty() {
            return Err(Error::config("p_list", "empty list"));
        }
        for &p in &self.p_list {
            if !(p.is_finite() && p.abs() <= 1.0) {
                return Err(Error::config("p_list", format!("{p} outside [-1, 1]")));
            }
        }
        if let Some(ge) = self.gamma_e {
            positive("gamma_e", ge)?;
        }
        if !self.delta.is_finite() {
            return Err(Error::config("delta", "must be finite"));
        }
        Ok(())
    }

    pub fn gamma_e_value(&self) -> f64 {
        self.gamma_e.unwrap_or(1e6 * self.gamma_vis)
    }

    /// Logarithmically spaced densities; the end points are exact.
    pub fn ne_grid(&self) -> Vec<f64> {
        let n = self.ne_points;
        let (lo, hi) = (self.ne_min.log10(), self.ne_max.log10());
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.ne_min
                } else if i == n - 1 {
                    self.ne_max
                } else {
                    10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64)
                }
            })
            .collect()
    }
}

/// Read a config file (if given), apply flag overrides and validate.
pub fn parse_config(path: Option<&Path>, overrides: &ConfigOverrides) -> Result<SweepConfig> {
    let base = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config {
                line: None,
                field: None,
                message: format!("cannot read {}: {e}", p.display()),
            })?;
            SweepConfig::from_ini_str(&text)?
        }
        None => SweepConfig::default(),
    };
    let cfg = base.apply_overrides(overrides);
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(
            SweepConfig::from_ini_str("").unwrap(),
            SweepConfig::default()
        );
        assert_eq!(
            SweepConfig::from_ini_str("# only a comment\n\n").unwrap(),
            SweepConfig::default()
        );
        let d = SweepConfig::default();
        assert_eq!(d.gamma_uv_list, vec![0.1, 1.0, 5.0]);
        assert_eq!(d.p_list, vec![1.0, 0.0, -1.0]);
        assert_eq!((d.k_vis, d.k_e, d.k_uv), (0.3, 0.1, 0.001));
        assert_eq!(d.gamma_e_value(), 1e6);
    }

    #[test]
    fn parses_keys() {
        let cfg = SweepConfig::from_ini_str(
            "gamma_vis = 2\ngamma_uv_list = 1, 5 ; inline comment\np_list=1,-1\nmodel = five_level\nne_points = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.gamma_vis, 2.0);
        assert_eq!(cfg.gamma_uv_list, vec![1.0, 5.0]);
        assert_eq!(cfg.p_list, vec![1.0, -1.0]);
        assert_eq!(cfg.model, ModelKind::FiveLevel);
        assert_eq!(cfg.ne_points, 7);
    }

    #[test]
    fn errors_carry_line_and_field() {
        let err = SweepConfig::from_ini_str("gamma_vis = 1\nbogus = 3\n").unwrap_err();
        match err {
            Error::Config { line, field, .. } => {
                assert_eq!(line, Some(2));
                assert_eq!(field.as_deref(), Some("bogus"));
            }
            other => panic!("{other:?}"),
        }
        let err = SweepConfig::from_ini_str("\n\nk_e = abc").unwrap_err();
        assert!(matches!(err, Error::Config { line: Some(3), .. }));
        assert_eq!(err.exit_code(), 2);
        assert!(SweepConfig::from_ini_str("no equals sign").is_err());
        assert!(SweepConfig::from_ini_str("model = full").is_err());
    }

    #[test]
    fn validation() {
        let base = SweepConfig::default;
        let bad = [
            SweepConfig {
                ne_min: 0.0,
                ..base()
            },
            SweepConfig {
                ne_max: 1e-3,
                ..base()
            },
            SweepConfig {
                ne_points: 1,
                ..base()
            },
            SweepConfig {
                p_list: vec![1.5],
                ..base()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Config { .. })));
        }
        assert!(SweepConfig::default().validate().is_ok());
    }

    #[test]
    fn flag_overrides_win() {
        let file = SweepConfig::from_ini_str("gamma_uv_list = 0.1, 1\nne_points = 5").unwrap();
        let o = ConfigOverrides {
            gamma_uv_list: Some(vec![5.0]),
            ..Default::default()
        };
        let cfg = file.apply_overrides(&o);
        assert_eq!(cfg.gamma_uv_list, vec![5.0]);
        assert_eq!(cfg.ne_points, 5);
    }

    #[test]
    fn grid_end_points_exact() {
        let g = SweepConfig::default().ne_grid();
        assert_eq!(g.len(), 60);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[59], 1e4);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn flag_lists() {
        assert_eq!(
            parse_flag_list("p", "1,0,-1").unwrap(),
            vec![1.0, 0.0, -1.0]
        );
        assert!(parse_flag_list("p", "1,x").is_err());
    }
}
