//! Optional TOML config named by `POSETLAB_CONFIG`. Flags take precedence.
//!
//! ```toml
//! depth = 4          # export depth
//! nstar_slack = 3    # oracle depth above the uniformity threshold
//! [bounds]
//! M = 8
//! s = 3
//! ```

use serde::Deserialize;

use posetlab::gallery::johnstone::Bounds;

pub const ENV_VAR: &str = "POSETLAB_CONFIG";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    depth: Option<u64>,
    nstar_slack: Option<u64>,
    bounds: Option<BoundsConfig>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsConfig {
    #[serde(rename = "M")]
    m: Option<u64>,
    s: Option<usize>,
}

impl Config {
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(ENV_VAR) {
            None => Ok(Config::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.to_string_lossy()))?;
                toml::from_str(&text).map_err(|e| format!("{}: {e}", path.to_string_lossy()))
            }
        }
    }

    pub fn depth(&self) -> u64 {
        self.depth.unwrap_or(4)
    }

    pub fn nstar_slack(&self) -> u64 {
        self.nstar_slack.unwrap_or(3)
    }

    pub fn bounds(&self, m: Option<u64>, s: Option<usize>) -> Bounds {
        let d = Bounds::default();
        let file = self.bounds.as_ref();
        Bounds {
            m: m.or(file.and_then(|b| b.m)).unwrap_or(d.m),
            s: s.or(file.and_then(|b| b.s)).unwrap_or(d.s),
        }
    }
}
