use crate::error::{Error, Result};

pub const DEFAULT_MAX_SEQ: usize = 4096;
pub const DEFAULT_MAX_VERTICES: usize = 24;
/// Dominated sets are stored in a `u64`.
pub const HARD_MAX_VERTICES: usize = 32;

pub const ENV_MAX_SEQ: &str = "WATCHMAN_MAX_SEQ";
pub const ENV_MAX_VERTICES: &str = "WATCHMAN_MAX_VERTICES";

/// Size caps guarding generators, graph builders and the exact oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `a^k` accepted by generators and `build_de_bruijn_graph`.
    pub max_seq: usize,
    /// Largest vertex count accepted by the exact oracle.
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_seq: DEFAULT_MAX_SEQ,
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl Limits {
    /// Defaults overridden by `WATCHMAN_MAX_SEQ` / `WATCHMAN_MAX_VERTICES`.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Some(v) = read_env(ENV_MAX_SEQ)? {
            limits.max_seq = v;
        }
        if let Some(v) = read_env(ENV_MAX_VERTICES)? {
            limits.max_vertices = v;
        }
        limits.validate()?;
        Ok(limits)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_seq == 0 || self.max_vertices == 0 {
            return Err(Error::InvalidArgument("caps must be positive".into()));
        }
        if self.max_vertices > HARD_MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "oracle vertex cap {} exceeds hard limit {HARD_MAX_VERTICES}",
                self.max_vertices
            )));
        }
        Ok(())
    }

    /// Returns `a^k` if it fits under `max_seq`.
    pub fn check_power(&self, a: usize, k: usize) -> Result<usize> {
        let requested = (a as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if requested > self.max_seq as u128 {
            return Err(Error::cap("a^k", requested, self.max_seq));
        }
        Ok(requested as usize)
    }
}

fn read_env(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(s) => {
            s.trim().parse::<usize>().map(Some).map_err(|_| {
                Error::InvalidArgument(format!("{name}={s:?} is not a positive integer"))
            })
        }
        Err(_) => Ok(None),
    }
}
