//! Resource limits, overridable from the environment.

pub const DEFAULT_MAX_WEYL: usize = 1_000_000;
pub const DEFAULT_MAX_BASIS: usize = 500_000;
pub const DEFAULT_MAX_LAMBDA: usize = 2_000_000;

pub const ENV_MAX_WEYL: &str = "LOGW_MAX_WEYL";
pub const ENV_MAX_BASIS: &str = "LOGW_MAX_BASIS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_weyl: usize,
    pub max_basis: usize,
    pub max_lambda: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_weyl: DEFAULT_MAX_WEYL,
            max_basis: DEFAULT_MAX_BASIS,
            max_lambda: DEFAULT_MAX_LAMBDA,
        }
    }
}

impl Caps {
    /// Defaults with `LOGW_MAX_WEYL` / `LOGW_MAX_BASIS` applied when set and parseable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = read_env(ENV_MAX_WEYL) {
            caps.max_weyl = v;
        }
        if let Some(v) = read_env(ENV_MAX_BASIS) {
            caps.max_basis = v;
        }
        caps
    }
}

fn read_env(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}
