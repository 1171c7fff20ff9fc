use std::fmt;

/// Environment variable consulted by [`Guard::from_env`].
pub const GUARD_ENV_VAR: &str = "CUBEPLAN_MAX_STATES";

/// Ceiling on the number of states (ideals, arm positions) any enumeration
/// may materialize. State counts grow exponentially, so every enumerating
/// operation takes one of these and fails cleanly when it would be exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Guard {
    pub max_states: u64,
}

impl Guard {
    pub const DEFAULT_MAX_STATES: u64 = 10_000_000;

    pub const fn new(max_states: u64) -> Self {
        Guard { max_states }
    }

    /// Reads the ceiling from [`GUARD_ENV_VAR`], falling back to the default
    /// when the variable is unset or not a positive integer.
    pub fn from_env() -> Self {
        std::env::var(GUARD_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .map(Guard::new)
            .unwrap_or_default()
    }

    #[inline]
    pub fn allows(&self, count: u64) -> bool {
        count <= self.max_states
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard::new(Self::DEFAULT_MAX_STATES)
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} states", self.max_states)
    }
}
