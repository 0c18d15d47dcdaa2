//! Size guards for dense simulation.

/// Default cap on oracle arity for dense `2^(n+1)`-amplitude simulation.
pub const DEFAULT_MAX_ARITY: usize = 12;

/// Environment variable that overrides [`DEFAULT_MAX_ARITY`].
pub const MAX_ARITY_ENV: &str = "DQSIM_MAX_N";

/// The active arity cap: `DQSIM_MAX_N` when set to an integer, else 12.
pub fn max_arity() -> usize {
    std::env::var(MAX_ARITY_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ARITY)
}
