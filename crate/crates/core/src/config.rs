//! Resource caps, overridable through the environment.

/// Hard limits that keep every algorithm total. Exceeding one is reported
/// as `Error::ResourceCap`, never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest total degree allowed for intermediate polynomials.
    pub degree: usize,
    /// Deepest blow-up recursion allowed when computing heights.
    pub depth: usize,
    /// Most driver steps allowed during normalisation.
    pub iterations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { degree: 64, depth: 32, iterations: 256 }
    }
}

impl Caps {
    /// Defaults overridden by `CURVEAUT_DEGREE_CAP`, `CURVEAUT_DEPTH_CAP`
    /// and `CURVEAUT_ITERATION_CAP` when they hold positive integers.
    pub fn from_env() -> Caps {
        let read = |name: &str, default: usize| {
            std::env::var(name).ok().and_then(|v| v.trim().parse().ok()).filter(|&v| v > 0).unwrap_or(default)
        };
        let d = Caps::default();
        Caps {
            degree: read("CURVEAUT_DEGREE_CAP", d.degree),
            depth: read("CURVEAUT_DEPTH_CAP", d.depth),
            iterations: read("CURVEAUT_ITERATION_CAP", d.iterations),
        }
    }
}
