use serde::{Deserialize, Serialize};

/// Upper estimate of the optimal systolic ratio of closed genus-`γ`
/// surfaces: `min(cap, C log²γ / γ)` for `γ >= 2`, `cap` below.
///
/// The default `C = 1/π` follows the known limsup, which says nothing at any
/// finite genus; treat results derived from it as conditional.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SRBoundFunction {
    pub cap: f64,
    pub coef: f64,
}

impl Default for SRBoundFunction {
    fn default() -> Self {
        SRBoundFunction {
            cap: 4.0 / 3.0,
            coef: std::f64::consts::FRAC_1_PI,
        }
    }
}

impl SRBoundFunction {
    pub fn eval(&self, genus: u64) -> f64 {
        if genus < 2 {
            return self.cap;
        }
        let g = genus as f64;
        let l = g.ln();
        self.cap.min(self.coef * l * l / g)
    }
}

/// Smallest `g` in `[2, g_max]` from which `SRbound(g + 1) <= log²g / (π g)`
/// holds at every genus up to `g_max`, or `None` when it fails at `g_max`.
pub fn estimate_g0(bound: &SRBoundFunction, g_max: u64) -> Option<u64> {
    let holds = |g: u64| {
        let x = g as f64;
        let l = x.ln();
        bound.eval(g + 1) <= l * l / (std::f64::consts::PI * x)
    };
    if g_max < 2 || !holds(g_max) {
        return None;
    }
    let mut g = g_max;
    while g > 2 && holds(g - 1) {
        g -= 1;
    }
    Some(g)
}
