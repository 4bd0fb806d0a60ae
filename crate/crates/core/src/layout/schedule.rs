use crate::error::{invalid, Result};

/// Per-iteration step sizes `η(0) > η(1) > ... > η(T-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealingSchedule {
    etas: Vec<f64>,
}

impl AnnealingSchedule {
    pub fn eta(&self, t: usize) -> f64 {
        self.etas[t]
    }

    pub fn len(&self) -> usize {
        self.etas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.etas.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.etas
    }
}

/// Exponential decay from `1 / w_min` down to `eps / w_max` over
/// `iterations` steps. A single iteration uses `1 / w_min`.
pub fn make_schedule(w_min: f64, w_max: f64, eps: f64, iterations: usize) -> Result<AnnealingSchedule> {
    if !(w_min > 0.0 && w_min <= w_max && w_max.is_finite()) {
        return Err(invalid(format!("need 0 < w_min <= w_max, got {w_min}, {w_max}")));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(invalid(format!("eps must be positive, got {eps}")));
    }
    if iterations == 0 {
        return Err(invalid("iterations must be at least 1"));
    }
    let eta_max = 1.0 / w_min;
    let eta_final = eps / w_max;
    if iterations == 1 {
        return Ok(AnnealingSchedule { etas: vec![eta_max] });
    }
    let decay = (eta_max / eta_final).ln() / (iterations - 1) as f64;
    let mut etas: Vec<f64> = (0..iterations).map(|t| eta_max * (-(t as f64) * decay).exp()).collect();
    etas[iterations - 1] = eta_final;
    Ok(AnnealingSchedule { etas })
}
