/// Fewer outage events than this and an estimate is flagged low-confidence.
pub const MIN_EVENTS: u64 = 20;

const Z95: f64 = 1.959_963_984_540_054;

/// Monte Carlo probability estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    /// sqrt(p̂(1 − p̂)/n)
    pub std_err: f64,
    /// 95% interval: Wald when p̂·n ≥ 20, Wilson score otherwise.
    pub ci95: (f64, f64),
    pub n: u64,
    pub events: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn from_counts(events: u64, n: u64, seed: u64) -> Self {
        assert!(n > 0 && events <= n, "invalid counts {events}/{n}");
        let nf = n as f64;
        let p_hat = events as f64 / nf;
        let std_err = (p_hat * (1.0 - p_hat) / nf).sqrt();
        let ci95 = if p_hat * nf < MIN_EVENTS as f64 {
            wilson(p_hat, nf)
        } else {
            ((p_hat - Z95 * std_err).max(0.0), (p_hat + Z95 * std_err).min(1.0))
        };
        Self { p_hat, std_err, ci95, n, events, seed }
    }

    pub fn low_confidence(&self) -> bool {
        self.events < MIN_EVENTS
    }

    /// |p̂ − reference| in standard errors; infinite when p̂ has no spread but
    /// differs from the reference.
    pub fn z_score(&self, reference: f64) -> f64 {
        let d = (self.p_hat - reference).abs();
        if d == 0.0 {
            0.0
        } else if self.std_err == 0.0 {
            f64::INFINITY
        } else {
            d / self.std_err
        }
    }
}

fn wilson(p: f64, n: f64) -> (f64, f64) {
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wald_interval() {
        let e = Estimate::from_counts(500, 1000, 1);
        assert_eq!(e.p_hat, 0.5);
        assert!((e.std_err - (0.25f64 / 1000.0).sqrt()).abs() < 1e-15);
        assert!((e.ci95.0 - (0.5 - Z95 * e.std_err)).abs() < 1e-15);
        assert!(!e.low_confidence());
    }

    #[test]
    fn wilson_for_rare_events() {
        let e = Estimate::from_counts(0, 10_000, 3);
        assert_eq!(e.p_hat, 0.0);
        assert_eq!(e.ci95.0, 0.0);
        assert!(e.ci95.1 > 3e-4 && e.ci95.1 < 4.5e-4);
        assert!(e.low_confidence());
        let e = Estimate::from_counts(5, 10_000, 3);
        assert!(e.ci95.0 <= e.p_hat && e.p_hat <= e.ci95.1);
        assert!(e.ci95.0 > 0.0);
    }

    #[test]
    fn z_scores() {
        let e = Estimate::from_counts(100, 10_000, 0);
        assert!((e.z_score(0.01 + 2.0 * e.std_err) - 2.0).abs() < 1e-9);
        let all = Estimate::from_counts(10, 10, 0);
        assert_eq!(all.z_score(1.0), 0.0);
        assert!(all.z_score(0.9).is_infinite());
    }
}
