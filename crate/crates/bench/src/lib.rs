//! Shared operating points for the benchmarks.

use ncsec_core::{GncParams, LinkBudget, SecrecyRates};

pub struct OperatingPoint {
    pub rates: SecrecyRates,
    pub g_d: LinkBudget,
    pub g_e: LinkBudget,
    pub params: GncParams,
}

/// Partial-CSI point at γ̄D = `gd_db`, γ̄E = 10 dB, Rs = 0.5.
pub fn csi_point(gd_db: f64, m: u32) -> OperatingPoint {
    OperatingPoint {
        rates: SecrecyRates::partial_csi(0.5).expect("valid rate"),
        g_d: LinkBudget::from_db(gd_db).expect("valid snr"),
        g_e: LinkBudget::from_db(10.0).expect("valid snr"),
        params: GncParams::new(m, 2, 2).expect("valid params"),
    }
}

/// No-CSI point at R = 3, RE = 2, γ̄E = 2 dB.
pub fn nocsi_point(gd_db: f64) -> OperatingPoint {
    OperatingPoint {
        rates: SecrecyRates::no_csi(3.0, 2.0).expect("valid rates"),
        g_d: LinkBudget::from_db(gd_db).expect("valid snr"),
        g_e: LinkBudget::from_db(2.0).expect("valid snr"),
        params: GncParams::new(2, 2, 2).expect("valid params"),
    }
}
