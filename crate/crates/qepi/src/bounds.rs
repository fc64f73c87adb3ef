//! Closed-form classical-capacity bounds for thermal and classical noise
//! channels, with curve generation for the standard bound families.
//!
//! All values are computed in nats; bits are produced only at output
//! boundaries by dividing by ln 2.

use serde::{Deserialize, Serialize};

use crate::channels::ChannelSpec;
use crate::error::{Error, Result};

/// Threshold below which `x ln x` is treated as its `x → 0` limit.
const XLOGX_FLOOR: f64 = 1e-12;

/// Entropy of a thermal state with mean photon number `x`, in nats:
/// `g(x) = (x+1)ln(x+1) − x ln x`.
pub fn g(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "g is defined for x >= 0, got {x}"
        )));
    }
    if x < XLOGX_FLOOR {
        // x ln x → 0; ln(1+x) keeps the leading term accurate.
        return Ok((x + 1.0) * x.ln_1p());
    }
    Ok((x + 1.0) * x.ln_1p() - x * x.ln())
}

/// `g'(x) = ln((x+1)/x)`, used by tests and gap scans.
pub fn g_prime(x: f64) -> f64 {
    ((x + 1.0) / x).ln()
}

fn check_thermal_domain(lambda: f64, n_env: f64, n_signal: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "transmissivity must lie in [0,1], got {lambda}"
        )));
    }
    if n_env < 0.0 || n_signal < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "photon numbers must be nonnegative, got N_E={n_env}, N={n_signal}"
        )));
    }
    Ok(())
}

/// Holevo (coherent-modulation) lower bound for the thermal noise channel,
/// in nats: `g(λN + (1−λ)N_E) − g((1−λ)N_E)`.
pub fn holevo_lb(lambda: f64, n_env: f64, n_signal: f64) -> Result<f64> {
    check_thermal_domain(lambda, n_env, n_signal)?;
    Ok(g(lambda * n_signal + (1.0 - lambda) * n_env)? - g((1.0 - lambda) * n_env)?)
}

/// Upper bound from the additive-extension argument, in nats:
/// `g(λN / ((1−λ)N_E + 1))`.
pub fn additive_extension_ub(lambda: f64, n_env: f64, n_signal: f64) -> Result<f64> {
    check_thermal_domain(lambda, n_env, n_signal)?;
    g(lambda * n_signal / ((1.0 - lambda) * n_env + 1.0))
}

/// Upper bound from the linear entropy power inequality, in nats:
/// `g(λN + (1−λ)N_E) − (1−λ)g(N_E)`.
pub fn epi_ub(lambda: f64, n_env: f64, n_signal: f64) -> Result<f64> {
    check_thermal_domain(lambda, n_env, n_signal)?;
    Ok(g(lambda * n_signal + (1.0 - lambda) * n_env)? - (1.0 - lambda) * g(n_env)?)
}

/// Stronger upper bound at transmissivity ½ from the exponential-form
/// inequality, in nats: `g((N+N_E)/2) − ln(1 + e^{g(N_E)}) + ln 2`.
pub fn half_epi_ub(n_env: f64, n_signal: f64) -> Result<f64> {
    check_thermal_domain(0.5, n_env, n_signal)?;
    Ok(g(0.5 * (n_signal + n_env))? - (1.0 + g(n_env)?.exp()).ln() + std::f64::consts::LN_2)
}

/// Conjectured upper bound for general transmissivity, in nats:
/// `g(λN + (1−λ)N_E) − ln(λ + (1−λ)e^{g(N_E)})`.
///
/// Conditional on the unproven exponential-form inequality at general λ;
/// every serialized output carries that flag.
pub fn conjectured_ub(lambda: f64, n_env: f64, n_signal: f64) -> Result<f64> {
    check_thermal_domain(lambda, n_env, n_signal)?;
    Ok(g(lambda * n_signal + (1.0 - lambda) * n_env)?
        - (lambda + (1.0 - lambda) * g(n_env)?.exp()).ln())
}

/// Capacity bounds for the classical noise channel with variance ν, in nats:
/// `g(N+ν) − g(ν) ≤ C ≤ g(N+ν) − ln(1 + eν)`.
///
/// The upper bound inherits the conjectured inequality's conditional status.
pub fn classical_noise_bounds(nu: f64, n_signal: f64) -> Result<(f64, f64)> {
    if nu <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "classical noise variance must be positive, got {nu}"
        )));
    }
    if n_signal < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "signal photon number must be nonnegative, got {n_signal}"
        )));
    }
    let lb = g(n_signal + nu)? - g(nu)?;
    let ub = g(n_signal + nu)? - (1.0 + std::f64::consts::E * nu).ln();
    Ok((lb, ub))
}

/// The maximum-output-entropy term and the two minimum-output-entropy lower
/// bounds that assemble the EPI upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmaxComponents {
    /// `S_max = g(λN + (1−λ)N_E)`.
    pub s_max: f64,
    /// Linear-EPI bound on the per-use minimum output entropy: `(1−λ)g(N_E)`.
    pub s_min_linear: f64,
    /// Exponential-form bound at λ=½: `ln(1 + e^{g(N_E)}) − ln 2`.
    pub s_min_half: f64,
}

/// Components of the `S_max − S_min` capacity bound.
pub fn smax_ub_components(lambda: f64, n_env: f64, n_signal: f64) -> Result<SmaxComponents> {
    check_thermal_domain(lambda, n_env, n_signal)?;
    Ok(SmaxComponents {
        s_max: g(lambda * n_signal + (1.0 - lambda) * n_env)?,
        s_min_linear: (1.0 - lambda) * g(n_env)?,
        s_min_half: (1.0 + g(n_env)?.exp()).ln() - std::f64::consts::LN_2,
    })
}

/// The bound families a curve can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundIdentity {
    HolevoLb,
    AdditiveExtensionUb,
    EpiUb,
    HalfEpiUb,
    ConjecturedUb,
    SmaxUb,
    CnLb,
    CnUb,
}

impl BoundIdentity {
    pub const ALL: [BoundIdentity; 8] = [
        BoundIdentity::HolevoLb,
        BoundIdentity::AdditiveExtensionUb,
        BoundIdentity::EpiUb,
        BoundIdentity::HalfEpiUb,
        BoundIdentity::ConjecturedUb,
        BoundIdentity::SmaxUb,
        BoundIdentity::CnLb,
        BoundIdentity::CnUb,
    ];

    /// Identities that apply to a thermal noise channel.
    pub const THERMAL: [BoundIdentity; 6] = [
        BoundIdentity::HolevoLb,
        BoundIdentity::AdditiveExtensionUb,
        BoundIdentity::EpiUb,
        BoundIdentity::HalfEpiUb,
        BoundIdentity::ConjecturedUb,
        BoundIdentity::SmaxUb,
    ];

    /// Identities that apply to a classical noise channel.
    pub const CLASSICAL_NOISE: [BoundIdentity; 2] = [BoundIdentity::CnLb, BoundIdentity::CnUb];

    pub fn name(self) -> &'static str {
        match self {
            BoundIdentity::HolevoLb => "holevo_lb",
            BoundIdentity::AdditiveExtensionUb => "additive_extension_ub",
            BoundIdentity::EpiUb => "epi_ub",
            BoundIdentity::HalfEpiUb => "half_epi_ub",
            BoundIdentity::ConjecturedUb => "conjectured_ub",
            BoundIdentity::SmaxUb => "smax_ub",
            BoundIdentity::CnLb => "cn_lb",
            BoundIdentity::CnUb => "cn_ub",
        }
    }

    /// True for bounds that rest on the unproven exponential-form inequality.
    pub fn conditional(self) -> bool {
        matches!(self, BoundIdentity::ConjecturedUb | BoundIdentity::CnUb)
    }

    /// True for upper bounds (used by the ordering diagnostics).
    pub fn is_upper(self) -> bool {
        !matches!(self, BoundIdentity::HolevoLb | BoundIdentity::CnLb)
    }

    /// Evaluate the identity at signal photon number `n` for `spec`, in nats.
    pub fn evaluate(self, spec: &ChannelSpec, n: f64) -> Result<f64> {
        match (self, spec) {
            (BoundIdentity::HolevoLb, ChannelSpec::Thermal { lambda, n_env }) => {
                holevo_lb(*lambda, *n_env, n)
            }
            (BoundIdentity::HolevoLb, ChannelSpec::PureLoss { lambda }) => {
                holevo_lb(*lambda, 0.0, n)
            }
            (BoundIdentity::AdditiveExtensionUb, ChannelSpec::Thermal { lambda, n_env }) => {
                additive_extension_ub(*lambda, *n_env, n)
            }
            (BoundIdentity::AdditiveExtensionUb, ChannelSpec::PureLoss { lambda }) => {
                additive_extension_ub(*lambda, 0.0, n)
            }
            (BoundIdentity::EpiUb, ChannelSpec::Thermal { lambda, n_env }) => {
                epi_ub(*lambda, *n_env, n)
            }
            (BoundIdentity::EpiUb, ChannelSpec::PureLoss { lambda }) => epi_ub(*lambda, 0.0, n),
            (BoundIdentity::HalfEpiUb, ChannelSpec::Thermal { lambda, n_env }) => {
                if (*lambda - 0.5).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(
                        "half_epi_ub applies only at transmissivity 1/2".into(),
                    ));
                }
                half_epi_ub(*n_env, n)
            }
            (BoundIdentity::ConjecturedUb, ChannelSpec::Thermal { lambda, n_env }) => {
                conjectured_ub(*lambda, *n_env, n)
            }
            (BoundIdentity::ConjecturedUb, ChannelSpec::PureLoss { lambda }) => {
                conjectured_ub(*lambda, 0.0, n)
            }
            (BoundIdentity::SmaxUb, ChannelSpec::Thermal { lambda, n_env }) => {
                // Maximum output entropy alone, with no minimum-entropy
                // subtraction; the weakest upper bound plotted.
                Ok(smax_ub_components(*lambda, *n_env, n)?.s_max)
            }
            (BoundIdentity::CnLb, ChannelSpec::ClassicalNoise { nu }) => {
                Ok(classical_noise_bounds(*nu, n)?.0)
            }
            (BoundIdentity::CnUb, ChannelSpec::ClassicalNoise { nu }) => {
                Ok(classical_noise_bounds(*nu, n)?.1)
            }
            _ => Err(Error::InvalidParameter(format!(
                "bound {} does not apply to channel {:?}",
                self.name(),
                spec
            ))),
        }
    }
}

/// One evaluated point of a bound curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPoint {
    pub n: f64,
    pub identity: BoundIdentity,
    pub nats: f64,
    pub bits: f64,
    pub conditional: bool,
}

/// A family of capacity-bound curves over a grid of signal photon numbers.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCurve {
    pub spec: ChannelSpec,
    pub n_grid: Vec<f64>,
    pub points: Vec<BoundPoint>,
    /// Worst (most negative) value of `upper − holevo_lb` seen on the grid.
    pub min_ub_lb_margin: f64,
}

/// Evaluate the requested identities over `n_grid` for `spec`.
pub fn curve(spec: &ChannelSpec, identities: &[BoundIdentity], n_grid: &[f64]) -> Result<BoundCurve> {
    let mut points = Vec::with_capacity(identities.len() * n_grid.len());
    let mut min_margin = f64::INFINITY;
    let lb_identity = match spec {
        ChannelSpec::ClassicalNoise { .. } => BoundIdentity::CnLb,
        _ => BoundIdentity::HolevoLb,
    };
    for &n in n_grid {
        let lb = lb_identity.evaluate(spec, n)?;
        for &id in identities {
            let nats = id.evaluate(spec, n)?;
            if id.is_upper() {
                min_margin = min_margin.min(nats - lb);
            }
            points.push(BoundPoint {
                n,
                identity: id,
                nats,
                bits: nats / std::f64::consts::LN_2,
                conditional: id.conditional(),
            });
        }
    }
    Ok(BoundCurve {
        spec: spec.clone(),
        n_grid: n_grid.to_vec(),
        points,
        min_ub_lb_margin: min_margin,
    })
}

/// Uniform grid helper (inclusive endpoints).
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|i| lo + step * i as f64).collect()
}

/// Supremum of `half_epi_ub − holevo_lb` in bits over a scan domain.
pub fn half_epi_gap_sup_bits(n_grid: &[f64], n_env_values: &[f64]) -> Result<f64> {
    let mut sup = f64::NEG_INFINITY;
    for &ne in n_env_values {
        for &n in n_grid {
            let gap = half_epi_ub(ne, n)? - holevo_lb(0.5, ne, n)?;
            sup = sup.max(gap / std::f64::consts::LN_2);
        }
    }
    Ok(sup)
}

/// Supremum of the classical-noise `ub − lb` gap in nats over a scan domain.
pub fn classical_noise_gap_sup_nats(nu_grid: &[f64], n_grid: &[f64]) -> Result<f64> {
    let mut sup = f64::NEG_INFINITY;
    for &nu in nu_grid {
        for &n in n_grid {
            let (lb, ub) = classical_noise_bounds(nu, n)?;
            sup = sup.max(ub - lb);
        }
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const LN_2: f64 = std::f64::consts::LN_2;

    #[test]
    fn g_at_small_integers() {
        assert_eq!(g(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(g(1.0).unwrap(), 2.0 * LN_2, epsilon = 1e-15);
        // g(2) = 3 ln 3 − 2 ln 2 = ln(27/4)
        assert_abs_diff_eq!(g(2.0).unwrap(), (27.0f64 / 4.0).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(g(2.0).unwrap(), 1.909_542_504_884_438_6, epsilon = 1e-14);
        assert!(g(-0.1).is_err());
    }

    #[test]
    fn g_derivative_matches_finite_differences() {
        let h = 1e-5;
        for &x in &[0.3, 1.0, 2.5, 7.0, 20.0] {
            let fd = (g(x + h).unwrap() - g(x - h).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(fd, g_prime(x), epsilon = 1e-8);
        }
    }

    proptest! {
        #[test]
        fn g_monotone_and_concave(x in 1e-6f64..30.0, d in 1e-3f64..5.0) {
            let gx = g(x).unwrap();
            let gxd = g(x + d).unwrap();
            prop_assert!(gxd > gx);
            // Concavity: midpoint value above the chord.
            let mid = g(x + d / 2.0).unwrap();
            prop_assert!(mid >= (gx + gxd) / 2.0 - 1e-12);
        }
    }

    #[test]
    fn holevo_reduces_to_pure_loss_capacity() {
        for &(lambda, n) in &[(0.3, 4.0), (0.7, 1.5), (1.0, 10.0)] {
            assert_abs_diff_eq!(
                holevo_lb(lambda, 0.0, n).unwrap(),
                g(lambda * n).unwrap(),
                epsilon = 1e-14
            );
        }
        assert_eq!(holevo_lb(0.5, 2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn holevo_plug_in_case() {
        // λ=½, N_E=2, N=4 → g(3) − g(1)
        let expected = g(3.0).unwrap() - g(1.0).unwrap();
        assert_abs_diff_eq!(holevo_lb(0.5, 2.0, 4.0).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn additive_extension_cases() {
        assert_abs_diff_eq!(
            additive_extension_ub(0.6, 0.0, 5.0).unwrap(),
            g(3.0).unwrap(),
            epsilon = 1e-14
        );
        assert_eq!(additive_extension_ub(0.25, 5.0, 0.0).unwrap(), 0.0);
        // λ=¼, N_E=5, N=10 → g(2.5/4.75)
        assert_abs_diff_eq!(
            additive_extension_ub(0.25, 5.0, 10.0).unwrap(),
            g(2.5 / 4.75).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn epi_ub_cases() {
        assert_abs_diff_eq!(
            epi_ub(0.4, 0.0, 3.0).unwrap(),
            g(1.2).unwrap(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            epi_ub(1.0, 7.0, 3.0).unwrap(),
            g(3.0).unwrap(),
            epsilon = 1e-14
        );
        let expected = g(3.0).unwrap() - 0.5 * g(2.0).unwrap();
        assert_abs_diff_eq!(epi_ub(0.5, 2.0, 4.0).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn half_epi_ub_cases() {
        // N_E=0: correction terms cancel, leaving g(N/2).
        assert_abs_diff_eq!(
            half_epi_ub(0.0, 6.0).unwrap(),
            g(3.0).unwrap(),
            epsilon = 1e-14
        );
        let expected = g(3.0).unwrap() - (1.0 + g(2.0).unwrap().exp()).ln() + LN_2;
        assert_abs_diff_eq!(half_epi_ub(2.0, 4.0).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn half_epi_is_stronger_than_epi_at_half() {
        for ne in [0.5, 1.0, 2.0, 5.0] {
            for n in [0.0, 1.0, 4.0, 12.0, 30.0] {
                assert!(
                    half_epi_ub(ne, n).unwrap() <= epi_ub(0.5, ne, n).unwrap() + 1e-12,
                    "half-EPI bound above linear-EPI bound at N_E={ne}, N={n}"
                );
            }
        }
    }

    #[test]
    fn conjectured_reduces_to_half_epi_at_half() {
        for ne in [0.3, 1.0, 2.0, 6.0] {
            for n in [0.0, 2.0, 9.0, 25.0] {
                assert_abs_diff_eq!(
                    conjectured_ub(0.5, ne, n).unwrap(),
                    half_epi_ub(ne, n).unwrap(),
                    epsilon = 1e-13
                );
            }
        }
        assert_abs_diff_eq!(
            conjectured_ub(1.0, 4.0, 3.0).unwrap(),
            g(3.0).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn conjectured_tracks_holevo_on_quarter_slice() {
        // λ=¼, N_E=5: gap below 0.2 bits across the plotted range.
        for n in linspace(0.0, 30.0, 61) {
            let gap = conjectured_ub(0.25, 5.0, n).unwrap() - holevo_lb(0.25, 5.0, n).unwrap();
            assert!(gap >= -1e-12);
            assert!(gap / LN_2 < 0.2, "gap {gap} nats at N={n}");
        }
    }

    #[test]
    fn classical_noise_bound_cases() {
        let (lb, ub) = classical_noise_bounds(0.5, 0.0).unwrap();
        assert_abs_diff_eq!(lb, 0.0, epsilon = 1e-14);
        let expected_ub = g(0.5).unwrap() - (1.0 + std::f64::consts::E * 0.5).ln();
        assert_abs_diff_eq!(ub, expected_ub, epsilon = 1e-14);
        assert!(ub >= 0.0);
        assert!(classical_noise_bounds(0.0, 1.0).is_err());
    }

    #[test]
    fn classical_noise_limit_identity() {
        // (1−λ)e^{g(N_E)} → νe as λ→1 with (1−λ)N_E = ν.
        let nu = 0.5;
        let target = nu * std::f64::consts::E;
        let mut prev_err = f64::INFINITY;
        for lambda in [0.9, 0.99, 0.999, 0.9999] {
            let ne = nu / (1.0 - lambda);
            let value = (1.0 - lambda) * g(ne).unwrap().exp();
            let err = (value - target).abs();
            assert!(err < prev_err, "limit not improving at λ={lambda}");
            prev_err = err;
        }
        assert!(prev_err < 1e-3);
    }

    #[test]
    fn smax_components_recombine() {
        let c = smax_ub_components(0.5, 2.0, 4.0).unwrap();
        assert_abs_diff_eq!(
            c.s_max - c.s_min_linear,
            epi_ub(0.5, 2.0, 4.0).unwrap(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            c.s_max - c.s_min_half,
            half_epi_ub(2.0, 4.0).unwrap(),
            epsilon = 1e-15
        );
        assert_eq!(smax_ub_components(0.7, 0.0, 4.0).unwrap().s_min_linear, 0.0);
        let expected = (1.0 + g(2.0).unwrap().exp()).ln() - LN_2;
        assert_abs_diff_eq!(c.s_min_half, expected, epsilon = 1e-15);
    }

    #[test]
    fn headline_gap_bounds_hold_on_scan_domains() {
        let n_grid = linspace(0.0, 50.0, 201);
        let sup_bits = half_epi_gap_sup_bits(&n_grid, &[0.5, 1.0, 2.0, 5.0, 10.0]).unwrap();
        assert!(sup_bits <= 0.06, "half-EPI gap {sup_bits} bits");
        assert!(sup_bits > 0.0);

        let nu_grid = linspace(0.01, 10.0, 400);
        let sup_nats = classical_noise_gap_sup_nats(&nu_grid, &n_grid).unwrap();
        assert!(sup_nats <= 0.11, "classical-noise gap {sup_nats} nats");
        assert!(sup_nats / LN_2 <= 0.16);
    }

    #[test]
    fn curve_orders_upper_bounds_above_lower() {
        let spec = ChannelSpec::Thermal {
            lambda: 0.5,
            n_env: 2.0,
        };
        let ids = [
            BoundIdentity::HolevoLb,
            BoundIdentity::EpiUb,
            BoundIdentity::HalfEpiUb,
            BoundIdentity::AdditiveExtensionUb,
            BoundIdentity::ConjecturedUb,
            BoundIdentity::SmaxUb,
        ];
        let c = curve(&spec, &ids, &linspace(0.0, 12.0, 49)).unwrap();
        assert!(c.min_ub_lb_margin >= -1e-12);
        // bits column is nats/ln2 everywhere
        for p in &c.points {
            assert_abs_diff_eq!(p.bits * LN_2, p.nats, epsilon = 1e-12);
        }
    }
}
