//! Rate regions at finite transmit power, in bits per channel use.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{enumerate_groups, partition_by_min, UserSet};
use crate::error::{domain, Result};
use crate::gdof_region::{build_region, ChannelStrengths, PowerExponents};
use crate::gndt::SystemConfig;
use crate::rational::to_f64;

/// Row comparisons are made up to this absolute slack.
pub const TOLERANCE: f64 = 1e-9;

/// Bits added to every coordinate of a boundary tuple by the gap certificate.
pub const GAP_BITS: f64 = 2.0;

/// Delay reduction factor used by the delay-rate certificate.
pub const DELAY_FACTOR: f64 = 2.01;

#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl RateRow {
    pub fn lhs(&self, point: &[f64]) -> f64 {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum()
    }
}

/// `{R >= 0 : row.lhs(R) <= row.rhs}`. `degenerate` marks the `P <= 1` regime,
/// where every row is clamped to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    pub variables: Vec<String>,
    pub rows: Vec<RateRow>,
    pub degenerate: bool,
}

impl RateRegion {
    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && point.iter().all(|&x| x >= -TOLERANCE)
            && self.rows.iter().all(|row| row.lhs(point) <= row.rhs + TOLERANCE)
    }

    /// Indices of rows met with equality.
    pub fn tight_rows(&self, point: &[f64]) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| (row.lhs(point) - row.rhs).abs() <= TOLERANCE)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_on_boundary(&self, point: &[f64]) -> bool {
        self.contains(point) && !self.tight_rows(point).is_empty()
    }

    /// Rows strictly violated.
    pub fn violated_rows(&self, point: &[f64]) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| row.lhs(point) > row.rhs + TOLERANCE)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn rate_unicast_var(k: usize) -> String {
    format!("R_{k}")
}

pub fn rate_multicast_var(group: &UserSet) -> String {
    let parts: Vec<String> = group.members().iter().map(|m| m.to_string()).collect();
    format!("R_{{{}}}", parts.join(","))
}

fn rate_variables(k_users: usize, sigma: usize) -> Result<Vec<String>> {
    let mut vars: Vec<String> = (1..=k_users).map(rate_unicast_var).collect();
    vars.extend(enumerate_groups(k_users, sigma)?.iter().map(rate_multicast_var));
    Ok(vars)
}

/// Unicast rates plus one rate per multicast group.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RatePoint {
    pub unicast: Vec<f64>,
    pub multicast: BTreeMap<UserSet, f64>,
}

impl RatePoint {
    pub fn to_vector(&self, sigma: usize) -> Result<Vec<f64>> {
        let mut v = self.unicast.clone();
        for group in enumerate_groups(self.unicast.len(), sigma)? {
            v.push(self.multicast.get(&group).copied().unwrap_or(0.0));
        }
        Ok(v)
    }

    pub fn from_vector(k_users: usize, sigma: usize, v: &[f64]) -> Result<Self> {
        let groups = enumerate_groups(k_users, sigma)?;
        if v.len() != k_users + groups.len() {
            return domain(format!("rate vector of length {} for K = {k_users}, sigma = {sigma}", v.len()));
        }
        Ok(RatePoint {
            unicast: v[..k_users].to_vec(),
            multicast: groups.into_iter().zip(v[k_users..].iter().copied()).collect(),
        })
    }
}

fn check_power(power: f64) -> Result<()> {
    if power.is_nan() || power <= 0.0 || power.is_infinite() {
        return domain(format!("power {power} must be a positive finite number"));
    }
    Ok(())
}

/// Cumulative row shapes shared by the inner and outer regions.
fn cumulative_shape(k_users: usize, sigma: usize) -> Result<Vec<Vec<f64>>> {
    let shape = build_region(sigma, &ChannelStrengths::symmetric(k_users))?;
    Ok(shape.rows().iter().map(|row| row.coeffs.iter().map(to_f64).collect()).collect())
}

fn cumulative_region(k_users: usize, sigma: usize, power: f64, rhs: impl Fn(usize) -> f64) -> Result<RateRegion> {
    check_power(power)?;
    let degenerate = power <= 1.0;
    let rows = cumulative_shape(k_users, sigma)?
        .into_iter()
        .enumerate()
        .map(|(i, coeffs)| RateRow { coeffs, rhs: if degenerate { 0.0 } else { rhs(i + 1) } })
        .collect();
    Ok(RateRegion { variables: rate_variables(k_users, sigma)?, rows, degenerate })
}

/// Per-layer rates for fixed power exponents: `R_k + sum_{S in class k} R_S <= ((b_{k+1}-b_k) log P - 1)^+`.
pub fn beta_rate_region_rows(sigma: usize, power: f64, beta: &PowerExponents) -> Result<RateRegion> {
    check_power(power)?;
    let k_users = beta.users();
    let partition = partition_by_min(k_users, sigma)?;
    let groups = enumerate_groups(k_users, sigma)?;
    let degenerate = power <= 1.0;
    let rows = (1..=k_users)
        .map(|k| {
            let mut coeffs = vec![0.0; k_users + groups.len()];
            coeffs[k - 1] = 1.0;
            for (g, group) in groups.iter().enumerate() {
                if partition.class(k).contains(group) {
                    coeffs[k_users + g] = 1.0;
                }
            }
            let rhs = if degenerate { 0.0 } else { (to_f64(&beta.width(k)) * power.log2() - 1.0).max(0.0) };
            RateRow { coeffs, rhs }
        })
        .collect();
    Ok(RateRegion { variables: rate_variables(k_users, sigma)?, rows, degenerate })
}

/// Achievable region: cumulative sums bounded by `(a_k log P - k)^+`.
pub fn inner_rate_region(sigma: usize, alpha: &ChannelStrengths, power: f64) -> Result<RateRegion> {
    cumulative_region(alpha.users(), sigma, power, |k| (to_f64(alpha.of(k)) * power.log2() - k as f64).max(0.0))
}

/// Outer bound: cumulative sums bounded by `log(1 + P^{a_k})`.
pub fn outer_rate_region(sigma: usize, alpha: &ChannelStrengths, power: f64) -> Result<RateRegion> {
    cumulative_region(alpha.users(), sigma, power, |k| (1.0 + power.powf(to_f64(alpha.of(k)))).log2())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapCertificate {
    /// Inner rows met with equality by the boundary tuple.
    pub tight_rows: Vec<usize>,
    /// Outer rows violated once every coordinate is raised by two bits.
    pub violated_rows: Vec<usize>,
    pub passed: bool,
}

/// Raises every coordinate of a boundary tuple of `inner` by two bits and
/// checks the result against `outer`.
pub fn certify_gap(inner: &RateRegion, outer: &RateRegion, boundary: &[f64]) -> Result<GapCertificate> {
    if !inner.is_on_boundary(boundary) {
        return domain("rate tuple is not on the boundary of the inner region");
    }
    let shifted: Vec<f64> = boundary.iter().map(|x| x + GAP_BITS).collect();
    let violated_rows = outer.violated_rows(&shifted);
    Ok(GapCertificate { tight_rows: inner.tight_rows(boundary), passed: !violated_rows.is_empty(), violated_rows })
}

pub fn constant_gap_certificate(
    sigma: usize,
    alpha: &ChannelStrengths,
    power: f64,
    boundary: &RatePoint,
) -> Result<GapCertificate> {
    let inner = inner_rate_region(sigma, alpha, power)?;
    let outer = outer_rate_region(sigma, alpha, power)?;
    certify_gap(&inner, &outer, &boundary.to_vector(sigma)?)
}

/// Scales a random nonnegative direction until the first row becomes tight.
pub fn sample_boundary_point<R: Rng>(region: &RateRegion, rng: &mut R) -> Vec<f64> {
    let direction: Vec<f64> = (0..region.dim()).map(|_| rng.gen::<f64>()).collect();
    let scale = region
        .rows
        .iter()
        .filter_map(|row| {
            let rate = row.lhs(&direction);
            (rate > 0.0).then(|| row.rhs.max(0.0) / rate)
        })
        .fold(f64::INFINITY, f64::min);
    let scale = if scale.is_finite() { scale } else { 0.0 };
    direction.into_iter().map(|d| d * scale).collect()
}

fn loads(config: &SystemConfig) -> Vec<f64> {
    (1..=config.k_users).map(|k| to_f64(&config.load(k))).collect()
}

/// Unicast rates deliverable alongside content at delay `T`:
/// `sum_{i<=k} R_i + load_k / T <= (a_k log P - k)^+`.
pub fn delay_rate_inner_region(delay: f64, config: &SystemConfig) -> Result<RateRegion> {
    if delay.is_nan() || delay <= 0.0 {
        return domain(format!("delay {delay} must be positive"));
    }
    let k_users = config.k_users;
    let log_p = config.power.log2();
    let rows = loads(config)
        .into_iter()
        .enumerate()
        .map(|(i, load)| {
            let k = i + 1;
            let cap = (to_f64(config.alpha.of(k)) * log_p - k as f64).max(0.0);
            RateRow { coeffs: (1..=k_users).map(|j| if j <= k { 1.0 } else { 0.0 }).collect(), rhs: cap - load / delay }
        })
        .collect();
    Ok(RateRegion { variables: (1..=k_users).map(rate_unicast_var).collect(), rows, degenerate: false })
}

/// Converse rows at delay `T`: `sum_{i<=k} R_i + load_k / (2.01 T) <= log(1 + P^{a_k})`.
pub fn delay_rate_outer_region(delay: f64, config: &SystemConfig) -> Result<RateRegion> {
    if delay.is_nan() || delay <= 0.0 {
        return domain(format!("delay {delay} must be positive"));
    }
    let k_users = config.k_users;
    let rows = loads(config)
        .into_iter()
        .enumerate()
        .map(|(i, load)| {
            let k = i + 1;
            let cap = (1.0 + config.power.powf(to_f64(config.alpha.of(k)))).log2();
            RateRow {
                coeffs: (1..=k_users).map(|j| if j <= k { 1.0 } else { 0.0 }).collect(),
                rhs: cap - load / (DELAY_FACTOR * delay),
            }
        })
        .collect();
    Ok(RateRegion { variables: (1..=k_users).map(rate_unicast_var).collect(), rows, degenerate: false })
}

/// Raises every rate by two bits and divides the delay by 2.01, then checks
/// the converse rows.
pub fn delay_gap_certificate(config: &SystemConfig, delay: f64, rates: &[f64]) -> Result<GapCertificate> {
    let inner = delay_rate_inner_region(delay, config)?;
    if !inner.is_on_boundary(rates) {
        return domain("rates are not on the boundary of the delay-rate region");
    }
    let outer = delay_rate_outer_region(delay / DELAY_FACTOR, config)?;
    let shifted: Vec<f64> = rates.iter().map(|x| x + GAP_BITS).collect();
    let violated_rows = outer.violated_rows(&shifted);
    Ok(GapCertificate { tight_rows: inner.tight_rows(rates), passed: !violated_rows.is_empty(), violated_rows })
}

/// Random delay at which the delay-rate region is nonempty, plus a boundary
/// rate tuple. `None` when no delay supports the content load.
pub fn sample_delay_boundary<R: Rng>(config: &SystemConfig, rng: &mut R) -> Option<(f64, Vec<f64>)> {
    let log_p = config.power.log2();
    let mut min_delay: f64 = 0.0;
    for (i, load) in loads(config).into_iter().enumerate() {
        let k = i + 1;
        let cap = (to_f64(config.alpha.of(k)) * log_p - k as f64).max(0.0);
        if load > 0.0 {
            if cap <= 0.0 {
                return None;
            }
            min_delay = min_delay.max(load / cap);
        }
    }
    let delay = if min_delay > 0.0 { min_delay * (1.0 + 3.0 * rng.gen::<f64>()) } else { 1.0 };
    let region = delay_rate_inner_region(delay, config).ok()?;
    Some((delay, sample_boundary_point(&region, rng)))
}

/// A boundary tuple of the inner region and its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCertificate {
    pub delay: Option<f64>,
    pub rates: Vec<f64>,
    pub certificate: GapCertificate,
}

/// Certifies `samples` random boundary tuples of the inner rate region.
pub fn certify_random_boundary(
    sigma: usize,
    alpha: &ChannelStrengths,
    power: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<SampledCertificate>> {
    let inner = inner_rate_region(sigma, alpha, power)?;
    let outer = outer_rate_region(sigma, alpha, power)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let rates = sample_boundary_point(&inner, &mut rng);
            let certificate = certify_gap(&inner, &outer, &rates)?;
            Ok(SampledCertificate { delay: None, rates, certificate })
        })
        .collect()
}

/// Certifies `samples` random delay-rate boundary tuples; empty when no delay
/// can carry the content load.
pub fn certify_random_delay(config: &SystemConfig, samples: usize, seed: u64) -> Result<Vec<SampledCertificate>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let Some((delay, rates)) = sample_delay_boundary(config, &mut rng) else {
            break;
        };
        let certificate = delay_gap_certificate(config, delay, &rates)?;
        out.push(SampledCertificate { delay: Some(delay), rates, certificate });
    }
    Ok(out)
}

/// Delay of content-plus-unicast delivery over a symmetric channel:
/// `[K(1-mu)/(1+K mu)] / (log(1+SNR) - sum R)^+`.
pub fn symmetric_delay(rates: &[f64], snr: f64, mu: f64, k_users: usize) -> Result<f64> {
    if snr.is_nan() || snr <= 0.0 {
        return domain(format!("SNR {snr} must be positive"));
    }
    if !(0.0..=1.0).contains(&mu) {
        return domain(format!("cache size {mu} outside [0, 1]"));
    }
    let k = k_users as f64;
    let load = k * (1.0 - mu) / (1.0 + k * mu);
    if load == 0.0 {
        return Ok(0.0);
    }
    let slack = (1.0 + snr).log2() - rates.iter().sum::<f64>();
    Ok(if slack <= 0.0 { f64::INFINITY } else { load / slack })
}

/// Two-user degraded channel with power split `q`: bounds on `R_1 + R_{1,2}` and `R_2`.
pub fn two_user_exact_bounds(snr_weak: f64, snr_strong: f64, q: f64) -> [f64; 2] {
    let q_bar = 1.0 - q;
    [(1.0 + q * snr_weak / (1.0 + q_bar * snr_weak)).log2(), (1.0 + q_bar * snr_strong).log2()]
}

/// Power splits mixing a uniform grid with a geometric grid near `q = 1`.
pub fn two_user_power_grid(power: f64, points: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=points).map(|i| i as f64 / points as f64).collect();
    grid.extend((0..=points).map(|i| 1.0 - power.powf(-(i as f64) / points as f64)));
    grid
}

/// Membership of `(R_1, R_2, R_{1,2})` in the union over the grid of exact two-user regions.
pub fn two_user_exact_contains(point: &[f64; 3], snr_weak: f64, snr_strong: f64, grid: &[f64]) -> bool {
    let [r1, r2, r12] = *point;
    grid.iter().any(|&q| {
        let [weak, strong] = two_user_exact_bounds(snr_weak, snr_strong, q);
        r1 + r12 <= weak + TOLERANCE && r2 <= strong + TOLERANCE
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse_rational_list, ratio, Rational};

    fn alpha(s: &str) -> ChannelStrengths {
        ChannelStrengths::new(parse_rational_list(s).unwrap()).unwrap()
    }

    fn random_alpha(rng: &mut ChaCha8Rng, k: usize) -> ChannelStrengths {
        let mut a: Vec<Rational> = (0..k - 1).map(|_| ratio(rng.gen_range(1..=40), 40)).collect();
        a.sort();
        a.push(int(1));
        ChannelStrengths::new(a).unwrap()
    }

    #[test]
    fn two_user_inner_rhs() {
        let inner = inner_rate_region(2, &alpha("0.5,1"), 2f64.powi(20)).unwrap();
        let rhs: Vec<f64> = inner.rows.iter().map(|r| r.rhs).collect();
        assert!((rhs[0] - 9.0).abs() < 1e-12 && (rhs[1] - 18.0).abs() < 1e-12);
        assert_eq!(inner.variables, ["R_1", "R_2", "R_{1,2}"]);
    }

    #[test]
    fn weak_power_clamps_to_zero() {
        let inner = inner_rate_region(2, &alpha("0.5,1"), 3.0).unwrap();
        assert!(inner.rows.iter().all(|r| r.rhs == 0.0));
        assert!(!inner.degenerate);
        let flat = inner_rate_region(2, &alpha("0.5,1"), 0.5).unwrap();
        assert!(flat.degenerate && flat.rows.iter().all(|r| r.rhs == 0.0));
        assert!(inner_rate_region(2, &alpha("0.5,1"), -1.0).is_err());
    }

    #[test]
    fn outer_rhs_exact_power() {
        let outer = outer_rate_region(2, &alpha("0.5,1"), 1023.0).unwrap();
        assert!((outer.rows[1].rhs - 10.0).abs() < 1e-12);
    }

    #[test]
    fn nesting_and_gap_per_row() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 2..=5 {
            let a = random_alpha(&mut rng, k);
            for sigma in 2..=k {
                let mut previous: Option<Vec<f64>> = None;
                for e in [2, 4, 10, 20, 40] {
                    let power = 2f64.powi(e);
                    let inner = inner_rate_region(sigma, &a, power).unwrap();
                    let outer = outer_rate_region(sigma, &a, power).unwrap();
                    for (i, (ri, ro)) in inner.rows.iter().zip(&outer.rows).enumerate() {
                        assert_eq!(ri.coeffs, ro.coeffs);
                        assert!(ri.rhs <= ro.rhs);
                        assert!(ro.rhs - ri.rhs <= (i + 2) as f64 + TOLERANCE);
                    }
                    let rhs: Vec<f64> = outer.rows.iter().map(|r| r.rhs).collect();
                    if let Some(prev) = &previous {
                        assert!(prev.iter().zip(&rhs).all(|(p, c)| p <= c));
                    }
                    previous = Some(rhs);
                }
            }
        }
    }

    #[test]
    fn inner_rows_approach_gdof_rows() {
        let a = alpha("0.3,0.55,0.8,1");
        for e in [10, 20, 40] {
            let power = 2f64.powi(e);
            let inner = inner_rate_region(2, &a, power).unwrap();
            for (i, row) in inner.rows.iter().enumerate() {
                let k = (i + 1) as f64;
                let err = (row.rhs / power.log2() - to_f64(a.of(i + 1))).abs();
                assert!(err <= k / power.log2() + TOLERANCE);
            }
        }
    }

    #[test]
    fn beta_rows() {
        let a = alpha("0.4,0.9,1");
        let beta = PowerExponents::new(vec![int(0), ratio(1, 5), ratio(1, 5)], &a).unwrap();
        let region = beta_rate_region_rows(2, 2f64.powi(20), &beta).unwrap();
        let rhs: Vec<f64> = region.rows.iter().map(|r| r.rhs).collect();
        assert!((rhs[0] - 3.0).abs() < 1e-9);
        assert_eq!(rhs[1], 0.0);
        assert!((rhs[2] - 15.0).abs() < 1e-9);
        assert_eq!(region.rows[0].coeffs, [1.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        assert_eq!(region.rows[2].coeffs, [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let tiny = beta_rate_region_rows(2, 2.0, &beta).unwrap();
        assert!(tiny.rows.iter().all(|r| r.rhs == 0.0));
    }

    #[test]
    fn boundary_samples_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let k = rng.gen_range(2..=4);
            let sigma = rng.gen_range(2..=k);
            let a = random_alpha(&mut rng, k);
            let power = 2f64.powi(rng.gen_range(4..=40));
            let inner = inner_rate_region(sigma, &a, power).unwrap();
            let point = sample_boundary_point(&inner, &mut rng);
            let rate_point = RatePoint::from_vector(k, sigma, &point).unwrap();
            assert!(constant_gap_certificate(sigma, &a, power, &rate_point).unwrap().passed);
        }
    }

    #[test]
    fn interior_point_is_rejected() {
        let a = alpha("0.5,1");
        let inner = inner_rate_region(2, &a, 2f64.powi(20)).unwrap();
        let outer = outer_rate_region(2, &a, 2f64.powi(20)).unwrap();
        assert!(certify_gap(&inner, &outer, &[1.0, 1.0, 1.0]).is_err());
        assert!(certify_gap(&inner, &outer, &[0.0, 9.0, 9.0]).unwrap().passed);
    }

    fn config(k: usize, n: usize, mu: Rational, a: &str, power: f64) -> SystemConfig {
        SystemConfig::new(k, n, mu, alpha(a), power).unwrap()
    }

    #[test]
    fn delay_region_without_content() {
        let c = config(3, 3, int(1), "0.4,0.9,1", 2f64.powi(20));
        let region = delay_rate_inner_region(0.5, &c).unwrap();
        let inner = inner_rate_region(2, &c.alpha, c.power).unwrap();
        for (d, i) in region.rows.iter().zip(&inner.rows) {
            assert_eq!(d.rhs, i.rhs);
        }
        assert!(delay_rate_inner_region(0.0, &c).is_err());
    }

    #[test]
    fn delay_region_scales_linearly() {
        let c = config(3, 3, ratio(1, 3), "0.4,0.9,1", 2f64.powi(30));
        let loads = loads(&c);
        let delay = 0.2;
        let region = delay_rate_inner_region(delay, &c).unwrap();
        let point = sample_boundary_point(&region, &mut ChaCha8Rng::seed_from_u64(4));
        let tight = region.tight_rows(&point)[0];
        let t = 0.5;
        let lhs = region.rows[tight].lhs(&point) + loads[tight] / delay;
        let scaled: Vec<f64> = point.iter().map(|x| x * t).collect();
        let scaled_lhs = region.rows[tight].lhs(&scaled) + t * loads[tight] / delay;
        assert!((scaled_lhs - t * lhs).abs() < 1e-9);
    }

    #[test]
    fn delay_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut passed = 0;
        while passed < 100 {
            let k = rng.gen_range(1..=4);
            let n = rng.gen_range(1..=4);
            let mu = ratio(rng.gen_range(0..=8), 8);
            let power = 2f64.powi(rng.gen_range(4..=40));
            let c = SystemConfig::new(k, n, mu, random_alpha(&mut rng, k), power).unwrap();
            if let Some((delay, rates)) = sample_delay_boundary(&c, &mut rng) {
                assert!(delay_gap_certificate(&c, delay, &rates).unwrap().passed);
                passed += 1;
            }
        }
    }

    #[test]
    fn seeded_drivers_are_deterministic() {
        let a = alpha("0.3,0.7,1");
        let first = certify_random_boundary(2, &a, 2f64.powi(16), 10, 42).unwrap();
        assert_eq!(first, certify_random_boundary(2, &a, 2f64.powi(16), 10, 42).unwrap());
        assert!(first.iter().all(|s| s.certificate.passed));
        let c = config(3, 2, ratio(1, 3), "0.3,0.7,1", 2f64.powi(16));
        let delays = certify_random_delay(&c, 10, 1).unwrap();
        assert_eq!(delays.len(), 10);
        assert!(delays.iter().all(|s| s.certificate.passed && s.delay.is_some()));
        let starved = config(2, 2, int(0), "0.1,1", 4.0);
        assert!(certify_random_delay(&starved, 10, 1).unwrap().is_empty());
    }

    #[test]
    fn symmetric_delays() {
        assert!((symmetric_delay(&[], 1.0, 0.0, 1).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(symmetric_delay(&[1.0], 3.0, 1.0, 4).unwrap(), 0.0);
        assert!(symmetric_delay(&[1.0, 1.0], 3.0, 0.5, 4).unwrap().is_infinite());
        // two users, mu = 1/2: one coded message of half a file
        assert!((symmetric_delay(&[], 3.0, 0.5, 2).unwrap() - 0.25).abs() < 1e-12);
        assert!(symmetric_delay(&[], 0.0, 0.5, 2).is_err());
    }

    #[test]
    fn two_user_sandwich() {
        let a = alpha("0.6,1");
        let power = 2f64.powi(12);
        let (snr_weak, snr_strong) = (power.powf(0.6), power);
        let grid = two_user_power_grid(power, 2000);
        let inner = inner_rate_region(2, &a, power).unwrap();
        let outer = outer_rate_region(2, &a, power).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let p = sample_boundary_point(&inner, &mut rng);
            assert!(two_user_exact_contains(&[p[0], p[1], p[2]], snr_weak, snr_strong, &grid));
        }
        for &q in &grid {
            let [weak, strong] = two_user_exact_bounds(snr_weak, snr_strong, q);
            // corner points of the exact region
            for point in [[weak, strong, 0.0], [0.0, strong, weak]] {
                assert!(outer.contains(&point), "q = {q}");
            }
        }
    }
}
