//! Content-delivery time (GNDT) versus non-content GDoF trade-offs.

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binom_q, delivery_load_sequence, lower_convex_envelope, EnvelopePoints};
use crate::error::{domain, Result};
use crate::gdof_region::{max_symmetric_gdof, unicast_var, ChannelStrengths};
use crate::polytope::{Polytope, Row};
use crate::rational::{positive_part, ratio, Extended, Rational};

/// Multiplicative gap between achievable and converse GNDT.
pub fn order_optimality_factor() -> Rational {
    ratio(201, 100)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub k_users: usize,
    pub n_files: usize,
    pub mu: Rational,
    pub alpha: ChannelStrengths,
    pub power: f64,
}

impl SystemConfig {
    pub fn new(k_users: usize, n_files: usize, mu: Rational, alpha: ChannelStrengths, power: f64) -> Result<Self> {
        if k_users == 0 || n_files == 0 {
            return domain("need at least one user and one file");
        }
        if alpha.users() != k_users {
            return domain(format!("{} strengths given for K = {k_users}", alpha.users()));
        }
        if mu.is_negative() || mu > Rational::one() {
            return domain(format!("cache size {mu} outside [0, 1]"));
        }
        if power.is_nan() || power <= 1.0 || !power.is_finite() {
            return domain(format!("power {power} must be a finite number above 1"));
        }
        Ok(SystemConfig { k_users, n_files, mu, alpha, power })
    }

    /// Same system with a different normalized cache size.
    pub fn with_mu(&self, mu: Rational) -> Result<Self> {
        SystemConfig::new(self.k_users, self.n_files, mu, self.alpha.clone(), self.power)
    }

    /// Aggregate cache size `K mu`.
    pub fn kmu(&self) -> Rational {
        &self.mu * Rational::from_integer(self.k_users.into())
    }

    /// `K mu` when it is an integer.
    pub fn integer_kmu(&self) -> Option<usize> {
        let kmu = self.kmu();
        kmu.is_integer().then(|| kmu.to_integer().try_into().unwrap())
    }

    /// Envelope of the per-file load seen by users `1..=k`, at `K mu`.
    pub fn load(&self, k: usize) -> Rational {
        let points = delivery_load_sequence(self.k_users, self.n_files, k);
        lower_convex_envelope(&points, &self.kmu()).expect("K mu lies in [0, K]")
    }

    /// Load at integer aggregate cache size `n`, no envelope.
    pub fn load_at_integer(&self, k: usize, n: usize) -> Rational {
        delivery_load_sequence(self.k_users, self.n_files, k).values()[n].clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffQuery {
    pub config: SystemConfig,
    pub r: Vec<Rational>,
}

impl TradeoffQuery {
    pub fn new(config: SystemConfig, r: Vec<Rational>) -> Result<Self> {
        if r.len() != config.k_users {
            return domain(format!("{} non-content GDoF given for K = {}", r.len(), config.k_users));
        }
        if r.iter().any(Signed::is_negative) {
            return domain("non-content GDoF must be nonnegative");
        }
        Ok(TradeoffQuery { config, r })
    }

    pub fn without_unicast(config: SystemConfig) -> Self {
        let r = vec![Rational::zero(); config.k_users];
        TradeoffQuery { config, r }
    }

    /// `a_k - (r_1 + ... + r_k)`, possibly negative.
    pub fn slack(&self, k: usize) -> Rational {
        let used: Rational = self.r[..k].iter().sum();
        self.config.alpha.of(k) - used
    }

    fn max_over_users(&self, load: impl Fn(usize) -> Rational) -> Extended {
        Extended::max_of((1..=self.config.k_users).map(|k| Extended::load_over_slack(&load(k), &self.slack(k))))
    }
}

/// Achievable GNDT with the envelope taken per user inside the maximum.
pub fn gndt_ub(q: &TradeoffQuery) -> Extended {
    q.max_over_users(|k| q.config.load(k))
}

/// Achievable GNDT at integer `K mu`.
pub fn gndt_ub_integer(q: &TradeoffQuery) -> Result<Extended> {
    let Some(n) = q.config.integer_kmu() else {
        return domain(format!("K mu = {} is not an integer", q.config.kmu()));
    };
    Ok(q.max_over_users(|k| q.config.load_at_integer(k, n)))
}

/// Memory sharing between integer cache sizes: envelope of the maximum.
pub fn gndt_memory_sharing(q: &TradeoffQuery) -> Extended {
    let k_users = q.config.k_users;
    let kmu = q.config.kmu();
    let per_n: Vec<Extended> = (0..=k_users)
        .map(|n| q.max_over_users(|k| q.config.load_at_integer(k, n)))
        .collect();
    if per_n.iter().all(|v| !v.is_infinite()) {
        let finite = per_n.into_iter().map(|v| v.finite().unwrap().clone()).collect();
        let points = EnvelopePoints::new(finite).expect("K + 1 points");
        return Extended::Finite(lower_convex_envelope(&points, &kmu).expect("K mu lies in [0, K]"));
    }
    // an infinite point can only be bridged by the finite points on both sides of K mu
    let finite_at = |n: usize| per_n[n].finite().cloned();
    if kmu.is_integer() {
        let n: usize = kmu.to_integer().try_into().unwrap();
        return per_n[n].clone();
    }
    let below: usize = kmu.floor().to_integer().try_into().unwrap();
    let mut best = Extended::Infinite;
    for a in 0..=below {
        for b in below + 1..=k_users {
            if let (Some(fa), Some(fb)) = (finite_at(a), finite_at(b)) {
                let xa = Rational::from_integer(a.into());
                let xb = Rational::from_integer(b.into());
                let v = &fa + (&fb - &fa) * (&kmu - &xa) / (xb - &xa);
                best = best.min(Extended::Finite(v));
            }
        }
    }
    best
}

/// Joint delivery over the two neighbouring integer group sizes.
pub fn gndt_joint_two_set(q: &TradeoffQuery) -> Result<Extended> {
    let kmu = q.config.kmu();
    let k_users = q.config.k_users;
    if kmu.is_integer() {
        return domain(format!("joint delivery needs non-integer K mu, got {kmu}"));
    }
    let sigma: usize = (&kmu + Rational::one()).floor().to_integer().try_into().unwrap();
    let gamma = sigma + 1;
    let lambda = Rational::from_integer(gamma.into()) - (&kmu + Rational::one());
    let lambda_bar = Rational::one() - &lambda;
    let c = |size: usize, k: usize| {
        let reach = k.min(q.config.n_files);
        (binom_q(k_users, size) - binom_q(k_users - reach, size)) / binom_q(k_users, size - 1)
    };
    Ok(q.max_over_users(|k| &lambda * c(sigma, k) + &lambda_bar * c(gamma, k)))
}

/// Bottleneck user: smallest maximizer of `[C(K, Kmu+1) - C(K-k, Kmu+1)] / a_k`.
pub fn bottleneck_user(config: &SystemConfig) -> Result<usize> {
    if config.n_files < config.k_users {
        return domain(format!(
            "bottleneck user needs N >= K, got N = {} and K = {}",
            config.n_files, config.k_users
        ));
    }
    let Some(kmu) = config.integer_kmu() else {
        return domain(format!("K mu = {} is not an integer", config.kmu()));
    };
    let k_users = config.k_users;
    let mut best = 1;
    let mut best_value: Option<Rational> = None;
    for k in 1..=k_users {
        let numer = binom_q(k_users, kmu + 1) - binom_q(k_users - k, kmu + 1);
        let value = numer / config.alpha.of(k);
        if best_value.as_ref().is_none_or(|b| &value > b) {
            best = k;
            best_value = Some(value);
        }
    }
    Ok(best)
}

/// Non-content GDoF tuples that leave the GNDT at its `r = 0` value.
/// Right-hand sides that would turn negative are clamped at zero.
pub fn topological_hole_region(config: &SystemConfig) -> Result<Polytope> {
    let k_star = bottleneck_user(config)?;
    let k_users = config.k_users;
    let kmu = config.integer_kmu().unwrap();
    let numer = |k: usize| binom_q(k_users, kmu + 1) - binom_q(k_users - k, kmu + 1);
    let mut poly = Polytope::new((1..=k_users).map(unicast_var).collect());
    for k in 1..=k_star {
        let mut coeffs = vec![Rational::zero(); k_users];
        coeffs[k - 1] = Rational::one();
        poly.push_row(Row::new(coeffs, Rational::zero()))?;
    }
    if k_star < k_users {
        let base = numer(k_star);
        let top = config.alpha.of(k_star + 1);
        for k in k_star + 1..=k_users {
            let coeffs = (1..=k_users)
                .map(|i| if i > k_star && i <= k { Rational::one() } else { Rational::zero() })
                .collect();
            let rhs = if base.is_zero() {
                Rational::zero()
            } else {
                positive_part(&(top - config.alpha.of(k_star) * numer(k) / &base))
            };
            poly.push_row(Row::new(coeffs, rhs))?;
        }
    }
    Ok(poly)
}

/// One converse inequality: users `1..=s` need `load / (factor * tau) <= slack`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConverseRow {
    pub s: usize,
    /// Number of distinct-demand users the bound is built on, `min(s, N)`.
    pub reach: usize,
    pub load: Rational,
    pub slack: Rational,
}

impl ConverseRow {
    /// Smallest `tau` the row allows.
    pub fn tau_bound(&self, factor: &Rational) -> Extended {
        Extended::load_over_slack(&self.load, &self.slack).scale(&factor.recip())
    }
}

pub fn converse_rows(q: &TradeoffQuery) -> Vec<ConverseRow> {
    let config = &q.config;
    (1..=config.k_users)
        .map(|s| {
            let reach = s.min(config.n_files);
            let points = delivery_load_sequence(config.k_users, config.k_users, reach);
            let load = lower_convex_envelope(&points, &config.kmu()).expect("K mu lies in [0, K]");
            ConverseRow { s, reach, load, slack: q.slack(s) }
        })
        .collect()
}

pub fn gndt_lower_bound_with_factor(q: &TradeoffQuery, factor: &Rational) -> Extended {
    Extended::max_of(converse_rows(q).iter().map(|row| row.tau_bound(factor)))
}

/// Converse GNDT: the tightest per-subset bound.
pub fn gndt_lower_bound(q: &TradeoffQuery) -> Extended {
    let bound = gndt_lower_bound_with_factor(q, &order_optimality_factor());
    debug_assert_eq!(bound.scale(&order_optimality_factor()), gndt_ub(q));
    bound
}

/// Non-content GDoF tuples achievable together with GNDT `tau`.
pub fn gdof_region_inner(tau: &Rational, config: &SystemConfig) -> Result<Polytope> {
    if !tau.is_positive() {
        return domain(format!("delivery time {tau} must be positive"));
    }
    let k_users = config.k_users;
    let mut poly = Polytope::new((1..=k_users).map(unicast_var).collect());
    for k in 1..=k_users {
        let coeffs = (1..=k_users).map(|i| if i <= k { Rational::one() } else { Rational::zero() }).collect();
        poly.push_row(Row::new(coeffs, config.alpha.of(k) - config.load(k) / tau))?;
    }
    Ok(poly)
}

/// `tau * r_sym = 1 / C(K, sigma - 1)` for the symmetric multicast rate at `r = 0`.
pub fn symmetric_gdof_product(config: &SystemConfig) -> Result<Rational> {
    let Some(kmu) = config.integer_kmu() else {
        return domain("K mu must be an integer");
    };
    if kmu == config.k_users {
        return domain("no multicast is needed when every file is cached");
    }
    let q = TradeoffQuery::without_unicast(config.clone());
    let tau = gndt_ub(&q);
    let zeros = vec![Rational::zero(); config.k_users];
    let r_sym = max_symmetric_gdof(kmu + 1, &config.alpha, config.k_users.min(config.n_files), &zeros)?;
    Ok(tau.finite().expect("finite at r = 0") * r_sym)
}

/// One point of a trade-off curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub mu: Rational,
    pub kmu: Rational,
    pub ub: Extended,
    pub memory_sharing: Extended,
    pub lower_bound: Extended,
}

pub fn sample_curve(config: &SystemConfig, r: &[Rational], mus: &[Rational]) -> Result<Vec<CurveSample>> {
    mus.iter()
        .map(|mu| {
            let q = TradeoffQuery::new(config.with_mu(mu.clone())?, r.to_vec())?;
            Ok(CurveSample {
                mu: mu.clone(),
                kmu: q.config.kmu(),
                ub: gndt_ub(&q),
                memory_sharing: gndt_memory_sharing(&q),
                lower_bound: gndt_lower_bound(&q),
            })
        })
        .collect()
}

/// `start, start + step, ...` up to and including `end`.
pub fn rational_grid(start: &Rational, end: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if !step.is_positive() {
        return domain("grid step must be positive");
    }
    if start > end {
        return domain(format!("grid start {start} exceeds end {end}"));
    }
    let count = ((end - start) / step).floor().to_integer();
    let count: usize = count.try_into().map_err(|_| crate::Error::Domain("grid too large".into()))?;
    Ok((0..=count).map(|i| start + step * Rational::from_integer(i.into())).collect())
}

/// `K mu` values `0, 1, ..., K` expressed as `mu`.
pub fn integer_memory_points(k_users: usize) -> Vec<Rational> {
    (0..=k_users).map(|n| Rational::new(n.into(), k_users.into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse_rational_list};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn config(k: usize, n: usize, mu: Rational, alpha: &str) -> SystemConfig {
        let alpha = ChannelStrengths::new(parse_rational_list(alpha).unwrap()).unwrap();
        SystemConfig::new(k, n, mu, alpha, 1024.0).unwrap()
    }

    fn query(k: usize, n: usize, mu: Rational, alpha: &str) -> TradeoffQuery {
        TradeoffQuery::without_unicast(config(k, n, mu, alpha))
    }

    fn random_alpha(rng: &mut ChaCha8Rng, k: usize) -> ChannelStrengths {
        let mut a: Vec<Rational> = (0..k - 1).map(|_| ratio(rng.gen_range(1..=40), 40)).collect();
        a.sort();
        a.push(int(1));
        ChannelStrengths::new(a).unwrap()
    }

    fn fin(v: Rational) -> Extended {
        Extended::Finite(v)
    }

    const FIG: &str = "0.45,0.65,0.85,1";

    #[test]
    fn four_user_curve_at_integer_points() {
        let expected = [int(4), ratio(25, 13), ratio(10, 9), ratio(5, 9), int(0)];
        for (n, want) in expected.iter().enumerate() {
            let q = query(4, 4, ratio(n as i64, 4), FIG);
            assert_eq!(gndt_ub(&q), fin(want.clone()), "K mu = {n}");
            assert_eq!(gndt_ub_integer(&q).unwrap(), fin(want.clone()));
            assert_eq!(gndt_memory_sharing(&q), fin(want.clone()));
        }
    }

    #[test]
    fn three_user_example() {
        let q = query(3, 3, ratio(1, 3), "0.4,0.9,1");
        assert_eq!(gndt_ub(&q), fin(ratio(5, 3)));
    }

    #[test]
    fn full_cache_needs_no_delivery() {
        let c = config(3, 2, int(1), "0.4,0.9,1");
        let q = TradeoffQuery::new(c, vec![ratio(1, 10), ratio(1, 10), ratio(1, 10)]).unwrap();
        assert_eq!(gndt_ub(&q), Extended::zero());
        assert_eq!(gndt_lower_bound(&q), Extended::zero());
    }

    #[test]
    fn single_user() {
        for mu in [int(0), ratio(1, 3), ratio(3, 4)] {
            let q = TradeoffQuery::without_unicast(
                SystemConfig::new(1, 2, mu.clone(), ChannelStrengths::new(vec![int(1)]).unwrap(), 4.0).unwrap(),
            );
            assert_eq!(gndt_ub(&q), fin(int(1) - &mu));
        }
    }

    #[test]
    fn exhausted_strength_is_infinite() {
        let c = config(3, 3, ratio(1, 3), "0.4,0.9,1");
        let q = TradeoffQuery::new(c, vec![int(0), ratio(9, 10), int(0)]).unwrap();
        assert!(gndt_ub(&q).is_infinite());
        assert!(gndt_memory_sharing(&q).is_infinite());
        assert!(gndt_lower_bound(&q).is_infinite());
    }

    #[test]
    fn integer_variant_rejects_fractional_cache() {
        assert!(gndt_ub_integer(&query(4, 4, ratio(1, 8), FIG)).is_err());
        assert!(gndt_joint_two_set(&query(4, 4, ratio(1, 4), FIG)).is_err());
    }

    #[test]
    fn integer_variant_agrees_with_envelope() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=6 {
            for n_files in 1..=6 {
                let alpha = random_alpha(&mut rng, k);
                for n in 0..=k {
                    let c = SystemConfig::new(k, n_files, ratio(n as i64, k as i64), alpha.clone(), 8.0).unwrap();
                    let r: Vec<Rational> = (0..k).map(|_| ratio(rng.gen_range(0..3), 40)).collect();
                    let q = TradeoffQuery::new(c, r).unwrap();
                    assert_eq!(gndt_ub_integer(&q).unwrap(), gndt_ub(&q));
                    assert_eq!(gndt_memory_sharing(&q), gndt_ub(&q));
                }
            }
        }
    }

    #[test]
    fn memory_sharing_midpoint() {
        let q = query(4, 4, ratio(1, 8), FIG);
        assert_eq!(gndt_memory_sharing(&q), fin((int(4) + ratio(25, 13)) / int(2)));
        assert!(gndt_ub(&q) < gndt_memory_sharing(&q));
    }

    #[test]
    fn symmetric_strengths_make_both_envelopes_agree() {
        for step in 0..=40 {
            let q = query(4, 3, ratio(step, 40), "1,1,1,1");
            assert_eq!(gndt_ub(&q), gndt_memory_sharing(&q));
        }
    }

    #[test]
    fn joint_delivery_matches_envelope() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 200 {
            let k = rng.gen_range(2..=6);
            let n_files = rng.gen_range(1..=6);
            let mu = ratio(rng.gen_range(1..k as i64 * 7), k as i64 * 7);
            let c = SystemConfig::new(k, n_files, mu, random_alpha(&mut rng, k), 8.0).unwrap();
            if c.integer_kmu().is_some() {
                continue;
            }
            let q = TradeoffQuery::without_unicast(c);
            let joint = gndt_joint_two_set(&q).unwrap();
            assert_eq!(joint, gndt_ub(&q));
            assert!(joint <= gndt_memory_sharing(&q));
            checked += 1;
        }
    }

    #[test]
    fn bottleneck_examples() {
        assert_eq!(bottleneck_user(&config(3, 3, ratio(1, 3), "0.4,0.9,1")).unwrap(), 1);
        assert_eq!(bottleneck_user(&config(3, 3, ratio(1, 3), "0.7,0.9,1")).unwrap(), 2);
        for k in 2..=6usize {
            let ones = vec!["1"; k].join(",");
            for kmu in 0..k {
                let c = config(k, k, ratio(kmu as i64, k as i64), &ones);
                assert_eq!(bottleneck_user(&c).unwrap(), k - kmu);
            }
        }
        assert!(bottleneck_user(&config(3, 2, ratio(1, 3), "0.4,0.9,1")).is_err());
        assert!(bottleneck_user(&config(3, 3, ratio(1, 2), "0.4,0.9,1")).is_err());
    }

    #[test]
    fn hole_region_example() {
        let c = config(3, 3, ratio(1, 3), "0.4,0.9,1");
        let holes = topological_hole_region(&c).unwrap();
        let rhs: Vec<Rational> = holes.rows().iter().map(|r| r.rhs.clone()).collect();
        assert_eq!(rhs, vec![int(0), ratio(3, 10), ratio(3, 10)]);
        let q = TradeoffQuery::new(c.clone(), vec![int(0), ratio(3, 10), int(0)]).unwrap();
        assert_eq!(gndt_ub(&q), fin(ratio(5, 3)));
        let vertices = holes.vertices();
        assert_eq!(vertices.len(), 3);
        for v in vertices {
            let q = TradeoffQuery::new(c.clone(), v).unwrap();
            assert_eq!(gndt_ub(&q), fin(ratio(5, 3)));
        }
    }

    #[test]
    fn symmetric_strengths_leave_no_holes() {
        let c = config(4, 4, ratio(1, 4), "1,1,1,1");
        let holes = topological_hole_region(&c).unwrap();
        assert_eq!(holes.vertices(), vec![vec![int(0); 4]]);
    }

    #[test]
    fn random_holes_keep_the_delivery_time() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let k = rng.gen_range(2..=5);
            let n_files = rng.gen_range(k..=k + 2);
            let kmu = rng.gen_range(0..k);
            let c = SystemConfig::new(k, n_files, ratio(kmu as i64, k as i64), random_alpha(&mut rng, k), 8.0).unwrap();
            let base = gndt_ub(&TradeoffQuery::without_unicast(c.clone()));
            let holes = topological_hole_region(&c).unwrap();
            let inner = gdof_region_inner(base.finite().unwrap(), &c).unwrap();
            assert!(holes.is_subset_of(&inner).unwrap());
            for v in holes.vertices() {
                assert_eq!(gndt_ub(&TradeoffQuery::new(c.clone(), v).unwrap()), base);
            }
        }
    }

    #[test]
    fn lower_bound_is_exact_fraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = rng.gen_range(1..=6);
            let n_files = rng.gen_range(1..=7);
            let mu = ratio(rng.gen_range(0..=12), 12);
            let c = SystemConfig::new(k, n_files, mu, random_alpha(&mut rng, k), 8.0).unwrap();
            let r: Vec<Rational> = (0..k).map(|_| ratio(rng.gen_range(0..2), 50)).collect();
            let q = TradeoffQuery::new(c, r).unwrap();
            let lb = gndt_lower_bound(&q);
            let ub = gndt_ub(&q);
            assert!(lb <= ub);
            if let (Some(l), Some(u)) = (lb.finite(), ub.finite()) {
                if !u.is_zero() {
                    assert_eq!(u / l, ratio(201, 100));
                }
            }
        }
    }

    #[test]
    fn last_subset_dominates_for_symmetric_strengths() {
        let q = query(5, 5, ratio(2, 5), "1,1,1,1,1");
        let factor = order_optimality_factor();
        let rows = converse_rows(&q);
        let last = rows.last().unwrap().tau_bound(&factor);
        assert!(rows.iter().all(|row| row.tau_bound(&factor) <= last));
        let rows = converse_rows(&query(5, 2, ratio(2, 5), "1,1,1,1,1"));
        assert_eq!(rows.iter().map(|r| r.reach).collect::<Vec<_>>(), [1, 2, 2, 2, 2]);
    }

    #[test]
    fn inner_region_matches_delivery_time() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = config(4, 4, ratio(1, 4), FIG);
        let tau = ratio(3, 1);
        let inner = gdof_region_inner(&tau, &c).unwrap();
        let looser = gdof_region_inner(&(&tau * order_optimality_factor()), &c).unwrap();
        assert!(inner.is_subset_of(&looser).unwrap());
        for _ in 0..200 {
            let r: Vec<Rational> = (0..4).map(|_| ratio(rng.gen_range(0..10), 100)).collect();
            let q = TradeoffQuery::new(c.clone(), r.clone()).unwrap();
            assert_eq!(inner.contains(&r).unwrap(), gndt_ub(&q) <= fin(tau.clone()));
        }
        assert!(gdof_region_inner(&int(0), &c).is_err());
    }

    #[test]
    fn symmetric_multicast_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for k in 1..=6 {
            let alpha = random_alpha(&mut rng, k);
            for kmu in 0..k {
                let c = SystemConfig::new(k, k + 1, ratio(kmu as i64, k as i64), alpha.clone(), 8.0).unwrap();
                assert_eq!(symmetric_gdof_product(&c).unwrap(), binom_q(k, kmu).recip());
            }
        }
    }

    #[test]
    fn grids() {
        let g = rational_grid(&int(0), &int(1), &ratio(1, 4)).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[4], int(1));
        assert_eq!(rational_grid(&int(0), &ratio(9, 10), &ratio(1, 4)).unwrap().len(), 4);
        assert!(rational_grid(&int(1), &int(0), &ratio(1, 4)).is_err());
        assert_eq!(integer_memory_points(4)[2], ratio(1, 2));
        let curve = sample_curve(&config(4, 4, int(0), FIG), &vec![int(0); 4], &[int(0), int(1)]).unwrap();
        assert_eq!(curve[1].ub, Extended::zero());
    }

    proptest! {
        #[test]
        fn monotone(k in 2usize..5, a in proptest::collection::vec(1i64..=20, 4), mu in 0i64..=20, r in proptest::collection::vec(0i64..=4, 5), bump in 1i64..=4, who in 0usize..5) {
            let mut alpha: Vec<Rational> = a[..k - 1].iter().map(|&x| ratio(x, 20)).collect();
            alpha.sort();
            alpha.push(int(1));
            let alpha = ChannelStrengths::new(alpha).unwrap();
            let c = SystemConfig::new(k, 3, ratio(mu, 20), alpha.clone(), 8.0).unwrap();
            let r: Vec<Rational> = r[..k].iter().map(|&x| ratio(x, 100)).collect();
            let base = gndt_ub(&TradeoffQuery::new(c.clone(), r.clone()).unwrap());

            let bigger_mu = (ratio(mu, 20) + ratio(bump, 100)).min(int(1));
            let q = TradeoffQuery::new(c.with_mu(bigger_mu).unwrap(), r.clone()).unwrap();
            prop_assert!(gndt_ub(&q) <= base);

            let mut r2 = r.clone();
            r2[who % k] += ratio(bump, 100);
            prop_assert!(gndt_ub(&TradeoffQuery::new(c.clone(), r2).unwrap()) >= base);

            let who = who % k;
            let mut stronger = alpha.as_slice().to_vec();
            stronger[who] = (&stronger[who] + ratio(bump, 100)).min(stronger.get(who + 1).cloned().unwrap_or(int(1)));
            let c3 = SystemConfig::new(k, 3, ratio(mu, 20), ChannelStrengths::new(stronger).unwrap(), 8.0).unwrap();
            prop_assert!(gndt_ub(&TradeoffQuery::new(c3, r).unwrap()) <= base);
        }
    }
}
