//! GDoF regions of the degraded broadcast channel carrying unicast messages
//! alongside one or two families of equal-size multicast messages.
//!
//! Coordinates are ordered globally: unicast `r_1..r_K` first, then one
//! coordinate per multicast group in canonical (lexicographic) group order.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caching::LeaderSet;
use crate::combinatorics::{binom_q, cumulative_group_count, enumerate_groups, partition_by_min, UserSet};
use crate::error::{domain, Error, Result};
use crate::polytope::{fourier_motzkin_eliminate, polytopes_equal, Polytope, Row};
use crate::rational::{from_u128, positive_part, Rational};

/// Channel strength exponents, `0 < a_1 <= ... <= a_K = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelStrengths(Vec<Rational>);

impl ChannelStrengths {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() {
            return domain("at least one user is required");
        }
        if alpha.iter().any(|a| !a.is_positive()) {
            return Err(Error::Normalization("every strength must be positive".into()));
        }
        if alpha.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Normalization("strengths must be nondecreasing in the user index".into()));
        }
        if !alpha.last().unwrap().is_one() {
            return Err(Error::Normalization(format!(
                "the strongest user must have strength 1, got {}",
                alpha.last().unwrap()
            )));
        }
        Ok(ChannelStrengths(alpha))
    }

    pub fn users(&self) -> usize {
        self.0.len()
    }

    /// Strength of user `k` (1-based).
    pub fn of(&self, k: usize) -> &Rational {
        &self.0[k - 1]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// Strengths drawn uniformly from `{1/den, ..., den/den}`, sorted, with the last set to 1.
    pub fn random_from_seed(k_users: usize, denominator: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let den = denominator.max(1) as i64;
        let mut alpha: Vec<Rational> =
            (1..k_users).map(|_| Rational::new(rng.gen_range(1..=den).into(), den.into())).collect();
        alpha.sort();
        alpha.push(Rational::one());
        ChannelStrengths(alpha)
    }

    /// Equal strengths for every user.
    pub fn symmetric(k_users: usize) -> Self {
        ChannelStrengths(vec![Rational::one(); k_users])
    }
}

pub fn unicast_var(k: usize) -> String {
    format!("r_{k}")
}

pub fn multicast_var(group: &UserSet) -> String {
    let parts: Vec<String> = group.members().iter().map(|m| m.to_string()).collect();
    format!("r_{{{}}}", parts.join(","))
}

pub const SYMMETRIC_VAR: &str = "r_sym";

fn check_sigma(k_users: usize, sigma: usize) -> Result<()> {
    if sigma < 2 || sigma > k_users {
        return domain(format!("multicast group size {sigma} outside [2..{k_users}]"));
    }
    Ok(())
}

/// Unicast plus `sigma`-multicast region: row `k` bounds the unicast GDoF of
/// users `1..=k` plus every group whose weakest member is at most `k` by `a_k`.
pub fn build_region(sigma: usize, alpha: &ChannelStrengths) -> Result<Polytope> {
    let k_users = alpha.users();
    check_sigma(k_users, sigma)?;
    let groups = enumerate_groups(k_users, sigma)?;
    let mut variables: Vec<String> = (1..=k_users).map(unicast_var).collect();
    variables.extend(groups.iter().map(multicast_var));
    let mut poly = Polytope::new(variables);
    for k in 1..=k_users {
        let mut coeffs = vec![Rational::zero(); k_users + groups.len()];
        for c in coeffs.iter_mut().take(k) {
            *c = Rational::one();
        }
        for (g, group) in groups.iter().enumerate() {
            if group.smallest().unwrap() <= k {
                coeffs[k_users + g] = Rational::one();
            }
        }
        poly.push_row(Row::new(coeffs, alpha.of(k).clone()))?;
    }
    Ok(poly)
}

fn unicast_prefix_row(k_users: usize, k: usize, extra: &[Rational], rhs: Rational) -> Row {
    let mut coeffs: Vec<Rational> = (1..=k_users).map(|i| if i <= k { Rational::one() } else { Rational::zero() }).collect();
    coeffs.extend_from_slice(extra);
    Row::new(coeffs, rhs)
}

/// Projection onto `(r_1..r_K, r_sym)` when the groups meeting `[1..s]` share
/// one symmetric GDoF and all other groups are silent.
pub fn symmetric_projection(sigma: usize, alpha: &ChannelStrengths, s: usize) -> Result<Polytope> {
    let k_users = alpha.users();
    check_sigma(k_users, sigma)?;
    if s == 0 || s > k_users {
        return domain(format!("leader count {s} outside [1..{k_users}]"));
    }
    let mut variables: Vec<String> = (1..=k_users).map(unicast_var).collect();
    variables.push(SYMMETRIC_VAR.into());
    let mut poly = Polytope::new(variables);
    for k in 1..=k_users {
        let weight = from_u128(cumulative_group_count(k_users, sigma, k.min(s)));
        poly.push_row(unicast_prefix_row(k_users, k, &[weight], alpha.of(k).clone()))?;
    }
    Ok(poly)
}

/// Largest symmetric multicast GDoF compatible with the unicast tuple `r`:
/// `min_k (a_k - sum_{i<=k} r_i)^+ / [C(K,sigma) - C(K - min(k,s), sigma)]`.
pub fn max_symmetric_gdof(sigma: usize, alpha: &ChannelStrengths, s: usize, r: &[Rational]) -> Result<Rational> {
    let k_users = alpha.users();
    if r.len() != k_users {
        return domain(format!("unicast tuple of length {} for K = {k_users}", r.len()));
    }
    if sigma == 0 || sigma > k_users || s == 0 || s > k_users {
        return domain("group size or leader count out of range");
    }
    let mut prefix = Rational::zero();
    let mut best: Option<Rational> = None;
    for k in 1..=k_users {
        prefix += &r[k - 1];
        let weight = from_u128(cumulative_group_count(k_users, sigma, k.min(s)));
        let value = positive_part(&(alpha.of(k) - &prefix)) / weight;
        best = Some(match best {
            Some(b) if b <= value => b,
            _ => value,
        });
    }
    Ok(best.unwrap())
}

pub const SYMMETRIC_SIGMA_VAR: &str = "r_sym_sigma";
pub const SYMMETRIC_GAMMA_VAR: &str = "r_sym_gamma";

/// Symmetric projection with two multicast families of sizes `sigma < gamma`.
pub fn two_multicast_projection(sigma: usize, gamma: usize, alpha: &ChannelStrengths, s: usize) -> Result<Polytope> {
    let k_users = alpha.users();
    check_sigma(k_users, sigma)?;
    check_sigma(k_users, gamma)?;
    if sigma >= gamma {
        return domain(format!("need sigma < gamma, got {sigma} and {gamma}"));
    }
    if s == 0 || s > k_users {
        return domain(format!("leader count {s} outside [1..{k_users}]"));
    }
    let mut variables: Vec<String> = (1..=k_users).map(unicast_var).collect();
    variables.push(SYMMETRIC_SIGMA_VAR.into());
    variables.push(SYMMETRIC_GAMMA_VAR.into());
    let mut poly = Polytope::new(variables);
    for k in 1..=k_users {
        let ws = from_u128(cumulative_group_count(k_users, sigma, k.min(s)));
        let wg = from_u128(cumulative_group_count(k_users, gamma, k.min(s)));
        poly.push_row(unicast_prefix_row(k_users, k, &[ws, wg], alpha.of(k).clone()))?;
    }
    Ok(poly)
}

/// Groups containing `leaders[i]` but none of the earlier leaders.
pub fn leader_classes(k_users: usize, sigma: usize, leaders: &LeaderSet) -> Result<Vec<Vec<UserSet>>> {
    let groups = enumerate_groups(k_users, sigma)?;
    Ok(leaders
        .leaders
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            groups
                .iter()
                .filter(|g| g.contains(u) && !g.intersects(&leaders.leaders[..i]))
                .cloned()
                .collect()
        })
        .collect())
}

/// Symmetric region when only groups meeting an arbitrary leader set are sent.
/// Row `k` carries the groups claimed by leaders no stronger than user `k`.
pub fn build_missing_message_region(sigma: usize, alpha: &ChannelStrengths, leaders: &LeaderSet) -> Result<Polytope> {
    let k_users = alpha.users();
    check_sigma(k_users, sigma)?;
    if leaders.leaders.is_empty() || leaders.leaders.iter().any(|&u| u == 0 || u > k_users) {
        return domain("leader set must be a nonempty subset of the users");
    }
    let classes = leader_classes(k_users, sigma, leaders)?;
    let mut variables: Vec<String> = (1..=k_users).map(unicast_var).collect();
    variables.push(SYMMETRIC_VAR.into());
    let mut poly = Polytope::new(variables);
    for k in 1..=k_users {
        let claimed: usize = leaders
            .leaders
            .iter()
            .zip(&classes)
            .filter(|(&u, _)| u <= k)
            .map(|(_, c)| c.len())
            .sum();
        let weight = Rational::from_integer(claimed.into());
        poly.push_row(unicast_prefix_row(k_users, k, &[weight], alpha.of(k).clone()))?;
    }
    Ok(poly)
}

/// Superposition power exponents `0 = b_1 <= ... <= b_K`, `b_{k+1} <= a_k`,
/// with the implicit top level `b_{K+1} = a_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerExponents {
    beta: Vec<Rational>,
    top: Rational,
}

impl PowerExponents {
    pub fn new(beta: Vec<Rational>, alpha: &ChannelStrengths) -> Result<Self> {
        let k_users = alpha.users();
        if beta.len() != k_users {
            return domain(format!("{} power exponents for K = {k_users}", beta.len()));
        }
        if !beta[0].is_zero() {
            return domain("the first power exponent must be 0");
        }
        if beta.windows(2).any(|w| w[0] > w[1]) {
            return domain("power exponents must be nondecreasing");
        }
        for k in 1..k_users {
            if &beta[k] > alpha.of(k) {
                return domain(format!("b_{} = {} exceeds a_{k} = {}", k + 1, beta[k], alpha.of(k)));
            }
        }
        Ok(PowerExponents { beta, top: alpha.of(k_users).clone() })
    }

    /// Exponents stacked from per-level loads: `b_k = rho_1 + ... + rho_{k-1}`.
    pub fn from_levels(levels: &[Rational], alpha: &ChannelStrengths) -> Result<Self> {
        let mut beta = vec![Rational::zero()];
        for l in levels.iter().take(levels.len().saturating_sub(1)) {
            let next = beta.last().unwrap() + l;
            beta.push(next);
        }
        PowerExponents::new(beta, alpha)
    }

    /// `b_k` for `k` in `1..=K+1`.
    pub fn level(&self, k: usize) -> &Rational {
        if k == self.beta.len() + 1 {
            &self.top
        } else {
            &self.beta[k - 1]
        }
    }

    /// Width `b_{k+1} - b_k` of layer `k`.
    pub fn width(&self, k: usize) -> Rational {
        self.level(k + 1) - self.level(k)
    }

    pub fn users(&self) -> usize {
        self.beta.len()
    }

    /// Power fractions `q_k = P^{-b_k} - P^{-b_{k+1}}` (and `q_K = P^{-b_K}`).
    pub fn power_split(&self, power: f64) -> Vec<f64> {
        let k_users = self.users();
        let at = |k: usize| power.powf(-crate::rational::to_f64(self.level(k)));
        (1..=k_users)
            .map(|k| if k == k_users { at(k) } else { at(k) - at(k + 1) })
            .collect()
    }
}

/// Unicast GDoF per user plus a GDoF per multicast group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GdofPoint {
    pub unicast: Vec<Rational>,
    pub multicast: BTreeMap<UserSet, Rational>,
}

impl GdofPoint {
    /// Coordinates in the order of [`build_region`].
    pub fn to_vector(&self, sigma: usize) -> Result<Vec<Rational>> {
        let k_users = self.unicast.len();
        let mut v = self.unicast.clone();
        for group in enumerate_groups(k_users, sigma)? {
            v.push(self.multicast.get(&group).cloned().unwrap_or_else(Rational::zero));
        }
        Ok(v)
    }

    /// Per-layer load `rho_k`: `r_k` plus every group whose weakest member is `k`.
    pub fn layer_loads(&self) -> Vec<Rational> {
        let mut rho = self.unicast.clone();
        for (group, value) in &self.multicast {
            rho[group.smallest().unwrap() - 1] += value;
        }
        rho
    }
}

/// Membership in the layered region induced by fixed power exponents.
pub fn beta_inner_region_membership(sigma: usize, point: &GdofPoint, beta: &PowerExponents) -> Result<bool> {
    let k_users = beta.users();
    check_sigma(k_users, sigma)?;
    if point.unicast.len() != k_users {
        return domain("point and power exponents disagree on K");
    }
    if point.multicast.keys().any(|g| g.len() != sigma) {
        return domain(format!("multicast groups must have size {sigma}"));
    }
    if point.unicast.iter().chain(point.multicast.values()).any(Signed::is_negative) {
        return Ok(false);
    }
    Ok(point.layer_loads().iter().enumerate().all(|(i, rho)| rho <= &beta.width(i + 1)))
}

pub fn beta_var(k: usize) -> String {
    format!("b_{k}")
}

pub fn layer_var(k: usize) -> String {
    format!("rho_{k}")
}

/// Layered system over `(lhs coordinates..., b_2..b_K)`: `load_k <= b_{k+1} - b_k`,
/// `b_{k+1} <= a_k`, `b_k <= b_{k+1}`, with `b_1 = 0` and `b_{K+1} = a_K`.
fn layered_system(alpha: &ChannelStrengths, mut variables: Vec<String>, loads: Vec<Vec<Rational>>) -> Result<Polytope> {
    let k_users = alpha.users();
    let base = variables.len();
    variables.extend((2..=k_users).map(beta_var));
    let width = variables.len();
    let beta_col = |k: usize| base + k - 2;
    let mut poly = Polytope::new(variables);
    for k in 1..=k_users {
        let mut coeffs = loads[k - 1].clone();
        coeffs.resize(width, Rational::zero());
        let mut rhs = Rational::zero();
        if k < k_users {
            coeffs[beta_col(k + 1)] -= Rational::one();
        } else {
            rhs = alpha.of(k_users).clone();
        }
        if k > 1 {
            coeffs[beta_col(k)] += Rational::one();
        }
        poly.push_row(Row::new(coeffs, rhs))?;
    }
    for k in 1..k_users {
        let mut coeffs = vec![Rational::zero(); width];
        coeffs[beta_col(k + 1)] = Rational::one();
        poly.push_row(Row::new(coeffs, alpha.of(k).clone()))?;
        if k > 1 {
            let mut coeffs = vec![Rational::zero(); width];
            coeffs[beta_col(k)] = Rational::one();
            coeffs[beta_col(k + 1)] = -Rational::one();
            poly.push_row(Row::new(coeffs, Rational::zero()))?;
        }
    }
    Ok(poly)
}

/// Power-exponent parameterized region over the coordinates of [`build_region`]
/// extended by `b_2..b_K`.
pub fn beta_parameterized_region(sigma: usize, alpha: &ChannelStrengths) -> Result<Polytope> {
    let k_users = alpha.users();
    check_sigma(k_users, sigma)?;
    let partition = partition_by_min(k_users, sigma)?;
    let groups = enumerate_groups(k_users, sigma)?;
    let mut variables: Vec<String> = (1..=k_users).map(unicast_var).collect();
    variables.extend(groups.iter().map(multicast_var));
    let loads = (1..=k_users)
        .map(|k| {
            let mut coeffs = vec![Rational::zero(); variables.len()];
            coeffs[k - 1] = Rational::one();
            for (g, group) in groups.iter().enumerate() {
                if partition.class(k).contains(group) {
                    coeffs[k_users + g] = Rational::one();
                }
            }
            coeffs
        })
        .collect();
    layered_system(alpha, variables, loads)
}

/// The same layered system written over per-layer loads `rho_1..rho_K`.
pub fn layered_rho_region(alpha: &ChannelStrengths) -> Result<Polytope> {
    let k_users = alpha.users();
    let variables: Vec<String> = (1..=k_users).map(layer_var).collect();
    let loads = (1..=k_users)
        .map(|k| {
            let mut coeffs = vec![Rational::zero(); k_users];
            coeffs[k - 1] = Rational::one();
            coeffs
        })
        .collect();
    layered_system(alpha, variables, loads)
}

/// Eliminates `b_K, b_{K-1}, ..., b_2` in that order.
pub fn eliminate_power_exponents(poly: &Polytope, k_users: usize) -> Result<Polytope> {
    let names: Vec<String> = (2..=k_users).rev().map(beta_var).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    fourier_motzkin_eliminate(poly, &refs)
}

/// Closed form over `rho`: `rho_1 + ... + rho_k <= a_k`.
pub fn cumulative_rho_region(alpha: &ChannelStrengths) -> Result<Polytope> {
    let k_users = alpha.users();
    let variables: Vec<String> = (1..=k_users).map(layer_var).collect();
    let rows = (1..=k_users)
        .map(|k| unicast_prefix_row(k_users, k, &[], alpha.of(k).clone()))
        .collect();
    Polytope::from_rows(variables, rows)
}

/// Eliminates the power exponents from the layered region and compares the
/// result with [`build_region`].
pub fn projection_matches_closed_form(sigma: usize, alpha: &ChannelStrengths) -> Result<bool> {
    let projected = eliminate_power_exponents(&beta_parameterized_region(sigma, alpha)?, alpha.users())?;
    polytopes_equal(&projected, &build_region(sigma, alpha)?)
}

/// Number of `sigma`-groups, as a rational.
pub fn group_count(k_users: usize, sigma: usize) -> Rational {
    binom_q(k_users, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caching::{select_leaders, DemandTuple};
    use crate::rational::{int, parse_rational_list, ratio};

    fn alpha(s: &str) -> ChannelStrengths {
        ChannelStrengths::new(parse_rational_list(s).unwrap()).unwrap()
    }

    fn ones(v: &[u8]) -> Vec<Rational> {
        v.iter().map(|&x| int(x as i64)).collect()
    }

    #[test]
    fn strengths_validation() {
        assert!(matches!(ChannelStrengths::new(parse_rational_list("0.5,0.9").unwrap()), Err(Error::Normalization(_))));
        assert!(matches!(ChannelStrengths::new(parse_rational_list("0.9,0.5,1").unwrap()), Err(Error::Normalization(_))));
        assert!(matches!(ChannelStrengths::new(parse_rational_list("0,1").unwrap()), Err(Error::Normalization(_))));
        // ties are allowed
        assert!(ChannelStrengths::new(parse_rational_list("0.5,0.5,1,1").unwrap()).is_ok());
    }

    #[test]
    fn seeded_strengths_are_valid() {
        for seed in 0..20 {
            let a = ChannelStrengths::random_from_seed(4, 30, seed);
            assert_eq!(ChannelStrengths::new(a.as_slice().to_vec()).unwrap(), a);
            assert_eq!(a, ChannelStrengths::random_from_seed(4, 30, seed));
        }
        assert_eq!(ChannelStrengths::random_from_seed(1, 30, 0).as_slice(), [int(1)]);
    }

    #[test]
    fn three_user_pair_region_layout() {
        let a = alpha("0.4,0.9,1");
        let p = build_region(2, &a).unwrap();
        assert_eq!(p.variables(), ["r_1", "r_2", "r_3", "r_{1,2}", "r_{1,3}", "r_{2,3}"]);
        assert_eq!(p.rows()[0].coeffs, ones(&[1, 0, 0, 1, 1, 0]));
        assert_eq!(p.rows()[1].coeffs, ones(&[1, 1, 0, 1, 1, 1]));
        assert_eq!(p.rows()[2].coeffs, ones(&[1, 1, 1, 1, 1, 1]));
        assert_eq!(p.rows()[0].rhs, ratio(2, 5));
    }

    #[test]
    fn two_user_region() {
        let a = alpha("0.5,1");
        let p = build_region(2, &a).unwrap();
        assert_eq!(p.rows()[0].coeffs, ones(&[1, 0, 1]));
        assert_eq!(p.rows()[1].coeffs, ones(&[1, 1, 1]));
    }

    #[test]
    fn full_group_region() {
        let p = build_region(3, &alpha("0.2,0.5,1")).unwrap();
        assert_eq!(p.variables().len(), 4);
        assert!(p.rows().iter().all(|r| r.coeffs[3] == int(1)));
        assert!(build_region(1, &alpha("0.2,0.5,1")).is_err());
        assert!(build_region(4, &alpha("0.2,0.5,1")).is_err());
    }

    #[test]
    fn degradedness_nesting() {
        for (k, a) in [(3, "0.3,0.6,1"), (4, "0.1,0.2,0.7,1"), (5, "0.2,0.2,0.4,0.9,1")] {
            let a = alpha(a);
            for sigma in 2..=k {
                let p = build_region(sigma, &a).unwrap();
                for w in p.rows().windows(2) {
                    assert!(w[0].coeffs.iter().zip(&w[1].coeffs).all(|(x, y)| x <= y));
                }
            }
        }
    }

    #[test]
    fn symmetric_projection_weights() {
        let a = alpha("0.4,0.9,1");
        let p = symmetric_projection(2, &a, 3).unwrap();
        assert_eq!(p.column(SYMMETRIC_VAR).unwrap(), ones(&[2, 3, 3]));
        let a4 = alpha("0.3,0.5,0.8,1");
        let p = symmetric_projection(2, &a4, 4).unwrap();
        assert_eq!(p.column(SYMMETRIC_VAR).unwrap()[3], int(6));
        let p = symmetric_projection(2, &a4, 2).unwrap();
        assert_eq!(p.column(SYMMETRIC_VAR).unwrap()[3], int(5));
    }

    #[test]
    fn symmetric_gdof_of_the_three_user_example() {
        let a = alpha("0.4,0.9,1");
        let r = vec![int(0); 3];
        assert_eq!(max_symmetric_gdof(2, &a, 3, &r).unwrap(), ratio(1, 5));
    }

    #[test]
    fn symmetric_projection_matches_full_region() {
        // the projection is the full region with groups meeting [s] tied to r_sym
        let a = alpha("0.3,0.5,0.8,1");
        for s in 1..=4 {
            let sym = symmetric_projection(2, &a, s).unwrap();
            let full = build_region(2, &a).unwrap();
            let groups = enumerate_groups(4, 2).unwrap();
            for r_sym in [ratio(1, 50), ratio(1, 20), ratio(1, 10)] {
                let mut point = vec![ratio(1, 100), int(0), ratio(1, 20), int(0)];
                for g in &groups {
                    point.push(if g.smallest().unwrap() <= s { r_sym.clone() } else { int(0) });
                }
                let mut sym_point = point[..4].to_vec();
                sym_point.push(r_sym.clone());
                assert_eq!(full.contains(&point).unwrap(), sym.contains(&sym_point).unwrap());
            }
        }
    }

    #[test]
    fn two_multicast_weights() {
        let a = alpha("0.3,0.5,0.8,1");
        let p = two_multicast_projection(2, 3, &a, 4).unwrap();
        assert_eq!(p.rows()[0].coeffs[4..], ones(&[3, 3]));
        assert_eq!(p.rows()[3].coeffs[5], int(4));
        assert!(two_multicast_projection(3, 3, &a, 4).is_err());
        // with the gamma family silenced it collapses to the single-family projection
        let collapsed = p.fix_variable(SYMMETRIC_GAMMA_VAR, &int(0)).unwrap();
        let single = symmetric_projection(2, &a, 4).unwrap();
        let renamed = Polytope::from_rows(
            collapsed.variables().iter().map(|v| v.replace(SYMMETRIC_SIGMA_VAR, SYMMETRIC_VAR)).collect(),
            collapsed.rows().to_vec(),
        )
        .unwrap();
        assert!(polytopes_equal(&renamed, &single).unwrap());
    }

    #[test]
    fn missing_message_region() {
        let a = alpha("0.3,0.5,0.8,1");
        // leaders [1..N] reproduce the symmetric projection with s = N
        let leaders = select_leaders(&DemandTuple::new(vec![1, 2, 1, 1], 2).unwrap());
        let m = build_missing_message_region(2, &a, &leaders).unwrap();
        assert_eq!(m, symmetric_projection(2, &a, 2).unwrap());

        let leaders = select_leaders(&DemandTuple::new(vec![1, 1, 2, 2], 2).unwrap());
        assert_eq!(leaders.leaders, [1, 3]);
        let m = build_missing_message_region(2, &a, &leaders).unwrap();
        assert_eq!(m.column(SYMMETRIC_VAR).unwrap(), ones(&[3, 3, 5, 5]));

        // the achievable value with weights C(K,s) - C(K - min(k,N), s) is never larger
        let zero = vec![int(0); 4];
        let bound = max_symmetric_gdof(2, &a, 2, &zero).unwrap();
        let mut objective = vec![int(0); 5];
        objective[4] = int(1);
        let best = m.maximize(&objective).value().cloned().unwrap();
        assert!(best >= bound);
    }

    #[test]
    fn power_exponent_validation() {
        let a = alpha("0.4,0.9,1");
        assert!(PowerExponents::new(ones(&[0, 0, 0]), &a).is_ok());
        assert!(PowerExponents::new(vec![int(0), ratio(1, 2), ratio(1, 3)], &a).is_err());
        assert!(PowerExponents::new(vec![int(0), ratio(1, 2), ratio(1, 2)], &a).is_err());
        assert!(PowerExponents::new(vec![ratio(1, 10), ratio(1, 5), ratio(1, 5)], &a).is_err());
        let b = PowerExponents::new(vec![int(0), ratio(1, 5), ratio(3, 5)], &a).unwrap();
        assert_eq!(b.width(3), ratio(2, 5));
        let q = b.power_split(1024.0);
        assert!((q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    fn three_user_point(r: [i64; 3], pairs: [i64; 3], den: i64) -> GdofPoint {
        let groups = enumerate_groups(3, 2).unwrap();
        GdofPoint {
            unicast: r.iter().map(|&x| ratio(x, den)).collect(),
            multicast: groups.into_iter().zip(pairs.iter().map(|&x| ratio(x, den))).collect(),
        }
    }

    #[test]
    fn layered_membership() {
        let a = alpha("0.4,0.9,1");
        let point = three_user_point([0, 1, 1], [1, 1, 2], 10);
        let rho = point.layer_loads();
        assert_eq!(rho, vec![ratio(2, 10), ratio(3, 10), ratio(1, 10)]);
        let beta = PowerExponents::from_levels(&rho, &a).unwrap();
        assert!(beta_inner_region_membership(2, &point, &beta).unwrap());
        let zero = GdofPoint { unicast: vec![int(0); 3], multicast: BTreeMap::new() };
        assert!(beta_inner_region_membership(2, &zero, &beta).unwrap());

        // a point on the region boundary with slack-free exponents: rho = (0.4, 0.5, 0.1)
        let tight = three_user_point([0, 0, 1], [2, 2, 5], 10);
        assert!(build_region(2, &a).unwrap().contains(&tight.to_vector(2).unwrap()).unwrap());
        let beta = PowerExponents::from_levels(&tight.layer_loads(), &a).unwrap();
        assert!(beta_inner_region_membership(2, &tight, &beta).unwrap());
        for i in 0..3 {
            let mut bumped = tight.clone();
            bumped.unicast[i] += ratio(1, 1000);
            assert!(!beta_inner_region_membership(2, &bumped, &beta).unwrap());
        }
    }

    #[test]
    fn elimination_in_layer_coordinates() {
        let a = alpha("0.4,0.9,1");
        let projected = eliminate_power_exponents(&layered_rho_region(&a).unwrap(), 3).unwrap();
        assert_eq!(projected.variables(), ["rho_1", "rho_2", "rho_3"]);
        let closed = cumulative_rho_region(&a).unwrap();
        assert!(polytopes_equal(&projected, &closed).unwrap());
        assert_eq!(projected.rows().len(), 3);
    }

    #[test]
    fn four_user_projection_equals_closed_form() {
        let a = alpha("0.2,0.45,0.7,1");
        for sigma in 2..=4 {
            let layered = beta_parameterized_region(sigma, &a).unwrap();
            let projected = eliminate_power_exponents(&layered, 4).unwrap();
            assert!(polytopes_equal(&projected, &build_region(sigma, &a).unwrap()).unwrap());
            assert!(projection_matches_closed_form(sigma, &a).unwrap());
        }
    }

    #[test]
    fn region_monotone_in_strengths() {
        let small = alpha("0.2,0.4,1");
        let large = alpha("0.3,0.4,1");
        let a = build_region(2, &small).unwrap();
        let b = build_region(2, &large).unwrap();
        assert!(a.is_subset_of(&b).unwrap());
        assert!(!b.is_subset_of(&a).unwrap());
    }
}
