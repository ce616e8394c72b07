//! Binomials, multicast group enumeration, the partition of groups by their
//! weakest member, and lower convex envelopes of integer-indexed sequences.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::rational::{from_u128, Rational};

/// Binomial coefficient with the convention `C(n, k) = 0` for `n < k`.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    num_integer::binomial(n as u128, k.min(n - k) as u128)
}

pub(crate) fn binom_q(n: usize, k: usize) -> Rational {
    from_u128(binom(n as u64, k as u64))
}

/// A sorted set of distinct 1-based user indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UserSet(Vec<usize>);

impl UserSet {
    /// Sorts and validates the members; every index must lie in `1..=k_users`.
    pub fn new(mut members: Vec<usize>, k_users: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("repeated user in {members:?}"));
        }
        if members.iter().any(|&m| m == 0 || m > k_users) {
            return domain(format!("users {members:?} not within [1..{k_users}]"));
        }
        Ok(UserSet(members))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, user: usize) -> bool {
        self.0.binary_search(&user).is_ok()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn intersects(&self, users: &[usize]) -> bool {
        users.iter().any(|&u| self.contains(u))
    }

    pub fn is_subset_of(&self, users: &[usize]) -> bool {
        self.0.iter().all(|u| users.contains(u))
    }

    pub fn with(&self, user: usize) -> UserSet {
        let mut members = self.0.clone();
        if let Err(pos) = members.binary_search(&user) {
            members.insert(pos, user);
        }
        UserSet(members)
    }

    pub fn without(&self, user: usize) -> UserSet {
        UserSet(self.0.iter().copied().filter(|&m| m != user).collect())
    }

    pub fn union(&self, other: &UserSet) -> UserSet {
        let mut members: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        members.sort_unstable();
        members.dedup();
        UserSet(members)
    }

    pub fn difference(&self, other: &UserSet) -> UserSet {
        UserSet(self.0.iter().copied().filter(|&m| !other.contains(m)).collect())
    }
}

impl fmt::Display for UserSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `size`-subsets of the sorted slice `universe`, in lexicographic order.
pub fn subsets_of(universe: &[usize], size: usize) -> Vec<UserSet> {
    let n = universe.len();
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binom(n as u64, size as u64) as usize);
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(UserSet(idx.iter().map(|&i| universe[i]).collect()));
        // advance to the next combination
        let mut pos = size;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] != pos + n - size {
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `sigma`-subsets of `[1..k]` in canonical lexicographic order.
pub fn enumerate_groups(k: usize, sigma: usize) -> Result<Vec<UserSet>> {
    if sigma == 0 || sigma > k {
        return domain(format!("group size {sigma} outside [1..{k}]"));
    }
    let users: Vec<usize> = (1..=k).collect();
    Ok(subsets_of(&users, sigma))
}

/// The `sigma`-groups of `[1..k]` bucketed by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    pub k: usize,
    pub sigma: usize,
    /// `classes[i - 1]` holds the groups whose minimum is `i`; empty for `i > k - sigma + 1`.
    pub classes: Vec<Vec<UserSet>>,
}

impl GroupPartition {
    pub fn class(&self, i: usize) -> &[UserSet] {
        &self.classes[i - 1]
    }

    /// Size of the union of the first `j` classes.
    pub fn union_size(&self, j: usize) -> usize {
        self.classes.iter().take(j).map(Vec::len).sum()
    }
}

pub fn partition_by_min(k: usize, sigma: usize) -> Result<GroupPartition> {
    if sigma < 2 || sigma > k {
        return domain(format!("group size {sigma} outside [2..{k}]"));
    }
    let mut classes = vec![Vec::new(); k];
    for group in enumerate_groups(k, sigma)? {
        let min = group.smallest().expect("groups are nonempty");
        classes[min - 1].push(group);
    }
    Ok(GroupPartition { k, sigma, classes })
}

/// `C(k, sigma) - C(k - j, sigma)`: the number of `sigma`-groups that meet `[1..j]`.
pub fn cumulative_group_count(k: usize, sigma: usize, j: usize) -> u128 {
    let j = j.min(k);
    binom(k as u64, sigma as u64) - binom((k - j) as u64, sigma as u64)
}

/// Values `f(0), ..., f(K)` of a sequence indexed by the aggregate cache size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopePoints {
    values: Vec<Rational>,
}

impl EnvelopePoints {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return domain("envelope needs at least one point");
        }
        Ok(EnvelopePoints { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Largest abscissa `K`.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    /// Indices of the points on the lower convex hull, left to right.
    fn lower_hull(&self) -> Vec<usize> {
        let mut hull: Vec<usize> = Vec::with_capacity(self.values.len());
        for i in 0..self.values.len() {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // drop b if it lies on or above the chord from a to i
                let lhs = (&self.values[b] - &self.values[a]) * Rational::from_integer((i - a).into());
                let rhs = (&self.values[i] - &self.values[a]) * Rational::from_integer((b - a).into());
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull
    }
}

/// Value at `x` of the lower convex envelope of `{(n, f(n)) : n in [0..K]}`.
pub fn lower_convex_envelope(points: &EnvelopePoints, x: &Rational) -> Result<Rational> {
    let last = Rational::from_integer(points.last_index().into());
    if x < &Rational::zero() || x > &last {
        return domain(format!("envelope abscissa {x} outside [0, {last}]"));
    }
    let hull = points.lower_hull();
    for pair in hull.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let xb = Rational::from_integer(b.into());
        if x <= &xb {
            let xa = Rational::from_integer(a.into());
            let fa = &points.values[a];
            let fb = &points.values[b];
            return Ok(fa + (fb - fa) * (x - &xa) / (xb - xa));
        }
    }
    Ok(points.values[hull[hull.len() - 1]].clone())
}

/// True iff the forward differences `f(n+1) - f(n)` are nondecreasing.
pub fn is_convex_sequence(points: &EnvelopePoints) -> bool {
    let diffs: Vec<Rational> = points.values.windows(2).map(|w| &w[1] - &w[0]).collect();
    diffs.windows(2).all(|w| w[0] <= w[1])
}

/// Per-file delivery load seen by user `k`:
/// `c_n = [C(K, n+1) - C(K - min(k, N), n+1)] / C(K, n)` for `n in [0..K]`.
pub fn delivery_load_sequence(k_users: usize, n_files: usize, k: usize) -> EnvelopePoints {
    let reach = k.min(n_files).min(k_users);
    let values = (0..=k_users)
        .map(|n| {
            let numer = binom_q(k_users, n + 1) - binom_q(k_users - reach, n + 1);
            numer / binom_q(k_users, n)
        })
        .collect();
    EnvelopePoints { values }
}
