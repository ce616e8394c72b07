//! Bit-exact uncoded placement, XOR multicast generation, leader selection,
//! missing-message reconstruction for repeated demands, and per-user decoding.

use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use bitvec::prelude::*;
use num_traits::{ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, subsets_of, UserSet};
use crate::error::{domain, Error, Result};
use crate::rational::Rational;

pub type Bits = BitVec<u8, Lsb0>;

/// `K * mu` as an integer split order, rejecting fractional values.
pub fn integer_split_order(k_users: usize, mu: &Rational) -> Result<usize> {
    let kmu = mu * Rational::from_integer(k_users.into());
    if !kmu.is_integer() {
        return domain(format!("K*mu = {kmu} is not an integer"));
    }
    if mu < &Rational::zero() || kmu > Rational::from_integer(k_users.into()) {
        return domain(format!("mu = {mu} outside [0, 1]"));
    }
    Ok(kmu.to_integer().to_usize().expect("bounded by K"))
}

/// How every file is cut: one subfile per `kmu`-subset of the users.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfileLayout {
    pub k_users: usize,
    pub kmu: usize,
    pub subfile_bits: usize,
    subsets: Vec<UserSet>,
    position: HashMap<UserSet, usize>,
}

impl SubfileLayout {
    pub fn new(k_users: usize, kmu: usize, file_bits: usize) -> Result<Self> {
        if kmu > k_users {
            return domain(format!("K*mu = {kmu} exceeds K = {k_users}"));
        }
        let parts = binom(k_users as u64, kmu as u64) as usize;
        if file_bits == 0 || !file_bits.is_multiple_of(parts) {
            return Err(Error::Format(format!(
                "file size {file_bits} bits is not a positive multiple of C({k_users},{kmu}) = {parts}"
            )));
        }
        let users: Vec<usize> = (1..=k_users).collect();
        let subsets = subsets_of(&users, kmu);
        let position = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(SubfileLayout { k_users, kmu, subfile_bits: file_bits / parts, subsets, position })
    }

    /// Subfile labels in canonical order.
    pub fn subsets(&self) -> &[UserSet] {
        &self.subsets
    }

    pub fn multicast_group_size(&self) -> usize {
        self.kmu + 1
    }

    fn range(&self, label: &UserSet) -> Option<std::ops::Range<usize>> {
        let i = *self.position.get(label)?;
        Some(i * self.subfile_bits..(i + 1) * self.subfile_bits)
    }
}

#[derive(Debug, Clone)]
pub struct FileLibrary {
    pub layout: SubfileLayout,
    files: Vec<Bits>,
}

impl FileLibrary {
    pub fn new(files: Vec<Bits>, k_users: usize, kmu: usize) -> Result<Self> {
        let bits = files.first().map(|f| f.len()).unwrap_or(0);
        if files.is_empty() {
            return domain("library needs at least one file");
        }
        if files.iter().any(|f| f.len() != bits) {
            return Err(Error::Format("files must share one size".into()));
        }
        let layout = SubfileLayout::new(k_users, kmu, bits)?;
        Ok(FileLibrary { layout, files })
    }

    /// `n_files` files of `file_bits` pseudo-random bits drawn from `seed`.
    pub fn random(n_files: usize, file_bits: usize, k_users: usize, kmu: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let files = (0..n_files)
            .map(|_| {
                let mut bytes = vec![0u8; file_bits.div_ceil(8)];
                rng.fill_bytes(&mut bytes);
                let mut bits = Bits::from_vec(bytes);
                bits.truncate(file_bits);
                bits
            })
            .collect();
        FileLibrary::new(files, k_users, kmu)
    }

    pub fn n_files(&self) -> usize {
        self.files.len()
    }

    pub fn file_bits(&self) -> usize {
        self.files[0].len()
    }

    /// File `n` (1-based).
    pub fn file(&self, n: usize) -> &BitSlice<u8, Lsb0> {
        &self.files[n - 1]
    }

    pub fn subfile(&self, n: usize, label: &UserSet) -> &BitSlice<u8, Lsb0> {
        let range = self.layout.range(label).expect("label of size K*mu");
        &self.files[n - 1][range]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheContents {
    pub user: usize,
    pub subfiles: BTreeMap<(usize, UserSet), Bits>,
}

impl CacheContents {
    pub fn stored_bits(&self) -> usize {
        self.subfiles.values().map(|b| b.len()).sum()
    }

    pub fn get(&self, file: usize, label: &UserSet) -> Option<&Bits> {
        self.subfiles.get(&(file, label.clone()))
    }

    pub fn digest(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

/// User `k` stores every subfile whose label contains `k`.
pub fn place_caches(library: &FileLibrary) -> Vec<CacheContents> {
    let layout = &library.layout;
    (1..=layout.k_users)
        .map(|user| {
            let mut subfiles = BTreeMap::new();
            for label in layout.subsets.iter().filter(|s| s.contains(user)) {
                for n in 1..=library.n_files() {
                    subfiles.insert((n, label.clone()), library.subfile(n, label).to_bitvec());
                }
            }
            CacheContents { user, subfiles }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandTuple(Vec<usize>);

impl DemandTuple {
    pub fn new(d: Vec<usize>, n_files: usize) -> Result<Self> {
        if let Some(bad) = d.iter().find(|&&f| f == 0 || f > n_files) {
            return domain(format!("demand {bad} outside [1..{n_files}]"));
        }
        Ok(DemandTuple(d))
    }

    /// File demanded by user `k` (1-based).
    pub fn of(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Every tuple in `[1..n_files]^k_users`, in lexicographic order.
    pub fn all(k_users: usize, n_files: usize) -> Vec<DemandTuple> {
        let total = n_files.pow(k_users as u32);
        (0..total)
            .map(|mut code| {
                let mut d = vec![0; k_users];
                for slot in d.iter_mut().rev() {
                    *slot = code % n_files + 1;
                    code /= n_files;
                }
                DemandTuple(d)
            })
            .collect()
    }
}

/// Leading users: the weakest (smallest index) requester of each distinct file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaderSet {
    pub leaders: Vec<usize>,
    pub non_leaders: Vec<usize>,
}

impl LeaderSet {
    pub fn is_leader(&self, user: usize) -> bool {
        self.leaders.binary_search(&user).is_ok()
    }
}

pub fn select_leaders(d: &DemandTuple) -> LeaderSet {
    let mut seen = Vec::new();
    let mut leaders = Vec::new();
    let mut non_leaders = Vec::new();
    for k in 1..=d.len() {
        if seen.contains(&d.of(k)) {
            non_leaders.push(k);
        } else {
            seen.push(d.of(k));
            leaders.push(k);
        }
    }
    LeaderSet { leaders, non_leaders }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticastPayload {
    pub group: UserSet,
    pub bits: Bits,
}

/// XOR of `F_{d_i}^{group \ {i}}` over the members of `group`.
fn coded_message(group: &UserSet, d: &DemandTuple, library: &FileLibrary) -> Bits {
    let mut acc = bitvec![u8, Lsb0; 0; library.layout.subfile_bits];
    for &i in group.members() {
        acc ^= library.subfile(d.of(i), &group.without(i));
    }
    acc
}

/// One payload per `(K*mu + 1)`-group meeting the leader set, in canonical order.
pub fn encode_multicast(d: &DemandTuple, library: &FileLibrary, leaders: &LeaderSet) -> Vec<MulticastPayload> {
    let layout = &library.layout;
    let sigma = layout.multicast_group_size();
    let users: Vec<usize> = (1..=layout.k_users).collect();
    subsets_of(&users, sigma)
        .into_iter()
        .filter(|g| g.intersects(&leaders.leaders))
        .map(|group| {
            let bits = coded_message(&group, d, library);
            MulticastPayload { group, bits }
        })
        .collect()
}

fn payload_index(payloads: &[MulticastPayload]) -> HashMap<&UserSet, &Bits> {
    payloads.iter().map(|p| (&p.group, &p.bits)).collect()
}

/// Recomputes the untransmitted message for a group of non-leading users as
/// the XOR of `W_{B \ V}` over every alternative leader set `V` inside
/// `B = missing ∪ leaders`.
///
/// Every payload consumed must be addressed to a leader weaker than the
/// group's weakest member, or to that member itself, so that the whole group
/// can decode it over the degraded channel; a violation is reported as a
/// dependency error.
pub fn reconstruct_missing(
    payloads: &[MulticastPayload],
    missing: &UserSet,
    leaders: &LeaderSet,
    d: &DemandTuple,
) -> Result<MulticastPayload> {
    if !missing.is_subset_of(&leaders.non_leaders) {
        return domain(format!("group {missing} contains a leading user"));
    }
    let index = payload_index(payloads);
    let weakest = missing.smallest().ok_or_else(|| Error::Domain("empty group".into()))?;
    let mut reachable: Vec<usize> = leaders.leaders.iter().copied().filter(|&u| u < weakest).collect();
    reachable.push(weakest);

    let leader_set = UserSet::new(leaders.leaders.clone(), d.len())?;
    let pool = missing.union(&leader_set);
    let mut acc: Option<Bits> = None;
    for candidate in subsets_of(pool.members(), leaders.leaders.len()) {
        if candidate == leader_set {
            continue;
        }
        let mut files: Vec<usize> = candidate.members().iter().map(|&u| d.of(u)).collect();
        files.sort_unstable();
        files.dedup();
        if files.len() != candidate.len() {
            continue;
        }
        let group = pool.difference(&candidate);
        let bits = index
            .get(&group)
            .ok_or_else(|| Error::Dependency(format!("payload for {group} needed to rebuild {missing}")))?;
        if !group.intersects(&reachable) {
            return Err(Error::Dependency(format!(
                "payload {group} is not decodable by user {weakest} when rebuilding {missing}"
            )));
        }
        match acc.as_mut() {
            Some(a) => *a ^= bits.as_bitslice(),
            None => acc = Some((*bits).clone()),
        }
    }
    let bits = acc.ok_or_else(|| Error::Dependency(format!("no alternative leader set for {missing}")))?;
    Ok(MulticastPayload { group: missing.clone(), bits })
}

/// Standard decoding at user `k`: every subfile label not containing `k` is
/// peeled from `W_{{k} ∪ label}` by cancelling the cached cross terms.
pub fn decode_file(
    k: usize,
    payloads: &[MulticastPayload],
    cache: &CacheContents,
    d: &DemandTuple,
    leaders: &LeaderSet,
    layout: &SubfileLayout,
) -> Result<Bits> {
    let want = d.of(k);
    let index = payload_index(payloads);
    let mut out = Bits::with_capacity(layout.subfile_bits * layout.subsets.len());
    for label in &layout.subsets {
        if label.contains(k) {
            let part = cache
                .get(want, label)
                .ok_or_else(|| Error::Dependency(format!("user {k} lacks cached F_{want}^{label}")))?;
            out.extend_from_bitslice(part);
            continue;
        }
        let group = label.with(k);
        let mut part = match index.get(&group) {
            Some(bits) => (*bits).clone(),
            None if group.is_subset_of(&leaders.non_leaders) => {
                reconstruct_missing(payloads, &group, leaders, d)?.bits
            }
            None => return Err(Error::Dependency(format!("payload for {group} not delivered"))),
        };
        for &i in label.members() {
            let cross = cache
                .get(d.of(i), &group.without(i))
                .ok_or_else(|| Error::Dependency(format!("user {k} lacks a cross term of {group}")))?;
            part ^= cross.as_bitslice();
        }
        out.extend_from_bitslice(&part);
    }
    Ok(out)
}

/// Fault injected into the delivered payloads before decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitFlip {
    pub payload: usize,
    pub bit: usize,
}

/// Per-demand outcome of a full place/encode/decode run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub k: usize,
    pub n: usize,
    pub kmu: usize,
    pub file_bits: usize,
    pub seed: u64,
    pub demand: Vec<usize>,
    pub leaders: Vec<usize>,
    pub payloads: usize,
    pub pass: bool,
}

pub fn run_delivery(library: &FileLibrary, d: &DemandTuple, fault: Option<BitFlip>) -> Result<VerificationRecord> {
    let layout = &library.layout;
    if d.len() != layout.k_users {
        return domain(format!("demand tuple of length {} for K = {}", d.len(), layout.k_users));
    }
    DemandTuple::new(d.as_slice().to_vec(), library.n_files())?;
    let caches = place_caches(library);
    let leaders = select_leaders(d);
    let mut payloads = encode_multicast(d, library, &leaders);
    if let Some(f) = fault {
        if let Some(p) = payloads.get_mut(f.payload) {
            let bit = f.bit % p.bits.len();
            let old = p.bits[bit];
            p.bits.set(bit, !old);
        }
    }
    let mut pass = true;
    for k in 1..=layout.k_users {
        let decoded = decode_file(k, &payloads, &caches[k - 1], d, &leaders, layout)?;
        if decoded.as_bitslice() != library.file(d.of(k)) {
            pass = false;
        }
    }
    Ok(VerificationRecord {
        k: layout.k_users,
        n: library.n_files(),
        kmu: layout.kmu,
        file_bits: library.file_bits(),
        seed: 0,
        demand: d.as_slice().to_vec(),
        leaders: leaders.leaders,
        payloads: payloads.len(),
        pass,
    })
}

/// Generates a library from `seed`, delivers `d`, and checks every user's file bit for bit.
pub fn end_to_end_verify(
    k_users: usize,
    n_files: usize,
    kmu: usize,
    file_bits: usize,
    d: &DemandTuple,
    seed: u64,
) -> Result<bool> {
    let library = FileLibrary::random(n_files, file_bits, k_users, kmu, seed)?;
    Ok(run_delivery(&library, d, None)?.pass)
}

/// Runs every demand tuple in `[1..N]^K` against one library.
pub fn verify_all_demands(
    k_users: usize,
    n_files: usize,
    kmu: usize,
    file_bits: usize,
    seed: u64,
) -> Result<Vec<VerificationRecord>> {
    verify_all_demands_with_fault(k_users, n_files, kmu, file_bits, seed, None)
}

/// As [`verify_all_demands`], flipping one payload bit before every decode.
pub fn verify_all_demands_with_fault(
    k_users: usize,
    n_files: usize,
    kmu: usize,
    file_bits: usize,
    seed: u64,
    fault: Option<BitFlip>,
) -> Result<Vec<VerificationRecord>> {
    let library = FileLibrary::random(n_files, file_bits, k_users, kmu, seed)?;
    DemandTuple::all(k_users, n_files)
        .iter()
        .map(|d| {
            let mut rec = run_delivery(&library, d, fault)?;
            rec.seed = seed;
            Ok(rec)
        })
        .collect()
}

/// Smallest file size that splits evenly for every `K mu` in `[0..K]`.
pub fn default_file_bits(k_users: usize) -> usize {
    (0..=k_users as u64)
        .map(|t| binom(k_users as u64, t) as usize)
        .fold(1, num_integer::lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn set(v: &[usize], k: usize) -> UserSet {
        UserSet::new(v.to_vec(), k).unwrap()
    }

    fn demand(v: &[usize], n: usize) -> DemandTuple {
        DemandTuple::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn default_sizes_split_evenly() {
        assert_eq!(default_file_bits(4), 12);
        for k in 1..=8 {
            for kmu in 0..=k {
                assert!(SubfileLayout::new(k, kmu, default_file_bits(k)).is_ok());
            }
        }
    }

    #[test]
    fn injected_fault_breaks_decoding() {
        let clean = verify_all_demands(3, 2, 1, 6, 9).unwrap();
        assert!(clean.iter().all(|r| r.pass));
        let broken = verify_all_demands_with_fault(3, 2, 1, 6, 9, Some(BitFlip { payload: 0, bit: 0 })).unwrap();
        assert!(broken.iter().any(|r| !r.pass));
    }

    #[test]
    fn split_order_must_be_integer() {
        assert_eq!(integer_split_order(3, &ratio(1, 3)).unwrap(), 1);
        assert!(integer_split_order(3, &ratio(1, 2)).is_err());
        assert!(integer_split_order(3, &ratio(4, 3)).is_err());
    }

    #[test]
    fn indivisible_file_size_is_a_format_error() {
        assert!(matches!(FileLibrary::random(3, 10, 3, 1, 0), Err(Error::Format(_))));
        assert!(FileLibrary::random(3, 24, 3, 1, 0).is_ok());
    }

    #[test]
    fn placement_sizes() {
        let lib = FileLibrary::random(3, 24, 3, 0, 1).unwrap();
        assert!(place_caches(&lib).iter().all(|c| c.stored_bits() == 0));

        let lib = FileLibrary::random(3, 24, 3, 3, 1).unwrap();
        for c in place_caches(&lib) {
            assert_eq!(c.stored_bits(), 3 * 24);
        }

        // K=3, K*mu=1, N=3, B=24: three files, one 8-bit subfile each = M*B with M=1
        let lib = FileLibrary::random(3, 24, 3, 1, 1).unwrap();
        for c in place_caches(&lib) {
            assert_eq!(c.stored_bits(), 24);
            assert!(c.subfiles.keys().all(|(_, s)| s.contains(c.user)));
        }
    }

    #[test]
    fn placement_ignores_demands() {
        let lib = FileLibrary::random(2, 48, 4, 2, 9).unwrap();
        let before: Vec<u64> = place_caches(&lib).iter().map(CacheContents::digest).collect();
        let _ = run_delivery(&lib, &demand(&[1, 2, 2, 1], 2), None).unwrap();
        let after: Vec<u64> = place_caches(&lib).iter().map(CacheContents::digest).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn leader_selection() {
        let l = select_leaders(&demand(&[1, 2, 1, 2], 2));
        assert_eq!(l.leaders, [1, 2]);
        assert_eq!(l.non_leaders, [3, 4]);
        assert_eq!(select_leaders(&demand(&[1, 1, 1], 1)).leaders, [1]);
        let l = select_leaders(&demand(&[1, 2, 2], 2));
        assert_eq!((l.leaders.as_slice(), l.non_leaders.as_slice()), ([1, 2].as_slice(), [3].as_slice()));
        let l = select_leaders(&demand(&[2, 2, 1, 3], 3));
        assert_eq!(l.leaders, [1, 3, 4]);
    }

    #[test]
    fn three_user_multicast_messages() {
        let lib = FileLibrary::random(3, 24, 3, 1, 5).unwrap();
        let d = demand(&[1, 2, 3], 3);
        let leaders = select_leaders(&d);
        let payloads = encode_multicast(&d, &lib, &leaders);
        let groups: Vec<String> = payloads.iter().map(|p| p.group.to_string()).collect();
        assert_eq!(groups, ["{1,2}", "{1,3}", "{2,3}"]);
        assert!(payloads.iter().all(|p| p.bits.len() == 8));

        // W_12 = F_1^{2} xor F_2^{1}
        let mut w12 = lib.subfile(1, &set(&[2], 3)).to_bitvec();
        w12 ^= lib.subfile(2, &set(&[1], 3));
        assert_eq!(payloads[0].bits, w12);

        // user 1 recovers F_1 from W_12, W_13 and its cache
        let caches = place_caches(&lib);
        let only_user1: Vec<MulticastPayload> = payloads[..2].to_vec();
        let f1 = decode_file(1, &only_user1, &caches[0], &d, &leaders, &lib.layout).unwrap();
        assert_eq!(f1.as_bitslice(), lib.file(1));
    }

    #[test]
    fn payload_count_for_repeated_demands() {
        let lib = FileLibrary::random(2, 16, 4, 1, 5).unwrap();
        let d = demand(&[1, 2, 1, 2], 2);
        let payloads = encode_multicast(&d, &lib, &select_leaders(&d));
        // C(4,2) - C(2,2)
        assert_eq!(payloads.len(), 5);
        assert!(payloads.iter().all(|p| p.group != set(&[3, 4], 4)));
    }

    #[test]
    fn missing_message_matches_direct_xor() {
        let lib = FileLibrary::random(2, 16, 4, 1, 11).unwrap();
        let d = demand(&[1, 2, 1, 2], 2);
        let leaders = select_leaders(&d);
        let payloads = encode_multicast(&d, &lib, &leaders);
        let a = set(&[3, 4], 4);
        let rebuilt = reconstruct_missing(&payloads, &a, &leaders, &d).unwrap();
        let direct = coded_message(&a, &d, &lib);
        assert_eq!(rebuilt.bits, direct);

        // alternative leader pairs {1,4}, {2,3}, {3,4} select W_23, W_14, W_12
        let mut manual = coded_message(&set(&[2, 3], 4), &d, &lib);
        manual ^= coded_message(&set(&[1, 4], 4), &d, &lib).as_bitslice();
        manual ^= coded_message(&set(&[1, 2], 4), &d, &lib).as_bitslice();
        assert_eq!(manual, direct);

        let mut zero = rebuilt.bits.clone();
        zero ^= direct.as_bitslice();
        assert!(zero.not_any());
    }

    #[test]
    fn reconstruction_reports_absent_payloads() {
        let lib = FileLibrary::random(2, 16, 4, 1, 11).unwrap();
        let d = demand(&[1, 2, 1, 2], 2);
        let leaders = select_leaders(&d);
        let mut payloads = encode_multicast(&d, &lib, &leaders);
        payloads.retain(|p| p.group != set(&[1, 2], 4));
        let err = reconstruct_missing(&payloads, &set(&[3, 4], 4), &leaders, &d).unwrap_err();
        assert!(matches!(err, Error::Dependency(_)));
        let err = decode_file(1, &payloads, &place_caches(&lib)[0], &d, &leaders, &lib.layout).unwrap_err();
        assert!(matches!(err, Error::Dependency(_)));
    }

    #[test]
    fn non_leader_recovers_same_bits_as_leader() {
        let lib = FileLibrary::random(2, 16, 4, 1, 3).unwrap();
        let d = demand(&[1, 2, 1, 2], 2);
        let leaders = select_leaders(&d);
        let payloads = encode_multicast(&d, &lib, &leaders);
        let caches = place_caches(&lib);
        let lead = decode_file(1, &payloads, &caches[0], &d, &leaders, &lib.layout).unwrap();
        let follower = decode_file(3, &payloads, &caches[2], &d, &leaders, &lib.layout).unwrap();
        assert_eq!(lead, follower);
    }

    #[test]
    fn full_cache_needs_no_payloads() {
        let lib = FileLibrary::random(3, 8, 3, 3, 2).unwrap();
        let d = demand(&[3, 1, 3], 3);
        let leaders = select_leaders(&d);
        assert!(encode_multicast(&d, &lib, &leaders).is_empty());
        for k in 1..=3 {
            assert!(end_to_end_verify(3, 3, 3, 8, &d, k as u64).unwrap());
        }
    }

    #[test]
    fn zero_cache_unicasts_whole_files() {
        let lib = FileLibrary::random(2, 8, 3, 0, 2).unwrap();
        let d = demand(&[2, 2, 1], 2);
        let leaders = select_leaders(&d);
        let payloads = encode_multicast(&d, &lib, &leaders);
        assert_eq!(payloads.len(), 2);
        assert_eq!(payloads[0].bits.as_bitslice(), lib.file(2));
        assert!(run_delivery(&lib, &d, None).unwrap().pass);
    }

    #[test]
    fn corrupted_payload_fails_verification() {
        let lib = FileLibrary::random(3, 24, 3, 1, 4).unwrap();
        let d = demand(&[1, 2, 3], 3);
        assert!(run_delivery(&lib, &d, None).unwrap().pass);
        assert!(!run_delivery(&lib, &d, Some(BitFlip { payload: 1, bit: 3 })).unwrap().pass);
    }

    #[test]
    fn exhaustive_small_systems() {
        for k in 1..=3 {
            for n in 1..=3 {
                for kmu in 0..=k {
                    let bits = 8 * binom(k as u64, kmu as u64) as usize;
                    let records = verify_all_demands(k, n, kmu, bits, 7).unwrap();
                    assert_eq!(records.len(), n.pow(k as u32));
                    assert!(records.iter().all(|r| r.pass), "K={k} N={n} Kmu={kmu}");
                }
            }
        }
    }

    #[test]
    fn demand_validation() {
        assert!(DemandTuple::new(vec![1, 3], 2).is_err());
        assert!(DemandTuple::new(vec![0], 2).is_err());
        assert_eq!(DemandTuple::all(2, 2).len(), 4);
        assert_eq!(DemandTuple::all(2, 3)[5].as_slice(), [2, 3]);
    }
}
