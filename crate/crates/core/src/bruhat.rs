//! Bruhat order on permutations and its relation to the orbit poset.
//!
//! Permutation matrices put a `1` at `(i, π(i))`. With that convention
//! `π <= σ` in Bruhat order exactly when `R(π) >= R(σ)` entrywise.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::linalg::{Matrix, Rational};
use crate::poset::{check_interval, group_by_fixed_points, IntervalFailure, OrbitPoset};
use crate::rank_control::{rank_control, RankControlMatrix};

/// Largest `n` for which the cover-closure oracle is materialized.
pub const ORACLE_MAX_N: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// From a zero-based image vector.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("n must be positive".into()));
        }
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{map:?} is not a bijection")));
            }
        }
        Ok(Permutation { map })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation("one-line notation is 1-based".into()));
        }
        Permutation::new(one_line.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn longest(n: usize) -> Self {
        Permutation {
            map: (0..n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x + 1).collect()
    }

    pub fn inversions(&self) -> usize {
        let m = &self.map;
        (0..m.len())
            .map(|i| m[i + 1..].iter().filter(|&&x| x < m[i]).count())
            .sum()
    }

    /// Right multiplication by the transposition of positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut map = self.map.clone();
        map.swap(i, j);
        Permutation { map }
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for (i, &j) in self.map.iter().enumerate() {
            m.set(i, j, Rational::one());
        }
        m
    }

    pub fn rank_control(&self) -> RankControlMatrix {
        rank_control(&self.to_matrix()).expect("square")
    }
}

impl From<&Involution> for Permutation {
    fn from(p: &Involution) -> Self {
        Permutation {
            map: p.map().to_vec(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.one_line().iter().map(usize::to_string).collect();
        write!(f, "[{}]", cells.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn same_size(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::Dimension(format!(
            "permutations of {} and {} points",
            p.n(),
            q.n()
        )));
    }
    Ok(())
}

/// `p <= q` in Bruhat order, decided by `R(p) >= R(q)` entrywise.
pub fn bruhat_leq_rc(p: &Permutation, q: &Permutation) -> Result<bool> {
    same_size(p, q)?;
    q.rank_control().leq(&p.rank_control())
}

/// Bruhat order of `S_n` generated from its covers: `w -> w·t` for a
/// transposition `t` raising the inversion count by exactly one.
pub struct BruhatOracle {
    n: usize,
    index: HashMap<Vec<usize>, usize>,
    /// `above[x]` is a bitset of everything `>= x`.
    above: Vec<Vec<u64>>,
}

impl BruhatOracle {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > ORACLE_MAX_N {
            return Err(Error::Dimension(format!(
                "Bruhat oracle supports 1 <= n <= {ORACLE_MAX_N}, got {n}"
            )));
        }
        // Breadth-first discovery of S_n through covers, from the identity.
        let mut perms = vec![Permutation::identity(n)];
        let mut index = HashMap::from([(perms[0].map.clone(), 0usize)]);
        let mut covers: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let w = perms[x].clone();
            let length = w.inversions();
            for i in 0..n {
                for j in i + 1..n {
                    let v = w.swap_positions(i, j);
                    if v.inversions() != length + 1 {
                        continue;
                    }
                    let id = *index.entry(v.map.clone()).or_insert_with(|| {
                        perms.push(v);
                        covers.push(Vec::new());
                        queue.push_back(perms.len() - 1);
                        perms.len() - 1
                    });
                    covers[x].push(id);
                }
            }
        }
        // BFS order from the identity is non-decreasing in length, so a
        // reverse sweep sees every cover target before its source.
        let words = perms.len().div_ceil(64);
        let mut above = vec![vec![0u64; words]; perms.len()];
        for x in (0..perms.len()).rev() {
            let mut bits = vec![0u64; words];
            bits[x / 64] |= 1 << (x % 64);
            for &c in &covers[x] {
                for (b, a) in bits.iter_mut().zip(&above[c]) {
                    *b |= a;
                }
            }
            above[x] = bits;
        }
        Ok(BruhatOracle { n, index, above })
    }

    /// Shared oracle for `S_n`, built on first use.
    pub fn cached(n: usize) -> Result<Arc<BruhatOracle>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BruhatOracle>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(oracle) = cache.lock().unwrap().get(&n) {
            return Ok(Arc::clone(oracle));
        }
        let oracle = Arc::new(BruhatOracle::new(n)?);
        Ok(Arc::clone(cache.lock().unwrap().entry(n).or_insert(oracle)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn leq(&self, p: &Permutation, q: &Permutation) -> Result<bool> {
        same_size(p, q)?;
        if p.n() != self.n {
            return Err(Error::Dimension(format!(
                "oracle for S{} queried with S{}",
                self.n,
                p.n()
            )));
        }
        let x = self.index[&p.map];
        let y = self.index[&q.map];
        Ok(self.above[x][y / 64] >> (y % 64) & 1 == 1)
    }
}

/// `p <= q` in Bruhat order via the cover-generated oracle.
pub fn bruhat_leq_oracle(p: &Permutation, q: &Permutation) -> Result<bool> {
    same_size(p, q)?;
    BruhatOracle::cached(p.n())?.leq(p, q)
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation {
                map: prefix.clone(),
            });
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                extend(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `count` seeded uniform random ordered pairs from `S_n`.
pub fn random_permutation_pairs(n: usize, count: usize, seed: u64) -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(&mut rng);
        Permutation { map }
    };
    (0..count).map(|_| (draw(), draw())).collect()
}

/// Disagreement between the two Bruhat tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatDisagreement {
    pub p: Permutation,
    pub q: Permutation,
    pub by_rank_control: bool,
    pub by_oracle: bool,
}

/// Compares [`bruhat_leq_rc`] and [`bruhat_leq_oracle`] on `pairs`.
pub fn cross_check_bruhat(pairs: &[(Permutation, Permutation)]) -> Result<Vec<BruhatDisagreement>> {
    let mut out = Vec::new();
    for (p, q) in pairs {
        let by_rank_control = bruhat_leq_rc(p, q)?;
        let by_oracle = bruhat_leq_oracle(p, q)?;
        if by_rank_control != by_oracle {
            out.push(BruhatDisagreement {
                p: p.clone(),
                q: q.clone(),
                by_rank_control,
                by_oracle,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: String,
    pub b: String,
    pub orbit_leq: bool,
    pub bruhat_geq: bool,
}

/// Orbit order against reversed Bruhat order on fixed-point-free
/// involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub checked_pairs: usize,
    pub violations: Vec<Violation>,
}

impl ComparisonReport {
    pub fn is_isomorphic(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Checks that on fixed-point-free involutions `a <= b` in the orbit poset
/// iff `a >= b` in Bruhat order, over all ordered pairs.
pub fn compare_fpf_with_bruhat(poset: &OrbitPoset) -> Result<ComparisonReport> {
    let n = poset.n();
    if n % 2 == 1 {
        return Err(Error::Dimension(format!(
            "no fixed-point-free involutions of {n} points"
        )));
    }
    let oracle = BruhatOracle::cached(n)?;
    let fpf: Vec<usize> = (0..poset.len())
        .filter(|&i| poset.nodes()[i].involution.is_fixed_point_free())
        .collect();
    let mut violations = Vec::new();
    let mut checked_pairs = 0;
    for &x in &fpf {
        for &y in &fpf {
            let a = &poset.nodes()[x].involution;
            let b = &poset.nodes()[y].involution;
            let orbit_leq = poset.leq(x, y);
            let bruhat_geq = oracle.leq(&b.into(), &a.into())?;
            checked_pairs += 1;
            if orbit_leq != bruhat_geq {
                violations.push(Violation {
                    a: a.to_string(),
                    b: b.to_string(),
                    orbit_leq,
                    bruhat_geq,
                });
            }
        }
    }
    Ok(ComparisonReport {
        n,
        checked_pairs,
        violations,
    })
}

/// A pair `(a, b)` on which the orbit order and a Bruhat-derived order
/// disagree about `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMismatch {
    pub a: Involution,
    pub b: Involution,
    pub orbit_leq: bool,
    pub bruhat_relation: bool,
}

/// Evidence that the full orbit poset is neither the Bruhat order on
/// involutions nor its reverse, under the identity labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotBruhatWitness {
    /// `bruhat_relation` is `a <= b` in Bruhat order.
    pub against_bruhat: OrderMismatch,
    /// `bruhat_relation` is `a >= b` in Bruhat order.
    pub against_reversed: OrderMismatch,
}

/// `None` when the orbit order coincides with the Bruhat order on
/// involutions or with its reverse.
pub fn full_poset_not_bruhat_witness(poset: &OrbitPoset) -> Result<Option<NotBruhatWitness>> {
    let oracle = BruhatOracle::cached(poset.n())?;
    let nodes = poset.nodes();
    let mut against_bruhat = None;
    let mut against_reversed = None;
    'scan: for x in 0..nodes.len() {
        for y in 0..nodes.len() {
            let a = &nodes[x].involution;
            let b = &nodes[y].involution;
            let orbit_leq = poset.leq(x, y);
            let mismatch = |bruhat_relation: bool| OrderMismatch {
                a: a.clone(),
                b: b.clone(),
                orbit_leq,
                bruhat_relation,
            };
            let leq = oracle.leq(&a.into(), &b.into())?;
            if against_bruhat.is_none() && leq != orbit_leq {
                against_bruhat = Some(mismatch(leq));
            }
            let geq = oracle.leq(&b.into(), &a.into())?;
            if against_reversed.is_none() && geq != orbit_leq {
                against_reversed = Some(mismatch(geq));
            }
            if against_bruhat.is_some() && against_reversed.is_some() {
                break 'scan;
            }
        }
    }
    Ok(match (against_bruhat, against_reversed) {
        (Some(against_bruhat), Some(against_reversed)) => Some(NotBruhatWitness {
            against_bruhat,
            against_reversed,
        }),
        _ => None,
    })
}

/// Interval status of one fixed-point class in both posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFinding {
    /// 1-based fixed points shared by the class.
    pub fixed_points: Vec<usize>,
    pub members: Vec<Involution>,
    pub orbit: std::result::Result<(Involution, Involution), IntervalFailure>,
    pub bruhat: std::result::Result<(Involution, Involution), IntervalFailure>,
}

/// For each fixed-point set, whether its involutions form an interval in
/// the orbit poset and in the Bruhat order on involutions. Failure indices
/// in [`IntervalFailure`] refer to `poset.nodes()`.
pub fn prescribed_support_report(poset: &OrbitPoset) -> Result<Vec<SupportFinding>> {
    let oracle = BruhatOracle::cached(poset.n())?;
    let involutions = poset.involutions();
    let perms: Vec<Permutation> = involutions.iter().map(Permutation::from).collect();
    let bruhat_leq = |x: usize, y: usize| oracle.leq(&perms[x], &perms[y]).expect("same n");
    let label = |bounds: (usize, usize)| (involutions[bounds.0].clone(), involutions[bounds.1].clone());
    Ok(group_by_fixed_points(&involutions)
        .into_iter()
        .map(|(fixed_points, members)| SupportFinding {
            members: members.iter().map(|&i| involutions[i].clone()).collect(),
            orbit: poset.check_interval(&members).map(label),
            bruhat: check_interval(&members, 0..involutions.len(), bruhat_leq).map(label),
            fixed_points,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn perm(one_line: &[usize]) -> Permutation {
        Permutation::from_one_line(one_line).unwrap()
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert_eq!(Permutation::longest(4).inversions(), 6);
        assert_eq!(perm(&[2, 1, 3]).to_string(), "[2 1 3]");
    }

    #[test]
    fn rank_control_examples() {
        let all = all_permutations(3);
        assert_eq!(all.len(), 6);
        for p in &all {
            assert!(bruhat_leq_rc(p, p).unwrap());
            assert!(bruhat_leq_rc(&Permutation::identity(3), p).unwrap());
        }
        // (1,2) <= (1,3) = [3 2 1]
        assert!(bruhat_leq_rc(&perm(&[2, 1, 3]), &perm(&[3, 2, 1])).unwrap());
        assert!(!bruhat_leq_rc(&perm(&[2, 1, 3]), &perm(&[1, 3, 2])).unwrap());
        assert!(bruhat_leq_rc(&perm(&[1, 2]), &perm(&[1, 2, 3])).is_err());
    }

    #[test]
    fn oracle_examples() {
        let id = Permutation::identity(4);
        assert!(bruhat_leq_oracle(&id, &id).unwrap());
        assert!(bruhat_leq_oracle(&id, &Permutation::longest(4)).unwrap());
        assert!(!bruhat_leq_oracle(&Permutation::longest(4), &id).unwrap());
        assert_eq!(BruhatOracle::cached(4).unwrap().len(), 24);
        assert!(BruhatOracle::new(ORACLE_MAX_N + 1).is_err());
    }

    #[test]
    fn criteria_agree_exhaustively_through_s4() {
        for n in 1..=4 {
            let all = all_permutations(n);
            let pairs: Vec<_> = all
                .iter()
                .flat_map(|p| all.iter().map(move |q| (p.clone(), q.clone())))
                .collect();
            assert_eq!(pairs.len(), (1..=n).product::<usize>().pow(2));
            assert!(cross_check_bruhat(&pairs).unwrap().is_empty());
        }
    }

    #[test]
    fn criteria_agree_on_random_pairs() {
        for n in [5, 6] {
            let pairs = random_permutation_pairs(n, 500, n as u64);
            assert!(cross_check_bruhat(&pairs).unwrap().is_empty());
        }
    }

    #[test]
    fn fixed_point_free_part_is_reversed_bruhat() {
        let sizes = [(2, 1), (4, 3), (6, 15)];
        for (n, count) in sizes {
            let report = compare_fpf_with_bruhat(&build_poset(n)).unwrap();
            assert_eq!(report.checked_pairs, count * count);
            assert!(report.is_isomorphic(), "{report:?}");
        }
        assert!(compare_fpf_with_bruhat(&build_poset(3)).is_err());
    }

    #[test]
    fn n_four_chain() {
        let poset = build_poset(4);
        let idx = |s: &str| poset.index_of(&Involution::parse(s, 4).unwrap()).unwrap();
        assert!(poset.leq(idx("(1,4)(2,3)"), idx("(1,3)(2,4)")));
        assert!(poset.leq(idx("(1,3)(2,4)"), idx("(1,2)(3,4)")));
    }

    #[test]
    fn full_poset_is_not_bruhat() {
        assert!(full_poset_not_bruhat_witness(&build_poset(1)).unwrap().is_none());
        assert!(full_poset_not_bruhat_witness(&build_poset(2)).unwrap().is_none());
        for n in [4, 5] {
            let w = full_poset_not_bruhat_witness(&build_poset(n)).unwrap().unwrap();
            assert_ne!(w.against_bruhat.orbit_leq, w.against_bruhat.bruhat_relation);
            assert_ne!(w.against_reversed.orbit_leq, w.against_reversed.bruhat_relation);
        }
    }

    #[test]
    fn report_serializes() {
        let report = compare_fpf_with_bruhat(&build_poset(2)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["n"], 2);
        assert_eq!(value["checked_pairs"], 1);
        assert!(value["violations"].as_array().unwrap().is_empty());
    }

    #[test]
    fn prescribed_supports() {
        let mut bruhat_failures = 0;
        for n in 1..=5 {
            for finding in prescribed_support_report(&build_poset(n)).unwrap() {
                assert!(finding.orbit.is_ok(), "{finding:?}");
                if finding.bruhat.is_err() {
                    bruhat_failures += 1;
                }
            }
        }
        assert!(bruhat_failures > 0);
    }
}
