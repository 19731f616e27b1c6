//! Invariant suites run by the `verify` command.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bruhat::{
    all_permutations, compare_fpf_with_bruhat, cross_check_bruhat, full_poset_not_bruhat_witness,
    prescribed_support_report, random_permutation_pairs,
};
use crate::canonical::{canonicalize, random_orbit_sample};
use crate::error::{Error, Result};
use crate::involution::{enumerate_involutions, Involution};
use crate::poset::{build_poset, dim_by_a, dim_by_secfm, involution_rank_control, orbit_dimension_oracle};
use crate::rank_control::rank_control;

/// Random pairs drawn per size when the Bruhat check is not exhaustive.
pub const BRUHAT_RANDOM_PAIRS: usize = 500;
/// Largest `n` for which every pair of `S_n` is compared.
pub const BRUHAT_EXHAUSTIVE_MAX_N: usize = 4;
/// Entry bound for random Borel matrices.
pub const ENTRY_BOUND: u32 = 5;
/// Failure messages kept per check.
const MAX_REPORTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Grading,
    Dimension,
    Secfm,
    Bruhat,
    Invariance,
    Pfaffian,
    Intervals,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Grading,
        Check::Dimension,
        Check::Secfm,
        Check::Bruhat,
        Check::Invariance,
        Check::Pfaffian,
        Check::Intervals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Grading => "grading",
            Check::Dimension => "dimension",
            Check::Secfm => "secfm",
            Check::Bruhat => "bruhat",
            Check::Invariance => "invariance",
            Check::Pfaffian => "pfaffian",
            Check::Intervals => "intervals",
        }
    }

    /// Largest supported `n`.
    pub fn max_n(self) -> usize {
        match self {
            Check::Grading => 7,
            Check::Dimension => 6,
            Check::Secfm => 10,
            Check::Bruhat => 6,
            Check::Invariance => 6,
            Check::Pfaffian => 8,
            Check::Intervals => 6,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
}

impl VerifyConfig {
    pub fn new(n: usize) -> Self {
        VerifyConfig {
            n,
            seed: 0,
            trials: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: Check,
    pub n: usize,
    pub cases: usize,
    pub failures: usize,
    /// First few failure descriptions.
    pub details: Vec<String>,
    /// Informational findings that do not affect the verdict.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (n={}): {} cases, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.check,
            self.n,
            self.cases,
            self.failures
        )?;
        for line in self.details.iter().chain(&self.notes) {
            write!(f, "\n    {line}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    details: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < MAX_REPORTED {
                self.details.push(describe());
            }
        }
    }

    /// Folds per-case outcomes computed elsewhere, in order.
    fn extend(&mut self, outcomes: Vec<Option<String>>) {
        for outcome in outcomes {
            let ok = outcome.is_none();
            self.record(ok, || outcome.unwrap_or_default());
        }
    }

    fn finish(self, check: Check, n: usize) -> CheckReport {
        CheckReport {
            check,
            n,
            cases: self.cases,
            failures: self.failures,
            details: self.details,
            notes: self.notes,
        }
    }
}

pub fn run_check(check: Check, config: &VerifyConfig) -> Result<CheckReport> {
    let n = config.n;
    if n == 0 || n > check.max_n() {
        return Err(Error::Dimension(format!(
            "check {check} supports 1 <= n <= {}, got {n}",
            check.max_n()
        )));
    }
    let mut tally = Tally::default();
    match check {
        Check::Grading => grading(n, &mut tally),
        Check::Dimension => per_involution(n, &mut tally, |p| {
            let (formula, oracle) = (dim_by_a(p), orbit_dimension_oracle(p));
            (formula != oracle).then(|| format!("{p}: rank formula {formula}, tangent oracle {oracle}"))
        }),
        Check::Secfm => per_involution(n, &mut tally, |p| {
            let (by_a, by_words) = (dim_by_a(p), dim_by_secfm(p));
            (by_a != by_words).then(|| format!("{p}: equality count gives {by_a}, inversions give {by_words}"))
        }),
        Check::Bruhat => bruhat(config, &mut tally)?,
        Check::Invariance => invariance(config, &mut tally),
        Check::Pfaffian => pfaffian(config, &mut tally),
        Check::Intervals => intervals(n, &mut tally)?,
    }
    Ok(tally.finish(check, n))
}

pub fn run_checks(checks: &[Check], config: &VerifyConfig) -> Result<Vec<CheckReport>> {
    checks.iter().map(|&c| run_check(c, config)).collect()
}

fn per_involution(n: usize, tally: &mut Tally, case: impl Fn(&Involution) -> Option<String> + Sync + Send) {
    let outcomes = enumerate_involutions(n).par_iter().map(&case).collect();
    tally.extend(outcomes);
}

fn grading(n: usize, tally: &mut Tally) {
    let poset = build_poset(n);
    for &(lo, hi) in poset.covers() {
        let (a, b) = (&poset.nodes()[lo], &poset.nodes()[hi]);
        tally.record(b.rank == a.rank + 1, || {
            format!("cover {} < {} goes from rank {} to {}", a.involution, b.involution, a.rank, b.rank)
        });
    }
    let bottom = poset.index_of(&Involution::identity(n)).expect("identity present");
    tally.record(poset.minimal_elements() == [bottom], || "identity is not the unique minimum".into());
    if n.is_multiple_of(2) {
        let top = Involution::adjacent_pairs(n).expect("even n");
        let top_idx = poset.index_of(&top).expect("present");
        tally.record(poset.maximal_elements() == [top_idx], || format!("{top} is not the unique maximum"));
    }
}

fn seeds(config: &VerifyConfig) -> impl Iterator<Item = u64> + '_ {
    (0..config.trials as u64).map(|t| config.seed.wrapping_add(t))
}

fn invariance(config: &VerifyConfig, tally: &mut Tally) {
    per_involution(config.n, tally, |p| {
        let expected = involution_rank_control(p);
        for seed in seeds(config) {
            let (a, _) = random_orbit_sample(p, seed, ENTRY_BOUND);
            if rank_control(a.matrix()).expect("square") != expected {
                return Some(format!("{p}, seed {seed}: rank-control matrix changed"));
            }
            let c = canonicalize(&a);
            if &c.involution() != p {
                return Some(format!("{p}, seed {seed}: canonicalized to {}", c.involution()));
            }
            if c.witness.act(&c.monomial.to_as_matrix()) != a {
                return Some(format!("{p}, seed {seed}: witness does not reproduce the input"));
            }
        }
        None
    });
}

fn pfaffian(config: &VerifyConfig, tally: &mut Tally) {
    let fpf: Vec<Involution> = enumerate_involutions(config.n)
        .into_iter()
        .filter(Involution::is_fixed_point_free)
        .collect();
    if fpf.is_empty() {
        tally.notes.push("odd n: no fixed-point-free involutions".into());
    }
    let outcomes = fpf
        .par_iter()
        .map(|p| {
            for seed in seeds(config) {
                let (a, b) = random_orbit_sample(p, seed, ENTRY_BOUND);
                let pf = a.pfaffian();
                if pf.abs() != b.diagonal_product().abs() {
                    return Some(format!("{p}, seed {seed}: |Pf| = {} but |diag product| = {}", pf.abs(), b.diagonal_product().abs()));
                }
                if &pf * &pf != a.matrix().det().expect("square") {
                    return Some(format!("{p}, seed {seed}: Pf² differs from det"));
                }
                let witness = canonicalize(&a).witness;
                if pf.abs() != witness.diagonal_product().abs() {
                    return Some(format!("{p}, seed {seed}: canonical witness diagonal disagrees with |Pf|"));
                }
            }
            None
        })
        .collect();
    tally.extend(outcomes);
}

fn bruhat(config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let n = config.n;
    let pairs = if n <= BRUHAT_EXHAUSTIVE_MAX_N {
        let all = all_permutations(n);
        all.iter()
            .flat_map(|p| all.iter().map(move |q| (p.clone(), q.clone())))
            .collect()
    } else {
        random_permutation_pairs(n, BRUHAT_RANDOM_PAIRS, config.seed)
    };
    let disagreements = cross_check_bruhat(&pairs)?;
    tally.cases += pairs.len();
    tally.failures += disagreements.len();
    tally.details.extend(disagreements.iter().take(MAX_REPORTED).map(|d| {
        format!("{} vs {}: rank-control says {}, covers say {}", d.p, d.q, d.by_rank_control, d.by_oracle)
    }));

    let poset = build_poset(n);
    if n.is_multiple_of(2) {
        let report = compare_fpf_with_bruhat(&poset)?;
        tally.cases += report.checked_pairs;
        tally.failures += report.violations.len();
        tally.details.extend(report.violations.iter().take(MAX_REPORTED).map(|v| {
            format!("fixed-point-free {} vs {}: orbit <= {}, Bruhat >= {}", v.a, v.b, v.orbit_leq, v.bruhat_geq)
        }));
    }
    if n >= 3 {
        let witness = full_poset_not_bruhat_witness(&poset)?;
        tally.record(witness.is_some(), || "orbit poset coincides with a Bruhat order".into());
        if let Some(w) = witness {
            tally.notes.push(format!(
                "not Bruhat: {} <= {} is {} in the orbit poset but {} in Bruhat order",
                w.against_bruhat.a, w.against_bruhat.b, w.against_bruhat.orbit_leq, w.against_bruhat.bruhat_relation
            ));
            tally.notes.push(format!(
                "not reversed Bruhat: {} <= {} is {} in the orbit poset but {} in reversed Bruhat order",
                w.against_reversed.a, w.against_reversed.b, w.against_reversed.orbit_leq, w.against_reversed.bruhat_relation
            ));
        }
    }
    Ok(())
}

fn intervals(n: usize, tally: &mut Tally) -> Result<()> {
    let poset = build_poset(n);
    let fpf: Vec<usize> = (0..poset.len())
        .filter(|&i| poset.nodes()[i].involution.is_fixed_point_free())
        .collect();
    for finding in prescribed_support_report(&poset)? {
        let label = format!("{:?}", finding.fixed_points);
        tally.record(finding.orbit.is_ok(), || {
            format!("fixed points {label}: not an orbit-poset interval ({:?})", finding.orbit)
        });
        if let Err(failure) = &finding.bruhat {
            let members: Vec<String> = finding.members.iter().map(ToString::to_string).collect();
            let describe = |i: usize| poset.nodes()[i].involution.to_string();
            let why = match failure {
                crate::poset::IntervalFailure::Intruder { low, high, extra } => format!(
                    "{} lies between {} and {}",
                    describe(*extra),
                    describe(*low),
                    describe(*high)
                ),
                other => format!("{other:?}"),
            };
            tally.notes.push(format!(
                "fixed points {label} {{{}}} is not a Bruhat interval: {why}",
                members.join(", ")
            ));
        }
    }
    if !fpf.is_empty() {
        tally.record(poset.check_interval(&fpf).is_ok(), || {
            "fixed-point-free involutions do not form an interval".into()
        });
    }
    Ok(())
}
