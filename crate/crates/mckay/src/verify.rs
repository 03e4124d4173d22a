//! End-to-end verification runs: census counts on both sides of the
//! character bijection, fixed-point counts under the four sign
//! classes, and a batch scan that emits one JSON report per case.
//!
//! Counts on the two sides are computed by independent routes. The
//! global side enumerates partitions and tests degrees; the local side
//! multiplies census formulas over tower levels and never touches a
//! global partition. Sign routes that disagree are reported as
//! structured defects instead of being reconciled; only a
//! closed-form-versus-oracle disagreement is treated as fatal.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localchars::{
    eps_local, eps_local_oracle, eps_local_value, is_local_symmetric, local_label,
    multipartition_count, LocalLabel, LocalSign,
};
use crate::numtheory::{check_odd_prime, digits, NavarroAut, SignClass};
use crate::partition::Partition;
use crate::symchars::{eps_global_direct, eps_global_oracle, eps_global_structural};
use crate::tower::{is_p_prime_degree, CoreTower};

/// Which side of the bijection a census counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Global,
    Local,
}

/// Character counts on one side: all labels of degree coprime to p,
/// and those fixed by the automorphism under consideration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCount {
    pub total: u64,
    pub fixed: u64,
}

/// A disagreement between two sign routes on one label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    pub lambda: String,
    pub path: String,
    pub expected: String,
    pub got: String,
}

impl Defect {
    /// A defect is fatal when a closed form contradicts the exact
    /// cyclotomic oracle; decomposition-route disagreements are
    /// informational.
    pub fn is_fatal(&self) -> bool {
        self.path.ends_with("-vs-oracle")
    }
}

/// One verification case: fixed-point counts on both sides for a
/// single (n, p, sign class) triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u64,
    pub p: u64,
    pub sign_class: String,
    pub global: SideCount,
    pub local: SideCount,
    pub equal: bool,
    pub defects: Vec<Defect>,
    pub ms: u64,
}

/// The character-labeling bijection: a partition of degree coprime to
/// p maps to its tower of cores.
pub fn phi(lambda: &Partition, p: u64) -> Result<LocalLabel> {
    local_label(lambda, p)
}

fn sign_str(sign: i8) -> String {
    if sign > 0 { "+1" } else { "-1" }.to_string()
}

/// Symmetric labels of degree coprime to p together with the total
/// count of such labels, by direct enumeration.
fn global_census(n: u64, p: u64) -> Result<(Vec<Partition>, u64)> {
    check_odd_prime(p)?;
    if p > n {
        return Err(Error::PrimeExceedsN { p, n });
    }
    let mut symmetric = Vec::new();
    let mut total = 0u64;
    for lambda in Partition::all(n) {
        if !is_p_prime_degree(&lambda, p)? {
            continue;
        }
        total += 1;
        if lambda.is_symmetric() {
            symmetric.push(lambda);
        }
    }
    Ok((symmetric, total))
}

fn census_to_u64(count: num_bigint::BigUint) -> Result<u64> {
    count
        .to_u64()
        .ok_or_else(|| Error::Unsupported("census count exceeds u64".into()))
}

/// Census of irreducible labels of degree coprime to p as a triple
/// (conjugate pairs, symmetric labels, total): each pair carries one
/// label and each symmetric partition two, so the total is
/// pairs + 2 * symmetric.
///
/// The global side enumerates partitions of n; the local side
/// multiplies partition and multipartition counts over tower levels.
///
/// ```
/// use mckay::{count_p_prime, Side};
///
/// let global = count_p_prime(6, 3, Side::Global).unwrap();
/// assert_eq!(global, (4, 1, 6));
/// assert_eq!(global, count_p_prime(6, 3, Side::Local).unwrap());
/// ```
pub fn count_p_prime(n: u64, p: u64, side: Side) -> Result<(u64, u64, u64)> {
    let (symmetric, labels) = match side {
        Side::Global => {
            let (symmetric, total) = global_census(n, p)?;
            (symmetric.len() as u64, total)
        }
        Side::Local => {
            check_odd_prime(p)?;
            if p > n {
                return Err(Error::PrimeExceedsN { p, n });
            }
            let ds = digits(n, p);
            let mut total = num_bigint::BigUint::from(Partition::all(ds[0]).len());
            let mut symmetric = num_bigint::BigUint::from(Partition::self_conjugate(ds[0]).len());
            for (k, &nk) in ds.iter().enumerate().skip(1) {
                total *= multipartition_count(p.pow(k as u32), nk);
                let half = (p.pow(k as u32) - 1) / 2;
                let mut level = num_bigint::BigUint::from(0u32);
                for m in (nk % 2..=nk).step_by(2) {
                    let middles = Partition::self_conjugate(m).len();
                    level += multipartition_count(half, (nk - m) / 2) * middles;
                }
                symmetric *= level;
            }
            (census_to_u64(symmetric)?, census_to_u64(total)?)
        }
    };
    debug_assert!(labels >= symmetric && (labels - symmetric) % 2 == 0);
    let pairs = (labels - symmetric) / 2;
    Ok((pairs, symmetric, pairs + 2 * symmetric))
}

/// A class of symmetric labels sharing core, middle entries, and level
/// weights; all sign routes are constant on the class, so one
/// representative label stands for `multiplicity` labels.
struct SymmetricFamily {
    label: LocalLabel,
    multiplicity: u64,
}

fn symmetric_families(n: u64, p: u64) -> Result<Vec<SymmetricFamily>> {
    let ds = digits(n, p);
    // Choices per level k >= 1: the middle entry, self-conjugate with
    // the weight's parity; the remaining weight splits evenly over the
    // star-paired addresses, counted by a multipartition census.
    let mut level_choices: Vec<Vec<(Partition, u64)>> = Vec::new();
    for (k, &nk) in ds.iter().enumerate().skip(1) {
        let half = (p.pow(k as u32) - 1) / 2;
        let mut choices = Vec::new();
        for m in (nk % 2..=nk).step_by(2) {
            let multiplicity = census_to_u64(multipartition_count(half, (nk - m) / 2))?;
            for middle in Partition::self_conjugate(m) {
                choices.push((middle, multiplicity));
            }
        }
        level_choices.push(choices);
    }

    let mut families = Vec::new();
    for core in Partition::self_conjugate(ds[0]) {
        let mut cursor = vec![0usize; level_choices.len()];
        loop {
            let mut levels = vec![BTreeMap::new(); ds.len()];
            if !core.is_empty() {
                levels[0].insert(0, core.clone());
            }
            let mut multiplicity = 1u64;
            for (i, &choice) in cursor.iter().enumerate() {
                let k = i + 1;
                let (middle, count) = &level_choices[i][choice];
                multiplicity *= count;
                if !middle.is_empty() {
                    levels[k].insert((p.pow(k as u32) - 1) / 2, middle.clone());
                }
                // Weight off the middle goes to the outermost mirror
                // pair as a row and a column; both have fewer than p
                // boxes, hence are cores.
                let m = (ds[k] - middle.size()) / 2;
                if m > 0 {
                    levels[k].insert(0, Partition::new(vec![m as u32])?);
                    levels[k].insert(p.pow(k as u32) - 1, Partition::new(vec![1; m as usize])?);
                }
            }
            let label = LocalLabel::new(CoreTower::from_entries(p, levels)?)?;
            debug_assert!(is_local_symmetric(&label));
            families.push(SymmetricFamily {
                label,
                multiplicity,
            });

            // Advance the cartesian product cursor.
            let mut i = 0;
            loop {
                if i == cursor.len() {
                    break;
                }
                cursor[i] += 1;
                if cursor[i] < level_choices[i].len() {
                    break;
                }
                cursor[i] = 0;
                i += 1;
            }
            if i == cursor.len() {
                break;
            }
        }
    }
    Ok(families)
}

/// Fixed-point counts for one (n, p, automorphism) case, with both
/// sides computed independently and every sign cross-checked.
///
/// On the global side each symmetric label's sign is computed by the
/// closed form, the cyclotomic oracle, and the level decomposition;
/// on the local side by the literal level-by-level product, the value
/// route, and the oracle. Conjugate pairs fuse to one label apiece and
/// are fixed for every sign class, so only symmetric labels are
/// evaluated per automorphism.
///
/// ```
/// use mckay::{fixed_counts, NavarroAut};
///
/// let report = fixed_counts(6, 3, &NavarroAut::sigma(3)).unwrap();
/// assert_eq!((report.global.fixed, report.local.fixed), (4, 4));
/// assert!(report.equal);
/// ```
pub fn fixed_counts(n: u64, p: u64, f: &NavarroAut) -> Result<VerificationReport> {
    let start = Instant::now();
    let sign_class = f.class()?.to_string();
    let mut defects = Vec::new();

    let (symmetric, total) = global_census(n, p)?;
    let global_pairs = (total - symmetric.len() as u64) / 2;
    let mut global_fixed_symmetric = 0u64;
    for lambda in &symmetric {
        let direct = eps_global_direct(lambda, f)?;
        let oracle = eps_global_oracle(lambda, f)?;
        if direct != oracle {
            defects.push(Defect {
                lambda: lambda.to_string(),
                path: "eps-global-direct-vs-oracle".into(),
                expected: sign_str(oracle),
                got: sign_str(direct),
            });
        }
        let structural = eps_global_structural(lambda, f)?;
        if structural != direct {
            defects.push(Defect {
                lambda: lambda.to_string(),
                path: "eps-global-structural(sqrt-p)".into(),
                expected: sign_str(direct),
                got: sign_str(structural),
            });
        }
        if oracle == 1 {
            global_fixed_symmetric += 1;
        }
    }
    let global = SideCount {
        total: global_pairs + 2 * symmetric.len() as u64,
        fixed: global_pairs + 2 * global_fixed_symmetric,
    };

    let (local_pairs, local_symmetric, local_total) = count_p_prime(n, p, Side::Local)?;
    let mut seen_symmetric = 0u64;
    let mut local_fixed_symmetric = 0u64;
    for family in symmetric_families(n, p)? {
        seen_symmetric += family.multiplicity;
        let value = eps_local_value(&family.label, f)?;
        let lambda = family.label.global_partition().to_string();
        match eps_local_oracle(&family.label, f)? {
            LocalSign::Pinned(oracle) => {
                if value != oracle {
                    defects.push(Defect {
                        lambda: lambda.clone(),
                        path: "eps-local-value-vs-oracle".into(),
                        expected: sign_str(oracle),
                        got: sign_str(value),
                    });
                }
            }
            LocalSign::Indeterminate => {
                defects.push(Defect {
                    lambda: lambda.clone(),
                    path: "eps-local-value-vs-oracle".into(),
                    expected: "a determinate oracle sign".into(),
                    got: sign_str(value),
                });
            }
        }
        let literal = eps_local(&family.label, f)?;
        if literal != value {
            defects.push(Defect {
                lambda,
                path: "eps-local-structural(sqrt-p)".into(),
                expected: sign_str(value),
                got: sign_str(literal),
            });
        }
        if value == 1 {
            local_fixed_symmetric += family.multiplicity;
        }
    }
    if seen_symmetric != local_symmetric {
        return Err(Error::Internal(format!(
            "family enumeration found {seen_symmetric} symmetric labels, census {local_symmetric}"
        )));
    }
    let local = SideCount {
        total: local_total,
        fixed: local_pairs + 2 * local_fixed_symmetric,
    };

    Ok(VerificationReport {
        n,
        p,
        sign_class,
        equal: global.fixed == local.fixed,
        global,
        local,
        defects,
        ms: start.elapsed().as_millis() as u64,
    })
}

/// Scan parameters: all n up to the bound, all listed primes not
/// exceeding n, all four sign classes.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub n_max: u64,
    pub primes: Vec<u64>,
    pub budget_ms: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            n_max: 24,
            primes: vec![3, 5, 7],
            budget_ms: None,
        }
    }
}

/// Tally of a finished scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub reports: u64,
    pub unequal: u64,
    pub fatal_defects: u64,
    pub informational_defects: u64,
}

impl ScanSummary {
    /// A scan is clean when both sides agreed everywhere and no closed
    /// form contradicted the oracle.
    pub fn is_clean(&self) -> bool {
        self.unequal == 0 && self.fatal_defects == 0
    }
}

/// Runs verification cases in a fixed order (n ascending, then prime,
/// then sign class) and writes one JSON report per line. Reports
/// written before a budget overrun are kept; the overrun itself is an
/// error.
pub fn scan<W: Write>(out: &mut W, options: &ScanOptions) -> Result<ScanSummary> {
    let mut primes = options.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        check_odd_prime(p)?;
    }
    let start = Instant::now();
    let mut summary = ScanSummary::default();
    for n in 3..=options.n_max {
        for &p in primes.iter().filter(|&&p| p <= n) {
            for class in SignClass::ALL {
                if let Some(limit_ms) = options.budget_ms {
                    if start.elapsed().as_millis() as u64 > limit_ms {
                        return Err(Error::BudgetExceeded {
                            limit_ms,
                            at: format!("n={n} p={p} class={class}"),
                        });
                    }
                }
                let f = NavarroAut::from_class(p, class)?;
                let report = fixed_counts(n, p, &f)?;
                summary.reports += 1;
                if !report.equal {
                    summary.unequal += 1;
                }
                for defect in &report.defects {
                    if defect.is_fatal() {
                        summary.fatal_defects += 1;
                    } else {
                        summary.informational_defects += 1;
                    }
                }
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_at_the_smallest_cases() {
        assert_eq!(count_p_prime(3, 3, Side::Global).unwrap(), (1, 1, 3));
        assert_eq!(count_p_prime(3, 3, Side::Local).unwrap(), (1, 1, 3));
        assert_eq!(count_p_prime(4, 3, Side::Global).unwrap(), (1, 1, 3));
        assert_eq!(count_p_prime(4, 3, Side::Local).unwrap(), (1, 1, 3));
        assert_eq!(count_p_prime(5, 5, Side::Global).unwrap(), (2, 1, 4));
        assert_eq!(count_p_prime(5, 5, Side::Local).unwrap(), (2, 1, 4));
    }

    #[test]
    fn census_routes_agree_down_the_range() {
        for n in 3..=18 {
            for p in [3u64, 5, 7].into_iter().filter(|&p| p <= n) {
                assert_eq!(
                    count_p_prime(n, p, Side::Global).unwrap(),
                    count_p_prime(n, p, Side::Local).unwrap(),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn census_rejects_bad_parameters() {
        assert!(matches!(
            count_p_prime(4, 4, Side::Global),
            Err(Error::InvalidPrime(4))
        ));
        assert!(matches!(
            count_p_prime(3, 5, Side::Local),
            Err(Error::PrimeExceedsN { p: 5, n: 3 })
        ));
    }

    #[test]
    fn bijection_preserves_the_partition() {
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let label = phi(&lambda, 3).unwrap();
        assert_eq!(label.global_partition(), &lambda);
        let hook = Partition::new(vec![3, 1]).unwrap();
        assert!(matches!(phi(&hook, 3), Err(Error::NotPPrimeDegree(_))));
    }

    #[test]
    fn smallest_sigma_case_flags_the_square_root_twist() {
        let f = NavarroAut::sigma(3);
        let report = fixed_counts(3, 3, &f).unwrap();
        assert_eq!(report.global, SideCount { total: 3, fixed: 3 });
        assert_eq!(report.local, SideCount { total: 3, fixed: 3 });
        assert!(report.equal);
        // Both decomposition routes differ from the oracle-backed
        // value by the middle-entry twist, and both are informational.
        assert_eq!(report.defects.len(), 2);
        assert!(report.defects.iter().all(|d| !d.is_fatal()));
        let paths: Vec<&str> = report.defects.iter().map(|d| d.path.as_str()).collect();
        assert!(paths.contains(&"eps-global-structural(sqrt-p)"));
        assert!(paths.contains(&"eps-local-structural(sqrt-p)"));
    }

    #[test]
    fn smallest_kappa_case_is_defect_free() {
        let f = NavarroAut::kappa(3);
        let report = fixed_counts(3, 3, &f).unwrap();
        assert_eq!(report.global, SideCount { total: 3, fixed: 1 });
        assert_eq!(report.local, SideCount { total: 3, fixed: 1 });
        assert!(report.equal);
        assert!(report.defects.is_empty());
    }

    #[test]
    fn identity_fixes_every_label() {
        for n in [3u64, 6, 9, 12] {
            let report = fixed_counts(n, 3, &NavarroAut::id(3)).unwrap();
            assert_eq!(report.global.total, report.global.fixed, "n={n}");
            assert_eq!(report.local.total, report.local.fixed, "n={n}");
            assert!(report.equal);
        }
    }

    #[test]
    fn report_serialization_shape() {
        let report = fixed_counts(3, 3, &NavarroAut::id(3)).unwrap();
        let line = serde_json::to_string(&report).unwrap();
        assert!(line.starts_with("{\"n\":3,\"p\":3,\"sign_class\":\"id\""));
        let back: VerificationReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn scan_is_clean_and_parseable_at_small_scale() {
        let mut out = Vec::new();
        let options = ScanOptions {
            n_max: 8,
            primes: vec![3, 5, 7],
            budget_ms: None,
        };
        let summary = scan(&mut out, &options).unwrap();
        assert!(summary.is_clean());
        assert!(summary.informational_defects > 0);
        let text = String::from_utf8(out).unwrap();
        let mut lines = 0;
        for line in text.lines() {
            let report: VerificationReport = serde_json::from_str(line).unwrap();
            assert!(report.equal);
            lines += 1;
        }
        assert_eq!(lines, summary.reports);
        // n = 3..=8 at p = 3 gives six cases, n = 5..=8 at p = 5 four,
        // n = 7, 8 at p = 7 two; four sign classes each.
        assert_eq!(summary.reports, 48);
    }

    #[test]
    fn scan_budget_interrupts_with_partial_output() {
        let mut out = Vec::new();
        let options = ScanOptions {
            n_max: 20,
            primes: vec![3],
            budget_ms: Some(0),
        };
        assert!(matches!(
            scan(&mut out, &options),
            Err(Error::BudgetExceeded { limit_ms: 0, .. })
        ));
    }

    #[test]
    fn family_multiplicities_cover_the_census() {
        for n in 3..=16 {
            for p in [3u64, 5].into_iter().filter(|&p| p <= n) {
                let total: u64 = symmetric_families(n, p)
                    .unwrap()
                    .iter()
                    .map(|fam| fam.multiplicity)
                    .sum();
                let (_, symmetric, _) = count_p_prime(n, p, Side::Local).unwrap();
                assert_eq!(total, symmetric, "n={n} p={p}");
            }
        }
    }
}
