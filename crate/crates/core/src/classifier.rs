//! Stable-category labels and exhaustive sweeps over sign patterns.
//!
//! The graded singularity category of `A = S/(f)` is `D^b(mod C(A))`, and
//! `C(A) ≅ M_d(k)^c` is Morita equivalent to `k^c`, so the label recorded for
//! each algebra is the number of copies `N = c`.
//!
//! Sweeps run over gauge-fixed patterns: one sign matrix per two-graph, with
//! `ε_in = +1`, i.e. over the `2^{C(n−1,2)}` choices of `μ`. Every sign matrix
//! has the same bad triples (hence the same point scheme and the same `C(A)`)
//! as exactly one of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::clifford::{
    anticommutation_form, explicit_representation, mu_matrix, wedderburn_type, CommutationMatrix, WedderburnType,
};
use crate::error::{Error, Result};
use crate::oracle::{certify_wedderburn, structure_constants, Certificate, CertificationError, MAX_ORACLE_GENERATORS};
use crate::point_scheme::{count_p1, is_unrealized_n4_type, point_scheme, scheme_label, PointScheme, SchemeLabel};
use crate::sign::{
    apply_permutation, bad_triples, binom2, canonical_form, realize_sign_matrix, Permutation, SignMatrix, TripleSet,
    MAX_CANONICAL_N,
};

/// Default upper bound on `n` for conjecture sweeps.
pub const DEFAULT_MAX_SWEEP_N: usize = 7;
/// Upper bound on `n` for the orbit catalogue.
pub const MAX_CATALOG_N: usize = 6;

/// `D^b(mod k^N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CategoryLabel {
    pub copies: usize,
}

impl fmt::Display for CategoryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copies == 1 {
            write!(f, "Db(mod k)")
        } else {
            write!(f, "Db(mod k^{})", self.copies)
        }
    }
}

fn binom2_or_neg_inf(a: i64) -> Option<i64> {
    (a >= 0).then(|| a * (a - 1) / 2)
}

/// The label the conjecture predicts from `ℓ`.
///
/// Odd `n`: `C(2m−1,2) < ℓ ≤ C(2m+1,2)` gives `N = 2^{2m}`. Even `n`:
/// `C(2m,2) < ℓ ≤ C(2m+2,2)` gives `N = 2^{2m+1}`. The lower bound of the
/// `m = 0` interval is `−∞` in both cases.
pub fn expected_from_ell(n: usize, ell: usize) -> Result<CategoryLabel> {
    let max = binom2(n);
    if n == 0 || ell > max {
        return Err(Error::EllOutOfRange { n, ell, max });
    }
    let ell = ell as i64;
    let odd = n % 2 == 1;
    for m in 0..=(n as i64) {
        let (lo, hi) = if odd {
            (binom2_or_neg_inf(2 * m - 1), 2 * m + 1)
        } else {
            (if m == 0 { None } else { binom2_or_neg_inf(2 * m) }, 2 * m + 2)
        };
        let hi = hi * (hi - 1) / 2;
        if lo.is_none_or(|lo| lo < ell) && ell <= hi {
            let exp = if odd { 2 * m } else { 2 * m + 1 };
            return Ok(CategoryLabel { copies: 1 << exp });
        }
    }
    Err(Error::EllOutOfRange {
        n,
        ell: ell as usize,
        max,
    })
}

/// `N` from the Wedderburn type of `C(A)`.
pub fn stable_category(s: &SignMatrix) -> CategoryLabel {
    CategoryLabel {
        copies: wedderburn_type(&anticommutation_form(&mu_matrix(s))).block_count,
    }
}

/// Everything computed for a single algebra.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub sign: SignMatrix,
    pub bad: TripleSet,
    pub scheme: PointScheme,
    pub ell: usize,
    pub mu: CommutationMatrix,
    pub wedderburn: WedderburnType,
    pub label: CategoryLabel,
    pub expected: CategoryLabel,
    /// `None` when certification was skipped or `m` exceeds the oracle cap.
    pub certification: Option<std::result::Result<Certificate, CertificationError>>,
}

impl Analysis {
    pub fn conjecture_match(&self) -> bool {
        self.label == self.expected
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.certification, Some(Ok(_)))
    }
}

/// Certifies `C(A)` for a given `μ` against the brute-force oracle.
pub fn certify(mu: &CommutationMatrix) -> std::result::Result<Certificate, CertificationError> {
    let w = wedderburn_type(&anticommutation_form(mu));
    certify_wedderburn(&structure_constants(mu), &w, &explicit_representation(mu))
}

/// Full pipeline for one sign matrix.
pub fn analyze(s: &SignMatrix, run_oracle: bool) -> Result<Analysis> {
    let bad = bad_triples(s);
    let scheme = point_scheme(&bad)?;
    let ell = count_p1(&scheme);
    let mu = mu_matrix(s);
    let wedderburn = wedderburn_type(&anticommutation_form(&mu));
    let label = CategoryLabel {
        copies: wedderburn.block_count,
    };
    let expected = expected_from_ell(s.n(), ell)?;
    let certification = (run_oracle && mu.m() <= MAX_ORACLE_GENERATORS).then(|| certify(&mu));
    Ok(Analysis {
        sign: s.clone(),
        bad,
        scheme,
        ell,
        mu,
        wedderburn,
        label,
        expected,
        certification,
    })
}

/// Sweep configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Percentage of patterns certified by the oracle when `n ≥ 6`
    /// (every pattern is certified for `n ≤ 5`).
    pub sample_certify_percent: u32,
    /// Guard on `n`.
    pub max_n: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            jobs: None,
            sample_certify_percent: 1,
            max_n: DEFAULT_MAX_SWEEP_N,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HistogramEntry {
    pub ell: usize,
    pub copies: usize,
    pub count: usize,
}

/// One permutation orbit of two-graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    pub canonical: TripleSet,
    pub scheme: PointScheme,
    pub ell: usize,
    pub wedderburn: WedderburnType,
    pub label: CategoryLabel,
    pub expected: CategoryLabel,
    /// Catalogue tag for `n ∈ {4, 5}`.
    pub scheme_label: Option<SchemeLabel>,
    /// Number of gauge-fixed patterns in the orbit.
    pub size: usize,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Counterexamples,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Counterexamples => write!(f, "counterexamples"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    /// Number of gauge-fixed patterns, `2^{C(n−1,2)}`.
    pub total_configs: usize,
    /// Sorted by `(ℓ, N)`.
    pub histogram: Vec<HistogramEntry>,
    /// Sorted by `N`, then `ℓ`, then canonical triple set.
    pub orbits: Vec<OrbitSummary>,
    pub verdict: Verdict,
    /// Every pattern whose label differs from the conjectured one, sorted.
    pub counterexamples: Vec<TripleSet>,
    /// Orbit representatives with the same label as `P^{n−1}` but `E ≠ P^{n−1}`.
    pub converse_witnesses: Vec<TripleSet>,
    pub sampled: usize,
    pub certified: usize,
}

impl SweepReport {
    pub fn count(&self, ell: usize, copies: usize) -> usize {
        self.histogram
            .iter()
            .find(|h| h.ell == ell && h.copies == copies)
            .map_or(0, |h| h.count)
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Guard(#[from] Error),
    #[error("certification failed for {triples:?}: {error}")]
    Uncertified {
        triples: TripleSet,
        error: CertificationError,
    },
    #[error("{statement} fails for {triples:?}")]
    TheoremViolated {
        statement: &'static str,
        triples: TripleSet,
    },
    #[error("{0}")]
    ThreadPool(String),
}

/// Per-pattern sweep record.
#[derive(Clone, Debug)]
struct PatternResult {
    triples: TripleSet,
    scheme: PointScheme,
    ell: usize,
    label: CategoryLabel,
    expected: CategoryLabel,
    scheme_label: Option<SchemeLabel>,
    sampled: bool,
}

fn is_sampled(n: usize, index: u64, percent: u32) -> bool {
    if n <= 5 {
        return true;
    }
    // evenly spread; picks ceil(total * p / 100) of the first `total` indices
    let p = percent.min(100) as u64;
    index * p % 100 < p
}

fn evaluate(n: usize, mask: u64, percent: u32) -> std::result::Result<PatternResult, SweepError> {
    let triples = TripleSet::from_gauge_mask(n, mask);
    let sign = realize_sign_matrix(&triples)?;
    let sampled = is_sampled(n, mask, percent);
    let a = analyze(&sign, sampled)?;
    if let Some(Err(error)) = a.certification {
        return Err(SweepError::Uncertified { triples, error });
    }
    let scheme_label = matches!(n, 4 | 5).then(|| scheme_label(&a.scheme));
    Ok(PatternResult {
        triples: a.bad,
        scheme: a.scheme,
        ell: a.ell,
        label: a.label,
        expected: a.expected,
        scheme_label,
        sampled: a.certification.is_some(),
    })
}

fn pattern_count(n: usize) -> u64 {
    1u64 << binom2(n.saturating_sub(1))
}

/// Partition of the gauge-fixed patterns into `S_n`-orbits, each as its
/// sorted member masks; orbits are ordered by their smallest mask.
pub fn pattern_orbits(n: usize) -> Vec<Vec<u64>> {
    let total = pattern_count(n);
    let mut seen = vec![false; total as usize];
    let generators: Vec<Permutation> = if n >= 2 {
        vec![
            Permutation::transposition(n, 1, 2).expect("n >= 2"),
            Permutation::rotation(n),
        ]
    } else {
        Vec::new()
    };
    let mut orbits = Vec::new();
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut members = vec![start];
        let mut frontier = vec![start];
        while let Some(mask) = frontier.pop() {
            let t = TripleSet::from_gauge_mask(n, mask);
            for g in &generators {
                let image = apply_permutation(&t, g).expect("same n").gauge_mask();
                if !seen[image as usize] {
                    seen[image as usize] = true;
                    members.push(image);
                    frontier.push(image);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

fn summarize_orbit(n: usize, members: &[u64]) -> Result<OrbitSummary> {
    let t = TripleSet::from_gauge_mask(n, members[0]);
    let canonical = canonical_form(&t)?;
    let a = analyze(&realize_sign_matrix(&canonical)?, true)?;
    Ok(OrbitSummary {
        scheme_label: matches!(n, 4 | 5).then(|| scheme_label(&a.scheme)),
        certified: a.is_certified(),
        canonical,
        scheme: a.scheme,
        ell: a.ell,
        wedderburn: a.wedderburn,
        label: a.label,
        expected: a.expected,
        size: members.len(),
    })
}

fn orbit_order(a: &OrbitSummary, b: &OrbitSummary) -> std::cmp::Ordering {
    (a.label, a.ell, &a.canonical).cmp(&(b.label, b.ell, &b.canonical))
}

/// One row per two-graph orbit for `n ≤ 6`, in the order of [`SweepReport::orbits`].
pub fn catalog(n: usize) -> Result<Vec<OrbitSummary>> {
    if n == 0 {
        return Err(Error::EmptyAlgebra);
    }
    if n > MAX_CATALOG_N {
        return Err(Error::TooLarge {
            what: "orbit catalogue",
            n,
            limit: MAX_CATALOG_N,
        });
    }
    let mut rows = pattern_orbits(n)
        .iter()
        .map(|members| summarize_orbit(n, members))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(orbit_order);
    Ok(rows)
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> std::result::Result<T, SweepError> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| SweepError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn sweep_patterns(n: usize, opts: &SweepOptions) -> std::result::Result<Vec<PatternResult>, SweepError> {
    let total = pattern_count(n);
    let percent = opts.sample_certify_percent;
    run_in_pool(opts.jobs, || {
        (0..total)
            .into_par_iter()
            .map(|mask| evaluate(n, mask, percent))
            .collect::<std::result::Result<Vec<_>, _>>()
    })?
}

fn check_guard(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyAlgebra);
    }
    if n > max_n {
        return Err(Error::TooLarge {
            what: "conjecture sweep",
            n,
            limit: max_n,
        });
    }
    Ok(())
}

/// Checks the conjectured `ℓ ↦ N` rule on every gauge-fixed pattern.
///
/// Counterexamples are reported, not treated as errors. Proven statements
/// (the endpoints `E = P^{n−1}` and `E = ⋃ P(i,j)`) and oracle disagreements
/// abort the sweep.
pub fn verify_conjecture(n: usize, opts: &SweepOptions) -> std::result::Result<SweepReport, SweepError> {
    check_guard(n, opts.max_n)?;
    let results = sweep_patterns(n, opts)?;

    let whole_space_label = if n % 2 == 1 { 1 } else { 2 };
    let all_lines_label = 1usize << (n - 1);
    let mut histogram: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for r in &results {
        *histogram.entry((r.ell, r.label.copies)).or_default() += 1;
        if r.label != r.expected {
            counterexamples.push(r.triples.clone());
        }
        if r.scheme.is_whole_space() && r.label.copies != whole_space_label {
            return Err(SweepError::TheoremViolated {
                statement: "E = P^{n-1} => N = 1 (n odd) or 2 (n even)",
                triples: r.triples.clone(),
            });
        }
        if n >= 2 && r.scheme.is_all_lines() != (r.label.copies == all_lines_label) {
            return Err(SweepError::TheoremViolated {
                statement: "E = union of all P(i,j) <=> N = 2^{n-1}",
                triples: r.triples.clone(),
            });
        }
    }
    counterexamples.sort();

    let orbits = if n <= MAX_CANONICAL_N {
        let mut rows = pattern_orbits(n)
            .iter()
            .map(|members| summarize_orbit(n, members))
            .collect::<Result<Vec<_>>>()?;
        rows.sort_by(orbit_order);
        rows
    } else {
        Vec::new()
    };
    let converse_witnesses = orbits
        .iter()
        .filter(|o| o.label.copies == whole_space_label && !o.scheme.is_whole_space())
        .map(|o| o.canonical.clone())
        .collect();

    let sampled = results.iter().filter(|r| r.sampled).count();
    Ok(SweepReport {
        n,
        total_configs: results.len(),
        histogram: histogram
            .into_iter()
            .map(|((ell, copies), count)| HistogramEntry { ell, copies, count })
            .collect(),
        orbits,
        verdict: if counterexamples.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Counterexamples
        },
        counterexamples,
        converse_witnesses,
        sampled,
        // evaluation aborts on any failed certificate
        certified: sampled,
    })
}

fn violated(statement: &'static str, triples: &TripleSet) -> SweepError {
    SweepError::TheoremViolated {
        statement,
        triples: triples.clone(),
    }
}

/// Re-derives the classification for `n ∈ {3, 4, 5}` by exhaustive sweep,
/// with every pattern oracle-certified. Any failed biconditional aborts.
pub fn verify_theorems(n: usize) -> std::result::Result<SweepReport, SweepError> {
    if !(3..=5).contains(&n) {
        return Err(Error::TooLarge {
            what: "theorem verification (n in 3..=5)",
            n,
            limit: 5,
        }
        .into());
    }
    let opts = SweepOptions::default();
    let report = verify_conjecture(n, &opts)?;
    let results = sweep_patterns(n, &opts)?;

    if let Some(t) = report.counterexamples.first() {
        return Err(violated("ell determines N (n <= 5)", t));
    }

    // every sign matrix is covered by the gauge-fixed patterns
    let patterns: BTreeMap<u64, CategoryLabel> = results.iter().map(|r| (r.triples.gauge_mask(), r.label)).collect();
    for raw in 0..(1u64 << binom2(n)) {
        let s = SignMatrix::from_mask(n, raw)?;
        let bad = bad_triples(&s);
        let mask = bad.gauge_mask();
        if TripleSet::from_gauge_mask(n, mask) != bad {
            return Err(violated("bad triples form a two-graph", &bad));
        }
        if patterns.get(&mask) != Some(&stable_category(&s)) {
            return Err(violated("C(A) depends only on the bad triples", &bad));
        }
    }

    for r in &results {
        let tag = match &r.scheme_label {
            Some(SchemeLabel::Named(tag)) => Some(*tag),
            _ => None,
        };
        let copies = r.label.copies;
        let ok = match n {
            3 => (r.scheme.is_whole_space() == (copies == 1)) && (r.scheme.is_all_lines() == (copies == 4)),
            4 => {
                matches!(tag, Some("4a" | "4b" | "4c"))
                    && (matches!(tag, Some("4a" | "4b")) == (copies == 2))
                    && ((tag == Some("4c")) == (copies == 8))
                    && !is_unrealized_n4_type(&r.scheme)
            }
            _ => {
                tag.is_some()
                    && (matches!(tag, Some("5a" | "5c" | "5d")) == (copies == 1))
                    && (matches!(tag, Some("5b" | "5e" | "5f")) == (copies == 4))
                    && ((tag == Some("5g")) == (copies == 16))
            }
        };
        if !ok {
            return Err(violated("point scheme classification <=> stable category", &r.triples));
        }
    }

    let expected_orbits = match n {
        3 => 2,
        4 => 3,
        _ => 7,
    };
    let tags: BTreeSet<_> = report.orbits.iter().filter_map(|o| o.scheme_label.clone()).collect();
    if report.orbits.len() != expected_orbits || (n >= 4 && tags.len() != expected_orbits) {
        return Err(violated(
            "number of permutation classes",
            &report
                .orbits
                .first()
                .map_or_else(|| TripleSet::empty(n), |o| o.canonical.clone()),
        ));
    }
    Ok(report)
}
