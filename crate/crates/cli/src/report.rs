//! Serializable reports and their text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use skewq_core::{Analysis, OrbitSummary, SweepReport, TripleSet};

fn triple_lists(t: &TripleSet) -> Vec<[usize; 3]> {
    t.iter().map(|tr| tr.elements()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedderburnJson {
    pub d: usize,
    pub c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub neg_pairs: Vec<[usize; 2]>,
    pub bad_triples: Vec<[usize; 3]>,
    pub components: Vec<Vec<usize>>,
    pub ell: usize,
    pub mu_neg_pairs: Vec<[usize; 2]>,
    pub wedderburn: WedderburnJson,
    pub category: String,
    pub oracle_certified: bool,
    #[serde(rename = "conjecture_expected_N")]
    pub conjecture_expected_n: usize,
    pub conjecture_match: bool,
    /// Why certification did not succeed, when it was attempted and failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_failure: Option<String>,
}

impl AnalysisReport {
    pub fn new(a: &Analysis) -> Self {
        let pairs = |v: Vec<(usize, usize)>| v.into_iter().map(|(i, j)| [i, j]).collect();
        Self {
            n: a.sign.n(),
            neg_pairs: pairs(a.sign.neg_pairs()),
            bad_triples: triple_lists(&a.bad),
            components: a.scheme.component_lists(),
            ell: a.ell,
            mu_neg_pairs: pairs(a.mu.neg_pairs()),
            wedderburn: WedderburnJson {
                d: a.wedderburn.block_size,
                c: a.wedderburn.block_count,
            },
            category: a.label.to_string(),
            oracle_certified: a.is_certified(),
            conjecture_expected_n: a.expected.copies,
            conjecture_match: a.conjecture_match(),
            oracle_failure: match &a.certification {
                Some(Err(e)) => Some(e.to_string()),
                _ => None,
            },
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let p = |v: &[[usize; 2]]| {
            v.iter()
                .map(|[i, j]| format!("({i},{j})"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "n                 {}", self.n);
        let _ = writeln!(s, "negative pairs    {}", p(&self.neg_pairs));
        let _ = writeln!(s, "bad triples       {}", self.bad_triples.len());
        let _ = writeln!(s, "point scheme      {}", render_components(&self.components));
        let _ = writeln!(s, "ell               {}", self.ell);
        let _ = writeln!(s, "mu negative       {}", p(&self.mu_neg_pairs));
        let _ = writeln!(s, "C(A)              {}", algebra(self.wedderburn.d, self.wedderburn.c));
        let _ = writeln!(s, "category          {}", self.category);
        let _ = writeln!(s, "oracle certified  {}", self.oracle_certified);
        if let Some(f) = &self.oracle_failure {
            let _ = writeln!(s, "oracle failure    {f}");
        }
        let _ = writeln!(
            s,
            "conjecture        expects N = {} ({})",
            self.conjecture_expected_n,
            if self.conjecture_match { "match" } else { "MISMATCH" }
        );
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramJson {
    pub ell: usize,
    #[serde(rename = "N")]
    pub copies: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub triples: Vec<[usize; 3]>,
    pub components: Vec<Vec<usize>>,
    pub ell: usize,
    pub d: usize,
    pub c: usize,
    #[serde(rename = "N")]
    pub copies: usize,
    #[serde(rename = "expected_N")]
    pub expected_n: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    pub oracle_certified: bool,
}

impl OrbitJson {
    pub fn new(o: &OrbitSummary) -> Self {
        Self {
            triples: triple_lists(&o.canonical),
            components: o.scheme.component_lists(),
            ell: o.ell,
            d: o.wedderburn.block_size,
            c: o.wedderburn.block_count,
            copies: o.label.copies,
            expected_n: o.expected.copies,
            size: o.size,
            tag: o.scheme_label.as_ref().map(ToString::to_string),
            oracle_certified: o.certified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub sampled: usize,
    pub certified: usize,
}

/// Sweep output. The first five keys are the fixed interchange schema; the
/// remaining ones are extras and always come after them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepJson {
    pub n: usize,
    pub histogram: Vec<HistogramJson>,
    pub verdict: String,
    pub counterexamples: Vec<Vec<[usize; 3]>>,
    pub orbits: Vec<OrbitJson>,
    pub total_configs: usize,
    pub converse_witnesses: Vec<Vec<[usize; 3]>>,
    pub oracle: OracleJson,
}

impl SweepJson {
    pub fn new(r: &SweepReport) -> Self {
        Self {
            n: r.n,
            histogram: r
                .histogram
                .iter()
                .map(|h| HistogramJson {
                    ell: h.ell,
                    copies: h.copies,
                    count: h.count,
                })
                .collect(),
            verdict: r.verdict.to_string(),
            counterexamples: r.counterexamples.iter().map(triple_lists).collect(),
            orbits: r.orbits.iter().map(OrbitJson::new).collect(),
            total_configs: r.total_configs,
            converse_witnesses: r.converse_witnesses.iter().map(triple_lists).collect(),
            oracle: OracleJson {
                sampled: r.sampled,
                certified: r.certified,
            },
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}, {} gauge-fixed sign patterns", self.n, self.total_configs);
        let _ = writeln!(
            s,
            "oracle certified {} of {} sampled",
            self.oracle.certified, self.oracle.sampled
        );
        let _ = writeln!(s);
        let _ = writeln!(s, "{:>5} {:>6} {:>8}", "ell", "N", "count");
        for h in &self.histogram {
            let _ = writeln!(s, "{:>5} {:>6} {:>8}", h.ell, h.copies, h.count);
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "verdict: {} ({} counterexamples)",
            self.verdict,
            self.counterexamples.len()
        );
        let _ = writeln!(s);
        s.push_str(&render_orbits(&self.orbits));
        if !self.converse_witnesses.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "same label as P^{}, different point scheme:", self.n - 1);
            for w in &self.converse_witnesses {
                let _ = writeln!(s, "  {}", render_triples(w));
            }
        }
        s
    }
}

fn render_triples(t: &[[usize; 3]]) -> String {
    if t.is_empty() {
        return "{}".to_owned();
    }
    t.iter()
        .map(|[a, b, c]| format!("{a}{b}{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn algebra(d: usize, c: usize) -> String {
    if c == 1 {
        format!("M_{d}(k)")
    } else {
        format!("M_{d}(k)^{c}")
    }
}

fn render_components(c: &[Vec<usize>]) -> String {
    c.iter()
        .map(|c| format!("P({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ∪ ")
}

/// One row per orbit.
pub fn render_orbits(orbits: &[OrbitJson]) -> String {
    let mut s = String::new();
    for (k, o) in orbits.iter().enumerate() {
        let algebra = algebra(o.d, o.c);
        let label = if o.copies == 1 {
            "Db(mod k)".to_owned()
        } else {
            format!("Db(mod k^{})", o.copies)
        };
        let _ = writeln!(
            s,
            "#{k:<3} {tag:<5} ell={ell:<3} {algebra:<11} {label:<14} size={size:<6} bad: {triples}",
            tag = o.tag.as_deref().unwrap_or("-"),
            ell = o.ell,
            size = o.size,
            triples = render_triples(&o.triples),
        );
        let _ = writeln!(s, "     E = {}", render_components(&o.components));
    }
    s
}
