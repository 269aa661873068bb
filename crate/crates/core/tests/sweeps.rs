//! Full sweeps against histograms produced by an independent brute-force
//! script (bad triples, transversals and an `F₂` rank computed from scratch).

use skewq_core::classifier::{pattern_orbits, SweepOptions};
use skewq_core::{verify_conjecture, verify_theorems, HistogramEntry, Verdict};

/// `(ℓ, N, count)`.
type Bucket = (usize, usize, usize);

fn histogram(entries: &[Bucket]) -> Vec<HistogramEntry> {
    entries
        .iter()
        .map(|&(ell, copies, count)| HistogramEntry { ell, copies, count })
        .collect()
}

#[test]
fn small_sweeps_match_reference() {
    let cases: &[(usize, &[Bucket])] = &[
        (2, &[(1, 2, 1)]),
        (3, &[(0, 1, 1), (3, 4, 1)]),
        (4, &[(0, 2, 1), (1, 2, 6), (6, 8, 1)]),
        (5, &[(0, 1, 28), (1, 4, 10), (2, 4, 15), (3, 4, 10), (10, 16, 1)]),
        (
            6,
            &[
                (0, 2, 448),
                (1, 2, 420),
                (2, 8, 45),
                (3, 8, 35),
                (4, 8, 60),
                (6, 8, 15),
                (15, 32, 1),
            ],
        ),
    ];
    for &(n, expected) in cases {
        let r = verify_conjecture(n, &SweepOptions::default()).unwrap();
        assert_eq!(r.histogram, histogram(expected), "n = {n}");
        assert_eq!(r.verdict, Verdict::Holds, "n = {n}");
        assert_eq!(r.histogram.iter().map(|h| h.count).sum::<usize>(), r.total_configs);
    }
}

#[test]
fn seven_variables() {
    let r = verify_conjecture(7, &SweepOptions::default()).unwrap();
    let expected = histogram(&[
        (0, 1, 13888),
        (0, 4, 4900),
        (1, 4, 9408),
        (2, 4, 2940),
        (3, 4, 980),
        (3, 16, 105),
        (4, 16, 210),
        (5, 16, 105),
        (6, 16, 105),
        (7, 16, 105),
        (10, 16, 21),
        (21, 64, 1),
    ]);
    assert_eq!(r.total_configs, 1 << 15);
    assert_eq!(r.histogram, expected);
    assert_eq!(r.verdict, Verdict::Counterexamples);
    assert_eq!(r.counterexamples.len(), 4900 + 105);
    assert_eq!(r.orbits.len(), 54);
    assert_eq!(r.orbits.iter().map(|o| o.size).sum::<usize>(), 1 << 15);
    assert!(r.sampled >= (1 << 15) / 100);
}

#[test]
fn orbit_counts_match_two_graph_enumeration() {
    let counts: Vec<usize> = (3..=7).map(|n| pattern_orbits(n).len()).collect();
    assert_eq!(counts, vec![2, 3, 7, 16, 54]);
}

#[test]
fn theorem_sweeps() {
    for n in 3..=5 {
        let r = verify_theorems(n).unwrap();
        assert_eq!(r.sampled, r.total_configs);
        assert_eq!(r.certified, r.total_configs);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let one = SweepOptions {
        jobs: Some(1),
        ..SweepOptions::default()
    };
    let four = SweepOptions {
        jobs: Some(4),
        ..SweepOptions::default()
    };
    assert_eq!(
        verify_conjecture(6, &one).unwrap(),
        verify_conjecture(6, &four).unwrap()
    );
}

#[test]
fn converse_witnesses_at_five() {
    let r = verify_conjecture(5, &SweepOptions::default()).unwrap();
    assert_eq!(r.converse_witnesses.len(), 2);
    for w in &r.converse_witnesses {
        let o = r.orbits.iter().find(|o| &o.canonical == w).unwrap();
        assert_eq!(o.label.copies, 1);
        assert!(!o.scheme.is_whole_space());
    }
}
