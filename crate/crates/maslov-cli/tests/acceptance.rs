//! The ten acceptance criteria, run in order with their time limits.
//! One line per criterion goes straight to stdout so it survives the test
//! harness's output capture.

use std::io::Write;
use std::time::Duration;

use maslov_cli::suite::{self, SuiteConfig};

/// Wall-clock limits, pinned here independently of the suite's own table.
const LIMITS: [(u8, Duration); 10] = [
    (1, Duration::from_secs(1)),
    (2, Duration::from_secs(60)),
    (3, Duration::from_secs(60)),
    (4, Duration::from_secs(300)),
    (5, Duration::from_secs(60)),
    (6, Duration::from_secs(300)),
    (7, Duration::from_secs(60)),
    (8, Duration::from_secs(120)),
    (9, Duration::from_secs(60)),
    (10, Duration::from_secs(60)),
];

const SEED: u64 = 0;
const PALEY_PRIME: u64 = 67;

#[test]
fn acceptance() {
    let cfg = SuiteConfig { seed: SEED, paley_prime: PALEY_PRIME };
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (id, limit) in LIMITS {
        let c = suite::criterion(id).expect("criterion exists");
        assert_eq!(c.limit, limit, "suite limit for criterion {id} drifted");
        let o = c.run(&cfg);
        let ok = o.passed && o.elapsed <= limit;
        writeln!(
            out,
            "acceptance {id:>2} {:<26} {} ({:.2}s of {}s) {}",
            o.name,
            if ok { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            limit.as_secs(),
            o.detail
        )
        .unwrap();
        if !ok {
            failed.push(id);
        }
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn corrupted_paley_prime_fails_only_its_row() {
    let cfg = SuiteConfig { seed: SEED, paley_prime: 63 };
    let rows = suite::run(&cfg, &[1, 3, 7]);
    let verdicts: Vec<(u8, bool)> = rows.iter().map(|o| (o.id, o.passed)).collect();
    assert_eq!(verdicts, vec![(1, true), (3, false), (7, true)]);
    assert!(rows[1].detail.contains("63"), "{}", rows[1].detail);
}
