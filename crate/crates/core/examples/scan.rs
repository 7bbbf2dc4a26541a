//! Runs the conjecture scans over a small range, writing CSV output to a
//! temporary directory.

use cusick::harness::{read_csv, run_scan, ScanKind, ScanOptions};

fn main() {
    let t_max: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1023);
    let dir = std::env::temp_dir().join("cusick-scan-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    for kind in ScanKind::ALL {
        let out = dir.join(format!("{}.csv", kind.name()));
        let opts = ScanOptions {
            out: Some(out.clone()),
            ..ScanOptions::default()
        };
        let report = run_scan(kind, t_max, &opts).expect("scan");
        let rows = read_csv(&out).expect("csv").len();
        println!("{report}");
        println!("  {rows} rows in {}", out.display());
    }
}
