//! The distribution of `s(n + t) - s(n)` for one `t`, with its tails.

use cusick::exact::{to_f64, wire};
use cusick::expansion::to_blocks;
use cusick::tails::{delta, mu, total_mass};

fn main() {
    let t: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(153);
    let blocks = to_blocks(t).expect("odd t");
    println!(
        "t = {t}, blocks {blocks}, total mass {}",
        wire(&total_mass(&blocks))
    );
    println!(
        "{:>4} {:>24} {:>10} {:>10}",
        "m", "mu_t(m)", "~", "Delta_t(m)"
    );
    for m in -8..=4 {
        let p = mu(&blocks, m);
        println!(
            "{m:>4} {:>24} {:>10.6} {:>10.6}",
            wire(&p),
            to_f64(&p),
            to_f64(&delta(&blocks, m))
        );
    }
}
