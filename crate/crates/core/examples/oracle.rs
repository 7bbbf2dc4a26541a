//! Brute-force counting over `n < 2^lambda`, compared with the exact `c_t`.

use cusick::exact::wire;
use cusick::oracle::{brute_v, stable_lambda};
use cusick::tails::cusick_t;

fn main() {
    let t: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(45);
    let exact = cusick_t(t);
    let top = stable_lambda(t);
    println!(
        "t = {t}, exact c_t = {}, stable from lambda = {top}",
        wire(&exact)
    );
    for lambda in 1..=top + 2 {
        let v = brute_v(t, lambda, 0).expect("lambda in range");
        let mark = if v == exact { "=" } else { " " };
        println!("  lambda {lambda:>2}: {} {mark}", wire(&v));
    }
}
