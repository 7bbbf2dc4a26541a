//! Splits `gamma_t` into the components `C_{N,n}` and prints their
//! coefficients as trigonometric polynomials.

use cusick::components::{component_real_parts, decompose};
use cusick::exact::wire;
use cusick::expansion::to_blocks;
use cusick::transfer::gamma_ratfun;

fn main() {
    let t: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(153);
    let blocks = to_blocks(t).expect("odd t");
    let set = decompose(&blocks).expect("decomposition");
    println!("t = {t}, N = {}", set.n_pairs);
    for (n, f) in set.fourier_parts.iter().enumerate() {
        let terms: Vec<String> = f.terms().map(|(j, c)| format!("{j}:{}", wire(c))).collect();
        println!("  C_{},{n} = {{{}}}", set.n_pairs, terms.join(", "));
    }
    println!(
        "sum matches gamma_t: {}",
        set.sum() == gamma_ratfun(&blocks)
    );

    let thetas = [0.0, 0.5, 1.0, 2.0, std::f64::consts::PI];
    for (n, row) in component_real_parts(&set, &thetas).iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:+.4}")).collect();
        println!("  Re C_{n}(theta) at {thetas:?}: {}", cells.join(" "));
    }
}
