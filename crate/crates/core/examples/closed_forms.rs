//! Closed forms for extreme expansions and the rational bounds around them.

use cusick::exact::{to_f64, wire};
use cusick::special::{
    c_ones_over_zeros, c_tn_closed, c_tn_lower_bound_check, n2_difference_formula, problem_scan,
    t_n_blocks, tn_monotone_check, wallis_bound_check,
};
use cusick::tails::cusick;

fn main() {
    println!(
        "{:>3} {:>28} {:>10} {:>12}",
        "N", "c(t_N)", "~", "(1)^N(inf)^N"
    );
    for n in 1..=8 {
        let c = c_tn_closed(n);
        assert_eq!(c, cusick(&t_n_blocks(n).unwrap()));
        println!(
            "{n:>3} {:>28} {:>10.6} {:>12.6}",
            wire(&c),
            to_f64(&c),
            to_f64(&c_ones_over_zeros(n))
        );
    }
    println!(
        "lower bound holds for N <= 100: {}",
        (1..=100).all(c_tn_lower_bound_check)
    );
    println!("c(t_N) decreasing for N <= 40: {}", tn_monotone_check(40));
    println!(
        "central binomial bounds for n <= 100: {}",
        wallis_bound_check(100)
    );
    println!(
        "two-block difference (2, 3, 1): {}",
        wire(&n2_difference_formula(2, 3, 1))
    );
    let report = problem_scan(30);
    println!(
        "a_(N,q) positivity for N <= 30: {} ({} pairs)",
        report.holds(),
        report.checked
    );
}
