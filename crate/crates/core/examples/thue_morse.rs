//! Correlations of the Thue–Morse sequence and the table of `gamma_t(pi)`.

use cusick::exact::wire;
use cusick::special::{sign_change_density, tm_gamma, tm_gamma_via_transfer, tm_table};

fn main() {
    for t in [1u64, 3, 19, 723, 813] {
        let g = tm_gamma(t);
        assert_eq!(g, tm_gamma_via_transfer(t));
        println!("gamma_{t}(pi) = {}", wire(&g));
    }
    println!(
        "sign change density at 19: {}",
        wire(&sign_change_density(19))
    );

    let table = tm_table(6).expect("rows");
    for (i, row) in table.rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(wire).collect();
        println!("row {}: {}", i + 1, cells.join(" "));
    }
}
