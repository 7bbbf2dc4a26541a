//! The base tails `B_m(a)`, the array whose diagonal they form, and the
//! explicit reduction of `c_t` to them.

use cusick::exact::wire;
use cusick::expansion::to_blocks;
use cusick::special::{oeis_diagonal_check, OeisArray};
use cusick::tails::{cusick_t, cusick_via_corollary, frak_b};

fn main() {
    for m in 1..=4 {
        let row: Vec<String> = (-3..=3).map(|a| wire(&frak_b(m, a))).collect();
        println!("B_{m}(-3..=3): {}", row.join(" "));
    }

    let array = OeisArray::new(5, 5);
    for (k, row) in array.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(wire).collect();
        println!("A_{k}: {}", cells.join(" "));
    }
    println!(
        "diagonal agrees up to m = 10: {}",
        oeis_diagonal_check(10).agrees()
    );

    for t in [3u64, 11, 153, 2047] {
        let via = cusick_via_corollary(&to_blocks(t).unwrap()).unwrap();
        println!(
            "t = {t}: reduction {} direct {}",
            wire(&via),
            wire(&cusick_t(t))
        );
    }
}
