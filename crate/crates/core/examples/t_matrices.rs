//! The four `T` matrices, their multiplication table, and the collapse of
//! long products to a single signed, scaled `T` matrix.

use cusick::components::{multiplication_table, t_product_check, t_reduce, TLabel};
use cusick::expansion::Word;

fn main() {
    println!("multiplication table (row * column):");
    for (row, label) in multiplication_table().iter().zip(TLabel::ALL) {
        let cells: Vec<String> = row.iter().map(|(s, l)| format!("{s:?}*{l:?}")).collect();
        println!("  {label:?}: {}", cells.join("  "));
    }

    let word = Word::from_symbols(&[1, 0, 0, 1, 1, 1, 0, 0]);
    let red = t_reduce(&word).expect("even length");
    println!(
        "tau = {word}: sign {}, (alpha + beta - 1)^{}, surviving {:?}",
        if red.sign == 0 { "+" } else { "-" },
        red.lambda,
        red.nu
    );

    for len in [2u32, 4, 6, 8, 10] {
        let ok = (0..1u64 << len).all(|b| t_product_check(&Word::new(b, len)).unwrap());
        println!("all {} words of length {len} collapse: {ok}", 1u64 << len);
    }
}
