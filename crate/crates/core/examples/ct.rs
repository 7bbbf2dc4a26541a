//! Cusick densities for a few integers and extended expansions.
//!
//! `cargo run --example ct -- 153 "inf,1,inf,2,inf,1,inf,inf"`

use cusick::exact::{to_f64, wire};
use cusick::expansion::{to_blocks, BlockExpansion};
use cusick::tails::{cusick, cusick_t};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let args = if args.is_empty() {
        vec!["1".into(), "3".into(), "153".into(), "inf,1,inf,inf".into()]
    } else {
        args
    };
    for arg in args {
        if let Ok(t) = arg.parse::<u64>() {
            let c = cusick_t(t);
            let blocks = if t % 2 == 1 {
                to_blocks(t).map(|b| b.to_string()).unwrap_or_default()
            } else {
                String::from("-")
            };
            println!(
                "t = {t:<10} blocks = {blocks:<24} c_t = {} ~ {:.6}",
                wire(&c),
                to_f64(&c)
            );
        } else {
            match arg.parse::<BlockExpansion>() {
                Ok(b) => {
                    let c = cusick(&b);
                    println!("t = {b} c_t = {} ~ {:.6}", wire(&c), to_f64(&c));
                }
                Err(e) => eprintln!("{arg}: {e}"),
            }
        }
    }
}
