//! Colored ruling polynomial values by the satellite sum and by counting
//! representations on `F_q^n`.
//!
//! Usage: `colored_ruling [knot] [n] [m] [q...]`.

use std::time::Instant;

use replab::knotlib::builtin;
use replab::ruling::{colored_ruling, Route};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let knot = builtin(args.first().map_or("m52", String::as_str)).unwrap().dga;
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let m: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let qs: Vec<u64> = args.iter().skip(3).filter_map(|a| a.parse().ok()).collect();
    let qs = if qs.is_empty() { vec![2, 3] } else { qs };
    for q in qs {
        let start = Instant::now();
        let v = colored_ruling(&knot, n, m, q, Route::Both).unwrap();
        for t in &v.breakdown {
            println!("  beta = {:<12} l = {} Aug = {}", if t.braid.is_empty() { "id" } else { &t.braid }, t.length, t.aug);
        }
        println!(
            "n={n} m={m} q={q}: satellite {} | representation {} | {} ({:.2?})",
            v.satellite.as_ref().unwrap(),
            v.representation.as_ref().unwrap(),
            if v.routes_agree() == Some(true) { "agree" } else { "DISAGREE" },
            start.elapsed()
        );
    }
}
