//! Both sides of the satellite formula for a knot, a braid and a range of fields.
//!
//! Usage: `theorem_a [knot] [braid] [m] [q...]`, e.g. `theorem_a m52 s1 2 2 3`.

use std::time::Instant;

use replab::braid::BraidWord;
use replab::knotlib::builtin;
use replab::ruling::theorem_a_check;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let knot = builtin(args.first().map_or("trefoil", String::as_str)).unwrap().dga;
    let word = args.get(1).map_or("s1", String::as_str);
    let braid = if word == "id" { BraidWord::identity(2) } else { BraidWord::parse(2, word).unwrap() };
    let m: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0);
    let qs: Vec<u64> = args.iter().skip(3).filter_map(|a| a.parse().ok()).collect();
    let qs = if qs.is_empty() { vec![2, 3] } else { qs };
    for q in qs {
        let start = Instant::now();
        let r = theorem_a_check(&knot, &braid, &[0, 0], m, q).unwrap();
        println!(
            "{} {} m={m} q={q}: augmentations {} -> {} | representations {} -> {} | {} ({:.2?})",
            r.knot,
            if r.braid.is_empty() { "id" } else { &r.braid },
            r.aug_count,
            r.lhs,
            r.rep_count,
            r.rhs,
            if r.equal { "equal" } else { "DIFFERENT" },
            start.elapsed()
        );
    }
}
