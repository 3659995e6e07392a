//! Augmentation numbers of the `A_2` satellite of the trefoil for several fields.

use std::time::Instant;

use replab::braid::BraidWord;
use replab::gf::Field;
use replab::knotlib::builtin;
use replab::repcount::{aug_from_count, count_reps, explain, RepProblem};
use replab::satellite::build_satellite;

fn main() {
    let qs: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let qs = if qs.is_empty() { vec![2, 3, 4, 5] } else { qs };
    let trefoil = builtin("trefoil").unwrap().dga;
    let sat = build_satellite(&trefoil, &BraidWord::parse(2, "s1").unwrap(), &[0, 0]).unwrap();
    for q in qs {
        let mut problem = RepProblem::augmentations(sat.dga.clone(), Field::new(q).unwrap(), 0);
        problem.families = sat.families();
        if q == 2 {
            let (cost, steps) = explain(&problem).unwrap();
            println!("plan (about q^{cost:.1} nodes):");
            for s in steps {
                println!("  {} {}", s.kind, s.vars.join(" "));
            }
        }
        let start = Instant::now();
        let count = count_reps(&problem).unwrap();
        let value = aug_from_count(&sat.dga, 0, q, count);
        println!("q = {q:>2}: {count:>12} augmentations, Aug_0 = {value}  ({:.2?})", start.elapsed());
    }
}
