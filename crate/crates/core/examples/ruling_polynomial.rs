//! Recovers the ruling polynomial of the A_2 satellite of the trefoil from
//! augmentation numbers at several fields.

use replab::braid::BraidWord;
use replab::knotlib::builtin;
use replab::ruling;

fn main() {
    let qs: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let qs = if qs.is_empty() { vec![2, 3, 4, 5, 7] } else { qs };
    let trefoil = builtin("trefoil").unwrap().dga;
    let b = BraidWord::parse(2, "s1").unwrap();
    let mut values = Vec::new();
    for q in qs {
        let v = ruling::satellite_ruling_value(&trefoil, &b, &[0, 0], 0, q).unwrap();
        println!("q = {q}: Aug_0 = {v}");
        values.push((q, v));
    }
    match ruling::interpolate_ruling(&values, (-2, 6)) {
        Ok(p) => println!("R(z) = {p}"),
        Err(e) => println!("{e}"),
    }
    let unknot = builtin("unknot").unwrap().dga;
    let vals: Vec<_> = [2, 3].iter().map(|&q| (q, replab::repcount::aug_number(&unknot, 0, q).unwrap())).collect();
    println!("unknot: R(z) = {}", ruling::interpolate_ruling(&vals, (-1, 0)).unwrap());
}
