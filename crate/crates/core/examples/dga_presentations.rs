//! Built-in presentations, the text format, stabilization and basepoint splitting.

use replab::knotlib::{self, builtin, BUILTIN_NAMES};

fn main() {
    for name in BUILTIN_NAMES {
        let rec = builtin(name).unwrap();
        println!("{}", knotlib::serialize(&rec));
        println!("# degrees {:?}, d^2 = 0: {}\n", rec.dga.degree_distribution(), rec.dga.check().ok());
    }
    let unknot = builtin("unknot").unwrap().dga;
    let t = unknot.invertibles()[0];
    let moved = unknot.stabilize(3).split_basepoint(t, 2).unwrap();
    for g in moved.chords() {
        println!("d {} = {}", moved.name_of(g), moved.format_poly(&moved.differential[g as usize]));
    }
}
