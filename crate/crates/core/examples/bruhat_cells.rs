//! Path subsets of permutation braids partition GL(n, q) into Bruhat cells.

use replab::braid::{self, BraidWord};
use replab::gf::Field;
use replab::pathsets;

fn main() {
    let f2 = Field::new(2).unwrap();
    let a2 = BraidWord::parse(2, "s1").unwrap();
    println!("path subset of s1 over F_2:");
    for a in pathsets::enumerate_path_subset(&f2, &a2, &[0, 0], 0).unwrap() {
        println!("  {}", a.format(&f2));
    }
    for (n, q) in [(2, 3), (3, 2), (3, 3)] {
        let report = pathsets::verify_bruhat_partition(&Field::new(q).unwrap(), n);
        let cells: Vec<String> = report.cells.iter().map(|(c, k)| format!("{c}:{k}")).collect();
        println!("GL({n},{q}) = {}: {}  partition ok: {}", report.gl_order, cells.join(" "), report.ok());
    }
    let f3 = Field::new(3).unwrap();
    let a = replab::matrix::FqMatrix::square(3, vec![0, 1, 2, 1, 1, 0, 2, 0, 0]);
    let br = pathsets::bruhat_reduce(&f3, &a).unwrap();
    println!("{} lies in the cell of {}", a.format(&f3), braid::cycle_string(&br.perm));
}
