//! 2-graded representations of m(5_2) on F_q^2 and the unknot normalization.

use replab::gf::Field;
use replab::knotlib::builtin;
use replab::matrix::FqMatrix;
use replab::repcount::{self, GradedVS, RepProblem, TargetSpec};

fn main() {
    let m52 = builtin("m52").unwrap().dga;
    for q in [2, 3, 4, 5] {
        let problem = RepProblem::all_units(m52.clone(), Field::new(q).unwrap(), GradedVS::trivial(2), 2);
        let r = repcount::rep_report(&problem).unwrap();
        println!("m52 on F_{q}^2: {:>8} representations, Rep_2 = {}, reduced = {}", r.count, r.rep_number, r.reduced);
    }
    let unknot = builtin("unknot").unwrap().dga;
    for degrees in [vec![0], vec![0, 0], vec![0, 1]] {
        let n = degrees.len();
        let p = RepProblem::new(unknot.clone(), Field::new(3).unwrap(), GradedVS::new(degrees.clone()), FqMatrix::zeros(n, n), 0, vec![
            TargetSpec::AllUnits,
        ]);
        println!("unknot on degrees {degrees:?}: reduced = {}", repcount::reduced_rep_number(&p).unwrap());
    }
}
