//! Path matrices of a non-reduced and a reduced word for the permutation (1 3 4).

use replab::braid::{self, BraidWord};

fn show(word: &str, mu: &[i64]) {
    let b = BraidWord::parse(4, word).unwrap();
    let (dga, labels) = braid::standalone_labels(&b, mu);
    let p = braid::path_matrix_xz(&b, mu, &labels).unwrap();
    let perm = braid::permutation_of(&b);
    println!("{b}: permutation {}, reduced {}", braid::cycle_string(&perm), braid::is_reduced(&b));
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:>12}", dga.format_poly(p.get(i, j)))).collect();
        println!("  {}", row.join(""));
    }
    if braid::is_reduced(&b) {
        println!("  Kalman form: {}", braid::kalman_form_check(&p, &perm, &labels));
        let q = braid::path_matrix_xz_inverse(&b, mu, &labels).unwrap();
        println!("  P Q = I: {}", p.mul(&q) == replab::ncdga::NcMatrix::identity(4));
    }
}

fn main() {
    let mu = [0, 1, 1, 0];
    show("s1 s2 s1 s3", &mu);
    show("s2 s1 s2 s3", &mu);
    println!("reduced word for (1 3 4): {}", braid::reduced_word(&[3, 2, 4, 1]).unwrap());
}
