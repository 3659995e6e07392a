//! The 2-colored HOMFLY-PT polynomial of m(5_2) at a^-1 = 0 against
//! representation counts, and the framing of the unknot data.

use replab::homfly::{self, HomflyData};
use replab::knotlib::builtin;

fn main() {
    let data = HomflyData::parse(homfly::M52_N2).unwrap();
    let m52 = builtin("m52").unwrap();
    let report = homfly::compare_with_rep(&data.poly, &m52.dga, 2, &[2, 3, 4, 5]).unwrap();
    println!("P_2(m52)|a^-1=0 = {}", report.specialization);
    for r in &report.rows {
        println!("  q = {}: {} vs Rep_2 = {} ({})", r.q, r.homfly, r.rep, if r.equal { "equal" } else { "different" });
    }
    println!("deg_a P = {}", data.poly.deg_a().unwrap());

    let unknot = builtin("unknot").unwrap();
    let framed = HomflyData::parse(homfly::UNKNOT_FRAMED0).unwrap();
    println!("0-framed unknot: {}", framed.poly);
    let leg = framed.legendrian(unknot.meta.tb).unwrap();
    println!("tb = -1 framing: {}  ->  {}", leg, homfly::specialize_a_inv_zero(&leg).unwrap());
    let bounds = homfly::check_degree_bounds(&leg, &unknot.meta, 1, Some(&unknot.dga));
    println!("bounds: {}", serde_json::to_string(&bounds).unwrap());
}
