//! Multiplication tables and multiplicative orders in small fields.

use replab::gf::Field;

fn main() {
    for q in [4u64, 9] {
        let f = Field::new(q).unwrap();
        println!("F_{q}: characteristic {}, modulus {:?}", f.characteristic(), f.modulus());
        for a in f.elements() {
            let row: Vec<String> = f.elements().map(|b| format!("{:>5}", f.format(f.mul(a, b)))).collect();
            println!("  {:>5} |{}", f.format(a), row.join(""));
        }
        let orders: Vec<String> = f.units().map(|a| format!("{}:{}", f.format(a), f.multiplicative_order(a).unwrap())).collect();
        println!("  orders {}", orders.join(" "));
    }
}
