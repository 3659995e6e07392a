use replab::verify;

fn main() {
    let mut failed = 0;
    for (id, _) in verify::CRITERIA {
        let r = verify::run(id).expect("known criterion");
        println!(
            "[{}] {:>2} {:<40} {:>8.2}s  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.seconds,
            r.detail
        );
        failed += usize::from(!r.passed);
    }
    println!("{} of {} criteria passed", verify::CRITERIA.len() - failed, verify::CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
