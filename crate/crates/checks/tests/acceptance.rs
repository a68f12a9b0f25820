use ficat_checks::{run_criterion, Profile};

fn main() {
    let seed = std::env::var("FICAT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut failed = 0;
    for id in 1..=10 {
        let r = run_criterion(id, Profile::Full, seed);
        println!(
            "criterion {:>2} [{}] {} ({:.1}s): {}",
            r.criterion,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.elapsed.as_secs_f64(),
            r.detail
        );
        failed += (!r.passed) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
