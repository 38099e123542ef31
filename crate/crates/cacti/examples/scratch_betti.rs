use cacti::ops::check_operad_axioms;
fn main() {
    let t0 = std::time::Instant::now();
    let report = check_operad_axioms(5).unwrap();
    println!("budget 5: {} checks, {} violations in {:?}", report.checked, report.violations.len(), t0.elapsed());
    for v in report.violations.iter().take(5) { println!("  {v}"); }
}
