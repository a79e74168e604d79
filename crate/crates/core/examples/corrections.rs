//! Per-point correction terms and the monotonicity scan over quotient types.

use plurilab::rational;
use plurilab::reid::{check_monotonicity, BasketSingularity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = BasketSingularity::new(2, 7)?;
    print!("{q}:");
    for m in 2..=9 {
        print!(" {}", rational::format(&q.correction(m)?));
    }
    println!();

    let report = check_monotonicity(40);
    println!("{} types up to r = 40, clean: {}", report.types_checked, report.is_clean());
    Ok(())
}
