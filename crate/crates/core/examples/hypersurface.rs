//! Weighted hypersurface invariants next to the Riemann-Roch prediction.

use plurilab::wps::catalog;
use plurilab::{rational, Basket, PluriData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (x, chi, basket) in
        [(catalog::x28(), 0, "1/2,1/3,1/5"), (catalog::x16(), -1, "2*1/2,1/3"), (catalog::x22(), 0, "5*1/2,1/3,1/4")]
    {
        let k3 = x.k3()?;
        let data = PluriData::new(chi, k3.clone(), basket.parse::<Basket>()?)?;
        println!("{x}  K^3 = {}", rational::format(&k3));
        for m in 2..=8 {
            println!("  m = {m}: count {}  formula {}", x.plurigenus(m)?, rational::format(&data.plurigenus(m)?));
        }
    }
    Ok(())
}
