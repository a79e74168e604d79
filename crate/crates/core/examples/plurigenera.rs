//! Plurigenera of a threefold given chi(O), K^3 and its basket.

use plurilab::{rational, Basket, PluriData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basket: Basket = "1/2,1/3,1/5".parse()?;
    let data = PluriData::new(0, rational::ratio(1, 30), basket)?;
    for m in 2..=12 {
        println!("P_{m} = {}", rational::format(&data.plurigenus(m)?));
    }
    Ok(())
}
