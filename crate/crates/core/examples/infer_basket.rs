//! Recovering baskets from plurigenera, with and without chi(O).

use plurilab::wps::catalog;
use plurilab::{infer_basket, InferenceProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = catalog::x22();
    let pluri: Vec<(i64, i64)> = (2..=8)
        .map(|m| Ok((m, i64::try_from(x.plurigenus(m)?)?)))
        .collect::<Result<_, Box<dyn std::error::Error>>>()?;

    let known = InferenceProblem::new(pluri.clone(), Some(0), Some(x.k3()?));
    println!("chi and K^3 known: {}", infer_basket(&known)?.basket);

    let no_chi = InferenceProblem::new(pluri.clone(), None, Some(x.k3()?));
    let res = infer_basket(&no_chi)?;
    println!("chi unknown: {} with chi = {}", res.basket, res.chi);

    let no_k3 = InferenceProblem::new(pluri, Some(0), None);
    let res = infer_basket(&no_k3)?;
    println!("K^3 unknown: {} with K^3 = {}", res.basket, plurilab::rational::format(&res.k3));
    Ok(())
}
