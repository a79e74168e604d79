//! Refining xi along a schedule, then searching for the least birational m.

use plurilab::bounds::presets::{preset, PresetId};
use plurilab::bounds::{min_birational_m, run_schedule};
use plurilab::rational::format;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = preset(PresetId::TypeI, 4)?;
    println!("{sc}");
    let res = run_schedule(&sc, &[21, 20, 19, 18])?;
    for s in &res.trace {
        println!("m = {:2}  alpha = {:6}  xi = {}", s.m, format(&s.alpha), format(&s.xi_after));
    }
    println!("least firing m in the schedule: {:?}", res.m_birational);

    let sc = preset(PresetId::Case2, 3)?;
    let res = min_birational_m(&sc, 36)?;
    println!("{sc}: birational from m = {:?}, xi = {}", res.m_birational, format(&res.xi_final));
    Ok(())
}
