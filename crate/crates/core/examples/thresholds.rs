//! Assembled thresholds and the hypersurfaces that show they cannot be lowered.

use plurilab::bounds::presets::theorem_44_summary;
use plurilab::bounds::theorems::{certified_threshold, external_facts};
use plurilab::bounds::{corollary_pipeline, main_pipeline};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m0, chi_zero) in [(2, false), (3, false), (3, true), (4, false)] {
        let s = theorem_44_summary(m0, chi_zero)?;
        println!("m0 = {m0}{}: {}", if chi_zero { ", chi(O) = 0" } else { "" }, s.threshold);
    }
    println!("chi(omega) >= 0: {}", main_pipeline()?.threshold);
    println!("chi(omega) > 0: {}", corollary_pipeline()?.threshold);
    for fact in external_facts() {
        let t = certified_threshold(&fact.pluri_data()?)?;
        println!("{}: certified {t}, not birational at {}", fact.hypersurface, fact.not_birational_at);
    }
    Ok(())
}
