use plurilab::bounds::beta_sequence;
use plurilab::rational::format;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m0 in 2..=4 {
        let seq = beta_sequence(m0, 1, 1, 8)?;
        let terms: Vec<String> = seq.terms().iter().map(format).collect();
        println!("m0 = {m0}: {} -> {}", terms.join(", "), format(&seq.limit()));
    }
    Ok(())
}
