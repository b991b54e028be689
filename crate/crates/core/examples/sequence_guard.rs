//! Sequential outcomes: accepted on a classical chain, refused on a double slit.
use physical_subspace::born;
use physical_subspace::scenarios;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chain = scenarios::classical_chain()?;
    let cond = chain.condition("r0", "t0")?;
    let p = born::prob_sequence(&cond, &chain.event("low", "t1")?, &chain.event("odd", "t2")?, 0)?;
    println!("classical chain: P(low@t1, odd@t2 | r0@t0) = {:.6}", p.value);

    let slit = scenarios::double_slit()?;
    let cond = slit.condition("all", "t0")?;
    match born::prob_sequence(&cond, &slit.event("L", "t1")?, &slit.event("L", "t2")?, 0) {
        Ok(p) => println!("double slit: unexpectedly accepted, {:.6}", p.value),
        Err(e) => println!("double slit: refused={} ({e})", e.is_refusal()),
    }
    Ok(())
}
