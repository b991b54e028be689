//! The start time of a condition and the k0-invariance of its condition operator.
use physical_subspace::born;
use physical_subspace::scenarios;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = scenarios::reference()?;
    let cond = sc.condition("Fup", "t1")?;
    let start = cond.start_time(None)?;
    println!("trimming constant on [0, {}]", start.trimming_index);

    let i_t0 = sc.event("I", "t0")?;
    let approx = born::prob_approx(&cond, &i_t0)?;
    println!("approx P(I@t0 | Fup@t1) = {:.6}", approx.value);
    for w in &approx.warnings {
        println!("  warning: {w}");
    }

    let ready = sc.condition("ready", "ts")?;
    for k0 in 0..=ready.start_time(None)?.trimming_index {
        let p = born::prob_forward(&ready, &sc.event("Fup", "t1")?, k0)?;
        println!("k0={k0}: P(Fup@t1 | ready@ts) = {:.6}", p.value);
    }
    match cond.condition_operator(start.trimming_index + 1) {
        Ok(_) => println!("unexpected: start after trimming index accepted"),
        Err(e) => println!("k0 past trimming index: {e}"),
    }
    Ok(())
}
