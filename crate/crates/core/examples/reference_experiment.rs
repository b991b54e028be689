//! Forward prediction and retrodiction on the built-in reference experiment,
//! next to the textbook values.
use physical_subspace::born::{self, OutcomeSet, Variant};
use physical_subspace::scenarios;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = scenarios::reference()?;
    let tol = sc.model.tol();

    let forward = born::prob_forward(&sc.condition("I", "t0")?, &sc.event("Fup", "t1")?, 0)?;
    println!("P(Fup@t1 | I@t0)        = {:.6}", forward.value);

    let cond = sc.condition("Fup", "t1")?;
    let i_t0 = sc.event("I", "t0")?;
    let set = OutcomeSet::from_events(&[i_t0.clone(), i_t0.complement()], tol)?;
    let full = born::prob_intermediate_full(&cond, &set, 0, 0)?;
    let known = born::prob_intermediate_known(&cond, &i_t0, 0, Variant::Support, None)?;
    println!("P(I@t0 | Fup@t1) full   = {:.6}", full.value);
    println!("P(I@t0 | Fup@t1) known  = {:.6}", known.value);

    let report = scenarios::intro_inconsistency_demo()?;
    println!("textbook retrodiction   = {:.6}", report.textbook_retrodiction);
    println!("textbook forward        = {:.6}", report.textbook_forward);
    for (i, p) in report.microstate_forward.iter().enumerate() {
        println!("  microstate {i}: P(Fup@t1) = {p:.6}");
    }
    println!("inconsistency shown: {}", report.demonstrates_inconsistency());
    Ok(())
}
