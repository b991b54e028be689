//! Verifiability checks, Z decompositions and the trace identity.
use physical_subspace::born::OutcomeSet;
use physical_subspace::scenarios;
use physical_subspace::verify::{self, Direction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = scenarios::reference()?;
    let tol = sc.model.tol();
    let cases = [("Fup", "t1", "I", "t0"), ("I", "t0", "Fup", "t1")];
    for (xn, xt, yn, yt) in cases {
        let cond = sc.condition(xn, xt)?;
        let y = sc.event(yn, yt)?;
        let set = OutcomeSet::from_events(&[y.clone(), y.complement()], tol)?;
        let report = verify::verifiable(&cond, &set)?;
        println!("{xn}@{xt} vs {{{yn}, not}}@{yt}: {:?}, verifiable={}", report.direction, report.verifiable);
        for (i, c) in report.outcomes.iter().enumerate() {
            println!("  outcome {i}: [Y,P]={:.2e} [Y,X]={:.2e}", c.commutator_physical, c.commutator_condition);
        }
        let direction = Direction::between(set.index(), cond.index());
        for y in set.events() {
            let d = verify::decompose(&cond, &y, direction)?;
            println!("  residual={:.2e} overlap={:.2e}", d.residual, d.overlap);
        }
        let residuals = verify::verify_trace_identity(&cond, &set, 0)?;
        let r: Vec<String> = residuals.iter().map(|r| format!("{r:.2e}")).collect();
        println!("  trace identity residuals [{}]", r.join(", "));
    }
    Ok(())
}
