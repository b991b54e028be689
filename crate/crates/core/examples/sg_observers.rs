//! Spin predicates that become physically meaningful only through an observer record.
use physical_subspace::scenarios::{self, Predicate};
use physical_subspace::verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = scenarios::builtin("sg-observers")?;
    let eps = sc.model.tol().eps_zero;
    let mut i = 0;
    while sc.predicates.contains_key(&format!("O{i}")) {
        let spin = sc.event(&format!("S{i}"), "0")?;
        let observer = sc.event(&format!("O{i}"), "0")?;
        let realizable = verify::conditionally_realizable(&sc.family, &spin.projector, &observer.projector, 0)?;
        let p_o = Predicate::Labels(vec![i]).matrix(&sc.model)?;
        let Predicate::Matrix(s) = sc.predicate(&format!("S{i}"))? else { unreachable!() };
        let p_m = s.partial_trace_1(sc.model.d1(), 2)?.scale_real(1.0 / sc.model.d1() as f64);
        let witness = verify::observer_commutator(&sc.model, &sc.family, &p_o, &p_m, 0)?;
        println!(
            "direction {i}: spin physical={} observer physical={} realizable={} commutator={:.1e} (<= {eps:.0e})",
            sc.family.is_physically_possible(&spin.projector, 0),
            sc.family.is_physically_possible(&observer.projector, 0),
            realizable,
            witness,
        );
        i += 1;
    }
    Ok(())
}
