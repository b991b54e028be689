//! Kappa paths, reduced states and position distributions for a measurement.
use physical_subspace::linalg::ComplexMatrix;
use physical_subspace::measurement::{position_distribution, purity, rho_path, MeasurementProcess, Representation};
use physical_subspace::scenarios::{self, record};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = scenarios::reference()?;
    let eps = sc.model.tol().eps_zero;
    let p = |l: &[usize]| ComplexMatrix::basis_projector(sc.model.d1(), l);
    let outcomes = [p(&[record::F_UP])?, p(&[record::F_DOWN])?, p(&[record::READY, record::BLOCKED, record::I])?];
    let proc = MeasurementProcess::new(&sc.model, &sc.family, &p(&[record::I])?, 1, &outcomes, 2, 0)?;
    println!("is measurement: {}  record kept: {:?}", proc.is_measurement(), proc.record_kept());

    let cells = sc.position_projectors()?;
    for i in 0..outcomes.len() {
        let prob = proc.outcome_probability(i)?;
        println!("outcome {i}: probability {prob:.6}");
        if prob <= eps {
            continue;
        }
        let path = proc.kappa_path(i, Representation::Support)?;
        let rhos = rho_path(&path, eps)?;
        if rhos.is_empty() {
            continue;
        }
        let cols = position_distribution(&rhos, &cells, eps)?;
        for ((k, rho_purity), dist) in path.indices().zip(purity(&rhos)).zip(cols) {
            let dist: Vec<String> = dist.iter().map(|x| format!("{x:.3}")).collect();
            println!("  k={k} purity={rho_purity:.4} cells=[{}]", dist.join(", "));
        }
    }

    let red = scenarios::reference_redundant()?;
    let q = |l: &[usize]| ComplexMatrix::basis_projector(red.model.d1(), l);
    let proc = MeasurementProcess::new(&red.model, &red.family, &q(&[2])?, 1, &[q(&[3, 4])?, q(&[5])?], 2, 0)?;
    println!("redundant records refine to {:?}", proc.refine_outcomes()?);
    Ok(())
}
