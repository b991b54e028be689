//! Builds a small scenario in code, writes it as JSON and loads it back.
use std::collections::BTreeMap;

use physical_subspace::born;
use physical_subspace::cli::file::{parse_scenario, ScenarioFile};
use physical_subspace::linalg::ket;
use physical_subspace::model::{Model, TimeGrid};
use physical_subspace::scenarios::{permutation_matrix, FamilySpec, Predicate, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = TimeGrid::with_labels(vec![0.0, 1.0, 2.0], vec!["a".into(), "b".into(), "c".into()])?;
    let step = permutation_matrix(&[1, 2, 0]);
    let model = Model::new(3, 1, grid, vec![step.clone(), step], Default::default())?;
    let spec = FamilySpec::Closure { initial: vec![ket(3, 0), ket(3, 1)], extras: BTreeMap::new() };
    let mut predicates = BTreeMap::new();
    for l in 0..3 {
        predicates.insert(format!("r{l}"), Predicate::Labels(vec![l]));
    }
    let sc = Scenario::new("cycle", model, spec, predicates, Vec::new())?;

    let text = ScenarioFile::from_scenario(&sc).to_json();
    println!("{} bytes of JSON", text.len());
    let back = parse_scenario(&text)?;
    let p = born::prob_forward(&back.condition("r0", "a")?, &back.event("r2", "c")?, 0)?;
    println!("P(r2@c | r0@a) = {:.6}", p.value);
    Ok(())
}
