use rcu_core::fixtures::{example2_masses, limited_failure, recombination_tree, Example1};
use rcu_core::model::{load_model, parse_alphas, Model};
use rcu_core::rational::rat;

fn shipped(name: &str) -> Model {
    let path = format!("{}/../../models/{name}", env!("CARGO_MANIFEST_DIR"));
    load_model(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn example1_file_matches_fixture() {
    let m = shipped("example1.json");
    let fx = Example1::new(rat(1, 1000)).unwrap();
    assert_eq!(m.tree.unwrap().to_spec(), fx.tree.to_spec());
    assert_eq!(m.capacity.to_table(), fx.capacity.to_table());
}

#[test]
fn example2_file_is_capacity_only() {
    let m = shipped("example2-capacity.json");
    assert!(m.tree.is_none());
    let masses = m.capacity.masses().expect("stored as masses");
    assert_eq!(masses.entries().len(), 6);
    let fx = rcu_core::Capacity::from_masses(example2_masses());
    assert_eq!(m.capacity.to_table(), fx.to_table());
}

#[test]
fn limited_failure_files_match_fixture() {
    let m = shipped("limited-failure.json");
    let fx = limited_failure();
    assert_eq!(m.tree.as_ref().unwrap().to_spec(), fx.tree.to_spec());
    assert_eq!(m.capacity.to_table(), fx.capacity.to_table());
    let path = format!("{}/../../models/limited-failure-alphas.json", env!("CARGO_MANIFEST_DIR"));
    let alphas = parse_alphas(&std::fs::read_to_string(path).unwrap(), &m.space).unwrap();
    assert_eq!(alphas, fx.alphas);
}

#[test]
fn dominated_justifiable_file_uses_the_recombination_tree() {
    let m = shipped("dominated-justifiable.json");
    assert_eq!(m.tree.unwrap().to_spec(), recombination_tree().to_spec());
    assert!(m.capacity.masses().is_some());
}
