mod common;

use common::*;

#[test]
fn acceptance() {
    let runs: Vec<fn() -> Criterion> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let results: Vec<Criterion> = runs.into_iter().map(|f| f()).collect();
    println!();
    for c in &results {
        println!("{}", c.line());
        for k in &c.checks {
            let tag = if k.pass { "ok" } else if k.required { "FAILED" } else { "failed (reported only)" };
            println!("    {tag:<22} {}", k.name);
        }
    }
    let passed = results.iter().filter(|c| c.pass()).count();
    println!("{passed}/{} criteria pass", results.len());
    // checks marked report-only are unattainable and stay out of the assertion
    let broken: Vec<String> = results
        .iter()
        .flat_map(|c| c.checks.iter().filter(|k| k.required && !k.pass).map(move |k| format!("{}: {}", c.id, k.name)))
        .collect();
    assert!(broken.is_empty(), "required checks failed: {broken:?}");
}
