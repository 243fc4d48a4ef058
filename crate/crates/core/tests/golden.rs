use lpsem::corpus::verify;
use lpsem::Evaluator;

#[test]
fn every_corpus_expectation_holds() {
    let checks = verify(&Evaluator::default());
    assert!(checks.len() >= 40);
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{} {:?}: expected {} got {:?}", c.entry, c.expectation.request, c.expectation.expected, c.actual))
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
