use purespin::verify::{run_named, SuiteConfig, SUITES};
use purespin::{Gaussian, Rational};

#[test]
fn rational_suites_pass() {
    for name in SUITES {
        let rep = run_named::<Rational>(name, SuiteConfig::new(11, 40, 1, 4)).unwrap();
        assert!(rep.ok(), "{}: {:?}", rep.summary(), rep.failures);
    }
}

#[test]
fn gaussian_suites_pass() {
    for name in SUITES {
        let rep = run_named::<Gaussian>(name, SuiteConfig::new(12, 20, 1, 3)).unwrap();
        assert!(rep.ok(), "{}: {:?}", rep.summary(), rep.failures);
    }
}

#[test]
fn suites_are_seeded() {
    let a = run_named::<Rational>("perturbation", SuiteConfig::new(5, 12, 2, 3)).unwrap();
    let b = run_named::<Rational>("perturbation", SuiteConfig::new(5, 12, 2, 3)).unwrap();
    assert_eq!(a, b);
    assert!(run_named::<Rational>("nope", SuiteConfig::new(5, 1, 1, 1)).is_none());
}
