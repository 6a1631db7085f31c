use serde_json::Value;
use urnlab::corpus::{analyze_text, tokenize, TokenizerRules};

const FIXTURE: &[u8] = include_bytes!("data/fixture.txt");
const TOKENS: &str = include_str!("data/fixture.tokens");
const GOLDEN: &str = include_str!("data/fixture.golden.json");

#[test]
fn fixture_tokens_match_committed_list() {
    let stream = tokenize(FIXTURE, "fixture.txt", TokenizerRules::default()).unwrap();
    let expected: Vec<&str> = TOKENS.lines().collect();
    assert_eq!(stream.tokens, expected);
}

#[test]
fn fixture_reproduces_golden_values() {
    let golden: Value = serde_json::from_str(GOLDEN).unwrap();
    let stream = tokenize(FIXTURE, "fixture.txt", TokenizerRules::default()).unwrap();
    let (traj, est) = analyze_text(&stream, 10).unwrap();
    assert_eq!(est.n, golden["n"].as_u64().unwrap());
    assert_eq!(est.r_n, golden["r_n"].as_u64().unwrap());
    assert_eq!(est.r_half, golden["r_half"].as_u64().unwrap());
    assert_eq!(est.r_n1, golden["r_n1"].as_u64().unwrap());
    assert_eq!(est.theta_hat, golden["theta_hat"].as_f64().unwrap());
    assert_eq!(est.theta_star, golden["theta_star"].as_f64().unwrap());
    assert_eq!(est.theta_star, est.r_n1 as f64 / est.r_n as f64);

    let mut prev = (0, 0);
    for c in &traj.checkpoints {
        assert_eq!(c.r_k.iter().sum::<u64>() + c.overflow, c.r);
        assert!(c.n >= prev.0 && c.r >= prev.1);
        prev = (c.n, c.r);
    }
}

#[test]
fn rerun_is_identical() {
    let a = tokenize(FIXTURE, "x", TokenizerRules::default()).unwrap();
    let b = tokenize(FIXTURE, "x", TokenizerRules::default()).unwrap();
    assert_eq!(analyze_text(&a, 5).unwrap().0.to_csv(), analyze_text(&b, 5).unwrap().0.to_csv());
}
