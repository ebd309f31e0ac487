//! The reference implementation against published values, and the crate
//! against the reference on assorted inputs.

#[path = "support/reference.rs"]
mod reference;

use chaoscrypt::prng::BitSequence;
use chaoscrypt::sts::{run_suite, SuiteConfig, TestId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

const PI_100: &str = "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";

fn e_bits() -> Vec<u8> {
    let bytes = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/e_1e6.bin")).unwrap();
    bytes.iter().flat_map(|b| (0..8).rev().map(move |i| (b >> i) & 1)).collect()
}

fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|c| c - b'0').collect()
}

fn p(outcome: &reference::Outcome, label: &str) -> f64 {
    outcome.as_ref().unwrap().iter().find(|(l, _)| l == label).unwrap().1
}

fn close(got: f64, want: f64) {
    assert!((got - want).abs() < 1e-6, "got {got}, want {want}");
}

#[test]
fn reference_reproduces_e_results() {
    let e = e_bits();
    close(p(&reference::frequency(&e), "p"), 0.953_749);
    close(p(&reference::block_frequency(&e, 128), "p"), 0.211_072);
    close(p(&reference::runs(&e), "p"), 0.561_917);
    close(p(&reference::longest_run(&e), "p"), 0.718_945);
    close(p(&reference::rank(&e), "p"), 0.306_156);
    let serial = reference::serial(&e, 16);
    close(p(&serial, "p1"), 0.766_182);
    close(p(&serial, "p2"), 0.462_921);
    let cusum = reference::cusum(&e);
    close(p(&cusum, "forward"), 0.669_887);
    close(p(&cusum, "backward"), 0.724_266);
    let ex = reference::excursions(&e);
    close(p(&ex, "x=-4"), 0.573_306);
    close(p(&ex, "x=-1"), 0.007_779);
    close(p(&ex, "x=+4"), 0.778_186);
    close(p(&reference::excursions_variant(&e), "x=-1"), 0.826_009);
    close(p(&reference::linear_complexity(&e, 500), "p"), 0.826_335);
}

#[test]
fn reference_reproduces_worked_examples() {
    let eps = bits(PI_100);
    close(p(&reference::frequency(&eps), "p"), 0.109_599);
    close(p(&reference::runs(&eps), "p"), 0.500_798);
    close(p(&reference::block_frequency(&eps, 10), "p"), 0.706_438);
    close(p(&reference::cusum(&eps), "forward"), 0.219_194);
    close(p(&reference::cusum(&eps), "backward"), 0.114_866);
    assert_eq!(reference::lfsr_length(&bits("1101011110001")), 4);
}

fn compare(e: &[u8], tol: f64) {
    let report = run_suite(&BitSequence::from_bits(e), &SuiteConfig::default());
    for (id, name) in TestId::ALL.iter().zip(reference::TESTS) {
        assert_eq!(id.name(), name);
        let ours = report.result(*id).unwrap();
        match reference::run(name, e) {
            None => assert!(!ours.is_applicable(), "{name}: reference says not applicable"),
            Some(want) => {
                assert!(ours.is_applicable(), "{name}: {ours:?}");
                assert_eq!(ours.p_values().len(), want.len(), "{name}");
                for (label, value) in want {
                    let got = ours.p(&label).unwrap();
                    assert!((got - value).abs() <= tol, "{name} {label}: {got} vs {value}");
                }
            }
        }
    }
}

#[test]
fn crate_matches_reference_on_random_and_biased_inputs() {
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    for (n, bias) in [(120_000, 0.5), (250_000, 0.5), (130_000, 0.502), (110_000, 0.45)] {
        let e: Vec<u8> = (0..n).map(|_| u8::from(rng.gen_bool(bias))).collect();
        compare(&e, 1e-9);
    }
}

#[test]
fn crate_matches_reference_on_degenerate_inputs() {
    compare(&vec![0u8; 110_000], 1e-9);
    compare(&(0..110_000).map(|i| (i % 2) as u8).collect::<Vec<_>>(), 1e-9);
}
