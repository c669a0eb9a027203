use coning_core::BitStream;
use coning_sts::*;

const EPS_100: &str = "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";
const EPS_128: &str = "11001100000101010110110001001100111000000000001001001101010100010001001111010110100000001101011111001100111001101101100010110010";

fn stream(s: &str) -> BitStream {
    BitStream::from_ascii(s).unwrap()
}

fn p(outcome: TestOutcome) -> Vec<f64> {
    outcome.expect_ran().p_values
}

fn close(got: f64, want: f64) {
    assert!((got - want).abs() <= 1e-6, "got {got}, want {want}");
}

#[test]
fn monobit() {
    let d = SuiteParams::default();
    close(p(frequency_monobit(&stream("1011010101"), &d))[0], 0.527089);
    close(p(frequency_monobit(&stream(EPS_100), &d))[0], 0.109599);
}

#[test]
fn block_frequency_examples() {
    let m3 = SuiteParams { block_frequency_m: 3, ..Default::default() };
    close(p(block_frequency(&stream("0110011010"), &m3))[0], 0.801252);
    let m10 = SuiteParams { block_frequency_m: 10, ..Default::default() };
    close(p(block_frequency(&stream(EPS_100), &m10))[0], 0.706438);
}

#[test]
fn runs_examples() {
    let d = SuiteParams::default();
    close(p(runs(&stream("1001101011"), &d))[0], 0.147232);
    close(p(runs(&stream(EPS_100), &d))[0], 0.500798);
}

#[test]
fn longest_run_example() {
    let r = longest_run_of_ones(&stream(EPS_128), &SuiteParams::default()).expect_ran();
    assert_eq!(r.parameters["M"], 8);
    assert_eq!(r.parameters["N"], 16);
    assert!((r.statistics["chi_squared"] - 4.882457).abs() < 1e-5);
    close(r.p_values[0], 0.180609);
}

#[test]
fn approximate_entropy_examples() {
    let m3 = SuiteParams { approx_entropy_m: 3, ..Default::default() };
    close(p(approximate_entropy(&stream("0100110101"), &m3))[0], 0.261961);
    let m2 = SuiteParams { approx_entropy_m: 2, ..Default::default() };
    close(p(approximate_entropy(&stream(EPS_100), &m2))[0], 0.235301);
}

#[test]
fn cumulative_sums_examples() {
    let d = SuiteParams::default();
    let ps = p(cumulative_sums(&stream(EPS_100), &d));
    close(ps[0], 0.219194);
    close(ps[1], 0.114866);
}

#[test]
fn serial_short_example() {
    let m3 = SuiteParams { serial_m: 3, ..Default::default() };
    let ps = p(serial(&stream("0011011101"), &m3));
    close(ps[0], 0.808792);
    close(ps[1], 0.670320);
}

#[test]
fn all_zeros_fail_core_tests() {
    let zeros = BitStream::from_bits(std::iter::repeat_n(false, 1_000_000));
    let report = run_suite(&zeros, &SuiteParams::default());
    for name in [MONOBIT, RUNS, APPROXIMATE_ENTROPY] {
        let r = report.get(name).unwrap().result().unwrap();
        assert!(!r.passed, "{name} passed on all zeros");
    }
    assert!(report.clustering_flag);
}

#[test]
fn linear_complexity_of_zero_block() {
    assert_eq!(berlekamp_massey(&[0u8; 500]), 0);
}

#[test]
fn report_is_sorted_and_complete() {
    let report = run_suite(&stream(EPS_128), &SuiteParams::default());
    let names: Vec<&str> = report.results.iter().map(|r| r.test_name()).collect();
    assert_eq!(names, test_names().to_vec());
    // 128 bits hold no 32x32 matrix and no 500-bit block.
    assert!(report.get(RANK).unwrap().is_skipped());
    assert!(report.get(LINEAR_COMPLEXITY).unwrap().is_skipped());
    assert_eq!(report.applicable, 7);
}
