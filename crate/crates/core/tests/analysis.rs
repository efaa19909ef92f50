use ndet::absint::{analyze, ExtNat, NdetDeg};
use ndet::list::ListSemantics;
use ndet::term::programs::{perm_term, sort_term};
use ndet::term::syntax::parse_term;
use ndet::testkit::{gen_terms, GenConfig};
use ndet::Observer;
use proptest::prelude::*;

fn sound_on(cfg: &GenConfig, count: usize) {
    for t in gen_terms(cfg, count) {
        let observed = ListSemantics.observe(&t).unwrap().len();
        let d = analyze(&t).unwrap();
        assert!(
            d.choices.bounds(observed),
            "{t}: {observed} choices, analysis {d}"
        );
        assert!(d.can_fail || observed >= 1, "{t}: no choices, analysis {d}");
    }
}

#[test]
fn sound_on_generated_terms() {
    sound_on(&GenConfig::with_seed(42), 600);
}

#[test]
fn sound_with_committed_choice() {
    let cfg = GenConfig {
        committed_choice: true,
        ..GenConfig::with_seed(43)
    };
    sound_on(&cfg, 600);
}

#[test]
fn program_degrees() {
    let inf = NdetDeg::new(true, ExtNat::Inf);
    assert_eq!(analyze(&perm_term(&[1, 2, 3])).unwrap(), inf);
    assert_eq!(analyze(&perm_term(&[])).unwrap(), inf);
    assert_eq!(
        analyze(&sort_term(&[3, 1, 2])).unwrap(),
        NdetDeg::new(true, ExtNat::ONE)
    );
}

#[test]
fn analysis_reads_term_files() {
    let t =
        parse_term("(choice (cons (int 20) (choice (nil) (cons (int 10) (nil)))) (fail))").unwrap();
    assert_eq!(
        analyze(&t).unwrap().to_json(),
        r#"{"can_fail":false,"choices":3}"#
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sound_for_any_seed(seed in any::<u64>(), committed in any::<bool>()) {
        let cfg = GenConfig { committed_choice: committed, ..GenConfig::with_seed(seed) };
        for t in gen_terms(&cfg, 5) {
            let n = ListSemantics.observe(&t).unwrap().len();
            let d = analyze(&t).unwrap();
            prop_assert!(d.choices.bounds(n));
            prop_assert!(d.can_fail || n >= 1);
        }
    }

    #[test]
    fn analysis_is_deterministic(seed in any::<u64>()) {
        let t = ndet::testkit::gen_term(&GenConfig::with_seed(seed));
        prop_assert_eq!(analyze(&t).unwrap(), analyze(&t).unwrap());
    }
}
