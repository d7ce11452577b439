use super::*;
use crate::testutil::{link, moy, random_ladder};
use proptest::prelude::*;

#[test]
fn pi_counts_inversions() {
    let a = ColorSet::from_elements(&[1, 3], 4);
    let b = ColorSet::from_elements(&[-3, -1, 1], 4);
    // 1 > -3, -1; 3 > -3, -1, 1
    assert_eq!(pi_count(a, b), 5);
    assert_eq!(pi_count(b, a), 0);
}

#[test]
fn colored_circle_is_a_binomial() {
    for n in 1..=6u32 {
        for m in 1..=n {
            for o in ["lu", "ru"] {
                let d = moy(&format!("cup 0 color={m} orient={o} / cap 0"));
                assert_eq!(bracket_planar(&d, n).unwrap(), HalfLaurent::qbinom(n, m as i64), "N={n} m={m}");
            }
        }
        let d = moy(&format!("cup 0 color={} orient=lu / cap 0", n + 1));
        assert!(bracket_planar(&d, n).unwrap().is_zero());
    }
}

#[test]
fn theta_graph() {
    // ⟨θ(1,1,2)⟩_3 = [3][2]
    let d = moy("cup 0 color=2 orient=ru / spl 1 color=1,1 / mrg 1 / cap 0");
    assert_eq!(bracket_planar(&d, 3).unwrap(), HalfLaurent::qint(3) * HalfLaurent::qint(2));
    assert_eq!(bracket_by_states(&d, 3).unwrap(), HalfLaurent::qint(3) * HalfLaurent::qint(2));
}

#[test]
fn kink_factor() {
    for n in 1..=4u32 {
        for (w, kind) in [(1i64, "xo"), (-1, "xu")] {
            let d = link(&format!("cup 0 orient=ru / cup 1 orient=ru / {kind} 0 / cap 1 / cap 0"));
            assert_eq!(d.writhe().unwrap(), w);
            let k = bracket_knotted(&d, n).unwrap();
            let expect = HalfLaurent::monomial(-1, -2 * w * n as i64) * HalfLaurent::qint(n);
            assert_eq!(k, expect, "N={n} w={w}");
        }
    }
}

#[test]
fn unlink_of_two() {
    let d = link("cup 0 orient=lu / cup 2 orient=ru / cap 2 / cap 0");
    assert_eq!(bracket_knotted(&d, 3).unwrap(), HalfLaurent::qint(3) * HalfLaurent::qint(3));
}

#[test]
fn expansions_are_planar_and_deduplicated() {
    let d = link("cup 0 color=2 orient=lu / cup 2 color=1 orient=ru / xo 1 / xo 1 / cap 2 / cap 0");
    let lc = MoyEngine::new().expand_all(&d).unwrap();
    assert!(lc.terms().all(|(_, t)| t.num_crossings() == 0));
    assert!(!lc.is_empty());
}

#[test]
fn rejects_bad_inputs() {
    let d = link("cup 0 orient=lu / cup 2 orient=ru / xo 1 / cap 2 / cap 0");
    assert!(bracket_planar(&d, 2).is_err());
    assert!(r_n(&d, 2).is_ok());
    assert!(renormalized_bracket(&d, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sweep_matches_state_enumeration(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..4), n in 1u32..5) {
        let d = random_ladder(&seed);
        prop_assert_eq!(bracket_planar(&d, n).unwrap(), bracket_by_states(&d, n).unwrap());
    }

    #[test]
    fn bracket_is_rotation_invariant(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..4), n in 1u32..5) {
        let d = random_ladder(&seed);
        prop_assert_eq!(bracket_planar(&d, n).unwrap(), bracket_planar(&d.rotate180(), n).unwrap());
    }

    #[test]
    fn states_have_integral_rotation(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..3), n in 1u32..5) {
        let d = random_ladder(&seed);
        for phi in states(&d, n).unwrap() {
            prop_assert!(state_rotation(&d, &phi, n).is_ok());
        }
    }

    #[test]
    fn bracket_is_bar_invariant(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..4), n in 1u32..5) {
        let d = random_ladder(&seed);
        let b = bracket_planar(&d, n).unwrap();
        prop_assert_eq!(b.bar(), b);
    }
}

#[test]
fn square_with_two_colored_rungs_at_three() {
    // a downward and an upward 1-colored strand exchanging a 1-colored edge
    // through two 2-colored vertical edges
    let square = ["cup {1} orient=ru", "mrg {0}", "mrg {1}", "spl {0} color=1,1", "spl {2} color=1,1", "cap {1}"];
    let vertical = ["cap {0}", "cup {0} orient=ru"];
    for (open, close, k) in [
        ("cup 0 orient=ru", "cap 0", 0),
        ("cup 0 orient=lu / cup 1 orient=ru", "cap 1 / cap 0", 1),
    ] {
        let body = |mid: &[&str]| {
            let mut words = vec![open.to_string()];
            for w in mid {
                words.push(w.replace("{0}", &k.to_string()).replace("{1}", &(k + 1).to_string()).replace("{2}", &(k + 2).to_string()));
            }
            words.push(close.to_string());
            moy(&words.join(" / "))
        };
        let lhs = bracket_planar(&body(&square), 3).unwrap();
        let rhs = bracket_planar(&body(&vertical), 3).unwrap() + bracket_planar(&body(&[]), 3).unwrap();
        assert_eq!(lhs, rhs, "{open}");
    }
}
