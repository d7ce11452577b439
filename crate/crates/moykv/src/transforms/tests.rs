use super::*;
use crate::kauffman::kv;
use crate::moy_bracket::{bracket_knotted, bracket_planar, expand_crossing};
use crate::testutil::{link, moy, random_ladder, un};
use proptest::prelude::*;

const THETA: &str = "cup 0 color=2 orient=ru / spl 1 color=1,1 / mrg 1 / cap 0";

fn colors(d: &SliceDiagram) -> Vec<u32> {
    let mut c: Vec<u32> = d.topology().arcs.iter().map(|a| a.color).collect();
    c.sort_unstable();
    c
}

#[test]
fn circuit_counts() {
    assert_eq!(simple_circuits(&moy("cup 0 orient=lu / cap 0")).unwrap().len(), 1);
    assert_eq!(simple_circuits(&moy(THETA)).unwrap().len(), 2);
    assert_eq!(simple_circuits(&moy("cup 0 orient=lu / cup 2 orient=ru / cap 2 / cap 0")).unwrap().len(), 2);
}

#[test]
fn reversing_circles_and_thetas() {
    for n in 1..=5u32 {
        for m in 1..=n {
            let d = moy(&format!("cup 0 color={m} orient=lu / cap 0"));
            let c = &simple_circuits(&d).unwrap()[0];
            let r = reverse_circuit(&d, c, n).unwrap();
            assert_eq!(bracket_planar(&r, n).unwrap(), bracket_planar(&d, n).unwrap());
            assert_eq!(r.len(), if m == n { 0 } else { 2 });
        }
    }
    let d = moy(THETA);
    for c in simple_circuits(&d).unwrap() {
        for n in 2..=4 {
            let r = reverse_circuit(&d, &c, n).unwrap();
            assert_eq!(bracket_planar(&r, n).unwrap(), bracket_planar(&d, n).unwrap(), "N={n}");
        }
    }
    let e = reverse_circuit(&d, &SimpleCircuit { arcs: vec![0] }, 3).unwrap_err();
    assert!(matches!(e, MoyError::Precondition(_)));
}

#[test]
fn shift_examples() {
    let unknot2 = link("cup 0 color=2 orient=ru / cup 1 color=2 orient=ru / xo 0 / cap 1 / cap 0");
    assert_eq!(reversal_shift(&unknot2, 0, 4).unwrap(), 0);
    let kink = link("cup 0 orient=ru / cup 1 orient=ru / xo 0 / cap 1 / cap 0");
    assert_eq!(reversal_shift(&kink, 0, 2).unwrap(), 0);
    let hopf = link("cup 0 orient=lu / cup 2 orient=ru / xo 1 / xo 1 / cap 2 / cap 0");
    assert_eq!(hopf.linking_number(0, 1).unwrap(), 1);
    assert_eq!(reversal_shift(&hopf, 0, 2).unwrap(), -2);
    assert!(reversal_shift(&hopf, 2, 2).is_err());
}

#[test]
fn component_reversal_on_links() {
    let words = [
        "cup 0 color={c} orient=lu / cap 0",
        "cup 0 color={c} orient=ru / cup 1 color={c} orient=ru / xo 0 / cap 1 / cap 0",
        "cup 0 color={c} orient=ru / cup 1 color={c} orient=ru / xu 0 / cap 1 / cap 0",
        "cup 0 color={c} orient=lu / cup 2 color={d} orient=ru / xo 1 / xo 1 / cap 2 / cap 0",
        "cup 0 color={c} orient=lu / cup 2 color={c} orient=ru / xo 1 / xo 1 / xo 1 / cap 2 / cap 0",
    ];
    for w in words {
        for n in 2..=4u32 {
            for c in 1..=2u32.min(n) {
                let d = link(&w.replace("{c}", &c.to_string()).replace("{d}", "1"));
                let (_, comps) = d.link_components().unwrap();
                for k in 0..comps.len() {
                    assert!(check_component_reversal(&d, k, n).unwrap(), "{w} N={n} c={c} K={k}");
                }
            }
        }
    }
}

#[test]
fn knotted_reversal_is_monomial() {
    let kink = link("cup 0 orient=ru / cup 1 orient=ru / xo 0 / cap 1 / cap 0");
    let d = SliceDiagram::new("k", DiagramKind::Moy, kink.slices().to_vec()).unwrap();
    for c in simple_circuits(&d).unwrap() {
        assert!(monomial_relation(&d, &c, 2).unwrap().is_some());
    }
    let d = moy(THETA);
    for c in simple_circuits(&d).unwrap() {
        assert_eq!(monomial_relation(&d, &c, 3).unwrap(), Some((1, 0)));
    }
}

#[test]
fn two_coloring() {
    let t = un("cup 0 / cup 2 / xo 1 / xo 1 / xo 1 / cap 2 / cap 0");
    let t2 = two_color(&t, &[false]).unwrap();
    assert!(t2.topology().arcs.iter().all(|a| a.color == 2));
    assert_eq!(t2.kind, DiagramKind::Link);
    assert!(two_color(&t, &[false, true]).is_err());
}

/// Planar terms of a colored (2,2)-crossing inside a closure, which are
/// mostly 2-colored graphs.
fn mostly_two_colored() -> Vec<SliceDiagram> {
    let closures = [
        "cup 0 color=2 orient=lu / cup 2 color=2 orient=ru / xo 1 / cap 2 / cap 0",
        "cup 0 color=2 orient=lu / cup 2 color=2 orient=ru / xo 1 / xo 1 / cap 2 / cap 0",
        "cup 0 color=2 orient=ru / cup 1 color=2 orient=ru / xo 0 / cap 1 / cap 0",
        "cup 0 color=2 orient=lu / cup 2 color=2 orient=ru / xo 1 / xo 1 / xo 1 / cap 2 / cap 0",
    ];
    let mut out = Vec::new();
    for w in closures {
        let d = link(w);
        let mut cur = vec![d];
        while let Some(x) = cur.pop() {
            match x.slices().iter().position(|g| g.kind.is_crossing()) {
                Some(i) => cur.extend(expand_crossing(&x, i).unwrap().terms().map(|(_, t)| t.clone())),
                None => out.push(x),
            }
        }
    }
    out
}

#[test]
fn shadows_match_so6() {
    let graphs = mostly_two_colored();
    assert!(graphs.len() >= 5);
    for g in &graphs {
        let s = graph_shadow(g).unwrap();
        assert_eq!(s.kind, DiagramKind::Unoriented);
        assert_eq!(bracket_planar(g, 4).unwrap(), kv(&s, 6).unwrap(), "{}", g.to_text());
    }
    assert_eq!(graph_shadow(&moy("cup 0 color=2 orient=lu / cap 0")).unwrap().len(), 2);
    assert!(graph_shadow(&moy(THETA)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reversal_preserves_brackets(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..4), n in 5u32..7) {
        let d = random_ladder(&seed);
        for c in simple_circuits(&d).unwrap() {
            let r = reverse_circuit(&d, &c, n).unwrap();
            prop_assert_eq!(bracket_planar(&r, n).unwrap(), bracket_planar(&d, n).unwrap());
        }
    }

    #[test]
    fn reversal_is_an_involution(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..3), n in 5u32..7) {
        let d = random_ladder(&seed);
        for c in simple_circuits(&d).unwrap() {
            let r = reverse_circuit(&d, &c, n).unwrap();
            // the reversed circuit is again a circuit of Γ′; reversing it
            // restores the colors and the value
            let back = simple_circuits(&r).unwrap().into_iter().find_map(|c2| {
                let b = reverse_circuit(&r, &c2, n).ok()?;
                (colors(&b) == colors(&d)).then_some(b)
            });
            let b = back.expect("a circuit undoing the reversal");
            prop_assert_eq!(bracket_planar(&b, n).unwrap(), bracket_planar(&d, n).unwrap());
        }
    }

    #[test]
    fn knotted_reversal_stays_monomial(k in 0usize..3, n in 2u32..4) {
        let words = ["xo 1", "xo 1 / xo 1", "xo 1 / xu 1 / xo 1"];
        let d = link(&format!("cup 0 orient=lu / cup 2 orient=ru / {} / cap 2 / cap 0", words[k]));
        let d = SliceDiagram::new("k", DiagramKind::Moy, d.slices().to_vec()).unwrap();
        prop_assume!(!bracket_knotted(&d, n).unwrap().is_zero());
        for c in simple_circuits(&d).unwrap() {
            prop_assert!(monomial_relation(&d, &c, n).unwrap().is_some());
        }
    }
}
