use super::*;
use crate::testutil::un;
use proptest::prelude::*;


const UNKNOT: &str = "cup 0 / cap 0";
const UNLINK: &str = "cup 0 / cup 2 / cap 2 / cap 0";
const KINK_POS: &str = "cup 0 / cup 1 / xo 0 / cap 1 / cap 0";
const KINK_NEG: &str = "cup 0 / cup 1 / xu 0 / cap 1 / cap 0";
const HOPF: &str = "cup 0 / cup 2 / xo 1 / xo 1 / cap 2 / cap 0";
const TREFOIL: &str = "cup 0 / cup 2 / xo 1 / xo 1 / xo 1 / cap 2 / cap 0";
const BOUQUET: &str = "cup 0 / cup 1 / v4 0 / cap 1 / cap 0";
const THETA4: &str = "cup 0 / cup 2 / v4 1 / v4 1 / cap 2 / cap 0";

#[test]
fn delta_values() {
    assert_eq!(delta(2).unwrap(), HalfLaurent::constant(2));
    assert_eq!(delta(4).unwrap().to_string(), "q^2 + 2 + q^-2");
    assert_eq!(delta(6).unwrap(), HalfLaurent::qbinom(4, 2));
    assert!(delta(1).is_err());
}

#[test]
fn base_cases() {
    for n in 2..=6 {
        let d = delta(n).unwrap();
        assert_eq!(kauffman_link(&un(UNKNOT), n).unwrap(), d);
        assert_eq!(kauffman_link(&un(UNLINK), n).unwrap(), &d * &d);
        let a = HalfLaurent::q_pow(n as i64 - 1);
        assert_eq!(kauffman_link(&un(KINK_POS), n).unwrap(), &a * &d);
        assert_eq!(kauffman_link(&un(KINK_NEG), n).unwrap(), a.bar() * &d);
    }
}

/// Independent oracle: the Dubrovnik polynomial of the (2, k) torus closure
/// via the recursion P(T_k) = P(T_{k−2}) + z·(P(T_{k−1}) − a^{1−k}·δ) read off
/// the skein relation at one crossing (switching it gives T_{k−2}, the
/// vertical smoothing T_{k−1}, the horizontal smoothing an unknot with k−1 negative curls on a cup).
fn torus_oracle(k: usize, n: u32) -> HalfLaurent {
    let d = delta(n).unwrap();
    let a = HalfLaurent::q_pow(n as i64 - 1);
    let mut vals = vec![&d * &d, &a * &d];
    for j in 2..=k {
        let v = vals[j - 2].clone() + HalfLaurent::z() * (vals[j - 1].clone() - a.bar().pow(j as u32 - 1) * &d);
        vals.push(v);
    }
    vals[k].clone()
}

#[test]
fn torus_closures_match_recursion() {
    for k in 0..=5 {
        let word = std::iter::once("cup 0 / cup 2".to_string())
            .chain((0..k).map(|_| "xo 1".to_string()))
            .chain(std::iter::once("cap 2 / cap 0".to_string()))
            .collect::<Vec<_>>()
            .join(" / ");
        for n in 2..=5 {
            assert_eq!(kauffman_link(&un(&word), n).unwrap(), torus_oracle(k, n), "k={k} N={n}");
        }
    }
    // the oracle at k = 2, 3 are the Hopf link and trefoil
    assert_eq!(kauffman_link(&un(HOPF), 3).unwrap(), torus_oracle(2, 3));
    assert_eq!(kauffman_link(&un(TREFOIL), 3).unwrap(), torus_oracle(3, 3));
}

#[test]
fn mirror_is_bar_on_knots() {
    for w in [KINK_POS, TREFOIL] {
        for n in 2..=5 {
            let d = un(w);
            assert_eq!(kauffman_link(&d.mirror(), n).unwrap(), kauffman_link(&d, n).unwrap().bar());
        }
    }
}

#[test]
fn reidemeister_two_and_three() {
    let base = un("cup 0 / cup 2 / cap 2 / cap 0");
    let r2 = un("cup 0 / cup 2 / xo 1 / xu 1 / cap 2 / cap 0");
    let lhs = un("cup 0 / cup 2 / cup 4 / xo 1 / xo 2 / xo 1 / cap 4 / cap 2 / cap 0");
    let rhs = un("cup 0 / cup 2 / cup 4 / xo 2 / xo 1 / xo 2 / cap 4 / cap 2 / cap 0");
    for n in 2..=5 {
        assert_eq!(kauffman_link(&r2, n).unwrap(), kauffman_link(&base, n).unwrap());
        assert_eq!(kauffman_link(&lhs, n).unwrap(), kauffman_link(&rhs, n).unwrap());
    }
}

#[test]
fn vertex_elimination() {
    let d = un(BOUQUET);
    let e = KauffmanEngine::new(3).unwrap();
    let lc = e.expand_vertices(&d, VertexForm::Over).unwrap();
    assert_eq!(lc.len(), 3);
    assert!(lc.terms().all(|(_, t)| t.count(|k| k == GenKind::V4) == 0 && t.num_crossings() <= 1));
    assert!(eliminate_vertex(&d, 0, VertexForm::Over).is_err());
    for n in 2..=6 {
        let e = KauffmanEngine::new(n).unwrap();
        for w in [BOUQUET, THETA4] {
            let d = un(w);
            assert_eq!(e.kv_with(&d, VertexForm::Over).unwrap(), e.kv_with(&d, VertexForm::Under).unwrap());
        }
        assert_eq!(e.kv(&un(UNKNOT)).unwrap(), delta(n).unwrap());
    }
}

#[test]
fn budget_is_enforced() {
    let e = KauffmanEngine::with_budget(3, 2).unwrap();
    assert_eq!(e.link(&un(TREFOIL)).unwrap_err(), MoyError::Budget { limit: 2 });
}

fn random_link(seed: &[(u8, bool)]) -> SliceDiagram {
    let mut w = vec!["cup 0".to_string(), "cup 2".into(), "cup 4".into()];
    for &(p, o) in seed {
        w.push(format!("{} {}", if o { "xo" } else { "xu" }, p % 5));
    }
    w.extend(["cap 4".into(), "cap 2".into(), "cap 0".into()]);
    un(&w.join(" / "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn crossing_switch_relation(seed in proptest::collection::vec((0u8..5, any::<bool>()), 1..5), site in 0usize..8, n in 2u32..5) {
        let d = random_link(&seed);
        let idx = 3 + site % seed.len();
        let g = d.slices()[idx].clone();
        let xo = d.splice(idx, &[Generator::xo(g.pos)], d.kind).unwrap();
        let xu = d.splice(idx, &[Generator::xu(g.pos)], d.kind).unwrap();
        let (v, h) = smoothings(&d, idx).unwrap();
        let e = KauffmanEngine::new(n).unwrap();
        prop_assert_eq!(
            e.link(&xo).unwrap() - e.link(&xu).unwrap(),
            HalfLaurent::z() * (e.link(&v).unwrap() - e.link(&h).unwrap())
        );
    }

    #[test]
    fn elimination_order_is_irrelevant(seed in proptest::collection::vec((0u8..5, any::<bool>()), 0..3), picks in proptest::collection::vec(0usize..4, 3), n in 2u32..5) {
        let mut w: Vec<String> = vec!["cup 0".into(), "cup 2".into(), "cup 4".into(), "v4 1".into(), "v4 3".into()];
        for &(p, o) in &seed {
            w.push(format!("{} {}", if o { "xo" } else { "v4" }, p % 5));
        }
        w.extend(["cap 4".into(), "cap 2".into(), "cap 0".into()]);
        let d = un(&w.join(" / "));
        let e = KauffmanEngine::new(n).unwrap();
        let mut it = picks.into_iter();
        let lc = e.expand_vertices_ordered(&d, VertexForm::Over, |_| it.next().unwrap_or(0)).unwrap();
        prop_assert_eq!(e.sum(&lc).unwrap(), e.kv(&d).unwrap());
    }
}
