use super::*;
use crate::testutil::un;
use crate::kauffman::kv;


const UNKNOT: &str = "cup 0 / cap 0";
const UNLINK: &str = "cup 0 / cup 2 / cap 2 / cap 0";
const KINK: &str = "cup 0 / cup 1 / xo 0 / cap 1 / cap 0";
const HOPF: &str = "cup 0 / cup 2 / xo 1 / xo 1 / cap 2 / cap 0";
const TREFOIL: &str = "cup 0 / cup 2 / xo 1 / xo 1 / xo 1 / cap 2 / cap 0";
const BOUQUET: &str = "cup 0 / cup 1 / v4 0 / cap 1 / cap 0";
const THETA4: &str = "cup 0 / cup 2 / v4 1 / v4 1 / cap 2 / cap 0";
const KNOTTED: &str = "cup 0 / cup 2 / v4 1 / xo 1 / cap 2 / cap 0";
const KNOTTED2: &str = "cup 0 / cup 2 / v4 1 / xu 1 / v4 1 / cap 2 / cap 0";
const WIDE: &str = "cup 0 / cup 2 / cup 4 / v4 1 / xo 3 / v4 2 / xu 1 / cap 4 / cap 2 / cap 0";

#[test]
fn orientation_counts() {
    assert_eq!(balanced_orientations(&un(UNKNOT)).unwrap().len(), 2);
    let k = un(KINK);
    let all = balanced_orientations(&k).unwrap();
    assert_eq!(all.len(), 4);
    let adm: Vec<_> = all.iter().filter(|r| is_admissible(&k, r).unwrap()).collect();
    assert_eq!(adm.len(), 3);
    let resolved: Vec<usize> = adm.iter().map(|r| resolutions(&k, r).unwrap().len()).collect();
    assert_eq!(resolved.iter().filter(|&&n| n == 2).count(), 1);
    assert_eq!(balanced_orientations(&un(BOUQUET)).unwrap().len(), 4);
}

#[test]
fn mirror_has_as_many_admissible_orientations() {
    for w in [KINK, HOPF, TREFOIL, KNOTTED] {
        let d = un(w);
        let m = d.mirror();
        let count = |d: &SliceDiagram| {
            balanced_orientations(d).unwrap().iter().filter(|r| is_admissible(d, r).unwrap()).count()
        };
        assert_eq!(count(&d), count(&m));
    }
}

#[test]
fn weights() {
    assert_eq!(resolution_weight(&Resolution { choices: vec![] }), HalfLaurent::one());
    assert_eq!(resolution_weight(&Resolution { choices: vec![(0, Choice::A)] }), HalfLaurent::z());
    assert_eq!(
        resolution_weight(&Resolution { choices: vec![(0, Choice::B), (1, Choice::L)] }),
        -HalfLaurent::z() * HalfLaurent::q_pow(1)
    );
}

#[test]
fn unknot_closed_form() {
    for n in 1..=4u32 {
        let expect = (HalfLaurent::q_pow(n as i64 - 1) + HalfLaurent::q_pow(1 - n as i64)) * HalfLaurent::qint(n);
        assert_eq!(jaeger_rhs(&un(UNKNOT), 2 * n).unwrap(), expect);
        assert_eq!(expect, HalfLaurent::qint(2 * n - 1) + HalfLaurent::one());
    }
}

#[test]
fn matches_kauffman_vogel() {
    for w in [UNKNOT, UNLINK, KINK, HOPF, TREFOIL, BOUQUET, THETA4, KNOTTED, KNOTTED2, WIDE] {
        for n in 1..=3u32 {
            let d = un(w);
            assert_eq!(jaeger_rhs(&d, 2 * n).unwrap(), kv(&d, 2 * n).unwrap(), "{w} at 2N={}", 2 * n);
        }
    }
}

#[test]
fn resolutions_are_oriented_diagrams() {
    for w in [KINK, TREFOIL, THETA4, KNOTTED] {
        let d = un(w);
        for rho in balanced_orientations(&d).unwrap() {
            if !is_admissible(&d, &rho).unwrap() {
                assert!(resolutions(&d, &rho).is_err());
                continue;
            }
            for s in resolutions(&d, &rho).unwrap() {
                let r = resolve(&d, &rho, &s).unwrap();
                assert!(r.kind.is_oriented());
            }
        }
    }
}

#[test]
fn sl1_values() {
    // on resolutions embedded in the plane, R_1 is 1 without vertices and 0 with
    for w in [TREFOIL, THETA4, KNOTTED] {
        let d = un(w);
        for rho in balanced_orientations(&d).unwrap() {
            if !is_admissible(&d, &rho).unwrap() {
                continue;
            }
            for s in resolutions(&d, &rho).unwrap() {
                let r = resolve(&d, &rho, &s).unwrap();
                if r.num_crossings() > 0 {
                    continue;
                }
                let expect = if r.count(|k| k.is_vertex()) == 0 { HalfLaurent::one() } else { HalfLaurent::zero() };
                assert_eq!(crate::moy_bracket::r_n(&r, 1).unwrap(), expect);
            }
        }
    }
}
