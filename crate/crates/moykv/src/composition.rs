//! Labellings of MOY graphs and the composition product
//!
//! ```text
//! ⟨Γ⟩_{M+N} = Σ_f q^{σ_{M,N}(Γ,f)} · ⟨Γ_f⟩_M · ⟨Γ_f̄⟩_N
//! ```
//!
//! A labelling `f` assigns to every edge a number `0 ≤ f(e) ≤ c(e)` that is
//! itself a MOY coloring; `f̄ = c − f` is its complement, and `Γ_f`, `Γ_f̄` are
//! the graphs recolored by `f` and `f̄` (0-colored edges erased). With
//! `[v|Γ|f] = ½(f(e₁)f̄(e₂) − f̄(e₁)f(e₂))`,
//!
//! ```text
//! σ_{M,N}(Γ, f) = M·rot(Γ_f̄) − N·rot(Γ_f) + Σ_v [v|Γ|f].
//! ```
//!
//! All half-integers here are returned doubled.

use rayon::prelude::*;

use crate::diagram::{drop_zero_edges, GenKind, Generator, Orient, SliceDiagram, Topology};
use crate::error::{MoyError, Result};
use crate::laurent::HalfLaurent;
use crate::moy_bracket::{bracket_planar, vertex_legs};

/// `f(e)` for every arc id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(pub Vec<u32>);

impl Labeling {
    /// `f̄ = c − f`.
    pub fn complement(&self, t: &Topology) -> Labeling {
        Labeling(t.arcs.iter().map(|a| a.color - self.0[a.id]).collect())
    }
}

fn require_planar(d: &SliceDiagram) -> Result<()> {
    if d.kind != crate::diagram::DiagramKind::Moy {
        return Err(MoyError::Precondition("labellings are defined on MOY graphs".into()));
    }
    if let Some(i) = d.slices().iter().position(|g| g.kind.is_crossing() || g.kind == GenKind::V4) {
        return Err(MoyError::Precondition(format!("slice {i} makes the graph non-planar")));
    }
    Ok(())
}

/// `(e, e₁, e₂)` arc ids of every vertex.
fn vertex_arcs(d: &SliceDiagram, t: &Topology) -> Result<Vec<(usize, usize, usize)>> {
    (0..d.len())
        .filter(|&i| d.slices()[i].kind.is_vertex())
        .map(|i| {
            let (e, e1, e2) = vertex_legs(d, i)?;
            Ok((t.arc_of(e), t.arc_of(e1), t.arc_of(e2)))
        })
        .collect()
}

/// All labellings, by backtracking over arc ids.
pub fn labellings(d: &SliceDiagram) -> Result<Vec<Labeling>> {
    require_planar(d)?;
    let t = d.topology();
    let verts = vertex_arcs(d, &t)?;
    let caps: Vec<u32> = t.arcs.iter().map(|a| a.color).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Option<u32>> = vec![None; caps.len()];
    fn ok(verts: &[(usize, usize, usize)], cur: &[Option<u32>]) -> bool {
        verts.iter().all(|&(e, a, b)| match (cur[e], cur[a], cur[b]) {
            (Some(x), Some(y), Some(z)) => x == y + z,
            (Some(x), Some(y), None) | (Some(x), None, Some(y)) => y <= x,
            _ => true,
        })
    }
    fn rec(i: usize, caps: &[u32], verts: &[(usize, usize, usize)], cur: &mut Vec<Option<u32>>, out: &mut Vec<Labeling>) {
        if i == caps.len() {
            out.push(Labeling(cur.iter().map(|x| x.expect("assigned")).collect()));
            return;
        }
        for v in 0..=caps[i] {
            cur[i] = Some(v);
            if ok(verts, cur) {
                rec(i + 1, caps, verts, cur, out);
            }
        }
        cur[i] = None;
    }
    rec(0, &caps, &verts, &mut cur, &mut out);
    Ok(out)
}

/// `Γ_g`: the graph recolored by `g`, with 0-colored edges erased.
pub fn relabel(d: &SliceDiagram, g: &Labeling) -> Result<SliceDiagram> {
    let t = d.topology();
    let arc_at = |l: usize, p: usize| g.0[t.point_arc[l][p]];
    let slices = d
        .slices()
        .iter()
        .enumerate()
        .map(|(l, gen)| match gen.kind {
            GenKind::Cup => {
                let left_up = d.level(l + 1)[gen.pos].up == Some(true);
                Generator::cup(
                    gen.pos,
                    arc_at(l + 1, gen.pos),
                    Some(if left_up { Orient::Lu } else { Orient::Ru }),
                )
            }
            GenKind::Spl => Generator::spl(gen.pos, arc_at(l + 1, gen.pos), arc_at(l + 1, gen.pos + 1)),
            _ => gen.clone(),
        })
        .collect();
    drop_zero_edges(&SliceDiagram::new(d.name.clone(), d.kind, slices)?)
}

/// Doubled `[v|Γ|f]` for a vertex with thin arcs `e₁`, `e₂`.
pub fn vertex_term2(f1: u32, fbar1: u32, f2: u32, fbar2: u32) -> i64 {
    (f1 * fbar2) as i64 - (fbar1 * f2) as i64
}

/// Doubled `rot(Γ_g) = Σ_e τ(e)·g(e)`.
pub fn relabeled_rotation2(d: &SliceDiagram, t: &Topology, g: &Labeling) -> i64 {
    t.arcs.iter().map(|a| a.flow_turn2(d) * g.0[a.id] as i64).sum()
}

/// Doubled `σ_{M,N}(Γ, f)`.
pub fn sigma2(d: &SliceDiagram, f: &Labeling, m: u32, n: u32) -> Result<i64> {
    let t = d.topology();
    let fbar = f.complement(&t);
    let rot_f = relabeled_rotation2(d, &t, f);
    let rot_fbar = relabeled_rotation2(d, &t, &fbar);
    if rot_f % 2 != 0 || rot_fbar % 2 != 0 {
        return Err(MoyError::Internal("half-integral rotation of a relabeled graph".into()));
    }
    let mut s = m as i64 * rot_fbar - n as i64 * rot_f;
    for (_, e1, e2) in vertex_arcs(d, &t)? {
        s += vertex_term2(f.0[e1], fbar.0[e1], f.0[e2], fbar.0[e2]);
    }
    Ok(s)
}

/// The right-hand side of the composition product.
pub fn composition_rhs(d: &SliceDiagram, m: u32, n: u32) -> Result<HalfLaurent> {
    if m == 0 || n == 0 {
        return Err(MoyError::Precondition("M and N must be positive".into()));
    }
    let t = d.topology();
    let parts = labellings(d)?
        .par_iter()
        .map(|f| {
            let gf = relabel(d, f)?;
            let gfbar = relabel(d, &f.complement(&t))?;
            let a = bracket_planar(&gf, m)?;
            if a.is_zero() {
                return Ok(HalfLaurent::zero());
            }
            let b = bracket_planar(&gfbar, n)?;
            Ok(HalfLaurent::monomial(1, sigma2(d, f, m, n)?) * a * b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{moy, random_ladder};
    use proptest::prelude::*;

    const THETA: &str = "cup 0 color=2 orient=ru / spl 1 color=1,1 / mrg 1 / cap 0";

    #[test]
    fn labelling_counts() {
        for m in 1..=4 {
            let d = moy(&format!("cup 0 color={m} orient=lu / cap 0"));
            assert_eq!(labellings(&d).unwrap().len(), m as usize + 1);
        }
        assert_eq!(labellings(&moy(THETA)).unwrap().len(), 4);
    }

    #[test]
    fn vertex_terms() {
        assert_eq!(vertex_term2(2, 0, 1, 0), 0);
        assert_eq!(vertex_term2(1, 0, 0, 1), 1);
        assert_eq!(vertex_term2(0, 1, 1, 0), -1);
    }

    #[test]
    fn circle_sigma() {
        // find the counterclockwise orientation by its rotation
        for o in ["lu", "ru"] {
            let d = moy(&format!("cup 0 orient={o} / cap 0"));
            let t = d.topology();
            let ccw = relabeled_rotation2(&d, &t, &Labeling(vec![1])) == 2;
            let s1 = sigma2(&d, &Labeling(vec![1]), 2, 3).unwrap();
            let s0 = sigma2(&d, &Labeling(vec![0]), 2, 3).unwrap();
            if ccw {
                assert_eq!((s1, s0), (-6, 4));
            } else {
                assert_eq!((s1, s0), (6, -4));
            }
        }
    }

    #[test]
    fn composition_examples() {
        for (m, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)] {
            for c in 1..=2 {
                let d = moy(&format!("cup 0 color={c} orient=lu / cap 0"));
                assert_eq!(composition_rhs(&d, m, n).unwrap(), bracket_planar(&d, m + n).unwrap());
            }
            let d = moy(THETA);
            assert_eq!(composition_rhs(&d, m, n).unwrap(), bracket_planar(&d, m + n).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn composition_product_on_ladders(seed in proptest::collection::vec((any::<bool>(), 0u8..4), 0..3), k in 0usize..4) {
            let (m, n) = [(1, 1), (1, 2), (1, 3), (2, 2)][k];
            let d = random_ladder(&seed);
            prop_assert_eq!(composition_rhs(&d, m, n).unwrap(), bracket_planar(&d, m + n).unwrap());
        }
    }
}
