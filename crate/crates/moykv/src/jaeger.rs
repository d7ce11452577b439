//! Balanced orientations, their resolutions, and the state sum expressing the
//! `so(2N)` Kauffman–Vogel polynomial through `sl(N)` MOY polynomials:
//!
//! ```text
//! P_{2N}(D) = Σ_ρ Σ_ς q^{−(N−1)·rot(D_{ρ,ς})} · [D_ρ, ς] · R_N(D_{ρ,ς})
//! ```
//!
//! An orientation of the arcs is *balanced* if every crossing and vertex has
//! two incoming and two outgoing arc-ends. A crossing whose over-strand is a
//! sink is *top inward* and makes the orientation inadmissible; one whose
//! over-strand is a source is *top outward* and is resolved by `A` or `B`.
//! A vertex whose incoming ends are opposite each other is *non-crossing-like*
//! and is resolved by `L` or `R`; other vertices stay, widened into a merge and
//! a split joined by a 2-colored edge.

use rayon::prelude::*;

use crate::diagram::{DiagramKind, GenKind, Generator, LegRef, Orient, SliceDiagram, Topology};
use crate::error::{MoyError, Result};
use crate::laurent::HalfLaurent;
use crate::moy_bracket::{r_n_with, MoyEngine};

/// Direction of every arc: `forward[a]` is true if the arc flows from its
/// `ends[0]` toward its `ends[1]` (for closed arcs: along its point order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BalancedOrientation {
    pub forward: Vec<bool>,
}

/// Local choice at a resolved crossing or vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    A,
    B,
    L,
    R,
}

/// Choices keyed by slice index, in slice order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Resolution {
    pub choices: Vec<(usize, Choice)>,
}

/// How a crossing or vertex looks under a balanced orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalType {
    /// Both strands pass straight through.
    Consistent,
    TopOutward,
    TopInward,
    CrossingLike,
    NonCrossingLike,
}

fn require_unoriented(d: &SliceDiagram) -> Result<()> {
    if d.kind != DiagramKind::Unoriented {
        return Err(MoyError::Precondition(format!(
            "expected an unoriented diagram, found kind {}",
            d.kind.name()
        )));
    }
    Ok(())
}

fn is_junction(g: &Generator) -> bool {
    g.kind.is_crossing() || g.kind == GenKind::V4
}

/// Whether each leg `BL, BR, TL, TR` of junction `gen` is an incoming end.
fn ins(t: &Topology, rho: &BalancedOrientation, gen: usize) -> [bool; 4] {
    let mut out = [false; 4];
    for (leg, slot) in out.iter_mut().enumerate() {
        let (a, end) = t.leg_arc[&LegRef { gen, leg }];
        // an arc enters the junction at its far end when flowing forward
        *slot = (end == 1) == rho.forward[a];
    }
    out
}

fn classify(kind: GenKind, i: [bool; 4]) -> Option<LocalType> {
    if i.iter().filter(|&&b| b).count() != 2 {
        return None;
    }
    // strands BL–TR and BR–TL
    let straight = i[0] != i[3] && i[1] != i[2];
    let over = match kind {
        GenKind::Xo => [0, 3],
        _ => [1, 2],
    };
    Some(match kind {
        GenKind::V4 if straight => LocalType::CrossingLike,
        GenKind::V4 => LocalType::NonCrossingLike,
        _ if straight => LocalType::Consistent,
        _ if i[over[0]] => LocalType::TopInward,
        _ => LocalType::TopOutward,
    })
}

/// Local type of junction `gen` under `rho`; `None` if unbalanced there.
pub fn local_type(d: &SliceDiagram, t: &Topology, rho: &BalancedOrientation, gen: usize) -> Option<LocalType> {
    classify(d.slices()[gen].kind, ins(t, rho, gen))
}

/// All balanced orientations, by a binary counter over arc ids (bit `a` set
/// means arc `a` flows backward).
pub fn balanced_orientations(d: &SliceDiagram) -> Result<Vec<BalancedOrientation>> {
    require_unoriented(d)?;
    let t = d.topology();
    let n = t.arcs.len();
    if n > 24 {
        return Err(MoyError::Precondition(format!("{n} arcs are too many to enumerate orientations")));
    }
    let junctions: Vec<usize> = (0..d.len()).filter(|&i| is_junction(&d.slices()[i])).collect();
    Ok((0u64..1 << n)
        .map(|mask| BalancedOrientation {
            forward: (0..n).map(|a| mask >> a & 1 == 0).collect(),
        })
        .filter(|rho| junctions.iter().all(|&j| local_type(d, &t, rho, j).is_some()))
        .collect())
}

/// True iff `rho` has no top inward crossing.
pub fn is_admissible(d: &SliceDiagram, rho: &BalancedOrientation) -> Result<bool> {
    let t = d.topology();
    let mut ok = true;
    for j in 0..d.len() {
        if is_junction(&d.slices()[j]) {
            match local_type(d, &t, rho, j) {
                None => return Err(MoyError::Precondition(format!("orientation is unbalanced at slice {j}"))),
                Some(LocalType::TopInward) => ok = false,
                Some(_) => {}
            }
        }
    }
    Ok(ok)
}

fn resolvable(d: &SliceDiagram, t: &Topology, rho: &BalancedOrientation) -> Result<Vec<(usize, LocalType)>> {
    let mut out = Vec::new();
    for j in 0..d.len() {
        if !is_junction(&d.slices()[j]) {
            continue;
        }
        match local_type(d, t, rho, j) {
            None => return Err(MoyError::Precondition(format!("orientation is unbalanced at slice {j}"))),
            Some(LocalType::TopInward) => {
                return Err(MoyError::Precondition(format!("slice {j} is a top inward crossing")))
            }
            Some(ty @ (LocalType::TopOutward | LocalType::NonCrossingLike)) => out.push((j, ty)),
            Some(_) => {}
        }
    }
    Ok(out)
}

/// All resolutions of an admissible orientation, `A`/`L` before `B`/`R`, the
/// first resolvable junction varying slowest.
pub fn resolutions(d: &SliceDiagram, rho: &BalancedOrientation) -> Result<Vec<Resolution>> {
    require_unoriented(d)?;
    let t = d.topology();
    let sites = resolvable(d, &t, rho)?;
    let k = sites.len();
    Ok((0u64..1 << k)
        .map(|mask| Resolution {
            choices: sites
                .iter()
                .enumerate()
                .map(|(i, &(j, ty))| {
                    let second = mask >> (k - 1 - i) & 1 == 1;
                    let c = match (ty, second) {
                        (LocalType::TopOutward, false) => Choice::A,
                        (LocalType::TopOutward, true) => Choice::B,
                        (_, false) => Choice::L,
                        (_, true) => Choice::R,
                    };
                    (j, c)
                })
                .collect(),
        })
        .collect())
}

/// Vertical (`BL–TL`, `BR–TR`) rather than horizontal smoothing?
fn is_vertical(kind: GenKind, legs_in: [bool; 4], c: Choice) -> bool {
    match c {
        // the picture of a top outward crossing has the over-strand running
        // BL–TR; for xu it is turned by a quarter, exchanging the smoothings
        Choice::A => kind == GenKind::Xo,
        Choice::B => kind != GenKind::Xo,
        // L joins each incoming end to its clockwise neighbour
        Choice::L => legs_in[0],
        Choice::R => !legs_in[0],
    }
}

fn cup_toward(pos: usize, left_up: bool) -> Generator {
    Generator::cup(pos, 1, Some(if left_up { Orient::Lu } else { Orient::Ru }))
}

/// The oriented diagram `D_{ρ,ς}` (kind `moy`; crossing-like vertices are
/// widened into a merge and a split joined by a 2-colored edge).
pub fn resolve(d: &SliceDiagram, rho: &BalancedOrientation, sigma: &Resolution) -> Result<SliceDiagram> {
    require_unoriented(d)?;
    let t = d.topology();
    let sites = resolvable(d, &t, rho)?;
    if sites.len() != sigma.choices.len() || sites.iter().zip(&sigma.choices).any(|(s, c)| s.0 != c.0) {
        return Err(MoyError::Precondition("resolution does not match the orientation".into()));
    }
    let choice_at = |j: usize| sigma.choices.iter().find(|c| c.0 == j).map(|c| c.1);
    let flows_up = |l: usize, p: usize| {
        let a = &t.arcs[t.point_arc[l][p]];
        let i = a.points.iter().position(|&pt| pt == (l, p)).expect("point on arc");
        a.moving_up[i] == rho.forward[a.id]
    };
    let mut out = Vec::with_capacity(d.len() + 4);
    for (j, g) in d.slices().iter().enumerate() {
        let p = g.pos;
        match g.kind {
            GenKind::Cup => out.push(cup_toward(p, flows_up(j + 1, p))),
            GenKind::Cap => out.push(g.clone()),
            GenKind::Xo | GenKind::Xu | GenKind::V4 => {
                let legs_in = ins(&t, rho, j);
                let tl_up = !legs_in[2];
                match choice_at(j) {
                    Some(c) if is_vertical(g.kind, legs_in, c) => {}
                    Some(_) => out.extend([Generator::cap(p), cup_toward(p, tl_up)]),
                    None if g.kind != GenKind::V4 => out.push(g.clone()),
                    None if legs_in[0] == legs_in[1] => {
                        out.extend([Generator::mrg(p), Generator::spl(p, 1, 1)]);
                    }
                    None => out.extend([
                        cup_toward(p, tl_up),
                        Generator::mrg(p + 1),
                        Generator::spl(p + 1, 1, 1),
                        Generator::cap(p + 2),
                    ]),
                }
            }
            GenKind::Mrg | GenKind::Spl => unreachable!("unoriented diagrams have no trivalent vertices"),
        }
    }
    SliceDiagram::new(d.name.clone(), DiagramKind::Moy, out)
}

/// `[D_ρ, ς]`: `±(q − q⁻¹)` per top outward crossing (`A`: +, `B`: −) and
/// `q^{±1}` per non-crossing-like vertex (`L`: q, `R`: q⁻¹).
pub fn resolution_weight(sigma: &Resolution) -> HalfLaurent {
    sigma.choices.iter().fold(HalfLaurent::one(), |acc, &(_, c)| {
        acc * match c {
            Choice::A => HalfLaurent::z(),
            Choice::B => -HalfLaurent::z(),
            Choice::L => HalfLaurent::q_pow(1),
            Choice::R => HalfLaurent::q_pow(-1),
        }
    })
}

/// Rotation number of a resolved diagram.
pub fn resolved_rotation(r: &SliceDiagram) -> Result<i64> {
    let r2 = r.total_rotation2();
    if r2 % 2 != 0 {
        return Err(MoyError::Internal("half-integral rotation of a resolved diagram".into()));
    }
    Ok(r2 / 2)
}

/// The right-hand side of the Jaeger formula at `2N`.
pub fn jaeger_rhs_with(engine: &MoyEngine, d: &SliceDiagram, two_n: u32) -> Result<HalfLaurent> {
    if two_n == 0 || !two_n.is_multiple_of(2) {
        return Err(MoyError::Precondition(format!("2N must be positive and even, got {two_n}")));
    }
    let n = two_n / 2;
    let mut terms = Vec::new();
    for rho in balanced_orientations(d)? {
        if is_admissible(d, &rho)? {
            for sigma in resolutions(d, &rho)? {
                terms.push((rho.clone(), sigma));
            }
        }
    }
    let parts = terms
        .par_iter()
        .map(|(rho, sigma)| {
            let r = resolve(d, rho, sigma)?;
            let rot = resolved_rotation(&r)?;
            Ok(HalfLaurent::q_pow(-(n as i64 - 1) * rot) * resolution_weight(sigma) * r_n_with(engine, &r, n)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().sum())
}

pub fn jaeger_rhs(d: &SliceDiagram, two_n: u32) -> Result<HalfLaurent> {
    jaeger_rhs_with(&MoyEngine::new(), d, two_n)
}

#[cfg(test)]
mod tests;
