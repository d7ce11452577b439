//! Structural rewrites: reversing simple circuits and link components, coloring
//! a link by 2, and shrinking a mostly 2-colored MOY graph to its 4-valent
//! shadow.
//!
//! Reversal flips the flow along a set of arcs and replaces every color `k`
//! there by `N − k`. A vertex on the reversed circuit ends up with thin legs
//! flowing in opposite vertical directions; it is rewritten as a vertex of the
//! other kind plus a cup or cap, keeping the width of every level, and edges
//! colored 0 are erased afterwards.

use crate::diagram::{
    commute, delete_arcs, drop_zero_edges, BridgeRule, DiagramKind, GenKind, Generator, LegRef, Orient,
    PointState, SliceDiagram, Topology,
};
use crate::error::{MoyError, Result};
use crate::laurent::HalfLaurent;
use crate::moy_bracket::{vertex_legs, MoyEngine};

/// A coherently oriented embedded cycle of arcs, listed along the flow and
/// starting from the smallest arc id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleCircuit {
    pub arcs: Vec<usize>,
}

fn cup_dir(pos: usize, color: u32, left_up: bool) -> Generator {
    Generator::cup(pos, color, Some(if left_up { Orient::Lu } else { Orient::Ru }))
}

/// Arcs that may follow `a` along the flow.
fn successors(d: &SliceDiagram, t: &Topology, a: usize) -> Result<Vec<usize>> {
    let arc = &t.arcs[a];
    let Some(ends) = arc.ends else { return Ok(vec![a]) };
    let head = if arc.flows_forward(d) { ends[1] } else { ends[0] };
    let g = &d.slices()[head.gen];
    match g.kind {
        GenKind::Xo | GenKind::Xu => Ok(vec![t.arc_of(LegRef {
            gen: head.gen,
            leg: 3 - head.leg,
        })]),
        GenKind::Mrg | GenKind::Spl => {
            let (e, e1, e2) = vertex_legs(d, head.gen)?;
            if head == e {
                Ok(vec![t.arc_of(e1), t.arc_of(e2)])
            } else {
                Ok(vec![t.arc_of(e)])
            }
        }
        _ => Err(MoyError::Precondition(format!(
            "slice {} ({g}) cannot lie on a simple circuit",
            head.gen
        ))),
    }
}

/// All simple circuits of an oriented diagram.
pub fn simple_circuits(d: &SliceDiagram) -> Result<Vec<SimpleCircuit>> {
    if !d.kind.is_oriented() {
        return Err(MoyError::Precondition("simple circuits need an oriented diagram".into()));
    }
    let t = d.topology();
    let succ: Vec<Vec<usize>> = (0..t.arcs.len()).map(|a| successors(d, &t, a)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for s in 0..t.arcs.len() {
        let mut path = vec![s];
        let mut on_path = vec![false; t.arcs.len()];
        on_path[s] = true;
        extend_circuits(s, &succ, &mut path, &mut on_path, &mut out);
    }
    Ok(out)
}

fn extend_circuits(
    s: usize,
    succ: &[Vec<usize>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<SimpleCircuit>,
) {
    let last = *path.last().expect("nonempty path");
    for &b in &succ[last] {
        if b == s {
            out.push(SimpleCircuit { arcs: path.clone() });
        } else if b > s && !on_path[b] {
            on_path[b] = true;
            path.push(b);
            extend_circuits(s, succ, path, on_path, out);
            path.pop();
            on_path[b] = false;
        }
    }
}

/// Reverses flow and complements colors (`k ↦ N − k`) on the arcs with
/// `flip[a]`, then erases 0-colored edges.
pub fn reverse_arcs(d: &SliceDiagram, flip: &[bool], n: u32) -> Result<SliceDiagram> {
    if !d.kind.is_oriented() {
        return Err(MoyError::Precondition("reversal needs an oriented diagram".into()));
    }
    let t = d.topology();
    if let Some(a) = t.arcs.iter().find(|a| flip[a.id] && a.color > n) {
        return Err(MoyError::Precondition(format!("arc {} has color {} > N = {n}", a.id, a.color)));
    }
    let st = |l: usize, p: usize| -> PointState {
        let s = d.level(l)[p];
        if flip[t.point_arc[l][p]] {
            PointState {
                color: n - s.color,
                up: s.up.map(|u| !u),
            }
        } else {
            s
        }
    };
    let up = |s: PointState| s.up == Some(true);
    let mut out = Vec::with_capacity(d.len() + 4);
    for (l, g) in d.slices().iter().enumerate() {
        let p = g.pos;
        match g.kind {
            GenKind::Cup => {
                let s = st(l + 1, p);
                out.push(cup_dir(p, s.color, up(s)));
            }
            GenKind::Mrg => {
                let (b0, b1, top) = (st(l, p), st(l, p + 1), st(l + 1, p));
                if b0.up == b1.up {
                    out.push(Generator::mrg(p));
                } else if top.up == b0.up {
                    out.extend([Generator::spl(p, top.color, b1.color), Generator::cap(p + 1)]);
                } else {
                    out.extend([Generator::spl(p + 1, b0.color, top.color), Generator::cap(p)]);
                }
            }
            GenKind::Spl => {
                let (b, t0, t1) = (st(l, p), st(l + 1, p), st(l + 1, p + 1));
                if t0.up == t1.up {
                    out.push(Generator::spl(p, t0.color, t1.color));
                } else if b.up == t1.up {
                    out.extend([cup_dir(p, t0.color, up(t0)), Generator::mrg(p + 1)]);
                } else {
                    out.extend([cup_dir(p + 1, t1.color, !up(t1)), Generator::mrg(p)]);
                }
            }
            _ => out.push(g.clone()),
        }
    }
    drop_zero_edges(&SliceDiagram::new(d.name.clone(), d.kind, out)?)
}

/// `Γ′`: the graph with `Δ` reversed and recolored with respect to `N`.
pub fn reverse_circuit(d: &SliceDiagram, c: &SimpleCircuit, n: u32) -> Result<SliceDiagram> {
    if !simple_circuits(d)?.contains(c) {
        return Err(MoyError::Precondition(format!("{:?} is not a simple circuit", c.arcs)));
    }
    let mut flip = vec![false; d.topology().arcs.len()];
    for &a in &c.arcs {
        flip[a] = true;
    }
    reverse_arcs(d, &flip, n)
}

fn component_color(d: &SliceDiagram, k: usize) -> Result<(Topology, Vec<bool>, u32)> {
    let (t, comps) = d.link_components()?;
    let comp = comps
        .get(k)
        .ok_or_else(|| MoyError::Precondition(format!("no component {k}")))?;
    let mut member = vec![false; t.arcs.len()];
    for &(a, _) in &comp.arcs {
        member[a] = true;
    }
    let color = t.arcs[comp.arcs[0].0].color;
    Ok((t, member, color))
}

/// `s = (N − 2c(K))·w(K) − 2·Σ_{K′≠K} c(K′)·lk(K, K′)`.
pub fn reversal_shift(l: &SliceDiagram, k: usize, n: u32) -> Result<i64> {
    let (t, _, c) = component_color(l, k)?;
    let (_, comps) = l.link_components()?;
    let mut s = (n as i64 - 2 * c as i64) * l.self_writhe(k)?;
    for (j, other) in comps.iter().enumerate() {
        if j != k {
            let cj = t.arcs[other.arcs[0].0].color as i64;
            s -= 2 * cj * l.linking_number(k, j)?;
        }
    }
    Ok(s)
}

/// `L′`: component `k` reversed and recolored `c ↦ N − c`.
pub fn reverse_component(l: &SliceDiagram, k: usize, n: u32) -> Result<SliceDiagram> {
    let (_, member, _) = component_color(l, k)?;
    reverse_arcs(l, &member, n)
}

/// Both sides of `⟨L′⟩_N = (−1)^{N·w(K)} q^{−s} ⟨L⟩_N`.
pub fn component_reversal_sides(
    engine: &MoyEngine,
    l: &SliceDiagram,
    k: usize,
    n: u32,
) -> Result<(HalfLaurent, HalfLaurent)> {
    let s = reversal_shift(l, k, n)?;
    let w = l.self_writhe(k)?;
    let sign = if (n as i64 * w).rem_euclid(2) == 0 { 1 } else { -1 };
    let lhs = engine.knotted(&reverse_component(l, k, n)?, n)?;
    let rhs = HalfLaurent::monomial(sign, -2 * s) * engine.knotted(l, n)?;
    Ok((lhs, rhs))
}

pub fn check_component_reversal(l: &SliceDiagram, k: usize, n: u32) -> Result<bool> {
    let (a, b) = component_reversal_sides(&MoyEngine::new(), l, k, n)?;
    Ok(a == b)
}

/// `⟨D′⟩_N / ⟨D⟩_N` as `(sign, doubled exponent)`, or `None` if the ratio is
/// not a monomial.
pub fn monomial_relation(d: &SliceDiagram, c: &SimpleCircuit, n: u32) -> Result<Option<(i8, i64)>> {
    let engine = MoyEngine::new();
    let before = engine.knotted(d, n)?;
    let after = engine.knotted(&reverse_circuit(d, c, n)?, n)?;
    after.monomial_ratio(&before)
}

/// Orients an unoriented link diagram along its component walks (reversed for
/// components with `flip[k]`) and colors every strand by `color`.
pub fn orient_components(d: &SliceDiagram, flip: &[bool], color: u32) -> Result<SliceDiagram> {
    if d.kind != DiagramKind::Unoriented {
        return Err(MoyError::Precondition("expected an unoriented link diagram".into()));
    }
    let t = d.topology();
    let comps = t.components(d)?;
    if flip.len() != comps.len() {
        return Err(MoyError::Precondition(format!(
            "{} orientation choices for {} components",
            flip.len(),
            comps.len()
        )));
    }
    let mut fwd = vec![true; t.arcs.len()];
    for (k, c) in comps.iter().enumerate() {
        for &(a, f) in &c.arcs {
            fwd[a] = f != flip[k];
        }
    }
    let slices = d
        .slices()
        .iter()
        .enumerate()
        .map(|(l, g)| {
            if g.kind != GenKind::Cup {
                return g.clone();
            }
            let a = &t.arcs[t.point_arc[l + 1][g.pos]];
            let i = a.points.iter().position(|&pt| pt == (l + 1, g.pos)).expect("point on arc");
            cup_dir(g.pos, color, a.moving_up[i] == fwd[a.id])
        })
        .collect();
    SliceDiagram::new(d.name.clone(), DiagramKind::Link, slices)
}

/// `L^{(2)}_ρ`: every component colored 2, oriented along its walk unless
/// flipped.
pub fn two_color(l: &SliceDiagram, flip: &[bool]) -> Result<SliceDiagram> {
    orient_components(l, flip, 2)
}

/// Indices of the four vertices of every 1/3-colored square.
fn find_squares(t: &Topology) -> Result<Vec<[usize; 4]>> {
    let legs_of = |gen: usize| -> Vec<LegRef> { (0..3).map(|leg| LegRef { gen, leg }).collect() };
    let other_end = |a: usize, from: LegRef| -> Option<LegRef> {
        let ends = t.arcs[a].ends?;
        Some(if ends[0] == from { ends[1] } else { ends[0] })
    };
    // the 1-colored neighbour of a vertex through its 1-colored leg
    let one_leg = |gen: usize, skip: usize| -> Option<(LegRef, usize)> {
        legs_of(gen)
            .into_iter()
            .filter(|&l| t.arc_of(l) != skip && t.arcs[t.arc_of(l)].color == 1)
            .map(|l| (l, t.arc_of(l)))
            .next()
    };
    let mut out = Vec::new();
    for a in &t.arcs {
        if a.color != 3 {
            continue;
        }
        let Some([b, c]) = a.ends else {
            return Err(MoyError::Precondition(format!("arc {} is a 3-colored circle", a.id)));
        };
        let bad = || MoyError::Precondition(format!("3-colored arc {} is not the side of a square", a.id));
        let (lb, ab) = one_leg(b.gen, a.id).ok_or_else(bad)?;
        let (lc, ac) = one_leg(c.gen, a.id).ok_or_else(bad)?;
        let x = other_end(ab, lb).ok_or_else(bad)?;
        let y = other_end(ac, lc).ok_or_else(bad)?;
        let joined = legs_of(x.gen).into_iter().any(|l| {
            let arc = t.arc_of(l);
            arc != ab && t.arcs[arc].color == 1 && other_end(arc, l).map(|e| e.gen) == Some(y.gen)
        });
        if !joined || x.gen == y.gen {
            return Err(bad());
        }
        let mut v = [b.gen, c.gen, x.gen, y.gen];
        v.sort_unstable();
        out.push(v);
    }
    Ok(out)
}

/// Moves the generators at `block` (sorted indices) next to each other by
/// commuting the generators in between out of the way.
fn gather(word: &mut Vec<Generator>, block: &[usize]) -> Option<usize> {
    let mut member = vec![false; word.len()];
    for &i in block {
        member[i] = true;
    }
    let (first, last) = (block[0], *block.last()?);
    // push outsiders below the first block generator, else above the last
    let mut lo = first;
    let mut hi = last;
    let mut i = first + 1;
    while i < hi {
        if member[i] {
            i += 1;
            continue;
        }
        // try sinking word[i] to position lo
        let mut j = i;
        let mut w2 = word.clone();
        let mut ok = true;
        while j > lo {
            match commute(&w2[j - 1], &w2[j]) {
                Some((nb, na)) => {
                    w2[j - 1] = nb;
                    w2[j] = na;
                    j -= 1;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            *word = w2;
            member.remove(i);
            member.insert(lo, false);
            lo += 1;
            i += 1;
            continue;
        }
        // otherwise float it above position hi
        let mut j = i;
        let mut w2 = word.clone();
        while j < hi {
            let (nb, na) = commute(&w2[j], &w2[j + 1])?;
            w2[j] = nb;
            w2[j + 1] = na;
            j += 1;
        }
        *word = w2;
        let m = member.remove(i);
        member.insert(hi, m);
        hi -= 1;
    }
    Some(lo)
}

/// `G(Γ)` of a mostly 2-colored MOY graph: squares shrink to rigid vertices,
/// 4-colored edges are removed (their vertices become a cap and a cup), and
/// colors and orientations are forgotten.
pub fn graph_shadow(d: &SliceDiagram) -> Result<SliceDiagram> {
    if d.kind != DiagramKind::Moy || d.num_crossings() > 0 {
        return Err(MoyError::Precondition("graph shadows are defined for planar MOY graphs".into()));
    }
    let mut cur = d.clone();
    loop {
        let t = cur.topology();
        let squares = find_squares(&t)?;
        let Some(sq) = squares.first() else { break };
        let mut word = cur.slices().to_vec();
        let where_ = || MoyError::Precondition(format!("square at slices {sq:?} is not in ladder position"));
        let lo = gather(&mut word, sq).ok_or_else(where_)?;
        let block = SliceDiagram::new("", DiagramKind::Moy, word.clone()).map_err(|_| where_())?;
        let pos = (lo..lo + 4).map(|i| block.slices()[i].pos).min().expect("four slices");
        let ok = block.level(lo).len() == block.level(lo + 4).len()
            && (lo..lo + 4).all(|i| {
                let g = &block.slices()[i];
                g.pos == pos || g.pos == pos + 1
            });
        if !ok {
            return Err(where_());
        }
        word.splice(lo..lo + 4, [Generator::v4(pos)]);
        cur = SliceDiagram::new(d.name.clone(), DiagramKind::Moy, word)?;
    }
    let t = cur.topology();
    for a in &t.arcs {
        let thick = |l: LegRef, kind: GenKind, leg: usize| cur.slices()[l.gen].kind == kind && l.leg == leg;
        let ok = match a.color {
            2 => true,
            4 => matches!(a.ends, Some([x, y]) if
                (thick(x, GenKind::Mrg, 2) && thick(y, GenKind::Spl, 0))
                || (thick(y, GenKind::Mrg, 2) && thick(x, GenKind::Spl, 0))),
            _ => false,
        };
        if !ok {
            let at = a.points.first().copied().unwrap_or((0, 0));
            return Err(MoyError::Precondition(format!(
                "arc {} (color {}, near slice {}, position {}) is not part of a mostly 2-colored configuration",
                a.id, a.color, at.0, at.1
            )));
        }
    }
    // every vertex now has a 4-colored thick edge; removing it turns merges
    // into caps and splits into cups
    let doomed: Vec<bool> = t.arcs.iter().map(|a| a.color == 4).collect();
    delete_arcs(&cur, &doomed, BridgeRule::Reconnect, DiagramKind::Unoriented)
}

#[cfg(test)]
mod tests;
