//! Arcs, legs, components, rotation numbers, writhe and linking numbers.
//!
//! An *arc* is a maximal piece of strand between two junction legs (crossings,
//! trivalent vertices, rigid vertices); cups and caps are interior points. Arcs
//! are numbered in order of first appearance when scanning levels bottom to top
//! and points left to right.

use std::collections::HashMap;

use super::{GenKind, SliceDiagram};
use crate::error::{MoyError, Result};

/// A junction leg: generator index and leg number.
///
/// Legs are numbered bottom-left first: merges `0=BL, 1=BR, 2=T`; splits
/// `0=B, 1=TL, 2=TR`; crossings and rigid vertices `0=BL, 1=BR, 2=TL, 3=TR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegRef {
    pub gen: usize,
    pub leg: usize,
}

/// One arc of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcInfo {
    pub id: usize,
    pub color: u32,
    /// Points `(level, position)` in traversal order from `ends[0]` to `ends[1]`.
    pub points: Vec<(usize, usize)>,
    /// Whether the traversal moves upward at each point.
    pub moving_up: Vec<bool>,
    /// End legs; `None` for a closed arc without junctions.
    pub ends: Option<[LegRef; 2]>,
    /// Doubled turning of the arc along the traversal direction.
    pub turn2: i64,
}

impl ArcInfo {
    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }

    /// For oriented diagrams: does the flow agree with the traversal direction?
    pub fn flows_forward(&self, d: &SliceDiagram) -> bool {
        let (l, p) = self.points[0];
        d.level(l)[p].up == Some(self.moving_up[0])
    }

    /// Doubled turning along the flow (oriented diagrams).
    pub fn flow_turn2(&self, d: &SliceDiagram) -> i64 {
        if self.flows_forward(d) {
            self.turn2
        } else {
            -self.turn2
        }
    }
}

/// A crossing met while walking a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingVisit {
    pub gen: usize,
    /// Leg through which the walk enters the crossing.
    pub enter: usize,
    pub over: bool,
}

/// A closed curve through crossings: arcs with traversal direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// `(arc id, forward)` in walking order.
    pub arcs: Vec<(usize, bool)>,
}

/// The combinatorial structure of a diagram.
#[derive(Clone, Debug)]
pub struct Topology {
    pub arcs: Vec<ArcInfo>,
    /// `point_arc[l][p]` = arc containing point `(l, p)`.
    pub point_arc: Vec<Vec<usize>>,
    /// Arc and end index (0 or 1) of every junction leg.
    pub leg_arc: HashMap<LegRef, (usize, usize)>,
}

enum Step {
    Point(usize, usize, bool),
    Leg(LegRef),
}

fn step(d: &SliceDiagram, l: usize, p: usize, up: bool) -> Step {
    let pt = |l, p, up| Step::Point(l, p, up);
    if up {
        let g = &d.slices()[l];
        let gp = g.pos;
        let leg = |leg| Step::Leg(LegRef { gen: l, leg });
        match g.kind {
            GenKind::Cup => pt(l + 1, if p < gp { p } else { p + 2 }, true),
            GenKind::Cap => {
                if p == gp {
                    pt(l, gp + 1, false)
                } else if p == gp + 1 {
                    pt(l, gp, false)
                } else if p < gp {
                    pt(l + 1, p, true)
                } else {
                    pt(l + 1, p - 2, true)
                }
            }
            GenKind::Mrg => {
                if p == gp {
                    leg(0)
                } else if p == gp + 1 {
                    leg(1)
                } else if p < gp {
                    pt(l + 1, p, true)
                } else {
                    pt(l + 1, p - 1, true)
                }
            }
            GenKind::Spl => {
                if p == gp {
                    leg(0)
                } else if p < gp {
                    pt(l + 1, p, true)
                } else {
                    pt(l + 1, p + 1, true)
                }
            }
            GenKind::Xo | GenKind::Xu | GenKind::V4 => {
                if p == gp {
                    leg(0)
                } else if p == gp + 1 {
                    leg(1)
                } else {
                    pt(l + 1, p, true)
                }
            }
        }
    } else {
        let gi = l - 1;
        let g = &d.slices()[gi];
        let gp = g.pos;
        let leg = |leg| Step::Leg(LegRef { gen: gi, leg });
        match g.kind {
            GenKind::Cup => {
                if p == gp {
                    pt(l, gp + 1, true)
                } else if p == gp + 1 {
                    pt(l, gp, true)
                } else if p < gp {
                    pt(gi, p, false)
                } else {
                    pt(gi, p - 2, false)
                }
            }
            GenKind::Cap => pt(gi, if p < gp { p } else { p + 2 }, false),
            GenKind::Mrg => {
                if p == gp {
                    leg(2)
                } else if p < gp {
                    pt(gi, p, false)
                } else {
                    pt(gi, p + 1, false)
                }
            }
            GenKind::Spl => {
                if p == gp {
                    leg(1)
                } else if p == gp + 1 {
                    leg(2)
                } else if p < gp {
                    pt(gi, p, false)
                } else {
                    pt(gi, p - 1, false)
                }
            }
            GenKind::Xo | GenKind::Xu | GenKind::V4 => {
                if p == gp {
                    leg(2)
                } else if p == gp + 1 {
                    leg(3)
                } else {
                    pt(gi, p, false)
                }
            }
        }
    }
}

/// Walks from `(l, p)` in direction `up` until a leg is reached (returned) or
/// the walk comes back to the start (closed arc, returns `None`).
fn walk(d: &SliceDiagram, l: usize, p: usize, up: bool) -> (Vec<(usize, usize, bool)>, Option<LegRef>) {
    let mut out = Vec::new();
    let (mut cl, mut cp, mut cu) = (l, p, up);
    loop {
        match step(d, cl, cp, cu) {
            Step::Leg(leg) => return (out, Some(leg)),
            Step::Point(nl, np, nu) => {
                if (nl, np) == (l, p) {
                    return (out, None);
                }
                out.push((nl, np, nu));
                (cl, cp, cu) = (nl, np, nu);
            }
        }
    }
}

/// Doubled turning contributed by moving between two adjacent points of the
/// same level (a cup or cap traversal).
fn turn_between(p1: usize, up1: bool, p2: usize, up2: bool) -> i64 {
    match (up1, up2) {
        // down into a cup and back up: left-to-right is counterclockwise
        (false, true) => {
            if p1 < p2 {
                1
            } else {
                -1
            }
        }
        // up into a cap and back down: right-to-left is counterclockwise
        (true, false) => {
            if p1 > p2 {
                1
            } else {
                -1
            }
        }
        _ => 0,
    }
}

impl Topology {
    pub fn build(d: &SliceDiagram) -> Topology {
        let mut point_arc: Vec<Vec<usize>> = d.levels().iter().map(|lv| vec![usize::MAX; lv.len()]).collect();
        let mut arcs: Vec<ArcInfo> = Vec::new();
        let mut leg_arc = HashMap::new();
        for l in 0..d.levels().len() {
            for p in 0..d.level(l).len() {
                if point_arc[l][p] != usize::MAX {
                    continue;
                }
                let id = arcs.len();
                let (fwd, fwd_end) = walk(d, l, p, true);
                let (points, moving_up, ends) = match fwd_end {
                    None => {
                        let mut pts = vec![(l, p)];
                        let mut ups = vec![true];
                        for (a, b, u) in fwd {
                            pts.push((a, b));
                            ups.push(u);
                        }
                        (pts, ups, None)
                    }
                    Some(end1) => {
                        let (bwd, bwd_end) = walk(d, l, p, false);
                        let end0 = bwd_end.expect("an open arc is open in both directions");
                        let mut pts = Vec::new();
                        let mut ups = Vec::new();
                        for &(a, b, u) in bwd.iter().rev() {
                            pts.push((a, b));
                            ups.push(!u);
                        }
                        pts.push((l, p));
                        ups.push(true);
                        for (a, b, u) in fwd {
                            pts.push((a, b));
                            ups.push(u);
                        }
                        (pts, ups, Some([end0, end1]))
                    }
                };
                let mut turn2 = 0;
                let n = points.len();
                let pairs = if ends.is_none() { n } else { n - 1 };
                for i in 0..pairs {
                    let j = (i + 1) % n;
                    if points[i].0 == points[j].0 {
                        turn2 += turn_between(points[i].1, moving_up[i], points[j].1, moving_up[j]);
                    }
                }
                for &(a, b) in &points {
                    point_arc[a][b] = id;
                }
                if let Some([e0, e1]) = ends {
                    leg_arc.insert(e0, (id, 0));
                    leg_arc.insert(e1, (id, 1));
                }
                arcs.push(ArcInfo {
                    id,
                    color: d.level(l)[p].color,
                    points,
                    moving_up,
                    ends,
                    turn2,
                });
            }
        }
        Topology {
            arcs,
            point_arc,
            leg_arc,
        }
    }

    /// Arc id of a leg.
    pub fn arc_of(&self, leg: LegRef) -> usize {
        self.leg_arc[&leg].0
    }

    /// Components of a diagram whose junctions are all crossings; walks pass
    /// straight through crossings (`BL↔TR`, `BR↔TL`).
    pub fn components(&self, d: &SliceDiagram) -> Result<Vec<Component>> {
        if d.slices().iter().any(|g| g.kind.is_vertex() || g.kind == GenKind::V4) {
            return Err(MoyError::Precondition(
                "components are defined only for diagrams without vertices".into(),
            ));
        }
        let mut seen = vec![false; self.arcs.len()];
        let mut comps = Vec::new();
        for start in 0..self.arcs.len() {
            if seen[start] {
                continue;
            }
            let mut arcs = Vec::new();
            let (mut a, mut fwd) = (start, true);
            loop {
                seen[a] = true;
                arcs.push((a, fwd));
                let Some(ends) = self.arcs[a].ends else { break };
                let exit = if fwd { ends[1] } else { ends[0] };
                let through = LegRef {
                    gen: exit.gen,
                    leg: 3 - exit.leg,
                };
                let (na, end) = self.leg_arc[&through];
                a = na;
                fwd = end == 0;
                if a == start && fwd {
                    break;
                }
            }
            comps.push(Component { arcs });
        }
        Ok(comps)
    }

    /// Component index of every arc.
    pub fn arc_components(&self, comps: &[Component]) -> Vec<usize> {
        let mut out = vec![0; self.arcs.len()];
        for (i, c) in comps.iter().enumerate() {
            for &(a, _) in &c.arcs {
                out[a] = i;
            }
        }
        out
    }

    /// Doubled rotation number of a component walked in its stored direction.
    pub fn component_turn2(&self, c: &Component) -> i64 {
        c.arcs
            .iter()
            .map(|&(a, f)| if f { self.arcs[a].turn2 } else { -self.arcs[a].turn2 })
            .sum()
    }

    /// Walks a component starting at its first bottom-most point, moving up,
    /// and lists the crossings in the order met.
    pub fn based_walk(&self, d: &SliceDiagram, c: &Component) -> Vec<CrossingVisit> {
        // basepoint: lowest level, then leftmost
        let (mut best, mut best_arc, mut best_idx) = ((usize::MAX, usize::MAX), 0, 0);
        for &(a, _) in &c.arcs {
            for (i, &pt) in self.arcs[a].points.iter().enumerate() {
                if pt < best {
                    best = pt;
                    best_arc = a;
                    best_idx = i;
                }
            }
        }
        let arc = &self.arcs[best_arc];
        let Some(ends) = arc.ends else {
            return Vec::new();
        };
        let fwd0 = arc.moving_up[best_idx];
        let mut visits = Vec::new();
        let (mut a, mut fwd) = (best_arc, fwd0);
        let _ = ends;
        loop {
            let e = self.arcs[a].ends.expect("open arc");
            let exit = if fwd { e[1] } else { e[0] };
            let g = &d.slices()[exit.gen];
            let enter = exit.leg;
            let over = match g.kind {
                GenKind::Xo => enter == 0 || enter == 3,
                _ => enter == 1 || enter == 2,
            };
            visits.push(CrossingVisit {
                gen: exit.gen,
                enter,
                over,
            });
            let (na, end) = self.leg_arc[&LegRef {
                gen: exit.gen,
                leg: 3 - exit.leg,
            }];
            a = na;
            fwd = end == 0;
            if a == best_arc && fwd == fwd0 {
                break;
            }
        }
        visits
    }
}

impl SliceDiagram {
    /// Crossing sign from flow directions: `xo` with both strands upward is `+1`.
    pub fn crossing_sign(&self, gen: usize) -> Result<i64> {
        let g = &self.slices()[gen];
        let (bl, br) = (self.level(gen)[g.pos], self.level(gen)[g.pos + 1]);
        let (Some(bl_up), Some(br_up)) = (bl.up, br.up) else {
            return Err(MoyError::Precondition("crossing sign needs an oriented diagram".into()));
        };
        let s = |b: bool| if b { 1 } else { -1 };
        match g.kind {
            GenKind::Xo => Ok(s(bl_up) * s(br_up)),
            GenKind::Xu => Ok(-s(bl_up) * s(br_up)),
            _ => Err(MoyError::Precondition(format!("slice {gen} is not a crossing"))),
        }
    }

    fn require_link(&self) -> Result<()> {
        if !self.kind.is_oriented() {
            return Err(MoyError::Precondition("writhe needs an oriented diagram".into()));
        }
        if self.slices().iter().any(|g| g.kind.is_vertex() || g.kind == GenKind::V4) {
            return Err(MoyError::Precondition("writhe is defined for link diagrams without vertices".into()));
        }
        Ok(())
    }

    /// Sum of all crossing signs.
    pub fn writhe(&self) -> Result<i64> {
        self.require_link()?;
        (0..self.len())
            .filter(|&i| self.slices()[i].kind.is_crossing())
            .map(|i| self.crossing_sign(i))
            .sum()
    }

    /// Components of an oriented link diagram, ordered by first appearance and
    /// walked along the flow.
    pub fn link_components(&self) -> Result<(Topology, Vec<Component>)> {
        self.require_link()?;
        let t = self.topology();
        let comps = t
            .components(self)?
            .into_iter()
            .map(|c| {
                let (a, f) = c.arcs[0];
                if t.arcs[a].flows_forward(self) == f {
                    c
                } else {
                    reverse_component(&c)
                }
            })
            .collect();
        Ok((t, comps))
    }

    /// Sum of signs of crossings whose strands both lie on component `k`.
    pub fn self_writhe(&self, k: usize) -> Result<i64> {
        let (t, comps) = self.link_components()?;
        if k >= comps.len() {
            return Err(MoyError::Precondition(format!("no component {k}")));
        }
        let owner = t.arc_components(&comps);
        let mut w = 0;
        for (i, g) in self.slices().iter().enumerate() {
            if g.kind.is_crossing() {
                let a = owner[t.arc_of(LegRef { gen: i, leg: 0 })];
                let b = owner[t.arc_of(LegRef { gen: i, leg: 1 })];
                if a == k && b == k {
                    w += self.crossing_sign(i)?;
                }
            }
        }
        Ok(w)
    }

    /// Half the signed count of crossings between components `c1 ≠ c2`.
    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64> {
        let (t, comps) = self.link_components()?;
        if c1 == c2 || c1 >= comps.len() || c2 >= comps.len() {
            return Err(MoyError::Precondition(format!("invalid component pair ({c1}, {c2})")));
        }
        let owner = t.arc_components(&comps);
        let mut s = 0;
        for (i, g) in self.slices().iter().enumerate() {
            if g.kind.is_crossing() {
                let a = owner[t.arc_of(LegRef { gen: i, leg: 0 })];
                let b = owner[t.arc_of(LegRef { gen: i, leg: 1 })];
                if (a == c1 && b == c2) || (a == c2 && b == c1) {
                    s += self.crossing_sign(i)?;
                }
            }
        }
        if s % 2 != 0 {
            return Err(MoyError::Internal("odd inter-component crossing count".into()));
        }
        Ok(s / 2)
    }

    /// Rotation (Whitney index) of component `k` of an oriented link diagram
    /// by signed cup/cap counting.
    pub fn component_rotation(&self, k: usize) -> Result<i64> {
        let (t, comps) = self.link_components()?;
        let c = comps
            .get(k)
            .ok_or_else(|| MoyError::Precondition(format!("no component {k}")))?;
        let r2 = t.component_turn2(c);
        if r2 % 2 != 0 {
            return Err(MoyError::Internal("half-integral component rotation".into()));
        }
        Ok(r2 / 2)
    }

    /// Sum over all arcs of color times flow turning, halved: the rotation
    /// number of an oriented diagram or MOY graph.
    pub fn total_rotation2(&self) -> i64 {
        let t = self.topology();
        t.arcs
            .iter()
            .map(|a| a.flow_turn2(self) * a.color as i64)
            .sum()
    }
}

fn reverse_component(c: &Component) -> Component {
    let mut arcs: Vec<(usize, bool)> = c.arcs.iter().map(|&(a, f)| (a, !f)).collect();
    arcs.reverse();
    // keep the first-appearing arc first
    if let Some(i) = arcs.iter().position(|&(a, _)| a == c.arcs[0].0) {
        arcs.rotate_left(i);
    }
    Component { arcs }
}

#[cfg(test)]
mod tests {
    use crate::diagram::{parse_diagram, DiagramKind, Generator, SliceDiagram};

    fn d(text: &str) -> SliceDiagram {
        parse_diagram(text).unwrap()
    }

    const KINK: &str = "diagram kink { kind: link\n slices:\n cup 0 orient=ru\n cup 1 orient=ru\n xo 0\n cap 1\n cap 0\n }";

    #[test]
    fn arcs_of_basic_diagrams() {
        let c = SliceDiagram::new("c", DiagramKind::Unoriented, vec![Generator::cup(0, 1, None), Generator::cap(0)]).unwrap();
        let t = c.topology();
        assert_eq!(t.arcs.len(), 1);
        assert!(t.arcs[0].is_closed());
        assert_eq!(d(KINK).topology().arcs.len(), 2);
        let theta = d("diagram t { kind: moy\n slices:\n cup 0 color=2 orient=ru\n spl 1\n mrg 1\n cap 0\n }");
        assert_eq!(theta.topology().arcs.len(), 3);
    }

    #[test]
    fn circle_rotation() {
        let ccw = d("diagram c { kind: link\n slices: cup 0 orient=ru / cap 0 }");
        let cw = d("diagram c { kind: link\n slices: cup 0 orient=lu / cap 0 }");
        assert_eq!(ccw.component_rotation(0).unwrap(), 1);
        assert_eq!(cw.component_rotation(0).unwrap(), -1);
    }

    #[test]
    fn figure_eight_curve_has_rotation_zero() {
        // two lobes side by side turning in opposite senses
        let f8 = d("diagram f8 { kind: link\n slices:\n cup 0 orient=lu\n cup 2 orient=ru\n xo 1\n cap 2\n cap 0\n }");
        assert_eq!(f8.component_rotation(0).unwrap(), 0);
        assert_eq!(f8.writhe().unwrap(), 1);
        assert_eq!(f8.mirror().writhe().unwrap(), -1);
        // a curl nested inside its outer loop turns twice
        let k = d(KINK);
        assert_eq!(k.component_rotation(0).unwrap(), 2);
        assert_eq!(k.writhe().unwrap(), 1);
    }

    #[test]
    fn hopf_linking_number() {
        let hopf = d("diagram hopf { kind: link\n slices:\n cup 0 orient=lu\n cup 2 orient=ru\n xo 1\n xo 1\n cap 2\n cap 0\n }");
        assert_eq!(hopf.linking_number(0, 1).unwrap(), 1);
        assert_eq!(hopf.mirror().linking_number(0, 1).unwrap(), -1);
        assert_eq!(hopf.writhe().unwrap(), 2);
    }
}
