//! Planar diagrams presented as bottom-to-top words of elementary slices.
//!
//! A [`SliceDiagram`] is a sequence of [`Generator`]s. Each generator acts on one
//! or two adjacent points of the current horizontal level: cups create two
//! points, caps remove two, merges fuse two into one, splits do the reverse, and
//! crossings / rigid vertices act on two points without changing the width.
//! Colors and (for oriented diagrams) upward/downward flow of every point are
//! derived level by level when the diagram is built, which is also where every
//! consistency rule is checked.

mod edit;
mod parse;
mod topology;

use std::fmt;

pub use edit::{delete_arcs, drop_zero_edges, BridgeRule};
pub use parse::{parse_diagram, parse_diagrams};
pub use topology::{ArcInfo, Component, CrossingVisit, LegRef, Topology};

use crate::error::{MoyError, Result};

/// Elementary slice kinds, ordered for canonical word comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Cup,
    Cap,
    Mrg,
    Spl,
    Xo,
    Xu,
    V4,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::Cup => "cup",
            GenKind::Cap => "cap",
            GenKind::Mrg => "mrg",
            GenKind::Spl => "spl",
            GenKind::Xo => "xo",
            GenKind::Xu => "xu",
            GenKind::V4 => "v4",
        }
    }

    /// Number of points consumed below and produced above.
    pub fn arity(self) -> (usize, usize) {
        match self {
            GenKind::Cup => (0, 2),
            GenKind::Cap => (2, 0),
            GenKind::Mrg => (2, 1),
            GenKind::Spl => (1, 2),
            GenKind::Xo | GenKind::Xu | GenKind::V4 => (2, 2),
        }
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, GenKind::Xo | GenKind::Xu)
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, GenKind::Mrg | GenKind::Spl)
    }

    /// Number of legs of a junction generator (0 for cups and caps).
    pub fn legs(self) -> usize {
        match self {
            GenKind::Cup | GenKind::Cap => 0,
            GenKind::Mrg | GenKind::Spl => 3,
            _ => 4,
        }
    }
}

/// Orientation attribute of a cup: which of its two points flows upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    /// Left point up, right point down (a clockwise turn).
    Lu,
    /// Left point down, right point up (a counterclockwise turn).
    Ru,
}

/// One slice of a diagram word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub pos: usize,
    /// Strand color of a cup.
    pub color: Option<u32>,
    /// Orientation of a cup in oriented diagrams.
    pub orient: Option<Orient>,
    /// Output colors `(left, right)` of a split.
    pub split: Option<(u32, u32)>,
}

impl Generator {
    pub fn new(kind: GenKind, pos: usize) -> Self {
        Generator {
            kind,
            pos,
            color: None,
            orient: None,
            split: None,
        }
    }

    pub fn cup(pos: usize, color: u32, orient: Option<Orient>) -> Self {
        Generator {
            color: Some(color),
            orient,
            ..Self::new(GenKind::Cup, pos)
        }
    }

    /// An oriented cup whose left point flows upward iff `left_up`.
    pub fn cup_dir(pos: usize, color: u32, left_up: bool) -> Self {
        Self::cup(pos, color, Some(if left_up { Orient::Lu } else { Orient::Ru }))
    }

    pub fn cap(pos: usize) -> Self {
        Self::new(GenKind::Cap, pos)
    }

    pub fn mrg(pos: usize) -> Self {
        Self::new(GenKind::Mrg, pos)
    }

    pub fn spl(pos: usize, left: u32, right: u32) -> Self {
        Generator {
            split: Some((left, right)),
            ..Self::new(GenKind::Spl, pos)
        }
    }

    pub fn xo(pos: usize) -> Self {
        Self::new(GenKind::Xo, pos)
    }

    pub fn xu(pos: usize) -> Self {
        Self::new(GenKind::Xu, pos)
    }

    pub fn v4(pos: usize) -> Self {
        Self::new(GenKind::V4, pos)
    }

    /// Same generator at another position.
    pub fn at(&self, pos: usize) -> Self {
        Generator { pos, ..self.clone() }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.name(), self.pos)?;
        match self.kind {
            GenKind::Cup => {
                if let Some(c) = self.color.filter(|&c| c != 1) {
                    write!(f, " color={c}")?;
                }
                if let Some(o) = self.orient {
                    write!(f, " orient={}", if o == Orient::Lu { "lu" } else { "ru" })?;
                }
            }
            GenKind::Spl => {
                if let Some((l, r)) = self.split {
                    write!(f, " color={l},{r}")?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Diagram flavour: MOY graph (oriented, colored, trivalent vertices), oriented
/// colored link, or unoriented link / rigid-vertex graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramKind {
    Moy,
    Link,
    Unoriented,
}

impl DiagramKind {
    pub fn name(self) -> &'static str {
        match self {
            DiagramKind::Moy => "moy",
            DiagramKind::Link => "link",
            DiagramKind::Unoriented => "unoriented",
        }
    }

    pub fn is_oriented(self) -> bool {
        self != DiagramKind::Unoriented
    }
}

/// Color and flow direction of a point on a horizontal level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointState {
    pub color: u32,
    /// `Some(true)` if the strand flows upward through the point; `None` for
    /// unoriented diagrams.
    pub up: Option<bool>,
}

/// A validated closed diagram together with its derived point states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceDiagram {
    pub name: String,
    pub kind: DiagramKind,
    slices: Vec<Generator>,
    levels: Vec<Vec<PointState>>,
}

impl SliceDiagram {
    /// Builds and validates a diagram. Cup colors default to 1 and split colors
    /// default to an even split; both are stored explicitly afterwards.
    ///
    /// Zero colors are accepted here (they arise from relabelling); the text
    /// parser rejects them.
    pub fn new(name: impl Into<String>, kind: DiagramKind, slices: Vec<Generator>) -> Result<Self> {
        let mut slices = slices;
        let mut levels = vec![Vec::new()];
        for (i, g) in slices.iter_mut().enumerate() {
            let next = apply(kind, levels.last().expect("nonempty"), g).map_err(|rule| {
                MoyError::Validation {
                    slice: i,
                    generator: g.to_string(),
                    rule,
                }
            })?;
            levels.push(next);
        }
        if !levels.last().expect("nonempty").is_empty() {
            return Err(MoyError::Validation {
                slice: slices.len(),
                generator: "end".into(),
                rule: format!(
                    "diagram is not closed: {} open points at the top",
                    levels.last().expect("nonempty").len()
                ),
            });
        }
        Ok(SliceDiagram {
            name: name.into(),
            kind,
            slices,
            levels,
        })
    }

    pub fn slices(&self) -> &[Generator] {
        &self.slices
    }

    /// Point states of level `l` (the level below slice `l`; level
    /// `slices().len()` is the empty top).
    pub fn level(&self, l: usize) -> &[PointState] {
        &self.levels[l]
    }

    pub fn levels(&self) -> &[Vec<PointState>] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Same word with another kind tag and name, revalidated.
    pub fn with_slices(&self, slices: Vec<Generator>) -> Result<Self> {
        SliceDiagram::new(self.name.clone(), self.kind, slices)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        SliceDiagram {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn count(&self, pred: impl Fn(GenKind) -> bool) -> usize {
        self.slices.iter().filter(|g| pred(g.kind)).count()
    }

    pub fn num_crossings(&self) -> usize {
        self.count(GenKind::is_crossing)
    }

    pub fn max_color(&self) -> u32 {
        self.levels
            .iter()
            .flatten()
            .map(|p| p.color)
            .max()
            .unwrap_or(0)
    }

    /// The topological structure: arcs, legs and components.
    pub fn topology(&self) -> Topology {
        Topology::build(self)
    }

    /// Exchanges over and under at every crossing.
    pub fn mirror(&self) -> SliceDiagram {
        let slices = self
            .slices
            .iter()
            .map(|g| match g.kind {
                GenKind::Xo => Generator { kind: GenKind::Xu, ..g.clone() },
                GenKind::Xu => Generator { kind: GenKind::Xo, ..g.clone() },
                _ => g.clone(),
            })
            .collect();
        SliceDiagram {
            name: self.name.clone(),
            kind: self.kind,
            slices,
            levels: self.levels.clone(),
        }
    }

    /// The diagram turned by half a revolution in the plane.
    pub fn rotate180(&self) -> SliceDiagram {
        let mut out = Vec::with_capacity(self.slices.len());
        for (l, g) in self.slices.iter().enumerate().rev() {
            let below = &self.levels[l];
            let above = &self.levels[l + 1];
            let (_, o) = g.kind.arity();
            let pos = above.len() - g.pos - o;
            let ng = match g.kind {
                GenKind::Cap => {
                    let left = below[g.pos];
                    Generator::cup(pos, left.color, left.up.map(|u| if u { Orient::Lu } else { Orient::Ru }))
                }
                GenKind::Cup => Generator::cap(pos),
                GenKind::Mrg => Generator::spl(pos, below[g.pos + 1].color, below[g.pos].color),
                GenKind::Spl => Generator::mrg(pos),
                _ => g.at(pos),
            };
            out.push(ng);
        }
        SliceDiagram::new(self.name.clone(), self.kind, out).expect("rotation preserves validity")
    }

    /// Canonical form of the word used as a memoization key: zigzags are
    /// straightened and adjacent commuting generators are bubble-sorted toward
    /// the lexicographically smallest word.
    pub fn canonical(&self) -> SliceDiagram {
        let mut w = self.slices.clone();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < w.len() {
                let (a, b) = (&w[i], &w[i + 1]);
                let zigzag = a.kind == GenKind::Cup
                    && b.kind == GenKind::Cap
                    && (b.pos == a.pos + 1 || b.pos + 1 == a.pos);
                if zigzag {
                    w.drain(i..i + 2);
                    changed = true;
                    continue;
                }
                if let Some((nb, na)) = commute(a, b) {
                    if (&nb, &na) < (a, b) {
                        w[i] = nb;
                        w[i + 1] = na;
                        changed = true;
                    }
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        SliceDiagram::new(self.name.clone(), self.kind, w).expect("canonical moves preserve validity")
    }

    /// Memoization key: kind tag plus canonical word.
    pub fn key(&self) -> (DiagramKind, Vec<Generator>) {
        (self.kind, self.canonical().slices)
    }

    /// Serializes to the text format accepted by [`parse_diagram`].
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "diagram {} {{\n  kind: {}\n  slices:\n",
            self.name,
            self.kind.name()
        );
        for g in &self.slices {
            s.push_str("    ");
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s.push_str("}\n");
        s
    }

    /// Replaces slice `idx` by a sub-word and revalidates.
    pub fn splice(&self, idx: usize, sub: &[Generator], kind: DiagramKind) -> Result<SliceDiagram> {
        let mut w = Vec::with_capacity(self.slices.len() + sub.len());
        w.extend_from_slice(&self.slices[..idx]);
        w.extend_from_slice(sub);
        w.extend_from_slice(&self.slices[idx + 1..]);
        SliceDiagram::new(self.name.clone(), kind, w)
    }
}

/// Swaps two adjacent generators acting on disjoint points: returns the pair
/// `(b', a')` such that applying `b'` then `a'` equals applying `a` then `b`.
pub fn commute(a: &Generator, b: &Generator) -> Option<(Generator, Generator)> {
    let (ia, oa) = a.kind.arity();
    let (ib, ob) = b.kind.arity();
    if b.pos + ib <= a.pos {
        let shifted = a.pos + ob;
        Some((b.clone(), a.at(shifted.checked_sub(ib)?)))
    } else if b.pos >= a.pos + oa {
        Some((b.at(b.pos - oa + ia), a.clone()))
    } else {
        None
    }
}

/// Applies one generator to a level, returning the next level or the violated rule.
fn apply(kind: DiagramKind, cur: &[PointState], g: &mut Generator) -> std::result::Result<Vec<PointState>, String> {
    let w = cur.len();
    let (i, _) = g.kind.arity();
    if g.pos + i > w || (i == 0 && g.pos > w) {
        return Err(format!("position {} out of range for width {w}", g.pos));
    }
    let oriented = kind.is_oriented();
    let p = g.pos;
    let mut next: Vec<PointState> = Vec::with_capacity(w + 2);
    next.extend_from_slice(&cur[..p]);
    match g.kind {
        GenKind::Cup => {
            let c = *g.color.get_or_insert(1);
            if !oriented && c != 1 {
                return Err("unoriented diagrams carry no colors".into());
            }
            let (l, r) = match (oriented, g.orient) {
                (true, Some(Orient::Lu)) => (Some(true), Some(false)),
                (true, Some(Orient::Ru)) => (Some(false), Some(true)),
                (true, None) => return Err("cup in an oriented diagram needs orient=lu|ru".into()),
                (false, Some(_)) => return Err("orient given on an unoriented diagram".into()),
                (false, None) => (None, None),
            };
            next.push(PointState { color: c, up: l });
            next.push(PointState { color: c, up: r });
            next.extend_from_slice(&cur[p..]);
        }
        GenKind::Cap => {
            let (a, b) = (cur[p], cur[p + 1]);
            if a.color != b.color {
                return Err(format!("cap joins colors {} and {}", a.color, b.color));
            }
            if oriented && a.up == b.up {
                return Err("cap joins two points with the same flow direction".into());
            }
            next.extend_from_slice(&cur[p + 2..]);
        }
        GenKind::Mrg => {
            if kind == DiagramKind::Unoriented {
                return Err("merge vertices need an oriented diagram".into());
            }
            let (a, b) = (cur[p], cur[p + 1]);
            if a.up != b.up {
                return Err("merge legs flow in different vertical directions".into());
            }
            next.push(PointState { color: a.color + b.color, up: a.up });
            next.extend_from_slice(&cur[p + 2..]);
        }
        GenKind::Spl => {
            if kind == DiagramKind::Unoriented {
                return Err("split vertices need an oriented diagram".into());
            }
            let a = cur[p];
            let (l, r) = match g.split {
                Some((l, r)) if l + r == a.color => (l, r),
                Some((l, r)) => {
                    return Err(format!("split colors {l}+{r} do not sum to {}", a.color))
                }
                None if a.color.is_multiple_of(2) => (a.color / 2, a.color / 2),
                None => return Err(format!("split of odd color {} needs color=l,r", a.color)),
            };
            g.split = Some((l, r));
            next.push(PointState { color: l, up: a.up });
            next.push(PointState { color: r, up: a.up });
            next.extend_from_slice(&cur[p + 1..]);
        }
        GenKind::Xo | GenKind::Xu | GenKind::V4 => {
            if g.kind == GenKind::V4 && kind == DiagramKind::Link {
                return Err("rigid vertices are not allowed in link diagrams".into());
            }
            next.push(cur[p + 1]);
            next.push(cur[p]);
            next.extend_from_slice(&cur[p + 2..]);
        }
    }
    if g.kind != GenKind::Cup {
        g.color = None;
        g.orient = None;
    }
    if g.kind != GenKind::Spl {
        g.split = None;
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(o: Orient) -> SliceDiagram {
        SliceDiagram::new("c", DiagramKind::Link, vec![Generator::cup(0, 1, Some(o)), Generator::cap(0)]).unwrap()
    }

    #[test]
    fn smallest_closed_diagram() {
        let d = circle(Orient::Lu);
        assert_eq!(d.level(1)[0], PointState { color: 1, up: Some(true) });
        assert_eq!(d.level(1)[1], PointState { color: 1, up: Some(false) });
    }

    #[test]
    fn rejects_color_mismatch_at_cap() {
        let err = SliceDiagram::new(
            "bad",
            DiagramKind::Moy,
            vec![
                Generator::cup_dir(0, 1, true),
                Generator::cup_dir(2, 2, false),
                Generator::cap(1),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, MoyError::Validation { slice: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_open_and_inconsistent_words() {
        assert!(SliceDiagram::new("o", DiagramKind::Unoriented, vec![Generator::cup(0, 1, None)]).is_err());
        // the middle cap would join two downward points
        let w = vec![
            Generator::cup_dir(0, 1, true),
            Generator::cup_dir(2, 1, false),
            Generator::cap(1),
            Generator::cap(0),
        ];
        assert!(SliceDiagram::new("o", DiagramKind::Link, w).is_err());
        let w = vec![Generator::cup_dir(0, 1, true), Generator::mrg(0)];
        assert!(SliceDiagram::new("o", DiagramKind::Moy, w).is_err());
    }

    #[test]
    fn split_defaults_and_errors() {
        let w = vec![
            Generator::cup_dir(0, 2, false),
            Generator::new(GenKind::Spl, 1),
            Generator::mrg(1),
            Generator::cap(0),
        ];
        let d = SliceDiagram::new("theta", DiagramKind::Moy, w).unwrap();
        assert_eq!(d.slices()[1].split, Some((1, 1)));
        let w = vec![
            Generator::cup_dir(0, 3, false),
            Generator::new(GenKind::Spl, 1),
            Generator::mrg(1),
            Generator::cap(0),
        ];
        assert!(SliceDiagram::new("theta", DiagramKind::Moy, w).is_err());
    }

    #[test]
    fn commute_and_canonical() {
        let a = Generator::cup(0, 1, None);
        let b = Generator::cup(3, 1, None);
        let (nb, na) = commute(&a, &b).unwrap();
        assert_eq!((nb.pos, na.pos), (1, 0));
        let (x, y) = commute(&nb, &na).unwrap();
        assert_eq!((x, y), (a.clone(), b.clone()));
        // a zigzag straightens out
        let w = vec![
            Generator::cup(0, 1, None),
            Generator::cup(2, 1, None),
            Generator::cap(1),
            Generator::cap(0),
        ];
        let d = SliceDiagram::new("z", DiagramKind::Unoriented, w).unwrap();
        assert_eq!(d.canonical().len(), 2);
    }

    #[test]
    fn rotate180_is_an_involution() {
        let w = vec![
            Generator::cup_dir(0, 2, false),
            Generator::spl(1, 1, 1),
            Generator::mrg(1),
            Generator::cap(0),
        ];
        let d = SliceDiagram::new("theta", DiagramKind::Moy, w).unwrap();
        let r = d.rotate180();
        assert_ne!(r.slices(), d.slices());
        assert_eq!(r.rotate180().slices(), d.slices());
    }
}
