//! Word-level edits that remove whole arcs from a diagram.

use super::{DiagramKind, GenKind, Generator, Orient, SliceDiagram};
use crate::error::{MoyError, Result};

/// What to do with a trivalent vertex whose single side disappears.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeRule {
    /// Deleting the thick side of a vertex is an error.
    Forbid,
    /// A merge whose top leg is deleted becomes a cap of its bottom legs, and a
    /// split whose bottom leg is deleted becomes a cup of its top legs.
    Reconnect,
}

/// Deletes every arc with `doomed[arc] == true`. Vertices left with two legs
/// are smoothed away, and crossings with a deleted strand disappear.
pub fn delete_arcs(
    d: &SliceDiagram,
    doomed: &[bool],
    bridge: BridgeRule,
    out_kind: DiagramKind,
) -> Result<SliceDiagram> {
    let t = d.topology();
    let kept = |l: usize, q: usize| !doomed[t.point_arc[l][q]];
    let newpos = |l: usize, q: usize| (0..q).filter(|&i| kept(l, i)).count();
    let oriented = out_kind.is_oriented();
    let cup = |l: usize, p: usize, pos: usize| {
        let st = d.level(l)[p];
        if oriented {
            Generator::cup(pos, st.color, st.up.map(|u| if u { Orient::Lu } else { Orient::Ru }))
        } else {
            Generator::cup(pos, 1, None)
        }
    };
    let mut out = Vec::new();
    for (l, g) in d.slices().iter().enumerate() {
        let p = g.pos;
        let err = |what: &str| MoyError::Precondition(format!("slice {l} ({g}): {what}"));
        match g.kind {
            GenKind::Cup => {
                if kept(l + 1, p) {
                    out.push(cup(l + 1, p, newpos(l, p)));
                }
            }
            GenKind::Cap => {
                if kept(l, p) {
                    out.push(Generator::cap(newpos(l, p)));
                }
            }
            GenKind::Mrg => match (kept(l, p), kept(l, p + 1), kept(l + 1, p)) {
                (true, true, true) => out.push(Generator::mrg(newpos(l, p))),
                (true, true, false) => match bridge {
                    BridgeRule::Reconnect => out.push(Generator::cap(newpos(l, p))),
                    BridgeRule::Forbid => return Err(err("deleting the thick edge of a vertex")),
                },
                (false, false, true) => return Err(err("vertex keeps only its thick edge")),
                _ => {}
            },
            GenKind::Spl => match (kept(l, p), kept(l + 1, p), kept(l + 1, p + 1)) {
                (true, true, true) => {
                    let (a, b) = (d.level(l + 1)[p].color, d.level(l + 1)[p + 1].color);
                    out.push(Generator::spl(newpos(l, p), a, b));
                }
                (false, true, true) => match bridge {
                    BridgeRule::Reconnect => out.push(cup(l + 1, p, newpos(l, p))),
                    BridgeRule::Forbid => return Err(err("deleting the thick edge of a vertex")),
                },
                (true, false, false) => return Err(err("vertex keeps only its thick edge")),
                _ => {}
            },
            GenKind::Xo | GenKind::Xu | GenKind::V4 => {
                if kept(l, p) && kept(l, p + 1) {
                    out.push(g.at(newpos(l, p)));
                } else if g.kind == GenKind::V4 && (kept(l, p) || kept(l, p + 1)) {
                    return Err(err("rigid vertex with a deleted leg"));
                }
            }
        }
    }
    SliceDiagram::new(d.name.clone(), out_kind, out)
}

/// Removes all 0-colored edges (and the vertices they leave 2-valent).
pub fn drop_zero_edges(d: &SliceDiagram) -> Result<SliceDiagram> {
    let t = d.topology();
    if t.arcs.iter().all(|a| a.color > 0) {
        return Ok(d.clone());
    }
    let doomed: Vec<bool> = t.arcs.iter().map(|a| a.color == 0).collect();
    delete_arcs(d, &doomed, BridgeRule::Forbid, d.kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rungs_disappear() {
        let w = vec![
            Generator::cup_dir(0, 1, false),
            Generator::spl(1, 1, 0),
            Generator::mrg(1),
            Generator::cap(0),
        ];
        let d = SliceDiagram::new("z", DiagramKind::Moy, w).unwrap();
        let c = drop_zero_edges(&d).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.slices()[0].kind, GenKind::Cup);
    }
}
