//! The `sl(N)` MOY graph polynomial.
//!
//! A planar MOY graph is evaluated as a state sum: every edge of color `c`
//! receives a `c`-element subset of `𝒩 = {2k−N+1 | 0 ≤ k < N}`, subsets are
//! disjoint and unite at every vertex, and a state contributes
//! `Π_v q^{wt(v)} · q^{rot(φ)}` with `wt(v) = c₁c₂/2 − π(φ(e₁), φ(e₂))`.
//!
//! The rotation of a state is accumulated edge by edge: an edge that turns by
//! `τ(e)` (half-turns of cups and caps, measured along the flow) contributes
//! `τ(e)·Σφ(e)`. Regrouping by labels shows this equals `Σ_x x·rot(circuit_x)`.
//!
//! [`bracket_planar`] runs the state sum as a transfer-matrix sweep from the
//! bottom of the slice word to the top; [`states`] enumerates whole states by
//! backtracking and serves as an independent check. Knotted graphs are expanded
//! crossing by crossing into linear combinations of planar graphs.

use std::collections::HashMap;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::diagram::{drop_zero_edges, DiagramKind, GenKind, Generator, LegRef, SliceDiagram, Topology};
use crate::error::{MoyError, Result};
use crate::laurent::HalfLaurent;

/// A subset of `𝒩` stored as a bitmask over `k` (element `2k − N + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(pub u16);

impl ColorSet {
    pub fn from_elements(elems: &[i64], n: u32) -> Self {
        ColorSet(elems.iter().fold(0, |m, &x| m | 1 << ((x + n as i64 - 1) / 2)))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self, n: u32) -> Vec<i64> {
        (0..n).filter(|k| self.0 >> k & 1 == 1).map(|k| 2 * k as i64 - n as i64 + 1).collect()
    }

    /// `Σ_{x∈A} x`.
    pub fn sum(self, n: u32) -> i64 {
        let mut s = 0;
        for k in 0..n {
            if self.0 >> k & 1 == 1 {
                s += 2 * k as i64 - n as i64 + 1;
            }
        }
        s
    }
}

/// `π(A, B) = #{(a, b) ∈ A × B | a > b}`.
pub fn pi_count(a: ColorSet, b: ColorSet) -> u32 {
    let mut count = 0;
    let mut m = a.0;
    while m != 0 {
        let k = m.trailing_zeros();
        count += (b.0 & ((1u16 << k) - 1)).count_ones();
        m &= m - 1;
    }
    count
}

fn subsets_of_size(n: u32, c: u32) -> Vec<u16> {
    (0u32..1 << n).filter(|m| m.count_ones() == c).map(|m| m as u16).collect()
}

/// A state: one color set per arc (indexed by arc id).
pub type State = Vec<ColorSet>;

/// Legs `(e, e₁, e₂)` of a trivalent vertex: `e` is the thick side and `e₁` is
/// on the left when looking along the flow. For upward flow that is the leg at
/// the smaller position; for downward flow, the larger.
pub fn vertex_legs(d: &SliceDiagram, gen: usize) -> Result<(LegRef, LegRef, LegRef)> {
    let g = &d.slices()[gen];
    let leg = |leg| LegRef { gen, leg };
    let up = d.level(gen)[g.pos].up.ok_or_else(|| {
        MoyError::Precondition("vertex legs need an oriented diagram".into())
    })?;
    match g.kind {
        GenKind::Mrg if up => Ok((leg(2), leg(0), leg(1))),
        GenKind::Mrg => Ok((leg(2), leg(1), leg(0))),
        GenKind::Spl if up => Ok((leg(0), leg(1), leg(2))),
        GenKind::Spl => Ok((leg(0), leg(2), leg(1))),
        _ => Err(MoyError::Precondition(format!("slice {gen} is not a trivalent vertex"))),
    }
}

/// Doubled vertex weight `c₁c₂ − 2π(φ(e₁), φ(e₂))`.
pub fn vertex_weight2(phi1: ColorSet, phi2: ColorSet) -> i64 {
    (phi1.len() * phi2.len()) as i64 - 2 * pi_count(phi1, phi2) as i64
}

fn require_planar(d: &SliceDiagram) -> Result<()> {
    if !d.kind.is_oriented() {
        return Err(MoyError::Precondition("MOY graphs are oriented".into()));
    }
    if let Some(i) = d.slices().iter().position(|g| g.kind.is_crossing() || g.kind == GenKind::V4) {
        return Err(MoyError::Precondition(format!(
            "slice {i} ({}) is not allowed in a planar MOY graph",
            d.slices()[i]
        )));
    }
    Ok(())
}

/// All admissible states of a planar MOY graph, by backtracking over arcs.
pub fn states(d: &SliceDiagram, n: u32) -> Result<Vec<State>> {
    require_planar(d)?;
    let t = d.topology();
    if n > 16 {
        return Err(MoyError::Precondition("N is limited to 16".into()));
    }
    if t.arcs.iter().any(|a| a.color > n) {
        return Ok(Vec::new());
    }
    let vertices: Vec<(usize, usize, usize)> = (0..d.len())
        .filter(|&i| d.slices()[i].kind.is_vertex())
        .map(|i| {
            let (e, e1, e2) = vertex_legs(d, i)?;
            Ok((t.arc_of(e), t.arc_of(e1), t.arc_of(e2)))
        })
        .collect::<Result<_>>()?;
    let choices: Vec<Vec<u16>> = t.arcs.iter().map(|a| subsets_of_size(n, a.color)).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Option<ColorSet>> = vec![None; t.arcs.len()];
    fn consistent(v: &[(usize, usize, usize)], cur: &[Option<ColorSet>]) -> bool {
        v.iter().all(|&(e, a, b)| match (cur[e], cur[a], cur[b]) {
            (Some(x), Some(y), Some(z)) => y.0 & z.0 == 0 && (y.0 | z.0) == x.0,
            (Some(x), Some(y), None) | (Some(x), None, Some(y)) => y.0 & !x.0 == 0,
            (None, Some(y), Some(z)) => y.0 & z.0 == 0,
            _ => true,
        })
    }
    fn rec(
        i: usize,
        choices: &[Vec<u16>],
        v: &[(usize, usize, usize)],
        cur: &mut Vec<Option<ColorSet>>,
        out: &mut Vec<State>,
    ) {
        if i == choices.len() {
            out.push(cur.iter().map(|c| c.expect("assigned")).collect());
            return;
        }
        for &m in &choices[i] {
            cur[i] = Some(ColorSet(m));
            if consistent(v, cur) {
                rec(i + 1, choices, v, cur, out);
            }
        }
        cur[i] = None;
    }
    rec(0, &choices, &vertices, &mut cur, &mut out);
    Ok(out)
}

/// Doubled rotation `2·rot(φ) = Σ_e τ₂(e)·Σφ(e)` of a state.
pub fn state_rotation2(d: &SliceDiagram, t: &Topology, phi: &State, n: u32) -> i64 {
    t.arcs
        .iter()
        .map(|a| a.flow_turn2(d) * phi[a.id].sum(n))
        .sum()
}

/// `rot(φ)`; always an integer because label circuits are closed curves.
pub fn state_rotation(d: &SliceDiagram, phi: &State, n: u32) -> Result<i64> {
    let r2 = state_rotation2(d, &d.topology(), phi, n);
    if r2 % 2 != 0 {
        return Err(MoyError::Internal("half-integral state rotation".into()));
    }
    Ok(r2 / 2)
}

/// Doubled total exponent `Σ_v 2wt(v) + 2rot(φ)` of one state.
pub fn state_exponent2(d: &SliceDiagram, t: &Topology, phi: &State, n: u32) -> Result<i64> {
    let mut e = state_rotation2(d, t, phi, n);
    for i in 0..d.len() {
        if d.slices()[i].kind.is_vertex() {
            let (_, e1, e2) = vertex_legs(d, i)?;
            e += vertex_weight2(phi[t.arc_of(e1)], phi[t.arc_of(e2)]);
        }
    }
    Ok(e)
}

/// Rotation number `rot(Γ) = Σ_e τ(e)·c(e)`, the total rotation of the circles
/// of any state's cable.
pub fn graph_rotation(d: &SliceDiagram) -> Result<i64> {
    require_planar(d)?;
    let r2 = d.total_rotation2();
    if r2 % 2 != 0 {
        return Err(MoyError::Internal("half-integral graph rotation".into()));
    }
    Ok(r2 / 2)
}

/// The MOY bracket by explicit enumeration of states (reference evaluator).
pub fn bracket_by_states(d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    let t = d.topology();
    let mut acc = HalfLaurent::zero();
    for phi in states(d, n)? {
        acc.add_term(1.into(), state_exponent2(d, &t, &phi, n)?);
    }
    Ok(acc)
}

/// `⟨Γ⟩_N` of a planar MOY graph, by a bottom-to-top transfer sweep.
pub fn bracket_planar(d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    require_planar(d)?;
    if n > 16 {
        return Err(MoyError::Precondition("N is limited to 16".into()));
    }
    if d.max_color() > n {
        return Ok(HalfLaurent::zero());
    }
    let sub: Vec<Vec<u16>> = (0..=n).map(|c| subsets_of_size(n, c)).collect();
    let sums: Vec<i64> = (0u32..1 << n).map(|m| ColorSet(m as u16).sum(n)).collect();
    let mut table: HashMap<Vec<u16>, HashMap<i64, i64>> = HashMap::new();
    table.insert(Vec::new(), HashMap::from([(0, 1)]));
    for (l, g) in d.slices().iter().enumerate() {
        let below = d.level(l);
        let p = g.pos;
        let mut next: HashMap<Vec<u16>, HashMap<i64, i64>> = HashMap::new();
        let mut push = |key: Vec<u16>, poly: &HashMap<i64, i64>, shift: i64| {
            let slot = next.entry(key).or_default();
            for (e, c) in poly {
                let v = slot.entry(e + shift).or_insert(0);
                *v = v.checked_add(*c).expect("state count overflow");
            }
        };
        for (key, poly) in &table {
            match g.kind {
                GenKind::Cup => {
                    let st = d.level(l + 1)[p];
                    let turn = if st.up == Some(true) { -1 } else { 1 };
                    for &m in &sub[st.color as usize] {
                        let mut k = key.clone();
                        k.splice(p..p, [m, m]);
                        push(k, poly, turn * sums[m as usize]);
                    }
                }
                GenKind::Cap => {
                    if key[p] != key[p + 1] {
                        continue;
                    }
                    let turn = if below[p + 1].up == Some(true) { 1 } else { -1 };
                    let m = key[p];
                    let mut k = key.clone();
                    k.drain(p..p + 2);
                    push(k, poly, turn * sums[m as usize]);
                }
                GenKind::Mrg => {
                    let (a, b) = (ColorSet(key[p]), ColorSet(key[p + 1]));
                    if a.0 & b.0 != 0 {
                        continue;
                    }
                    let (e1, e2) = if below[p].up == Some(true) { (a, b) } else { (b, a) };
                    let mut k = key.clone();
                    k.splice(p..p + 2, [a.0 | b.0]);
                    push(k, poly, vertex_weight2(e1, e2));
                }
                GenKind::Spl => {
                    let s = key[p];
                    let (lc, _) = g.split.expect("validated split");
                    let up = below[p].up == Some(true);
                    let mut a = s;
                    loop {
                        if a.count_ones() == lc {
                            let (x, y) = (ColorSet(a), ColorSet(s & !a));
                            let (e1, e2) = if up { (x, y) } else { (y, x) };
                            let mut k = key.clone();
                            k.splice(p..p + 1, [x.0, y.0]);
                            push(k, poly, vertex_weight2(e1, e2));
                        }
                        if a == 0 {
                            break;
                        }
                        a = (a - 1) & s;
                    }
                }
                _ => unreachable!("checked planar"),
            }
        }
        table = next;
    }
    let top = table.remove(&Vec::new()).unwrap_or_default();
    Ok(HalfLaurent::from_terms(top.into_iter().map(|(e, c)| (c, e))))
}

/// A formal linear combination of diagrams with polynomial coefficients,
/// deduplicated by canonical word. Each term keeps the first diagram seen
/// with its word.
#[derive(Clone, Debug, Default)]
pub struct LinComb {
    terms: Vec<(HalfLaurent, SliceDiagram)>,
    index: HashMap<(DiagramKind, Vec<Generator>), usize>,
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(d: SliceDiagram) -> Self {
        let mut l = Self::new();
        l.push(HalfLaurent::one(), d);
        l
    }

    /// Adds `c · d`, merging with an existing term of the same canonical word.
    pub fn push(&mut self, c: HalfLaurent, d: SliceDiagram) {
        if c.is_zero() {
            return;
        }
        // the canonical word is only a key: it can be much wider than `d`
        let key = d.key();
        match self.index.get(&key) {
            Some(&i) => self.terms[i].0 += &c,
            None => {
                self.index.insert(key, self.terms.len());
                self.terms.push((c, d));
            }
        }
    }

    /// Terms with nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = &(HalfLaurent, SliceDiagram)> {
        self.terms.iter().filter(|(c, _)| !c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Rewrites a crossing whose strands do not both flow upward as a rotated
/// crossing of the opposite kind between a cup and a cap. Returns the new
/// diagram and the index of the rotated crossing.
fn make_upright(d: &SliceDiagram, idx: usize) -> Result<(SliceDiagram, usize)> {
    let g = &d.slices()[idx];
    let p = g.pos;
    let (bl, br) = (d.level(idx)[p], d.level(idx)[p + 1]);
    let flipped = Generator::new(
        if g.kind == GenKind::Xo { GenKind::Xu } else { GenKind::Xo },
        p + 1,
    );
    let sub = if br.up == Some(false) {
        vec![Generator::cup_dir(p, br.color, false), flipped, Generator::cap(p + 2)]
    } else {
        vec![Generator::cup_dir(p + 2, bl.color, true), flipped, Generator::cap(p)]
    };
    Ok((d.splice(idx, &sub, d.kind)?, idx + 1))
}

/// Expands the colored crossing at slice `idx` into a linear combination of
/// ladder diagrams (the result has kind `moy`).
pub fn expand_crossing(d: &SliceDiagram, idx: usize) -> Result<LinComb> {
    let g = d
        .slices()
        .get(idx)
        .ok_or_else(|| MoyError::Precondition(format!("no slice {idx}")))?;
    if !g.kind.is_crossing() {
        return Err(MoyError::Precondition(format!("slice {idx} ({g}) is not a crossing")));
    }
    if !d.kind.is_oriented() {
        return Err(MoyError::Precondition("colored crossings need an oriented diagram".into()));
    }
    let p = g.pos;
    let (bl, br) = (d.level(idx)[p], d.level(idx)[p + 1]);
    if bl.up != Some(true) || br.up != Some(true) {
        let (d2, j) = make_upright(d, idx)?;
        return expand_crossing(&d2, j);
    }
    let (n, m) = (bl.color, br.color);
    let mut out = LinComb::new();
    let lo = m.saturating_sub(n);
    for k in lo..=m {
        let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
        let (coef, sub) = if g.kind == GenKind::Xo {
            (
                HalfLaurent::monomial(sign, 2 * (k as i64 - m as i64)),
                vec![
                    Generator::spl(p + 1, k, m - k),
                    Generator::mrg(p),
                    Generator::spl(p, m, n + k - m),
                    Generator::mrg(p + 1),
                ],
            )
        } else {
            (
                HalfLaurent::monomial(sign, 2 * (m as i64 - k as i64)),
                vec![
                    Generator::spl(p, m - k, n + k - m),
                    Generator::mrg(p + 1),
                    Generator::spl(p + 1, k, n),
                    Generator::mrg(p),
                ],
            )
        };
        let term = d.splice(idx, &sub, DiagramKind::Moy)?;
        out.push(coef, drop_zero_edges(&term)?);
    }
    Ok(out)
}

/// Evaluator for knotted MOY graphs with a shared memo of planar values.
#[derive(Default)]
pub struct MoyEngine {
    memo: DashMap<(Vec<Generator>, u32), HalfLaurent>,
}

impl MoyEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Planar bracket memoized on the canonical word.
    pub fn planar(&self, d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
        let d = drop_zero_edges(d)?;
        let key = (d.key().1, n);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = bracket_planar(&d, n)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// Expands every crossing into planar MOY graphs.
    pub fn expand_all(&self, d: &SliceDiagram) -> Result<LinComb> {
        let mut cur = LinComb::single(d.clone());
        loop {
            let mut next = LinComb::new();
            let mut any = false;
            for (c, t) in cur.terms() {
                match t.slices().iter().position(|g| g.kind.is_crossing()) {
                    Some(i) => {
                        any = true;
                        for (c2, t2) in expand_crossing(t, i)?.terms() {
                            next.push(c * c2, t2.clone());
                        }
                    }
                    None => next.push(c.clone(), t.clone()),
                }
            }
            cur = next;
            if !any {
                return Ok(cur);
            }
        }
    }

    /// `⟨D⟩_N` of a knotted MOY graph or colored oriented link diagram.
    pub fn knotted(&self, d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
        if !d.kind.is_oriented() || d.slices().iter().any(|g| g.kind == GenKind::V4) {
            return Err(MoyError::Precondition(
                "the MOY bracket needs an oriented diagram without rigid vertices".into(),
            ));
        }
        let lc = self.expand_all(d)?;
        let terms: Vec<_> = lc.terms().cloned().collect();
        let parts = terms
            .par_iter()
            .map(|(c, t)| Ok(c * &self.planar(t, n)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().sum())
    }
}

/// `⟨D⟩_N` of a knotted MOY graph.
pub fn bracket_knotted(d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    MoyEngine::new().knotted(d, n)
}

/// Checks that every edge is 1-colored except 2-colored rungs joining a merge
/// directly to a split (the widening of a 4-valent vertex).
fn require_uncolored(d: &SliceDiagram) -> Result<()> {
    let t = d.topology();
    for a in &t.arcs {
        let ok = match a.color {
            1 => true,
            2 => match a.ends {
                Some([x, y]) => {
                    let kinds = (d.slices()[x.gen].kind, d.slices()[y.gen].kind);
                    let thick = |l: LegRef| {
                        (d.slices()[l.gen].kind == GenKind::Mrg && l.leg == 2)
                            || (d.slices()[l.gen].kind == GenKind::Spl && l.leg == 0)
                    };
                    thick(x) && thick(y) && kinds.0 != kinds.1 && a.points.len() == 1
                }
                None => false,
            },
            _ => false,
        };
        if !ok {
            return Err(MoyError::Precondition(format!(
                "arc {} has color {}; R_N needs an uncolored diagram",
                a.id, a.color
            )));
        }
    }
    Ok(())
}

/// `R_N(D) = (−1)^{#crossings} ⟨mirror(D)⟩_N` for an uncolored oriented link
/// or a knotted 4-valent graph given by its MOY widening.
pub fn r_n_with(engine: &MoyEngine, d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    require_uncolored(d)?;
    let v = engine.knotted(&d.mirror(), n)?;
    Ok(if d.num_crossings().is_multiple_of(2) { v } else { -v })
}

pub fn r_n(d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    r_n_with(&MoyEngine::new(), d, n)
}

/// `(−q)^{e/2}` for a doubled exponent `e`, with sign `(−1)^{⌊e/2⌋}`.
pub fn neg_q_pow_half(e2: i64) -> HalfLaurent {
    let sign = if e2.div_euclid(2).rem_euclid(2) == 0 { 1 } else { -1 };
    HalfLaurent::monomial(sign, e2)
}

/// `R̃_{2N}(L) = (−q)^{(N/2)·w(L)} ⟨L⟩_{2N}` for a link colored entirely by `N`.
pub fn renormalized_bracket_with(engine: &MoyEngine, l: &SliceDiagram, two_n: u32) -> Result<HalfLaurent> {
    if !two_n.is_multiple_of(2) || two_n == 0 {
        return Err(MoyError::Precondition(format!("2N must be positive and even, got {two_n}")));
    }
    let n = two_n / 2;
    let t = l.topology();
    if let Some(a) = t.arcs.iter().find(|a| a.color != n) {
        return Err(MoyError::Precondition(format!(
            "arc {} has color {}, expected {n}",
            a.id, a.color
        )));
    }
    let w = l.writhe()?;
    Ok(neg_q_pow_half(n as i64 * w) * engine.knotted(l, two_n)?)
}

pub fn renormalized_bracket(l: &SliceDiagram, two_n: u32) -> Result<HalfLaurent> {
    renormalized_bracket_with(&MoyEngine::new(), l, two_n)
}

#[cfg(test)]
mod tests;
