//! The Kauffman polynomial at `a = q^{N−1}` and its Kauffman–Vogel extension to
//! rigid-vertex 4-valent graphs.
//!
//! Link diagrams are evaluated by the descending-diagram algorithm. Components
//! are walked in a fixed order from fixed basepoints; the first crossing met
//! on its under-strand is switched with the skein relation
//!
//! ```text
//! P(xo) − P(xu) = (q − q⁻¹)·(P(V) − P(H))
//! ```
//!
//! (`V`: vertical smoothing, `H`: horizontal smoothing of an upright crossing)
//! until the diagram is descending. A descending diagram is a stack of
//! unknotted, unlinked framed circles and evaluates to
//! `q^{(N−1)·Σ self-writhe} · δ^{#components}`.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::diagram::{DiagramKind, GenKind, Generator, SliceDiagram};
use crate::error::{MoyError, Result};
use crate::laurent::HalfLaurent;
use crate::moy_bracket::LinComb;
use crate::transforms::orient_components;

/// Default bound on the number of distinct diagrams visited by the recursion.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// `δ = [N−1] + 1`, the value of the unknot.
pub fn delta(n: u32) -> Result<HalfLaurent> {
    if n < 2 {
        return Err(MoyError::Precondition(format!("the Kauffman specialization needs N ≥ 2, got {n}")));
    }
    Ok(HalfLaurent::qint(n - 1) + HalfLaurent::one())
}

/// Which of the two equivalent vertex relations to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexForm {
    /// `v = −xo + q·V + q⁻¹·H`
    Over,
    /// `v = −xu + q⁻¹·V + q·H`
    Under,
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

fn smoothings(d: &SliceDiagram, idx: usize) -> Result<(SliceDiagram, SliceDiagram)> {
    let p = d.slices()[idx].pos;
    let v = d.splice(idx, &[], d.kind)?;
    let h = d.splice(idx, &[Generator::cap(p), Generator::cup(p, 1, None)], d.kind)?;
    Ok((v, h))
}

/// Expands the rigid vertex at slice `idx`.
pub fn eliminate_vertex(d: &SliceDiagram, idx: usize, form: VertexForm) -> Result<LinComb> {
    require_unoriented(d)?;
    let g = d
        .slices()
        .get(idx)
        .ok_or_else(|| MoyError::Precondition(format!("no slice {idx}")))?;
    if g.kind != GenKind::V4 {
        return Err(MoyError::Precondition(format!("slice {idx} ({g}) is not a rigid vertex")));
    }
    let (v, h) = smoothings(d, idx)?;
    let (cross, cv, ch) = match form {
        VertexForm::Over => (Generator::xo(g.pos), 2, -2),
        VertexForm::Under => (Generator::xu(g.pos), -2, 2),
    };
    let mut out = LinComb::new();
    out.push(HalfLaurent::constant(-1), d.splice(idx, &[cross], d.kind)?);
    out.push(HalfLaurent::monomial(1, cv), v);
    out.push(HalfLaurent::monomial(1, ch), h);
    Ok(out)
}

/// Evaluator with a shared memo keyed on canonical words.
pub struct KauffmanEngine {
    n: u32,
    delta: HalfLaurent,
    budget: u64,
    nodes: AtomicU64,
    memo: DashMap<Vec<Generator>, HalfLaurent>,
}

impl KauffmanEngine {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_budget(n, DEFAULT_NODE_BUDGET)
    }

    pub fn with_budget(n: u32, budget: u64) -> Result<Self> {
        Ok(KauffmanEngine {
            n,
            delta: delta(n)?,
            budget,
            nodes: AtomicU64::new(0),
            memo: DashMap::new(),
        })
    }

    /// Number of distinct diagrams evaluated so far.
    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// The Kauffman polynomial of a link diagram without vertices.
    pub fn link(&self, d: &SliceDiagram) -> Result<HalfLaurent> {
        require_unoriented(d)?;
        if let Some(i) = d.slices().iter().position(|g| g.kind == GenKind::V4) {
            return Err(MoyError::Precondition(format!("slice {i} is a rigid vertex; use kv")));
        }
        self.eval(&d.canonical())
    }

    fn eval(&self, d: &SliceDiagram) -> Result<HalfLaurent> {
        if let Some(v) = self.memo.get(d.slices()) {
            return Ok(v.clone());
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(MoyError::Budget { limit: self.budget });
        }
        let v = self.eval_uncached(d)?;
        self.memo.insert(d.slices().to_vec(), v.clone());
        Ok(v)
    }

    fn eval_uncached(&self, d: &SliceDiagram) -> Result<HalfLaurent> {
        let t = d.topology();
        let comps = t.components(d)?;
        let mut seen = vec![false; d.len()];
        for c in &comps {
            for visit in t.based_walk(d, c) {
                if !std::mem::replace(&mut seen[visit.gen], true) && !visit.over {
                    return self.switch(d, visit.gen);
                }
            }
        }
        // descending: a stack of framed unknots
        let oriented = orient_components(d, &vec![false; comps.len()], 1)?;
        let mut w = 0;
        for k in 0..comps.len() {
            w += oriented.self_writhe(k)?;
        }
        Ok(self.delta.pow(comps.len() as u32).shift(2 * (self.n as i64 - 1) * w))
    }

    fn switch(&self, d: &SliceDiagram, idx: usize) -> Result<HalfLaurent> {
        let g = &d.slices()[idx];
        let flipped = if g.kind == GenKind::Xo { Generator::xu(g.pos) } else { Generator::xo(g.pos) };
        let other = d.splice(idx, &[flipped], d.kind)?;
        let (v, h) = smoothings(d, idx)?;
        let z = HalfLaurent::z();
        let diff = self.eval(&v.canonical())? - self.eval(&h.canonical())?;
        let base = self.eval(&other.canonical())?;
        Ok(if g.kind == GenKind::Xo { base + z * diff } else { base - z * diff })
    }

    /// Expands every rigid vertex, eliminating them in slice order.
    pub fn expand_vertices(&self, d: &SliceDiagram, form: VertexForm) -> Result<LinComb> {
        self.expand_vertices_ordered(d, form, |_| 0)
    }

    /// Expands every rigid vertex; `pick(k)` chooses which of the `k` remaining
    /// vertices (in slice order) to eliminate next.
    pub fn expand_vertices_ordered(
        &self,
        d: &SliceDiagram,
        form: VertexForm,
        mut pick: impl FnMut(usize) -> usize,
    ) -> Result<LinComb> {
        require_unoriented(d)?;
        let mut cur = LinComb::single(d.clone());
        loop {
            let remaining = d_vertex_count(cur.terms().next().map(|(_, t)| t));
            if remaining == 0 {
                return Ok(cur);
            }
            let choice = pick(remaining) % remaining;
            let mut next = LinComb::new();
            for (c, t) in cur.terms() {
                let idx = t
                    .slices()
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.kind == GenKind::V4)
                    .nth(choice)
                    .map(|(i, _)| i)
                    .ok_or_else(|| MoyError::Internal("vertex count mismatch".into()))?;
                for (c2, t2) in eliminate_vertex(t, idx, form)?.terms() {
                    next.push(c * c2, t2.clone());
                }
            }
            cur = next;
        }
    }

    /// The Kauffman–Vogel polynomial of a rigid-vertex graph.
    pub fn kv_with(&self, d: &SliceDiagram, form: VertexForm) -> Result<HalfLaurent> {
        let lc = self.expand_vertices(d, form)?;
        self.sum(&lc)
    }

    pub fn kv(&self, d: &SliceDiagram) -> Result<HalfLaurent> {
        self.kv_with(d, VertexForm::Over)
    }

    /// Evaluates a linear combination of vertexless diagrams.
    pub fn sum(&self, lc: &LinComb) -> Result<HalfLaurent> {
        let terms: Vec<_> = lc.terms().cloned().collect();
        let parts = terms
            .par_iter()
            .map(|(c, t)| Ok(c * &self.link(t)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().sum())
    }
}

fn d_vertex_count(d: Option<&SliceDiagram>) -> usize {
    d.map_or(0, |d| d.count(|k| k == GenKind::V4))
}

/// `P_N(D)` of a link diagram without vertices.
pub fn kauffman_link(d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    KauffmanEngine::new(n)?.link(d)
}

/// `P_N(D)` of a rigid-vertex 4-valent graph.
pub fn kv(d: &SliceDiagram, n: u32) -> Result<HalfLaurent> {
    KauffmanEngine::new(n)?.kv(d)
}

#[cfg(test)]
mod tests;
