//! Complete edge-coloured bipartite graphs `(L, R, C, F)`.
//!
//! Left vertices play the role of sandwich-matrix rows and right vertices of
//! columns. Colours are matched across graphs by label.

use std::collections::HashSet;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rees::SandwichMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouredBipartiteGraph {
    left: Vec<String>,
    right: Vec<String>,
    colours: Vec<String>,
    f: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A side-preserving vertex bijection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphPattern {
    Monochromatic,
    MatchingPlusComplement,
    Other,
}

/// A partial isomorphism between induced subgraphs that no automorphism
/// extends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialIso {
    pub left: Vec<(usize, usize)>,
    pub right: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphHomogeneity {
    pub homogeneous: bool,
    pub automorphism_count: usize,
    pub counterexample: Option<PartialIso>,
}

/// A colour set with an optional neutral colour used to fill new edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    colours: Vec<String>,
    neutral: Option<usize>,
}

impl Palette {
    pub fn new(colours: Vec<String>) -> Result<Self> {
        if colours.is_empty() {
            return Err(Error::InvalidArgument("empty colour set".into()));
        }
        Ok(Palette {
            colours,
            neutral: None,
        })
    }

    pub fn with_neutral(colours: Vec<String>, neutral: &str) -> Result<Self> {
        let mut p = Self::new(colours)?;
        p.neutral = Some(
            p.colours
                .iter()
                .position(|c| c == neutral)
                .ok_or_else(|| Error::UnknownLabel(neutral.to_string()))?,
        );
        Ok(p)
    }

    /// The elements of a subgroup as colours, with `ε` neutral.
    pub fn from_subgroup(g: &FiniteGroup, h: ElemSet) -> Self {
        let colours = g.set_labels(h);
        let neutral = h.iter().position(|x| x == g.identity());
        Palette { colours, neutral }
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    /// `ε` if present, else the first colour.
    pub fn fill(&self) -> &str {
        &self.colours[self.neutral.unwrap_or(0)]
    }
}

/// An assignment of colours to a set of vertices on one side with no common
/// witness on the other side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub side: Side,
    pub domain: Vec<usize>,
    /// Palette indices, aligned with `domain`.
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefectReport {
    pub defects: Vec<Defect>,
    pub truncated: bool,
}

impl DefectReport {
    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }
}

pub const DEFECT_CAP: usize = 10_000;

fn fresh_label(taken: &HashSet<String>) -> String {
    (1..)
        .map(|k: usize| k.to_string())
        .find(|l| !taken.contains(l))
        .unwrap()
}

fn subsets(n: usize, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if !cur.is_empty() && !visit(cur) {
            return false;
        }
        if cur.len() == k {
            return true;
        }
        for x in start..n {
            cur.push(x);
            let go = rec(x + 1, n, k, cur, visit);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, n, k, &mut Vec::new(), visit)
}

impl EdgeColouredBipartiteGraph {
    /// `f` is row-major over `left × right`, holding colour indices.
    pub fn new(
        left: Vec<String>,
        right: Vec<String>,
        colours: Vec<String>,
        f: Vec<usize>,
    ) -> Result<Self> {
        if f.len() != left.len() * right.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} edge colours, got {}",
                left.len() * right.len(),
                f.len()
            )));
        }
        if let Some(&c) = f.iter().find(|&&c| c >= colours.len()) {
            return Err(Error::UnknownLabel(format!("colour #{c}")));
        }
        Ok(EdgeColouredBipartiteGraph {
            left,
            right,
            colours,
            f,
        })
    }

    /// Left = rows, right = columns, colours = occurring entries in group
    /// order; `drop` removes one `(row, col)` pair of indices.
    pub fn from_matrix(m: &SandwichMatrix, drop: Option<(usize, usize)>) -> Result<Self> {
        if let Some((r, c)) = drop {
            if r >= m.rows() || c >= m.cols() {
                return Err(Error::UnknownLabel(format!("({}, {})", r + 1, c + 1)));
            }
        }
        let rows: Vec<usize> = (0..m.rows())
            .filter(|&r| drop.is_none_or(|d| d.0 != r))
            .collect();
        let cols: Vec<usize> = (0..m.cols())
            .filter(|&c| drop.is_none_or(|d| d.1 != c))
            .collect();
        let occurring: ElemSet = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| m.get(r, c)))
            .collect();
        let members: Vec<usize> = occurring.iter().collect();
        let colour_of = |x| members.iter().position(|&y| y == x).unwrap();
        let f = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| colour_of(m.get(r, c)))
            .collect();
        Self::new(
            rows.iter().map(|&r| m.row_labels()[r].clone()).collect(),
            cols.iter().map(|&c| m.col_labels()[c].clone()).collect(),
            members
                .iter()
                .map(|&x| m.group().label(x).to_string())
                .collect(),
            f,
        )
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    #[inline]
    pub fn colour(&self, l: usize, r: usize) -> usize {
        self.f[l * self.right.len() + r]
    }

    pub fn colour_label(&self, c: usize) -> &str {
        &self.colours[c]
    }

    pub fn occurring_colours(&self) -> ElemSet {
        self.f.iter().copied().collect()
    }

    /// All side-preserving, colour-preserving bijections onto `other`.
    pub fn isomorphisms_to(&self, other: &Self) -> Vec<VertexMap> {
        let (nl, nr) = (self.left.len(), self.right.len());
        if nl != other.left.len() || nr != other.right.len() {
            return Vec::new();
        }
        let translate: Vec<Option<usize>> = self
            .colours
            .iter()
            .map(|c| other.colours.iter().position(|d| d == c))
            .collect();
        let mut out = Vec::new();
        let mut lmap = Vec::with_capacity(nl);
        let mut rmap = Vec::with_capacity(nr);
        let mut used_l = vec![false; nl];
        let mut used_r = vec![false; nr];
        self.iso_left(
            other,
            &translate,
            &mut lmap,
            &mut used_l,
            &mut rmap,
            &mut used_r,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_left(
        &self,
        other: &Self,
        tr: &[Option<usize>],
        lmap: &mut Vec<usize>,
        used_l: &mut [bool],
        rmap: &mut Vec<usize>,
        used_r: &mut [bool],
        out: &mut Vec<VertexMap>,
    ) {
        if lmap.len() == self.left.len() {
            self.iso_right(other, tr, lmap, rmap, used_r, out);
            return;
        }
        for t in 0..self.left.len() {
            if used_l[t] {
                continue;
            }
            used_l[t] = true;
            lmap.push(t);
            self.iso_left(other, tr, lmap, used_l, rmap, used_r, out);
            lmap.pop();
            used_l[t] = false;
        }
    }

    fn iso_right(
        &self,
        other: &Self,
        tr: &[Option<usize>],
        lmap: &[usize],
        rmap: &mut Vec<usize>,
        used_r: &mut [bool],
        out: &mut Vec<VertexMap>,
    ) {
        let r = rmap.len();
        if r == self.right.len() {
            out.push(VertexMap {
                left: lmap.to_vec(),
                right: rmap.clone(),
            });
            return;
        }
        for t in 0..self.right.len() {
            if used_r[t] {
                continue;
            }
            let fits = (0..self.left.len())
                .all(|l| tr[self.colour(l, r)] == Some(other.colour(lmap[l], t)));
            if !fits {
                continue;
            }
            used_r[t] = true;
            rmap.push(t);
            self.iso_right(other, tr, lmap, rmap, used_r, out);
            rmap.pop();
            used_r[t] = false;
        }
    }

    pub fn automorphisms(&self) -> Vec<VertexMap> {
        self.isomorphisms_to(self)
    }

    pub fn classify_pattern(&self) -> GraphPattern {
        let occ = self.occurring_colours();
        if occ.len() <= 1 {
            return GraphPattern::Monochromatic;
        }
        let n = self.left.len();
        if occ.len() != 2 || n != self.right.len() {
            return GraphPattern::Other;
        }
        let perfect = |c: usize| {
            (0..n).all(|l| (0..n).filter(|&r| self.colour(l, r) == c).count() == 1)
                && (0..n).all(|r| (0..n).filter(|&l| self.colour(l, r) == c).count() == 1)
        };
        if occ.iter().any(perfect) {
            GraphPattern::MatchingPlusComplement
        } else {
            GraphPattern::Other
        }
    }

    /// Brute force: every colour-preserving partial bijection between induced
    /// subgraphs must be the restriction of an automorphism.
    pub fn is_homogeneous(&self) -> GraphHomogeneity {
        let autos = self.automorphisms();
        let (nl, nr) = (self.left.len(), self.right.len());
        let mut counterexample = None;
        'outer: for lset in 0u32..(1 << nl) {
            let ldom: Vec<usize> = (0..nl).filter(|&x| lset >> x & 1 == 1).collect();
            for rset in 0u32..(1 << nr) {
                let rdom: Vec<usize> = (0..nr).filter(|&x| rset >> x & 1 == 1).collect();
                let restrictions: HashSet<(Vec<usize>, Vec<usize>)> = autos
                    .iter()
                    .map(|a| {
                        (
                            ldom.iter().map(|&x| a.left[x]).collect(),
                            rdom.iter().map(|&x| a.right[x]).collect(),
                        )
                    })
                    .collect();
                let mut found = None;
                for_each_injection(ldom.len(), nl, &mut |limg| {
                    for_each_injection(rdom.len(), nr, &mut |rimg| {
                        let preserves = ldom.iter().enumerate().all(|(a, &x)| {
                            rdom.iter()
                                .enumerate()
                                .all(|(b, &y)| self.colour(x, y) == self.colour(limg[a], rimg[b]))
                        });
                        if preserves && !restrictions.contains(&(limg.to_vec(), rimg.to_vec())) {
                            found = Some(PartialIso {
                                left: ldom.iter().copied().zip(limg.iter().copied()).collect(),
                                right: rdom.iter().copied().zip(rimg.iter().copied()).collect(),
                            });
                            return false;
                        }
                        true
                    })
                });
                if found.is_some() {
                    counterexample = found;
                    break 'outer;
                }
            }
        }
        GraphHomogeneity {
            homogeneous: counterexample.is_none(),
            automorphism_count: autos.len(),
            counterexample,
        }
    }

    fn palette_index(&self, palette: &Palette) -> Vec<Option<usize>> {
        self.colours
            .iter()
            .map(|c| palette.colours.iter().position(|d| d == c))
            .collect()
    }

    /// Defects at level `k` over all vertices.
    pub fn k_generic_defects(&self, palette: &Palette, k: usize) -> DefectReport {
        self.k_generic_defects_within(palette, k, self.left.len(), self.right.len())
    }

    /// Defects whose domain lies among the first `n_left` left or the first
    /// `n_right` right vertices; witnesses may be any vertex.
    pub fn k_generic_defects_within(
        &self,
        palette: &Palette,
        k: usize,
        n_left: usize,
        n_right: usize,
    ) -> DefectReport {
        let idx = self.palette_index(palette);
        let mut report = DefectReport::default();
        for side in [Side::Left, Side::Right] {
            let n = if side == Side::Left { n_left } else { n_right };
            let cont = subsets(n, k, &mut |dom| {
                self.scan_assignments(side, dom, palette.colours.len(), &idx, &mut report)
            });
            if !cont {
                break;
            }
        }
        report
    }

    fn edge(&self, side: Side, a: usize, b: usize) -> usize {
        match side {
            Side::Left => self.colour(a, b),
            Side::Right => self.colour(b, a),
        }
    }

    fn other_side_len(&self, side: Side) -> usize {
        match side {
            Side::Left => self.right.len(),
            Side::Right => self.left.len(),
        }
    }

    fn has_witness(
        &self,
        side: Side,
        dom: &[usize],
        values: &[usize],
        idx: &[Option<usize>],
    ) -> bool {
        (0..self.other_side_len(side)).any(|x| {
            dom.iter()
                .zip(values)
                .all(|(&y, &v)| idx[self.edge(side, y, x)] == Some(v))
        })
    }

    fn scan_assignments(
        &self,
        side: Side,
        dom: &[usize],
        ncol: usize,
        idx: &[Option<usize>],
        report: &mut DefectReport,
    ) -> bool {
        let mut values = vec![0usize; dom.len()];
        loop {
            if !self.has_witness(side, dom, &values, idx) {
                if report.defects.len() == DEFECT_CAP {
                    report.truncated = true;
                    return false;
                }
                report.defects.push(Defect {
                    side,
                    domain: dom.to_vec(),
                    values: values.clone(),
                });
            }
            let mut p = 0;
            loop {
                if p == values.len() {
                    return true;
                }
                values[p] += 1;
                if values[p] < ncol {
                    break;
                }
                values[p] = 0;
                p += 1;
            }
        }
    }

    /// One witness pass: for every level-`k` defect on the original vertices,
    /// a new vertex on the other side realising it. Left-side defects are
    /// handled first. Other new edges get [`Palette::fill`].
    pub fn extend_to_k_generic(&self, palette: &Palette, k: usize) -> Self {
        self.extend_to_k_generic_reserving(palette, k, &[], &[])
    }

    /// As [`Self::extend_to_k_generic`], never using the reserved labels for
    /// new vertices.
    pub fn extend_to_k_generic_reserving(
        &self,
        palette: &Palette,
        k: usize,
        reserved_left: &[String],
        reserved_right: &[String],
    ) -> Self {
        let mut g = self.with_palette_colours(palette);
        let idx = g.palette_index(palette);
        let fill = g.colours.iter().position(|c| c == palette.fill()).unwrap();
        let (n_left, n_right) = (self.left.len(), self.right.len());
        let mut taken_l: HashSet<String> = g.left.iter().chain(reserved_left).cloned().collect();
        let mut taken_r: HashSet<String> = g.right.iter().chain(reserved_right).cloned().collect();
        for side in [Side::Left, Side::Right] {
            let n = if side == Side::Left { n_left } else { n_right };
            let mut pending = Vec::new();
            subsets(n, k, &mut |dom| {
                let mut values = vec![0usize; dom.len()];
                loop {
                    pending.push((dom.to_vec(), values.clone()));
                    let mut p = 0;
                    loop {
                        if p == values.len() {
                            return true;
                        }
                        values[p] += 1;
                        if values[p] < palette.colours.len() {
                            break;
                        }
                        values[p] = 0;
                        p += 1;
                    }
                }
            });
            for (dom, values) in pending {
                if g.has_witness(side, &dom, &values, &idx) {
                    continue;
                }
                let colour_of = |v: usize| {
                    g.colours
                        .iter()
                        .position(|c| *c == palette.colours[v])
                        .unwrap()
                };
                match side {
                    Side::Left => {
                        let mut col = vec![fill; g.left.len()];
                        for (&y, &v) in dom.iter().zip(&values) {
                            col[y] = colour_of(v);
                        }
                        let label = fresh_label(&taken_r);
                        taken_r.insert(label.clone());
                        g.push_right(label, &col);
                    }
                    Side::Right => {
                        let mut row = vec![fill; g.right.len()];
                        for (&y, &v) in dom.iter().zip(&values) {
                            row[y] = colour_of(v);
                        }
                        let label = fresh_label(&taken_l);
                        taken_l.insert(label.clone());
                        g.push_left(label, &row);
                    }
                }
            }
        }
        g
    }

    fn with_palette_colours(&self, palette: &Palette) -> Self {
        let mut g = self.clone();
        for c in &palette.colours {
            if !g.colours.contains(c) {
                g.colours.push(c.clone());
            }
        }
        g
    }

    /// Appends a right vertex with the given colours against each left vertex.
    pub fn push_right(&mut self, label: String, col: &[usize]) {
        let nr = self.right.len();
        let mut f = Vec::with_capacity(self.left.len() * (nr + 1));
        for l in 0..self.left.len() {
            f.extend_from_slice(&self.f[l * nr..(l + 1) * nr]);
            f.push(col[l]);
        }
        self.f = f;
        self.right.push(label);
    }

    /// Appends a left vertex with the given colours against each right vertex.
    pub fn push_left(&mut self, label: String, row: &[usize]) {
        self.f.extend_from_slice(row);
        self.left.push(label);
    }
}

fn for_each_injection(k: usize, n: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        k: usize,
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for x in 0..n {
            if used[x] {
                continue;
            }
            used[x] = true;
            cur.push(x);
            let go = rec(k, n, cur, used, visit);
            cur.pop();
            used[x] = false;
            if !go {
                return false;
            }
        }
        true
    }
    rec(k, n, &mut Vec::new(), &mut vec![false; n], visit)
}

pub fn enumerate_graph_isomorphisms(
    a: &EdgeColouredBipartiteGraph,
    b: &EdgeColouredBipartiteGraph,
) -> Vec<VertexMap> {
    a.isomorphisms_to(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|k| k.to_string()).collect()
    }

    fn graph(rows: &[&[usize]], ncol: usize) -> EdgeColouredBipartiteGraph {
        let colours = ["x", "y", "z"][..ncol]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let f = rows.iter().flat_map(|r| r.iter().copied()).collect();
        EdgeColouredBipartiteGraph::new(
            labels(rows.len()),
            labels(rows.first().map_or(0, |r| r.len())),
            colours,
            f,
        )
        .unwrap()
    }

    #[test]
    fn from_matrix_examples() {
        let s2 = corpus::s2();
        let g = EdgeColouredBipartiteGraph::from_matrix(s2.matrix(), Some((0, 0))).unwrap();
        assert_eq!(
            (
                g.left().len(),
                g.right().len(),
                g.colour_label(g.colour(0, 0))
            ),
            (1, 1, "a")
        );
        let t = corpus::rectangular_group(2, 3, 2);
        let g = EdgeColouredBipartiteGraph::from_matrix(t.matrix(), None).unwrap();
        assert_eq!(g.colours(), ["0"]);
        assert_eq!(g.classify_pattern(), GraphPattern::Monochromatic);
        assert!(EdgeColouredBipartiteGraph::from_matrix(s2.matrix(), Some((2, 0))).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let one = graph(&[&[0]], 1);
        assert_eq!(enumerate_graph_isomorphisms(&one, &one).len(), 1);
        let sq = graph(&[&[0, 1], &[1, 0]], 2);
        assert_eq!(sq.automorphisms().len(), 2);
        let mono = graph(&[&[0, 0, 0], &[0, 0, 0]], 1);
        assert_eq!(mono.automorphisms().len(), 2 * 6);
        for a in sq.automorphisms() {
            for l in 0..2 {
                for r in 0..2 {
                    assert_eq!(sq.colour(l, r), sq.colour(a.left[l], a.right[r]));
                }
            }
        }
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(
            graph(&[&[1]], 2).classify_pattern(),
            GraphPattern::Monochromatic
        );
        assert_eq!(
            graph(&[&[0, 1], &[1, 0]], 2).classify_pattern(),
            GraphPattern::MatchingPlusComplement
        );
        assert_eq!(
            graph(&[&[0, 1], &[0, 1]], 2).classify_pattern(),
            GraphPattern::Other
        );
        let empty = EdgeColouredBipartiteGraph::new(vec![], vec![], vec![], vec![]).unwrap();
        assert_eq!(empty.classify_pattern(), GraphPattern::Monochromatic);
    }

    #[test]
    fn homogeneity_examples() {
        assert!(
            graph(&[&[0, 0, 0], &[0, 0, 0]], 1)
                .is_homogeneous()
                .homogeneous
        );
        assert!(graph(&[&[0, 1], &[1, 0]], 2).is_homogeneous().homogeneous);
        let h = graph(&[&[0, 1], &[0, 1]], 2).is_homogeneous();
        assert!(!h.homogeneous);
        assert!(h.counterexample.is_some());
    }

    #[test]
    fn defect_examples() {
        let pal = Palette::with_neutral(vec!["x".into(), "y".into()], "x").unwrap();
        let g = graph(&[&[0, 0], &[0, 0]], 1);
        let d = g.k_generic_defects(&pal, 1);
        assert!(d.defects.contains(&Defect {
            side: Side::Left,
            domain: vec![0],
            values: vec![1]
        }));
        let mono = Palette::new(vec!["x".into()]).unwrap();
        for k in 1..4 {
            assert!(g.k_generic_defects(&mono, k).is_empty());
        }
    }

    #[test]
    fn extension_examples() {
        let pal = Palette::with_neutral(vec!["y".into(), "x".into()], "x").unwrap();
        let g = graph(&[&[0]], 1);
        let out = g.extend_to_k_generic(&pal, 1);
        assert!(out.k_generic_defects_within(&pal, 1, 1, 1).is_empty());
        for r in 0..out.right().len() {
            assert_eq!(
                out.colour_label(out.colour(0, r)),
                if r == 0 { "x" } else { "y" }
            );
        }
        assert_eq!(out.extend_to_k_generic(&pal, 1), out);
        let z2 = corpus::z2();
        let pal = Palette::from_subgroup(&z2, ElemSet::full(2));
        let g =
            EdgeColouredBipartiteGraph::from_matrix(corpus::s2().matrix(), Some((0, 0))).unwrap();
        let out = g.extend_to_k_generic(&pal, 2);
        assert!(out.k_generic_defects_within(&pal, 2, 1, 1).is_empty());
        for l in 0..g.left().len() {
            for r in 0..g.right().len() {
                assert_eq!(
                    out.colour_label(out.colour(l, r)),
                    g.colour_label(g.colour(l, r))
                );
            }
        }
    }

    #[test]
    fn defect_listing_is_capped() {
        let colours: Vec<String> = (0..10).map(|k| k.to_string()).collect();
        let pal = Palette::new(colours.clone()).unwrap();
        let g = EdgeColouredBipartiteGraph::new(labels(6), labels(1), colours, vec![0; 6]).unwrap();
        let d = g.k_generic_defects(&pal, 6);
        assert!(d.truncated);
        assert_eq!(d.defects.len(), DEFECT_CAP);
    }
}
