//! Rees matrix semigroups `M[G; I, Λ; P]` with `(i,g,λ)(j,h,μ) = (i, g·p_{λ,j}·h, μ)`.
//!
//! The sandwich matrix is stored row-major with rows indexed by `Λ` and
//! columns by `I`. Index labels default to `1..=n`.

use std::fmt;
use std::sync::Arc;

use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::graph::EdgeColouredBipartiteGraph;
use crate::group::{Elem, FiniteGroup, GroupMorphism};
use crate::rms_morphism::RmsMorphism;
use crate::semigroup::FiniteSemigroup;

#[derive(Clone, PartialEq, Eq)]
pub struct SandwichMatrix {
    group: Arc<FiniteGroup>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Elem>,
}

impl fmt::Debug for SandwichMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<&str>> = (0..self.rows())
            .map(|r| {
                (0..self.cols())
                    .map(|c| self.group.label(self.get(r, c)))
                    .collect()
            })
            .collect();
        write!(f, "SandwichMatrix{rows:?}")
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

impl SandwichMatrix {
    /// `rows × cols` matrix (rows = `Λ`, columns = `I`), entries row-major.
    pub fn new(
        group: Arc<FiniteGroup>,
        rows: usize,
        cols: usize,
        entries: Vec<Elem>,
    ) -> Result<Self> {
        Self::with_labels(group, default_labels(rows), default_labels(cols), entries)
    }

    pub fn with_labels(
        group: Arc<FiniteGroup>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Elem>,
    ) -> Result<Self> {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("index sets must be nonempty".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} matrix entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= group.order()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        for labels in [&row_labels, &col_labels] {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != labels.len() {
                return Err(Error::InvalidArgument("duplicate index label".into()));
            }
        }
        Ok(SandwichMatrix {
            group,
            row_labels,
            col_labels,
            entries,
        })
    }

    /// The all-identity matrix.
    pub fn trivial(group: Arc<FiniteGroup>, rows: usize, cols: usize) -> Self {
        let e = group.identity();
        Self::new(group, rows, cols, vec![e; rows * cols]).expect("valid shape")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Elem {
        self.entries[row * self.cols() + col]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn row_index(&self, label: &str) -> Result<usize> {
        self.row_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn col_index(&self, label: &str) -> Result<usize> {
        self.col_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn is_normal_cell(&self, col: usize, row: usize) -> bool {
        let e = self.group.identity();
        (0..self.cols()).all(|c| self.get(row, c) == e)
            && (0..self.rows()).all(|r| self.get(r, col) == e)
    }
}

/// An element `(i, g, λ)`: column index, group element, row index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RmsElement {
    pub i: usize,
    pub g: Elem,
    pub l: usize,
}

/// The literal entry data of a sandwich matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryGroupData {
    /// `G^P`, the set of entries.
    pub entries: ElemSet,
    /// `⟨G^P⟩`.
    pub generated: ElemSet,
    /// `C(i)`: entries of column `i`.
    pub columns: Vec<ElemSet>,
    /// `R(λ)`: entries of row `λ`.
    pub rows: Vec<ElemSet>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ReesMatrixSemigroup {
    matrix: SandwichMatrix,
    /// `(1_I, 1_Λ)` as (column, row) indices.
    normalized_at: Option<(usize, usize)>,
}

impl fmt::Debug for ReesMatrixSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReesMatrixSemigroup")
            .field("group", &self.matrix.group.labels())
            .field("matrix", &self.matrix)
            .field("normalized_at", &self.normalized_at)
            .finish()
    }
}

impl ReesMatrixSemigroup {
    /// Wraps a matrix; the normalization cell is detected as the first
    /// (column, row) pair, in declaration order, whose row and column are
    /// entirely `ε`.
    pub fn new(matrix: SandwichMatrix) -> Self {
        let normalized_at = (0..matrix.cols())
            .flat_map(|c| (0..matrix.rows()).map(move |r| (c, r)))
            .find(|&(c, r)| matrix.is_normal_cell(c, r));
        ReesMatrixSemigroup {
            matrix,
            normalized_at,
        }
    }

    /// Marks a specific normalization cell, which must have `ε` row and column.
    pub fn normalized(matrix: SandwichMatrix, col: usize, row: usize) -> Result<Self> {
        if col >= matrix.cols() || row >= matrix.rows() {
            return Err(Error::UnknownLabel(format!("({}, {})", col + 1, row + 1)));
        }
        if !matrix.is_normal_cell(col, row) {
            return Err(Error::NotNormalized);
        }
        Ok(ReesMatrixSemigroup {
            matrix,
            normalized_at: Some((col, row)),
        })
    }

    pub fn matrix(&self) -> &SandwichMatrix {
        &self.matrix
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.matrix.group
    }

    /// `|I|`
    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `|Λ|`
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn size(&self) -> usize {
        self.cols() * self.group().order() * self.rows()
    }

    /// `(1_I, 1_Λ)` as (column, row) indices.
    pub fn normalized_at(&self) -> Option<(usize, usize)> {
        self.normalized_at
    }

    fn require_normalized(&self) -> Result<(usize, usize)> {
        self.normalized_at.ok_or(Error::NotNormalized)
    }

    pub fn index_of_triple(&self, i: usize, g: Elem, l: usize) -> usize {
        (i * self.group().order() + g) * self.rows() + l
    }

    pub fn index_of(&self, x: RmsElement) -> usize {
        self.index_of_triple(x.i, x.g, x.l)
    }

    pub fn element_at(&self, idx: usize) -> RmsElement {
        let rows = self.rows();
        let order = self.group().order();
        RmsElement {
            i: idx / (order * rows),
            g: (idx / rows) % order,
            l: idx % rows,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = RmsElement> + '_ {
        (0..self.size()).map(|k| self.element_at(k))
    }

    fn check(&self, x: RmsElement) -> Result<()> {
        if x.i >= self.cols() || x.l >= self.rows() || x.g >= self.group().order() {
            return Err(Error::UnknownLabel(format!("{x:?}")));
        }
        Ok(())
    }

    pub fn multiply(&self, x: RmsElement, y: RmsElement) -> Result<RmsElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    #[inline]
    pub(crate) fn mul(&self, x: RmsElement, y: RmsElement) -> RmsElement {
        let g = self.group();
        let p = self.matrix.get(x.l, y.i);
        RmsElement {
            i: x.i,
            g: g.mul(g.mul(x.g, p), y.g),
            l: y.l,
        }
    }

    /// The unique idempotent `(i, p_{λ,i}⁻¹, λ)` of the H-class `(i, λ)`.
    pub fn idempotent_at(&self, i: usize, l: usize) -> Result<RmsElement> {
        if i >= self.cols() || l >= self.rows() {
            return Err(Error::UnknownLabel(format!("({}, {})", i + 1, l + 1)));
        }
        Ok(RmsElement {
            i,
            g: self.group().inv(self.matrix.get(l, i)),
            l,
        })
    }

    /// Label `i:g:λ` using the index and group labels.
    pub fn element_label(&self, x: RmsElement) -> String {
        format!(
            "{}:{}:{}",
            self.matrix.col_labels[x.i],
            self.group().label(x.g),
            self.matrix.row_labels[x.l]
        )
    }

    /// Parses `i:g:λ`.
    pub fn parse_element(&self, text: &str) -> Result<RmsElement> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::UnknownLabel(text.to_string()));
        }
        Ok(RmsElement {
            i: self.matrix.col_index(parts[0])?,
            g: self.group().index_of(parts[1])?,
            l: self.matrix.row_index(parts[2])?,
        })
    }

    /// The multiplication table, elements ordered by [`Self::index_of`].
    pub fn to_semigroup(&self) -> FiniteSemigroup {
        self.try_to_semigroup()
            .expect("Rees matrix semigroup too large for a table")
    }

    pub fn try_to_semigroup(&self) -> Result<FiniteSemigroup> {
        let n = self.size();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let labels = (0..n)
            .map(|k| self.element_label(self.element_at(k)))
            .collect();
        FiniteSemigroup::from_fn(labels, |a, b| {
            self.index_of(self.mul(self.element_at(a), self.element_at(b)))
        })
    }

    /// The normalization along column `i` and row `λ`, with
    /// `q_{μ,j} = p_{λ,i}·p_{μ,i}⁻¹·p_{μ,j}·p_{λ,j}⁻¹`, and the isomorphism
    /// `[id, id, u_j = p_{λ,j}, v_μ = p_{μ,i}·p_{λ,i}⁻¹]` onto it. The
    /// isomorphism is validated before returning.
    pub fn normalize(self: &Arc<Self>, i: usize, l: usize) -> Result<(Arc<Self>, RmsMorphism)> {
        if i >= self.cols() || l >= self.rows() {
            return Err(Error::UnknownLabel(format!("({}, {})", i + 1, l + 1)));
        }
        let g = self.group();
        let p = |r: usize, c: usize| self.matrix.get(r, c);
        let (rows, cols) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(rows * cols);
        for mu in 0..rows {
            for j in 0..cols {
                let q = g.mul(
                    g.mul(g.mul(p(l, i), g.inv(p(mu, i))), p(mu, j)),
                    g.inv(p(l, j)),
                );
                entries.push(q);
            }
        }
        let matrix = SandwichMatrix::with_labels(
            g.clone(),
            self.matrix.row_labels.clone(),
            self.matrix.col_labels.clone(),
            entries,
        )?;
        let target = Arc::new(ReesMatrixSemigroup::normalized(matrix, i, l)?);
        let u = (0..cols).map(|j| p(l, j)).collect();
        let v = (0..rows)
            .map(|mu| g.mul(p(mu, i), g.inv(p(l, i))))
            .collect();
        let phi = RmsMorphism::new(
            self.clone(),
            target.clone(),
            GroupMorphism::identity(g),
            (0..cols).collect(),
            (0..rows).collect(),
            u,
            v,
        )?
        .into_validated()
        .map_err(|e| Error::VerificationFailed(format!("normalization morphism: {e}")))?;
        Ok((target, phi))
    }

    /// Normalizes at the detected cell if any, else at the first cell.
    pub fn ensure_normalized(self: &Arc<Self>) -> Result<(Arc<Self>, RmsMorphism)> {
        match self.normalized_at {
            Some(_) => Ok((self.clone(), RmsMorphism::identity(self))),
            None => self.normalize(0, 0),
        }
    }

    pub fn entry_group_data(&self) -> EntryGroupData {
        let m = &self.matrix;
        let entries: ElemSet = m.entries.iter().copied().collect();
        let members: Vec<Elem> = entries.iter().collect();
        let generated = self
            .group()
            .subgroup_closure(&members)
            .expect("entries are elements");
        let columns = (0..m.cols())
            .map(|c| (0..m.rows()).map(|r| m.get(r, c)).collect())
            .collect();
        let rows = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        EntryGroupData {
            entries,
            generated,
            columns,
            rows,
        }
    }

    /// `⟨E(S)⟩ = M[⟨G^P⟩; I, Λ; P]`, over ⟨G^P⟩ as a standalone group with the
    /// same element labels.
    pub fn idempotent_generated(&self) -> Result<ReesMatrixSemigroup> {
        let (c, r) = self.require_normalized()?;
        let data = self.entry_group_data();
        let (sub, members) = self.group().subgroup(data.generated)?;
        let mut pos = vec![usize::MAX; self.group().order()];
        for (k, &x) in members.iter().enumerate() {
            pos[x] = k;
        }
        let m = &self.matrix;
        let matrix = SandwichMatrix::with_labels(
            Arc::new(sub),
            m.row_labels.clone(),
            m.col_labels.clone(),
            m.entries.iter().map(|&x| pos[x]).collect(),
        )?;
        ReesMatrixSemigroup::normalized(matrix, c, r)
    }

    /// `Γ_P` (complete, one colour) and `Γ(S) = Γ(P')` with the normalized
    /// row and column removed.
    pub fn induced_graphs(
        &self,
    ) -> Result<(EdgeColouredBipartiteGraph, EdgeColouredBipartiteGraph)> {
        let (c, r) = self.require_normalized()?;
        let m = &self.matrix;
        let complete = EdgeColouredBipartiteGraph::new(
            m.row_labels.clone(),
            m.col_labels.clone(),
            vec!["-".to_string()],
            vec![0; m.rows() * m.cols()],
        )?;
        let induced = EdgeColouredBipartiteGraph::from_matrix(m, Some((r, c)))?;
        Ok((complete, induced))
    }
}
