//! Structural homogeneity tests for finite Rees matrix semigroups.

use std::fmt;
use std::sync::Arc;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeColouredBipartiteGraph, GraphPattern};
use crate::group::{preserved_by_automorphisms, FiniteGroup, GroupMorphism};
use crate::rees::{ReesMatrixSemigroup, SandwichMatrix};
use crate::semigroup::{is_homogeneous, FiniteSemigroup, DEFAULT_SUBSEMIGROUP_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `p·q` lies outside the entry set.
    NotClosed { a: usize, b: usize, product: usize },
    /// `a⁻¹` lies outside the entry set.
    NoInverse { a: usize },
    /// `C(col) ≠ G^P`.
    Column { col: usize, entries: ElemSet },
    /// `R(row) ≠ G^P`.
    Row { row: usize, entries: ElemSet },
    /// An automorphism of `G` moving the entry set.
    NotCharacteristic { witness: GroupMorphism },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenReport {
    pub violations: Vec<Violation>,
}

impl ScreenReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn failed_only_characteristic(&self) -> bool {
        !self.passed()
            && self
                .violations
                .iter()
                .all(|v| matches!(v, Violation::NotCharacteristic { .. }))
    }
}

/// Necessary conditions: `G^P` a subgroup, every non-normalized row and
/// column containing all of `G^P`, and `G^P` characteristic in `G`.
pub fn screen_necessary(s: &ReesMatrixSemigroup) -> Result<ScreenReport> {
    let (c, r) = s.normalized_at().ok_or(Error::NotNormalized)?;
    let g = s.group();
    let data = s.entry_group_data();
    let gp = data.entries;
    let mut violations = Vec::new();
    'closed: for a in gp.iter() {
        for b in gp.iter() {
            let product = g.mul(a, b);
            if !gp.contains(product) {
                violations.push(Violation::NotClosed { a, b, product });
                break 'closed;
            }
        }
    }
    if let Some(a) = gp.iter().find(|&a| !gp.contains(g.inv(a))) {
        violations.push(Violation::NoInverse { a });
    }
    for (col, &entries) in data.columns.iter().enumerate() {
        if col != c && entries != gp {
            violations.push(Violation::Column { col, entries });
        }
    }
    for (row, &entries) in data.rows.iter().enumerate() {
        if row != r && entries != gp {
            violations.push(Violation::Row { row, entries });
        }
    }
    if let Some(witness) = preserved_by_automorphisms(g, gp).witness {
        violations.push(Violation::NotCharacteristic { witness });
    }
    Ok(ScreenReport { violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    FailedScreen,
    GroupNotHomogeneous,
    GPNotCharacteristic,
    PatternMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Homogeneous(u8),
    NotHomogeneous(Reason),
}

impl Verdict {
    pub fn is_homogeneous(self) -> bool {
        matches!(self, Verdict::Homogeneous(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Homogeneous(case) => write!(f, "Homogeneous(case {case})"),
            Verdict::NotHomogeneous(reason) => write!(f, "NotHomogeneous({reason:?})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationOutcome {
    pub verdict: Verdict,
    /// `(column, row)` indices of the normalization cell examined last.
    pub normalization: (usize, usize),
    /// Labels `(1_I, 1_Λ)` of that cell.
    pub normalization_labels: (String, String),
    /// For table inputs, the label of the idempotent at that cell.
    pub idempotent_label: Option<String>,
    /// `G^P` as group labels, under that normalization.
    pub entry_set: Vec<String>,
    pub characteristic: bool,
    pub pattern: GraphPattern,
}

/// Brute-force homogeneity of a group's Cayley table.
pub fn group_is_homogeneous(g: &FiniteGroup) -> Result<bool> {
    Ok(is_homogeneous(&g.to_semigroup(), DEFAULT_SUBSEMIGROUP_CAP)?.homogeneous)
}

fn perfect_matching(m: &[Vec<usize>], colour: usize) -> bool {
    let n = m.len();
    (0..n).all(|r| m[r].iter().filter(|&&x| x == colour).count() == 1)
        && (0..n).all(|c| (0..n).filter(|&r| m[r][c] == colour).count() == 1)
}

/// Matches `P'` against the three finite nontrivial patterns.
fn match_case(s: &ReesMatrixSemigroup, gp: ElemSet) -> Option<u8> {
    let (c, r) = s.normalized_at()?;
    let g = s.group();
    let rows: Vec<usize> = (0..s.rows()).filter(|&x| x != r).collect();
    let cols: Vec<usize> = (0..s.cols()).filter(|&x| x != c).collect();
    let p: Vec<Vec<usize>> = rows
        .iter()
        .map(|&l| cols.iter().map(|&i| s.matrix().get(l, i)).collect())
        .collect();
    let e = g.identity();
    let a = gp.iter().find(|&x| x != e)?;
    let n = s.rows();
    if n != s.cols() {
        return None;
    }
    match (gp.len(), n) {
        (2, 2) => (p[0][0] == a).then_some(2),
        (3, 3) => {
            let b = g.inv(a);
            (p.iter().flatten().all(|&x| x != e)
                && perfect_matching(&p, a)
                && perfect_matching(&p, b))
            .then_some(3)
        }
        (2, 4) => {
            (perfect_matching(&p, e) && p.iter().flatten().all(|&x| x == e || x == a)).then_some(4)
        }
        _ => None,
    }
}

/// Classification of a Rees matrix semigroup by group homogeneity, the
/// entry set and the pattern of `P'`, trying every normalization cell.
pub fn classify_homogeneous(s: &Arc<ReesMatrixSemigroup>) -> Result<ClassificationOutcome> {
    let group_ok = group_is_homogeneous(s.group())?;
    let mut best: Option<(u8, ClassificationOutcome)> = None;
    for c in 0..s.cols() {
        for r in 0..s.rows() {
            let (t, _) = s.normalize(c, r)?;
            let data = t.entry_group_data();
            let gp = data.entries;
            let characteristic =
                gp == data.generated && preserved_by_automorphisms(t.group(), gp).characteristic;
            let pattern = EdgeColouredBipartiteGraph::from_matrix(t.matrix(), Some((r, c)))?
                .classify_pattern();
            let mut outcome = ClassificationOutcome {
                verdict: Verdict::NotHomogeneous(Reason::GroupNotHomogeneous),
                normalization: (c, r),
                normalization_labels: (
                    t.matrix().col_labels()[c].clone(),
                    t.matrix().row_labels()[r].clone(),
                ),
                idempotent_label: None,
                entry_set: t.group().set_labels(gp),
                characteristic,
                pattern,
            };
            let (rank, verdict) = if !group_ok {
                (4, Verdict::NotHomogeneous(Reason::GroupNotHomogeneous))
            } else if gp.len() == 1 {
                (5, Verdict::Homogeneous(1))
            } else {
                let screen = screen_necessary(&t)?;
                if screen.passed() {
                    match match_case(&t, gp) {
                        Some(case) => (5, Verdict::Homogeneous(case)),
                        None => (3, Verdict::NotHomogeneous(Reason::PatternMismatch)),
                    }
                } else if screen.failed_only_characteristic() {
                    (2, Verdict::NotHomogeneous(Reason::GPNotCharacteristic))
                } else {
                    (1, Verdict::NotHomogeneous(Reason::FailedScreen))
                }
            };
            outcome.verdict = verdict;
            if rank == 5 || rank == 4 {
                return Ok(outcome);
            }
            if best.as_ref().is_none_or(|(b, _)| rank > *b) {
                best = Some((rank, outcome));
            }
        }
    }
    Ok(best.expect("index sets are nonempty").1)
}

/// Classification of an abstract table, via Rees coordinates; the reported
/// cell is translated back to the idempotent it names.
pub fn classify_table(s: &FiniteSemigroup) -> Result<ClassificationOutcome> {
    let coords = s.rees_coordinatize()?;
    let rms = Arc::new(coords.rms);
    let mut outcome = classify_homogeneous(&rms)?;
    let (c, r) = outcome.normalization;
    let e = rms.index_of(rms.idempotent_at(c, r)?);
    let x = coords
        .iso
        .iter()
        .position(|&t| t == e)
        .expect("coordinate map is a bijection");
    outcome.idempotent_label = Some(s.label(x).to_string());
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionReport {
    pub group_homogeneous: bool,
    pub idempotent_generated_homogeneous: bool,
    pub characteristic: bool,
    pub homogeneous: bool,
}

/// The three conditions `G` homogeneous, `⟨E(S)⟩` homogeneous and `G^P` a
/// characteristic subgroup, each by brute force.
pub fn decompose_check(s: &ReesMatrixSemigroup) -> Result<DecompositionReport> {
    s.normalized_at().ok_or(Error::NotNormalized)?;
    let group_homogeneous = group_is_homogeneous(s.group())?;
    let e = s.idempotent_generated()?.try_to_semigroup()?;
    let idempotent_generated_homogeneous =
        is_homogeneous(&e, DEFAULT_SUBSEMIGROUP_CAP)?.homogeneous;
    let data = s.entry_group_data();
    let characteristic = data.entries == data.generated
        && preserved_by_automorphisms(s.group(), data.entries).characteristic;
    Ok(DecompositionReport {
        group_homogeneous,
        idempotent_generated_homogeneous,
        characteristic,
        homogeneous: group_homogeneous && idempotent_generated_homogeneous && characteristic,
    })
}

/// One instance of the verdict sweep.
#[derive(Debug, Clone)]
pub struct SweepInstance {
    pub rms: Arc<ReesMatrixSemigroup>,
    pub brute: bool,
    pub classified: Verdict,
    pub decomposition: DecompositionReport,
    pub regular: bool,
    pub completely_simple: bool,
}

impl SweepInstance {
    pub fn agrees(&self) -> bool {
        self.brute == self.classified.is_homogeneous()
            && self.brute == self.decomposition.homogeneous
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub instances: usize,
    pub homogeneous: usize,
    pub disagreements: Vec<SweepInstance>,
    /// Instances breaking a one-directional consequence of homogeneity.
    pub invariant_failures: Vec<(SweepInstance, &'static str)>,
    /// Regular homogeneous instances that are not completely simple.
    pub regular_not_completely_simple: usize,
    /// Set when the deadline cut the sweep short.
    pub interrupted: bool,
}

/// Groups of order at most `n` up to isomorphism (`n ≤ 7`).
pub fn groups_up_to(n: usize) -> Result<Vec<Arc<FiniteGroup>>> {
    if n > 7 {
        return Err(Error::InvalidArgument(
            "sweep groups are tabulated up to order 7".into(),
        ));
    }
    let mut out = Vec::new();
    for k in 1..=n {
        out.push(Arc::new(FiniteGroup::cyclic(k)));
        if k == 4 {
            out.push(Arc::new(FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2),
                &FiniteGroup::cyclic(2),
            )));
        }
        if k == 6 {
            out.push(Arc::new(FiniteGroup::symmetric(3)));
        }
    }
    Ok(out)
}

/// Every normalized `rows × cols` matrix over `g`: row and column 1 are `ε`,
/// the remaining entries run over `g` in odometer order.
pub fn normalized_matrices(
    g: &Arc<FiniteGroup>,
    rows: usize,
    cols: usize,
) -> Vec<Arc<ReesMatrixSemigroup>> {
    let free: Vec<usize> = (1..rows)
        .flat_map(|r| (1..cols).map(move |c| r * cols + c))
        .collect();
    let n = g.order();
    let mut digits = vec![0usize; free.len()];
    let mut out = Vec::new();
    loop {
        let mut entries = vec![g.identity(); rows * cols];
        for (&cell, &d) in free.iter().zip(&digits) {
            entries[cell] = d;
        }
        let m = SandwichMatrix::new(g.clone(), rows, cols, entries).expect("valid shape");
        out.push(Arc::new(
            ReesMatrixSemigroup::normalized(m, 0, 0).expect("normalized by construction"),
        ));
        let mut k = 0;
        loop {
            if k == digits.len() {
                return out;
            }
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

pub fn evaluate(rms: &Arc<ReesMatrixSemigroup>) -> Result<SweepInstance> {
    let table = rms.try_to_semigroup()?;
    let brute = is_homogeneous(&table, DEFAULT_SUBSEMIGROUP_CAP)?.homogeneous;
    Ok(SweepInstance {
        rms: rms.clone(),
        brute,
        classified: classify_homogeneous(rms)?.verdict,
        decomposition: decompose_check(rms)?,
        regular: table.is_regular(),
        completely_simple: table.is_completely_simple(),
    })
}

fn invariant_failure(x: &SweepInstance) -> Result<Option<&'static str>> {
    let s = &x.rms;
    if x.classified.is_homogeneous() && !screen_necessary(s)?.passed() {
        return Ok(Some("classified homogeneous but the screen fails"));
    }
    if x.brute {
        let (_, gamma) = s.induced_graphs()?;
        if !gamma.is_homogeneous().homogeneous {
            return Ok(Some(
                "homogeneous semigroup with a non-homogeneous induced graph",
            ));
        }
        let data = s.entry_group_data();
        let (c, r) = s.normalized_at().expect("sweep instances are normalized");
        let uniform = data
            .columns
            .iter()
            .enumerate()
            .all(|(i, &col)| i == c || col == data.entries)
            && data
                .rows
                .iter()
                .enumerate()
                .all(|(l, &row)| l == r || row == data.entries);
        if !uniform {
            return Ok(Some(
                "homogeneous semigroup whose rows or columns miss entries",
            ));
        }
    }
    let table = s.to_semigroup();
    let idem = table.idempotents();
    let orthodox = idem
        .iter()
        .all(|a| idem.iter().all(|b| idem.contains(table.mul(a, b))));
    let case1 = x.classified == Verdict::Homogeneous(1);
    if case1 != (orthodox && x.decomposition.group_homogeneous) {
        return Ok(Some(
            "case 1 differs from orthodox with a homogeneous group",
        ));
    }
    Ok(None)
}

/// Runs the three verdicts over every normalized matrix with index sets of
/// size at most `max_index` over each group, stopping early at the deadline.
pub fn sweep(
    groups: &[Arc<FiniteGroup>],
    max_index: usize,
    deadline: Option<std::time::Instant>,
) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for g in groups {
        for rows in 1..=max_index {
            for cols in 1..=max_index {
                for rms in normalized_matrices(g, rows, cols) {
                    if deadline.is_some_and(|d| std::time::Instant::now() >= d) {
                        report.interrupted = true;
                        return Ok(report);
                    }
                    let x = evaluate(&rms)?;
                    report.instances += 1;
                    if x.brute {
                        report.homogeneous += 1;
                        if x.regular && !x.completely_simple {
                            report.regular_not_completely_simple += 1;
                        }
                    }
                    if let Some(why) = invariant_failure(&x)? {
                        report.invariant_failures.push((x.clone(), why));
                    }
                    if !x.agrees() {
                        report.disagreements.push(x);
                    }
                }
            }
        }
    }
    Ok(report)
}
