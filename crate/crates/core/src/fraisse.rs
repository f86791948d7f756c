//! Bounded Fraïssé checks: ages, joint embedding, amalgamation, the
//! completely simple amalgam construction, and generic matrix growth.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::Rng;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeColouredBipartiteGraph, Palette};
use crate::group::{Elem, FiniteGroup, GroupMorphism};
use crate::rees::{ReesMatrixSemigroup, SandwichMatrix};
use crate::rms_morphism::RmsMorphism;
use crate::semigroup::{
    enumerate_isomorphisms, invariant_key, orbit_representatives, FiniteSemigroup, MapKind,
    MorphismSearch,
};

/// Isomorphism-class representatives of bounded size.
#[derive(Debug, Clone)]
pub struct AgeSample {
    pub bound: usize,
    pub members: Vec<FiniteSemigroup>,
}

pub fn are_isomorphic(a: &FiniteSemigroup, b: &FiniteSemigroup) -> bool {
    a.len() == b.len()
        && invariant_key(a) == invariant_key(b)
        && MorphismSearch::new(a, b, MapKind::Isomorphism)
            .first()
            .is_some()
}

fn embeds(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Option<Vec<usize>> {
    MorphismSearch::new(a, b, MapKind::Embedding).first()
}

impl AgeSample {
    /// Keeps the first member of each isomorphism class, then sorts by size.
    pub fn from_members(bound: usize, members: impl IntoIterator<Item = FiniteSemigroup>) -> Self {
        let mut kept: Vec<FiniteSemigroup> = Vec::new();
        for m in members {
            if m.len() <= bound && !kept.iter().any(|k| are_isomorphic(k, &m)) {
                kept.push(m);
            }
        }
        kept.sort_by_key(|m| m.len());
        AgeSample {
            bound,
            members: kept,
        }
    }

    /// Rectangular bands `m × n` with `m, n ≤ max_side`.
    pub fn rectangular_bands(max_side: usize) -> Self {
        let members = (1..=max_side)
            .flat_map(|m| (1..=max_side).map(move |n| FiniteSemigroup::rectangular_band(m, n)));
        Self::from_members(max_side * max_side, members)
    }

    pub fn position(&self, s: &FiniteSemigroup) -> Option<usize> {
        self.members.iter().position(|m| are_isomorphic(m, s))
    }
}

/// Representatives of the nonempty subsemigroups of `s` of size at most
/// `bound`, one per isomorphism class.
pub fn age(s: &FiniteSemigroup, bound: usize, cap: usize) -> Result<AgeSample> {
    let auts = enumerate_isomorphisms(s, s);
    let reps = orbit_representatives(s, &auts, cap)?;
    let subs = reps
        .into_iter()
        .filter(|r| r.set.len() <= bound)
        .map(|r| s.restrict(r.set).map(|(t, _)| t))
        .collect::<Result<Vec<_>>>()?;
    Ok(AgeSample::from_members(bound, subs))
}

/// Every subsemigroup of every member of `k` is isomorphic to a member of
/// `within`. Returns the first offender as `(member, subsemigroup)`.
pub fn check_hp(
    k: &[FiniteSemigroup],
    within: &AgeSample,
    cap: usize,
) -> Result<Option<(usize, ElemSet)>> {
    for (idx, s) in k.iter().enumerate() {
        let auts = enumerate_isomorphisms(s, s);
        for rep in orbit_representatives(s, &auts, cap)? {
            let (sub, _) = s.restrict(rep.set)?;
            if within.position(&sub).is_none() {
                return Ok(Some((idx, rep.set)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointEmbedding {
    pub member: usize,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct JepReport {
    pub holds: bool,
    /// `((a, b), witness)` for every pair `a ≤ b` of indices into `K`.
    pub witnesses: Vec<((usize, usize), Option<JointEmbedding>)>,
}

/// Searches `within`, smallest first, for a common extension of every pair.
pub fn check_jep(k: &[FiniteSemigroup], within: &AgeSample) -> JepReport {
    let mut witnesses = Vec::new();
    for a in 0..k.len() {
        for b in a..k.len() {
            let w = within.members.iter().enumerate().find_map(|(idx, c)| {
                let f1 = embeds(&k[a], c)?;
                let f2 = embeds(&k[b], c)?;
                Some(JointEmbedding {
                    member: idx,
                    f1,
                    f2,
                })
            });
            witnesses.push(((a, b), w));
        }
    }
    JepReport {
        holds: witnesses.iter().all(|(_, w)| w.is_some()),
        witnesses,
    }
}

/// `f1: A → B1`, `f2: A → B2`, both verified embeddings.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub core: FiniteSemigroup,
    pub wings: [FiniteSemigroup; 2],
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

fn is_embedding(f: &[usize], a: &FiniteSemigroup, b: &FiniteSemigroup) -> bool {
    f.len() == a.len()
        && f.iter().all(|&x| x < b.len())
        && f.iter().copied().collect::<ElemSet>().len() == f.len()
        && (0..a.len()).all(|x| (0..a.len()).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

impl Amalgam {
    pub fn new(
        core: FiniteSemigroup,
        b1: FiniteSemigroup,
        b2: FiniteSemigroup,
        f1: Vec<usize>,
        f2: Vec<usize>,
    ) -> Result<Self> {
        if core.is_empty() {
            return Err(Error::InvalidAmalgam("empty core".into()));
        }
        if !is_embedding(&f1, &core, &b1) || !is_embedding(&f2, &core, &b2) {
            return Err(Error::InvalidAmalgam("wing maps are not embeddings".into()));
        }
        Ok(Amalgam {
            core,
            wings: [b1, b2],
            f1,
            f2,
        })
    }
}

/// Embeddings `a → b`, one per orbit of `Aut(b)` acting by post-composition.
pub fn embedding_orbit_representatives(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
) -> Vec<Vec<usize>> {
    let auts = enumerate_isomorphisms(b, b);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in MorphismSearch::new(a, b, MapKind::Embedding).all() {
        let canon = auts
            .iter()
            .map(|s| f.iter().map(|&x| s[x]).collect::<Vec<_>>())
            .min()
            .unwrap_or_else(|| f.clone());
        if seen.insert(canon) {
            out.push(f);
        }
    }
    out
}

/// Amalgams over every triple `(A, B1, B2)` drawn from `classes` with `A`
/// embedding in both wings; `f1`, `f2` range over embedding orbit
/// representatives.
pub fn amalgams_among(classes: &[FiniteSemigroup]) -> Vec<Amalgam> {
    let mut out = Vec::new();
    for a in classes {
        for (i, b1) in classes.iter().enumerate() {
            let e1 = embedding_orbit_representatives(a, b1);
            if e1.is_empty() {
                continue;
            }
            for b2 in &classes[i..] {
                for f2 in embedding_orbit_representatives(a, b2) {
                    for f1 in &e1 {
                        out.push(Amalgam {
                            core: a.clone(),
                            wings: [b1.clone(), b2.clone()],
                            f1: f1.clone(),
                            f2: f2.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamWitness {
    pub member: usize,
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ApReport {
    pub holds: bool,
    pub witnesses: Vec<Option<AmalgamWitness>>,
}

/// A `D` in `within` and embeddings `g_k: B_k → D` with `f1·g1 = f2·g2`.
pub fn find_amalgam(amalgam: &Amalgam, within: &AgeSample) -> Option<AmalgamWitness> {
    let [b1, b2] = &amalgam.wings;
    let need = b1.len().max(b2.len());
    for (idx, d) in within.members.iter().enumerate() {
        if d.len() < need {
            continue;
        }
        if embeds(b2, d).is_none() {
            continue;
        }
        let mut found = None;
        MorphismSearch::new(b1, d, MapKind::Embedding).for_each(|g1| {
            let pins = (0..amalgam.core.len()).map(|a| (amalgam.f2[a], g1[amalgam.f1[a]]));
            match MorphismSearch::new(b2, d, MapKind::Embedding)
                .fix(pins)
                .first()
            {
                Some(g2) => {
                    found = Some(AmalgamWitness {
                        member: idx,
                        g1: g1.to_vec(),
                        g2,
                    });
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn check_ap(amalgams: &[Amalgam], within: &AgeSample) -> ApReport {
    let witnesses: Vec<_> = amalgams.iter().map(|a| find_amalgam(a, within)).collect();
    ApReport {
        holds: witnesses.iter().all(Option::is_some),
        witnesses,
    }
}

/// The amalgamating semigroup `T` with its two validated embeddings.
#[derive(Debug, Clone)]
pub struct CsAmalgam {
    pub t: Arc<ReesMatrixSemigroup>,
    pub g1: RmsMorphism,
    pub g2: RmsMorphism,
}

fn labels_of(g: &FiniteGroup) -> Vec<String> {
    g.labels().to_vec()
}

/// Iso-class representatives of subgroups of `g` of order at most `bound`,
/// each carrying `g`'s labels.
fn subgroup_classes(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Arc<FiniteGroup>>> {
    let mut out: Vec<Arc<FiniteGroup>> = Vec::new();
    for set in g.all_subgroups() {
        if set.len() > bound {
            continue;
        }
        let k = Arc::new(g.subgroup(set)?.0);
        if !out.iter().any(|o| FiniteGroup::is_isomorphic(o, &k)) {
            out.push(k);
        }
    }
    Ok(out)
}

/// A group `K` and embeddings of `h1`, `h2` into it agreeing on the
/// labels they share.
fn group_amalgam(
    h1: &Arc<FiniteGroup>,
    h2: &Arc<FiniteGroup>,
    candidates: &[Arc<FiniteGroup>],
) -> Option<(Arc<FiniteGroup>, GroupMorphism, GroupMorphism)> {
    let (t1, t2) = (h1.to_semigroup(), h2.to_semigroup());
    let shared: Vec<(Elem, Elem)> = h1
        .elements()
        .filter_map(|x| h2.index_of(h1.label(x)).ok().map(|y| (x, y)))
        .collect();
    for k in candidates {
        let tk = k.to_semigroup();
        let mut out = None;
        MorphismSearch::new(&t1, &tk, MapKind::Embedding).for_each(|phi1| {
            let pins = shared.iter().map(|&(x, y)| (y, phi1[x]));
            if let Some(phi2) = MorphismSearch::new(&t2, &tk, MapKind::Embedding)
                .fix(pins)
                .first()
            {
                out = Some((phi1.to_vec(), phi2));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some((m1, m2)) = out {
            let g1 = GroupMorphism::new(h1.clone(), k.clone(), m1).ok()?;
            let g2 = GroupMorphism::new(h2.clone(), k.clone(), m2).ok()?;
            return Some((k.clone(), g1, g2));
        }
    }
    None
}

fn label_set(labels: &[String]) -> BTreeSet<&str> {
    labels.iter().map(String::as_str).collect()
}

/// Amalgamates normalized `b1 ⊇ core ⊆ b2`, overlapping by label identity,
/// into `M[K; I1 ∪ I2, Λ1 ∪ Λ2; Q]`. `K` is searched among subgroups of `g`
/// up to `group_bound`; `Q` takes the wing entries through the group
/// embeddings and `ε` elsewhere.
pub fn amalgamate_cs(
    core: &ReesMatrixSemigroup,
    b1: &ReesMatrixSemigroup,
    b2: &ReesMatrixSemigroup,
    g: &Arc<FiniteGroup>,
    group_bound: usize,
) -> Result<CsAmalgam> {
    let mismatch = |m: &str| Error::CoreMismatch(m.to_string());
    let cell = |s: &ReesMatrixSemigroup| -> Result<(String, String)> {
        let (c, r) = s.normalized_at().ok_or(Error::NotNormalized)?;
        Ok((
            s.matrix().col_labels()[c].clone(),
            s.matrix().row_labels()[r].clone(),
        ))
    };
    let c0 = cell(core)?;
    if cell(b1)? != c0 || cell(b2)? != c0 {
        return Err(mismatch("normalization cells differ"));
    }
    let (m0, m1, m2) = (core.matrix(), b1.matrix(), b2.matrix());
    for (w, m) in [(b1, m1), (b2, m2)] {
        let gl = label_set(w.group().labels());
        if !core
            .group()
            .labels()
            .iter()
            .all(|l| gl.contains(l.as_str()))
        {
            return Err(mismatch("core group is not contained in a wing group"));
        }
        if !label_set(m0.col_labels()).is_subset(&label_set(m.col_labels()))
            || !label_set(m0.row_labels()).is_subset(&label_set(m.row_labels()))
        {
            return Err(mismatch("core index set is not contained in a wing"));
        }
        for r in 0..m0.rows() {
            for c in 0..m0.cols() {
                let wr = m.row_index(&m0.row_labels()[r])?;
                let wc = m.col_index(&m0.col_labels()[c])?;
                if w.group().label(m.get(wr, wc)) != core.group().label(m0.get(r, c)) {
                    return Err(mismatch(&format!(
                        "entry ({}, {}) differs from the core",
                        m0.row_labels()[r],
                        m0.col_labels()[c]
                    )));
                }
            }
        }
    }
    let overlap = |a: &[String], b: &[String], core: &[String]| {
        label_set(a).intersection(&label_set(b)).count() == core.len()
    };
    if !overlap(m1.col_labels(), m2.col_labels(), m0.col_labels())
        || !overlap(m1.row_labels(), m2.row_labels(), m0.row_labels())
    {
        return Err(mismatch("wings overlap outside the core"));
    }
    let shared_groups = label_set(b1.group().labels())
        .intersection(&label_set(b2.group().labels()))
        .count();
    if shared_groups != core.group().order() {
        return Err(mismatch("wing groups overlap outside the core group"));
    }

    let candidates = subgroup_classes(g, group_bound)?;
    let (k, phi1, phi2) = group_amalgam(b1.group(), b2.group(), &candidates)
        .ok_or(Error::NoGroupAmalgamFound(group_bound))?;

    let mut cols: Vec<String> = m1.col_labels().to_vec();
    cols.extend(
        m2.col_labels()
            .iter()
            .filter(|l| !m1.col_labels().contains(l))
            .cloned(),
    );
    let mut rows: Vec<String> = m1.row_labels().to_vec();
    rows.extend(
        m2.row_labels()
            .iter()
            .filter(|l| !m1.row_labels().contains(l))
            .cloned(),
    );
    let e = k.identity();
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for rl in &rows {
        for cl in &cols {
            let x = match (
                m1.row_index(rl),
                m1.col_index(cl),
                m2.row_index(rl),
                m2.col_index(cl),
            ) {
                (Ok(r), Ok(c), _, _) => phi1.apply(m1.get(r, c)),
                (_, _, Ok(r), Ok(c)) => phi2.apply(m2.get(r, c)),
                _ => e,
            };
            entries.push(x);
        }
    }
    let c = cols.iter().position(|l| *l == c0.0).unwrap();
    let r = rows.iter().position(|l| *l == c0.1).unwrap();
    let matrix = SandwichMatrix::with_labels(k.clone(), rows.clone(), cols.clone(), entries)?;
    let t = Arc::new(ReesMatrixSemigroup::normalized(matrix, c, r)?);
    let embed = |w: &ReesMatrixSemigroup, phi: GroupMorphism| -> Result<RmsMorphism> {
        let m = w.matrix();
        let psi_i = m
            .col_labels()
            .iter()
            .map(|l| cols.iter().position(|x| x == l).unwrap())
            .collect();
        let psi_l = m
            .row_labels()
            .iter()
            .map(|l| rows.iter().position(|x| x == l).unwrap())
            .collect();
        RmsMorphism::new(
            Arc::new(w.clone()),
            t.clone(),
            phi,
            psi_i,
            psi_l,
            vec![e; m.cols()],
            vec![e; m.rows()],
        )?
        .into_validated()
        .map_err(|err| Error::VerificationFailed(format!("amalgam embedding: {err}")))
    };
    let g1 = embed(b1, phi1)?;
    let g2 = embed(b2, phi2)?;
    Ok(CsAmalgam { t, g1, g2 })
}

/// A random normalized amalgam over subgroups of `h ≤ g` with index sets of
/// size at most `max_index`: core labels `1..`, wing-only labels `x1..` and
/// `y1..`. The core group is the intersection of the wing groups.
pub fn random_cs_amalgam(
    rng: &mut impl Rng,
    g: &Arc<FiniteGroup>,
    h: ElemSet,
    max_index: usize,
) -> Result<[ReesMatrixSemigroup; 3]> {
    if !g.is_subgroup(h) {
        return Err(Error::NotASubgroup(format!("{:?}", g.set_labels(h))));
    }
    let subs: Vec<ElemSet> = g
        .all_subgroups()
        .into_iter()
        .filter(|s| s.is_subset(h))
        .collect();
    let h1 = subs[rng.gen_range(0..subs.len())];
    let h2 = subs[rng.gen_range(0..subs.len())];
    let h0 = h1.intersection(h2);
    let n0 = (rng.gen_range(1..=max_index), rng.gen_range(1..=max_index));
    let size =
        |rng: &mut dyn rand::RngCore, base: usize| base + rng.gen_range(0..=max_index - base);
    let n1 = (size(rng, n0.0), size(rng, n0.1));
    let n2 = (size(rng, n0.0), size(rng, n0.1));
    let labels = |base: usize, n: usize, tag: &str| -> Vec<String> {
        (1..=base)
            .map(|k| k.to_string())
            .chain((1..=n - base).map(|k| format!("{tag}{k}")))
            .collect()
    };
    let pick = |rng: &mut dyn rand::RngCore, set: ElemSet| {
        set.iter().nth(rng.gen_range(0..set.len())).unwrap()
    };
    let mut core_entries = HashMap::new();
    for r in 1..n0.1 {
        for c in 1..n0.0 {
            core_entries.insert((r, c), pick(rng, h0));
        }
    }
    let build = |rng: &mut dyn rand::RngCore,
                 set: ElemSet,
                 n: (usize, usize),
                 tag: &str|
     -> Result<ReesMatrixSemigroup> {
        let (sub, members) = g.subgroup(set)?;
        let pos = |x: Elem| members.iter().position(|&m| m == x).unwrap();
        let mut entries = Vec::with_capacity(n.0 * n.1);
        for r in 0..n.1 {
            for c in 0..n.0 {
                let x = if r == 0 || c == 0 {
                    g.identity()
                } else if r < n0.1 && c < n0.0 {
                    core_entries[&(r, c)]
                } else {
                    pick(rng, set)
                };
                entries.push(pos(x));
            }
        }
        let m = SandwichMatrix::with_labels(
            Arc::new(sub),
            labels(n0.1, n.1, tag),
            labels(n0.0, n.0, tag),
            entries,
        )?;
        ReesMatrixSemigroup::normalized(m, 0, 0)
    };
    let core = build(rng, h0, n0, "z")?;
    let b1 = build(rng, h1, n1, "x")?;
    let b2 = build(rng, h2, n2, "y")?;
    Ok([core, b1, b2])
}

fn missing_per_line(m: &[Vec<usize>], palette: usize, by_rows: bool) -> Vec<Vec<usize>> {
    let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
    let lines = if by_rows { nr } else { nc };
    (0..lines)
        .map(|k| {
            let seen: ElemSet = if by_rows {
                m[k].iter().copied().collect()
            } else {
                (0..nr).map(|r| m[r][k]).collect()
            };
            (0..palette).filter(|&c| !seen.contains(c)).collect()
        })
        .collect()
}

/// A normalized `M[G; I, Λ; P]` with `G^P = H` whose induced graph has no
/// level-`k` defects on the seed's vertices, after one witness pass (new
/// columns for row constraints, then new rows for column constraints, `ε`
/// fill) and a completion step adding rows and columns until every
/// non-normalized row and column of `P'` contains all of `H`. The default
/// seed is `M[G; 2, 2; ε]`.
pub fn grow_generic_rms(
    g: &Arc<FiniteGroup>,
    h: ElemSet,
    k: usize,
    seed: Option<&ReesMatrixSemigroup>,
) -> Result<ReesMatrixSemigroup> {
    if !g.is_subgroup(h) {
        return Err(Error::NotASubgroup(format!("{:?}", g.set_labels(h))));
    }
    let default_seed;
    let seed = match seed {
        Some(s) => s,
        None => {
            default_seed = ReesMatrixSemigroup::new(SandwichMatrix::trivial(g.clone(), 2, 2));
            &default_seed
        }
    };
    if labels_of(seed.group()) != labels_of(g) || **seed.group() != **g {
        return Err(Error::InvalidArgument(
            "seed is not over the given group".into(),
        ));
    }
    if let Some(&x) = seed.matrix().entries().iter().find(|&&x| !h.contains(x)) {
        return Err(Error::InvalidArgument(format!(
            "seed entry {} lies outside H",
            g.label(x)
        )));
    }
    let (c0, r0) = seed.normalized_at().ok_or(Error::NotNormalized)?;
    let m = seed.matrix();
    let palette = Palette::from_subgroup(g, h);
    let gamma = EdgeColouredBipartiteGraph::from_matrix(m, Some((r0, c0)))?;
    let grown = gamma.extend_to_k_generic_reserving(
        &palette,
        k,
        &[m.row_labels()[r0].clone()],
        &[m.col_labels()[c0].clone()],
    );

    // P' as palette indices, grown vertices appended.
    let colour_to_palette: Vec<usize> = grown
        .colours()
        .iter()
        .map(|c| palette.colours().iter().position(|p| p == c).unwrap())
        .collect();
    let mut p: Vec<Vec<usize>> = (0..grown.left().len())
        .map(|l| {
            (0..grown.right().len())
                .map(|r| colour_to_palette[grown.colour(l, r)])
                .collect()
        })
        .collect();
    let mut left: Vec<String> = grown.left().to_vec();
    let mut right: Vec<String> = grown.right().to_vec();
    let ncol = palette.colours().len();
    let fill = palette
        .colours()
        .iter()
        .position(|c| c == palette.fill())
        .unwrap();
    let fresh = |taken: &[String], reserved: &str| -> String {
        (1..)
            .map(|n: usize| n.to_string())
            .find(|l| l != reserved && !taken.contains(l))
            .unwrap()
    };
    if ncol > 1 {
        for _ in 0..64 {
            let miss_cols = missing_per_line(&p, ncol, false);
            let miss_rows = missing_per_line(&p, ncol, true);
            let cols_done = miss_cols.iter().all(Vec::is_empty);
            let rows_done = miss_rows.iter().all(Vec::is_empty);
            if cols_done && rows_done && !p.is_empty() {
                break;
            }
            if !cols_done || p.is_empty() {
                let mut row = Vec::with_capacity(right.len());
                let mut own = ElemSet::EMPTY;
                for mc in &miss_cols {
                    let x = mc
                        .first()
                        .copied()
                        .unwrap_or_else(|| (0..ncol).find(|&c| !own.contains(c)).unwrap_or(fill));
                    own.insert(x);
                    row.push(x);
                }
                p.push(row);
                left.push(fresh(&left, &m.row_labels()[r0]));
            } else {
                let mut own = ElemSet::EMPTY;
                let col: Vec<usize> = miss_rows
                    .iter()
                    .map(|mr| {
                        let x = mr.first().copied().unwrap_or_else(|| {
                            (0..ncol).find(|&c| !own.contains(c)).unwrap_or(fill)
                        });
                        own.insert(x);
                        x
                    })
                    .collect();
                for (row, x) in p.iter_mut().zip(col) {
                    row.push(x);
                }
                right.push(fresh(&right, &m.col_labels()[c0]));
            }
        }
    }

    // Seed rows and columns keep their positions; new ones are appended.
    let seed_rows: Vec<usize> = (0..m.rows()).filter(|&r| r != r0).collect();
    let seed_cols: Vec<usize> = (0..m.cols()).filter(|&c| c != c0).collect();
    let mut row_labels = m.row_labels().to_vec();
    row_labels.extend(left[seed_rows.len()..].iter().cloned());
    let mut col_labels = m.col_labels().to_vec();
    col_labels.extend(right[seed_cols.len()..].iter().cloned());
    let row_of = |k: usize| {
        if k < seed_rows.len() {
            seed_rows[k]
        } else {
            m.rows() + k - seed_rows.len()
        }
    };
    let col_of = |k: usize| {
        if k < seed_cols.len() {
            seed_cols[k]
        } else {
            m.cols() + k - seed_cols.len()
        }
    };
    let (nr, nc) = (row_labels.len(), col_labels.len());
    let members: Vec<Elem> = h.iter().collect();
    let mut entries = vec![g.identity(); nr * nc];
    for (l, row) in p.iter().enumerate() {
        for (r, &x) in row.iter().enumerate() {
            entries[row_of(l) * nc + col_of(r)] = members[x];
        }
    }
    let matrix = SandwichMatrix::with_labels(g.clone(), row_labels, col_labels, entries)?;
    ReesMatrixSemigroup::normalized(matrix, c0, r0)
}

/// `Γ(S)` level-`k` defects restricted to the first `n_rows` non-normalized
/// rows and `n_cols` non-normalized columns, colours `H`.
pub fn rms_defects(
    s: &ReesMatrixSemigroup,
    h: ElemSet,
    k: usize,
    n_rows: usize,
    n_cols: usize,
) -> Result<crate::graph::DefectReport> {
    let (c, r) = s.normalized_at().ok_or(Error::NotNormalized)?;
    let gamma = EdgeColouredBipartiteGraph::from_matrix(s.matrix(), Some((r, c)))?;
    let palette = Palette::from_subgroup(s.group(), h);
    Ok(gamma.k_generic_defects_within(&palette, k, n_rows, n_cols))
}
