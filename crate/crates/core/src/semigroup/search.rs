//! Backtracking search for morphisms between semigroup tables.
//!
//! The source is generated by a greedy sequence of generators (any fixed
//! elements first). Choosing an image for a generator determines the images
//! of everything newly reached in the closure, so each level is one choice
//! followed by forced propagation and a product check on the new pairs.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use super::FiniteSemigroup;
use crate::bits::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Embedding,
    Isomorphism,
}

/// Per-element data preserved by isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Profile {
    index: usize,
    period: usize,
    idempotent: bool,
    right_ideal: usize,
    left_ideal: usize,
    left_fixers: usize,
    right_fixers: usize,
    left_identity_for: usize,
    right_identity_for: usize,
    square_roots: usize,
}

pub(crate) fn profiles(s: &FiniteSemigroup) -> Vec<Profile> {
    let n = s.len();
    let right = s.right_ideals();
    let left = s.left_ideals();
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[s.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| {
            let (index, period) = s.index_period(x);
            Profile {
                index,
                period,
                idempotent: s.is_idempotent(x),
                right_ideal: right[x].len(),
                left_ideal: left[x].len(),
                left_fixers: (0..n).filter(|&y| s.mul(y, x) == x).count(),
                right_fixers: (0..n).filter(|&y| s.mul(x, y) == x).count(),
                left_identity_for: (0..n).filter(|&y| s.mul(x, y) == y).count(),
                right_identity_for: (0..n).filter(|&y| s.mul(y, x) == y).count(),
                square_roots: roots[x],
            }
        })
        .collect()
}

/// Sorted profile multiset: equal for isomorphic semigroups.
pub(crate) fn invariant_key(s: &FiniteSemigroup) -> Vec<Profile> {
    let mut p = profiles(s);
    p.sort();
    p
}

#[derive(Debug, Clone)]
enum Step {
    Choose(usize),
    Derive {
        elem: usize,
        left: usize,
        right: usize,
    },
}

/// A configured morphism search. Fixed pairs pin images in advance.
pub struct MorphismSearch<'a> {
    src: &'a FiniteSemigroup,
    dst: &'a FiniteSemigroup,
    kind: MapKind,
    fixed: Vec<Option<usize>>,
}

impl<'a> MorphismSearch<'a> {
    pub fn new(src: &'a FiniteSemigroup, dst: &'a FiniteSemigroup, kind: MapKind) -> Self {
        MorphismSearch {
            src,
            dst,
            kind,
            fixed: vec![None; src.len()],
        }
    }

    /// Requires `x ↦ y` for each pair.
    pub fn fix(mut self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        for (x, y) in pairs {
            self.fixed[x] = Some(y);
        }
        self
    }

    pub fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        out.sort();
        out
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.for_each(|m| {
            out = Some(m.to_vec());
            ControlFlow::Break(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut k = 0;
        self.for_each(|_| {
            k += 1;
            ControlFlow::Continue(())
        });
        k
    }

    /// Calls `visit` on every morphism until it breaks. Returns `false` if
    /// the visitor stopped the search.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> bool {
        let (n, m) = (self.src.len(), self.dst.len());
        if n == 0 {
            return visit(&[]).is_continue();
        }
        match self.kind {
            MapKind::Isomorphism if n != m => return true,
            MapKind::Embedding if n > m => return true,
            _ => {}
        }
        if m == 0 {
            return true;
        }
        let compat = self.compatibility();
        if (0..n).any(|x| compat[x].is_empty()) {
            return true;
        }
        let levels = self.plan(&compat);
        let mut state = State {
            map: vec![usize::MAX; n],
            used: ElemSet::EMPTY,
            closed: ElemSet::EMPTY,
        };
        self.descend(&levels, 0, &compat, &mut state, &mut visit)
            .is_continue()
    }

    /// Candidate images of each source element.
    fn compatibility(&self) -> Vec<ElemSet> {
        let (src, dst) = (self.src, self.dst);
        let (n, m) = (src.len(), dst.len());
        let mut compat = vec![ElemSet::EMPTY; n];
        match self.kind {
            MapKind::Isomorphism => {
                let (ps, pd) = (profiles(src), profiles(dst));
                for x in 0..n {
                    compat[x] = (0..m).filter(|&y| ps[x] == pd[y]).collect();
                }
            }
            MapKind::Embedding => {
                let ip_s: Vec<_> = (0..n).map(|x| src.index_period(x)).collect();
                let ip_d: Vec<_> = (0..m).map(|y| dst.index_period(y)).collect();
                for x in 0..n {
                    compat[x] = (0..m).filter(|&y| ip_s[x] == ip_d[y]).collect();
                }
            }
            MapKind::Homomorphism => {
                let ip_s: Vec<_> = (0..n).map(|x| src.index_period(x)).collect();
                let ip_d: Vec<_> = (0..m).map(|y| dst.index_period(y)).collect();
                for x in 0..n {
                    let (i, p) = ip_s[x];
                    compat[x] = (0..m)
                        .filter(|&y| ip_d[y].0 <= i && p % ip_d[y].1 == 0)
                        .collect();
                }
            }
        }
        for x in 0..n {
            if let Some(y) = self.fixed[x] {
                compat[x] = compat[x].intersection(ElemSet::singleton(y));
            }
        }
        compat
    }

    /// Generator levels: each level is a choice followed by derivations.
    fn plan(&self, compat: &[ElemSet]) -> Vec<Vec<Step>> {
        let src = self.src;
        let n = src.len();
        let full = src.full_set();
        let mut closed = ElemSet::EMPTY;
        let mut levels = Vec::new();
        let fixed_first: Vec<usize> = (0..n).filter(|&x| self.fixed[x].is_some()).collect();
        let mut fixed_iter = fixed_first.into_iter();
        while closed != full {
            let gen = loop {
                match fixed_iter.next() {
                    Some(x) if !closed.contains(x) => break Some(x),
                    Some(_) => continue,
                    None => break None,
                }
            };
            let gen = gen.unwrap_or_else(|| {
                (0..n)
                    .filter(|&x| !closed.contains(x))
                    .max_by_key(|&x| {
                        let gain = src.extend_closure(closed, x).len();
                        (
                            gain,
                            std::cmp::Reverse(compat[x].len()),
                            std::cmp::Reverse(x),
                        )
                    })
                    .unwrap()
            });
            let mut steps = vec![Step::Choose(gen)];
            closed.insert(gen);
            let mut queue = VecDeque::from([gen]);
            while let Some(y) = queue.pop_front() {
                for z in closed.iter() {
                    for (l, r) in [(y, z), (z, y)] {
                        let p = src.mul(l, r);
                        if closed.insert(p) {
                            steps.push(Step::Derive {
                                elem: p,
                                left: l,
                                right: r,
                            });
                            queue.push_back(p);
                        }
                    }
                }
            }
            levels.push(steps);
        }
        levels
    }

    fn descend(
        &self,
        levels: &[Vec<Step>],
        depth: usize,
        compat: &[ElemSet],
        state: &mut State,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(steps) = levels.get(depth) else {
            return visit(&state.map);
        };
        let Step::Choose(gen) = steps[0] else {
            unreachable!()
        };
        let injective = self.kind != MapKind::Homomorphism;
        for cand in compat[gen].iter() {
            if injective && state.used.contains(cand) {
                continue;
            }
            let saved_used = state.used;
            let saved_closed = state.closed;
            if self.apply_level(steps, cand, compat, state) {
                self.descend(levels, depth + 1, compat, state, visit)?;
            }
            for step in steps {
                let e = match *step {
                    Step::Choose(x) => x,
                    Step::Derive { elem, .. } => elem,
                };
                state.map[e] = usize::MAX;
            }
            state.used = saved_used;
            state.closed = saved_closed;
        }
        ControlFlow::Continue(())
    }

    fn apply_level(
        &self,
        steps: &[Step],
        cand: usize,
        compat: &[ElemSet],
        state: &mut State,
    ) -> bool {
        let injective = self.kind != MapKind::Homomorphism;
        let (src, dst) = (self.src, self.dst);
        let mut fresh = ElemSet::EMPTY;
        for step in steps {
            let (e, v) = match *step {
                Step::Choose(x) => (x, cand),
                Step::Derive { elem, left, right } => {
                    (elem, dst.mul(state.map[left], state.map[right]))
                }
            };
            if !compat[e].contains(v) || (injective && state.used.contains(v)) {
                return false;
            }
            state.map[e] = v;
            state.used.insert(v);
            state.closed.insert(e);
            fresh.insert(e);
        }
        // Products involving a new element; old pairs were checked earlier.
        for a in fresh.iter() {
            for b in state.closed.iter() {
                if state.map[src.mul(a, b)] != dst.mul(state.map[a], state.map[b])
                    || state.map[src.mul(b, a)] != dst.mul(state.map[b], state.map[a])
                {
                    return false;
                }
            }
        }
        true
    }
}

struct State {
    map: Vec<usize>,
    used: ElemSet,
    closed: ElemSet,
}

/// All isomorphisms `a → b` as image vectors, sorted.
pub fn enumerate_isomorphisms(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Vec<Vec<usize>> {
    MorphismSearch::new(a, b, MapKind::Isomorphism).all()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;

    /// Oracle: every map of the right kind, checked on all pairs.
    fn brute(a: &FiniteSemigroup, b: &FiniteSemigroup, kind: MapKind) -> Vec<Vec<usize>> {
        let (n, m) = (a.len(), b.len());
        let mut out = Vec::new();
        let total = (m as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let x = (c % m as u64) as usize;
                    c /= m as u64;
                    x
                })
                .collect();
            let image: ElemSet = map.iter().copied().collect();
            let ok_kind = match kind {
                MapKind::Homomorphism => true,
                MapKind::Embedding => image.len() == n,
                MapKind::Isomorphism => image.len() == n && n == m,
            };
            if ok_kind && (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
            {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    fn left_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::rectangular_band(n, 1)
    }

    fn right_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::rectangular_band(1, n)
    }

    #[test]
    fn isomorphism_examples() {
        let band = FiniteSemigroup::rectangular_band(2, 2);
        assert_eq!(enumerate_isomorphisms(&band, &band).len(), 4);
        assert_eq!(brute(&band, &band, MapKind::Isomorphism).len(), 4);
        let z2 = FiniteGroup::cyclic(2).to_semigroup();
        let z3 = FiniteGroup::cyclic(3).to_semigroup();
        assert!(enumerate_isomorphisms(&z2, &z3).is_empty());
        assert!(enumerate_isomorphisms(&left_zero(2), &right_zero(2)).is_empty());
    }

    #[test]
    fn search_matches_brute_force() {
        let small = vec![
            FiniteSemigroup::rectangular_band(2, 2),
            FiniteSemigroup::rectangular_band(1, 3),
            FiniteSemigroup::rectangular_band(3, 1),
            FiniteSemigroup::monogenic(2, 2),
            FiniteSemigroup::monogenic(1, 3),
            FiniteGroup::cyclic(2).to_semigroup(),
            FiniteGroup::cyclic(4).to_semigroup(),
            FiniteSemigroup::from_fn(vec!["0".into(), "1".into()], |a, b| a.min(b)).unwrap(),
        ];
        for a in &small {
            for b in &small {
                if (b.len() as u64).pow(a.len() as u32) > 70_000 {
                    continue;
                }
                for kind in [
                    MapKind::Homomorphism,
                    MapKind::Embedding,
                    MapKind::Isomorphism,
                ] {
                    assert_eq!(
                        MorphismSearch::new(a, b, kind).all(),
                        brute(a, b, kind),
                        "{kind:?} {:?} -> {:?}",
                        a.labels(),
                        b.labels()
                    );
                }
            }
        }
    }

    #[test]
    fn fixed_pairs_are_respected() {
        let band = FiniteSemigroup::rectangular_band(2, 2);
        let all = enumerate_isomorphisms(&band, &band);
        let pinned = MorphismSearch::new(&band, &band, MapKind::Isomorphism)
            .fix([(0, 3)])
            .all();
        assert_eq!(
            pinned,
            all.into_iter().filter(|m| m[0] == 3).collect::<Vec<_>>()
        );
    }

    #[test]
    fn automorphisms_of_s2_are_automorphisms() {
        let s = corpus::s2().to_semigroup();
        let auts = enumerate_isomorphisms(&s, &s);
        assert!(!auts.is_empty());
        for f in &auts {
            for x in 0..s.len() {
                for y in 0..s.len() {
                    assert_eq!(f[s.mul(x, y)], s.mul(f[x], f[y]));
                }
            }
        }
    }
}
