//! Enumeration of subsemigroups, optionally up to an automorphism group.

use std::collections::{HashMap, HashSet, VecDeque};

use super::FiniteSemigroup;
use crate::bits::ElemSet;
use crate::error::{Error, Result};

pub const DEFAULT_SUBSEMIGROUP_CAP: usize = 2_000_000;

/// Every nonempty product-closed subset exactly once, ordered by size and
/// then by element indices.
pub fn all_subsemigroups(s: &FiniteSemigroup, cap: usize) -> Result<Vec<ElemSet>> {
    let n = s.len();
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut queue = VecDeque::new();
    for x in 0..n {
        let c = s.extend_closure(ElemSet::EMPTY, x);
        if seen.insert(c) {
            if seen.len() > cap {
                return Err(Error::CapExceeded(seen.len() - 1));
            }
            queue.push_back(c);
        }
    }
    while let Some(t) = queue.pop_front() {
        for x in 0..n {
            if t.contains(x) {
                continue;
            }
            let u = s.extend_closure(t, x);
            if seen.insert(u) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(seen.len() - 1));
                }
                queue.push_back(u);
            }
        }
    }
    let mut out: Vec<ElemSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    Ok(out)
}

/// One subsemigroup per orbit of `auts` (given as image vectors), with the
/// automorphisms stabilising it setwise.
#[derive(Debug, Clone)]
pub(crate) struct OrbitRep {
    pub set: ElemSet,
    pub stabilizer: Vec<usize>,
}

fn canonical(set: ElemSet, auts: &[Vec<usize>]) -> ElemSet {
    auts.iter().map(|a| set.map(a)).min().unwrap_or(set)
}

/// Breadth-first search over orbit representatives: every subsemigroup is
/// `⟨T ∪ {x}⟩` for a proper closed `T`, so extending representatives reaches
/// every orbit. The cap bounds the number of orbits visited.
pub(crate) fn orbit_representatives(
    s: &FiniteSemigroup,
    auts: &[Vec<usize>],
    cap: usize,
) -> Result<Vec<OrbitRep>> {
    let n = s.len();
    let mut reps: HashMap<ElemSet, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut push = |set: ElemSet, queue: &mut VecDeque<ElemSet>| -> Result<()> {
        let c = canonical(set, auts);
        if reps.insert(c, ()).is_none() {
            if reps.len() > cap {
                return Err(Error::CapExceeded(reps.len() - 1));
            }
            queue.push_back(c);
        }
        Ok(())
    };
    for x in 0..n {
        push(s.extend_closure(ElemSet::EMPTY, x), &mut queue)?;
    }
    let mut order = Vec::new();
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for x in 0..n {
            if !t.contains(x) {
                push(s.extend_closure(t, x), &mut queue)?;
            }
        }
    }
    order.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    Ok(order
        .into_iter()
        .map(|set| OrbitRep {
            set,
            stabilizer: (0..auts.len())
                .filter(|&k| set.map(&auts[k]) == set)
                .collect(),
        })
        .collect())
}
