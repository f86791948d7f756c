//! Finite groups given by Cayley tables.
//!
//! Elements are dense indices `0..order` in declaration order; labels exist
//! only for I/O. Morphisms hold their groups by `Arc` so that many Rees
//! matrix semigroups can share one table.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Dense element index.
pub type Elem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from labels and a full Cayley table (`rows[g][h] = g·h`).
    ///
    /// Checks the Latin-square property, the identity, and associativity by a
    /// full triple scan.
    pub fn from_table(labels: Vec<String>, rows: &[Vec<Elem>]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable(
                "a group needs at least one element".into(),
            ));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let index = label_index(&labels)?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n}x{n}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range")));
                }
                table.push(x);
            }
        }
        for a in 0..n {
            let mut row_seen = ElemSet::EMPTY;
            let mut col_seen = ElemSet::EMPTY;
            for b in 0..n {
                row_seen.insert(table[a * n + b]);
                col_seen.insert(table[b * n + a]);
            }
            if row_seen.len() != n || col_seen.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row or column of `{}` is not a permutation",
                    labels[a]
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e * n + g] == g && table[g * n + e] == g))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        check_associative(n, |a, b| table[a * n + b], &labels)?;
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| table[g * n + h] == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            labels,
            index,
            table,
            identity,
            inverse,
        })
    }

    /// Builds a group from a product closure; the table is checked as in
    /// [`FiniteGroup::from_table`].
    pub fn from_fn(labels: Vec<String>, mul: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let n = labels.len();
        let rows: Vec<Vec<Elem>> = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table(labels, &rows)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group Z_n with labels `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(labels, |a, b| (a + b) % n).expect("cyclic table is a group")
    }

    /// Direct product with pair labels `(a,b)`, ordered first-coordinate major.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.order();
        let labels = (0..a.order())
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.label(x), b.label(y)))
            .collect();
        Self::from_fn(labels, |p, q| a.mul(p / m, q / m) * m + b.mul(p % m, q % m))
            .expect("product of groups is a group")
    }

    /// The symmetric group on `n` points, elements listed in lexicographic
    /// order of their one-line images; `(gh)` acts as `g` then `h`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let pos: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
            .collect();
        Self::from_fn(labels, |a, b| {
            let composed: Vec<usize> = (0..n).map(|i| perms[b][perms[a][i]]).collect();
            pos[&composed]
        })
        .expect("symmetric group table is a group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.labels.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<Elem> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing `xs`.
    pub fn subgroup_closure(&self, xs: &[Elem]) -> Result<ElemSet> {
        if let Some(&bad) = xs.iter().find(|&&x| x >= self.order()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        let mut set = ElemSet::singleton(self.identity);
        for &x in xs {
            set = self.extend_subgroup(set, x);
        }
        Ok(set)
    }

    /// Closure of a subgroup `h` together with one more element.
    fn extend_subgroup(&self, h: ElemSet, x: Elem) -> ElemSet {
        if h.contains(x) {
            return h;
        }
        // In a finite group closure under product already gives inverses.
        let mut set = h;
        let mut queue: VecDeque<Elem> = VecDeque::new();
        set.insert(x);
        queue.push_back(x);
        while let Some(y) = queue.pop_front() {
            for z in set.iter().collect::<Vec<_>>() {
                for p in [self.mul(y, z), self.mul(z, y)] {
                    if set.insert(p) {
                        queue.push_back(p);
                    }
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: ElemSet) -> bool {
        !set.is_empty()
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// Every subgroup exactly once, ordered by size and then by the sorted
    /// list of labels.
    pub fn all_subgroups(&self) -> Vec<ElemSet> {
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut queue: VecDeque<ElemSet> = VecDeque::new();
        let trivial = ElemSet::singleton(self.identity);
        seen.insert(trivial);
        queue.push_back(trivial);
        for g in self.elements() {
            let c = self.extend_subgroup(trivial, g);
            if seen.insert(c) {
                queue.push_back(c);
            }
        }
        while let Some(h) = queue.pop_front() {
            for g in self.elements() {
                if h.contains(g) {
                    continue;
                }
                let k = self.extend_subgroup(h, g);
                if seen.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        let mut out: Vec<ElemSet> = seen.into_iter().collect();
        out.sort_by_cached_key(|s| {
            let mut ls: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
            ls.sort_unstable();
            (
                s.len(),
                ls.into_iter().map(str::to_owned).collect::<Vec<_>>(),
            )
        });
        out
    }

    /// The subgroup on `set` as a standalone group (labels kept), together
    /// with the inclusion map.
    pub fn subgroup(&self, set: ElemSet) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_subgroup(set) {
            return Err(Error::NotASubgroup(format!("{:?}", self.set_labels(set))));
        }
        let members: Vec<Elem> = set.iter().collect();
        let pos: HashMap<Elem, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let sub = FiniteGroup::from_fn(labels, |a, b| pos[&self.mul(members[a], members[b])])?;
        Ok((sub, members))
    }

    pub fn set_labels(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// A generating sequence found greedily: each new generator is the
    /// element enlarging the generated subgroup the most.
    pub fn generators(&self) -> Vec<Elem> {
        let full = ElemSet::full(self.order());
        let mut gens = Vec::new();
        let mut cur = ElemSet::singleton(self.identity);
        while cur != full {
            let (best, next) = self
                .elements()
                .filter(|&g| !cur.contains(g))
                .map(|g| (g, self.extend_subgroup(cur, g)))
                .max_by_key(|&(g, s)| (s.len(), std::cmp::Reverse(g)))
                .unwrap();
            gens.push(best);
            cur = next;
        }
        gens
    }

    /// The Cayley table viewed as a semigroup.
    pub fn to_semigroup(&self) -> FiniteSemigroup {
        let n = self.order();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect();
        FiniteSemigroup::from_table(self.labels.clone(), &rows).expect("groups are semigroups")
    }

    /// Whether some bijection between the two groups preserves products.
    pub fn is_isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
        a.order() == b.order() && !enumerate_group_morphisms_until(a, b, true, true).is_empty()
    }
}

pub(crate) fn label_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::InvalidTable(format!(
                "duplicate element label `{l}`"
            )));
        }
    }
    Ok(index)
}

pub(crate) fn check_associative(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    labels: &[String],
) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(Error::InvalidTable(format!(
                        "not associative at ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A map between groups; `map[g]` is the image of `g`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMorphism {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<Elem>,
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .elements()
            .map(|g| {
                format!(
                    "{}->{}",
                    self.source.label(g),
                    self.target.label(self.map[g])
                )
            })
            .collect();
        write!(f, "GroupMorphism[{}]", pairs.join(", "))
    }
}

impl GroupMorphism {
    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupMorphism {
            source: g.clone(),
            target: g.clone(),
            map: g.elements().collect(),
        }
    }

    /// Checked constructor: the map must preserve products.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Self> {
        let m = GroupMorphism {
            source,
            target,
            map,
        };
        if m.map.len() != m.source.order() || m.map.iter().any(|&x| x >= m.target.order()) {
            return Err(Error::ComponentMismatch("group map has wrong shape".into()));
        }
        if !m.preserves_products() {
            return Err(Error::ComponentMismatch(
                "group map does not preserve products".into(),
            ));
        }
        Ok(m)
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.map[g]
    }

    pub fn preserves_products(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.elements().all(|a| {
            s.elements()
                .all(|b| self.map[s.mul(a, b)] == t.mul(self.map[a], self.map[b]))
        })
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().copied().collect::<ElemSet>().len() == self.map.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.map.len() == self.target.order()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupMorphism) -> GroupMorphism {
        GroupMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Option<GroupMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (g, &h) in self.map.iter().enumerate() {
            inv[h] = g;
        }
        Some(GroupMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    pub fn image(&self) -> ElemSet {
        self.map.iter().copied().collect()
    }
}

/// All morphisms `g → h` (only isomorphisms when `bijective_only`), sorted by
/// their image vectors.
///
/// Images are chosen for a greedy generating set of `g` with element-order
/// divisibility pruning; each candidate is then checked on the full table.
pub fn enumerate_group_morphisms(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    bijective_only: bool,
) -> Vec<GroupMorphism> {
    let mut out = enumerate_group_morphisms_until(g, h, bijective_only, false);
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out
}

pub(crate) fn enumerate_group_morphisms_until(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    bijective_only: bool,
    stop_at_first: bool,
) -> Vec<GroupMorphism> {
    if bijective_only && g.order() != h.order() {
        return Vec::new();
    }
    let gens = g.generators();
    // Straight-line program: every non-identity element is parent·generator.
    let mut program: Vec<(Elem, Elem, usize)> = Vec::with_capacity(g.order());
    let mut reached = ElemSet::singleton(g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if reached.insert(y) {
                program.push((y, x, k));
                queue.push_back(y);
            }
        }
    }
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let os = g.element_order(s);
            h.elements()
                .filter(|&t| {
                    let ot = h.element_order(t);
                    if bijective_only {
                        ot == os
                    } else {
                        os.is_multiple_of(ot)
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut map = vec![usize::MAX; g.order()];
        map[g.identity()] = h.identity();
        for &(y, x, k) in &program {
            map[y] = h.mul(map[x], candidates[k][choice[k]]);
        }
        let m = GroupMorphism {
            source: g.clone(),
            target: h.clone(),
            map,
        };
        if m.preserves_products() && (!bijective_only || m.is_bijective()) {
            out.push(m);
            if stop_at_first {
                return out;
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == gens.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// The inner automorphism `x ↦ u·x·u⁻¹`.
pub fn inner_automorphism(g: &Arc<FiniteGroup>, u: Elem) -> Result<GroupMorphism> {
    if u >= g.order() {
        return Err(Error::UnknownElement(u.to_string()));
    }
    let ui = g.inv(u);
    let map = g.elements().map(|x| g.mul(g.mul(u, x), ui)).collect();
    Ok(GroupMorphism {
        source: g.clone(),
        target: g.clone(),
        map,
    })
}

/// Result of a characteristic-subgroup test; `witness` is an automorphism
/// moving the subgroup when it is not characteristic.
#[derive(Debug, Clone)]
pub struct CharacteristicCheck {
    pub characteristic: bool,
    pub witness: Option<GroupMorphism>,
}

pub fn is_characteristic(g: &Arc<FiniteGroup>, sub: ElemSet) -> Result<CharacteristicCheck> {
    if !g.is_subgroup(sub) {
        return Err(Error::NotASubgroup(format!("{:?}", g.set_labels(sub))));
    }
    Ok(preserved_by_automorphisms(g, sub))
}

/// Whether every automorphism maps `set` onto itself (no subgroup check).
pub fn preserved_by_automorphisms(g: &Arc<FiniteGroup>, set: ElemSet) -> CharacteristicCheck {
    let witness = enumerate_group_morphisms(g, g, true)
        .into_iter()
        .find(|theta| set.map(&theta.map) != set);
    CharacteristicCheck {
        characteristic: witness.is_none(),
        witness,
    }
}

/// Abelian with no proper nontrivial subgroup: the trivial group or Z_p.
pub fn is_simple_abelian(g: &FiniteGroup) -> bool {
    g.is_abelian() && g.all_subgroups().len() <= 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &FiniteGroup, labels: &[&str]) -> ElemSet {
        labels.iter().map(|l| g.index_of(l).unwrap()).collect()
    }

    fn z2xz2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2),
            &FiniteGroup::cyclic(2),
        ))
    }

    /// Oracle: closure-check every subset.
    fn subgroups_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.order();
        (1u128..(1u128 << n))
            .map(ElemSet::from_bits)
            .filter(|&s| g.is_subgroup(s))
            .count()
    }

    #[test]
    fn subgroup_closure_examples() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.subgroup_closure(&[2]).unwrap(), set(&z4, &["0", "2"]));
        assert_eq!(z4.subgroup_closure(&[1]).unwrap(), ElemSet::full(4));
        let v = z2xz2();
        let gens = [v.index_of("(1,0)").unwrap(), v.index_of("(0,1)").unwrap()];
        assert_eq!(v.subgroup_closure(&gens).unwrap(), ElemSet::full(4));
        assert_eq!(
            z4.subgroup_closure(&[7]),
            Err(Error::UnknownElement("7".into()))
        );
    }

    #[test]
    fn all_subgroups_counts_match_subset_oracle() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.all_subgroups().len(), 3);
        assert_eq!(subgroups_by_subsets(&z4), 3);
        let v = z2xz2();
        assert_eq!(v.all_subgroups().len(), 5);
        assert_eq!(subgroups_by_subsets(&v), 5);
        assert_eq!(FiniteGroup::trivial().all_subgroups().len(), 1);
        for g in [
            FiniteGroup::symmetric(3),
            FiniteGroup::cyclic(6),
            FiniteGroup::cyclic(8),
        ] {
            assert_eq!(g.all_subgroups().len(), subgroups_by_subsets(&g));
        }
        let subs = z4.all_subgroups();
        assert_eq!(subs[0], set(&z4, &["0"]));
        assert_eq!(subs[1], set(&z4, &["0", "2"]));
    }

    #[test]
    fn morphism_counts() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        assert_eq!(enumerate_group_morphisms(&z2, &z2, false).len(), 2);
        assert_eq!(enumerate_group_morphisms(&z3, &z2, false).len(), 1);
        assert_eq!(enumerate_group_morphisms(&z2, &z2xz2(), false).len(), 4);
        assert_eq!(enumerate_group_morphisms(&z2xz2(), &z2xz2(), true).len(), 6);
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(enumerate_group_morphisms(&s3, &s3, true).len(), 6);
        // Hom(S3, Z2): trivial and sign.
        assert_eq!(enumerate_group_morphisms(&s3, &z2, false).len(), 2);
    }

    /// Brute force over all |H|^|G| maps.
    fn morphisms_brute(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> usize {
        let (n, m) = (g.order(), h.order());
        let mut count = 0;
        let total = m.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let x = c % m;
                    c /= m;
                    x
                })
                .collect();
            let f = GroupMorphism {
                source: g.clone(),
                target: h.clone(),
                map,
            };
            if f.preserves_products() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn morphism_enumeration_matches_brute_force() {
        let groups: Vec<Arc<FiniteGroup>> = vec![
            Arc::new(FiniteGroup::trivial()),
            Arc::new(FiniteGroup::cyclic(2)),
            Arc::new(FiniteGroup::cyclic(3)),
            Arc::new(FiniteGroup::cyclic(4)),
            z2xz2(),
        ];
        for g in &groups {
            for h in &groups {
                assert_eq!(
                    enumerate_group_morphisms(g, h, false).len(),
                    morphisms_brute(g, h),
                    "{:?} -> {:?}",
                    g.labels(),
                    h.labels()
                );
            }
        }
    }

    #[test]
    fn automorphisms_form_a_group() {
        for g in [
            z2xz2(),
            Arc::new(FiniteGroup::symmetric(3)),
            Arc::new(FiniteGroup::cyclic(8)),
        ] {
            let auts = enumerate_group_morphisms(&g, &g, true);
            let maps: HashSet<Vec<usize>> = auts.iter().map(|a| a.map.clone()).collect();
            for a in &auts {
                assert!(maps.contains(&a.inverse().unwrap().map));
                for b in &auts {
                    assert!(maps.contains(&a.then(b).map));
                }
            }
            assert!(maps.contains(&GroupMorphism::identity(&g).map));
        }
    }

    #[test]
    fn inner_automorphisms() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        for u in z4.elements() {
            assert_eq!(
                inner_automorphism(&z4, u).unwrap().map,
                (0..4).collect::<Vec<_>>()
            );
        }
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let id = GroupMorphism::identity(&s3);
        assert_eq!(inner_automorphism(&s3, s3.identity()).unwrap(), id);
        // (12) as one-line "213"; the 3-cycle 1->2->3->1 is "231".
        let t = s3.index_of("213").unwrap();
        let c = s3.index_of("231").unwrap();
        let conj = inner_automorphism(&s3, t).unwrap();
        assert_eq!(s3.label(conj.apply(c)), "312");
        assert_eq!(s3.index_of("312").unwrap(), s3.inv(c));
        for u in s3.elements() {
            let a = inner_automorphism(&s3, u).unwrap();
            let b = inner_automorphism(&s3, s3.inv(u)).unwrap();
            assert_eq!(a.then(&b), id);
        }
        assert!(inner_automorphism(&s3, 6).is_err());
    }

    #[test]
    fn characteristic_subgroups() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        assert!(
            is_characteristic(&z4, set(&z4, &["0", "2"]))
                .unwrap()
                .characteristic
        );
        assert!(
            is_characteristic(&z4, ElemSet::full(4))
                .unwrap()
                .characteristic
        );
        let v = z2xz2();
        let res = is_characteristic(&v, set(&v, &["(0,0)", "(1,0)"])).unwrap();
        assert!(!res.characteristic);
        let w = res.witness.unwrap();
        assert!(w.is_bijective() && w.preserves_products());
        assert!(matches!(
            is_characteristic(&z4, set(&z4, &["0", "1"])),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn characteristic_means_singleton_orbit() {
        for g in [
            z2xz2(),
            Arc::new(FiniteGroup::cyclic(8)),
            Arc::new(FiniteGroup::symmetric(3)),
        ] {
            let auts = enumerate_group_morphisms(&g, &g, true);
            for h in g.all_subgroups() {
                let orbit: HashSet<ElemSet> = auts.iter().map(|a| h.map(&a.map)).collect();
                let charac = is_characteristic(&g, h).unwrap().characteristic;
                assert_eq!(charac, orbit.len() == 1);
            }
        }
    }

    #[test]
    fn simple_abelian() {
        assert!(is_simple_abelian(&FiniteGroup::cyclic(2)));
        assert!(is_simple_abelian(&FiniteGroup::cyclic(3)));
        assert!(is_simple_abelian(&FiniteGroup::trivial()));
        assert!(!is_simple_abelian(&FiniteGroup::cyclic(4)));
        assert!(!is_simple_abelian(&FiniteGroup::symmetric(3)));
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroup::from_table(labels.clone(), &[vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(labels, &[vec![0, 1], vec![1, 0]]).is_ok());
    }
}
