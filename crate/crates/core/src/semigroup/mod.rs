//! Abstract finite semigroups given by multiplication tables.

mod green;
mod homogeneity;
mod search;
mod subsemigroups;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use green::{Coordinatization, GreenData};
pub use homogeneity::{is_homogeneous, HomogeneityCertificate, NonExtendable, OrbitWitness};
pub(crate) use search::invariant_key;
pub use search::{enumerate_isomorphisms, MapKind, MorphismSearch};
pub(crate) use subsemigroups::orbit_representatives;
pub use subsemigroups::{all_subsemigroups, DEFAULT_SUBSEMIGROUP_CAP};

use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::group::{check_associative, label_index};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<u8>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

/// Idempotents with the natural order `e ≤ f ⇔ ef = fe = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentStructure {
    pub idempotents: ElemSet,
    /// Pairs `(e, f)` with `e ≤ f` and `e ≠ f`.
    pub strictly_below: Vec<(usize, usize)>,
    /// Idempotents with nothing strictly below them.
    pub primitive: ElemSet,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a full table; associativity is checked by a
    /// triple scan and the error names the first violating triple.
    pub fn from_table(labels: Vec<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
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
                table.push(x as u8);
            }
        }
        check_associative(n, |a, b| table[a * n + b] as usize, &labels)?;
        Ok(FiniteSemigroup {
            labels,
            index,
            table,
        })
    }

    pub fn from_fn(labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table(labels, &rows)
    }

    /// The rectangular band `I × Λ` with `(i,λ)(j,μ) = (i,μ)`, labels `i,λ`
    /// (1-based), row-major in `I`.
    pub fn rectangular_band(rows: usize, cols: usize) -> Self {
        let labels = (0..rows)
            .flat_map(|i| (0..cols).map(move |l| format!("{},{}", i + 1, l + 1)))
            .collect();
        Self::from_fn(labels, |a, b| (a / cols) * cols + b % cols).expect("bands are associative")
    }

    /// The monogenic semigroup `⟨a | a^(index+period) = a^index⟩`, labels
    /// `a`, `a^2`, ...
    pub fn monogenic(index: usize, period: usize) -> Self {
        assert!(index >= 1 && period >= 1);
        let n = index + period - 1;
        let labels = (1..=n)
            .map(|k| {
                if k == 1 {
                    "a".to_string()
                } else {
                    format!("a^{k}")
                }
            })
            .collect();
        let reduce = move |mut k: usize| {
            while k > n {
                k -= period;
            }
            k
        };
        Self::from_fn(labels, |a, b| reduce(a + 1 + b + 1) - 1).expect("monogenic is associative")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b] as usize
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn set_labels(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// The subsemigroup generated by `xs`; empty for empty input.
    pub fn closure(&self, xs: &[usize]) -> Result<ElemSet> {
        if let Some(&bad) = xs.iter().find(|&&x| x >= self.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        Ok(self.closure_of(xs.iter().copied().collect()))
    }

    pub fn closure_of(&self, xs: ElemSet) -> ElemSet {
        let mut set = ElemSet::EMPTY;
        for x in xs {
            set = self.extend_closure(set, x);
        }
        set
    }

    /// Closure of `closed ∪ {x}` where `closed` is already product-closed.
    pub fn extend_closure(&self, closed: ElemSet, x: usize) -> ElemSet {
        if closed.contains(x) {
            return closed;
        }
        let mut set = closed;
        set.insert(x);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for z in set.iter() {
                let (yz, zy) = (self.mul(y, z), self.mul(z, y));
                if set.insert(yz) {
                    queue.push_back(yz);
                }
                if set.insert(zy) {
                    queue.push_back(zy);
                }
            }
        }
        set
    }

    pub fn is_closed(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// The subsemigroup on `set` as a standalone table (labels kept) with its
    /// inclusion map.
    pub fn restrict(&self, set: ElemSet) -> Result<(FiniteSemigroup, Vec<usize>)> {
        if set.is_empty() || !self.is_closed(set) {
            return Err(Error::InvalidArgument(format!(
                "{:?} is not a nonempty subsemigroup",
                self.set_labels(set)
            )));
        }
        let members: Vec<usize> = set.iter().collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let n = members.len();
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| pos[self.mul(members[a], members[b])] as u8)
            .collect();
        let labels: Vec<String> = members.iter().map(|&x| self.labels[x].clone()).collect();
        let index = label_index(&labels)?;
        Ok((
            FiniteSemigroup {
                labels,
                index,
                table,
            },
            members,
        ))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> ElemSet {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn idempotent_structure(&self) -> IdempotentStructure {
        let idempotents = self.idempotents();
        let mut strictly_below = Vec::new();
        let mut primitive = idempotents;
        for e in idempotents {
            for f in idempotents {
                if e != f && self.mul(e, f) == e && self.mul(f, e) == e {
                    strictly_below.push((e, f));
                    primitive.remove(f);
                }
            }
        }
        IdempotentStructure {
            idempotents,
            strictly_below,
            primitive,
        }
    }

    /// `∀x ∃y: xyx = x`.
    pub fn is_regular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).any(|y| self.mul(self.mul(x, y), x) == x))
    }

    /// Index and period of the monogenic subsemigroup `⟨x⟩`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut power = x;
        let mut k = 1;
        loop {
            if let Some(&first) = seen.get(&power) {
                return (first, k - first);
            }
            seen.insert(power, k);
            power = self.mul(power, x);
            k += 1;
        }
    }

    /// Whether `e` is a two-sided identity.
    pub fn identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }
}
