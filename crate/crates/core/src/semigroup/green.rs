//! Green's relations, complete simplicity, and Rees coordinates.

use std::sync::Arc;

use super::FiniteSemigroup;
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rees::{ReesMatrixSemigroup, SandwichMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenData {
    pub r_classes: Vec<ElemSet>,
    pub l_classes: Vec<ElemSet>,
    pub h_classes: Vec<ElemSet>,
    /// `right_ideals[b] = bS¹`, so `a ≤_R b` iff `right_ideals[b]` contains `a`.
    pub right_ideals: Vec<ElemSet>,
}

impl GreenData {
    pub fn r_leq(&self, a: usize, b: usize) -> bool {
        self.right_ideals[b].contains(a)
    }

    pub fn r_class_of(&self, x: usize) -> usize {
        self.r_classes.iter().position(|c| c.contains(x)).unwrap()
    }

    pub fn l_class_of(&self, x: usize) -> usize {
        self.l_classes.iter().position(|c| c.contains(x)).unwrap()
    }

    pub fn h_class_of(&self, x: usize) -> usize {
        self.h_classes.iter().position(|c| c.contains(x)).unwrap()
    }
}

fn classes_by_key(n: usize, key: &[ElemSet]) -> Vec<ElemSet> {
    let mut classes: Vec<(ElemSet, ElemSet)> = Vec::new();
    for x in 0..n {
        match classes.iter_mut().find(|(k, _)| *k == key[x]) {
            Some((_, c)) => {
                c.insert(x);
            }
            None => classes.push((key[x], ElemSet::singleton(x))),
        }
    }
    classes.into_iter().map(|(_, c)| c).collect()
}

/// A completely simple semigroup expressed in Rees coordinates; `iso[x]` is
/// the index of the image of `x` in the table of `rms`.
#[derive(Debug, Clone)]
pub struct Coordinatization {
    pub rms: ReesMatrixSemigroup,
    pub iso: Vec<usize>,
}

impl FiniteSemigroup {
    pub(crate) fn right_ideals(&self) -> Vec<ElemSet> {
        let n = self.len();
        (0..n)
            .map(|x| {
                let mut s = ElemSet::singleton(x);
                for y in 0..n {
                    s.insert(self.mul(x, y));
                }
                s
            })
            .collect()
    }

    pub(crate) fn left_ideals(&self) -> Vec<ElemSet> {
        let n = self.len();
        (0..n)
            .map(|x| {
                let mut s = ElemSet::singleton(x);
                for y in 0..n {
                    s.insert(self.mul(y, x));
                }
                s
            })
            .collect()
    }

    pub fn green(&self) -> GreenData {
        let n = self.len();
        let right_ideals = self.right_ideals();
        let left_ideals = self.left_ideals();
        let r_classes = classes_by_key(n, &right_ideals);
        let l_classes = classes_by_key(n, &left_ideals);
        let mut h_classes = Vec::new();
        for r in &r_classes {
            for l in &l_classes {
                let h = r.intersection(*l);
                if !h.is_empty() {
                    h_classes.push(h);
                }
            }
        }
        h_classes.sort();
        GreenData {
            r_classes,
            l_classes,
            h_classes,
            right_ideals,
        }
    }

    /// No proper ideal, and some idempotent is primitive.
    pub fn is_completely_simple(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let full = self.full_set();
        let left = self.left_ideals();
        let simple = (0..n).all(|x| {
            let mut ideal = left[x];
            for y in left[x] {
                for s in 0..n {
                    ideal.insert(self.mul(y, s));
                }
            }
            ideal == full
        });
        simple && !self.idempotent_structure().primitive.is_empty()
    }

    /// Rees coordinates: `I` = R-classes, `Λ` = L-classes, `G` = the H-class
    /// of the first idempotent. Idempotent class representatives make the
    /// resulting matrix normalized at the first row and column. The returned
    /// map is checked to be an isomorphism on every pair.
    pub fn rees_coordinatize(&self) -> Result<Coordinatization> {
        if !self.is_completely_simple() {
            return Err(Error::NotCompletelySimple);
        }
        let green = self.green();
        let e = self
            .idempotents()
            .first()
            .expect("completely simple has idempotents");
        let r_e = green.r_class_of(e);
        let l_e = green.l_class_of(e);
        // I: R-classes with e's class first; Λ likewise.
        let mut r_order: Vec<usize> = vec![r_e];
        r_order.extend((0..green.r_classes.len()).filter(|&i| i != r_e));
        let mut l_order: Vec<usize> = vec![l_e];
        l_order.extend((0..green.l_classes.len()).filter(|&i| i != l_e));
        let idem = self.idempotents();
        let pick = |r: usize, l: usize| -> usize {
            green.r_classes[r]
                .intersection(green.l_classes[l])
                .intersection(idem)
                .first()
                .expect("every H-class of a completely simple semigroup is a group")
        };
        let reps_r: Vec<usize> = r_order.iter().map(|&r| pick(r, l_e)).collect();
        let reps_l: Vec<usize> = l_order.iter().map(|&l| pick(r_e, l)).collect();

        let h_e = green.r_classes[r_e].intersection(green.l_classes[l_e]);
        let members: Vec<usize> = h_e.iter().collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &x) in members.iter().enumerate() {
            pos[x] = k;
        }
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        let group = Arc::new(FiniteGroup::from_fn(labels, |a, b| {
            pos[self.mul(members[a], members[b])]
        })?);

        let rows = reps_l.len();
        let cols = reps_r.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for &q in &reps_l {
            for &r in &reps_r {
                let p = self.mul(q, r);
                debug_assert!(h_e.contains(p));
                entries.push(pos[p]);
            }
        }
        let matrix = SandwichMatrix::new(group.clone(), rows, cols, entries)?;
        let rms = ReesMatrixSemigroup::new(matrix);

        // (i, g, λ) ↦ r_i · g · q_λ
        let mut forward = vec![usize::MAX; rms.size()];
        for i in 0..cols {
            for (gk, &g) in members.iter().enumerate() {
                for l in 0..rows {
                    let x = self.mul(self.mul(reps_r[i], g), reps_l[l]);
                    forward[rms.index_of_triple(i, gk, l)] = x;
                }
            }
        }
        let mut iso = vec![usize::MAX; self.len()];
        for (t, &x) in forward.iter().enumerate() {
            if iso[x] != usize::MAX {
                return Err(Error::VerificationFailed(
                    "coordinate map is not injective".into(),
                ));
            }
            iso[x] = t;
        }
        let table = rms.to_semigroup();
        let n = self.len();
        if iso.contains(&usize::MAX)
            || (0..n).any(|a| (0..n).any(|b| iso[self.mul(a, b)] != table.mul(iso[a], iso[b])))
        {
            return Err(Error::VerificationFailed(
                "coordinate map is not an isomorphism".into(),
            ));
        }
        Ok(Coordinatization { rms, iso })
    }
}
