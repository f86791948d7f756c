//! Morphisms `[θ, ψ, u_i, v_λ]` between Rees matrix semigroups, acting by
//! `(i, g, λ) ↦ (iψ, u_i·gθ·v_λ, λψ)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{enumerate_group_morphisms, Elem, GroupMorphism};
use crate::rees::{ReesMatrixSemigroup, RmsElement};

#[derive(Clone)]
pub struct RmsMorphism {
    source: Arc<ReesMatrixSemigroup>,
    target: Arc<ReesMatrixSemigroup>,
    theta: GroupMorphism,
    psi_i: Vec<usize>,
    psi_l: Vec<usize>,
    u: Vec<Elem>,
    v: Vec<Elem>,
    validated: bool,
}

impl fmt::Debug for RmsMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.target.group();
        f.debug_struct("RmsMorphism")
            .field("theta", &self.theta)
            .field("psi_i", &self.psi_i)
            .field("psi_l", &self.psi_l)
            .field("u", &self.u.iter().map(|&x| h.label(x)).collect::<Vec<_>>())
            .field("v", &self.v.iter().map(|&x| h.label(x)).collect::<Vec<_>>())
            .finish()
    }
}

fn same(a: &Arc<ReesMatrixSemigroup>, b: &Arc<ReesMatrixSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Representative of a morphism restricted to the idempotent-generated parts.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// A quadruple equal to the input whose `u`, `v` lie in `⟨H^Q⟩`.
    pub representative: RmsMorphism,
    /// The same quadruple viewed as a morphism `⟨E(S)⟩ → ⟨E(T)⟩`.
    pub restricted: RmsMorphism,
}

impl RmsMorphism {
    /// Shape-checked constructor; call [`RmsMorphism::into_validated`] before
    /// applying.
    pub fn new(
        source: Arc<ReesMatrixSemigroup>,
        target: Arc<ReesMatrixSemigroup>,
        theta: GroupMorphism,
        psi_i: Vec<usize>,
        psi_l: Vec<usize>,
        u: Vec<Elem>,
        v: Vec<Elem>,
    ) -> Result<Self> {
        let phi = RmsMorphism {
            source,
            target,
            theta,
            psi_i,
            psi_l,
            u,
            v,
            validated: false,
        };
        phi.check_shape()?;
        Ok(phi)
    }

    fn check_shape(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let mismatch = |what: &str| Err(Error::ComponentMismatch(what.to_string()));
        if *self.theta.source != **s.group() || *self.theta.target != **t.group() {
            return mismatch("theta does not map the source group to the target group");
        }
        if self.psi_i.len() != s.cols() || self.psi_i.iter().any(|&j| j >= t.cols()) {
            return mismatch("psi on I has the wrong shape");
        }
        if self.psi_l.len() != s.rows() || self.psi_l.iter().any(|&m| m >= t.rows()) {
            return mismatch("psi on Λ has the wrong shape");
        }
        let order = t.group().order();
        if self.u.len() != s.cols() || self.u.iter().any(|&x| x >= order) {
            return mismatch("u has the wrong shape");
        }
        if self.v.len() != s.rows() || self.v.iter().any(|&x| x >= order) {
            return mismatch("v has the wrong shape");
        }
        Ok(())
    }

    pub fn identity(s: &Arc<ReesMatrixSemigroup>) -> Self {
        let e = s.group().identity();
        RmsMorphism {
            source: s.clone(),
            target: s.clone(),
            theta: GroupMorphism::identity(s.group()),
            psi_i: (0..s.cols()).collect(),
            psi_l: (0..s.rows()).collect(),
            u: vec![e; s.cols()],
            v: vec![e; s.rows()],
            validated: true,
        }
    }

    pub fn source(&self) -> &Arc<ReesMatrixSemigroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ReesMatrixSemigroup> {
        &self.target
    }

    pub fn theta(&self) -> &GroupMorphism {
        &self.theta
    }

    pub fn psi_i(&self) -> &[usize] {
        &self.psi_i
    }

    pub fn psi_l(&self) -> &[usize] {
        &self.psi_l
    }

    pub fn u(&self) -> &[Elem] {
        &self.u
    }

    pub fn v(&self) -> &[Elem] {
        &self.v
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// The first cell `(λ, i)` where `p_{λ,i}θ ≠ v_λ·q_{λψ,iψ}·u_i`, if any.
    pub fn validate(&self) -> Result<Option<(usize, usize)>> {
        self.check_shape()?;
        let (p, q, h) = (
            self.source.matrix(),
            self.target.matrix(),
            self.target.group(),
        );
        for l in 0..p.rows() {
            for i in 0..p.cols() {
                let lhs = self.theta.apply(p.get(l, i));
                let rhs = h.mul(
                    h.mul(self.v[l], q.get(self.psi_l[l], self.psi_i[i])),
                    self.u[i],
                );
                if lhs != rhs {
                    return Ok(Some((l, i)));
                }
            }
        }
        Ok(None)
    }

    pub fn into_validated(mut self) -> Result<Self> {
        match self.validate()? {
            None => {
                self.validated = true;
                Ok(self)
            }
            Some((row, col)) => Err(Error::Incompatible { row, col }),
        }
    }

    pub fn apply(&self, x: RmsElement) -> Result<RmsElement> {
        if !self.validated {
            return Err(Error::NotValidated);
        }
        if x.i >= self.source.cols()
            || x.l >= self.source.rows()
            || x.g >= self.source.group().order()
        {
            return Err(Error::UnknownLabel(format!("{x:?}")));
        }
        Ok(self.apply_unchecked(x))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, x: RmsElement) -> RmsElement {
        let h = self.target.group();
        RmsElement {
            i: self.psi_i[x.i],
            g: h.mul(h.mul(self.u[x.i], self.theta.apply(x.g)), self.v[x.l]),
            l: self.psi_l[x.l],
        }
    }

    /// The action on table indices of source and target.
    pub fn index_map(&self) -> Result<Vec<usize>> {
        if !self.validated {
            return Err(Error::NotValidated);
        }
        Ok(self
            .source
            .elements()
            .map(|x| self.target.index_of(self.apply_unchecked(x)))
            .collect())
    }

    /// Equality of the induced maps, decided on the quadruples: `ψ = ψ'`,
    /// `u_i v_λ = u'_i v'_λ`, and `θ = θ'C_w` with `w = u_1⁻¹u'_1`.
    pub fn equal(&self, other: &RmsMorphism) -> Result<bool> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return Err(Error::ComponentMismatch(
                "morphisms have different source or target".into(),
            ));
        }
        if self.psi_i != other.psi_i || self.psi_l != other.psi_l {
            return Ok(false);
        }
        let h = self.target.group();
        for i in 0..self.u.len() {
            for l in 0..self.v.len() {
                if h.mul(self.u[i], self.v[l]) != h.mul(other.u[i], other.v[l]) {
                    return Ok(false);
                }
            }
        }
        let w = h.mul(h.inv(self.u[0]), other.u[0]);
        let winv = h.inv(w);
        Ok(self
            .source
            .group()
            .elements()
            .all(|g| self.theta.apply(g) == h.mul(h.mul(w, other.theta.apply(g)), winv)))
    }

    /// `[θC_{y⁻¹}, ψ, u_i·y, y⁻¹·v_λ]`, an equal quadruple.
    pub fn shifted(&self, y: Elem) -> RmsMorphism {
        let h = self.target.group();
        let yinv = h.inv(y);
        let map = self
            .theta
            .map
            .iter()
            .map(|&x| h.mul(h.mul(yinv, x), y))
            .collect();
        RmsMorphism {
            theta: GroupMorphism {
                map,
                ..self.theta.clone()
            },
            u: self.u.iter().map(|&x| h.mul(x, y)).collect(),
            v: self.v.iter().map(|&x| h.mul(yinv, x)).collect(),
            ..self.clone()
        }
    }

    /// The equal quadruple with `u = ε` at the source's normalization column
    /// (column 1 if not normalized).
    pub fn standard_representative(&self) -> RmsMorphism {
        let c = self.source.normalized_at().map_or(0, |(c, _)| c);
        let h = self.target.group();
        self.shifted(h.inv(self.u[c]))
    }

    /// `[θC_u, ψ, ε, ε]` for `ψ` fixing the normalization cell.
    pub fn canonical_normalized_form(&self) -> Result<RmsMorphism> {
        if !self.validated {
            return Err(Error::NotValidated);
        }
        let (c, r) = self.source.normalized_at().ok_or(Error::NotNormalized)?;
        let (tc, tr) = self.target.normalized_at().ok_or(Error::NotNormalized)?;
        if self.psi_i[c] != tc || self.psi_l[r] != tr {
            return Err(Error::NormalizationNotFixed);
        }
        let h = self.target.group();
        let u = self.u[0];
        if self.u.iter().any(|&x| x != u) || self.v.iter().any(|&x| x != h.inv(u)) {
            return Err(Error::VerificationFailed(
                "u is not constant or v differs from its inverse".into(),
            ));
        }
        let out = self.shifted(h.inv(u));
        debug_assert!(out.u.iter().chain(&out.v).all(|&x| x == h.identity()));
        out.into_validated()
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &RmsMorphism) -> Result<RmsMorphism> {
        if !same(&self.target, &next.source) {
            return Err(Error::ComponentMismatch(
                "target of the first is not the source of the second".into(),
            ));
        }
        let k = next.target.group();
        let t2 = &next.theta;
        let psi_i: Vec<usize> = self.psi_i.iter().map(|&j| next.psi_i[j]).collect();
        let psi_l: Vec<usize> = self.psi_l.iter().map(|&m| next.psi_l[m]).collect();
        let u = (0..self.u.len())
            .map(|i| k.mul(next.u[self.psi_i[i]], t2.apply(self.u[i])))
            .collect();
        let v = (0..self.v.len())
            .map(|l| k.mul(t2.apply(self.v[l]), next.v[self.psi_l[l]]))
            .collect();
        let phi = RmsMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            theta: self.theta.then(t2),
            psi_i,
            psi_l,
            u,
            v,
            validated: false,
        };
        if self.validated && next.validated {
            phi.into_validated()
        } else {
            Ok(phi)
        }
    }

    /// Inverse of a morphism with bijective `θ` and `ψ`.
    pub fn inverse(&self) -> Result<RmsMorphism> {
        let theta_inv = self
            .theta
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("θ is not bijective".into()))?;
        let invert = |f: &[usize], n: usize| -> Result<Vec<usize>> {
            if f.len() != n {
                return Err(Error::InvalidArgument("ψ is not bijective".into()));
            }
            let mut out = vec![usize::MAX; n];
            for (a, &b) in f.iter().enumerate() {
                if out[b] != usize::MAX {
                    return Err(Error::InvalidArgument("ψ is not bijective".into()));
                }
                out[b] = a;
            }
            Ok(out)
        };
        let psi_i = invert(&self.psi_i, self.target.cols())?;
        let psi_l = invert(&self.psi_l, self.target.rows())?;
        let g = self.source.group();
        let u = psi_i
            .iter()
            .map(|&i| g.inv(theta_inv.apply(self.u[i])))
            .collect();
        let v = psi_l
            .iter()
            .map(|&l| g.inv(theta_inv.apply(self.v[l])))
            .collect();
        RmsMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            theta: theta_inv,
            psi_i,
            psi_l,
            u,
            v,
            validated: false,
        }
        .into_validated()
    }

    fn sort_key(&self) -> (&[Elem], &[usize], &[usize], &[Elem], &[Elem]) {
        (&self.theta.map, &self.psi_i, &self.psi_l, &self.u, &self.v)
    }

    /// A representative with `u`, `v` in `⟨H^Q⟩` and `θ(⟨G^P⟩) ⊆ ⟨H^Q⟩`,
    /// found by searching shifts `y ∈ H`, together with the restricted morphism
    /// between the idempotent-generated subsemigroups.
    pub fn restrict_to_idempotent_generated(&self) -> Result<Restriction> {
        if !self.validated {
            return Err(Error::NotValidated);
        }
        let (s, t) = (&self.source, &self.target);
        let s_sub = Arc::new(s.idempotent_generated()?);
        let t_sub = Arc::new(t.idempotent_generated()?);
        let src_gen = s.entry_group_data().generated;
        let tgt_gen = t.entry_group_data().generated;
        let (_, src_members) = s.group().subgroup(src_gen)?;
        let (_, tgt_members) = t.group().subgroup(tgt_gen)?;
        let mut pos = vec![usize::MAX; t.group().order()];
        for (k, &x) in tgt_members.iter().enumerate() {
            pos[x] = k;
        }
        for y in t.group().elements() {
            let rep = self.shifted(y);
            let inside = rep.u.iter().chain(&rep.v).all(|&x| tgt_gen.contains(x))
                && src_gen.iter().all(|g| tgt_gen.contains(rep.theta.apply(g)));
            if !inside {
                continue;
            }
            let theta = GroupMorphism::new(
                s_sub.group().clone(),
                t_sub.group().clone(),
                src_members
                    .iter()
                    .map(|&g| pos[rep.theta.apply(g)])
                    .collect(),
            )?;
            let restricted = RmsMorphism::new(
                s_sub.clone(),
                t_sub.clone(),
                theta,
                rep.psi_i.clone(),
                rep.psi_l.clone(),
                rep.u.iter().map(|&x| pos[x]).collect(),
                rep.v.iter().map(|&x| pos[x]).collect(),
            )?
            .into_validated()
            .map_err(|e| Error::VerificationFailed(format!("restriction: {e}")))?;
            return Ok(Restriction {
                representative: rep,
                restricted,
            });
        }
        Err(Error::NoRestrictionFound)
    }
}

fn for_each_map(n: usize, m: usize, bijective: bool, mut visit: impl FnMut(&[usize])) {
    if m == 0 && n > 0 || bijective && n != m {
        return;
    }
    let mut f = vec![0usize; n];
    loop {
        let ok = !bijective || {
            let mut seen = vec![false; m];
            f.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        if ok {
            visit(&f);
        }
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            f[k] += 1;
            if f[k] < m {
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}

fn enumerate_normalized(
    s: &Arc<ReesMatrixSemigroup>,
    t: &Arc<ReesMatrixSemigroup>,
    bijective_only: bool,
) -> Vec<RmsMorphism> {
    let (c, r) = s.normalized_at().expect("normalized source");
    let h = t.group();
    let (p, q) = (s.matrix(), t.matrix());
    let thetas = enumerate_group_morphisms(s.group(), h, bijective_only);
    let mut out = Vec::new();
    for theta in &thetas {
        for_each_map(s.cols(), t.cols(), bijective_only, |psi_i| {
            for_each_map(s.rows(), t.rows(), bijective_only, |psi_l| {
                let v: Vec<Elem> = (0..s.rows())
                    .map(|l| h.inv(q.get(psi_l[l], psi_i[c])))
                    .collect();
                let u: Vec<Elem> = (0..s.cols())
                    .map(|i| h.mul(h.inv(q.get(psi_l[r], psi_i[i])), q.get(psi_l[r], psi_i[c])))
                    .collect();
                let ok = (0..s.rows()).all(|l| {
                    (0..s.cols()).all(|i| {
                        theta.apply(p.get(l, i))
                            == h.mul(h.mul(v[l], q.get(psi_l[l], psi_i[i])), u[i])
                    })
                });
                if ok {
                    out.push(RmsMorphism {
                        source: s.clone(),
                        target: t.clone(),
                        theta: theta.clone(),
                        psi_i: psi_i.to_vec(),
                        psi_l: psi_l.to_vec(),
                        u,
                        v,
                        validated: true,
                    });
                }
            });
        });
    }
    out
}

/// Every morphism `s → t`, one quadruple per distinct map, each with `u = ε`
/// at the source's normalization column. With `bijective_only`, only those
/// with bijective `θ` and `ψ`. Sorted by components.
pub fn enumerate_rms_morphisms(
    s: &Arc<ReesMatrixSemigroup>,
    t: &Arc<ReesMatrixSemigroup>,
    bijective_only: bool,
) -> Result<Vec<RmsMorphism>> {
    let (ns, to_ns) = s.ensure_normalized()?;
    let (nt, to_nt) = t.ensure_normalized()?;
    let mut out = enumerate_normalized(&ns, &nt, bijective_only);
    if !Arc::ptr_eq(&ns, s) || !Arc::ptr_eq(&nt, t) {
        let back = to_nt.inverse()?;
        out = out
            .iter()
            .map(|phi| {
                Ok(to_ns
                    .compose(phi)?
                    .compose(&back)?
                    .standard_representative())
            })
            .collect::<Result<_>>()?;
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;
    use crate::rees::SandwichMatrix;
    use crate::semigroup::{MapKind, MorphismSearch};

    fn arc(s: ReesMatrixSemigroup) -> Arc<ReesMatrixSemigroup> {
        Arc::new(s)
    }

    fn preserves_products(phi: &RmsMorphism) -> bool {
        let (s, t) = (phi.source(), phi.target());
        s.elements().all(|x| {
            s.elements().all(|y| {
                phi.apply(s.multiply(x, y).unwrap()).unwrap()
                    == t.multiply(phi.apply(x).unwrap(), phi.apply(y).unwrap())
                        .unwrap()
            })
        })
    }

    fn quad(
        s: &Arc<ReesMatrixSemigroup>,
        theta: GroupMorphism,
        psi_i: Vec<usize>,
        psi_l: Vec<usize>,
        u: Vec<Elem>,
        v: Vec<Elem>,
    ) -> RmsMorphism {
        RmsMorphism::new(s.clone(), s.clone(), theta, psi_i, psi_l, u, v).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s2 = arc(corpus::s2());
        assert_eq!(RmsMorphism::identity(&s2).validate().unwrap(), None);
        let t = arc(corpus::rectangular_group(2, 2, 2));
        let id = GroupMorphism::identity(t.group());
        let phi = quad(
            &t,
            id.clone(),
            vec![0, 1],
            vec![0, 1],
            vec![1, 1],
            vec![1, 1],
        );
        assert_eq!(phi.validate().unwrap(), None);
        let phi = phi.into_validated().unwrap();
        assert!(phi.equal(&RmsMorphism::identity(&t)).unwrap());
        let swap = quad(
            &s2,
            GroupMorphism::identity(s2.group()),
            vec![1, 0],
            vec![0, 1],
            vec![0, 0],
            vec![0, 0],
        );
        assert!(swap.validate().unwrap().is_some());
        assert!(swap.clone().into_validated().is_err());
        assert_eq!(
            swap.apply(s2.parse_element("1:e:1").unwrap()).unwrap_err(),
            Error::NotValidated
        );
    }

    #[test]
    fn validate_detects_shape_mismatch() {
        let s2 = arc(corpus::s2());
        let s3 = arc(corpus::s3());
        let bad = RmsMorphism::new(
            s2.clone(),
            s3,
            GroupMorphism::identity(s2.group()),
            vec![0, 1],
            vec![0, 1],
            vec![0, 0],
            vec![0, 0],
        );
        assert!(matches!(bad, Err(Error::ComponentMismatch(_))));
    }

    #[test]
    fn apply_examples() {
        let s2 = arc(corpus::s2());
        let x = s2.parse_element("1:e:1").unwrap();
        assert_eq!(RmsMorphism::identity(&s2).apply(x).unwrap(), x);
        let t = arc(corpus::rectangular_group(2, 2, 2));
        let phi = quad(
            &t,
            GroupMorphism::identity(t.group()),
            vec![0, 1],
            vec![0, 1],
            vec![1, 1],
            vec![1, 1],
        )
        .into_validated()
        .unwrap();
        for g in 0..2 {
            let x = RmsElement { i: 0, g, l: 0 };
            assert_eq!(phi.apply(x).unwrap(), x);
        }
    }

    #[test]
    fn equal_examples() {
        let s2 = arc(corpus::s2());
        let all = enumerate_rms_morphisms(&s2, &s2, false).unwrap();
        for phi in &all {
            assert!(phi.equal(phi).unwrap());
            for x in 0..2 {
                assert!(phi.equal(&phi.shifted(x)).unwrap());
            }
            let mut moved = phi.clone();
            moved.psi_i[0] = 1 - moved.psi_i[0];
            assert!(!phi.equal(&moved).unwrap());
        }
    }

    #[test]
    fn equal_matches_pointwise_action() {
        let s3g = Arc::new(FiniteGroup::symmetric(3));
        let s = arc(ReesMatrixSemigroup::new(
            SandwichMatrix::new(s3g, 2, 2, vec![0, 0, 0, 3]).unwrap(),
        ));
        let all = enumerate_rms_morphisms(&s, &s, false).unwrap();
        let mut variants = Vec::new();
        for phi in all.iter().take(40) {
            for y in 0..6 {
                variants.push(phi.shifted(y));
            }
        }
        for a in &variants {
            for b in &variants {
                let pointwise = a.index_map().unwrap() == b.index_map().unwrap();
                assert_eq!(a.equal(b).unwrap(), pointwise);
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        let s2 = arc(corpus::s2());
        let id = RmsMorphism::identity(&s2);
        let c = id.canonical_normalized_form().unwrap();
        assert!(c.equal(&id).unwrap());
        let t = arc(corpus::rectangular_group(2, 2, 2));
        let phi = quad(
            &t,
            GroupMorphism::identity(t.group()),
            vec![0, 1],
            vec![0, 1],
            vec![1, 1],
            vec![1, 1],
        )
        .into_validated()
        .unwrap();
        let c = phi.canonical_normalized_form().unwrap();
        assert_eq!((c.u(), c.v()), (&[0, 0][..], &[0, 0][..]));
        assert!(c.equal(&phi).unwrap());
        let s4 = arc(corpus::s4());
        let mut fixed = 0;
        for phi in enumerate_rms_morphisms(&s4, &s4, true).unwrap() {
            if phi.psi_i()[0] == 0 && phi.psi_l()[0] == 0 {
                let c = phi.canonical_normalized_form().unwrap();
                assert!(c.u().iter().chain(c.v()).all(|&x| x == 0));
                assert_eq!(c.validate().unwrap(), None);
                assert!(c.equal(&phi).unwrap());
                fixed += 1;
            } else {
                assert_eq!(
                    phi.canonical_normalized_form().unwrap_err(),
                    Error::NormalizationNotFixed
                );
            }
        }
        assert!(fixed > 0);
    }

    #[test]
    fn canonical_form_fixes_normalized_images() {
        let s3 = arc(corpus::s3());
        let g = s3.group().clone();
        for phi in enumerate_rms_morphisms(&s3, &s3, false).unwrap() {
            if phi.psi_i()[0] != 0 || phi.psi_l()[0] != 0 {
                continue;
            }
            for l in 0..3 {
                for i in 0..3 {
                    let x = RmsElement {
                        i: 0,
                        g: s3.matrix().get(l, i),
                        l: 0,
                    };
                    let y = phi.apply(x).unwrap();
                    let expect = s3.matrix().get(phi.psi_l()[l], phi.psi_i()[i]);
                    assert_eq!((y.i, y.l), (0, 0));
                    assert_eq!(y.g, phi.theta().apply(x.g));
                    assert_eq!(phi.theta().apply(s3.matrix().get(l, i)), expect);
                    let _ = &g;
                }
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let s4 = arc(corpus::s4());
        let autos = enumerate_rms_morphisms(&s4, &s4, true).unwrap();
        let id = RmsMorphism::identity(&s4);
        for a in autos.iter().step_by(7) {
            let inv = a.inverse().unwrap();
            assert!(a.compose(&inv).unwrap().equal(&id).unwrap());
            for b in autos.iter().step_by(11) {
                let ab = a.compose(b).unwrap();
                let ma = a.index_map().unwrap();
                let mb = b.index_map().unwrap();
                let expect: Vec<usize> = ma.iter().map(|&x| mb[x]).collect();
                assert_eq!(ab.index_map().unwrap(), expect);
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let band = arc(corpus::band_rms(2, 2));
        assert_eq!(
            enumerate_rms_morphisms(&band, &band, true).unwrap().len(),
            4
        );
        let s2 = arc(corpus::s2());
        let s3 = arc(corpus::s3());
        assert!(enumerate_rms_morphisms(&s2, &s3, true).unwrap().is_empty());
        let table = s2.to_semigroup();
        let autos = enumerate_rms_morphisms(&s2, &s2, true).unwrap();
        assert_eq!(
            autos.len(),
            MorphismSearch::new(&table, &table, MapKind::Isomorphism).count()
        );
    }

    fn corpus_small() -> Vec<Arc<ReesMatrixSemigroup>> {
        vec![
            arc(corpus::s2()),
            arc(corpus::band_rms(2, 2)),
            arc(corpus::band_rms(3, 2)),
            arc(corpus::rectangular_group(2, 2, 2)),
            arc(corpus::rectangular_group(1, 1, 3)),
            arc(ReesMatrixSemigroup::new(
                SandwichMatrix::new(Arc::new(corpus::z2()), 2, 2, vec![1, 1, 1, 0]).unwrap(),
            )),
        ]
    }

    #[test]
    fn enumeration_agrees_with_table_search() {
        for s in corpus_small() {
            for t in corpus_small() {
                for bijective in [false, true] {
                    let ours = enumerate_rms_morphisms(&s, &t, bijective).unwrap();
                    let kind = if bijective {
                        MapKind::Isomorphism
                    } else {
                        MapKind::Homomorphism
                    };
                    let (a, b) = (s.to_semigroup(), t.to_semigroup());
                    let mut table = MorphismSearch::new(&a, &b, kind).all();
                    let mut maps: Vec<Vec<usize>> =
                        ours.iter().map(|p| p.index_map().unwrap()).collect();
                    for phi in &ours {
                        assert!(preserves_products(phi));
                    }
                    maps.sort();
                    table.sort();
                    assert_eq!(maps, table, "{s:?} -> {t:?} bijective={bijective}");
                }
            }
        }
    }

    #[test]
    fn bijective_components_iff_bijective_map() {
        for s in corpus_small() {
            for t in corpus_small() {
                for phi in enumerate_rms_morphisms(&s, &t, false).unwrap() {
                    let map = phi.index_map().unwrap();
                    let bij = map.len() == t.size()
                        && map.iter().copied().collect::<crate::bits::ElemSet>().len() == map.len();
                    let comps = phi.theta().is_bijective()
                        && phi.psi_i().len() == t.cols()
                        && phi.psi_l().len() == t.rows()
                        && phi
                            .psi_i()
                            .iter()
                            .copied()
                            .collect::<crate::bits::ElemSet>()
                            .len()
                            == t.cols()
                        && phi
                            .psi_l()
                            .iter()
                            .copied()
                            .collect::<crate::bits::ElemSet>()
                            .len()
                            == t.rows();
                    assert_eq!(bij, comps);
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let s2 = arc(corpus::s2());
        for phi in enumerate_rms_morphisms(&s2, &s2, true).unwrap() {
            let r = phi.restrict_to_idempotent_generated().unwrap();
            assert!(r.representative.equal(&phi).unwrap());
            assert_eq!(r.restricted.validate().unwrap(), None);
        }
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let s = arc(ReesMatrixSemigroup::new(
            SandwichMatrix::new(z4, 2, 2, vec![0, 0, 0, 2]).unwrap(),
        ));
        let all = enumerate_rms_morphisms(&s, &s, false).unwrap();
        assert!(!all.is_empty());
        for phi in all {
            let r = phi.restrict_to_idempotent_generated().unwrap();
            assert!(r.representative.equal(&phi).unwrap());
            assert_eq!(r.restricted.validate().unwrap(), None);
            assert_eq!(r.restricted.source().group().order(), 2);
        }
        let id = RmsMorphism::identity(&s2);
        let r = id.restrict_to_idempotent_generated().unwrap();
        let e = r.restricted.source().clone();
        assert!(r.restricted.equal(&RmsMorphism::identity(&e)).unwrap());
    }
}
