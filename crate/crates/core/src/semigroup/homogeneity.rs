//! Brute-force homogeneity in the plain semigroup signature.
//!
//! With `Aut(S)` in hand, `S` is homogeneous iff for every subsemigroup `A`
//! (a) every automorphism of `A` is the restriction of an automorphism of
//! `S` stabilising `A`, and (b) every subsemigroup isomorphic to `A` lies in
//! the `Aut(S)`-orbit of `A`. Both are checked on orbit representatives.

use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;

use super::search::invariant_key;
use super::{
    enumerate_isomorphisms, orbit_representatives, FiniteSemigroup, MapKind, MorphismSearch,
};
use crate::bits::ElemSet;
use crate::error::Result;

/// Data for one `Aut(S)`-orbit of subsemigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitWitness {
    pub representative: ElemSet,
    pub orbit_size: usize,
    /// `|Aut(A)|` for the representative `A`.
    pub automorphisms: usize,
    /// Automorphisms of `S` extending each automorphism of `A`.
    pub extensions_per_isomorphism: usize,
}

/// An isomorphism between subsemigroups with no extension to `Aut(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonExtendable {
    pub domain: ElemSet,
    pub codomain: ElemSet,
    /// `(x, image)` pairs in source index order.
    pub map: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityCertificate {
    pub homogeneous: bool,
    pub automorphism_count: usize,
    pub subsemigroup_count: usize,
    pub orbits: Vec<OrbitWitness>,
    pub counterexample: Option<NonExtendable>,
}

/// Decides whether every isomorphism between nonempty subsemigroups of `s`
/// extends to an automorphism of `s`.
pub fn is_homogeneous(s: &FiniteSemigroup, cap: usize) -> Result<HomogeneityCertificate> {
    let auts = enumerate_isomorphisms(s, s);
    let reps = orbit_representatives(s, &auts, cap)?;
    let subsemigroup_count = reps.iter().map(|r| auts.len() / r.stabilizer.len()).sum();
    let mut cert = HomogeneityCertificate {
        homogeneous: true,
        automorphism_count: auts.len(),
        subsemigroup_count,
        orbits: Vec::with_capacity(reps.len()),
        counterexample: None,
    };

    // Smallest counterexamples first: both checks run size by size.
    let mut k = 0;
    while k < reps.len() {
        let size = reps[k].set.len();
        let end = reps[k..]
            .iter()
            .position(|r| r.set.len() != size)
            .map_or(reps.len(), |d| k + d);
        let mut layer = Vec::with_capacity(end - k);
        for rep in &reps[k..end] {
            let (sub, members) = s.restrict(rep.set)?;
            let mut pos = vec![usize::MAX; s.len()];
            for (idx, &x) in members.iter().enumerate() {
                pos[x] = idx;
            }
            let restrictions: HashSet<Vec<usize>> = rep
                .stabilizer
                .iter()
                .map(|&a| members.iter().map(|&x| pos[auts[a][x]]).collect())
                .collect();
            let mut local = 0usize;
            let mut missing = None;
            MorphismSearch::new(&sub, &sub, MapKind::Isomorphism).for_each(|f| {
                local += 1;
                if missing.is_none() && !restrictions.contains(f) {
                    missing = Some(f.to_vec());
                }
                ControlFlow::Continue(())
            });
            if let Some(f) = missing {
                cert.homogeneous = false;
                cert.orbits.clear();
                cert.counterexample = Some(NonExtendable {
                    domain: rep.set,
                    codomain: rep.set,
                    map: members
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| (x, members[f[i]]))
                        .collect(),
                });
                return Ok(cert);
            }
            cert.orbits.push(OrbitWitness {
                representative: rep.set,
                orbit_size: auts.len() / rep.stabilizer.len(),
                automorphisms: local,
                extensions_per_isomorphism: rep.stabilizer.len() / local,
            });
            layer.push((rep.set, sub, members));
        }

        // Distinct orbits must be pairwise non-isomorphic.
        let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (i, (_, sub, _)) in layer.iter().enumerate() {
            buckets.entry(invariant_key(sub)).or_default().push(i);
        }
        for ids in buckets.values() {
            for (ai, &a) in ids.iter().enumerate() {
                for &b in &ids[ai + 1..] {
                    let (da, sa, ma) = &layer[a];
                    let (db, sb, mb) = &layer[b];
                    if let Some(f) = MorphismSearch::new(sa, sb, MapKind::Isomorphism).first() {
                        cert.homogeneous = false;
                        cert.orbits.clear();
                        cert.counterexample = Some(NonExtendable {
                            domain: *da,
                            codomain: *db,
                            map: ma.iter().enumerate().map(|(i, &x)| (x, mb[f[i]])).collect(),
                        });
                        return Ok(cert);
                    }
                }
            }
        }
        k = end;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;
    use crate::semigroup::{all_subsemigroups, DEFAULT_SUBSEMIGROUP_CAP};

    /// Oracle straight from the definition: every isomorphism between every
    /// pair of subsemigroups is checked against every automorphism.
    fn homogeneous_by_definition(s: &FiniteSemigroup) -> bool {
        let auts = enumerate_isomorphisms(s, s);
        let subs = all_subsemigroups(s, DEFAULT_SUBSEMIGROUP_CAP).unwrap();
        let tables: Vec<_> = subs.iter().map(|t| s.restrict(*t).unwrap()).collect();
        for (sa, ma) in &tables {
            for (sb, mb) in &tables {
                if sa.len() != sb.len() {
                    continue;
                }
                for f in enumerate_isomorphisms(sa, sb) {
                    let extends = auts
                        .iter()
                        .any(|a| ma.iter().enumerate().all(|(k, &x)| a[x] == mb[f[k]]));
                    if !extends {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn brute(s: &FiniteSemigroup) -> bool {
        is_homogeneous(s, DEFAULT_SUBSEMIGROUP_CAP)
            .unwrap()
            .homogeneous
    }

    #[test]
    fn groups() {
        let z4 = FiniteGroup::cyclic(4).to_semigroup();
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let z2z4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        assert!(brute(&z4) && homogeneous_by_definition(&z4));
        assert!(brute(&v.to_semigroup()) && homogeneous_by_definition(&v.to_semigroup()));
        let s = z2z4.to_semigroup();
        let cert = is_homogeneous(&s, DEFAULT_SUBSEMIGROUP_CAP).unwrap();
        assert!(!cert.homogeneous);
        assert!(!homogeneous_by_definition(&s));
        let ce = cert.counterexample.unwrap();
        assert_eq!(ce.domain.len(), 2);
        assert_eq!(ce.codomain.len(), 2);
    }

    #[test]
    fn z2xz4_witness_maps_a_non_square_to_a_square() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        let s = g.to_semigroup();
        let ce = is_homogeneous(&s, DEFAULT_SUBSEMIGROUP_CAP)
            .unwrap()
            .counterexample
            .unwrap();
        let squares: ElemSet = (0..s.len()).map(|x| s.mul(x, x)).collect();
        // One side is ⟨(1,0)⟩-like (involution not a square), the other ⟨(0,2)⟩.
        let moved: Vec<_> = ce.map.iter().filter(|(x, y)| x != y).collect();
        assert!(moved
            .iter()
            .any(|&&(x, y)| squares.contains(x) != squares.contains(y)));
    }

    #[test]
    fn known_examples() {
        assert!(brute(&corpus::s2().to_semigroup()));
        assert!(brute(&FiniteSemigroup::monogenic(2, 2)));
        assert!(homogeneous_by_definition(&FiniteSemigroup::monogenic(2, 2)));
    }

    #[test]
    fn agrees_with_definition_on_small_semigroups() {
        let cases = [
            FiniteSemigroup::rectangular_band(2, 2),
            FiniteSemigroup::rectangular_band(2, 3),
            FiniteSemigroup::monogenic(3, 1),
            FiniteSemigroup::monogenic(1, 4),
            FiniteSemigroup::from_fn(vec!["0".into(), "1".into()], |a, b| a.min(b)).unwrap(),
            FiniteSemigroup::from_fn((0..3).map(|k| k.to_string()).collect(), |a, b| a.min(b))
                .unwrap(),
            FiniteGroup::symmetric(3).to_semigroup(),
            corpus::s2().to_semigroup(),
        ];
        for s in &cases {
            assert_eq!(brute(s), homogeneous_by_definition(s), "{:?}", s.labels());
        }
    }

    #[test]
    fn certificate_is_nonempty_on_homogeneous_inputs() {
        let cert = is_homogeneous(&corpus::s2().to_semigroup(), DEFAULT_SUBSEMIGROUP_CAP).unwrap();
        assert!(cert.homogeneous);
        assert!(cert
            .orbits
            .iter()
            .all(|o| o.extensions_per_isomorphism >= 1));
        assert_eq!(
            cert.subsemigroup_count,
            all_subsemigroups(&corpus::s2().to_semigroup(), usize::MAX)
                .unwrap()
                .len()
        );
    }
}
