//! Permutation groups as generator lists with a lazily built, cached
//! stabiliser chain.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stabchain::StabChain;

#[derive(Clone)]
pub struct Group {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<Arc<StabChain>>,
    // Set only by `symmetric`; lets order and membership skip the chain,
    // which matters because Sym(n) chains are the largest ones possible.
    full_symmetric: bool,
}

impl Group {
    /// Group generated by `gens` inside Sym(degree). Identity generators are
    /// dropped; degree mismatches are rejected.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Group> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Invalid(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Group {
            degree,
            gens,
            chain: OnceLock::new(),
            full_symmetric: false,
        })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn symmetric(degree: usize) -> Group {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(&[vec![0, 1]], degree).unwrap());
        }
        if degree >= 3 {
            gens.push(Permutation::from_cycles(&[(0..degree).collect()], degree).unwrap());
        }
        let mut g = Group::new(degree, gens).expect("symmetric group");
        g.full_symmetric = true;
        g
    }

    pub fn alternating(degree: usize) -> Group {
        let mut gens = Vec::new();
        for k in 2..degree {
            gens.push(Permutation::from_cycles(&[vec![0, 1, k]], degree).unwrap());
        }
        Group::new(degree, gens).expect("alternating group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// The cached stabiliser chain, built on first use.
    pub fn chain(&self) -> &StabChain {
        self.chain_arc()
    }

    pub fn chain_arc(&self) -> &Arc<StabChain> {
        self.chain
            .get_or_init(|| Arc::new(StabChain::build(&self.gens, self.degree)))
    }

    /// A fresh chain whose base starts with `hint`; never cached.
    pub fn chain_with_base_hint(&self, hint: &[usize]) -> StabChain {
        StabChain::build_with_base_hint(&self.gens, self.degree, hint)
    }

    pub fn order(&self) -> BigUint {
        if self.full_symmetric {
            return (1..=self.degree as u64).map(BigUint::from).product();
        }
        self.chain().order()
    }

    pub fn order_usize(&self) -> Option<usize> {
        self.order().to_usize()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && (self.full_symmetric || self.chain().contains(g))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &Group) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        self.chain().elements(limit)
    }

    /// Orbit of a point under the group, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        assert!(point < self.degree);
        let mut in_orbit = vec![false; self.degree];
        in_orbit[point] = true;
        let mut orbit = vec![point];
        let mut next = 0usize;
        while next < orbit.len() {
            let q = orbit[next];
            next += 1;
            for g in &self.gens {
                let image = g.apply(q);
                if !in_orbit[image] {
                    in_orbit[image] = true;
                    orbit.push(image);
                }
            }
        }
        orbit
    }

    /// All orbits, ordered by smallest point, each in discovery order.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let orbit = self.orbit(p);
            for &q in &orbit {
                seen[q] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Pointwise stabiliser of `points`, via a chain forced through them.
    pub fn pointwise_stabiliser(&self, points: &[usize]) -> Group {
        let chain = self.chain_with_base_hint(points);
        let mut distinct: Vec<usize> = Vec::new();
        for &p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let gens = chain.stabiliser_generators(distinct.len()).to_vec();
        Group::new(self.degree, gens).expect("stabiliser generators are valid")
    }

    /// The conjugate group self^g, generated by the conjugated generators.
    pub fn conjugate_by(&self, g: &Permutation) -> Group {
        let gens = self.gens.iter().map(|s| s.conjugate(g)).collect();
        Group::new(self.degree, gens).expect("conjugates are valid")
    }

    /// Same group with redundant generators dropped: a generator already in
    /// the span of its predecessors is removed. Each survivor strictly grows
    /// the group, so the result has at most log2 |G| generators.
    pub fn reduce_generators(&self) -> Group {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::build(&kept, self.degree);
        for g in &self.gens {
            if !chain.contains(g) {
                kept.push(g.clone());
                chain = StabChain::build(&kept, self.degree);
            }
        }
        Group::new(self.degree, kept).expect("kept generators are valid")
    }

    /// Group spanned by `elems`, keeping only elements that grow the span.
    pub fn spanned_by(degree: usize, elems: &[Permutation]) -> Group {
        Group::new(degree, elems.to_vec())
            .expect("elements are valid")
            .reduce_generators()
    }

    /// Right-coset representatives of `h` in this group, identity first, by
    /// breadth-first search over cosets with membership as the equality
    /// test. Fails if `h` is not a subgroup or the index exceeds `limit`.
    pub fn coset_representatives(&self, h: &Group, limit: usize) -> Result<Vec<Permutation>> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Invalid(
                "coset representatives require a subgroup of the group".into(),
            ));
        }
        let h_chain = h.chain();
        let mut reps = vec![Permutation::identity(self.degree)];
        let mut next = 0usize;
        while next < reps.len() {
            let rep = reps[next].clone();
            next += 1;
            for s in &self.gens {
                let cand = rep.product(s);
                let is_new = reps
                    .iter()
                    .all(|r| !h_chain.contains(&cand.product(&r.inverse())));
                if is_new {
                    if reps.len() >= limit {
                        return Err(Error::ResourceLimit(format!(
                            "coset index exceeds limit {}",
                            limit
                        )));
                    }
                    reps.push(cand);
                }
            }
        }
        Ok(reps)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree={}, gens=[", self.degree)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "])")
    }
}
