//! Backtrack searches over stabiliser chains: subgroup intersection,
//! normalisers, and centralisers.
//!
//! The driver explores base images of an ambient group depth-first, in
//! ascending image order, and collects generators for the subgroup
//! L = {g in ambient : property(g)}. Two prunings keep it exact but small:
//!
//! - min-in-orbit: a candidate image d_j is skipped unless it is minimal in
//!   its orbit under the pointwise stabiliser (in the L found so far) of the
//!   images chosen earlier. The lexicographically least element of each
//!   coset of the final L survives, and pruning with a stale (smaller) L
//!   only prunes less, so the found set always generates the full L.
//! - property-specific refiners veto partial products early; a leaf is
//!   accepted only by the refiner's exact test.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::stabchain::StabChain;

/// Partial-assignment pruning for one property.
///
/// Driver contract: `extend(level, t)` is called with the partial product
/// mapping the first `level`+1 ambient base points to their chosen images;
/// `retract(level)` is always called afterwards, whether or not `extend`
/// accepted, so refiners may record partial state before rejecting.
pub trait Refiner {
    fn extend(&mut self, level: usize, t: &Permutation) -> bool;
    fn retract(&mut self, level: usize);
    /// Exact membership test for a fully determined element.
    fn test(&mut self, g: &Permutation) -> bool;
}

/// True when `point` is the smallest point of its orbit under `gens`.
fn is_min_in_orbit(point: usize, gens: &[Permutation], degree: usize) -> bool {
    if gens.is_empty() {
        return true;
    }
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(q) = stack.pop() {
        for g in gens {
            let image = g.apply(q);
            if image < point {
                return false;
            }
            if !seen[image] {
                seen[image] = true;
                stack.push(image);
            }
        }
    }
    true
}

fn stabiliser_of_point(gens: &[Permutation], point: usize, degree: usize) -> Vec<Permutation> {
    if gens.is_empty() {
        return Vec::new();
    }
    StabChain::build_with_base_hint(gens, degree, &[point])
        .stabiliser_generators(1)
        .to_vec()
}

struct SearchCtx<'a> {
    chain: Arc<StabChain>,
    degree: usize,
    refiner: &'a mut dyn Refiner,
    found: Vec<Permutation>,
    l_chain: StabChain,
    nodes: usize,
    node_limit: usize,
}

impl<'a> SearchCtx<'a> {
    fn dfs(&mut self, level: usize, t: &Permutation, stab_gens: &[Permutation]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::ResourceLimit(format!(
                "backtrack search exceeded {} nodes",
                self.node_limit
            )));
        }
        if level == self.chain.levels().len() {
            if self.refiner.test(t) && !self.l_chain.contains(t) {
                self.found.push(t.clone());
                self.l_chain = StabChain::build(&self.found, self.degree);
            }
            return Ok(());
        }
        let lvl = &self.chain.levels()[level];
        let mut cands: Vec<(usize, usize)> =
            lvl.orbit().iter().map(|&c| (t.apply(c), c)).collect();
        cands.sort_unstable();
        for (d, c) in cands {
            // Refresh the pruning group at the root, where L grows most.
            let root_gens;
            let stab: &[Permutation] = if level == 0 {
                root_gens = self.found.clone();
                &root_gens
            } else {
                stab_gens
            };
            if !is_min_in_orbit(d, stab, self.degree) {
                continue;
            }
            let u = self
                .chain
                .levels()[level]
                .representative(c)
                .expect("orbit representative")
                .clone();
            let t_next = u.product(t);
            if self.refiner.extend(level, &t_next) {
                let next_stab = stabiliser_of_point(stab, d, self.degree);
                self.dfs(level + 1, &t_next, &next_stab)?;
            }
            self.refiner.retract(level);
        }
        Ok(())
    }
}

/// Generators of L = {g in ambient : refiner accepts g}. The property must
/// define a subgroup; `seed` is a known subgroup of L (its generators are
/// taken on trust).
pub fn subgroup_search(
    ambient: &Group,
    refiner: &mut dyn Refiner,
    seed: &[Permutation],
    node_limit: usize,
) -> Result<Group> {
    let degree = ambient.degree();
    let found: Vec<Permutation> = seed.iter().filter(|g| !g.is_identity()).cloned().collect();
    let l_chain = StabChain::build(&found, degree);
    let mut ctx = SearchCtx {
        chain: ambient.chain_arc().clone(),
        degree,
        refiner,
        found,
        l_chain,
        nodes: 0,
        node_limit,
    };
    let root_stab = ctx.found.clone();
    ctx.dfs(0, &Permutation::identity(degree), &root_stab)?;
    Ok(Group::new(degree, ctx.found)?.reduce_generators())
}

/// Membership in a second group, pruned level by level against a chain of
/// that group rebased along the ambient base.
struct InGroup {
    aligned: StabChain,
    partial: Vec<Permutation>,
}

impl InGroup {
    /// `base` is the ambient chain's base; `k` the group to intersect with.
    fn new(k: &Group, base: &[usize]) -> InGroup {
        InGroup {
            aligned: StabChain::build_with_base_hint(k.generators(), k.degree(), base),
            partial: Vec::new(),
        }
    }
}

impl Refiner for InGroup {
    fn extend(&mut self, level: usize, t: &Permutation) -> bool {
        // The aligned chain's level j stabilises the first j ambient base
        // points, so a member of K with the chosen images exists only if
        // each image pulls back into the corresponding orbit.
        let prev = self
            .partial
            .last()
            .cloned()
            .unwrap_or_else(|| Permutation::identity(t.degree()));
        let lvl = &self.aligned.levels()[level];
        let d = t.apply(lvl.point());
        let c = prev.inverse().apply(d);
        match lvl.representative(c) {
            Some(u) => {
                self.partial.push(u.product(&prev));
                true
            }
            None => false,
        }
    }

    fn retract(&mut self, level: usize) {
        self.partial.truncate(level);
    }

    fn test(&mut self, g: &Permutation) -> bool {
        self.aligned.contains(g)
    }
}

/// Exact intersection of two groups of equal degree, by backtracking over
/// the chain of the smaller one.
pub fn subgroup_intersection(a: &Group, b: &Group, node_limit: usize) -> Result<Group> {
    if a.degree() != b.degree() {
        return Err(Error::Invalid("intersection requires equal degrees".into()));
    }
    if a.is_subgroup_of(b) {
        return Ok(a.clone());
    }
    if b.is_subgroup_of(a) {
        return Ok(b.clone());
    }
    let (ambient, other) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let mut refiner = InGroup::new(other, &ambient.chain().base());
    subgroup_search(ambient, &mut refiner, &[], node_limit)
}

/// Conjugation stabilises H: prune by H-orbit structure, test exactly by
/// conjugating generators.
struct Normalizes {
    h_gens: Vec<Permutation>,
    h_chain: Arc<StabChain>,
    orbit_id: Vec<usize>,
    orbit_size: Vec<usize>,
    base: Vec<usize>,
}

impl Normalizes {
    fn new(h: &Group, base: Vec<usize>) -> Normalizes {
        let mut orbit_id = vec![usize::MAX; h.degree()];
        let mut orbit_size = vec![0; h.degree()];
        for (id, orbit) in h.orbits().into_iter().enumerate() {
            for &p in &orbit {
                orbit_id[p] = id;
                orbit_size[p] = orbit.len();
            }
        }
        Normalizes {
            h_gens: h.generators().to_vec(),
            h_chain: h.chain_arc().clone(),
            orbit_id,
            orbit_size,
            base,
        }
    }
}

impl Refiner for Normalizes {
    fn extend(&mut self, level: usize, t: &Permutation) -> bool {
        // A normalising element permutes the H-orbits, so base points must
        // land in orbits of equal size and the same-orbit pattern of the
        // chosen images must match that of the base prefix.
        let b_new = self.base[level];
        let d_new = t.apply(b_new);
        if self.orbit_size[b_new] != self.orbit_size[d_new] {
            return false;
        }
        for &b in &self.base[..level] {
            let d = t.apply(b);
            if (self.orbit_id[b] == self.orbit_id[b_new]) != (self.orbit_id[d] == self.orbit_id[d_new]) {
                return false;
            }
        }
        true
    }

    fn retract(&mut self, _level: usize) {}

    fn test(&mut self, g: &Permutation) -> bool {
        self.h_gens
            .iter()
            .all(|s| self.h_chain.contains(&s.conjugate(g)))
    }
}

/// N_K(H) by direct backtracking over K's chain, seeded with H ∩ K.
pub fn normaliser_in_group(k: &Group, h: &Group, node_limit: usize) -> Result<Group> {
    if k.degree() != h.degree() {
        return Err(Error::Invalid("normaliser requires equal degrees".into()));
    }
    if h.is_trivial() {
        return Ok(k.clone());
    }
    let seed = if h.is_subgroup_of(k) {
        h.clone()
    } else {
        subgroup_intersection(h, k, node_limit)?
    };
    let mut refiner = Normalizes::new(h, k.chain().base());
    subgroup_search(k, &mut refiner, seed.generators(), node_limit)
}

/// Commutation with every generator of H: a committed point image forces a
/// cascade of further images, which prunes hard.
struct Centralizes {
    h_gens: Vec<Permutation>,
    base: Vec<usize>,
    forced: Vec<Option<usize>>,
    reverse: Vec<Option<usize>>,
    undo: Vec<Vec<usize>>,
}

impl Centralizes {
    fn new(h: &Group, base: Vec<usize>) -> Centralizes {
        let n = h.degree();
        let depth = base.len();
        Centralizes {
            h_gens: h.generators().to_vec(),
            base,
            forced: vec![None; n],
            reverse: vec![None; n],
            undo: vec![Vec::new(); depth],
        }
    }
}

impl Refiner for Centralizes {
    fn extend(&mut self, level: usize, t: &Permutation) -> bool {
        // g z = z g pins g on whole orbits: from x -> y follows x^z -> y^z.
        let b = self.base[level];
        let d = t.apply(b);
        let mut queue = vec![(b, d)];
        while let Some((x, y)) = queue.pop() {
            match self.forced[x] {
                Some(v) => {
                    if v != y {
                        return false;
                    }
                    continue;
                }
                None => {
                    if self.reverse[y].is_some() {
                        return false;
                    }
                }
            }
            self.forced[x] = Some(y);
            self.reverse[y] = Some(x);
            self.undo[level].push(x);
            for z in &self.h_gens {
                queue.push((z.apply(x), z.apply(y)));
            }
        }
        true
    }

    fn retract(&mut self, level: usize) {
        while let Some(x) = self.undo[level].pop() {
            if let Some(y) = self.forced[x].take() {
                self.reverse[y] = None;
            }
        }
    }

    fn test(&mut self, g: &Permutation) -> bool {
        self.h_gens.iter().all(|z| &z.conjugate(g) == z)
    }
}

/// C_K(H) by direct backtracking over K's chain.
pub fn centraliser_in_group(k: &Group, h: &Group, node_limit: usize) -> Result<Group> {
    if k.degree() != h.degree() {
        return Err(Error::Invalid("centraliser requires equal degrees".into()));
    }
    if h.is_trivial() {
        return Ok(k.clone());
    }
    let mut refiner = Centralizes::new(h, k.chain().base());
    subgroup_search(k, &mut refiner, &[], node_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::DEFAULT_NODE_LIMIT;
    use proptest::prelude::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    fn g(degree: usize, gens: &[&str]) -> Group {
        Group::new(degree, gens.iter().map(|t| p(t, degree)).collect()).unwrap()
    }

    #[test]
    fn intersection_small_cases() {
        let s4 = Group::symmetric(4);
        let a4 = Group::alternating(4);
        assert!(subgroup_intersection(&s4, &a4, DEFAULT_NODE_LIMIT)
            .unwrap()
            .same_group(&a4));

        let d8 = g(4, &["(1 2 3 4)", "(1 3)"]);
        let meet = subgroup_intersection(&d8, &a4, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(meet.order_usize(), Some(4));

        let x = g(4, &["(1 2)"]);
        let y = g(4, &["(3 4)"]);
        assert!(subgroup_intersection(&x, &y, DEFAULT_NODE_LIMIT)
            .unwrap()
            .is_trivial());

        assert!(subgroup_intersection(&s4, &s4, DEFAULT_NODE_LIMIT)
            .unwrap()
            .same_group(&s4));
    }

    #[test]
    fn normaliser_small_cases() {
        let s4 = Group::symmetric(4);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let n = normaliser_in_group(&s4, &v4, DEFAULT_NODE_LIMIT).unwrap();
        assert!(n.same_group(&s4));

        let swap = g(4, &["(1 2)"]);
        let n = normaliser_in_group(&s4, &swap, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(n.order_usize(), Some(4));
        assert!(n.contains(&p("(3 4)", 4)));

        let c7 = g(7, &["(1 2 3 4 5 6 7)"]);
        let n = normaliser_in_group(&Group::symmetric(7), &c7, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(n.order_usize(), Some(42));
    }

    #[test]
    fn centraliser_small_cases() {
        let s4 = Group::symmetric(4);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let c = centraliser_in_group(&s4, &v4, DEFAULT_NODE_LIMIT).unwrap();
        assert!(c.same_group(&v4));

        let c5 = g(5, &["(1 2 3 4 5)"]);
        let c = centraliser_in_group(&Group::symmetric(5), &c5, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(c.order_usize(), Some(5));

        let trivial = Group::trivial(4);
        assert!(centraliser_in_group(&s4, &trivial, DEFAULT_NODE_LIMIT)
            .unwrap()
            .same_group(&s4));
    }

    #[test]
    fn node_limit_is_enforced() {
        let s5 = Group::symmetric(5);
        let c5 = g(5, &["(1 2 3 4 5)"]);
        assert!(matches!(
            normaliser_in_group(&s5, &c5, 3),
            Err(Error::ResourceLimit(_))
        ));
    }

    fn arb_group(degree: usize, max_gens: usize) -> impl Strategy<Value = Group> {
        proptest::collection::vec(
            Just((0..degree).collect::<Vec<usize>>()).prop_shuffle(),
            1..=max_gens,
        )
        .prop_map(move |imgs| {
            let gens = imgs
                .into_iter()
                .map(|v| Permutation::from_images(v).unwrap())
                .collect();
            Group::new(degree, gens).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn intersection_matches_oracle(a in arb_group(6, 2), b in arb_group(6, 2)) {
            let meet = subgroup_intersection(&a, &b, DEFAULT_NODE_LIMIT).unwrap();
            let a_elems = oracle::elements(a.generators(), 6, 1000).unwrap();
            let brute: Vec<_> = a_elems.iter().filter(|e| b.contains(e)).collect();
            prop_assert_eq!(meet.order_usize().unwrap(), brute.len());
            for e in &brute {
                prop_assert!(meet.contains(e));
            }
        }

        #[test]
        fn normaliser_matches_oracle(h in arb_group(5, 2)) {
            let s5 = Group::symmetric(5);
            let n = normaliser_in_group(&s5, &h, DEFAULT_NODE_LIMIT).unwrap();
            let sym = oracle::elements(s5.generators(), 5, 200).unwrap();
            let brute = oracle::normaliser_elements(&sym, h.generators(), 5, 200).unwrap();
            prop_assert_eq!(n.order_usize().unwrap(), brute.len());
            for e in brute.iter().take(40) {
                prop_assert!(n.contains(e));
            }
        }

        #[test]
        fn centraliser_matches_oracle(h in arb_group(5, 2)) {
            let s5 = Group::symmetric(5);
            let c = centraliser_in_group(&s5, &h, DEFAULT_NODE_LIMIT).unwrap();
            let sym = oracle::elements(s5.generators(), 5, 200).unwrap();
            let brute = oracle::centraliser_elements(&sym, h.generators());
            prop_assert_eq!(c.order_usize().unwrap(), brute.len());
        }
    }
}
