//! Deterministic stabiliser chains.
//!
//! A chain for H ≤ Sym(n) stores base points b_0, ..., b_{r-1} and per-level
//! generator lists T_0 ⊇ T_1 ⊇ ... ⊇ T_{r-1}, where every element of T_i
//! fixes b_0..b_{i-1} pointwise. Construction is the deterministic
//! Schreier-Sims process: the chain is complete exactly when every Schreier
//! generator u_p · s · u_{p·s}⁻¹ at level i sifts to the identity through the
//! deeper levels, which certifies Stab_{⟨T_i⟩}(b_i) = ⟨T_{i+1}⟩ level by
//! level. Orders, membership, and pointwise stabilisers all read off the
//! verified chain.
//!
//! Chains built without a hint never contain trivial orbits. Chains built
//! with a base hint keep every hint point as a forced prefix, trivial orbits
//! included, so level `hint.len()` generates the pointwise stabiliser of the
//! hint.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens,
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.recompute(degree);
        level
    }

    /// Breadth-first orbit of the base point; u_p satisfies point^{u_p} = p.
    fn recompute(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.orbit.push(self.point);
        self.transversal[self.point] = Some(Permutation::identity(degree));
        let mut next = 0usize;
        while next < self.orbit.len() {
            let q = self.orbit[next];
            next += 1;
            let u_q = self.transversal[q].clone().expect("orbit point has rep");
            for s in &self.gens {
                let image = s.apply(q);
                if self.transversal[image].is_none() {
                    self.transversal[image] = Some(u_q.product(s));
                    self.orbit.push(image);
                }
            }
        }
    }

    pub fn point(&self) -> usize {
        self.point
    }

    /// Orbit of the base point in discovery order; first entry is the point.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn contains_in_orbit(&self, p: usize) -> bool {
        self.transversal[p].is_some()
    }

    /// Representative u_p with point^{u_p} = p, if p lies in the orbit.
    pub fn representative(&self, p: usize) -> Option<&Permutation> {
        self.transversal[p].as_ref()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Chain with an automatically chosen base. Orbits are never trivial.
    pub fn build(gens: &[Permutation], degree: usize) -> StabChain {
        Self::build_with_base_hint(gens, degree, &[])
    }

    /// Chain whose base starts with `hint` verbatim (duplicates dropped),
    /// extended as needed. Hint levels may have trivial orbits.
    pub fn build_with_base_hint(gens: &[Permutation], degree: usize, hint: &[usize]) -> StabChain {
        let mut base: Vec<usize> = Vec::new();
        for &p in hint {
            assert!(p < degree, "base hint point out of range");
            if !base.contains(&p) {
                base.push(p);
            }
        }
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        // Greedy base rule: extend with the smallest point moved by the
        // subgroup fixing the base so far (= min over its generators).
        loop {
            let stab_min = gens
                .iter()
                .filter(|g| base.iter().all(|&b| g.apply(b) == b))
                .filter_map(|g| g.smallest_moved_point())
                .min();
            match stab_min {
                Some(b) => base.push(b),
                None => break,
            }
        }
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for (i, &b) in base.iter().enumerate() {
            let level_gens: Vec<Permutation> = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, level_gens, degree));
        }
        chain.complete();
        chain
    }

    /// Schreier-Sims verification loop, bottom level first. Each level is
    /// certified once all its Schreier generators sift to the identity
    /// through the deeper levels; a failed sift files the residue into every
    /// list it belongs to and re-certifies from the deepest changed level.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'outer: loop {
            let level = &self.levels[i];
            // Snapshots keep the iteration stable while self mutates below.
            let orbit = level.orbit.clone();
            let gens = level.gens.clone();
            for &p in &orbit {
                let u_p = self.levels[i].transversal[p].clone().expect("orbit rep");
                for s in &gens {
                    let image = s.apply(p);
                    let u_image = self.levels[i].transversal[image]
                        .clone()
                        .expect("orbit closed under generators");
                    let schreier = u_p.product(s).product(&u_image.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, stuck) = self.sift_from(&schreier, i + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    let k = if stuck < self.levels.len() {
                        stuck
                    } else {
                        // Residue fixes the whole base: extend it.
                        let b = residue.smallest_moved_point().expect("non-identity");
                        self.levels.push(Level::new(b, Vec::new(), self.degree));
                        self.levels.len() - 1
                    };
                    for j in 0..=k {
                        if !self.levels[j].gens.contains(&residue) {
                            self.levels[j].gens.push(residue.clone());
                        }
                    }
                    for j in 0..=k {
                        let degree = self.degree;
                        self.levels[j].recompute(degree);
                    }
                    i = k;
                    continue 'outer;
                }
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Strong generating set: the level-0 list.
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    /// Generators of the pointwise stabiliser of the first `prefix` base
    /// points. Valid for any prefix length up to the base length.
    pub fn stabiliser_generators(&self, prefix: usize) -> &[Permutation] {
        assert!(prefix <= self.levels.len());
        if prefix == self.levels.len() {
            &[]
        } else {
            &self.levels[prefix].gens
        }
    }

    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    /// Sifts `g` from the given level: peels a transversal factor per level,
    /// returning the residue and the first level whose orbit missed it
    /// (`levels.len()` when every level was passed).
    pub fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for k in start..self.levels.len() {
            let q = h.apply(self.levels[k].point);
            match &self.levels[k].transversal[q] {
                Some(u) => h = h.product(&u.inverse()),
                None => return (h, k),
            }
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.sift_from(g, 0).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).is_identity()
    }

    /// True when no orbit is trivial.
    pub fn is_irredundant(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() >= 2)
    }

    /// Full element list, one product of transversal representatives per
    /// element, deepest level applied first. Fails over `limit` elements.
    pub fn elements(&self, limit: usize) -> crate::error::Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(crate::error::Error::ResourceLimit(format!(
                "group of order {} exceeds enumeration limit {}",
                order, limit
            )));
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut grown = Vec::with_capacity(elems.len() * level.orbit.len());
            for e in &elems {
                for &p in &level.orbit {
                    let u = level.transversal[p].as_ref().expect("orbit rep");
                    grown.push(e.product(u));
                }
            }
            elems = grown;
        }
        Ok(elems)
    }

    /// Re-checks every structural invariant and the full Schreier
    /// certificate. Test support; quadratic in the chain size.
    pub fn validate(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            // Level generators fix the earlier base points.
            for g in &level.gens {
                if self.levels[..i].iter().any(|l| g.apply(l.point) != l.point) {
                    return false;
                }
            }
            // Set containment between consecutive lists.
            if i + 1 < self.levels.len() {
                let deeper = &self.levels[i + 1].gens;
                if !deeper.iter().all(|g| level.gens.contains(g)) {
                    return false;
                }
            }
            // Orbit and transversal consistency.
            if level.orbit.first() != Some(&level.point) {
                return false;
            }
            for &p in &level.orbit {
                match &level.transversal[p] {
                    Some(u) => {
                        if u.apply(level.point) != p {
                            return false;
                        }
                    }
                    None => return false,
                }
            }
            // Schreier certificate: every Schreier generator sifts away.
            for &p in &level.orbit {
                let u_p = level.transversal[p].as_ref().expect("orbit rep");
                for s in &level.gens {
                    let image = s.apply(p);
                    let u_image = match &level.transversal[image] {
                        Some(u) => u,
                        None => return false,
                    };
                    let schreier = u_p.product(s).product(&u_image.inverse());
                    let (residue, _) = self.sift_from(&schreier, i + 1);
                    if !residue.is_identity() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    fn order_usize(chain: &StabChain) -> usize {
        use num_traits::ToPrimitive;
        chain.order().to_usize().unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s4 = StabChain::build(&[p("(1 2 3 4)", 4), p("(1 2)", 4)], 4);
        assert_eq!(order_usize(&s4), 24);
        assert!(s4.validate());
        assert!(s4.is_irredundant());

        let a4 = StabChain::build(&[p("(1 2 3)", 4), p("(2 3 4)", 4)], 4);
        assert_eq!(order_usize(&a4), 12);
        assert!(a4.validate());
    }

    #[test]
    fn dihedral_and_cyclic() {
        let d8 = StabChain::build(&[p("(1 2 3 4)", 4), p("(1 3)", 4)], 4);
        assert_eq!(order_usize(&d8), 8);
        let c6 = StabChain::build(&[p("(1 2 3 4 5 6)", 6)], 6);
        assert_eq!(order_usize(&c6), 6);
        let trivial = StabChain::build(&[], 5);
        assert_eq!(order_usize(&trivial), 1);
        assert!(trivial.contains(&Permutation::identity(5)));
        assert!(!trivial.contains(&p("(1 2)", 5)));
    }

    #[test]
    fn mathieu_11_order() {
        let gens = vec![
            p("(1 2 3 4 5 6 7 8 9 10 11)", 11),
            p("(3 7 11 8)(4 10 5 6)", 11),
        ];
        let chain = StabChain::build(&gens, 11);
        assert_eq!(order_usize(&chain), 7920);
        assert!(chain.validate());
        assert!(chain.is_irredundant());
    }

    #[test]
    fn membership_matches_parity() {
        let a4 = StabChain::build(&[p("(1 2 3)", 4), p("(2 3 4)", 4)], 4);
        assert!(a4.contains(&p("(1 2)(3 4)", 4)));
        assert!(!a4.contains(&p("(1 2)", 4)));
        let s4 = StabChain::build(&[p("(1 2 3 4)", 4), p("(1 2)", 4)], 4);
        assert!(s4.contains(&p("(1 2)", 4)));
    }

    #[test]
    fn element_enumeration_matches_oracle() {
        let gens = vec![p("(1 2 3 4)", 4), p("(1 3)", 4)];
        let chain = StabChain::build(&gens, 4);
        let mut ours: Vec<Vec<usize>> = chain
            .elements(100)
            .unwrap()
            .iter()
            .map(|q| q.images().to_vec())
            .collect();
        let mut brute: Vec<Vec<usize>> = oracle::elements(&gens, 4, 100)
            .unwrap()
            .iter()
            .map(|q| q.images().to_vec())
            .collect();
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute);
        assert!(chain.elements(7).is_err());
    }

    #[test]
    fn base_hint_exposes_pointwise_stabiliser() {
        // Dihedral of order 8: the stabiliser of corner 1 is {id, (2 4)}.
        let gens = vec![p("(1 2 3 4)", 4), p("(1 3)", 4)];
        let chain = StabChain::build_with_base_hint(&gens, 4, &[0]);
        assert_eq!(chain.base()[0], 0);
        let stab = chain.stabiliser_generators(1);
        let stab_chain = StabChain::build(stab, 4);
        assert_eq!(order_usize(&stab_chain), 2);
        assert!(stab_chain.contains(&p("(2 4)", 4)));

        // Forcing a fixed point keeps it in the base with a trivial orbit.
        let v4 = vec![p("(3 4)", 4)];
        let hinted = StabChain::build_with_base_hint(&v4, 4, &[0, 2]);
        assert_eq!(hinted.base()[..2], [0, 2]);
        assert!(hinted.validate());
    }

    #[test]
    fn full_base_hint_stabiliser_is_trivial() {
        let gens = vec![p("(1 2 3 4)", 4), p("(1 2)", 4)];
        let chain = StabChain::build_with_base_hint(&gens, 4, &[0, 1, 2]);
        assert_eq!(&chain.base()[..3], &[0, 1, 2]);
        assert_eq!(chain.stabiliser_generators(3), &[] as &[Permutation]);
        assert_eq!(order_usize(&chain), 24);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chain_order_matches_brute_closure(
            seed_perms in proptest::collection::vec(
                Just((0..7usize).collect::<Vec<usize>>()).prop_shuffle(), 1..4)
        ) {
            let gens: Vec<Permutation> = seed_perms
                .into_iter()
                .map(|imgs| Permutation::from_images(imgs).unwrap())
                .collect();
            let chain = StabChain::build(&gens, 7);
            let brute = oracle::elements(&gens, 7, 6000).unwrap();
            prop_assert_eq!(order_usize(&chain), brute.len());
            prop_assert!(chain.validate());
            prop_assert!(chain.is_irredundant());
            for g in brute.iter().take(60) {
                prop_assert!(chain.contains(g));
            }
        }
    }
}
