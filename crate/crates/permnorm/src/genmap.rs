//! Generator-image maps between permutation groups.
//!
//! A map src_i -> dst_i extends to a homomorphism of the generated groups
//! exactly when the diagonal subgroup ⟨(src_i, dst_i)⟩ of the direct sum has
//! the same order as ⟨src⟩ (it is then the graph of the homomorphism), and
//! to an isomorphism when additionally |⟨src⟩| = |⟨dst⟩|. Images of single
//! elements read off the diagonal chain.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stabchain::StabChain;

pub struct GeneratorMap {
    src_degree: usize,
    dst_degree: usize,
    src: Vec<Permutation>,
    dst: Vec<Permutation>,
    /// Chain of the diagonal group, base forced through all src points.
    diag: StabChain,
    src_order: BigUint,
    dst_order: BigUint,
}

impl GeneratorMap {
    pub fn new(
        src: Vec<Permutation>,
        src_degree: usize,
        dst: Vec<Permutation>,
        dst_degree: usize,
    ) -> Result<GeneratorMap> {
        if src.len() != dst.len() {
            return Err(Error::Invalid(format!(
                "generator map needs equal-length tuples, got {} -> {}",
                src.len(),
                dst.len()
            )));
        }
        for g in &src {
            if g.degree() != src_degree {
                return Err(Error::Invalid("source degree mismatch".into()));
            }
        }
        for g in &dst {
            if g.degree() != dst_degree {
                return Err(Error::Invalid("target degree mismatch".into()));
            }
        }
        let diag_gens: Vec<Permutation> = src
            .iter()
            .zip(&dst)
            .map(|(s, d)| {
                let mut images: Vec<usize> = Vec::with_capacity(src_degree + dst_degree);
                images.extend(s.images().iter().copied());
                images.extend(d.images().iter().map(|&i| i + src_degree));
                Permutation::from_images(images).expect("disjoint sum is a bijection")
            })
            .collect();
        let hint: Vec<usize> = (0..src_degree).collect();
        let diag = StabChain::build_with_base_hint(&diag_gens, src_degree + dst_degree, &hint);
        let src_order = StabChain::build(&src, src_degree).order();
        let dst_order = StabChain::build(&dst, dst_degree).order();
        Ok(GeneratorMap {
            src_degree,
            dst_degree,
            src,
            dst,
            diag,
            src_order,
            dst_order,
        })
    }

    pub fn source(&self) -> &[Permutation] {
        &self.src
    }

    pub fn target(&self) -> &[Permutation] {
        &self.dst
    }

    pub fn source_degree(&self) -> usize {
        self.src_degree
    }

    pub fn target_degree(&self) -> usize {
        self.dst_degree
    }

    pub fn extends_to_homomorphism(&self) -> bool {
        self.diag.order() == self.src_order
    }

    pub fn extends_to_isomorphism(&self) -> bool {
        self.extends_to_homomorphism() && self.src_order == self.dst_order
    }

    /// Swapped map dst_i -> src_i.
    pub fn inverse(&self) -> GeneratorMap {
        GeneratorMap::new(
            self.dst.clone(),
            self.dst_degree,
            self.src.clone(),
            self.src_degree,
        )
        .expect("swapping a valid map stays valid")
    }

    /// Image of g under the extended homomorphism, or None when g is not in
    /// ⟨src⟩. Meaningful only when `extends_to_homomorphism()` holds.
    pub fn image_of(&self, g: &Permutation) -> Option<Permutation> {
        if g.degree() != self.src_degree || !self.extends_to_homomorphism() {
            return None;
        }
        // Walk the diagonal chain: pick the transversal element matching g's
        // image at each forced source point. The result is the unique
        // diagonal element over g.
        let total = self.src_degree + self.dst_degree;
        let mut t = Permutation::identity(total);
        for level in self.diag.levels().iter().take(self.src_degree) {
            let d = g.apply(level.point());
            let c = t.inverse().apply(d);
            match level.representative(c) {
                Some(u) => t = u.product(&t),
                None => return None,
            }
        }
        // Deeper levels would mean a non-functional graph; callers checked.
        for i in 0..self.src_degree {
            if t.apply(i) != g.apply(i) {
                return None;
            }
        }
        let images: Vec<usize> = (0..self.dst_degree)
            .map(|i| t.apply(self.src_degree + i) - self.src_degree)
            .collect();
        Some(Permutation::from_images(images).expect("second component is a bijection"))
    }
}
