//! Ranked k-subset domains and induced actions.
//!
//! Subsets are ranked by the combinatorial number system in colexicographic
//! order; l-tuples of subsets by little-endian mixed radix (coordinate 0
//! least significant). The exact bijections are pinned for reproducibility.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Bijection between k-subsets of {0..m-1} and ranks 0..C(m,k)-1.
#[derive(Debug, Clone)]
pub struct SubsetIndexer {
    m: usize,
    k: usize,
    /// binom[a][b] = C(a, b); rows 0..=m, columns 0..=k.
    binom: Vec<Vec<usize>>,
}

impl SubsetIndexer {
    pub fn new(m: usize, k: usize) -> Result<SubsetIndexer> {
        if m < 5 || k < 1 || 2 * k >= m {
            return Err(Error::Invalid(format!(
                "subset domain needs m >= 5 and 1 <= k < m/2, got m = {m}, k = {k}"
            )));
        }
        let mut binom = vec![vec![0usize; k + 1]; m + 1];
        for a in 0..=m {
            binom[a][0] = 1;
            for b in 1..=k.min(a) {
                binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
            }
        }
        Ok(SubsetIndexer { m, k, binom })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// C(m, k), the number of ranks.
    pub fn degree(&self) -> usize {
        self.binom[self.m][self.k]
    }

    /// Colex rank of a k-subset (order-insensitive; elements must be
    /// distinct points below m).
    pub fn rank(&self, subset: &[usize]) -> usize {
        assert_eq!(subset.len(), self.k, "subset has the wrong size");
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).for_each(|w| {
            assert!(w[0] != w[1], "subset elements must be distinct");
        });
        assert!(*sorted.last().unwrap() < self.m, "subset element out of range");
        sorted
            .iter()
            .enumerate()
            .map(|(i, &a)| if a >= i + 1 { self.binom[a][i + 1] } else { 0 })
            .sum()
    }

    /// The k-subset with the given rank, ascending.
    pub fn unrank(&self, rank: usize) -> Vec<usize> {
        assert!(rank < self.degree(), "rank out of range");
        let mut rest = rank;
        let mut subset = vec![0usize; self.k];
        for i in (1..=self.k).rev() {
            let mut a = i - 1;
            while a + 1 <= self.m && self.binom[a + 1][i] <= rest {
                a += 1;
            }
            subset[i - 1] = a;
            rest -= self.binom[a][i];
        }
        subset
    }
}

/// Induced permutation of ranked k-subsets. The map p -> induced(p) is a
/// homomorphism under left-to-right composition.
pub fn subset_action(p: &Permutation, indexer: &SubsetIndexer) -> Result<Permutation> {
    if p.degree() != indexer.m() {
        return Err(Error::Invalid(format!(
            "subset action needs a permutation of degree {}, got {}",
            indexer.m(),
            p.degree()
        )));
    }
    let images: Vec<usize> = (0..indexer.degree())
        .map(|r| {
            let moved: Vec<usize> = indexer.unrank(r).iter().map(|&x| p.apply(x)).collect();
            indexer.rank(&moved)
        })
        .collect();
    Ok(Permutation::from_images(images).expect("induced map permutes ranks"))
}

/// Bijection between l-tuples of k-subsets and ranks 0..C(m,k)^l-1.
#[derive(Debug, Clone)]
pub struct ProductDomainIndexer {
    indexer: SubsetIndexer,
    l: usize,
    degree: usize,
}

impl ProductDomainIndexer {
    pub fn new(indexer: SubsetIndexer, l: usize) -> Result<ProductDomainIndexer> {
        if l < 1 {
            return Err(Error::Invalid("product domain needs l >= 1".into()));
        }
        let c = indexer.degree();
        let mut degree = 1usize;
        for _ in 0..l {
            degree = degree.checked_mul(c).ok_or_else(|| {
                Error::ResourceLimit(format!("product domain {c}^{l} overflows"))
            })?;
        }
        Ok(ProductDomainIndexer { indexer, l, degree })
    }

    pub fn subset_indexer(&self) -> &SubsetIndexer {
        &self.indexer
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// C(m,k)^l, the number of ranks.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Rank of a tuple of subset ranks, coordinate 0 least significant.
    pub fn rank(&self, digits: &[usize]) -> usize {
        assert_eq!(digits.len(), self.l, "tuple has the wrong length");
        let c = self.indexer.degree();
        digits.iter().rev().fold(0, |acc, &d| {
            assert!(d < c, "digit out of range");
            acc * c + d
        })
    }

    /// Digits of a rank, coordinate 0 first.
    pub fn unrank(&self, rank: usize) -> Vec<usize> {
        assert!(rank < self.degree, "rank out of range");
        let c = self.indexer.degree();
        let mut rest = rank;
        (0..self.l)
            .map(|_| {
                let d = rest % c;
                rest /= c;
                d
            })
            .collect()
    }

    /// The permutation of the product domain applying q in coordinate i.
    pub fn embed_coordinate(&self, i: usize, q: &Permutation) -> Permutation {
        assert!(i < self.l, "coordinate out of range");
        assert_eq!(q.degree(), self.indexer.degree(), "coordinate degree mismatch");
        let images: Vec<usize> = (0..self.degree)
            .map(|r| {
                let mut digits = self.unrank(r);
                digits[i] = q.apply(digits[i]);
                self.rank(&digits)
            })
            .collect();
        Permutation::from_images(images).expect("coordinate action permutes ranks")
    }

    /// The permutation of the product domain sending coordinate i to
    /// coordinate pi(i); pi -> embed_top(pi) is a homomorphism.
    pub fn embed_top(&self, pi: &Permutation) -> Permutation {
        assert_eq!(pi.degree(), self.l, "top degree mismatch");
        let images: Vec<usize> = (0..self.degree)
            .map(|r| {
                let digits = self.unrank(r);
                let mut moved = vec![0usize; self.l];
                for (i, &d) in digits.iter().enumerate() {
                    moved[pi.apply(i)] = d;
                }
                self.rank(&moved)
            })
            .collect();
        Permutation::from_images(images).expect("coordinate shuffle permutes ranks")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn colex_ranks_are_pinned() {
        let ix = SubsetIndexer::new(5, 2).unwrap();
        assert_eq!(ix.degree(), 10);
        assert_eq!(ix.rank(&[0, 1]), 0);
        assert_eq!(ix.rank(&[0, 2]), 1);
        assert_eq!(ix.rank(&[1, 2]), 2);
        assert_eq!(ix.rank(&[3, 4]), 9);
        for r in 0..10 {
            assert_eq!(ix.rank(&ix.unrank(r)), r);
        }
    }

    #[test]
    fn parameter_ranges_are_enforced() {
        assert!(SubsetIndexer::new(4, 1).is_err());
        assert!(SubsetIndexer::new(5, 0).is_err());
        assert!(SubsetIndexer::new(6, 3).is_err());
        let ix = SubsetIndexer::new(5, 1).unwrap();
        assert!(ProductDomainIndexer::new(ix, 0).is_err());
    }

    #[test]
    fn transposition_action_on_pairs() {
        let ix = SubsetIndexer::new(5, 2).unwrap();
        let induced = subset_action(&p("(1 2)", 5), &ix).unwrap();
        // Pairs inside or outside {1,2} are fixed; the rest swap in three
        // transpositions.
        for fixed in [[0usize, 1], [2, 3], [2, 4], [3, 4]] {
            assert_eq!(induced.apply(ix.rank(&fixed)), ix.rank(&fixed));
        }
        assert_eq!(induced.cycle_type(), vec![2, 2, 2]);
        assert_eq!(induced.apply(ix.rank(&[0, 2])), ix.rank(&[1, 2]));
    }

    #[test]
    fn singleton_action_is_the_natural_action() {
        let ix = SubsetIndexer::new(5, 1).unwrap();
        let g = p("(1 2 3 4 5)", 5);
        assert_eq!(subset_action(&g, &ix).unwrap(), g);
        let id = subset_action(&Permutation::identity(5), &ix).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let ix = SubsetIndexer::new(5, 2).unwrap();
        assert!(subset_action(&p("(1 2)", 4), &ix).is_err());
    }

    #[test]
    fn product_domain_round_trip_and_embeddings() {
        let ix = SubsetIndexer::new(5, 1).unwrap();
        let pd = ProductDomainIndexer::new(ix, 2).unwrap();
        assert_eq!(pd.degree(), 25);
        for r in 0..25 {
            assert_eq!(pd.rank(&pd.unrank(r)), r);
        }
        // Coordinate 0 is least significant.
        assert_eq!(pd.rank(&[3, 0]), 3);
        assert_eq!(pd.rank(&[0, 3]), 15);
        let q = p("(1 2 3 4 5)", 5);
        let e0 = pd.embed_coordinate(0, &q);
        let e1 = pd.embed_coordinate(1, &q);
        // Disjoint coordinates commute.
        assert_eq!(e0.product(&e1), e1.product(&e0));
        // The top swap conjugates coordinate 0 into coordinate 1.
        let swap = pd.embed_top(&p("(1 2)", 2));
        assert_eq!(e0.conjugate(&swap), e1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn induced_action_is_a_homomorphism(
            a in proptest::collection::vec(0usize..6, 6),
            b in proptest::collection::vec(0usize..6, 6),
        ) {
            let to_perm = |seed: &[usize]| {
                let mut images: Vec<usize> = (0..6).collect();
                for (i, &s) in seed.iter().enumerate() {
                    images.swap(i, s);
                }
                Permutation::from_images(images).unwrap()
            };
            let (x, y) = (to_perm(&a), to_perm(&b));
            let ix = SubsetIndexer::new(6, 2).unwrap();
            let lhs = subset_action(&x.product(&y), &ix).unwrap();
            let rhs = subset_action(&x, &ix).unwrap().product(&subset_action(&y, &ix).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
