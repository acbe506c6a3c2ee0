//! Product-action socle groups A(m,k,l), their wreath normalisers, ample
//! detection, and the ample-case normaliser.
//!
//! A(m,k,l) is the direct product of l copies of A_m acting on ranked
//! k-subsets, one copy per coordinate of the ranked product domain; its
//! normaliser in the symmetric group is W = S(m,k) wr S_l in product action.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::conjugacy;
use crate::error::{Error, Result};
use crate::genmap::GeneratorMap;
use crate::group::Group;
use crate::perm::Permutation;
use crate::structure;
use crate::subsets::{subset_action, ProductDomainIndexer, SubsetIndexer};

/// W = S(m,k) wr S_l in product action together with its socle-side
/// subgroup A(m,k,l). W comes with at most four generators: two base
/// generators in coordinate 0 and up to two top generators.
pub fn build_wreath_generators(m: usize, k: usize, l: usize) -> Result<(Group, Group)> {
    let indexer = SubsetIndexer::new(m, k)?;
    let pd = ProductDomainIndexer::new(indexer, l)?;
    let ix = pd.subset_indexer();

    let transposition = Permutation::from_cycles(&[vec![0, 1]], m)?;
    let full_cycle = Permutation::from_cycles(&[(0..m).collect()], m)?;
    let mut w_gens = vec![
        pd.embed_coordinate(0, &subset_action(&transposition, ix)?),
        pd.embed_coordinate(0, &subset_action(&full_cycle, ix)?),
    ];
    if l >= 2 {
        w_gens.push(pd.embed_top(&Permutation::from_cycles(&[vec![0, 1]], l)?));
    }
    if l >= 3 {
        w_gens.push(pd.embed_top(&Permutation::from_cycles(&[(0..l).collect()], l)?));
    }
    debug_assert!(w_gens.len() <= 4);

    let mut a_gens = Vec::new();
    for i in 0..l {
        for g in Group::alternating(m).generators() {
            a_gens.push(pd.embed_coordinate(i, &subset_action(g, ix)?));
        }
    }

    let degree = pd.degree();
    Ok((Group::new(degree, w_gens)?, Group::new(degree, a_gens)?))
}

/// Witness that a group's socle is permutation isomorphic to A(m,k,l):
/// sigma maps the original points onto the ranked product domain and iso
/// maps socle generators to their conjugates under sigma.
pub struct AmpleCertificate {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    /// Socle generators -> generators of A(m,k,l) on the ranked domain.
    pub iso: GeneratorMap,
    /// Original points -> ranked product domain; s^sigma = iso(s).
    pub sigma: Permutation,
}

impl AmpleCertificate {
    /// The defining identity, checked generator by generator: conjugation
    /// by sigma sends each socle generator to its mapped image.
    pub fn verify(&self) -> bool {
        self.iso
            .source()
            .iter()
            .zip(self.iso.target())
            .all(|(s, t)| s.conjugate(&self.sigma) == *t)
    }
}

/// Decide whether soc(h) is permutation isomorphic to some A(m,k,l) and if
/// so return a verified certificate. Never returns a false positive: every
/// candidate is checked pointwise before being reported.
pub fn detect_ample(
    h: &Group,
    enum_limit: usize,
    node_limit: usize,
) -> Result<Option<AmpleCertificate>> {
    if h.is_trivial() {
        return Err(Error::Invalid(
            "ample detection is defined for nontrivial groups only".into(),
        ));
    }
    let n = h.degree();
    let socle = structure::socle(h, enum_limit)?;

    // Peel simple factors: a minimal normal subgroup of the running
    // centraliser chain is one factor; its centraliser holds the rest.
    let mut factors: Vec<Group> = Vec::new();
    let mut rest = socle.clone();
    while !rest.is_trivial() {
        let minimals = structure::minimal_normal_subgroups(&rest, enum_limit)?;
        let factor = minimals.into_iter().next().expect("nontrivial group");
        let gens = factor.generators();
        let abelian = gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i..].iter().all(|b| a.product(b) == b.product(a)));
        if abelian {
            return Ok(None);
        }
        rest = structure::centralizer_of_normal(&rest, &factor, node_limit)?;
        factors.push(factor);
    }
    let l = factors.len();
    let factor_gens: Vec<Permutation> = factors
        .iter()
        .flat_map(|f| f.generators().iter().cloned())
        .collect();
    let soc = Group::new(n, factor_gens)?;
    if soc.order() != socle.order() {
        return Ok(None);
    }

    let mut m = 0usize;
    let mut recognitions: Vec<GeneratorMap> = Vec::new();
    for factor in &factors {
        match structure::recognize_alternating(factor, enum_limit)? {
            Some((factor_m, iso)) if m == 0 || factor_m == m => {
                m = factor_m;
                recognitions.push(iso);
            }
            _ => return Ok(None),
        }
    }
    if !soc.is_transitive() {
        return Ok(None);
    }

    // All (m', k, l') with C(m',k)^l' = n, increasing m' then k; only the
    // recognized m and factor count can verify, the rest are skipped.
    for (cand_m, cand_k, cand_l) in candidate_triples(n) {
        if cand_m != m || cand_l != l {
            continue;
        }
        let indexer = SubsetIndexer::new(cand_m, cand_k)?;
        let pd = ProductDomainIndexer::new(indexer, cand_l)?;
        let masks = if m == 6 { 1usize << l } else { 1 };
        for mask in 0..masks {
            if let Some(cert) = try_certificate(&soc, &recognitions, &pd, cand_k, mask)? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

fn candidate_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut triples = Vec::new();
    for m in 5..=n {
        for k in 1..m {
            if 2 * k >= m {
                break;
            }
            let Ok(ix) = SubsetIndexer::new(m, k) else { continue };
            let c = ix.degree();
            if c > n {
                break;
            }
            let mut power = c;
            let mut l = 1;
            while power < n {
                let Some(next) = power.checked_mul(c) else { break };
                power = next;
                l += 1;
            }
            if power == n {
                triples.push((m, k, l));
            }
        }
    }
    triples
}

/// Build the candidate generator map for one outer-twist mask and search
/// for the point bijection sigma; verified certificate or None.
fn try_certificate(
    soc: &Group,
    recognitions: &[GeneratorMap],
    pd: &ProductDomainIndexer,
    k: usize,
    mask: usize,
) -> Result<Option<AmpleCertificate>> {
    let n = soc.degree();
    let ix = pd.subset_indexer();
    let m = ix.m();
    let l = pd.l();
    let mut dst: Vec<Permutation> = Vec::new();
    for (i, rec) in recognitions.iter().enumerate() {
        let twisted = mask >> i & 1 == 1;
        for a in rec.target() {
            let a = if twisted {
                a6_outer_automorphism()
                    .image_of(a)
                    .expect("twist applies to even permutations")
            } else {
                a.clone()
            };
            dst.push(pd.embed_coordinate(i, &subset_action(&a, ix)?));
        }
    }
    let iso = GeneratorMap::new(soc.generators().to_vec(), n, dst, n)?;
    if !iso.extends_to_isomorphism() {
        return Ok(None);
    }

    // sigma search: map the stabiliser of point 0 through iso; its common
    // fixed points are the only possible images of 0 (stabiliser orders
    // already agree by transitivity), and each image forces all of sigma.
    let stab = soc.pointwise_stabiliser(&[0]);
    let stab_images: Vec<Permutation> = stab
        .generators()
        .iter()
        .map(|g| iso.image_of(g).expect("stabiliser lies in the socle"))
        .collect();
    let mut found: Option<Permutation> = None;
    for delta in 0..n {
        if !stab_images.iter().all(|p| p.apply(delta) == delta) {
            continue;
        }
        let mut image: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        let Some(trail) =
            conjugacy::propagate(0, delta, soc.generators(), iso.target(), &mut image, &mut used)
        else {
            continue;
        };
        if trail.len() != n {
            continue;
        }
        let images: Vec<usize> = image.into_iter().map(|i| i.expect("total map")).collect();
        found = Some(Permutation::from_images(images).expect("propagation is injective"));
        break;
    }
    let Some(sigma) = found else { return Ok(None) };
    let cert = AmpleCertificate { m, k, l, iso, sigma };
    if cert.verify() {
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

/// An automorphism of the natural A_6 not induced by any element of S_6,
/// built once: it must send 3-cycles to (3,3)-elements, so scan those as
/// images of one generator and order-5 elements as images of the other.
pub fn a6_outer_automorphism() -> &'static GeneratorMap {
    static OUTER: OnceLock<GeneratorMap> = OnceLock::new();
    OUTER.get_or_init(|| {
        let a = Permutation::parse_cycles("(1 2 3)", 6).unwrap();
        let b = Permutation::parse_cycles("(2 3 4 5 6)", 6).unwrap();
        let a6 = Group::new(6, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(a6.order_usize(), Some(360), "generators must span A_6");
        let elements = a6.elements(360).unwrap();
        for ta in &elements {
            if ta.cycle_type() != vec![3, 3] {
                continue;
            }
            for tb in &elements {
                if tb.order() != 5 {
                    continue;
                }
                let map = GeneratorMap::new(
                    vec![a.clone(), b.clone()],
                    6,
                    vec![ta.clone(), tb.clone()],
                    6,
                )
                .unwrap();
                if map.extends_to_isomorphism() {
                    return map;
                }
            }
        }
        unreachable!("A_6 has an outer automorphism");
    })
}

/// N_{Sym(n)}(h) for h with an ample certificate and l >= 2: pull the four
/// wreath generators back through sigma to get M = N(soc h), then keep the
/// coset representatives of h in M that normalise h.
pub fn normaliser_of_ample(
    h: &Group,
    cert: &AmpleCertificate,
    coset_limit: usize,
) -> Result<Group> {
    if cert.l < 2 {
        return Err(Error::Invalid(
            "product-action normaliser needs at least two coordinates".into(),
        ));
    }
    if !cert.verify() || !cert.iso.source().iter().all(|s| h.contains(s)) {
        return Err(Error::Invalid("certificate does not match the group".into()));
    }
    let n = h.degree();
    let (w, _) = build_wreath_generators(cert.m, cert.k, cert.l)?;
    let sigma_inv = cert.sigma.inverse();
    let pulled: Vec<Permutation> = w
        .generators()
        .iter()
        .map(|z| z.conjugate(&sigma_inv))
        .collect();
    let big = Group::new(n, pulled)?;

    let reps = big.coset_representatives(h, coset_limit)?;
    let mut gens: Vec<Permutation> = h.generators().to_vec();
    for r in &reps {
        if h.generators().iter().all(|x| h.contains(&x.conjugate(r))) {
            gens.push(r.clone());
        }
    }
    Ok(Group::new(n, gens)?.reduce_generators())
}

/// 2^l * l!, the index of A(m,k,l) in W.
pub fn wreath_index(l: usize) -> BigUint {
    let mut index = BigUint::one() << l;
    for j in 2..=l {
        index *= BigUint::from(j);
    }
    index
}
