//! Top-level normaliser pipeline: bounded generating-set and base searches,
//! the small-group normaliser, the almost-simple path, the primitivity
//! classifier, and N_K(H).

use num_bigint::BigUint;
use num_traits::One;

use crate::ample;
use crate::conjugacy;
use crate::error::{Error, Result};
use crate::genmap::GeneratorMap;
use crate::group::Group;
use crate::perm::Permutation;
use crate::search;
use crate::structure::{self, Primitivity};
use crate::{DEFAULT_COSET_LIMIT, DEFAULT_ENUM_LIMIT, DEFAULT_NODE_LIMIT};

/// Resource caps threaded through every pipeline operation.
#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    /// Cap on explicit element enumerations.
    pub enum_limit: usize,
    /// Cap on coset tables swept during normaliser computations.
    pub coset_limit: usize,
    /// Cap on nodes visited by a single backtrack search.
    pub node_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> PipelineConfig {
        PipelineConfig {
            enum_limit: DEFAULT_ENUM_LIMIT,
            coset_limit: DEFAULT_COSET_LIMIT,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

pub fn floor_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// n^(1 + floor(log2 n)): groups of at least this order are "large" for
/// their degree and cannot be small-path primitive normalisers.
pub fn small_order_bound(n: usize) -> BigUint {
    let base = BigUint::from(n);
    let mut bound = BigUint::one();
    for _ in 0..=floor_log2(n) {
        bound *= &base;
    }
    bound
}

/// A generating set of size <= ceil(log2 n) if one exists, else None with
/// the force of a proof: the search walks every irredundant tuple (each new
/// generator lies outside the span of the ones before it), and any minimal
/// generating set can be reordered into such a tuple.
pub fn small_generating_set(
    h: &Group,
    config: &PipelineConfig,
) -> Result<Option<Vec<Permutation>>> {
    if h.is_trivial() {
        return Ok(Some(Vec::new()));
    }
    let bound = ceil_log2(h.degree());
    if bound == 0 {
        return Ok(None);
    }
    let target = h.order();
    let mut elements = h.elements(config.enum_limit)?;
    elements.retain(|e| !e.is_identity());
    // High-order elements first: they span large cyclic chunks early.
    elements.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.images().cmp(b.images())));
    let mut prefix = Vec::new();
    let span = Group::trivial(h.degree());
    Ok(generating_dfs(&elements, &target, bound, &span, &mut prefix))
}

fn generating_dfs(
    elements: &[Permutation],
    target: &BigUint,
    bound: usize,
    span: &Group,
    prefix: &mut Vec<Permutation>,
) -> Option<Vec<Permutation>> {
    if span.order() == *target {
        return Some(prefix.clone());
    }
    if prefix.len() == bound {
        return None;
    }
    for e in elements {
        if span.contains(e) {
            continue;
        }
        prefix.push(e.clone());
        let next = Group::new(span.degree(), prefix.clone()).expect("elements share the degree");
        if let Some(found) = generating_dfs(elements, target, bound, &next, prefix) {
            return Some(found);
        }
        prefix.pop();
    }
    None
}

/// A base of size <= ceil(log2 n) + 1 (pointwise stabiliser trivial) if one
/// exists, else None, exhaustively: candidate points ascend and must be
/// moved by the stabiliser of the points before them, and any small base
/// can be sorted and thinned into that shape.
pub fn small_base(h: &Group, config: &PipelineConfig) -> Result<Option<Vec<usize>>> {
    let bound = ceil_log2(h.degree()) + 1;
    let mut nodes = 0usize;
    base_dfs(h, bound, &mut Vec::new(), &mut nodes, config.node_limit)
}

fn base_dfs(
    h: &Group,
    bound: usize,
    prefix: &mut Vec<usize>,
    nodes: &mut usize,
    node_limit: usize,
) -> Result<Option<Vec<usize>>> {
    let stab = h.pointwise_stabiliser(prefix);
    if stab.is_trivial() {
        return Ok(Some(prefix.clone()));
    }
    if prefix.len() == bound {
        return Ok(None);
    }
    let start = prefix.last().map_or(0, |&p| p + 1);
    for p in start..h.degree() {
        if stab.generators().iter().all(|g| g.apply(p) == p) {
            continue;
        }
        *nodes += 1;
        if *nodes > node_limit {
            return Err(Error::ResourceLimit(format!(
                "base search exceeded {node_limit} nodes"
            )));
        }
        prefix.push(p);
        if let Some(found) = base_dfs(h, bound, prefix, nodes, node_limit)? {
            return Ok(Some(found));
        }
        prefix.pop();
    }
    Ok(None)
}

/// N_{Sym(n)}(h), exactly, for groups small enough to enumerate: reduce the
/// generators, enumerate candidate automorphism image tuples (pruned by
/// cycle type and by extendability of the partial map), realize each as a
/// conjugation when possible, and close over the centraliser.
///
/// Every g normalising h induces an automorphism whose image tuple appears
/// in the enumeration; the sigma found for that tuple differs from g by an
/// element centralising h, so h, the centraliser, and the sigmas together
/// generate all of N.
pub fn normaliser_small(h: &Group, config: &PipelineConfig) -> Result<Group> {
    let n = h.degree();
    if h.is_trivial() {
        return Ok(Group::symmetric(n));
    }
    let reduced = h.reduce_generators();
    let z: Vec<Permutation> = reduced.generators().to_vec();
    let elements = h.elements(config.enum_limit)?;
    let centraliser = search::centraliser_in_group(&Group::symmetric(n), h, config.node_limit)?;

    // Conjugation preserves cycle type, so image candidates need only range
    // over type-matched elements.
    let candidates: Vec<Vec<Permutation>> = z
        .iter()
        .map(|zi| {
            let ct = zi.cycle_type();
            elements.iter().filter(|e| e.cycle_type() == ct).cloned().collect()
        })
        .collect();
    let mut sigmas: Vec<Permutation> = Vec::new();
    let mut images: Vec<Permutation> = Vec::new();
    let mut nodes = 0usize;
    tuple_dfs(
        &z,
        &candidates,
        n,
        &mut images,
        &mut sigmas,
        &mut nodes,
        config.node_limit,
    )?;

    let mut gens = h.generators().to_vec();
    gens.extend(centraliser.generators().iter().cloned());
    gens.extend(sigmas);
    Ok(Group::new(n, gens)?.reduce_generators())
}

fn tuple_dfs(
    z: &[Permutation],
    candidates: &[Vec<Permutation>],
    degree: usize,
    images: &mut Vec<Permutation>,
    sigmas: &mut Vec<Permutation>,
    nodes: &mut usize,
    node_limit: usize,
) -> Result<()> {
    let j = images.len();
    if j == z.len() {
        if let Some(sigma) = conjugacy::conjugating_permutation(z, images, degree) {
            sigmas.push(sigma);
        }
        return Ok(());
    }
    for t in &candidates[j] {
        *nodes += 1;
        if *nodes > node_limit {
            return Err(Error::ResourceLimit(format!(
                "automorphism search exceeded {node_limit} nodes"
            )));
        }
        images.push(t.clone());
        let extends = GeneratorMap::new(
            z[..=j].to_vec(),
            degree,
            images.clone(),
            degree,
        )?
        .extends_to_isomorphism();
        if extends {
            tuple_dfs(z, candidates, degree, images, sigmas, nodes, node_limit)?;
        }
        images.pop();
    }
    Ok(())
}

/// N_{Sym(n)}(h) when soc(h) is nonabelian simple and self-centralizing in
/// h; None otherwise. The socle's normaliser comes from the subset-action
/// pullback when the socle is alternating-on-subsets, else from a direct
/// backtrack; h's normaliser is then a coset sweep inside it.
pub fn almost_simple_normaliser(h: &Group, config: &PipelineConfig) -> Result<Option<Group>> {
    if h.is_trivial() {
        return Ok(None);
    }
    let n = h.degree();
    let socle = structure::socle(h, config.enum_limit)?;
    let gens = socle.generators();
    let abelian = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i..].iter().all(|b| a.product(b) == b.product(a)));
    if abelian || !structure::is_simple(&socle, config.enum_limit)? {
        return Ok(None);
    }
    if !structure::centralizer_of_normal(h, &socle, config.node_limit)?.is_trivial() {
        return Ok(None);
    }

    let soc_normaliser = match ample::detect_ample(&socle, config.enum_limit, config.node_limit)? {
        Some(cert) => {
            debug_assert_eq!(cert.l, 1, "a simple socle has one factor");
            let (w, _) = ample::build_wreath_generators(cert.m, cert.k, cert.l)?;
            let sigma_inv = cert.sigma.inverse();
            let pulled: Vec<Permutation> =
                w.generators().iter().map(|zg| zg.conjugate(&sigma_inv)).collect();
            Group::new(n, pulled)?
        }
        None => search::normaliser_in_group(&Group::symmetric(n), &socle, config.node_limit)?,
    };

    // N(h) normalises the characteristic socle, so it lives in here.
    let reps = soc_normaliser.coset_representatives(h, config.coset_limit)?;
    let mut gens = h.generators().to_vec();
    for r in &reps {
        if h.generators().iter().all(|x| h.contains(&x.conjugate(r))) {
            gens.push(r.clone());
        }
    }
    Ok(Some(Group::new(n, gens)?.reduce_generators()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveClass {
    AlmostSimple,
    Ample,
    Small,
}

impl PrimitiveClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PrimitiveClass::AlmostSimple => "almost-simple",
            PrimitiveClass::Ample => "ample",
            PrimitiveClass::Small => "small",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotPrimitiveReason {
    Intransitive,
    OrderTooLargeNotAmple,
    NoSmallBaseOrGens,
    ExplicitBlockSystem,
}

impl NotPrimitiveReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NotPrimitiveReason::Intransitive => "intransitive",
            NotPrimitiveReason::OrderTooLargeNotAmple => "order-too-large-not-ample",
            NotPrimitiveReason::NoSmallBaseOrGens => "no-small-base-or-gens",
            NotPrimitiveReason::ExplicitBlockSystem => "explicit-block-system",
        }
    }
}

/// Verdict of the primitivity classifier. Primitive verdicts carry the
/// computed normaliser; non-primitive ones carry the reason and, where one
/// exists, a witness partition.
pub enum ClassifyResult {
    NotPrimitive {
        reason: NotPrimitiveReason,
        witness: Option<Vec<Vec<usize>>>,
    },
    Primitive {
        class: PrimitiveClass,
        normaliser: Group,
    },
}

/// Decide whether N = N_{Sym(n)}(h) is primitive, computing N on the three
/// affirmative paths. Decision sequence: transitivity, the almost-simple
/// path, the ample path, the order bound, and last the small path (which
/// requires both a small generating set and a small base).
pub fn classify_and_normalise(h: &Group, config: &PipelineConfig) -> Result<ClassifyResult> {
    let n = h.degree();
    if h.is_trivial() {
        // The full symmetric group is primitive on any number of points.
        return Ok(ClassifyResult::Primitive {
            class: PrimitiveClass::Small,
            normaliser: Group::symmetric(n),
        });
    }
    if !h.is_transitive() {
        // N permutes h's orbits, so the orbit partition blocks N too.
        return Ok(ClassifyResult::NotPrimitive {
            reason: NotPrimitiveReason::Intransitive,
            witness: Some(h.orbits()),
        });
    }
    if let Some(norm) = almost_simple_normaliser(h, config)? {
        return Ok(primitive_or_witness(norm, PrimitiveClass::AlmostSimple));
    }
    if let Some(cert) = ample::detect_ample(h, config.enum_limit, config.node_limit)? {
        // A one-coordinate certificate means a simple socle, which the
        // almost-simple branch above would have taken.
        if cert.l >= 2 {
            let norm = ample::normaliser_of_ample(h, &cert, config.coset_limit)?;
            return Ok(primitive_or_witness(norm, PrimitiveClass::Ample));
        }
    }
    if h.order() >= small_order_bound(n) {
        return Ok(ClassifyResult::NotPrimitive {
            reason: NotPrimitiveReason::OrderTooLargeNotAmple,
            witness: None,
        });
    }
    let gens = small_generating_set(h, config)?;
    let base = small_base(h, config)?;
    if gens.is_none() || base.is_none() {
        return Ok(ClassifyResult::NotPrimitive {
            reason: NotPrimitiveReason::NoSmallBaseOrGens,
            witness: None,
        });
    }
    let norm = normaliser_small(h, config)?;
    Ok(primitive_or_witness(norm, PrimitiveClass::Small))
}

fn primitive_or_witness(normaliser: Group, class: PrimitiveClass) -> ClassifyResult {
    match structure::is_primitive(&normaliser) {
        Primitivity::Primitive => ClassifyResult::Primitive { class, normaliser },
        Primitivity::Imprimitive(blocks) => ClassifyResult::NotPrimitive {
            reason: NotPrimitiveReason::ExplicitBlockSystem,
            witness: Some(blocks),
        },
        Primitivity::Intransitive(orbits) => ClassifyResult::NotPrimitive {
            reason: NotPrimitiveReason::ExplicitBlockSystem,
            witness: Some(orbits),
        },
    }
}

/// Which route produced a normaliser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormaliserPath {
    AlmostSimple,
    Ample,
    Small,
    /// Direct backtracking, outside the fast classification paths.
    FallbackBacktrack,
}

impl NormaliserPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormaliserPath::AlmostSimple => "almost-simple",
            NormaliserPath::Ample => "ample",
            NormaliserPath::Small => "small",
            NormaliserPath::FallbackBacktrack => "fallback-backtrack",
        }
    }
}

/// N_K(h), exactly: intersect K with a classified N_{Sym(n)}(h) when the
/// classifier computed one, recompute via the small-group normaliser when
/// the order permits, and fall back to direct backtracking otherwise.
pub fn normaliser_in(
    h: &Group,
    k: &Group,
    config: &PipelineConfig,
) -> Result<(Group, NormaliserPath)> {
    if h.degree() != k.degree() {
        return Err(Error::Invalid(format!(
            "normaliser arguments must share a degree, got {} and {}",
            h.degree(),
            k.degree()
        )));
    }
    match classify_and_normalise(h, config)? {
        ClassifyResult::Primitive { class, normaliser } => {
            let path = match class {
                PrimitiveClass::AlmostSimple => NormaliserPath::AlmostSimple,
                PrimitiveClass::Ample => NormaliserPath::Ample,
                PrimitiveClass::Small => NormaliserPath::Small,
            };
            let meet = search::subgroup_intersection(k, &normaliser, config.node_limit)?;
            Ok((meet, path))
        }
        ClassifyResult::NotPrimitive { .. } => {
            if h.order() < small_order_bound(h.degree()) {
                let norm = normaliser_small(h, config)?;
                let meet = search::subgroup_intersection(k, &norm, config.node_limit)?;
                Ok((meet, NormaliserPath::Small))
            } else {
                let norm = search::normaliser_in_group(k, h, config.node_limit)?;
                Ok((norm, NormaliserPath::FallbackBacktrack))
            }
        }
    }
}
