//! Structural analysis: primitivity, normal closures, minimal normal
//! subgroups, centralisers of normal subgroups, socle, simplicity, and
//! constructive recognition of alternating groups.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::genmap::GeneratorMap;
use crate::group::Group;
use crate::perm::Permutation;
use crate::search;

/// Primitivity verdict; non-primitive verdicts carry an invariant witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A nontrivial proper block system, blocks sorted by smallest point.
    Imprimitive(Vec<Vec<usize>>),
    /// The orbit partition.
    Intransitive(Vec<Vec<usize>>),
}

/// Decide primitivity. Intransitive groups are not primitive and return the
/// orbit partition as witness; imprimitive groups return the first minimal
/// block system found by scanning seed pairs (0, ω) in ascending ω.
pub fn is_primitive(g: &Group) -> Primitivity {
    let n = g.degree();
    let orbits = g.orbits();
    if orbits.len() > 1 {
        return Primitivity::Intransitive(orbits);
    }
    for omega in 1..n {
        let blocks = minimal_block_system(g, 0, omega);
        if blocks.len() > 1 {
            return Primitivity::Imprimitive(blocks);
        }
    }
    Primitivity::Primitive
}

/// The finest block system of the transitive group g in which alpha and beta
/// share a block (union-find closure of the seed pair under generators).
/// One block means the seed forces the whole point set together.
fn minimal_block_system(g: &Group, alpha: usize, beta: usize) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let (root_a, root_b) = (find(&mut parent, alpha), find(&mut parent, beta));
    parent[root_b] = root_a;
    queue.push_back((alpha, beta));
    while let Some((a, b)) = queue.pop_front() {
        for x in g.generators() {
            let (xa, xb) = (x.apply(a), x.apply(b));
            let (ra, rb) = (find(&mut parent, xa), find(&mut parent, xb));
            if ra != rb {
                parent[rb] = ra;
                queue.push_back((xa, xb));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        blocks[find(&mut parent, x)].push(x);
    }
    let mut blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Smallest normal subgroup of g containing every seed.
pub fn normal_closure(g: &Group, seeds: &[Permutation]) -> Result<Group> {
    for s in seeds {
        if !g.contains(s) {
            return Err(Error::Invalid(format!(
                "normal closure seed {} lies outside the group",
                s
            )));
        }
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut worklist: VecDeque<Permutation> = VecDeque::new();
    for s in seeds {
        if !s.is_identity() && !gens.contains(s) {
            gens.push(s.clone());
            worklist.push_back(s.clone());
        }
    }
    let mut closure = Group::new(g.degree(), gens.clone())?;
    while let Some(w) = worklist.pop_front() {
        for x in g.generators() {
            let c = w.conjugate(x);
            if !closure.contains(&c) {
                gens.push(c.clone());
                worklist.push_back(c);
                closure = Group::new(g.degree(), gens.clone())?;
            }
        }
    }
    // Conjugation-closed on generators, hence normal in g.
    for w in closure.generators() {
        for x in g.generators() {
            debug_assert!(closure.contains(&w.conjugate(x)));
        }
    }
    Ok(closure)
}

/// All minimal normal subgroups of a nontrivial group of order within the
/// enumeration limit. Each minimal normal subgroup is the normal closure of
/// any of its prime-order elements, so the inclusion-minimal closures of
/// prime-order elements are exactly the answer.
pub fn minimal_normal_subgroups(g: &Group, enum_limit: usize) -> Result<Vec<Group>> {
    if g.is_trivial() {
        return Err(Error::Invalid(
            "minimal normal subgroups are defined for nontrivial groups only".into(),
        ));
    }
    let elements = g.elements(enum_limit)?;
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut closures: Vec<Group> = Vec::new();
    for x in &elements {
        if x.is_identity() || !is_prime(x.order()) || covered.contains(x) {
            continue;
        }
        let n = normal_closure(g, std::slice::from_ref(x))?;
        // Conjugates of x and their nontrivial powers all have the same
        // normal closure; mark them so each closure is computed once.
        let mut class: Vec<Permutation> = vec![x.clone()];
        let mut seen: HashSet<Permutation> = class.iter().cloned().collect();
        let mut head = 0;
        while head < class.len() {
            let c = class[head].clone();
            head += 1;
            for gen in g.generators() {
                let cc = c.conjugate(gen);
                if seen.insert(cc.clone()) {
                    class.push(cc);
                }
            }
        }
        for c in class {
            let mut power = c.clone();
            while !power.is_identity() {
                covered.insert(power.clone());
                power = power.product(&c);
            }
        }
        if !closures.iter().any(|m| m.same_group(&n)) {
            closures.push(n);
        }
    }
    let minimal: Vec<Group> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .map(|n| n.reduce_generators())
        .collect();
    Ok(minimal)
}

/// Largest order at which centralisers are computed by plain element
/// filtering; larger groups go through the backtrack search.
const CENTRALISER_FILTER_LIMIT: usize = 10_000;

/// C_g(j) for j normal in g (normality is checked).
pub fn centralizer_of_normal(g: &Group, j: &Group, node_limit: usize) -> Result<Group> {
    if j.degree() != g.degree() {
        return Err(Error::Invalid("degree mismatch between group and subgroup".into()));
    }
    if !j.is_subgroup_of(g) {
        return Err(Error::Invalid("subgroup lies outside the group".into()));
    }
    for m in j.generators() {
        for x in g.generators() {
            if !j.contains(&m.conjugate(x)) {
                return Err(Error::Invalid(
                    "centraliser requested for a non-normal subgroup".into(),
                ));
            }
        }
    }
    if j.is_trivial() {
        return Ok(g.clone());
    }
    match g.order_usize() {
        Some(ord) if ord <= CENTRALISER_FILTER_LIMIT => {
            let elems = g.elements(CENTRALISER_FILTER_LIMIT)?;
            let commuting: Vec<Permutation> = elems
                .into_iter()
                .filter(|x| {
                    j.generators()
                        .iter()
                        .all(|m| x.product(m) == m.product(x))
                })
                .collect();
            Ok(Group::spanned_by(g.degree(), &commuting))
        }
        _ => search::centraliser_in_group(g, j, node_limit),
    }
}

/// Subgroup generated by all minimal normal subgroups.
pub fn socle(g: &Group, enum_limit: usize) -> Result<Group> {
    let minimals = minimal_normal_subgroups(g, enum_limit)?;
    let gens: Vec<Permutation> = minimals
        .iter()
        .flat_map(|m| m.generators().iter().cloned())
        .collect();
    Ok(Group::new(g.degree(), gens)?.reduce_generators())
}

/// True iff the only minimal normal subgroup of g is g itself.
pub fn is_simple(g: &Group, enum_limit: usize) -> Result<bool> {
    let minimals = minimal_normal_subgroups(g, enum_limit)?;
    Ok(minimals.len() == 1 && minimals[0].same_group(g))
}

/// If g ≅ A_m for some m ≥ 5, the degree m and a generator map onto the
/// natural A_m that provably extends to an isomorphism; None otherwise.
///
/// Recognition: order m!/2 and simplicity, then an order-3 conjugacy class
/// of the size a 3-cycle class would have. Elements of that class are grown
/// greedily into a chain of subgroups of orders j!/2 up to (m-1)!/2 (class
/// elements generate products of alternating groups, so each target order
/// pins an A_j acting on j letters and the greedy step cannot dead-end).
/// The coset action on the index-m subgroup gives the map; extending to an
/// isomorphism is the final gate, so impostors are never misreported.
pub fn recognize_alternating(
    g: &Group,
    enum_limit: usize,
) -> Result<Option<(usize, GeneratorMap)>> {
    if g.is_trivial() {
        return Err(Error::Invalid(
            "alternating recognition is defined for nontrivial groups only".into(),
        ));
    }
    let order = g.order();
    let mut m = 4usize;
    let mut half_fact = BigUint::from(12u32); // 4!/2
    let m = loop {
        m += 1;
        half_fact *= BigUint::from(m);
        if half_fact == order {
            break m;
        }
        if half_fact > order {
            return Ok(None);
        }
        if m > 64 {
            return Ok(None);
        }
    };
    if !is_simple(g, enum_limit)? {
        return Ok(None);
    }

    let three_cycle_class_size = m * (m - 1) * (m - 2) / 3;
    let elements = g.elements(enum_limit)?;
    let mut classified: HashSet<Permutation> = HashSet::new();
    for x in &elements {
        if x.order() != 3 || classified.contains(x) {
            continue;
        }
        let class = conjugacy_class(g, x);
        for c in &class {
            classified.insert(c.clone());
        }
        if class.len() != three_cycle_class_size {
            continue;
        }
        if let Some(iso) = grow_and_map(g, m, &class)? {
            return Ok(Some((m, iso)));
        }
    }
    Ok(None)
}

fn conjugacy_class(g: &Group, x: &Permutation) -> Vec<Permutation> {
    let mut class = vec![x.clone()];
    let mut seen: HashSet<Permutation> = class.iter().cloned().collect();
    let mut head = 0;
    while head < class.len() {
        let c = class[head].clone();
        head += 1;
        for gen in g.generators() {
            let cc = c.conjugate(gen);
            if seen.insert(cc.clone()) {
                class.push(cc);
            }
        }
    }
    class
}

/// Grow class elements to an index-m subgroup, build the coset action, and
/// verify it is an isomorphism onto A_m.
fn grow_and_map(g: &Group, m: usize, class: &[Permutation]) -> Result<Option<GeneratorMap>> {
    let mut span = vec![class[0].clone()];
    let mut current = Group::new(g.degree(), span.clone())?;
    let mut target = BigUint::from(3u32); // 3!/2
    for j in 4..m {
        target *= BigUint::from(j);
        let step = class.iter().find_map(|c| {
            let mut extended = span.clone();
            extended.push(c.clone());
            let candidate = Group::new(g.degree(), extended).ok()?;
            (candidate.order() == target).then_some(candidate)
        });
        match step {
            Some(candidate) => {
                span = candidate.generators().to_vec();
                current = candidate;
            }
            None => return Ok(None),
        }
    }
    let point_stab = current;

    let reps = g.coset_representatives(&point_stab, m)?;
    debug_assert_eq!(reps.len(), m);
    let coset_index = |p: &Permutation| -> usize {
        reps.iter()
            .position(|r| point_stab.contains(&p.product(&r.inverse())))
            .expect("every element lies in some coset")
    };
    // Right action on right cosets: (Hr)·x = H(rx); left-to-right products
    // make x -> action(x) a homomorphism.
    let action_images: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| {
            let images: Vec<usize> = reps.iter().map(|r| coset_index(&r.product(x))).collect();
            Permutation::from_images(images).expect("coset action permutes cosets")
        })
        .collect();
    let map = GeneratorMap::new(g.generators().to_vec(), g.degree(), action_images, m)?;
    if map.extends_to_isomorphism() {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl std::fmt::Display for Primitivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn parts(f: &mut std::fmt::Formatter<'_>, sets: &[Vec<usize>]) -> std::fmt::Result {
            for (i, s) in sets.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{{")?;
                for (j, p) in s.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", p + 1)?;
                }
                write!(f, "}}")?;
            }
            Ok(())
        }
        match self {
            Primitivity::Primitive => write!(f, "primitive"),
            Primitivity::Imprimitive(blocks) => {
                write!(f, "imprimitive with blocks ")?;
                parts(f, blocks)
            }
            Primitivity::Intransitive(orbits) => {
                write!(f, "intransitive with orbits ")?;
                parts(f, orbits)
            }
        }
    }
}
