//! Exhaustive reference computations used as test oracles.
//!
//! Everything here works by explicit element enumeration and set arithmetic.
//! No stabiliser chains, no pruning: results are slow but independent of the
//! machinery under test, so they anchor its expected values.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Full element list of the group generated by `gens`, identity first, in
/// breadth-first discovery order. Fails once more than `limit` elements
/// appear.
pub fn elements(gens: &[Permutation], degree: usize, limit: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(id.images().to_vec());
    let mut out = vec![id];
    let mut next = 0usize;
    while next < out.len() {
        let current = out[next].clone();
        next += 1;
        for g in gens {
            let prod = current.product(g);
            if seen.insert(prod.images().to_vec()) {
                if out.len() >= limit {
                    return Err(Error::ResourceLimit(format!(
                        "group exceeds {} elements",
                        limit
                    )));
                }
                out.push(prod);
            }
        }
    }
    Ok(out)
}

pub fn order(gens: &[Permutation], degree: usize, limit: usize) -> Result<usize> {
    Ok(elements(gens, degree, limit)?.len())
}

fn image_set(elems: &[Permutation]) -> HashSet<Vec<usize>> {
    elems.iter().map(|p| p.images().to_vec()).collect()
}

/// Elements of `ambient` that conjugate the group generated by `h_gens` to
/// itself. Conjugating each generator into the subgroup is enough: the
/// conjugate group then embeds in a finite group of the same size.
pub fn normaliser_elements(
    ambient: &[Permutation],
    h_gens: &[Permutation],
    degree: usize,
    limit: usize,
) -> Result<Vec<Permutation>> {
    let h_set = image_set(&elements(h_gens, degree, limit)?);
    Ok(ambient
        .iter()
        .filter(|g| {
            h_gens
                .iter()
                .all(|s| h_set.contains(s.conjugate(g).images()))
        })
        .cloned()
        .collect())
}

/// Elements of `ambient` commuting with every generator in `h_gens`.
pub fn centraliser_elements(ambient: &[Permutation], h_gens: &[Permutation]) -> Vec<Permutation> {
    ambient
        .iter()
        .filter(|g| h_gens.iter().all(|s| &s.conjugate(g) == s))
        .cloned()
        .collect()
}

/// Smallest subgroup of ⟨`h_gens`⟩ containing `xs` and closed under
/// conjugation by ⟨`h_gens`⟩, as a full element list.
pub fn normal_closure_elements(
    h_gens: &[Permutation],
    xs: &[Permutation],
    degree: usize,
    limit: usize,
) -> Result<Vec<Permutation>> {
    // Conjugation closure first, then subgroup closure. Conjugating by
    // generators only is enough because conjugation by a product factors.
    let mut conj: Vec<Permutation> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for x in xs {
        if seen.insert(x.images().to_vec()) {
            conj.push(x.clone());
        }
    }
    let mut next = 0usize;
    while next < conj.len() {
        let current = conj[next].clone();
        next += 1;
        for g in h_gens {
            let c = current.conjugate(g);
            if seen.insert(c.images().to_vec()) {
                if conj.len() >= limit {
                    return Err(Error::ResourceLimit(format!(
                        "conjugate set exceeds {} elements",
                        limit
                    )));
                }
                conj.push(c);
            }
        }
    }
    elements(&conj, degree, limit)
}

/// Distinct minimal normal subgroups of ⟨`h_gens`⟩, each as a sorted image
/// list. Every minimal normal subgroup is the normal closure of any of its
/// prime-order elements, so closures of one representative per prime-order
/// cyclic-subgroup class cover all candidates; inclusion-minimal ones win.
pub fn minimal_normal_subgroups(
    h_gens: &[Permutation],
    degree: usize,
    limit: usize,
) -> Result<Vec<Vec<Permutation>>> {
    let elems = elements(h_gens, degree, limit)?;
    let mut covered: HashSet<Vec<usize>> = HashSet::new();
    let mut closures: Vec<Vec<Permutation>> = Vec::new();
    let mut closure_keys: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for x in &elems {
        let ord = x.order();
        if ord <= 1 || !is_prime(ord) {
            continue;
        }
        if covered.contains(x.images()) {
            continue;
        }
        // Conjugates of x, and their nontrivial powers, all have the same
        // normal closure; mark them handled.
        let mut class = vec![x.clone()];
        let mut class_seen: HashSet<Vec<usize>> = HashSet::new();
        class_seen.insert(x.images().to_vec());
        let mut next = 0usize;
        while next < class.len() {
            let current = class[next].clone();
            next += 1;
            for g in h_gens {
                let c = current.conjugate(g);
                if class_seen.insert(c.images().to_vec()) {
                    class.push(c);
                }
            }
        }
        for c in &class {
            let mut power = c.clone();
            for _ in 1..ord {
                covered.insert(power.images().to_vec());
                power = power.product(c);
            }
        }
        let n_x = normal_closure_elements(h_gens, std::slice::from_ref(x), degree, limit)?;
        let mut key: Vec<Vec<usize>> = n_x.iter().map(|p| p.images().to_vec()).collect();
        key.sort();
        if closure_keys.insert(key) {
            closures.push(n_x);
        }
    }
    // Keep the inclusion-minimal closures.
    let sets: Vec<HashSet<Vec<usize>>> = closures.iter().map(|c| image_set(c)).collect();
    let mut minimal: Vec<Vec<Permutation>> = Vec::new();
    for (i, c) in closures.iter().enumerate() {
        let is_minimal = sets.iter().enumerate().all(|(j, other)| {
            j == i || other.len() >= sets[i].len() || !other.iter().all(|e| sets[i].contains(e))
        });
        if is_minimal {
            minimal.push(c.clone());
        }
    }
    Ok(minimal)
}

/// Subgroup generated by all minimal normal subgroups, as an element list.
pub fn socle_elements(h_gens: &[Permutation], degree: usize, limit: usize) -> Result<Vec<Permutation>> {
    let minimals = minimal_normal_subgroups(h_gens, degree, limit)?;
    let union: Vec<Permutation> = minimals.into_iter().flatten().collect();
    if union.is_empty() {
        return Ok(vec![Permutation::identity(degree)]);
    }
    elements(&union, degree, limit)
}

/// Elements of ⟨`h_gens`⟩ commuting with the whole group.
pub fn centre_elements(h_gens: &[Permutation], degree: usize, limit: usize) -> Result<Vec<Permutation>> {
    let elems = elements(h_gens, degree, limit)?;
    Ok(centraliser_elements(&elems, h_gens))
}

/// N_K(H) by exhaustive enumeration of K.
pub fn brute_normaliser(h: &Group, k: &Group, limit: usize) -> Result<Group> {
    if h.degree() != k.degree() {
        return Err(Error::Invalid(format!(
            "normaliser arguments must share a degree, got {} and {}",
            h.degree(),
            k.degree()
        )));
    }
    let k_elems = elements(k.generators(), k.degree(), limit)?;
    let found = normaliser_elements(&k_elems, h.generators(), h.degree(), limit)?;
    Group::new(h.degree(), found)
}

/// Exact normal-subgroup landscape of one group, by enumeration.
pub struct BruteStructure {
    /// Every normal subgroup, as element lists sorted by order.
    pub normal_subgroups: Vec<Vec<Permutation>>,
    /// The nontrivial inclusion-minimal ones.
    pub minimal_normals: Vec<Vec<Permutation>>,
    pub socle: Vec<Permutation>,
    pub centre: Vec<Permutation>,
}

/// Subgroup spanned by `seed`, grown incrementally: a seed element already
/// inside the span so far costs one lookup, so closed seed lists (conjugacy
/// classes, whole subgroups) stay cheap.
fn span_elements(
    degree: usize,
    seed: &[Permutation],
    limit: usize,
) -> Result<Vec<Permutation>> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut span = vec![Permutation::identity(degree)];
    let mut span_set = image_set(&span);
    for s in seed {
        if span_set.contains(s.images()) {
            continue;
        }
        kept.push(s.clone());
        span = elements(&kept, degree, limit)?;
        span_set = image_set(&span);
    }
    Ok(span)
}

fn sorted_key(elems: &[Permutation]) -> Vec<Vec<usize>> {
    let mut key: Vec<Vec<usize>> = elems.iter().map(|p| p.images().to_vec()).collect();
    key.sort();
    key
}

/// All normal subgroups, minimal normals, socle, and centre of ⟨`g_gens`⟩.
///
/// Single-element normal closures seed the list (one per conjugacy class);
/// closing under pairwise joins then reaches every normal subgroup, since
/// each is the join of the closures of its own elements.
pub fn brute_structure(g_gens: &[Permutation], degree: usize, limit: usize) -> Result<BruteStructure> {
    let elems = elements(g_gens, degree, limit)?;

    // One normal closure per conjugacy class.
    let mut class_seen: HashSet<Vec<usize>> = HashSet::new();
    let mut normals: Vec<Vec<Permutation>> = Vec::new();
    let mut normal_keys: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for x in &elems {
        if class_seen.contains(x.images()) {
            continue;
        }
        let mut class = vec![x.clone()];
        class_seen.insert(x.images().to_vec());
        let mut next = 0usize;
        while next < class.len() {
            let current = class[next].clone();
            next += 1;
            for g in g_gens {
                let c = current.conjugate(g);
                if class_seen.insert(c.images().to_vec()) {
                    class.push(c);
                }
            }
        }
        let closure = span_elements(degree, &class, limit)?;
        if normal_keys.insert(sorted_key(&closure)) {
            normals.push(closure);
        }
    }

    // Close under joins.
    let mut i = 0usize;
    while i < normals.len() {
        let mut j = 0usize;
        while j < i {
            let mut seed = normals[i].clone();
            seed.extend(normals[j].iter().cloned());
            let join = span_elements(degree, &seed, limit)?;
            if normal_keys.insert(sorted_key(&join)) {
                normals.push(join);
            }
            j += 1;
        }
        i += 1;
    }
    normals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| sorted_key(a).cmp(&sorted_key(b))));

    let sets: Vec<HashSet<Vec<usize>>> = normals.iter().map(|n| image_set(n)).collect();
    let mut minimal_normals: Vec<Vec<Permutation>> = Vec::new();
    for (i, n) in normals.iter().enumerate() {
        if n.len() == 1 {
            continue;
        }
        let is_minimal = sets.iter().enumerate().all(|(j, other)| {
            j == i || other.len() == 1 || other.len() >= n.len()
                || !other.iter().all(|e| sets[i].contains(e))
        });
        if is_minimal {
            minimal_normals.push(n.clone());
        }
    }

    let socle_seed: Vec<Permutation> = minimal_normals.iter().flatten().cloned().collect();
    let socle = span_elements(degree, &socle_seed, limit)?;
    let centre = centraliser_elements(&elems, g_gens);
    Ok(BruteStructure {
        normal_subgroups: normals,
        minimal_normals,
        socle,
        centre,
    })
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

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn closure_orders() {
        let s4 = vec![p("(1 2 3 4)", 4), p("(1 2)", 4)];
        assert_eq!(order(&s4, 4, 100).unwrap(), 24);
        let a4 = vec![p("(1 2 3)", 4), p("(2 3 4)", 4)];
        assert_eq!(order(&a4, 4, 100).unwrap(), 12);
        let v4 = vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)];
        assert_eq!(order(&v4, 4, 100).unwrap(), 4);
        assert!(order(&s4, 4, 10).is_err());
    }

    #[test]
    fn normaliser_of_transposition_in_s4() {
        let s4 = elements(&[p("(1 2 3 4)", 4), p("(1 2)", 4)], 4, 100).unwrap();
        let n = normaliser_elements(&s4, &[p("(1 2)", 4)], 4, 100).unwrap();
        // <(1 2)> and <(3 4)> commute, so the normaliser is their product.
        assert_eq!(n.len(), 4);
    }

    #[test]
    fn centre_and_minimal_normals_of_d8() {
        // Dihedral of order 8 on the square 1-2-3-4.
        let gens = vec![p("(1 2 3 4)", 4), p("(1 3)", 4)];
        let centre = centre_elements(&gens, 4, 100).unwrap();
        assert_eq!(centre.len(), 2);
        let minimals = minimal_normal_subgroups(&gens, 4, 100).unwrap();
        // Unique minimal normal subgroup: the centre <(1 3)(2 4)>.
        assert_eq!(minimals.len(), 1);
        assert_eq!(minimals[0].len(), 2);
    }

    #[test]
    fn socle_of_a5_squared_style_v4() {
        // V4 is its own socle; both C2 factors are minimal normals? No:
        // in V4 every subgroup is normal, so the three C2s are minimal.
        let gens = vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)];
        let minimals = minimal_normal_subgroups(&gens, 4, 100).unwrap();
        assert_eq!(minimals.len(), 3);
        let socle = socle_elements(&gens, 4, 100).unwrap();
        assert_eq!(socle.len(), 4);
    }

    #[test]
    fn brute_normaliser_frozen_cases() {
        let v4 = Group::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        let s4 = Group::symmetric(4);
        assert_eq!(brute_normaliser(&v4, &s4, 100).unwrap().order_usize(), Some(24));

        let c7 = Group::new(7, vec![p("(1 2 3 4 5 6 7)", 7)]).unwrap();
        let s7 = Group::symmetric(7);
        assert_eq!(brute_normaliser(&c7, &s7, 10_000).unwrap().order_usize(), Some(42));

        assert!(brute_normaliser(&v4, &Group::trivial(4), 100).unwrap().is_trivial());
    }

    #[test]
    fn brute_structure_of_s4() {
        let s4 = vec![p("(1 2 3 4)", 4), p("(1 2)", 4)];
        let st = brute_structure(&s4, 4, 100).unwrap();
        let orders: Vec<usize> = st.normal_subgroups.iter().map(|n| n.len()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(st.minimal_normals.len(), 1);
        assert_eq!(st.minimal_normals[0].len(), 4);
        assert_eq!(st.socle.len(), 4);
        assert_eq!(st.centre.len(), 1);
    }

    #[test]
    fn brute_structure_confirms_simplicity_of_a5() {
        let a5 = vec![p("(1 2 3)", 5), p("(3 4 5)", 5)];
        let st = brute_structure(&a5, 5, 100).unwrap();
        let orders: Vec<usize> = st.normal_subgroups.iter().map(|n| n.len()).collect();
        assert_eq!(orders, vec![1, 60]);
        assert_eq!(st.socle.len(), 60);
    }

    #[test]
    fn brute_structure_of_c6() {
        let c6 = vec![p("(1 2 3 4 5 6)", 6)];
        let st = brute_structure(&c6, 6, 100).unwrap();
        let orders: Vec<usize> = st.normal_subgroups.iter().map(|n| n.len()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let mut minimal_orders: Vec<usize> =
            st.minimal_normals.iter().map(|n| n.len()).collect();
        minimal_orders.sort();
        assert_eq!(minimal_orders, vec![2, 3]);
        assert_eq!(st.centre.len(), 6);
    }

    #[test]
    fn structure_oracles_agree_on_d8() {
        let gens = vec![p("(1 2 3 4)", 4), p("(1 3)", 4)];
        let st = brute_structure(&gens, 4, 100).unwrap();
        let direct = minimal_normal_subgroups(&gens, 4, 100).unwrap();
        let keys_a: Vec<_> = st.minimal_normals.iter().map(|n| sorted_key(n)).collect();
        let mut keys_b: Vec<_> = direct.iter().map(|n| sorted_key(n)).collect();
        keys_b.sort();
        assert_eq!(keys_a, keys_b);
        assert_eq!(sorted_key(&st.socle), sorted_key(&socle_elements(&gens, 4, 100).unwrap()));
        // D_8 has 6 normal subgroups: 1, Z, C_4, two V_4s, D_8.
        assert_eq!(st.normal_subgroups.len(), 6);
    }

    #[test]
    fn normal_closure_in_s4() {
        let s4_gens = vec![p("(1 2 3 4)", 4), p("(1 2)", 4)];
        let closure = normal_closure_elements(&s4_gens, &[p("(1 2)(3 4)", 4)], 4, 100).unwrap();
        assert_eq!(closure.len(), 4);
        let closure = normal_closure_elements(&s4_gens, &[p("(1 2 3)", 4)], 4, 100).unwrap();
        assert_eq!(closure.len(), 12);
        let closure = normal_closure_elements(&s4_gens, &[p("(1 2)", 4)], 4, 100).unwrap();
        assert_eq!(closure.len(), 24);
    }
}
