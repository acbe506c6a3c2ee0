//! Simultaneous conjugation: find σ with src_i^σ = dst_i for all i.
//!
//! The tuples define edge-colored functional digraphs on the points (color i
//! sends ω to ω^{src_i}); a conjugator is exactly a color-isomorphism. Each
//! ⟨src⟩-orbit is matched independently: fixing the image of one orbit point
//! forces the rest by propagation, so we try candidate root images in
//! ascending order and backtrack across orbits.

use crate::perm::Permutation;

/// Any σ ∈ Sym(degree) with src_i^σ = dst_i for all i, or None when no such
/// permutation exists. Tuples must have equal lengths and degrees.
pub fn conjugating_permutation(
    src: &[Permutation],
    dst: &[Permutation],
    degree: usize,
) -> Option<Permutation> {
    assert_eq!(src.len(), dst.len(), "conjugation tuples must pair up");
    for g in src.iter().chain(dst) {
        assert_eq!(g.degree(), degree, "conjugation tuples must share a degree");
    }
    // Conjugation preserves cycle type coordinate-wise; cheap early out.
    for (s, d) in src.iter().zip(dst) {
        if s.cycle_type() != d.cycle_type() {
            return None;
        }
    }

    let orbits = src_orbits(src, degree);
    let mut image: Vec<Option<usize>> = vec![None; degree];
    let mut used: Vec<bool> = vec![false; degree];
    if !match_orbits(&orbits, 0, src, dst, &mut image, &mut used) {
        return None;
    }
    let images: Vec<usize> = image.into_iter().map(|i| i.expect("total map")).collect();
    let sigma = Permutation::from_images(images).expect("injective total map is a bijection");
    // Propagation guarantees this, but the check is cheap and final.
    for (s, d) in src.iter().zip(dst) {
        if s.conjugate(&sigma) != *d {
            return None;
        }
    }
    Some(sigma)
}

/// Orbits of ⟨src⟩ on 0..degree, each listed from its smallest point, the
/// orbits ordered by that point.
fn src_orbits(src: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in src {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbits.push(orbit);
    }
    orbits
}

fn match_orbits(
    orbits: &[Vec<usize>],
    at: usize,
    src: &[Permutation],
    dst: &[Permutation],
    image: &mut [Option<usize>],
    used: &mut [bool],
) -> bool {
    if at == orbits.len() {
        return true;
    }
    let root = orbits[at][0];
    for candidate in 0..image.len() {
        if used[candidate] {
            continue;
        }
        let trail = propagate(root, candidate, src, dst, image, used);
        match trail {
            Some(trail) => {
                if match_orbits(orbits, at + 1, src, dst, image, used) {
                    return true;
                }
                for p in trail {
                    used[image[p].take().expect("trail point was assigned")] = false;
                }
            }
            None => {}
        }
    }
    false
}

/// Assign image[root] = candidate and force σ(x^{src_i}) = σ(x)^{dst_i}
/// through the orbit. Returns the points assigned on success; on conflict
/// (functional or injectivity) undoes its own assignments and returns None.
pub(crate) fn propagate(
    root: usize,
    candidate: usize,
    src: &[Permutation],
    dst: &[Permutation],
    image: &mut [Option<usize>],
    used: &mut [bool],
) -> Option<Vec<usize>> {
    let mut trail = vec![root];
    image[root] = Some(candidate);
    used[candidate] = true;
    let mut head = 0;
    let mut ok = true;
    'bfs: while head < trail.len() {
        let x = trail[head];
        let y = image[x].expect("trail points are assigned");
        head += 1;
        for (s, d) in src.iter().zip(dst) {
            let xs = s.apply(x);
            let yd = d.apply(y);
            match image[xs] {
                Some(existing) => {
                    if existing != yd {
                        ok = false;
                        break 'bfs;
                    }
                }
                None => {
                    if used[yd] {
                        ok = false;
                        break 'bfs;
                    }
                    image[xs] = Some(yd);
                    used[yd] = true;
                    trail.push(xs);
                }
            }
        }
    }
    if ok {
        Some(trail)
    } else {
        for p in trail {
            used[image[p].take().expect("trail point was assigned")] = false;
        }
        None
    }
}
