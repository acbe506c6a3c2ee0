//! Permutations of a finite point set with explicit degree.
//!
//! Points are 0-based in memory; every parsed or printed form is 1-based.
//! The action is on the right (`point^g` is `g.apply(point)`), and products
//! compose left to right: `(p * q)` first applies `p`, then `q`, so that
//! `x^(pq) = (x^p)^q`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image table, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::Invalid(format!(
                    "image {} out of range for degree {}",
                    img + 1,
                    n
                )));
            }
            if seen[img] {
                return Err(Error::Invalid(format!(
                    "image {} repeated; not a bijection",
                    img + 1
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 0-based points. Rejects out-of-range and repeated points.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt >= degree {
                    return Err(Error::Invalid(format!(
                        "point {} out of range for degree {}",
                        pt + 1,
                        degree
                    )));
                }
                if used[pt] {
                    return Err(Error::Invalid(format!("point {} repeated", pt + 1)));
                }
                used[pt] = true;
            }
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    images[cycle[w]] = cycle[(w + 1) % cycle.len()];
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    /// The identity is written `()`. Separators may be spaces or commas.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut chars = s.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            match c {
                '(' => {
                    if current.is_some() {
                        return Err(Error::Parse(format!("unexpected '(' at byte {}", i)));
                    }
                    current = Some(Vec::new());
                }
                ')' => match current.take() {
                    Some(cycle) => cycles.push(cycle),
                    None => {
                        return Err(Error::Parse(format!("unexpected ')' at byte {}", i)));
                    }
                },
                ' ' | ',' | '\t' => {}
                d if d.is_ascii_digit() => {
                    let mut end = i + d.len_utf8();
                    while let Some(&(j, c2)) = chars.peek() {
                        if c2.is_ascii_digit() {
                            end = j + c2.len_utf8();
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let token = &s[i..end];
                    let value: usize = token
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer token '{}'", token)))?;
                    if value == 0 || value > degree {
                        return Err(Error::Parse(format!(
                            "point '{}' out of range 1..{}",
                            token, degree
                        )));
                    }
                    match current.as_mut() {
                        Some(cycle) => cycle.push(value - 1),
                        None => {
                            return Err(Error::Parse(format!(
                                "point '{}' outside any cycle",
                                token
                            )));
                        }
                    }
                }
                other => {
                    return Err(Error::Parse(format!("unexpected character '{}'", other)));
                }
            }
        }
        if current.is_some() {
            return Err(Error::Parse("unclosed cycle".into()));
        }
        if cycles.is_empty() {
            return Err(Error::Parse("no cycles found".into()));
        }
        Self::from_cycles(&cycles, degree).map_err(|e| match e {
            Error::Invalid(msg) => Error::Parse(msg),
            other => other,
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Left-to-right product: `self` first, then `other`.
    pub fn product(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// Conjugate `by^-1 * self * by`, written `self^by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), by.degree());
        let mut images = vec![0; self.images.len()];
        for i in 0..self.images.len() {
            images[by.images[i]] = by.images[self.images[i]];
        }
        Permutation { images }
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        let mut order: u128 = 1;
        for cycle in self.cycles_with_fixed(false) {
            order = order.lcm(&(cycle.len() as u128));
        }
        order
    }

    /// Nontrivial cycles, each rotated to start at its smallest point and
    /// listed in order of that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed(false)
    }

    fn cycles_with_fixed(&self, include_fixed: bool) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            if cycle.len() > 1 || include_fixed {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Multiset of nontrivial cycle lengths, sorted. Conjugate permutations
    /// have equal cycle types.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles_with_fixed(false).iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &img)| *i != img).map(|(i, _)| i)
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &img)| *i != img)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_even(&self) -> bool {
        self.cycles_with_fixed(false)
            .iter()
            .map(|c| c.len() - 1)
            .sum::<usize>()
            % 2
            == 0
    }

    /// Power by repeated squaring; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            base = base.product(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Permutation {
    /// Canonical 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (deg {})", self, self.degree())
    }
}
