//! Named fixture groups for the CLI and the test suites.
//!
//! Families: `cyclic-n`, `dihedral-n` (degree n, order 2n), `sym-n`,
//! `alt-n`, `alt-subsets-m-k` (A_m on k-subsets), `wreath-m-k-l` (the full
//! wreath product in product action), `m11`, `m12`, `elementary-2-r`
//! (r commuting transpositions on 2r points).

use crate::ample;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::subsets::{subset_action, SubsetIndexer};

const FAMILIES: &str =
    "cyclic-n, dihedral-n, sym-n, alt-n, alt-subsets-m-k, wreath-m-k-l, m11, m12, elementary-2-r";

/// Build a fixture group by name.
pub fn fixture(name: &str) -> Result<Group> {
    let bad = |msg: String| Error::Parse(msg);
    let parts: Vec<&str> = name.split('-').collect();
    let arg = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| bad(format!("fixture {name:?} needs a numeric parameter")))
    };
    match parts[0] {
        "cyclic" if parts.len() == 2 => {
            let n = arg(1)?;
            if n == 0 {
                return Err(bad("cyclic-n needs n >= 1".into()));
            }
            let cycle: Vec<usize> = (0..n).collect();
            Group::new(n, vec![Permutation::from_cycles(&[cycle], n)?])
        }
        "dihedral" if parts.len() == 2 => {
            let n = arg(1)?;
            if n < 3 {
                return Err(bad("dihedral-n needs n >= 3".into()));
            }
            let cycle: Vec<usize> = (0..n).collect();
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            Group::new(
                n,
                vec![
                    Permutation::from_cycles(&[cycle], n)?,
                    Permutation::from_images(reflection)?,
                ],
            )
        }
        "sym" if parts.len() == 2 => Ok(Group::symmetric(arg(1)?)),
        "alt" if parts.len() == 3 && parts[1] == "subsets" => {
            // alt-subsets-m-k parses as ["alt", "subsets", "m", "k"].
            Err(bad(format!("fixture {name:?} needs two parameters")))
        }
        "alt" if parts.len() == 4 && parts[1] == "subsets" => {
            let (m, k) = (arg(2)?, arg(3)?);
            let ix = SubsetIndexer::new(m, k)?;
            let gens: Result<Vec<Permutation>> = Group::alternating(m)
                .generators()
                .iter()
                .map(|g| subset_action(g, &ix))
                .collect();
            Group::new(ix.degree(), gens?)
        }
        "alt" if parts.len() == 2 => Ok(Group::alternating(arg(1)?)),
        "wreath" if parts.len() == 4 => {
            let (w, _) = ample::build_wreath_generators(arg(1)?, arg(2)?, arg(3)?)?;
            Ok(w)
        }
        "m11" if parts.len() == 1 => {
            let g = Group::new(
                11,
                vec![
                    Permutation::parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11)?,
                    Permutation::parse_cycles("(3 7 11 8)(4 10 5 6)", 11)?,
                ],
            )?;
            assert_eq!(g.order_usize(), Some(7920), "m11 generators are corrupted");
            Ok(g)
        }
        "m12" if parts.len() == 1 => {
            let g = Group::new(
                12,
                vec![
                    Permutation::parse_cycles("(1 4)(3 10)(5 11)(6 12)", 12)?,
                    Permutation::parse_cycles("(1 8 9)(2 3 4)(5 12 11)(6 10 7)", 12)?,
                ],
            )?;
            assert_eq!(g.order_usize(), Some(95040), "m12 generators are corrupted");
            Ok(g)
        }
        "elementary" if parts.len() == 3 && parts[1] == "2" => {
            let r = arg(2)?;
            if r == 0 {
                return Err(bad("elementary-2-r needs r >= 1".into()));
            }
            let gens: Result<Vec<Permutation>> = (0..r)
                .map(|i| Permutation::from_cycles(&[vec![2 * i, 2 * i + 1]], 2 * r))
                .collect();
            Group::new(2 * r, gens?)
        }
        _ => Err(bad(format!(
            "unknown fixture {name:?}; families: {FAMILIES}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(fixture("cyclic-6").unwrap().order_usize(), Some(6));
        assert_eq!(fixture("dihedral-4").unwrap().order_usize(), Some(8));
        assert_eq!(fixture("sym-4").unwrap().order_usize(), Some(24));
        assert_eq!(fixture("alt-5").unwrap().order_usize(), Some(60));
        let a52 = fixture("alt-subsets-5-2").unwrap();
        assert_eq!(a52.degree(), 10);
        assert_eq!(a52.order_usize(), Some(60));
        let w = fixture("wreath-5-1-2").unwrap();
        assert_eq!(w.degree(), 25);
        assert_eq!(w.order_usize(), Some(28800));
        let e = fixture("elementary-2-4").unwrap();
        assert_eq!(e.degree(), 8);
        assert_eq!(e.order_usize(), Some(16));
    }

    #[test]
    fn mathieu_orders_are_validated() {
        assert_eq!(fixture("m11").unwrap().order_usize(), Some(7920));
        assert_eq!(fixture("m12").unwrap().order_usize(), Some(95040));
    }

    #[test]
    fn dihedral_reflection_inverts_the_cycle() {
        let d = fixture("dihedral-5").unwrap();
        assert_eq!(d.order_usize(), Some(10));
        let c = &d.generators()[0];
        let r = &d.generators()[1];
        assert_eq!(c.conjugate(r), c.inverse());
    }

    #[test]
    fn bad_names_are_rejected() {
        for name in ["", "cyclic", "cyclic-0", "dihedral-2", "m13", "alt-subsets-5", "what-3"] {
            assert!(fixture(name).is_err(), "{name:?} should fail");
        }
    }
}
