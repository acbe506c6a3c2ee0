//! The on-disk group format: a degree line, then one generator per line in
//! cycle notation. Blank lines and `#` comments are skipped.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Parse a group file. The first meaningful line is the degree (a bare
/// positive integer); every later line is one generator.
pub fn parse(text: &str) -> Result<Group> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let degree_line = lines
        .next()
        .ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree: usize = degree_line
        .parse()
        .map_err(|_| Error::Parse(format!("bad degree line {degree_line:?}")))?;
    if degree == 0 {
        return Err(Error::Parse("degree must be at least 1".into()));
    }
    let mut gens = Vec::new();
    for line in lines {
        gens.push(Permutation::parse_cycles(line, degree)?);
    }
    Group::new(degree, gens)
}

/// Render a group in the same format. Identity generators are dropped, so
/// the trivial group is just its degree line.
pub fn format(group: &Group) -> String {
    let mut out = format!("{}\n", group.degree());
    for g in group.generators() {
        if !g.is_identity() {
            out.push_str(&format!("{g}\n"));
        }
    }
    out
}
