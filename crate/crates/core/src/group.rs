//! Torsion-free groups: free groups as reduced words, free abelian groups
//! as integer vectors.

use std::fmt;

use crate::error::{Error, Result};

/// A reduced word in a free group: runs of `(generator, exponent)`, no
/// zero exponents and no two adjacent runs on the same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power(g: usize, e: i64) -> Self {
        Word::from_runs([(g, e)])
    }

    /// Reduces an arbitrary run sequence.
    pub fn from_runs(runs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in runs {
            push_run(&mut out, g, e);
        }
        Word(out)
    }

    pub fn runs(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut out = self.0.clone();
        for &(g, e) in &rhs.0 {
            push_run(&mut out, g, e);
        }
        Word(out)
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Word length with respect to the free generating set.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|r| r.0 == g).map(|r| r.1).sum()
    }

    /// The letters one at a time, each with exponent +1 or -1.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

fn push_run(out: &mut Vec<(usize, i64)>, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push((g, e));
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(g).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The ambient group of a grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Free { names: Vec<String> },
    Abelian { rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Free(Word),
    Abelian(Vec<i64>),
}

impl Group {
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Group(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Group::Free { names })
    }

    pub fn abelian(rank: usize) -> Self {
        Group::Abelian { rank }
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            Group::Free { .. } => GroupElem::Free(Word::identity()),
            Group::Abelian { rank } => GroupElem::Abelian(vec![0; *rank]),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Group::Free { names } => names.len(),
            Group::Abelian { rank } => *rank,
        }
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        match self {
            Group::Free { .. } => GroupElem::Free(Word::generator(i)),
            Group::Abelian { rank } => {
                let mut v = vec![0; *rank];
                v[i] = 1;
                GroupElem::Abelian(v)
            }
        }
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        match (self, g) {
            (Group::Free { names }, GroupElem::Free(w)) => w.0.iter().all(|r| r.0 < names.len()),
            (Group::Abelian { rank }, GroupElem::Abelian(v)) => v.len() == *rank,
            _ => false,
        }
    }

    /// Parses `u v^-1 u^2` for free groups, or whitespace-separated
    /// integers for free abelian groups. `1` and the empty string are the
    /// identity.
    pub fn parse_elem(&self, text: &str) -> Result<GroupElem> {
        let text = text.trim();
        match self {
            Group::Free { names } => {
                if text.is_empty() || text == "1" {
                    return Ok(self.identity());
                }
                let mut runs = Vec::new();
                for tok in text.split_whitespace() {
                    let (name, exp) = match tok.split_once('^') {
                        Some((n, e)) => (
                            n,
                            e.parse::<i64>()
                                .map_err(|_| Error::Group(format!("bad exponent in `{tok}`")))?,
                        ),
                        None => (tok, 1),
                    };
                    let g = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::Group(format!("unknown generator `{name}`")))?;
                    runs.push((g, exp));
                }
                Ok(GroupElem::Free(Word::from_runs(runs)))
            }
            Group::Abelian { rank } => {
                let v: Vec<i64> = text
                    .split(|c: char| c.is_whitespace() || c == ',' || c == '(' || c == ')')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<i64>().map_err(|_| Error::Group(format!("bad integer `{s}`"))))
                    .collect::<Result<_>>()?;
                if v.is_empty() {
                    return Ok(self.identity());
                }
                if v.len() != *rank {
                    return Err(Error::Group(format!("expected {rank} coordinates, got {}", v.len())));
                }
                Ok(GroupElem::Abelian(v))
            }
        }
    }

    pub fn format_elem(&self, g: &GroupElem) -> String {
        match (self, g) {
            (Group::Free { names }, GroupElem::Free(w)) => w.display(names).to_string(),
            (_, GroupElem::Abelian(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            _ => "?".into(),
        }
    }
}

impl GroupElem {
    pub fn mul(&self, rhs: &GroupElem) -> Result<GroupElem> {
        match (self, rhs) {
            (GroupElem::Free(a), GroupElem::Free(b)) => Ok(GroupElem::Free(a.mul(b))),
            (GroupElem::Abelian(a), GroupElem::Abelian(b)) if a.len() == b.len() => {
                Ok(GroupElem::Abelian(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            _ => Err(Error::ProfileMismatch),
        }
    }

    pub fn inv(&self) -> GroupElem {
        match self {
            GroupElem::Free(w) => GroupElem::Free(w.inv()),
            GroupElem::Abelian(v) => GroupElem::Abelian(v.iter().map(|x| -x).collect()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElem::Free(w) => w.is_identity(),
            GroupElem::Abelian(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// Sum of absolute exponents of the reduced word.
    pub fn s_length(&self) -> Result<u64> {
        match self {
            GroupElem::Free(w) => Ok(w.length()),
            GroupElem::Abelian(_) => Err(Error::Group("S-length is defined for free groups; use l1_norm".into())),
        }
    }

    /// L1 norm; the abelian analogue of the S-length.
    pub fn l1_norm(&self) -> u64 {
        match self {
            GroupElem::Free(w) => w.length(),
            GroupElem::Abelian(v) => v.iter().map(|x| x.unsigned_abs()).sum(),
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            GroupElem::Free(w) => Some(w),
            GroupElem::Abelian(_) => None,
        }
    }
}

/// A homomorphism out of a finitely generated free or free abelian group,
/// given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub target: Group,
    pub images: Vec<GroupElem>,
}

impl GroupHom {
    pub fn new(source: &Group, target: Group, images: Vec<GroupElem>) -> Result<Self> {
        if images.len() != source.rank() || !images.iter().all(|g| target.contains(g)) {
            return Err(Error::Group("generator images do not match the groups".into()));
        }
        Ok(GroupHom { target, images })
    }

    /// The map to the trivial group `Z^0`.
    pub fn trivial(source: &Group) -> Self {
        GroupHom {
            target: Group::abelian(0),
            images: vec![GroupElem::Abelian(vec![]); source.rank()],
        }
    }

    /// Abelianization `F(S) -> Z^|S|` (identity on abelian groups).
    pub fn abelianization(source: &Group) -> Self {
        let r = source.rank();
        let target = Group::abelian(r);
        let images = (0..r).map(|i| target.generator(i)).collect();
        GroupHom { target, images }
    }

    pub fn apply(&self, g: &GroupElem) -> Result<GroupElem> {
        let mut acc = self.target.identity();
        match g {
            GroupElem::Free(w) => {
                for &(gen, e) in w.runs() {
                    let img = self.images.get(gen).ok_or(Error::ProfileMismatch)?;
                    let p = pow_elem(img, e)?;
                    acc = acc.mul(&p)?;
                }
            }
            GroupElem::Abelian(v) => {
                if v.len() != self.images.len() {
                    return Err(Error::ProfileMismatch);
                }
                for (i, &e) in v.iter().enumerate() {
                    acc = acc.mul(&pow_elem(&self.images[i], e)?)?;
                }
            }
        }
        Ok(acc)
    }
}

fn pow_elem(g: &GroupElem, e: i64) -> Result<GroupElem> {
    Ok(match g {
        GroupElem::Free(w) => GroupElem::Free(w.pow(e)),
        GroupElem::Abelian(v) => GroupElem::Abelian(v.iter().map(|x| x * e).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv() -> Group {
        Group::free(["u", "v"]).unwrap()
    }

    #[test]
    fn free_group_axioms() {
        let g = uv();
        let u = g.parse_elem("u").unwrap();
        let v = g.parse_elem("v").unwrap();
        assert!(u.mul(&u.inv()).unwrap().is_identity());
        let uv = u.mul(&v).unwrap();
        assert_eq!(uv.mul(&v.inv()).unwrap(), u);
    }

    #[test]
    fn abelian_addition() {
        let a = GroupElem::Abelian(vec![1, 0]);
        let b = GroupElem::Abelian(vec![0, 2]);
        assert_eq!(a.mul(&b).unwrap(), GroupElem::Abelian(vec![1, 2]));
        assert_eq!(a.mul(&GroupElem::Free(Word::identity())), Err(Error::ProfileMismatch));
    }

    #[test]
    fn s_length_examples() {
        let g = uv();
        assert_eq!(g.identity().s_length().unwrap(), 0);
        assert_eq!(g.parse_elem("u v u^-1").unwrap().s_length().unwrap(), 3);
        assert_eq!(g.parse_elem("u^3").unwrap().s_length().unwrap(), 3);
        assert!(GroupElem::Abelian(vec![1, -2]).s_length().is_err());
        assert_eq!(GroupElem::Abelian(vec![1, -2]).l1_norm(), 3);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let g = uv();
        let e = g.parse_elem("u v^-1 u^2").unwrap();
        assert_eq!(g.format_elem(&e), "u v^-1 u^2");
        assert_eq!(g.parse_elem(&g.format_elem(&e)).unwrap(), e);
        assert!(g.parse_elem("w").is_err());
        let z2 = Group::abelian(2);
        assert_eq!(z2.parse_elem("0 -1").unwrap(), GroupElem::Abelian(vec![0, -1]));
    }

    #[test]
    fn homomorphism_to_z() {
        let g = uv();
        let phi = GroupHom::new(
            &g,
            Group::abelian(1),
            vec![GroupElem::Abelian(vec![0]), GroupElem::Abelian(vec![1])],
        )
        .unwrap();
        let x = g.parse_elem("v u v^-1 v^3").unwrap();
        assert_eq!(phi.apply(&x).unwrap(), GroupElem::Abelian(vec![3]));
    }
}
