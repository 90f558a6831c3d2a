//! Quivers, paths, relations and bound quivers.
//!
//! Paths are stored in traversal order (first arrow first) and printed
//! right-to-left, so the path "c b" means `b` followed by `c`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.vertex(&name).is_some() {
            return Err(Error::InvalidRep(format!("duplicate vertex `{name}`")));
        }
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let name = name.into();
        if self.arrow(&name).is_some() {
            return Err(Error::InvalidRep(format!("duplicate arrow `{name}`")));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("{source} or {target}")));
        }
        self.arrows.push(Arrow { name, source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_info(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All paths of length exactly `len`, in lexicographic order of arrow
    /// sequences.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                for a in self.arrows_from(p.target) {
                    next.push(p.then(a, self));
                }
            }
            layer = next;
        }
        layer
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(".")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrows in traversal order.
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let info = q.arrow_info(a);
        Path {
            source: info.source,
            target: info.target,
            arrows: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Extends the path by one arrow at its target.
    pub fn then(&self, a: usize, q: &Quiver) -> Path {
        let info = q.arrow_info(a);
        debug_assert_eq!(info.source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            source: self.source,
            target: info.target,
            arrows,
        }
    }

    /// `self` followed by `next`; `None` if they do not compose.
    pub fn concat(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// The same arrows read backwards: a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    pub fn contains_subpath(&self, sub: &[usize]) -> bool {
        !sub.is_empty() && self.arrows.windows(sub.len()).any(|w| w == sub)
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<F> {
    terms: Vec<(F, Path)>,
}

impl<F: Field> LinComb<F> {
    /// Merges duplicate paths and drops zero coefficients. Errors on
    /// non-parallel input or an empty result.
    pub fn new(terms: Vec<(F, Path)>, q: &Quiver) -> Result<Self> {
        let mut merged: BTreeMap<Path, F> = BTreeMap::new();
        let mut ends = None;
        for (c, p) in terms {
            match ends {
                None => ends = Some((p.source, p.target)),
                Some(e) if e != (p.source, p.target) => {
                    return Err(Error::NonParallel(q.format_path(&p)));
                }
                _ => {}
            }
            let entry = merged.entry(p).or_insert_with(F::zero);
            *entry = entry.add(&c);
        }
        let terms: Vec<(F, Path)> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (c, p))
            .collect();
        if terms.is_empty() {
            return Err(Error::NotAdmissible("relation is zero".into()));
        }
        Ok(LinComb { terms })
    }

    pub fn monomial(p: Path) -> Self {
        LinComb {
            terms: vec![(F::one(), p)],
        }
    }

    pub fn terms(&self) -> &[(F, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).min().unwrap_or(0)
    }

    pub fn is_length_homogeneous(&self) -> bool {
        self.terms.iter().all(|t| t.1.len() == self.terms[0].1.len())
    }

    pub fn reversed(&self) -> Self {
        LinComb {
            terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect(),
        }
    }

    pub fn format(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                s.push_str(&mag);
                s.push('*');
            }
            s.push_str(&q.format_path(p));
        }
        s
    }
}

/// A quiver with relations. The ideal is generated by the relations, plus
/// every path of length at least `truncation` when one is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuiver<F> {
    pub quiver: Quiver,
    pub relations: Vec<LinComb<F>>,
    pub truncation: Option<usize>,
}

impl<F: Field> BoundQuiver<F> {
    pub fn new(quiver: Quiver, relations: Vec<LinComb<F>>) -> Self {
        BoundQuiver {
            quiver,
            relations,
            truncation: None,
        }
    }

    pub fn opposite(&self) -> Self {
        BoundQuiver {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(LinComb::reversed).collect(),
            truncation: self.truncation,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(LinComb::is_monomial)
    }

    /// Parses the line-based algebra format:
    ///
    /// ```text
    /// vertex 1
    /// arrow a 1 2
    /// relation ba - 2*dc
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut quiver = Quiver::new();
        let mut pending: Vec<(usize, usize, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = line.len() - trimmed.len();
            let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r),
                None => (trimmed.trim_end(), ""),
            };
            let rest_col = indent + keyword.len() + 2;
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match keyword {
                "vertex" => {
                    if fields.len() != 1 {
                        return Err(Error::parse(line_no, rest_col, "expected `vertex <id>`"));
                    }
                    quiver
                        .add_vertex(fields[0])
                        .map_err(|e| Error::parse(line_no, rest_col, e.to_string()))?;
                }
                "arrow" => {
                    if fields.len() != 3 {
                        return Err(Error::parse(line_no, rest_col, "expected `arrow <id> <src> <tgt>`"));
                    }
                    let s = quiver.vertex(fields[1]).ok_or_else(|| {
                        Error::parse(
                            line_no,
                            col_of(line, fields[1]),
                            format!("unknown vertex `{}`", fields[1]),
                        )
                    })?;
                    let t = quiver.vertex(fields[2]).ok_or_else(|| {
                        Error::parse(
                            line_no,
                            col_of(line, fields[2]),
                            format!("unknown vertex `{}`", fields[2]),
                        )
                    })?;
                    quiver
                        .add_arrow(fields[0], s, t)
                        .map_err(|e| Error::parse(line_no, rest_col, e.to_string()))?;
                }
                "relation" => pending.push((line_no, rest_col, rest.to_string())),
                other => return Err(Error::parse(line_no, indent + 1, format!("unknown keyword `{other}`"))),
            }
        }
        let relations = pending
            .into_iter()
            .map(|(line, col, body)| parse_relation(&quiver, &body, line, col))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundQuiver::new(quiver, relations))
    }

    pub fn to_text(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        for v in q.vertex_names() {
            s.push_str(&format!("vertex {v}\n"));
        }
        for a in q.arrows() {
            s.push_str(&format!(
                "arrow {} {} {}\n",
                a.name,
                q.vertex_name(a.source),
                q.vertex_name(a.target)
            ));
        }
        for r in &self.relations {
            s.push_str(&format!("relation {}\n", r.format(q)));
        }
        s
    }
}

fn col_of(line: &str, needle: &str) -> usize {
    line.find(needle).map_or(1, |i| i + 1)
}

/// Parses the body of a `relation` line into a linear combination.
pub fn parse_relation<F: Field>(q: &Quiver, body: &str, line: usize, col0: usize) -> Result<LinComb<F>> {
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i >= chars.len() {
            break;
        }
        let mut sign = F::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = sign.neg();
            }
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
        } else if !first {
            return Err(Error::parse(line, col0 + i, "expected `+` or `-` between terms"));
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '+' && chars[i] != '-' {
            i += 1;
        }
        if start == i {
            return Err(Error::parse(line, col0 + start, "missing term"));
        }
        let tok: String = chars[start..i].iter().collect();
        let (coef, word, word_off) = match tok.split_once('*') {
            Some((c, w)) => {
                let coef =
                    F::parse(c).ok_or_else(|| Error::parse(line, col0 + start, format!("bad coefficient `{c}`")))?;
                (coef, w.to_string(), c.chars().count() + 1)
            }
            None => (F::one(), tok.clone(), 0),
        };
        let path = parse_path_word(q, &word).map_err(|msg| Error::parse(line, col0 + start + word_off, msg))?;
        terms.push((sign.mul(&coef), path));
        first = false;
    }
    if terms.is_empty() {
        return Err(Error::parse(line, col0, "empty relation"));
    }
    LinComb::new(terms, q).map_err(|e| Error::parse(line, col0, e.to_string()))
}

/// Parses `cb` or `c.b` (right-to-left) into a path. Arrow names are
/// matched greedily, longest first.
pub fn parse_path_word(q: &Quiver, word: &str) -> std::result::Result<Path, String> {
    let mut names: Vec<(usize, &str)> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (i, a.name.as_str()))
        .collect();
    names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
    let mut textual = Vec::new();
    let mut rest = word;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('.') {
            rest = r;
            continue;
        }
        let Some(&(a, n)) = names.iter().find(|(_, n)| rest.starts_with(n)) else {
            return Err(format!("unknown arrow in `{rest}`"));
        };
        textual.push(a);
        rest = &rest[n.len()..];
    }
    if textual.is_empty() {
        return Err("empty path".into());
    }
    textual.reverse();
    let mut p = Path::arrow(q, textual[0]);
    for &a in &textual[1..] {
        if q.arrow_info(a).source != p.target {
            return Err(format!("arrows in `{word}` do not compose"));
        }
        p = p.then(a, q);
    }
    Ok(p)
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{:?}", self.source, self.target, self.arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    pub(crate) const EXAMPLE: &str = "\
# five arrows, two zero relations
vertex 1
vertex 2
vertex 3
vertex 4
arrow a 1 2
arrow d 1 3
arrow b 2 3
arrow e 2 4
arrow c 3 4
relation ba
relation cb
";

    #[test]
    fn parses_worked_example() {
        let bq = BoundQuiver::<Rational>::parse(EXAMPLE).unwrap();
        assert_eq!(bq.quiver.vertex_count(), 4);
        assert_eq!(bq.quiver.arrow_count(), 5);
        assert_eq!(bq.relations.len(), 2);
        let ba = &bq.relations[0].terms()[0].1;
        let a = bq.quiver.arrow("a").unwrap();
        let b = bq.quiver.arrow("b").unwrap();
        assert_eq!(ba.arrows, vec![a, b]);
        assert_eq!(bq.relations[0].format(&bq.quiver), "ba");
    }

    #[test]
    fn single_vertex() {
        let bq = BoundQuiver::<Rational>::parse("vertex x\n").unwrap();
        assert_eq!(bq.quiver.vertex_count(), 1);
        assert!(bq.relations.is_empty());
    }

    #[test]
    fn undeclared_arrow_has_location() {
        let err = BoundQuiver::<Rational>::parse("vertex 1\narrow a 1 1\nrelation aq\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 3);
                assert!(col >= 10, "col {col}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let text = EXAMPLE.to_string() + "relation ba + cb\n";
        assert!(matches!(
            BoundQuiver::<Rational>::parse(&text),
            Err(Error::Parse { line: 13, .. })
        ));
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation 2*ba-1/2*dc\n";
        let bq = BoundQuiver::<Rational>::parse(text).unwrap();
        let r = &bq.relations[0];
        assert_eq!(r.terms().len(), 2);
        assert_eq!(r.format(&bq.quiver), "2*ba - 1/2*dc");
        let again = BoundQuiver::<Rational>::parse(&bq.to_text()).unwrap();
        assert_eq!(again, bq);
    }

    #[test]
    fn unknown_vertex_in_arrow() {
        assert!(matches!(
            BoundQuiver::<Rational>::parse("vertex 1\narrow a 1 9\n"),
            Err(Error::Parse { line: 2, col: 11, .. })
        ));
    }

    #[test]
    fn multi_letter_arrows() {
        let text = "vertex x\nvertex y\nvertex z\narrow al x y\narrow be y z\nrelation be.al\n";
        let bq = BoundQuiver::<Rational>::parse(text).unwrap();
        assert_eq!(bq.relations[0].terms()[0].1.arrows, vec![0, 1]);
        assert_eq!(bq.relations[0].format(&bq.quiver), "be.al");
    }
}
