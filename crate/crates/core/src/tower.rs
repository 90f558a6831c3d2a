//! The descending tower `G = G_0 ⊃ G_1 ⊃ G_2 ⊃ ⋯` of a free group.
//!
//! `G_i` is the kernel of `G_{i-1} -> Z` sending a chosen free generator
//! `a_i ∈ S_{i-1}` to 1 and every other generator of `S_{i-1}` to 0. With
//! transversal `{a_i^j}` its free basis is
//! `S_i = { a_i^j x a_i^{-j} : x ∈ S_{i-1} \ {a_i}, j ∈ Z }`, which is
//! infinite, so generators are kept symbolically and expanded on demand.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElem, Word};

/// A generator of `S_k`: `a_k^{j_k} ⋯ (a_1^{j_1} x a_1^{-j_1}) ⋯ a_k^{-j_k}`
/// for a base generator `x` and conjugation exponents `[j_1, …, j_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SGen {
    pub base: usize,
    pub exps: Vec<i64>,
}

impl SGen {
    pub fn level(&self) -> usize {
        self.exps.len()
    }

    fn prefix(&self, level: usize) -> SGen {
        SGen {
            base: self.base,
            exps: self.exps[..level].to_vec(),
        }
    }
}

/// A word in some `S_k`, as runs of `(generator, exponent)`.
pub type StageWord = Vec<(SGen, i64)>;

fn push_run(out: &mut StageWord, g: SGen, e: i64) {
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

/// Result of rewriting `g = g_s · a_s^{r_s} ⋯ a_1^{r_1}` with `g_s ∈ G_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    /// `g_s` as a word in `S_s`.
    pub word: StageWord,
    /// `[r_1, …, r_s]`.
    pub exponents: Vec<i64>,
}

/// The chosen elements `a_1, a_2, …` of a free group's tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    names: Vec<String>,
    chosen: Vec<SGen>,
}

/// Bound on the conjugation exponents of materialized generators.
pub const MATERIALIZE_BOUND: i64 = 2;

impl Tower {
    /// An empty tower (stage 0 only) over a free group.
    pub fn new(group: &Group) -> Result<Self> {
        match group {
            Group::Free { names } => Ok(Tower {
                names: names.clone(),
                chosen: Vec::new(),
            }),
            Group::Abelian { .. } => Err(Error::Group("the tower needs a free group".into())),
        }
    }

    /// A tower whose `a_i` are the given words; each must be a generator of
    /// the previous stage.
    pub fn with_choices(group: &Group, choices: &[Word]) -> Result<Self> {
        let mut t = Self::new(group)?;
        for w in choices {
            t.push_choice(w)?;
        }
        Ok(t)
    }

    fn push_choice(&mut self, w: &Word) -> Result<()> {
        let s = self.chosen.len();
        let rw = self.rewrite(w, s);
        match rw.word.as_slice() {
            [(g, 1)] if rw.exponents.iter().all(|&r| r == 0) => {
                self.chosen.push(g.clone());
                Ok(())
            }
            _ => Err(Error::Group(format!(
                "{} is not a free generator of stage {s}",
                w.display(&self.names)
            ))),
        }
    }

    /// Chooses `a_{i+1}` automatically: least S-length among materialized
    /// generators of the current last stage, ties broken by name.
    pub fn extend_auto(&mut self) -> Result<()> {
        let s = self.chosen.len();
        let best = self
            .materialize(s)
            .into_iter()
            .map(|g| {
                let w = self.expand_gen(&g);
                let name = w.display(&self.names).to_string();
                (w.length(), name, g)
            })
            .min()
            .ok_or_else(|| Error::Group(format!("stage {s} is trivial")))?;
        self.chosen.push(best.2);
        Ok(())
    }

    /// Tower with `stages` automatic choices.
    pub fn auto(group: &Group, stages: usize) -> Result<Self> {
        let mut t = Self::new(group)?;
        for _ in 0..stages {
            t.extend_auto()?;
        }
        Ok(t)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn depth(&self) -> usize {
        self.chosen.len()
    }

    /// `a_i` for `i ≥ 1`, as a generator of `S_{i-1}`.
    pub fn chosen(&self, i: usize) -> &SGen {
        &self.chosen[i - 1]
    }

    /// `a_i` as a word in the original generators.
    pub fn chosen_word(&self, i: usize) -> Word {
        self.expand_gen(&self.chosen[i - 1])
    }

    /// Whether `g` (of any level `k ≤ depth`) is a legal generator of `S_k`.
    pub fn is_generator(&self, g: &SGen) -> bool {
        g.base < self.names.len() && g.level() <= self.depth() && (0..g.level()).all(|l| g.prefix(l) != self.chosen[l])
    }

    pub fn expand_gen(&self, g: &SGen) -> Word {
        let mut w = Word::generator(g.base);
        for (l, &j) in g.exps.iter().enumerate() {
            if j != 0 {
                let a = self.expand_gen(&self.chosen[l]).pow(j);
                w = a.mul(&w).mul(&a.inv());
            }
        }
        w
    }

    pub fn expand_word(&self, w: &StageWord) -> Word {
        w.iter()
            .fold(Word::identity(), |acc, (g, e)| acc.mul(&self.expand_gen(g).pow(*e)))
    }

    /// `g_s · a_s^{r_s} ⋯ a_1^{r_1}` as a word in the original generators.
    pub fn expand(&self, rw: &Rewrite) -> Word {
        let mut w = self.expand_word(&rw.word);
        for (i, &r) in rw.exponents.iter().enumerate().rev() {
            w = w.mul(&self.chosen_word(i + 1).pow(r));
        }
        w
    }

    /// Rewrites `g` as `g_s · a_s^{r_s} ⋯ a_1^{r_1}` by pushing the powers
    /// of each `a_i` to the right: a letter `x` preceded by `a_i^p` becomes
    /// the generator `a_i^p x a_i^{-p}` of the next stage.
    pub fn rewrite(&self, g: &Word, s: usize) -> Rewrite {
        assert!(s <= self.depth(), "stage {s} not chosen yet");
        let mut word: StageWord = Vec::new();
        for &(x, e) in g.runs() {
            push_run(&mut word, SGen { base: x, exps: vec![] }, e);
        }
        let mut exponents = Vec::with_capacity(s);
        for i in 0..s {
            let a = &self.chosen[i];
            let mut p = 0i64;
            let mut next: StageWord = Vec::new();
            for (y, e) in word {
                if &y == a {
                    p += e;
                } else {
                    let mut exps = y.exps.clone();
                    exps.push(p);
                    push_run(&mut next, SGen { base: y.base, exps }, e);
                }
            }
            exponents.push(p);
            word = next;
        }
        Rewrite { word, exponents }
    }

    /// As [`Tower::rewrite`], but requires `g_s` to be trivial.
    pub fn rewrite_full(&self, g: &Word, s: usize) -> Result<Rewrite> {
        let rw = self.rewrite(g, s);
        if rw.word.is_empty() {
            Ok(rw)
        } else {
            Err(Error::InsufficientStage(self.format_stage_word(&rw.word)))
        }
    }

    /// The map `G_{i-1} -> Z` with `a_i ↦ 1` and the other generators of
    /// `S_{i-1}` to 0; errors outside `G_{i-1}`.
    pub fn quotient_eval(&self, g: &Word, i: usize) -> Result<i64> {
        let rw = self.rewrite(g, i);
        if rw.exponents[..i - 1].iter().any(|&r| r != 0) {
            return Err(Error::Group(format!(
                "{} is not in G_{}",
                g.display(&self.names),
                i - 1
            )));
        }
        Ok(rw.exponents[i - 1])
    }

    /// Coset key of `hG_s`: the exponents `(k_1, …, k_s)` with
    /// `h ∈ a_1^{k_1} ⋯ a_s^{k_s} G_s`.
    pub fn coset_key(&self, h: &Word, s: usize) -> Vec<i64> {
        self.rewrite(&h.inv(), s).exponents.iter().map(|r| -r).collect()
    }

    /// The coset representative `a_1^{k_1} ⋯ a_s^{k_s}`.
    pub fn coset_rep(&self, key: &[i64]) -> Word {
        key.iter().enumerate().fold(Word::identity(), |acc, (i, &k)| {
            acc.mul(&self.chosen_word(i + 1).pow(k))
        })
    }

    /// Generators of `S_s` with conjugation exponents in
    /// `[-MATERIALIZE_BOUND, MATERIALIZE_BOUND]`.
    pub fn materialize(&self, s: usize) -> Vec<SGen> {
        let mut level: Vec<SGen> = (0..self.names.len()).map(|b| SGen { base: b, exps: vec![] }).collect();
        for l in 0..s {
            let a = &self.chosen[l];
            let mut next = Vec::new();
            for g in level.iter().filter(|g| *g != a) {
                for j in -MATERIALIZE_BOUND..=MATERIALIZE_BOUND {
                    let mut exps = g.exps.clone();
                    exps.push(j);
                    next.push(SGen { base: g.base, exps });
                }
            }
            level = next;
        }
        level
    }

    /// Least stage `m` whose materialized generators all have S-length at
    /// least `r`, extending the tower automatically when needed. A trivial
    /// stage satisfies every bound.
    pub fn stage_for_length(&mut self, r: u64) -> usize {
        let mut m = 0;
        loop {
            let gens = self.materialize(m);
            if gens.iter().all(|g| self.expand_gen(g).length() >= r) {
                return m;
            }
            if m == self.depth() && self.extend_auto().is_err() {
                return m;
            }
            m += 1;
        }
    }

    pub fn format_gen(&self, g: &SGen) -> String {
        self.expand_gen(g).display(&self.names).to_string()
    }

    pub fn format_stage_word(&self, w: &StageWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|(g, e)| {
                if *e == 1 {
                    format!("({})", self.format_gen(g))
                } else {
                    format!("({})^{e}", self.format_gen(g))
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn word_of(&self, g: &GroupElem) -> Result<Word> {
        g.as_word().cloned().ok_or(Error::ProfileMismatch)
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.depth() {
            if i > 1 {
                write!(f, ", ")?;
            }
            write!(f, "a{i} = {}", self.chosen_word(i).display(&self.names))?;
        }
        Ok(())
    }
}
