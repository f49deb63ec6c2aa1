//! Formal diagram words and their linear combinations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Poly;
use crate::statespace::{PolyMatrix, Prim};

/// A stack of slices read bottom to top. Each slice is a horizontal tensor of
/// primitives; slices consisting only of identities are dropped, so a word
/// with no slices is the identity on `source` strands.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DiagramWord {
    source: usize,
    slices: Vec<Vec<Prim>>,
}

fn slice_arity(slice: &[Prim]) -> (usize, usize) {
    slice.iter().fold((0, 0), |(a, b), p| {
        let (x, y) = p.arity();
        (a + x, b + y)
    })
}

impl DiagramWord {
    pub fn identity(n: usize) -> Self {
        DiagramWord {
            source: n,
            slices: Vec::new(),
        }
    }

    /// Simplest word with the given arity: identities followed by cups or caps.
    pub fn canonical(source: usize, target: usize) -> Self {
        let (lo, hi) = (source.min(target), source.max(target));
        let extra = (hi - lo) / 2;
        let p = if target > source { Prim::Cup } else { Prim::Cap };
        let mut slice = vec![Prim::Id; lo];
        slice.extend(std::iter::repeat_n(p, extra));
        DiagramWord::from_slices(source, vec![slice]).expect("arity")
    }

    pub fn prim(p: Prim) -> Self {
        DiagramWord::from_slices(p.arity().0, vec![vec![p]]).expect("single primitive")
    }

    /// Checks that consecutive slices compose. The error carries the index of
    /// the first offending slice.
    pub fn from_slices(source: usize, slices: Vec<Vec<Prim>>) -> Result<Self> {
        let mut width = source;
        for (i, s) in slices.iter().enumerate() {
            let (a, b) = slice_arity(s);
            if a != width {
                return Err(Error::StrandMismatch {
                    slice: i,
                    expected: width,
                    found: a,
                });
            }
            width = b;
        }
        let slices = slices
            .into_iter()
            .filter(|s| s.iter().any(|p| *p != Prim::Id))
            .collect();
        Ok(DiagramWord { source, slices })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.slices
            .last()
            .map(|s| slice_arity(s).1)
            .unwrap_or(self.source)
    }

    pub fn slices(&self) -> &[Vec<Prim>] {
        &self.slices
    }

    pub fn is_identity(&self) -> bool {
        self.slices.is_empty()
    }

    /// Number of non-identity primitive occurrences.
    pub fn len(&self) -> usize {
        self.slices
            .iter()
            .map(|s| s.iter().filter(|p| **p != Prim::Id).count())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dots(&self) -> usize {
        self.slices
            .iter()
            .flatten()
            .filter(|p| **p == Prim::Dot)
            .count()
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &DiagramWord) -> Result<DiagramWord> {
        if self.target() != next.source {
            return Err(Error::StrandMismatch {
                slice: self.slices.len(),
                expected: self.target(),
                found: next.source,
            });
        }
        let mut slices = self.slices.clone();
        slices.extend(next.slices.iter().cloned());
        Ok(DiagramWord {
            source: self.source,
            slices,
        })
    }

    /// Places `self` to the left of `right`, padding the shorter stack with
    /// identities.
    pub fn tensor(&self, right: &DiagramWord) -> DiagramWord {
        let n = self.slices.len().max(right.slices.len());
        let mut slices = Vec::with_capacity(n);
        let (mut wl, mut wr) = (self.source, right.source);
        for i in 0..n {
            let mut s = match self.slices.get(i) {
                Some(x) => x.clone(),
                None => vec![Prim::Id; wl],
            };
            match right.slices.get(i) {
                Some(x) => s.extend(x.iter().copied()),
                None => s.extend(std::iter::repeat_n(Prim::Id, wr)),
            }
            if let Some(x) = self.slices.get(i) {
                wl = slice_arity(x).1;
            }
            if let Some(x) = right.slices.get(i) {
                wr = slice_arity(x).1;
            }
            slices.push(s);
        }
        DiagramWord {
            source: self.source + right.source,
            slices,
        }
    }

    /// Wraps with `left` and `right` identity strands.
    pub fn embed(&self, left: usize, right: usize) -> DiagramWord {
        DiagramWord::identity(left)
            .tensor(self)
            .tensor(&DiagramWord::identity(right))
    }

    /// Replaces the primitive at `(slice, pos)` (an index into the slice's
    /// primitive list) by the word `local`. The first slice of `local` takes
    /// its place; later slices of `local` are spliced in above with identity
    /// padding on the surrounding strands.
    pub fn splice(&self, slice: usize, pos: usize, local: &DiagramWord) -> Result<DiagramWord> {
        let s = &self.slices[slice];
        let p = s[pos];
        if local.source != p.arity().0 || local.target() != p.arity().1 {
            return Err(Error::Dimension(format!(
                "replacement for `{}` has arity {}→{}",
                p.name(),
                local.source,
                local.target()
            )));
        }
        let left_in: usize = s[..pos].iter().map(|q| q.arity().1).sum();
        let right_in: usize = s[pos + 1..].iter().map(|q| q.arity().1).sum();
        let mut out: Vec<Vec<Prim>> = self.slices[..slice].to_vec();
        let first = local.slices.first().cloned().unwrap_or_else(|| vec![Prim::Id; local.source]);
        let mut repl = s[..pos].to_vec();
        repl.extend(first);
        repl.extend(s[pos + 1..].iter().copied());
        out.push(repl);
        for ls in local.slices.iter().skip(1) {
            let mut row = vec![Prim::Id; left_in];
            row.extend(ls.iter().copied());
            row.extend(std::iter::repeat_n(Prim::Id, right_in));
            out.push(row);
        }
        out.extend(self.slices[slice + 1..].iter().cloned());
        DiagramWord::from_slices(self.source, out)
    }

    /// Positions of all non-identity primitives.
    pub fn occurrences(&self) -> impl Iterator<Item = (usize, usize, Prim)> + '_ {
        self.slices.iter().enumerate().flat_map(|(i, s)| {
            s.iter()
                .enumerate()
                .filter(|(_, p)| **p != Prim::Id)
                .map(move |(j, p)| (i, j, *p))
        })
    }

    /// Product of the slice matrices.
    pub fn evaluate(&self) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(self.source);
        for s in &self.slices {
            let m = s
                .iter()
                .fold(PolyMatrix::identity(0), |m, p| m.tensor(&p.matrix()));
            acc = m.compose(&acc).expect("slices compose");
        }
        acc
    }
}

impl fmt::Display for DiagramWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slices.is_empty() {
            if self.source == 0 {
                return write!(f, "1");
            }
            let ids = vec!["id"; self.source];
            return write!(f, "{}", ids.join("|"));
        }
        let parts: Vec<String> = self
            .slices
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.iter().map(|p| p.name()).collect();
                if names.is_empty() {
                    "1".to_string()
                } else {
                    names.join("|")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

/// A formal ℚ[E1,E2]-linear combination of words with a common source and target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordComb {
    source: usize,
    target: usize,
    terms: BTreeMap<DiagramWord, Poly>,
}

impl WordComb {
    pub fn zero(source: usize, target: usize) -> Self {
        WordComb {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: DiagramWord) -> Self {
        WordComb::term(Poly::one(), w)
    }

    pub fn term(c: Poly, w: DiagramWord) -> Self {
        let mut out = WordComb::zero(w.source(), w.target());
        out.add_term(c, w);
        out
    }

    pub fn identity(n: usize) -> Self {
        WordComb::word(DiagramWord::identity(n))
    }

    pub fn prim(p: Prim) -> Self {
        WordComb::word(DiagramWord::prim(p))
    }

    pub fn scalar(c: Poly) -> Self {
        WordComb::term(c, DiagramWord::identity(0))
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiagramWord, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Formal zero; a non-empty combination may still evaluate to zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: Poly, w: DiagramWord) {
        debug_assert!(w.source() == self.source && w.target() == self.target);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &WordComb) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Dimension(format!(
                "{}→{} vs {}→{}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &WordComb) -> Result<WordComb> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WordComb) -> Result<WordComb> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WordComb {
        self.scale(&Poly::int(-1))
    }

    pub fn scale(&self, c: &Poly) -> WordComb {
        let mut out = WordComb::zero(self.source, self.target);
        for (w, x) in &self.terms {
            out.add_term(x * c, w.clone());
        }
        out
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &WordComb) -> Result<WordComb> {
        if self.target != next.source {
            return Err(Error::StrandMismatch {
                slice: 1,
                expected: self.target,
                found: next.source,
            });
        }
        let mut out = WordComb::zero(self.source, next.target);
        for (a, x) in &self.terms {
            for (b, y) in &next.terms {
                out.add_term(x * y, a.then(b)?);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, right: &WordComb) -> WordComb {
        let mut out = WordComb::zero(self.source + right.source, self.target + right.target);
        for (a, x) in &self.terms {
            for (b, y) in &right.terms {
                out.add_term(x * y, a.tensor(b));
            }
        }
        out
    }

    pub fn embed(&self, left: usize, right: usize) -> WordComb {
        WordComb::identity(left)
            .tensor(self)
            .tensor(&WordComb::identity(right))
    }

    pub fn evaluate(&self) -> PolyMatrix {
        let mut acc = PolyMatrix::zero(self.source, self.target);
        for (w, c) in &self.terms {
            acc = acc.add(&w.evaluate().scale(c)).expect("same shape");
        }
        acc
    }
}

fn write_sign(f: &mut fmt::Formatter<'_>, negative: bool, first: bool) -> fmt::Result {
    match (first, negative) {
        (true, true) => write!(f, "-"),
        (true, false) => Ok(()),
        (false, true) => write!(f, " - "),
        (false, false) => write!(f, " + "),
    }
}

impl fmt::Display for WordComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return if self.source == 0 && self.target == 0 {
                write!(f, "0")
            } else {
                write!(f, "0*({})", DiagramWord::canonical(self.source, self.target))
            };
        }
        // Higher dot counts first, so `E1*dot - E2*id` reads as usual.
        let mut ordered: Vec<(&DiagramWord, &Poly)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.dots().cmp(&a.0.dots()).then_with(|| a.0.cmp(b.0)));
        for (i, (w, c)) in ordered.into_iter().enumerate() {
            let first = i == 0;
            // A single-term coefficient is printed as sign and magnitude; a
            // longer one is parenthesized.
            let unit = if c.len() == 1 {
                let (m, x) = &c.terms()[0];
                write_sign(f, x.is_negative(), first)?;
                let mag = Poly::term(*m, x.abs());
                let unit = mag.as_constant().map(|k| k.is_one()).unwrap_or(false);
                if w.source() == 0 && w.is_identity() {
                    write!(f, "{mag}")?;
                    continue;
                }
                if !unit {
                    write!(f, "{mag}*")?;
                }
                unit
            } else {
                write_sign(f, false, first)?;
                if w.source() == 0 && w.is_identity() {
                    write!(f, "({c})")?;
                    continue;
                }
                write!(f, "({c})*")?;
                false
            };
            if unit || w.len() <= 1 && !(w.is_identity() && w.source() > 1) {
                write!(f, "{w}")?;
            } else {
                write!(f, "({w})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_pads_with_identities() {
        let cup = DiagramWord::prim(Prim::Cup);
        let dot = DiagramWord::prim(Prim::Dot);
        let w = dot.then(&dot).unwrap().tensor(&cup);
        assert_eq!(w.source(), 1);
        assert_eq!(w.target(), 3);
        assert_eq!(w.slices().len(), 2);
        assert_eq!(w.to_string(), "dot|cup ; dot|id|id");
    }

    #[test]
    fn mismatched_slices_report_index() {
        let err = DiagramWord::from_slices(2, vec![vec![Prim::Cap], vec![Prim::Dot]]).unwrap_err();
        assert_eq!(
            err,
            Error::StrandMismatch {
                slice: 1,
                expected: 0,
                found: 1
            }
        );
    }

    #[test]
    fn splice_multi_slice_image() {
        let cap = DiagramWord::prim(Prim::Cap).embed(0, 1);
        let dotted_cap = DiagramWord::prim(Prim::Dot)
            .tensor(&DiagramWord::identity(1))
            .then(&DiagramWord::prim(Prim::Cap))
            .unwrap();
        let w = cap.splice(0, 0, &dotted_cap).unwrap();
        assert_eq!(w.to_string(), "dot|id|id ; cap|id");
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut c = WordComb::prim(Prim::Dot);
        c.add_term(Poly::int(-1), DiagramWord::prim(Prim::Dot));
        assert!(c.is_zero());
    }

    #[test]
    fn circle_evaluates_to_two() {
        let circle = DiagramWord::prim(Prim::Cup).then(&DiagramWord::prim(Prim::Cap)).unwrap();
        assert_eq!(circle.evaluate(), PolyMatrix::scalar(Poly::int(2)));
    }
}
