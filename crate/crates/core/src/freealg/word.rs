use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::FreeError;
use crate::polyrat::{MultiIndex, Q, Weight};

/// A monomial `f_{w_1} f_{w_2} ... f_{w_n}` of the free algebra, stored in
/// left-to-right product order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(SmallVec<[u32; 8]>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = u32>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(i: u32) -> Self {
        Word::new([i])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn content(&self, rank: usize) -> Result<Weight, FreeError> {
        let mut parts = alloc::vec![0; rank];
        for &i in &self.0 {
            if i == 0 || i as usize > rank {
                return Err(FreeError::LetterOutOfRange { letter: i, rank });
            }
            parts[i as usize - 1] += 1;
        }
        Weight::new(parts).map_err(FreeError::Poly)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// The multi-index `J` whose monomial `f_{J(n)} ... f_{J(1)}` is this word.
    pub fn to_multi_index(&self) -> MultiIndex {
        MultiIndex::from_word(&self.0)
    }

    pub fn from_multi_index(j: &MultiIndex) -> Word {
        Word::new(j.to_word())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = FreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| FreeError::BadWord(s.into())))
            .collect::<Result<SmallVec<_>, _>>()
            .map(Word)
    }
}

/// All words with the given content, in lexicographic order.
pub fn words_with_content(k: &Weight) -> Vec<Word> {
    MultiIndex::all_with_content(k).into_iter().map(|j| Word::new(j.colors().iter().copied())).collect()
}

/// A finite rational combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeElement {
    terms: BTreeMap<Word, Q>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Q::one())
    }

    pub fn generator(i: u32) -> Self {
        Self::word(Word::letter(i))
    }

    pub fn term(w: Word, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElement, factor: &Q) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn neg(&self) -> FreeElement {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, factor: &Q) -> FreeElement {
        let mut out = FreeElement::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> FreeElement {
        (0..n).fold(FreeElement::one(), |acc, _| acc.mul(self))
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &FreeElement) -> FreeElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// The common content of all words, or `None` if the element is zero or
    /// inhomogeneous.
    pub fn content(&self, rank: usize) -> Result<Option<Weight>, FreeError> {
        let mut found: Option<Weight> = None;
        for w in self.terms.keys() {
            let c = w.content(rank)?;
            match &found {
                Some(prev) if *prev != c => return Ok(None),
                _ => found = Some(c),
            }
        }
        Ok(found)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() || w.is_empty() {
                write!(f, "{magnitude}")?;
                if !w.is_empty() {
                    f.write_str(" ")?;
                }
            }
            for i in w.letters() {
                write!(f, "f{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_multi_index_are_reversed() {
        let w = Word::new([1, 1, 2]);
        assert_eq!(w.to_multi_index().colors(), &[2, 1, 1]);
        assert_eq!(Word::from_multi_index(&w.to_multi_index()), w);
        assert_eq!("1,1,2".parse::<Word>().unwrap(), w);
        assert_eq!(w.to_string(), "1,1,2");
    }

    #[test]
    fn arithmetic_and_display() {
        let (a, b) = (FreeElement::generator(2), FreeElement::generator(1));
        let c = a.commutator(&b);
        assert_eq!(c.to_string(), "-f1f2 + f2f1");
        assert!(c.add(&b.commutator(&a)).is_zero());
        assert_eq!(c.content(2).unwrap(), Some(Weight::new(alloc::vec![1, 1]).unwrap()));
        assert_eq!(a.add(&c).content(2).unwrap(), None);
    }

    #[test]
    fn content_enumeration() {
        let k = Weight::new(alloc::vec![2, 1]).unwrap();
        let ws = words_with_content(&k);
        assert_eq!(ws.len(), 3);
        assert_eq!(ws[0], Word::new([1, 1, 2]));
    }
}
