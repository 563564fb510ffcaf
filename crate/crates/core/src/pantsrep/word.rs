use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A letter of the free group `F<a, b>`; uppercase is the inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    pub fn inverse(self) -> Self {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    /// 0 for `a`, 1 for `b`.
    pub fn generator(self) -> usize {
        match self {
            Letter::A | Letter::AInv => 0,
            Letter::B | Letter::BInv => 1,
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Letter::AInv | Letter::BInv)
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::AInv),
            'b' => Some(Letter::B),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }
}

/// A freely reduced word in `a = γ₁`, `b = γ₂`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn a() -> Self {
        Self::from_letters([Letter::A])
    }

    pub fn b() -> Self {
        Self::from_letters([Letter::B])
    }

    /// Freely reduces the input.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    /// Parses `a b A B` (uppercase = inverse); whitespace is ignored, so
    /// `"aB"` and `"a B"` are the same word. Positions in errors are 0-based
    /// character offsets.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (position, token) in s.chars().enumerate() {
            if token.is_whitespace() {
                continue;
            }
            letters.push(Letter::from_char(token).ok_or(Error::MalformedWord { position, token })?);
        }
        Ok(Self::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let reps = n.unsigned_abs() as usize;
        Self::from_letters(base.letters.iter().copied().cycle().take(base.len() * reps))
    }

    /// `w · self · w⁻¹`.
    pub fn conjugate_by(&self, w: &Self) -> Self {
        w.mul(self).mul(&w.inverse())
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Strips matching inverse pairs from the two ends.
    pub fn cyclic_reduction(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Self {
            letters: l[i..j].to_vec(),
        }
    }

    /// Exponent sums `[#a - #A, #b - #B]`: the image in `H_1 = Z²`.
    pub fn exponent_sums(&self) -> [i64; 2] {
        let mut s = [0i64; 2];
        for l in &self.letters {
            s[l.generator()] += if l.is_inverse() { -1 } else { 1 };
        }
        s
    }

    /// Uniform freely reduced word of the given length.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::ALL[rng.gen_range(0..4)];
            if letters.last() != Some(&l.inverse()) {
                letters.push(l);
            }
        }
        Self { letters }
    }

    /// Every freely reduced word of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<Self> {
        let mut out = vec![Self::empty()];
        let mut layer = vec![Self::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in Letter::ALL {
                    if w.letters.last() != Some(&l.inverse()) {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        next.push(Self { letters });
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// True iff the cyclic reduction is, up to inversion, a nonzero power of
/// `a`, `b` or `ab`: the classes of the three boundary curves of the pair
/// of pants, which are its only simple closed curves.
pub fn is_simple(w: &GroupWord) -> bool {
    let u = w.cyclic_reduction();
    let l = u.letters();
    if l.is_empty() {
        return false;
    }
    if l.iter().all(|&x| x == l[0]) {
        return true;
    }
    // A cyclic rotation of (ab)^n or (BA)^n: generators alternate, all
    // letters share a sign, and the length is even.
    let sign = l[0].is_inverse();
    l.len().is_multiple_of(2)
        && l.iter().all(|x| x.is_inverse() == sign)
        && l.windows(2).all(|p| p[0].generator() != p[1].generator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn parsing_and_reduction() {
        assert_eq!(w("a b A B").to_string(), "abAB");
        assert_eq!(w("aA"), GroupWord::empty());
        assert_eq!(w("ab B A b"), GroupWord::b());
        assert_eq!(w("").to_string(), "1");
        assert_eq!(
            GroupWord::parse("a b x"),
            Err(Error::MalformedWord {
                position: 4,
                token: 'x'
            })
        );
        assert!(matches!(
            GroupWord::parse("ac"),
            Err(Error::MalformedWord {
                position: 1,
                token: 'c'
            })
        ));
    }

    #[test]
    fn word_algebra() {
        let u = w("aB");
        assert_eq!(u.pow(3).to_string(), "aBaBaB");
        assert_eq!(u.pow(-2).to_string(), "bAbA");
        assert_eq!(u.pow(0), GroupWord::empty());
        assert_eq!(u.mul(&u.inverse()), GroupWord::empty());
        assert_eq!(w("a").conjugate_by(&w("b")).to_string(), "baB");
        assert_eq!(w("baB").cyclic_reduction(), w("a"));
        assert_eq!(w("abAB").exponent_sums(), [0, 0]);
        assert_eq!(w("aab").exponent_sums(), [2, 1]);
        assert_eq!(GroupWord::commutator(&w("a"), &w("b")), w("abAB"));
    }

    #[test]
    fn enumerates_reduced_words() {
        let all = GroupWord::all_up_to(3);
        assert_eq!(all.len(), 1 + 4 + 12 + 36);
        assert!(all
            .iter()
            .all(|x| GroupWord::from_letters(x.letters().to_vec()) == *x));
    }

    #[test]
    fn simple_classes() {
        assert!(is_simple(&w("a")));
        assert!(!is_simple(&w("aB")));
        assert!(is_simple(&w("ba")));
        assert!(is_simple(&w("AB")));
        assert!(is_simple(&w("bbb")));
        assert!(is_simple(&w("ababab")));
        assert!(is_simple(&w("babA").conjugate_by(&w("Ab"))) == is_simple(&w("babA")));
        assert!(!is_simple(&GroupWord::empty()));
        assert!(!is_simple(&w("aab")));
        assert!(!is_simple(&w("abAB")));
        assert!(!is_simple(&w("aBA")) || is_simple(&w("B")));
    }

    fn arb_word() -> impl Strategy<Value = GroupWord> {
        prop::collection::vec(0..4usize, 0..12)
            .prop_map(|v| GroupWord::from_letters(v.into_iter().map(|i| Letter::ALL[i])))
    }

    proptest! {
        #[test]
        fn simplicity_is_a_conjugacy_and_inversion_invariant(u in arb_word(), c in arb_word()) {
            let s = is_simple(&u);
            prop_assert_eq!(is_simple(&u.inverse()), s);
            prop_assert_eq!(is_simple(&u.conjugate_by(&c)), s);
            // cyclic permutation
            if !u.is_empty() {
                let l = u.letters();
                let rotated = GroupWord::from_letters(l[1..].iter().chain(&l[..1]).copied());
                prop_assert_eq!(is_simple(&rotated), s);
            }
        }

        #[test]
        fn display_parse_round_trip(u in arb_word()) {
            let text = if u.is_empty() { String::new() } else { u.to_string() };
            prop_assert_eq!(GroupWord::parse(&text).unwrap(), u);
        }
    }
}
