//! Permutations of `[n]` in one-line notation.
//!
//! Symbols are `1..=n` at the interface; composition follows
//! `(sigma ∘ tau)(i) = sigma(tau(i))`, and every graph in this crate acts on
//! the right: a generator `s` moves `v` to `v ∘ s`, which permutes positions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order whose factorial still fits the dense `u64` rank.
pub const MAX_ORDER: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// One element of the connection set `Ω* = {(12), (123), (132)} ∪ {(12)(3i) : 4 ≤ i ≤ n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Swap12,
    Cycle123,
    Cycle132,
    /// `(12)(3i)`, valid for `4 ≤ i ≤ n`.
    DoubleSwap(u8),
}

impl Generator {
    /// All of `Ω*` for order `n`, in a fixed order: `(12)`, `(123)`, `(132)`, `(12)(34)`, ...
    pub fn godan_set(n: usize) -> Vec<Generator> {
        let mut gens = vec![Generator::Swap12, Generator::Cycle123, Generator::Cycle132];
        gens.extend((4..=n).map(|i| Generator::DoubleSwap(i as u8)));
        gens
    }

    /// `Ω`, the parity-preserving part of `Ω*`.
    pub fn alternating_set(n: usize) -> Vec<Generator> {
        Self::godan_set(n).into_iter().filter(|g| *g != Generator::Swap12).collect()
    }

    pub fn validate(self, n: usize) -> Result<()> {
        match self {
            Generator::DoubleSwap(i) if (i as usize) < 4 || i as usize > n => {
                Err(Error::GeneratorOutOfRange { index: i as usize, n })
            }
            _ => Ok(()),
        }
    }

    /// Position of this generator in [`Generator::godan_set`].
    pub fn index(self) -> usize {
        match self {
            Generator::Swap12 => 0,
            Generator::Cycle123 => 1,
            Generator::Cycle132 => 2,
            Generator::DoubleSwap(i) => i as usize - 1,
        }
    }

    pub fn to_permutation(self, n: usize) -> Result<Permutation> {
        self.validate(n)?;
        let mut image: Vec<u8> = (1..=n as u8).collect();
        match self {
            Generator::Swap12 => image.swap(0, 1),
            Generator::Cycle123 => {
                image[0] = 2;
                image[1] = 3;
                image[2] = 1;
            }
            Generator::Cycle132 => {
                image[0] = 3;
                image[1] = 1;
                image[2] = 2;
            }
            Generator::DoubleSwap(i) => {
                image.swap(0, 1);
                image.swap(2, i as usize - 1);
            }
        }
        Ok(Permutation { image })
    }

    /// Involutions are their own inverse; the two 3-cycles swap.
    pub fn inverse(self) -> Generator {
        match self {
            Generator::Cycle123 => Generator::Cycle132,
            Generator::Cycle132 => Generator::Cycle123,
            g => g,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Swap12 => write!(f, "(12)"),
            Generator::Cycle123 => write!(f, "(123)"),
            Generator::Cycle132 => write!(f, "(132)"),
            Generator::DoubleSwap(i) => write!(f, "(12)(3{i})"),
        }
    }
}

impl Permutation {
    /// Builds a permutation from its one-line image (symbols `1..=n`).
    pub fn new(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidPermutation(format!("order {n} out of range")));
        }
        let mut seen = vec![false; n + 1];
        for &s in &image {
            let s = s as usize;
            if s == 0 || s > n || seen[s] {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection of 1..={n}")));
            }
            seen[s] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (1..=n as u8).collect() }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    /// The symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.image[i - 1]
    }

    /// `result(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::OrderMismatch { left: self.n(), right: other.n() });
        }
        let image = other.image.iter().map(|&t| self.image[t as usize - 1]).collect();
        Ok(Permutation { image })
    }

    /// Right multiplication `self ∘ g`.
    pub fn apply_generator(&self, g: Generator) -> Result<Permutation> {
        g.validate(self.n())?;
        let mut image = self.image.clone();
        apply_in_place(&mut image, g);
        Ok(Permutation { image })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (pos, &s) in self.image.iter().enumerate() {
            image[s as usize - 1] = pos as u8 + 1;
        }
        Permutation { image }
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.image.len() {
            for j in i + 1..self.image.len() {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn parity(&self) -> Parity {
        if self.inversions().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Lexicographic rank among all `n!` one-line notations.
    pub fn rank(&self) -> u64 {
        rank_image(&self.image)
    }

    pub fn unrank(n: usize, rank: u64) -> Result<Permutation> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidPermutation(format!("order {n} out of range")));
        }
        let total = factorial(n);
        if rank >= total {
            return Err(Error::RankOutOfRange { rank, n });
        }
        let mut image = vec![0u8; n];
        unrank_into(n, rank, &mut image);
        Ok(Permutation { image })
    }
}

pub(crate) fn apply_in_place(image: &mut [u8], g: Generator) {
    match g {
        Generator::Swap12 => image.swap(0, 1),
        Generator::Cycle123 => image[..3].rotate_left(1),
        Generator::Cycle132 => image[..3].rotate_right(1),
        Generator::DoubleSwap(i) => {
            image.swap(0, 1);
            image.swap(2, i as usize - 1);
        }
    }
}

pub(crate) fn rank_image(image: &[u8]) -> u64 {
    let n = image.len();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller_later = image[i + 1..].iter().filter(|&&s| s < image[i]).count() as u64;
        rank += smaller_later * factorial(n - 1 - i);
    }
    rank
}

pub(crate) fn unrank_into(n: usize, mut rank: u64, image: &mut [u8]) {
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    for (i, slot) in image.iter_mut().enumerate() {
        let f = factorial(n - 1 - i);
        let idx = (rank / f) as usize;
        rank %= f;
        *slot = pool.remove(idx);
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() >= 10 {
            let parts: Vec<String> = self.image.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        } else {
            for s in &self.image {
                write!(f, "{s}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts the bare form `2143` and the comma form `2,1,4,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse {s:?}"));
        let image: Vec<u8> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).filter(|&d| d > 0).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(image)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_identity_laws() {
        let v = p("2143");
        assert_eq!(Permutation::identity(4).compose(&v).unwrap(), v);
        assert_eq!(v.compose(&Permutation::identity(4)).unwrap(), v);
    }

    #[test]
    fn compose_follows_sigma_of_tau() {
        // sigma = 213, tau = 231: 1 -> sigma(2) = 1, 2 -> sigma(3) = 3, 3 -> sigma(1) = 2
        assert_eq!(p("213").compose(&p("231")).unwrap(), p("132"));
    }

    #[test]
    fn compose_rejects_mismatched_orders() {
        assert!(matches!(
            p("123").compose(&p("1234")),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn generators_act_on_positions() {
        assert_eq!(p("1234").apply_generator(Generator::Swap12).unwrap(), p("2134"));
        assert_eq!(p("123").apply_generator(Generator::Cycle123).unwrap(), p("231"));
        assert_eq!(p("123").apply_generator(Generator::Cycle132).unwrap(), p("312"));
        assert_eq!(p("1234").apply_generator(Generator::DoubleSwap(4)).unwrap(), p("2143"));
    }

    #[test]
    fn generator_application_matches_composition() {
        let v = p("35142");
        for g in Generator::godan_set(5) {
            let via_compose = v.compose(&g.to_permutation(5).unwrap()).unwrap();
            assert_eq!(v.apply_generator(g).unwrap(), via_compose, "{g}");
        }
    }

    #[test]
    fn double_swap_index_is_checked() {
        assert!(p("1234").apply_generator(Generator::DoubleSwap(5)).is_err());
        assert!(p("1234").apply_generator(Generator::DoubleSwap(3)).is_err());
    }

    #[test]
    fn parity_by_inversions() {
        assert_eq!(Permutation::identity(5).parity(), Parity::Even);
        assert_eq!(p("213").parity(), Parity::Odd);
        assert_eq!(p("231").parity(), Parity::Even);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(p("231").inverse(), p("312"));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(p("123").rank(), 0);
        assert_eq!(p("213").rank(), 2);
        assert_eq!(Permutation::unrank(3, 5).unwrap(), p("321"));
        assert!(matches!(Permutation::unrank(3, 6), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn rank_roundtrip_exhaustive_up_to_six() {
        for n in 1..=6 {
            let mut previous: Option<Permutation> = None;
            for r in 0..factorial(n) {
                let v = Permutation::unrank(n, r).unwrap();
                assert_eq!(v.rank(), r);
                if let Some(prev) = &previous {
                    assert!(prev < &v, "lexicographic order broken at rank {r}");
                }
                previous = Some(v);
            }
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("2,1,4,3"), p("2143"));
        let big = Permutation::identity(10);
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1134".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!("0123".parse::<Permutation>().is_err());
    }
}
