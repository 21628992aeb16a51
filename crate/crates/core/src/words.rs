//! Freely reduced words over indexed generators.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A signed generator `g^sign`, `sign` = ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub gen: usize,
    pub sign: i8,
}

impl Letter {
    pub const fn pos(gen: usize) -> Self {
        Letter { gen, sign: 1 }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, sign: -1 }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    #[inline]
    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }
}

/// An element of a free group, always stored freely reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(gen: usize) -> Self {
        GroupWord(vec![Letter::pos(gen)])
    }

    pub fn letter(l: Letter) -> Self {
        GroupWord(vec![l])
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.0.clone();
        let mut rest = other.0.iter().copied().peekable();
        while let (Some(&t), Some(&l)) = (out.last(), rest.peek()) {
            if t.cancels(l) {
                out.pop();
                rest.next();
            } else {
                break;
            }
        }
        out.extend(rest);
        GroupWord(out)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupWord::empty(), |acc, _| acc.mul(&base))
    }

    /// `χ`: the exponent sum.
    pub fn characteristic(&self) -> i64 {
        self.0.iter().map(|l| i64::from(l.sign)).sum()
    }

    /// Exponent-sum vector over `n` generators.
    pub fn exponent_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.0 {
            v[l.gen] += i64::from(l.sign);
        }
        v
    }

    /// Letterwise image under a generator map, reduced.
    pub fn map_generators(&self, f: &[usize]) -> GroupWord {
        GroupWord::from_letters(self.0.iter().map(|l| Letter {
            gen: f[l.gen],
            sign: l.sign,
        }))
    }

    /// Cyclic rotation `w[k..] w[..k]`, reduced.
    pub fn rotate(&self, k: usize) -> GroupWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        GroupWord::from_letters(self.0[k..].iter().chain(&self.0[..k]).copied())
    }

    /// Inserts `w` at position `pos` and reduces.
    pub fn insert_at(&self, pos: usize, w: &GroupWord) -> GroupWord {
        GroupWord::from_letters(
            self.0[..pos]
                .iter()
                .chain(&w.0)
                .chain(&self.0[pos..])
                .copied(),
        )
    }

    /// Parses whitespace-separated tokens `g` / `g^-1` (also `g^1`, `g^+1`)
    /// over the given generator labels.
    pub fn parse(text: &str, labels: &[String]) -> Result<GroupWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "e" && !labels.iter().any(|l| l == "e") {
                continue;
            }
            let (name, sign) = match tok.rsplit_once('^') {
                Some((name, "-1")) => (name, -1),
                Some((name, "1" | "+1")) => (name, 1),
                Some((_, exp)) => {
                    return Err(Error::Parse(format!("unsupported exponent `{exp}` in `{tok}`")))
                }
                None => (tok, 1),
            };
            let gen = labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            letters.push(Letter { gen, sign });
        }
        Ok(GroupWord::from_letters(letters))
    }

    /// Inverse of [`parse`](Self::parse); the empty word prints as `e`.
    pub fn display_with(&self, labels: &[String]) -> String {
        format_letters(&self.0, labels)
    }
}

pub fn format_letters(letters: &[Letter], labels: &[String]) -> String {
    if letters.is_empty() {
        return "e".into();
    }
    letters
        .iter()
        .map(|l| {
            let name = labels.get(l.gen).cloned().unwrap_or_else(|| format!("x{}", l.gen));
            if l.sign < 0 {
                format!("{name}^-1")
            } else {
                name
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..=self.0.iter().map(|l| l.gen).max().unwrap_or(0))
            .map(|i| format!("x{i}"))
            .collect();
        write!(f, "{}", self.display_with(&labels))
    }
}

/// Witness that a word lies in the kernel of a generator map `f`: the
/// non-crossing pairing of letter positions (0-based, `i < j`) and the
/// `f`-symmetric pair `(ν, ν′)` of raw letter sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricPairWitness {
    pub pairing: Vec<(usize, usize)>,
    pub nu: Vec<Letter>,
    pub nu_prime: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum KernelPairing {
    Witness(SymmetricPairWitness),
    NotInKernel,
}

/// Pairs up the letters of `u` whose images cancel when `f[u]` is reduced,
/// by simulating stack reduction of the image word: each letter pairs with
/// the most recent unmatched letter whose image it cancels.
///
/// `ν` is `u` itself; `ν′` replaces every letter by the generator at the
/// first position of its pair, keeping the sign. `ν′` then reduces to the
/// empty word, so `ν · ν′⁻¹ = u`.
pub fn kernel_pairing(f: &[usize], u: &GroupWord) -> KernelPairing {
    let letters = u.letters();
    let mut stack: Vec<usize> = Vec::new();
    let mut partner = vec![usize::MAX; letters.len()];
    let mut pairing = Vec::new();
    for (k, l) in letters.iter().enumerate() {
        let image = Letter {
            gen: f[l.gen],
            sign: l.sign,
        };
        match stack.last() {
            Some(&t)
                if Letter {
                    gen: f[letters[t].gen],
                    sign: letters[t].sign,
                }
                .cancels(image) =>
            {
                stack.pop();
                partner[t] = t;
                partner[k] = t;
                pairing.push((t, k));
            }
            _ => stack.push(k),
        }
    }
    if !stack.is_empty() {
        return KernelPairing::NotInKernel;
    }
    pairing.sort_unstable();
    let nu_prime = letters
        .iter()
        .enumerate()
        .map(|(k, l)| Letter {
            gen: letters[partner[k]].gen,
            sign: l.sign,
        })
        .collect();
    KernelPairing::Witness(SymmetricPairWitness {
        pairing,
        nu: letters.to_vec(),
        nu_prime,
    })
}
