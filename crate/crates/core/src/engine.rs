//! Exact arithmetic in `G_k = <g> * <s>` with `s` of order `k` and `h = s g`,
//! and in the free group (`k = inf`, where `s` has infinite order).
//!
//! The relator `(h^-1 g)^k` is `(g^-1 s^-1 g)^k`, a conjugate of `s^-k`, so
//! the free product presentation defines the same group. Elements are kept
//! as alternating syllable sequences, which makes equality of values the
//! same thing as equality of group elements.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupParam {
    Finite(u32),
    Infinite,
}

impl GroupParam {
    pub fn finite(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParam(format!(
                "k must be at least 2, got {k}"
            )));
        }
        Ok(GroupParam::Finite(k))
    }

    pub fn k(self) -> Option<u32> {
        match self {
            GroupParam::Finite(k) => Some(k),
            GroupParam::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, GroupParam::Finite(_))
    }

    fn reduce(self, factor: Factor, exp: i64) -> i64 {
        match (factor, self) {
            (Factor::S, GroupParam::Finite(k)) => exp.rem_euclid(k as i64),
            _ => exp,
        }
    }
}

impl FromStr for GroupParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "INF" | "Inf" | "infinity" => Ok(GroupParam::Infinite),
            t => {
                let k = t
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidParam(format!("not a group parameter: {t:?}")))?;
                GroupParam::finite(k)
            }
        }
    }
}

impl fmt::Display for GroupParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupParam::Finite(k) => write!(f, "{k}"),
            GroupParam::Infinite => f.write_str("inf"),
        }
    }
}

/// JSON form: the integer `k`, or the string `"inf"`.
impl Serialize for GroupParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupParam::Finite(k) => serializer.serialize_u32(*k),
            GroupParam::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    G,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: Factor,
    pub exp: i64,
}

impl Syllable {
    pub const fn g(exp: i64) -> Self {
        Syllable {
            factor: Factor::G,
            exp,
        }
    }

    pub const fn s(exp: i64) -> Self {
        Syllable {
            factor: Factor::S,
            exp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Canonical alternating-syllable form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    param: GroupParam,
    syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn identity(param: GroupParam) -> Self {
        NormalForm {
            param,
            syllables: Vec::new(),
        }
    }

    pub fn g(param: GroupParam) -> Self {
        Self::identity(param).left_mul(Letter::pos(Symbol::G))
    }

    pub fn h(param: GroupParam) -> Self {
        Self::identity(param).left_mul(Letter::pos(Symbol::H))
    }

    pub fn s(param: GroupParam) -> Self {
        Self::identity(param).left_mul(Letter::pos(Symbol::S))
    }

    pub fn s_pow(param: GroupParam, m: i64) -> Self {
        let mut nf = Self::identity(param);
        nf.push_right(Factor::S, m);
        nf
    }

    /// Builds an element from arbitrary syllables, normalizing as it goes.
    pub fn from_syllables(param: GroupParam, syllables: &[Syllable]) -> Self {
        let mut nf = Self::identity(param);
        for s in syllables {
            nf.push_right(s.factor, s.exp);
        }
        nf
    }

    pub fn evaluate(word: &Word, param: GroupParam) -> Self {
        let mut nf = Self::identity(param);
        for &l in word.letters() {
            nf.push_letter_right(l);
        }
        nf
    }

    /// Parses a word in either alphabet and evaluates it.
    pub fn parse(text: &str, param: GroupParam) -> Result<Self> {
        Ok(Self::evaluate(&Word::parse_auto(text)?, param))
    }

    pub fn param(&self) -> GroupParam {
        self.param
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn try_mul(&self, other: &NormalForm) -> Result<NormalForm> {
        if self.param != other.param {
            return Err(Error::ParamMismatch {
                left: self.param.to_string(),
                right: other.param.to_string(),
            });
        }
        let mut out = self.clone();
        for s in &other.syllables {
            out.push_right(s.factor, s.exp);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> NormalForm {
        let mut out = Self::identity(self.param);
        for s in self.syllables.iter().rev() {
            out.push_right(s.factor, -s.exp);
        }
        out
    }

    pub fn pow(&self, n: i64) -> NormalForm {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.param);
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Left multiplication by a single generator letter; this is the step
    /// along an edge of the left Cayley graph.
    pub fn left_mul(&self, letter: Letter) -> NormalForm {
        let mut out = self.clone();
        let e = letter.sign();
        match letter.symbol {
            Symbol::G => out.push_left(Factor::G, e),
            Symbol::S => out.push_left(Factor::S, e),
            // h = s g and h^-1 = g^-1 s^-1
            Symbol::H if e > 0 => {
                out.push_left(Factor::G, 1);
                out.push_left(Factor::S, 1);
            }
            Symbol::H => {
                out.push_left(Factor::S, -1);
                out.push_left(Factor::G, -1);
            }
        }
        out
    }

    /// Least `n >= 1` with `self^n = 1`. An element has finite order exactly
    /// when it is conjugate into the finite factor.
    pub fn order(&self) -> Order {
        let core = self.cyclic_core();
        match (core.as_slice(), self.param) {
            ([], _) => Order::Finite(1),
            (
                [Syllable {
                    factor: Factor::S,
                    exp,
                }],
                GroupParam::Finite(k),
            ) => {
                let k = k as u64;
                Order::Finite(k / gcd(k, exp.unsigned_abs()))
            }
            _ => Order::Infinite,
        }
    }

    /// Syllable sequence after repeatedly conjugating away a first syllable
    /// whose factor matches the last one.
    pub fn cyclic_core(&self) -> Vec<Syllable> {
        let mut core: std::collections::VecDeque<Syllable> =
            self.syllables.iter().copied().collect();
        while core.len() >= 2 && core[0].factor == core[core.len() - 1].factor {
            let first = core.pop_front().expect("len >= 2");
            let last = core.back_mut().expect("len >= 1");
            let e = self.param.reduce(first.factor, last.exp + first.exp);
            if e == 0 {
                core.pop_back();
            } else {
                last.exp = e;
            }
        }
        core.into_iter().collect()
    }

    /// Upper bound on the word length over `{g, h}`: `s^m` costs
    /// `2 min(m, k - m)` via `(h g^-1)^m` or `(g h^-1)^(k-m)`.
    pub fn gh_length_bound(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| match (s.factor, self.param) {
                (Factor::G, _) => s.exp.unsigned_abs(),
                (Factor::S, GroupParam::Finite(k)) => {
                    let m = s.exp as u64;
                    2 * m.min(k as u64 - m)
                }
                (Factor::S, GroupParam::Infinite) => 2 * s.exp.unsigned_abs(),
            })
            .sum()
    }

    /// A freely reduced `{g, h}` word representing this element, of length
    /// at most [`Self::gh_length_bound`].
    pub fn to_gh_word(&self) -> Word {
        let g = Letter::pos(Symbol::G);
        let h = Letter::pos(Symbol::H);
        let mut letters = Vec::new();
        for s in &self.syllables {
            match s.factor {
                Factor::G => {
                    let l = if s.exp < 0 { g.inv() } else { g };
                    letters.extend(std::iter::repeat_n(l, s.exp.unsigned_abs() as usize));
                }
                Factor::S => {
                    let m = match self.param {
                        GroupParam::Finite(k) if 2 * s.exp > k as i64 => s.exp - k as i64,
                        _ => s.exp,
                    };
                    let pair = if m > 0 { [h, g.inv()] } else { [g, h.inv()] };
                    for _ in 0..m.unsigned_abs() {
                        letters.extend(pair);
                    }
                }
            }
        }
        Word::new(Alphabet::GH, letters)
            .expect("only g and h letters")
            .free_reduce()
    }

    /// Trailing `s`-exponent and the exponent of the `g`-syllable in front
    /// of it (0 where absent).
    pub(crate) fn tail_signature(&self) -> (i64, i64) {
        let n = self.syllables.len();
        match self.syllables.last() {
            None => (0, 0),
            Some(Syllable {
                factor: Factor::G,
                exp,
            }) => (0, *exp),
            Some(Syllable {
                factor: Factor::S,
                exp,
            }) => {
                let before = if n >= 2 { self.syllables[n - 2].exp } else { 0 };
                (*exp, before)
            }
        }
    }

    fn push_letter_right(&mut self, l: Letter) {
        let e = l.sign();
        match l.symbol {
            Symbol::G => self.push_right(Factor::G, e),
            Symbol::S => self.push_right(Factor::S, e),
            Symbol::H if e > 0 => {
                self.push_right(Factor::S, 1);
                self.push_right(Factor::G, 1);
            }
            Symbol::H => {
                self.push_right(Factor::G, -1);
                self.push_right(Factor::S, -1);
            }
        }
    }

    fn push_right(&mut self, factor: Factor, exp: i64) {
        let exp = self.param.reduce(factor, exp);
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.factor == factor {
                let e = self.param.reduce(factor, last.exp + exp);
                if e == 0 {
                    self.syllables.pop();
                } else {
                    last.exp = e;
                }
                return;
            }
        }
        self.syllables.push(Syllable { factor, exp });
    }

    fn push_left(&mut self, factor: Factor, exp: i64) {
        let exp = self.param.reduce(factor, exp);
        if exp == 0 {
            return;
        }
        if let Some(first) = self.syllables.first_mut() {
            if first.factor == factor {
                let e = self.param.reduce(factor, first.exp + exp);
                if e == 0 {
                    self.syllables.remove(0);
                } else {
                    first.exp = e;
                }
                return;
            }
        }
        self.syllables.insert(0, Syllable { factor, exp });
    }
}

/// Panics when the parameters differ; use [`NormalForm::try_mul`] to get an
/// error instead.
impl std::ops::Mul for &NormalForm {
    type Output = NormalForm;

    fn mul(self, rhs: &NormalForm) -> NormalForm {
        self.try_mul(rhs)
            .expect("multiplying elements of different groups")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            let c = match s.factor {
                Factor::G => 'g',
                Factor::S => 's',
            };
            write!(f, "{c}^{}", s.exp)?;
        }
        Ok(())
    }
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Permutation of `0..n` as an image table, composed as functions:
/// `(a * b)(i) = a(b(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn compose(&self, after: &Perm) -> Perm {
        Perm(after.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, n: i64) -> Perm {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.0.len());
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

/// A homomorphism into the symmetric group on `degree` points, fixed by the
/// images of `g` and `s`. Any choice with `s^k = 1` extends to the whole
/// free product, so images that differ prove the elements differ.
#[derive(Debug, Clone)]
pub struct FiniteImage {
    param: GroupParam,
    g: Perm,
    s: Perm,
}

impl FiniteImage {
    pub fn g(&self) -> &Perm {
        &self.g
    }

    pub fn s(&self) -> &Perm {
        &self.s
    }

    pub fn h(&self) -> Perm {
        self.s.compose(&self.g)
    }

    pub fn image_word(&self, word: &Word) -> Perm {
        let h = self.h();
        let mut acc = Perm::identity(self.g.0.len());
        for &l in word.letters() {
            let p = match l.symbol {
                Symbol::G => &self.g,
                Symbol::H => &h,
                Symbol::S => &self.s,
            };
            let step = if l.inverse { p.inverse() } else { p.clone() };
            acc = acc.compose(&step);
        }
        acc
    }

    pub fn image(&self, x: &NormalForm) -> Perm {
        debug_assert_eq!(x.param(), self.param);
        let mut acc = Perm::identity(self.g.0.len());
        for s in x.syllables() {
            let base = match s.factor {
                Factor::G => &self.g,
                Factor::S => &self.s,
            };
            acc = acc.compose(&base.pow(s.exp));
        }
        acc
    }

    pub fn separates(&self, a: &NormalForm, b: &NormalForm) -> bool {
        self.image(a) != self.image(b)
    }
}

/// Samples `g` uniformly and `s` as a random product of disjoint cycles whose
/// lengths divide `k` (any permutation when `k = inf`). Deterministic in
/// `(param, degree, seed)`.
pub fn random_finite_image(param: GroupParam, degree: usize, seed: u64) -> Result<FiniteImage> {
    if degree < 2 {
        return Err(Error::InvalidParam(format!(
            "permutation degree must be at least 2, got {degree}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g: Vec<u32> = (0..degree as u32).collect();
    g.shuffle(&mut rng);

    let mut points: Vec<u32> = (0..degree as u32).collect();
    points.shuffle(&mut rng);
    let s = match param {
        GroupParam::Infinite => points,
        GroupParam::Finite(k) => {
            let divisors: Vec<usize> = (1..=k as usize)
                .filter(|&d| (k as usize).is_multiple_of(d))
                .collect();
            let mut s = vec![0u32; degree];
            let mut rest = &points[..];
            while !rest.is_empty() {
                let fitting: Vec<usize> = divisors
                    .iter()
                    .copied()
                    .filter(|&d| d <= rest.len())
                    .collect();
                let len = fitting[rng.random_range(0..fitting.len())];
                let (cycle, tail) = rest.split_at(len);
                for i in 0..len {
                    s[cycle[i] as usize] = cycle[(i + 1) % len];
                }
                rest = tail;
            }
            s
        }
    };
    Ok(FiniteImage {
        param,
        g: Perm(g),
        s: Perm(s),
    })
}
