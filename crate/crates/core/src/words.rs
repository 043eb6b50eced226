//! Words over the generating pairs `{g, h}` and `{g, s}`.
//!
//! A [`Word`] is an unreduced sequence of letters; nothing here knows about
//! the relator. Group-level equality lives in [`crate::engine`].
//!
//! Text syntax: tokens separated by whitespace or `*`, each `sym` or
//! `sym^n` with an integer `n`. Uppercase letters are inverses, so `G^2`
//! means `g^-2`. The token `1` is the empty word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    G,
    H,
    S,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::G => 'g',
            Symbol::H => 'h',
            Symbol::S => 's',
        }
    }
}

/// Which generating pair a word is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    GH,
    GS,
}

impl Alphabet {
    pub fn contains(self, symbol: Symbol) -> bool {
        match self {
            Alphabet::GH => symbol != Symbol::S,
            Alphabet::GS => symbol != Symbol::H,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::GH => "GH",
            Alphabet::GS => "GS",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub symbol: Symbol,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(symbol: Symbol, inverse: bool) -> Self {
        Letter { symbol, inverse }
    }

    pub const fn pos(symbol: Symbol) -> Self {
        Letter::new(symbol, false)
    }

    pub const fn neg(symbol: Symbol) -> Self {
        Letter::new(symbol, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.symbol, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol.as_char())
        } else {
            write!(f, "{}", self.symbol.as_char())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| !alphabet.contains(l.symbol)) {
            return Err(Error::Syntax {
                token: bad.to_string(),
                reason: format!("symbol not in alphabet {alphabet}"),
            });
        }
        Ok(Word { alphabet, letters })
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
        {
            if token == "1" {
                continue;
            }
            let (letter, exp) = parse_token(token)?;
            if !alphabet.contains(letter.symbol) {
                return Err(Error::Syntax {
                    token: token.to_string(),
                    reason: format!("symbol not in alphabet {alphabet}"),
                });
            }
            let letter = if exp < 0 { letter.inv() } else { letter };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Word { alphabet, letters })
    }

    /// Parses with the alphabet inferred from the symbols present: any `s`
    /// selects `{g, s}`, otherwise `{g, h}`.
    pub fn parse_auto(text: &str) -> Result<Self> {
        let has = |c: char| text.chars().any(|t| t.eq_ignore_ascii_case(&c));
        match (has('h'), has('s')) {
            (true, true) => Err(Error::Syntax {
                token: text.to_string(),
                reason: "word mixes h and s".into(),
            }),
            (_, true) => Word::parse(text, Alphabet::GS),
            _ => Word::parse(text, Alphabet::GH),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
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

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.expect_alphabet(other.alphabet)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet,
            letters,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn power(&self, n: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters.repeat(n),
        }
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word {
            alphabet: self.alphabet,
            letters: out,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&a), Some(&b)) if self.letters.len() > 1 => !a.cancels(b),
                _ => true,
            }
    }

    /// Strips matching first/last letter pairs from the free reduction. The
    /// result is a conjugate of `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce();
        let l = &reduced.letters;
        let mut lo = 0;
        let mut hi = l.len();
        while hi - lo >= 2 && l[lo].cancels(l[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            alphabet: self.alphabet,
            letters: l[lo..hi].to_vec(),
        }
    }

    /// Rewrites into the other generating pair using `h = s g`, then freely
    /// reduces.
    pub fn convert(&self, target: Alphabet) -> Word {
        if target == self.alphabet {
            return self.free_reduce();
        }
        let g = Letter::pos(Symbol::G);
        let mut letters = Vec::with_capacity(self.letters.len() * 2);
        for &l in &self.letters {
            match (l.symbol, l.inverse) {
                (Symbol::G, _) => letters.push(l),
                (Symbol::H, false) => letters.extend([Letter::pos(Symbol::S), g]),
                (Symbol::H, true) => letters.extend([g.inv(), Letter::neg(Symbol::S)]),
                (Symbol::S, false) => letters.extend([Letter::pos(Symbol::H), g.inv()]),
                (Symbol::S, true) => letters.extend([g, Letter::neg(Symbol::H)]),
            }
        }
        Word {
            alphabet: target,
            letters,
        }
        .free_reduce()
    }

    pub fn rotate(&self, by: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(by % n);
        }
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    fn expect_alphabet(&self, other: Alphabet) -> Result<()> {
        if self.alphabet == other {
            Ok(())
        } else {
            Err(Error::WrongAlphabet {
                expected: self.alphabet.to_string(),
                found: other.to_string(),
            })
        }
    }
}

fn parse_token(token: &str) -> Result<(Letter, i64)> {
    let mut chars = token.chars();
    let head = chars.next().expect("tokens are nonempty");
    let symbol = match head.to_ascii_lowercase() {
        'g' => Symbol::G,
        'h' => Symbol::H,
        's' => Symbol::S,
        _ => {
            return Err(Error::Syntax {
                token: token.to_string(),
                reason: "unknown symbol".into(),
            })
        }
    };
    let letter = Letter::new(symbol, head.is_ascii_uppercase());
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok((letter, 1));
    }
    let exp = rest
        .strip_prefix('^')
        .and_then(|e| e.parse::<i64>().ok())
        .ok_or_else(|| Error::Syntax {
            token: token.to_string(),
            reason: "malformed exponent".into(),
        })?;
    Ok((letter, exp))
}

/// Renders letters joined by `*` with same-letter runs aggregated, e.g.
/// `g^3*s^-1`. The empty word renders as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for run in self.letters.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let exp = run.len() as i64 * run[0].sign();
            let c = run[0].symbol.as_char();
            if exp == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{exp}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gh(text: &str) -> Word {
        Word::parse(text, Alphabet::GH).unwrap()
    }

    fn gs(text: &str) -> Word {
        Word::parse(text, Alphabet::GS).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = gh("g h^-1 g");
        assert_eq!(
            w.letters(),
            &[
                Letter::pos(Symbol::G),
                Letter::neg(Symbol::H),
                Letter::pos(Symbol::G)
            ]
        );
        assert!(gh("").is_empty());
        let w = gs("g^3 s^-2");
        assert_eq!(w.len(), 5);
        assert_eq!(&w.letters()[3..], &[Letter::neg(Symbol::S); 2]);
    }

    #[test]
    fn parse_shorthand_and_separators() {
        assert_eq!(gh("G*H"), gh("g^-1 h^-1"));
        assert_eq!(gh("G^2"), gh("g^-2"));
        assert_eq!(gh("1"), Word::empty(Alphabet::GH));
        assert_eq!(gh("g^0"), Word::empty(Alphabet::GH));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("x", Alphabet::GH),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Word::parse("g^", Alphabet::GH),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Word::parse("g^1.5", Alphabet::GH),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Word::parse("s", Alphabet::GH),
            Err(Error::Syntax { .. })
        ));
        assert!(Word::parse_auto("h*s").is_err());
    }

    #[test]
    fn render_round_trip() {
        for text in ["g^3*s^-1", "1", "g*g^-1*g", "h^-1*g*h^-1*g"] {
            let w = Word::parse_auto(text).unwrap();
            assert_eq!(w.to_string(), text);
            assert_eq!(Word::parse_auto(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn free_reduce_examples() {
        // x y y^-1 with x = g, y = h
        let w = gh("g h h^-1");
        assert_eq!(w.len(), 3);
        assert_eq!(w.free_reduce(), gh("g"));
        assert_eq!(w.free_reduce().len(), 1);
        assert!(gh("").free_reduce().is_empty());
        assert_eq!(gh("g g^-1 g").free_reduce(), gh("g"));
        assert!(gh("g h G g H G").free_reduce().is_empty());
        assert_eq!(gh("g h G g H").free_reduce(), gh("g"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(gh("g h g^-1").cyclic_reduce(), gh("h"));
        assert_eq!(gh("g h").cyclic_reduce(), gh("g h"));
        assert_eq!(gh("g^-1 h g").cyclic_reduce(), gh("h"));
        assert!(gh("g h g^-1").free_reduce().is_reduced());
        assert!(gh("g h g^-1 h").is_cyclically_reduced());
        assert!(!gh("g h g^-1").is_cyclically_reduced());
    }

    #[test]
    fn convert_examples() {
        assert_eq!(gh("h").convert(Alphabet::GS), gs("s g"));
        assert_eq!(gh("g").convert(Alphabet::GS), gs("g"));
        assert_eq!(gs("g").convert(Alphabet::GH), gh("g"));
        assert_eq!(gh("h^-1 g").convert(Alphabet::GS), gs("g^-1 s^-1 g"));
        assert_eq!(gs("s").convert(Alphabet::GH), gh("h g^-1"));
        // h -> s g -> h g^-1 g -> h
        assert_eq!(gh("h").convert(Alphabet::GS).convert(Alphabet::GH), gh("h"));
    }

    #[test]
    fn concat_checks_alphabet() {
        assert!(matches!(
            gh("g").concat(&gs("s")),
            Err(Error::WrongAlphabet { .. })
        ));
        assert_eq!(gh("g").concat(&gh("h")).unwrap(), gh("g h"));
    }
}
