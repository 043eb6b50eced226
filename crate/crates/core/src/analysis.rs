//! Word classification, fork detection, free-pair sweeps and the charge
//! homomorphism of a weak Sierpinski subset.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::engine::{GroupParam, NormalForm};
use crate::error::{Error, Result};
use crate::sierpinski::{RemovablePair, Status, SubsetDescriptor, WSubset};
use crate::words::{Alphabet, Letter, Symbol, Word};

pub const GH_LETTERS: [Letter; 4] = [
    Letter::pos(Symbol::G),
    Letter::neg(Symbol::G),
    Letter::pos(Symbol::H),
    Letter::neg(Symbol::H),
];

/// Class of a cyclically reduced word up to rotation and inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordClass {
    PowerG(usize),
    PowerH(usize),
    PowerGH(usize),
    PowerHinvG(usize),
    Bad,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordClass::PowerG(n) => write!(f, "g^{n}"),
            WordClass::PowerH(n) => write!(f, "h^{n}"),
            WordClass::PowerGH(n) => write!(f, "(g*h)^{n}"),
            WordClass::PowerHinvG(n) => write!(f, "(h^-1*g)^{n}"),
            WordClass::Bad => f.write_str("bad"),
        }
    }
}

fn check_cyclic_gh(w: &Word) -> Result<()> {
    if w.alphabet() != Alphabet::GH {
        return Err(Error::WrongAlphabet {
            expected: Alphabet::GH.to_string(),
            found: w.alphabet().to_string(),
        });
    }
    if w.is_empty() || !w.is_cyclically_reduced() {
        return Err(Error::NotCyclicallyReduced(w.to_string()));
    }
    Ok(())
}

/// A cyclic word belongs to a family iff it uses one symbol throughout, or
/// alternates `g` and `h` with a constant sign on each. Equal signs give
/// `(gh)^n` or its inverse, opposite signs `(h^-1 g)^n` or its inverse.
pub fn classify_word(w: &Word) -> Result<WordClass> {
    check_cyclic_gh(w)?;
    let l = w.letters();
    let n = l.len();
    if l.iter().all(|x| x.symbol == l[0].symbol) {
        return Ok(match l[0].symbol {
            Symbol::G => WordClass::PowerG(n),
            _ => WordClass::PowerH(n),
        });
    }
    let alternating = n.is_multiple_of(2) && (0..n).all(|i| l[i].symbol != l[(i + 1) % n].symbol);
    if !alternating {
        return Ok(WordClass::Bad);
    }
    let sign_of = |s: Symbol| {
        let signs: BTreeSet<bool> = l
            .iter()
            .filter(|x| x.symbol == s)
            .map(|x| x.inverse)
            .collect();
        (signs.len() == 1).then(|| *signs.first().unwrap())
    };
    Ok(match (sign_of(Symbol::G), sign_of(Symbol::H)) {
        (Some(a), Some(b)) if a == b => WordClass::PowerGH(n / 2),
        (Some(_), Some(_)) => WordClass::PowerHinvG(n / 2),
        _ => WordClass::Bad,
    })
}

/// Two traversals of edges with the same label whose preceding steps
/// differ. A step is recorded as the letter that walks along its edge in
/// the edge's own direction, so `g^-1` arriving backwards counts as `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForkWitness {
    pub label: Symbol,
    pub first: usize,
    pub second: usize,
    pub first_previous: Letter,
    pub second_previous: Letter,
}

/// For an edge crossed forwards at position `i` the step into its tail is
/// the letter before it; crossed backwards (an inverse letter), the walk
/// enters its tail from the following letter, read in reverse.
fn previous_step(l: &[Letter], i: usize) -> Letter {
    let n = l.len();
    if l[i].inverse {
        l[(i + 1) % n].inv()
    } else {
        l[(i + n - 1) % n]
    }
}

pub fn find_fork(w: &Word) -> Result<Option<ForkWitness>> {
    check_cyclic_gh(w)?;
    let l = w.letters();
    for label in [Symbol::G, Symbol::H] {
        let mut first: Option<(usize, Letter)> = None;
        for i in (0..l.len()).filter(|&i| l[i].symbol == label) {
            let prev = previous_step(l, i);
            match first {
                None => first = Some((i, prev)),
                Some((j, p)) if p != prev => {
                    return Ok(Some(ForkWitness {
                        label,
                        first: j,
                        second: i,
                        first_previous: p,
                        second_previous: prev,
                    }))
                }
                Some(_) => {}
            }
        }
    }
    Ok(None)
}

/// Calls `f` on every reduced `{g, h}` word of length exactly `len`, in
/// lexicographic order of [`GH_LETTERS`].
pub fn for_each_reduced_word(len: usize, mut f: impl FnMut(&[Letter])) {
    fn go(buf: &mut Vec<Letter>, len: usize, f: &mut dyn FnMut(&[Letter])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for l in GH_LETTERS {
            if buf.last().is_some_and(|&p| p.cancels(l)) {
                continue;
            }
            buf.push(l);
            go(buf, len, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, &mut f);
}

#[derive(Debug, Clone, Serialize)]
pub struct ForkLemmaReport {
    pub status: Status,
    pub max_len: usize,
    pub words_checked: usize,
    pub bad_words: usize,
    /// Bad words without a fork.
    pub counterexamples: Vec<String>,
    /// Family members that nonetheless admit a fork (reported, not a failure).
    pub family_with_fork: Vec<String>,
}

/// Checks "bad implies fork" over every cyclically reduced word of length
/// at most `max_len`.
pub fn verify_fork_lemma(max_len: usize) -> ForkLemmaReport {
    let mut report = ForkLemmaReport {
        status: Status::Pass,
        max_len,
        words_checked: 0,
        bad_words: 0,
        counterexamples: Vec::new(),
        family_with_fork: Vec::new(),
    };
    for len in 1..=max_len {
        for_each_reduced_word(len, |l| {
            if len > 1 && l[0].cancels(l[len - 1]) {
                return;
            }
            let w = Word::new(Alphabet::GH, l.to_vec()).expect("gh letters");
            let class = classify_word(&w).expect("cyclically reduced");
            let fork = find_fork(&w).expect("cyclically reduced");
            report.words_checked += 1;
            match (class, fork) {
                (WordClass::Bad, None) => {
                    report.bad_words += 1;
                    report.counterexamples.push(w.to_string());
                }
                (WordClass::Bad, Some(_)) => report.bad_words += 1,
                (_, Some(_)) => report.family_with_fork.push(w.to_string()),
                (_, None) => {}
            }
        });
    }
    report.status = Status::from_witnesses(&report.counterexamples);
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct FreePairReport {
    pub status: Status,
    pub param: GroupParam,
    pub max_len: usize,
    pub words_checked: usize,
    /// Nonempty reduced words in `x, y` that evaluate to the identity.
    pub witnesses: Vec<String>,
}

fn render_xy(letters: &[(usize, bool)]) -> String {
    letters
        .chunk_by(|a, b| a == b)
        .map(|run| {
            let c = if run[0].0 == 0 { 'x' } else { 'y' };
            let e = run.len() as i64 * if run[0].1 { -1 } else { 1 };
            if e == 1 {
                c.to_string()
            } else {
                format!("{c}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Substitutes `x = g`, `y = h^-1 g h` into every nonempty reduced word of
/// length at most `max_len` and reports the ones that evaluate to 1.
pub fn free_pair_check(param: GroupParam, max_len: usize) -> FreePairReport {
    let x = NormalForm::g(param);
    let h = NormalForm::h(param);
    let y = &(&h.inverse() * &x) * &h;
    let gens = [[x.clone(), x.inverse()], [y.clone(), y.inverse()]];
    let mut report = FreePairReport {
        status: Status::Pass,
        param,
        max_len,
        words_checked: 0,
        witnesses: Vec::new(),
    };
    let mut word: Vec<(usize, bool)> = Vec::new();
    let mut stack = vec![NormalForm::identity(param)];
    fn go(
        word: &mut Vec<(usize, bool)>,
        stack: &mut Vec<NormalForm>,
        gens: &[[NormalForm; 2]; 2],
        max_len: usize,
        report: &mut FreePairReport,
    ) {
        if !word.is_empty() {
            report.words_checked += 1;
            if stack.last().unwrap().is_identity() {
                report.witnesses.push(render_xy(word));
            }
        }
        if word.len() == max_len {
            return;
        }
        for sym in 0..2 {
            for inv in [false, true] {
                if word.last() == Some(&(sym, !inv)) {
                    continue;
                }
                let next = stack.last().unwrap() * &gens[sym][usize::from(inv)];
                word.push((sym, inv));
                stack.push(next);
                go(word, stack, gens, max_len, report);
                stack.pop();
                word.pop();
            }
        }
    }
    go(&mut word, &mut stack, &gens, max_len, &mut report);
    report.status = Status::from_witnesses(&report.witnesses);
    report
}

/// Every nonempty reduced `{g, h}` word of length at most `max_len` that
/// evaluates to the identity, shortest first.
pub fn trivial_words(param: GroupParam, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut word = Vec::new();
    let mut stack = vec![NormalForm::identity(param)];
    // words are grown on the left so each step is a single left multiplication
    fn go(
        word: &mut Vec<Letter>,
        stack: &mut Vec<NormalForm>,
        max_len: usize,
        out: &mut Vec<Word>,
    ) {
        if !word.is_empty() && stack.last().unwrap().is_identity() {
            let letters = word.iter().rev().copied().collect();
            out.push(Word::new(Alphabet::GH, letters).unwrap());
        }
        if word.len() == max_len {
            return;
        }
        for l in GH_LETTERS {
            if word.last().is_some_and(|&p| p.cancels(l)) {
                continue;
            }
            let next = stack.last().unwrap().left_mul(l);
            word.push(l);
            stack.push(next);
            go(word, stack, max_len, out);
            stack.pop();
            word.pop();
        }
    }
    go(&mut word, &mut stack, max_len, &mut out);
    out.sort_by_key(|w| (w.len(), w.to_string()));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ChargeReport {
    pub subset: SubsetDescriptor,
    pub gamma: NormalForm,
    pub outflow: usize,
    pub inflow: usize,
    pub f: i64,
    /// `E \ gamma E`, sorted by normal form text.
    pub out_set: Vec<NormalForm>,
    /// `gamma E \ E`, sorted by normal form text.
    pub in_set: Vec<NormalForm>,
}

/// Points where `E` and `gamma E` can differ.
///
/// With `gamma = t_1 ... t_n` in letters, `E` and `gamma E` differ only
/// inside the union of `t_1 ... t_(i-1) (E xor t_i E)`, and each
/// `E xor t E` is a single point: `a`, `g^-1 a`, `b` or `h^-1 b`.
pub fn charge_candidates(pair: &RemovablePair, gamma: &NormalForm) -> Vec<NormalForm> {
    let RemovablePair { a, b } = pair;
    let mut prefix = NormalForm::identity(gamma.param());
    let mut out = BTreeMap::new();
    for l in gamma.to_gh_word().letters() {
        let p = match (l.symbol, l.inverse) {
            (Symbol::G, false) => a.clone(),
            (Symbol::G, true) => a.left_mul(*l),
            (_, false) => b.clone(),
            (_, true) => b.left_mul(*l),
        };
        let x = &prefix * &p;
        out.insert(x.to_string(), x);
        prefix = &prefix
            * &NormalForm::evaluate(&Word::new(Alphabet::GH, vec![*l]).unwrap(), gamma.param());
    }
    out.into_values().collect()
}

/// `f(gamma) = |E \ gamma E| - |gamma E \ E|`, with both sets listed.
pub fn charge(e: &WSubset, gamma: &NormalForm) -> Result<ChargeReport> {
    if gamma.param() != e.param() {
        return Err(Error::ParamMismatch {
            left: e.param().to_string(),
            right: gamma.param().to_string(),
        });
    }
    let pair = e.removable_points()?;
    let gamma_inv = gamma.inverse();
    let mut out_set = Vec::new();
    let mut in_set = Vec::new();
    for x in charge_candidates(&pair, gamma) {
        let in_e = e.contains(&x)?;
        let in_translate = e.contains(&(&gamma_inv * &x))?;
        match (in_e, in_translate) {
            (true, false) => out_set.push(x),
            (false, true) => in_set.push(x),
            _ => {}
        }
    }
    Ok(ChargeReport {
        subset: e.descriptor(),
        gamma: gamma.clone(),
        outflow: out_set.len(),
        inflow: in_set.len(),
        f: out_set.len() as i64 - in_set.len() as i64,
        out_set,
        in_set,
    })
}
