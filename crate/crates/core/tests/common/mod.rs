#![allow(dead_code)]

use std::collections::VecDeque;

use wslab::cayley::{Ball, LabeledEdge};
use wslab::{GroupParam, Letter, NormalForm, Symbol};

pub fn k(n: u32) -> GroupParam {
    GroupParam::finite(n).unwrap()
}

pub fn letters_gh() -> [Letter; 4] {
    [
        Letter::pos(Symbol::G),
        Letter::neg(Symbol::G),
        Letter::pos(Symbol::H),
        Letter::neg(Symbol::H),
    ]
}

/// Free-product reduction written independently of the engine: each `h` is
/// replaced by `s g` and `h^-1` by `g^-1 s^-1`, then syllables are merged
/// with a stack. `s` exponents live in `0..k`; `None` means `k = inf`.
pub fn reduce_free_product(word: &[Letter], k: Option<u32>) -> Vec<(char, i64)> {
    let mut stack: Vec<(char, i64)> = Vec::new();
    let push = |stack: &mut Vec<(char, i64)>, c: char, e: i64| {
        let norm = |c: char, e: i64| match (c, k) {
            ('s', Some(k)) => e.rem_euclid(k as i64),
            _ => e,
        };
        match stack.last_mut() {
            Some((top, x)) if *top == c => {
                *x = norm(c, *x + e);
                if *x == 0 {
                    stack.pop();
                }
            }
            _ => {
                let e = norm(c, e);
                if e != 0 {
                    stack.push((c, e));
                }
            }
        }
    };
    for l in word {
        match (l.symbol, l.inverse) {
            (Symbol::G, inv) => push(&mut stack, 'g', if inv { -1 } else { 1 }),
            (Symbol::S, inv) => push(&mut stack, 's', if inv { -1 } else { 1 }),
            (Symbol::H, false) => {
                push(&mut stack, 's', 1);
                push(&mut stack, 'g', 1);
            }
            (Symbol::H, true) => {
                push(&mut stack, 'g', -1);
                push(&mut stack, 's', -1);
            }
        }
    }
    stack
}

/// Membership labels for every ball vertex, computed on the ball graph with
/// the cut edges deleted: `Some(true)` if connected to a base, `Some(false)`
/// if connected to a cut tail, `None` if neither is reachable inside the ball.
pub fn two_sided_membership(
    ball: &Ball,
    cuts: &[LabeledEdge],
    bases: &[NormalForm],
) -> Vec<Option<bool>> {
    let n = ball.len();
    let removed: Vec<bool> = ball.edges().map(|e| cuts.contains(&e)).collect();
    let adj = ball.adjacency();
    let mut label = vec![None; n];
    let flood = |label: &mut Vec<Option<bool>>, seeds: Vec<usize>, value: bool| {
        let mut queue = VecDeque::new();
        for s in seeds {
            assert!(
                label[s].is_none() || label[s] == Some(value),
                "seed labeled twice"
            );
            label[s] = Some(value);
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if removed[e] {
                    continue;
                }
                match label[w] {
                    None => {
                        label[w] = Some(value);
                        queue.push_back(w);
                    }
                    Some(x) => assert_eq!(x, value, "inside and outside are connected"),
                }
            }
        }
    };
    let idx = |x: &NormalForm| ball.index_of(x).expect("seed inside the ball");
    flood(&mut label, bases.iter().map(idx).collect(), true);
    flood(
        &mut label,
        cuts.iter().map(|c| idx(&c.tail)).collect(),
        false,
    );
    label
}

/// Deterministic pseudo-random reduced `{g, h}` word.
pub fn random_word(rng: &mut impl rand::Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.random_range(0..=max_len);
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    while w.len() < len {
        let l = letters_gh()[rng.random_range(0..4)];
        if w.last().is_some_and(|p| p.cancels(l)) {
            continue;
        }
        w.push(l);
    }
    w
}

/// Calls `f` on every reduced `{g, h}` word of length exactly `len`.
pub fn for_each_word(len: usize, f: &mut dyn FnMut(&[Letter])) {
    fn go(buf: &mut Vec<Letter>, len: usize, f: &mut dyn FnMut(&[Letter])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for l in letters_gh() {
            if buf.last().is_some_and(|p| p.cancels(l)) {
                continue;
            }
            buf.push(l);
            go(buf, len, f);
            buf.pop();
        }
    }
    go(&mut Vec::new(), len, f);
}
