mod common;

use std::collections::BTreeMap;

use common::{for_each_word, k};
use wslab::analysis::charge;
use wslab::cayley::build_ball;
use wslab::sierpinski::{canonical_subset, WSubset};
use wslab::{Alphabet, GroupParam, Letter, NormalForm, Symbol, Word};

/// Every `z p` with `z` in the ball of radius `r` and `p` one of the four
/// points `a, g^-1 a, b, h^-1 b`.
fn region(e: &WSubset, r: u32) -> BTreeMap<String, NormalForm> {
    let pair = e.removable_points().unwrap();
    let points = [
        pair.a.clone(),
        pair.a.left_mul(Letter::neg(Symbol::G)),
        pair.b.clone(),
        pair.b.left_mul(Letter::neg(Symbol::H)),
    ];
    let mut out = BTreeMap::new();
    for z in build_ball(e.param(), r).unwrap().vertices() {
        for p in &points {
            let x = z * p;
            out.insert(x.to_string(), x);
        }
    }
    out
}

fn check_against_scan(p: GroupParam, ell: u32, max_gamma: usize) {
    let n = p.k().unwrap();
    let e = canonical_subset(p, ell).unwrap();
    let r = max_gamma as u32 + 2 * n + 2;
    let points = region(&e, r);
    for len in 0..=max_gamma {
        for_each_word(len, &mut |l| {
            let gamma = NormalForm::evaluate(&Word::new(Alphabet::GH, l.to_vec()).unwrap(), p);
            let gi = gamma.inverse();
            let mut out_set = Vec::new();
            let mut in_set = Vec::new();
            for x in points.values() {
                match (e.contains(x).unwrap(), e.contains(&(&gi * x)).unwrap()) {
                    (true, false) => out_set.push(x.clone()),
                    (false, true) => in_set.push(x.clone()),
                    _ => {}
                }
            }
            let report = charge(&e, &gamma).unwrap();
            assert_eq!(report.out_set, out_set, "outflow of {gamma}");
            assert_eq!(report.in_set, in_set, "inflow of {gamma}");
            let signed: i64 = l.iter().map(|x| x.sign()).sum();
            assert_eq!(report.f, signed, "f({gamma})");
        });
    }
}

#[test]
fn charge_matches_region_scan_k2() {
    for ell in 1..=2 {
        check_against_scan(k(2), ell, 3);
    }
}

#[test]
fn charge_matches_region_scan_k3() {
    for ell in 1..=3 {
        check_against_scan(k(3), ell, 1);
    }
}
