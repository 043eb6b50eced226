//! Weak Sierpinski subsets: sets `E` with `gE = E \ {a}` and `hE = E \ {b}`
//! for removable points `a != b`.
//!
//! A subset is stored in a canonical frame together with a right translate
//! `u`, so `x` belongs to `E` exactly when `x u^-1` belongs to the frame
//! subset. Right translation is a graph automorphism, which is what makes
//! this representation exact.
//!
//! Two frame representations exist:
//!
//! * cut form: two boundary edges (one `g`, one `h`) pointing into `E`, and
//!   base vertices inside `E`; `E` is everything reachable from a base
//!   without crossing a cut edge;
//! * rule form: elements whose last syllable is a positive `g`-power (the
//!   literal variant accepts any nonzero power and does not verify).
//!
//! Membership is decided in closed form (polygon gates for finite `k`, the
//! unique tree path for `k = inf`). [`WSubset::contains_bfs`] is the
//! path-search baseline it is tested against.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::cayley::{
    build_ball, geodesic_length, Ball, Label, LabeledEdge, Polygon, DEFAULT_VERTEX_CAP, STEPS,
};
use crate::engine::{Factor, GroupParam, NormalForm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutPair {
    pub gcut: LabeledEdge,
    pub hcut: LabeledEdge,
}

impl CutPair {
    /// `gcut = (g^-1, 1)` and `hcut = (g^-1 s^(ell-1), s^ell)`.
    pub fn canonical(param: GroupParam, ell: u32) -> CutPair {
        CutPair {
            gcut: LabeledEdge::into_head(NormalForm::identity(param), Label::G),
            hcut: LabeledEdge::into_head(NormalForm::s_pow(param, ell as i64), Label::H),
        }
    }

    pub fn right_translate(&self, u: &NormalForm) -> CutPair {
        CutPair {
            gcut: self.gcut.right_translate(u),
            hcut: self.hcut.right_translate(u),
        }
    }

    fn contains(&self, e: &LabeledEdge) -> bool {
        *e == self.gcut || *e == self.hcut
    }
}

#[derive(Debug, Clone)]
enum Geometry {
    /// Both cuts on one relator polygon; cutting splits it into the arc
    /// `lo+1 ..= hi` and its complement. `inside[i]` says whether arc `i`
    /// (0 = complement, 1 = `lo+1 ..= hi`) belongs to the subset.
    Polygon {
        polygon: Polygon,
        lo: usize,
        hi: usize,
        inside: [bool; 2],
    },
    Tree,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum Shape {
    Cut {
        ell: Option<u32>,
        cuts: CutPair,
        bases: Vec<NormalForm>,
        geometry: Geometry,
    },
    Rule {
        literal: bool,
    },
}

#[derive(Debug, Clone)]
pub struct WSubset {
    param: GroupParam,
    shape: Shape,
    translate: NormalForm,
    translate_inv: NormalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovablePair {
    pub a: NormalForm,
    pub b: NormalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetDescriptor {
    pub param: GroupParam,
    pub kind: &'static str,
    pub ell: Option<u32>,
    pub translate: NormalForm,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub literal: bool,
}

/// `E_ell`: cut along `(g^-1, 1)` and `(g^-1 s^(ell-1), s^ell)`, keeping the
/// side of the identity.
pub fn canonical_subset(param: GroupParam, ell: u32) -> Result<WSubset> {
    let k = param
        .k()
        .ok_or_else(|| Error::InvalidParam("canonical subsets need finite k".into()))?;
    if ell == 0 || ell > k {
        return Err(Error::BadIndex { ell, k });
    }
    let mut e = WSubset::from_cuts(
        param,
        CutPair::canonical(param, ell),
        vec![NormalForm::identity(param)],
    )?;
    e.set_ell(ell);
    Ok(e)
}

/// The free-group analogue of `E_1`: cutting the tree at `(g^-1, 1)` and
/// `(g^-1, s)` leaves three components, and the subset is the two not
/// containing `g^-1`.
pub fn tree_subset() -> WSubset {
    let p = GroupParam::Infinite;
    let mut e = WSubset::from_cuts(
        p,
        CutPair::canonical(p, 1),
        vec![NormalForm::identity(p), NormalForm::s(p)],
    )
    .expect("canonical tree cuts are valid");
    e.set_ell(1);
    e
}

/// Elements whose normal form ends with a positive power of `g`.
pub fn example1_subset(param: GroupParam) -> WSubset {
    WSubset::with_shape(param, Shape::Rule { literal: false })
}

/// Elements whose normal form ends with any nonzero power of `g`. This
/// fails `gE = E \ {g}` at `x = 1`, since `g^-1` belongs to it.
pub fn example1_literal_subset(param: GroupParam) -> WSubset {
    WSubset::with_shape(param, Shape::Rule { literal: true })
}

/// The `k` subsets obtained by pairing the cut `(g^-1, 1)` with each
/// `h`-labeled edge of its relator polygon, in order `ell = 1..=k`.
pub fn enumerate_cut_candidates(param: GroupParam) -> Result<Vec<WSubset>> {
    let k = param
        .k()
        .ok_or_else(|| Error::InvalidParam("cut candidates need finite k".into()))?;
    let gcut = LabeledEdge::into_head(NormalForm::identity(param), Label::G);
    let polygon = Polygon::containing(&gcut)?;
    (0..k as usize)
        .map(|j| {
            // h-edges join positions 2j+1 and 2j+2
            let tail = polygon.vertex_at(2 * j + 1);
            let hcut = LabeledEdge::from_tail(tail, Label::H);
            let mut e = WSubset::from_cuts(
                param,
                CutPair {
                    gcut: gcut.clone(),
                    hcut,
                },
                vec![NormalForm::identity(param)],
            )?;
            e.set_ell(j as u32 + 1);
            Ok(e)
        })
        .collect()
}

impl WSubset {
    /// Cut-form subset in the identity frame. Each cut edge must point into
    /// the subset: its head is reachable from a base, its tail is not.
    pub fn from_cuts(param: GroupParam, cuts: CutPair, bases: Vec<NormalForm>) -> Result<WSubset> {
        if cuts.gcut.label != Label::G || cuts.hcut.label != Label::H {
            return Err(Error::InvalidCuts("need one g-edge and one h-edge".into()));
        }
        for e in [&cuts.gcut, &cuts.hcut] {
            if e.tail.param() != param || e.head.param() != param {
                return Err(Error::ParamMismatch {
                    left: param.to_string(),
                    right: e.tail.param().to_string(),
                });
            }
            if e.tail.left_mul(e.label.letter()) != e.head {
                return Err(Error::InvalidCuts(format!("{e} is not a graph edge")));
            }
        }
        if bases.is_empty() {
            return Err(Error::InvalidCuts("no base vertex".into()));
        }
        let geometry = match param {
            GroupParam::Infinite => Geometry::Tree,
            GroupParam::Finite(_) => {
                let polygon = Polygon::containing(&cuts.gcut)?;
                if !polygon.same_as(&Polygon::containing(&cuts.hcut)?) {
                    return Err(Error::InvalidCuts(
                        "cut edges on different relator polygons do not separate".into(),
                    ));
                }
                let i = polygon.edge_index(&cuts.gcut).expect("edge of its polygon");
                let j = polygon.edge_index(&cuts.hcut).expect("same polygon");
                let (lo, hi) = (i.min(j), i.max(j));
                let mut inside = [false; 2];
                for b in &bases {
                    let g = polygon.gate(b);
                    inside[usize::from(lo < g && g <= hi)] = true;
                }
                Geometry::Polygon {
                    polygon,
                    lo,
                    hi,
                    inside,
                }
            }
        };
        let e = WSubset::with_shape(
            param,
            Shape::Cut {
                ell: None,
                cuts: cuts.clone(),
                bases,
                geometry,
            },
        );
        for c in [&cuts.gcut, &cuts.hcut] {
            if !e.contains_in_frame(&c.head) || e.contains_in_frame(&c.tail) {
                return Err(Error::InvalidCuts(format!(
                    "{c} does not point into the subset"
                )));
            }
        }
        Ok(e)
    }

    fn with_shape(param: GroupParam, shape: Shape) -> WSubset {
        WSubset {
            param,
            shape,
            translate: NormalForm::identity(param),
            translate_inv: NormalForm::identity(param),
        }
    }

    fn set_ell(&mut self, value: u32) {
        if let Shape::Cut { ell, .. } = &mut self.shape {
            *ell = Some(value);
        }
    }

    pub fn param(&self) -> GroupParam {
        self.param
    }

    pub fn translate(&self) -> &NormalForm {
        &self.translate
    }

    pub fn is_rule(&self) -> bool {
        matches!(self.shape, Shape::Rule { .. })
    }

    /// Cut edges after translation, if this is a cut-form subset.
    pub fn cut_pair(&self) -> Option<CutPair> {
        match &self.shape {
            Shape::Cut { cuts, .. } => Some(cuts.right_translate(&self.translate)),
            Shape::Rule { .. } => None,
        }
    }

    pub fn bases(&self) -> Vec<NormalForm> {
        match &self.shape {
            Shape::Cut { bases, .. } => bases.iter().map(|b| b * &self.translate).collect(),
            Shape::Rule { .. } => Vec::new(),
        }
    }

    pub fn descriptor(&self) -> SubsetDescriptor {
        let (kind, ell, literal) = match &self.shape {
            Shape::Cut { ell, .. } => ("cut", *ell, false),
            Shape::Rule { literal } => ("rule", None, *literal),
        };
        SubsetDescriptor {
            param: self.param,
            kind,
            ell,
            translate: self.translate.clone(),
            literal,
        }
    }

    pub fn contains(&self, x: &NormalForm) -> Result<bool> {
        self.check_param(x)?;
        Ok(self.contains_in_frame(&(x * &self.translate_inv)))
    }

    fn contains_in_frame(&self, z: &NormalForm) -> bool {
        match &self.shape {
            Shape::Rule { literal } => match z.syllables().last() {
                Some(s) if s.factor == Factor::G => *literal || s.exp > 0,
                _ => false,
            },
            Shape::Cut {
                geometry:
                    Geometry::Polygon {
                        polygon,
                        lo,
                        hi,
                        inside,
                    },
                ..
            } => {
                let g = polygon.gate(z);
                inside[usize::from(*lo < g && g <= *hi)]
            }
            Shape::Cut {
                geometry: Geometry::Tree,
                cuts,
                bases,
                ..
            } => bases.iter().any(|b| tree_path_avoids(b, z, cuts)),
        }
    }

    /// Search radius for [`Self::contains_bfs`]: `|x u^-1|` bounded via
    /// [`NormalForm::gh_length_bound`], plus a detour of `2k + 1` around a
    /// cut polygon for finite `k`.
    pub fn certified_radius(&self, x: &NormalForm) -> u64 {
        let z = x * &self.translate_inv;
        let margin = match self.param {
            GroupParam::Finite(k) => 2 * k as u64 + 1,
            GroupParam::Infinite => 0,
        };
        z.gh_length_bound() + margin
    }

    /// Membership by breadth-first search from `x u^-1` in the frame graph
    /// with both cut edges removed, over vertices within `radius` (default
    /// [`Self::certified_radius`]) of the identity. The search ends at the
    /// first base (inside) or cut tail (outside; tails lie outside by
    /// construction). Rule-form subsets have no cuts and fall back to the
    /// rule.
    pub fn contains_bfs(&self, x: &NormalForm, radius: Option<u64>, cap: usize) -> Result<bool> {
        self.check_param(x)?;
        let Shape::Cut { cuts, bases, .. } = &self.shape else {
            return self.contains(x);
        };
        let radius = radius.unwrap_or_else(|| self.certified_radius(x));
        let start = x * &self.translate_inv;
        let tails = [&cuts.gcut.tail, &cuts.hcut.tail];
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if bases.contains(&v) {
                return Ok(true);
            }
            if tails.contains(&&v) {
                return Ok(false);
            }
            for step in STEPS {
                let y = v.left_mul(step);
                let label = if step.symbol == crate::words::Symbol::G {
                    Label::G
                } else {
                    Label::H
                };
                let edge = if step.inverse {
                    LabeledEdge {
                        tail: y.clone(),
                        head: v.clone(),
                        label,
                    }
                } else {
                    LabeledEdge {
                        tail: v.clone(),
                        head: y.clone(),
                        label,
                    }
                };
                if cuts.contains(&edge) || seen.contains(&y) || geodesic_length(&y) > radius {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(Error::ResourceLimit { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        Ok(false)
    }

    /// `(a, b)` with `gE = E \ {a}` and `hE = E \ {b}`: the heads of the cut
    /// edges, or `(g u, h u)` for the rule form.
    pub fn removable_points(&self) -> Result<RemovablePair> {
        match &self.shape {
            Shape::Cut { cuts, .. } => Ok(RemovablePair {
                a: &cuts.gcut.head * &self.translate,
                b: &cuts.hcut.head * &self.translate,
            }),
            Shape::Rule { literal: false } => Ok(RemovablePair {
                a: &NormalForm::g(self.param) * &self.translate,
                b: &NormalForm::h(self.param) * &self.translate,
            }),
            Shape::Rule { literal: true } => Err(Error::NotCanonicalizable(
                "the nonzero-power set has no removable points".into(),
            )),
        }
    }

    pub fn is_ws(&self) -> Result<bool> {
        let pair = self.removable_points()?;
        Ok(pair.a != pair.b)
    }

    pub fn right_translate(&self, u: &NormalForm) -> Result<WSubset> {
        self.check_param(u)?;
        let translate = &self.translate * u;
        Ok(WSubset {
            param: self.param,
            shape: self.shape.clone(),
            translate_inv: translate.inverse(),
            translate,
        })
    }

    /// The unique `(ell, u)` with `E = E_ell u`. Moving the `g`-boundary
    /// edge onto `(g^-1, 1)` fixes `u = a`; then `b u^-1 = s^ell`.
    pub fn normalize(&self) -> Result<(u32, NormalForm)> {
        let RemovablePair { a, b } = self.removable_points()?;
        if a == b {
            return Err(Error::NotWs(a.to_string()));
        }
        let z = &b * &a.inverse();
        match z.syllables() {
            [s] if s.factor == Factor::S && s.exp > 0 => Ok((s.exp as u32, a)),
            _ => Err(Error::NotCanonicalizable(format!(
                "b a^-1 = {z} is not a positive power of s"
            ))),
        }
    }

    fn check_param(&self, x: &NormalForm) -> Result<()> {
        if x.param() == self.param {
            Ok(())
        } else {
            Err(Error::ParamMismatch {
                left: self.param.to_string(),
                right: x.param().to_string(),
            })
        }
    }
}

/// Whether the unique reduced path from `base` to `z` in the free group's
/// Cayley tree avoids both cut edges.
fn tree_path_avoids(base: &NormalForm, z: &NormalForm, cuts: &CutPair) -> bool {
    let w = (z * &base.inverse()).to_gh_word();
    let mut v = base.clone();
    for &l in w.letters().iter().rev() {
        let next = v.left_mul(l);
        let label = if l.symbol == crate::words::Symbol::G {
            Label::G
        } else {
            Label::H
        };
        let (tail, head) = if l.inverse {
            (next.clone(), v)
        } else {
            (v, next.clone())
        };
        if cuts.contains(&LabeledEdge { tail, head, label }) {
            return false;
        }
        v = next;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_witnesses<T>(witnesses: &[T]) -> Status {
        if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub status: Status,
    pub label: Label,
    pub claimed: NormalForm,
    pub radius: u32,
    pub checked: usize,
    /// Vertices of the ball where `x in gamma E` and `x in E \ {claimed}`
    /// disagree, in ball order.
    pub witnesses: Vec<NormalForm>,
}

/// Checks `gamma E = E \ {claimed}` pointwise on the ball of radius `radius`.
pub fn verify_translation_identity(
    e: &WSubset,
    gamma: Label,
    claimed: &NormalForm,
    radius: u32,
) -> Result<VerificationReport> {
    let ball = build_ball(e.param, radius)?;
    verify_translation_identity_on(&ball, e, gamma, claimed)
}

pub fn verify_translation_identity_on(
    ball: &Ball,
    e: &WSubset,
    gamma: Label,
    claimed: &NormalForm,
) -> Result<VerificationReport> {
    let step_back = gamma.letter().inv();
    let mut witnesses = Vec::new();
    for x in ball.vertices() {
        let in_translate = e.contains(&x.left_mul(step_back))?;
        let in_rest = x != claimed && e.contains(x)?;
        if in_translate != in_rest {
            witnesses.push(x.clone());
        }
    }
    Ok(VerificationReport {
        status: Status::from_witnesses(&witnesses),
        label: gamma,
        claimed: claimed.clone(),
        radius: ball.radius(),
        checked: ball.len(),
        witnesses,
    })
}

/// Default cap for [`WSubset::contains_bfs`] searches.
pub const BFS_CAP: usize = DEFAULT_VERTEX_CAP;
