//! Finite balls in the left Cayley graph: vertices are group elements, and
//! each `x` has an edge `x -> g x` labeled `g` and `x -> h x` labeled `h`.
//!
//! Right multiplication commutes with these edges, so right translations
//! are graph automorphisms. For finite `k` the graph is a tree-like union of
//! `2k`-gons, each traced by the relator.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::analysis::{classify_word, WordClass};
use crate::engine::{Factor, GroupParam, NormalForm, Syllable};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Symbol, Word};

pub const DEFAULT_VERTEX_CAP: usize = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    G,
    H,
}

impl Label {
    pub fn letter(self) -> Letter {
        match self {
            Label::G => Letter::pos(Symbol::G),
            Label::H => Letter::pos(Symbol::H),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::G => "g",
            Label::H => "h",
        })
    }
}

/// The four steps out of every vertex: left multiplication by g, g^-1, h, h^-1.
pub const STEPS: [Letter; 4] = [
    Letter::pos(Symbol::G),
    Letter::neg(Symbol::G),
    Letter::pos(Symbol::H),
    Letter::neg(Symbol::H),
];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledEdge {
    pub tail: NormalForm,
    pub head: NormalForm,
    pub label: Label,
}

impl LabeledEdge {
    pub fn from_tail(tail: NormalForm, label: Label) -> Self {
        let head = tail.left_mul(label.letter());
        LabeledEdge { tail, head, label }
    }

    pub fn into_head(head: NormalForm, label: Label) -> Self {
        let tail = head.left_mul(label.letter().inv());
        LabeledEdge { tail, head, label }
    }

    pub fn right_translate(&self, u: &NormalForm) -> Self {
        LabeledEdge {
            tail: &self.tail * u,
            head: &self.head * u,
            label: self.label,
        }
    }
}

impl fmt::Display for LabeledEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})[{}]", self.tail, self.head, self.label)
    }
}

/// The elements at distance at most `radius` from the identity, with every
/// graph edge whose endpoints both lie inside.
///
/// Vertices are ordered by (distance, canonical string).
#[derive(Debug, Clone)]
pub struct Ball {
    param: GroupParam,
    radius: u32,
    vertices: Vec<NormalForm>,
    keys: Vec<String>,
    dist: Vec<u32>,
    index: HashMap<NormalForm, usize>,
    edges: Vec<(usize, usize, Label)>,
}

pub fn build_ball(param: GroupParam, radius: u32) -> Result<Ball> {
    Ball::build(param, radius, DEFAULT_VERTEX_CAP)
}

impl Ball {
    pub fn build(param: GroupParam, radius: u32, cap: usize) -> Result<Ball> {
        let id = NormalForm::identity(param);
        let mut vertices = vec![id.clone()];
        let mut keys = vec![id.to_string()];
        let mut dist = vec![0];
        let mut index = HashMap::from([(id, 0)]);

        let mut level_start = 0;
        for r in 1..=radius {
            let mut fresh: HashSet<NormalForm> = HashSet::new();
            for v in &vertices[level_start..] {
                for step in STEPS {
                    let y = v.left_mul(step);
                    if !index.contains_key(&y) {
                        fresh.insert(y);
                    }
                }
            }
            if vertices.len() + fresh.len() > cap {
                return Err(Error::ResourceLimit { cap });
            }
            let mut level: Vec<(String, NormalForm)> =
                fresh.into_iter().map(|x| (x.to_string(), x)).collect();
            level.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            level_start = vertices.len();
            for (key, x) in level {
                index.insert(x.clone(), vertices.len());
                vertices.push(x);
                keys.push(key);
                dist.push(r);
            }
        }

        let mut edges = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for label in [Label::G, Label::H] {
                if let Some(&j) = index.get(&v.left_mul(label.letter())) {
                    edges.push((i, j, label));
                }
            }
        }

        Ok(Ball {
            param,
            radius,
            vertices,
            keys,
            dist,
            index,
            edges,
        })
    }

    pub fn param(&self) -> GroupParam {
        self.param
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[NormalForm] {
        &self.vertices
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn dist_of(&self, i: usize) -> u32 {
        self.dist[i]
    }

    pub fn index_of(&self, x: &NormalForm) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &NormalForm) -> bool {
        self.index.contains_key(x)
    }

    pub fn distance(&self, x: &NormalForm) -> Result<u32> {
        self.index_of(x)
            .map(|i| self.dist[i])
            .ok_or_else(|| Error::NotInBall(x.to_string()))
    }

    /// Edges as `(tail index, head index, label)`, ordered by tail then label.
    pub fn edge_indices(&self) -> &[(usize, usize, Label)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = LabeledEdge> + '_ {
        self.edges.iter().map(|&(t, h, label)| LabeledEdge {
            tail: self.vertices[t].clone(),
            head: self.vertices[h].clone(),
            label,
        })
    }

    /// Undirected adjacency lists; each entry is `(neighbor, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, &(t, h, _)) in self.edges.iter().enumerate() {
            adj[t].push((h, e));
            adj[h].push((t, e));
        }
        adj
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<_> = (0..self.len())
            .map(|i| serde_json::json!({"id": self.keys[i], "dist": self.dist[i]}))
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(t, h, label)| {
                serde_json::json!({"tail": self.keys[t], "head": self.keys[h], "label": label})
            })
            .collect();
        serde_json::json!({
            "param": self.param,
            "radius": self.radius,
            "vertices": vertices,
            "edges": edges,
        })
    }
}

/// The relator polygon `P0 * base`, whose vertices in cyclic order are
/// `base, g^-1 base, s base, g^-1 s base, ..., g^-1 s^(k-1) base`.
///
/// Position `2j` holds `s^j base` and `2j + 1` holds `g^-1 s^j base`. Edge
/// index `i` joins positions `i` and `i + 1` (mod `2k`): even indices are
/// `g`-edges, odd ones `h`-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    k: u32,
    base: NormalForm,
    base_inv: NormalForm,
}

impl Polygon {
    pub fn containing(edge: &LabeledEdge) -> Result<Polygon> {
        let k = edge.tail.param().k().ok_or(Error::NoPolygon)?;
        let base = match edge.label {
            Label::G => edge.head.clone(),
            Label::H => edge.tail.left_mul(Letter::pos(Symbol::G)),
        };
        Ok(Polygon::with_base(k, base))
    }

    fn with_base(k: u32, base: NormalForm) -> Polygon {
        Polygon {
            k,
            base_inv: base.inverse(),
            base,
        }
    }

    pub fn base(&self) -> &NormalForm {
        &self.base
    }

    pub fn vertex_at(&self, pos: usize) -> NormalForm {
        let sj = &NormalForm::s_pow(self.base.param(), (pos / 2) as i64) * &self.base;
        if pos.is_multiple_of(2) {
            sj
        } else {
            sj.left_mul(Letter::neg(Symbol::G))
        }
    }

    pub fn size(&self) -> usize {
        2 * self.k as usize
    }

    pub fn vertices(&self) -> Vec<NormalForm> {
        (0..self.size()).map(|i| self.vertex_at(i)).collect()
    }

    pub fn same_as(&self, other: &Polygon) -> bool {
        in_s_subgroup(&(&self.base * &other.base_inv))
    }

    pub fn position(&self, v: &NormalForm) -> Option<usize> {
        let z = v * &self.base_inv;
        match z.syllables() {
            [] => Some(0),
            [Syllable {
                factor: Factor::S,
                exp,
            }] => Some(2 * *exp as usize),
            [Syllable {
                factor: Factor::G,
                exp: -1,
            }] => Some(1),
            [Syllable {
                factor: Factor::G,
                exp: -1,
            }, Syllable {
                factor: Factor::S,
                exp,
            }] => Some(2 * *exp as usize + 1),
            _ => None,
        }
    }

    pub fn edge_index(&self, edge: &LabeledEdge) -> Option<usize> {
        let n = self.size();
        let t = self.position(&edge.tail)?;
        let h = self.position(&edge.head)?;
        if (t + 1) % n == h {
            Some(t)
        } else if (h + 1) % n == t {
            Some(h)
        } else {
            None
        }
    }

    /// Position of the polygon vertex through which every path from the
    /// polygon to `x` must pass.
    ///
    /// Reading `x * base^-1` from the right: a trailing `s^j` followed (on
    /// its left) by a negative `g`-power attaches at `g^-1 s^j`, anything
    /// else at `s^j`.
    pub fn gate(&self, x: &NormalForm) -> usize {
        let z = x * &self.base_inv;
        let (j, e) = z.tail_signature();
        let j = j as usize;
        if e < 0 {
            2 * j + 1
        } else {
            2 * j
        }
    }
}

/// Exact graph distance from the identity.
///
/// For finite `k` this walks the tree of polygons: from the current vertex
/// `v`, one of its two polygons (`v` at position 0 of `P0 v`, or position 1
/// of `P0 g v`) leads towards `x`, and the walk jumps to the gate of `x` on
/// it, paying the shorter arc.
pub fn geodesic_length(x: &NormalForm) -> u64 {
    let Some(k) = x.param().k() else {
        return x.to_gh_word().len() as u64;
    };
    let n = 2 * k as usize;
    let arc = |a: usize, b: usize| {
        let d = a.abs_diff(b);
        d.min(n - d) as u64
    };
    let mut v = NormalForm::identity(x.param());
    let mut total = 0;
    for _ in 0..=x.gh_length_bound() {
        if v == *x {
            return total;
        }
        let s_side = Polygon::with_base(k, v.clone());
        let gate = s_side.gate(x);
        if gate != 0 {
            total += arc(0, gate);
            v = s_side.vertex_at(gate);
            continue;
        }
        let g_side = Polygon::with_base(k, v.left_mul(Letter::pos(Symbol::G)));
        let gate = g_side.gate(x);
        assert_ne!(gate, 1, "{x} attaches at {v} on both of its polygons");
        total += arc(1, gate);
        v = g_side.vertex_at(gate);
    }
    unreachable!("gate walk towards {x} did not terminate")
}

fn in_s_subgroup(z: &NormalForm) -> bool {
    matches!(
        z.syllables(),
        [] | [Syllable {
            factor: Factor::S,
            ..
        }]
    )
}

pub fn polygon_of_edge(edge: &LabeledEdge) -> Result<Vec<NormalForm>> {
    Ok(Polygon::containing(edge)?.vertices())
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalLoopReport {
    pub param: GroupParam,
    pub radius: u32,
    /// Edge count of the shortest cycle; `None` when the ball is acyclic.
    pub girth: Option<usize>,
    /// `girth / 2`, the power of `h^-1 g` traced by a minimal loop.
    pub exponent: Option<usize>,
    pub loop_count: usize,
    /// One minimal loop as consecutive edges.
    pub representative: Vec<LabeledEdge>,
    /// Label word of the representative read as a group product.
    pub representative_word: Option<String>,
    /// Every minimal loop reads a rotation or inverse of `(h^-1 g)^exponent`.
    pub relator_labels: bool,
    /// Every minimal loop is a right translate of the representative.
    pub translate_unique: bool,
}

/// Girth of the ball and the structure of its shortest cycles.
pub fn minimal_loops(ball: &Ball) -> Result<CriticalLoopReport> {
    if let Some(k) = ball.param.k() {
        if ball.radius < 2 * k {
            return Err(Error::Inconclusive {
                radius: ball.radius,
                needed: 2 * k,
            });
        }
    }
    let adj = ball.adjacency();
    let girth = girth(&adj);
    let mut report = CriticalLoopReport {
        param: ball.param,
        radius: ball.radius,
        girth,
        exponent: girth.map(|g| g / 2),
        loop_count: 0,
        representative: Vec::new(),
        representative_word: None,
        relator_labels: true,
        translate_unique: true,
    };
    let Some(len) = girth else {
        return Ok(report);
    };

    let cycles = cycles_of_length(&adj, len);
    report.loop_count = cycles.len();
    let rep = &cycles[0];
    report.representative = cycle_edges(ball, rep);
    report.representative_word = Some(cycle_word(ball, rep).to_string());
    report.relator_labels = cycles.iter().all(|c| {
        let w = cycle_word(ball, c);
        matches!(classify_word(&w), Ok(WordClass::PowerHinvG(n)) if 2 * n == len)
    });
    report.translate_unique = cycles.iter().all(|c| is_right_translate(ball, rep, c));
    Ok(report)
}

fn girth(adj: &[Vec<(usize, usize)>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut depth = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for root in 0..n {
        for &v in &touched {
            depth[v] = usize::MAX;
        }
        touched.clear();
        depth[root] = 0;
        touched.push(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * depth[u] + 1 >= best {
                break;
            }
            for &(w, e) in &adj[u] {
                if e == parent_edge[u] && u != root {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent_edge[w] = e;
                    touched.push(w);
                    queue.push_back(w);
                } else {
                    best = best.min(depth[u] + depth[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// All simple cycles with `len` edges, each listed once: it starts at its
/// smallest vertex and its second vertex is smaller than its last.
fn cycles_of_length(adj: &[Vec<(usize, usize)>], len: usize) -> Vec<Vec<usize>> {
    fn extend(
        adj: &[Vec<(usize, usize)>],
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut HashSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let start = path[0];
        let last = *path.last().expect("nonempty");
        if path.len() == len {
            if path[1] < last && adj[last].iter().any(|&(w, _)| w == start) {
                out.push(path.clone());
            }
            return;
        }
        for &(w, _) in &adj[last] {
            if w > start && !on_path.contains(&w) {
                path.push(w);
                on_path.insert(w);
                extend(adj, len, path, on_path, out);
                on_path.remove(&w);
                path.pop();
            }
        }
    }

    let mut out = Vec::new();
    for v in 0..adj.len() {
        let mut path = vec![v];
        let mut on_path = HashSet::from([v]);
        extend(adj, len, &mut path, &mut on_path, &mut out);
    }
    out
}

/// The step letter taking vertex `a` to vertex `b` (`b = letter * a`).
fn step_letter(ball: &Ball, a: usize, b: usize) -> Letter {
    STEPS
        .into_iter()
        .find(|&l| ball.vertices[a].left_mul(l) == ball.vertices[b])
        .expect("consecutive cycle vertices are adjacent")
}

fn cycle_edges(ball: &Ball, cycle: &[usize]) -> Vec<LabeledEdge> {
    let n = cycle.len();
    (0..n)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            let l = step_letter(ball, a, b);
            let label = if l.symbol == Symbol::G {
                Label::G
            } else {
                Label::H
            };
            let (t, h) = if l.inverse { (b, a) } else { (a, b) };
            LabeledEdge {
                tail: ball.vertices[t].clone(),
                head: ball.vertices[h].clone(),
                label,
            }
        })
        .collect()
}

/// Steps around the cycle, written as a group product (the last step is
/// the leftmost letter).
fn cycle_word(ball: &Ball, cycle: &[usize]) -> Word {
    let n = cycle.len();
    let mut letters: Vec<Letter> = (0..n)
        .map(|i| step_letter(ball, cycle[i], cycle[(i + 1) % n]))
        .collect();
    letters.reverse();
    Word::new(Alphabet::GH, letters).expect("steps use g and h")
}

fn is_right_translate(ball: &Ball, rep: &[usize], cycle: &[usize]) -> bool {
    let n = rep.len();
    if cycle.len() != n {
        return false;
    }
    let r0_inv = ball.vertices[rep[0]].inverse();
    let forward = |r: usize, i: usize| cycle[(r + i) % n];
    let backward = |r: usize, i: usize| cycle[(r + n - i) % n];
    (0..n).any(|r| {
        let u = &r0_inv * &ball.vertices[cycle[r]];
        [
            &forward as &dyn Fn(usize, usize) -> usize,
            &backward as &dyn Fn(usize, usize) -> usize,
        ]
        .iter()
        .any(|at| (0..n).all(|i| &ball.vertices[rep[i]] * &u == ball.vertices[at(r, i)]))
    })
}

/// Edges of the ball with exactly one endpoint satisfying `member`.
pub fn boundary_edges(ball: &Ball, member: impl Fn(&NormalForm) -> bool) -> Vec<LabeledEdge> {
    let inside: Vec<bool> = ball.vertices.iter().map(member).collect();
    ball.edges
        .iter()
        .filter(|&&(t, h, _)| inside[t] != inside[h])
        .map(|&(t, h, label)| LabeledEdge {
            tail: ball.vertices[t].clone(),
            head: ball.vertices[h].clone(),
            label,
        })
        .collect()
}

/// DOT digraph of the ball. Node ids are canonical strings; highlighted
/// vertices are filled.
pub fn export_dot(ball: &Ball, highlight: Option<&dyn Fn(&NormalForm) -> bool>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph cayley {{");
    let _ = writeln!(
        out,
        "  graph [label=\"k={}, radius={}\"];",
        ball.param, ball.radius
    );
    let _ = writeln!(out, "  node [shape=circle, fontsize=8];");
    for (i, v) in ball.vertices.iter().enumerate() {
        let styled = highlight.is_some_and(|f| f(v));
        if styled {
            let _ = writeln!(
                out,
                "  \"{}\" [style=filled, fillcolor=\"lightblue\"];",
                ball.keys[i]
            );
        } else {
            let _ = writeln!(out, "  \"{}\";", ball.keys[i]);
        }
    }
    for &(t, h, label) in &ball.edges {
        let color = match label {
            Label::G => "blue",
            Label::H => "red",
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\", color=\"{}\"];",
            ball.keys[t], ball.keys[h], label, color
        );
    }
    out.push_str("}\n");
    out
}
