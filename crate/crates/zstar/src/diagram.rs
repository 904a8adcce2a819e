// zstar - exact arithmetic for graphical calculi
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Spider diagrams as open multigraphs and their evaluation to morphisms.
//!
//! A node is a colored, optionally phase-labelled spider; only the topology
//! of the graph carries meaning. Evaluation puts every node into its
//! all-outputs normal form (white: the spider `S_{0,k}`; black: the spider
//! with a dualizer on every leg), contracts each edge with the white cap and
//! bends boundary inputs with the white cup. The result is independent of
//! the contraction order, which the tests exercise directly.
//!
//! The file format is line oriented:
//!
//! ```text
//! boundary in <n> out <m>
//! node <id> <white|black> [phase <a> <b>]
//! edge <ep> <ep>        # ep is <id>.<k>, in.<k> or out.<k> (1-based)
//! ```
//!
//! Blank lines and `#` comments are allowed. Scalars in phase labels use the
//! exact-scalar grammar without embedded spaces (e.g. `1/2+3*i`).

use crate::catalog::{CalculusInstance, CatalogError};
use crate::prop::Morphism;
use crate::scalar::ExactScalar;
use crate::structures::{spider, StructureError};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("diagram is too large to evaluate ({0} tensor entries)")]
    TooLarge(u128),
    #[error("node {0} has an illegal phase: {1}")]
    IllegalPhase(String, String),
    #[error("invalid bend move: {0}")]
    BadMove(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Prop(#[from] crate::prop::PropError),
}

const MAX_TENSOR_ENTRIES: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    White,
    Black,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub color: Color,
    pub phase: Option<(ExactScalar, ExactScalar)>,
}

/// An edge endpoint: a node port, or a boundary port (1-based on the wire).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Endpoint {
    Port { node: usize, port: usize },
    In(usize),
    Out(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<(Endpoint, Endpoint)>,
    pub inputs: usize,
    pub outputs: usize,
}

impl Diagram {
    pub fn new(inputs: usize, outputs: usize) -> Self {
        Diagram { nodes: Vec::new(), edges: Vec::new(), inputs, outputs }
    }

    pub fn add_node(&mut self, id: &str, color: Color, phase: Option<(ExactScalar, ExactScalar)>) -> usize {
        self.nodes.push(Node { id: id.to_string(), color, phase });
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: Endpoint, b: Endpoint) {
        self.edges.push((a, b));
    }

    pub fn node_degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .flat_map(|(a, b)| [a, b])
            .filter(|e| matches!(e, Endpoint::Port { node: n, .. } if *n == node))
            .count()
    }

    /// Structural well-formedness: endpoints resolve, every boundary port is
    /// used exactly once, node ports are not reused.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |msg: String| DiagramError::Parse { line: 0, msg };
        let mut in_seen = vec![0usize; self.inputs];
        let mut out_seen = vec![0usize; self.outputs];
        let mut ports: Vec<(usize, usize)> = Vec::new();
        for (a, b) in &self.edges {
            for e in [a, b] {
                match e {
                    Endpoint::Port { node, port } => {
                        if *node >= self.nodes.len() {
                            return Err(bad(format!("edge references unknown node #{node}")));
                        }
                        if ports.contains(&(*node, *port)) {
                            return Err(bad(format!(
                                "port {}.{port} used more than once",
                                self.nodes[*node].id
                            )));
                        }
                        ports.push((*node, *port));
                    }
                    Endpoint::In(k) => {
                        if *k == 0 || *k > self.inputs {
                            return Err(bad(format!("input port in.{k} out of range")));
                        }
                        in_seen[*k - 1] += 1;
                    }
                    Endpoint::Out(k) => {
                        if *k == 0 || *k > self.outputs {
                            return Err(bad(format!("output port out.{k} out of range")));
                        }
                        out_seen[*k - 1] += 1;
                    }
                }
            }
        }
        for (k, count) in in_seen.iter().enumerate() {
            if *count != 1 {
                return Err(bad(format!("input port in.{} used {count} times", k + 1)));
            }
        }
        for (k, count) in out_seen.iter().enumerate() {
            if *count != 1 {
                return Err(bad(format!("output port out.{} used {count} times", k + 1)));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn parse_endpoint(token: &str, line: usize, ids: &BTreeMap<String, usize>) -> Result<Endpoint, DiagramError> {
    let err = |msg: String| DiagramError::Parse { line, msg };
    let (head, tail) = token
        .rsplit_once('.')
        .ok_or_else(|| err(format!("endpoint `{token}` must look like id.port, in.k or out.k")))?;
    let idx: usize = tail
        .parse()
        .map_err(|_| err(format!("bad port number in `{token}`")))?;
    if idx == 0 {
        return Err(err(format!("ports are 1-based in `{token}`")));
    }
    match head {
        "in" => Ok(Endpoint::In(idx)),
        "out" => Ok(Endpoint::Out(idx)),
        name => {
            let node = ids
                .get(name)
                .ok_or_else(|| err(format!("unknown node `{name}`")))?;
            Ok(Endpoint::Port { node: *node, port: idx })
        }
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut boundary: Option<(usize, usize)> = None;
        let mut edge_lines: Vec<(usize, String, String)> = Vec::new();
        for (lno, raw) in s.lines().enumerate() {
            let line = lno + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let err = |msg: String| DiagramError::Parse { line, msg };
            let toks: Vec<&str> = text.split_whitespace().collect();
            match toks[0] {
                "boundary" => {
                    if boundary.is_some() {
                        return Err(err("duplicate boundary line".into()));
                    }
                    if toks.len() != 5 || toks[1] != "in" || toks[3] != "out" {
                        return Err(err("expected `boundary in <n> out <m>`".into()));
                    }
                    let n = toks[2].parse().map_err(|_| err("bad input count".into()))?;
                    let m = toks[4].parse().map_err(|_| err("bad output count".into()))?;
                    boundary = Some((n, m));
                }
                "node" => {
                    if toks.len() != 3 && !(toks.len() == 6 && toks[3] == "phase") {
                        return Err(err(
                            "expected `node <id> <white|black> [phase <a> <b>]`".into(),
                        ));
                    }
                    let id = toks[1];
                    if id == "in" || id == "out" {
                        return Err(err("node ids `in` and `out` are reserved".into()));
                    }
                    if ids.contains_key(id) {
                        return Err(err(format!("duplicate node id `{id}`")));
                    }
                    let color = match toks[2] {
                        "white" => Color::White,
                        "black" => Color::Black,
                        other => return Err(err(format!("unknown color `{other}`"))),
                    };
                    let phase = if toks.len() == 6 {
                        let a: ExactScalar = toks[4]
                            .parse()
                            .map_err(|e| err(format!("bad phase parameter a: {e}")))?;
                        let b: ExactScalar = toks[5]
                            .parse()
                            .map_err(|e| err(format!("bad phase parameter b: {e}")))?;
                        Some((a, b))
                    } else {
                        None
                    };
                    ids.insert(id.to_string(), nodes.len());
                    nodes.push(Node { id: id.to_string(), color, phase });
                }
                "edge" => {
                    if toks.len() != 3 {
                        return Err(err("expected `edge <ep> <ep>`".into()));
                    }
                    edge_lines.push((line, toks[1].to_string(), toks[2].to_string()));
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        let (inputs, outputs) = boundary.ok_or(DiagramError::Parse {
            line: s.lines().count().max(1),
            msg: "missing `boundary in <n> out <m>` line".into(),
        })?;
        let mut diagram = Diagram::new(inputs, outputs);
        diagram.nodes = nodes;
        for (line, a, b) in edge_lines {
            let ea = parse_endpoint(&a, line, &ids)?;
            let eb = parse_endpoint(&b, line, &ids)?;
            diagram.edges.push((ea, eb));
        }
        diagram.validate()?;
        Ok(diagram)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "boundary in {} out {}", self.inputs, self.outputs)?;
        for n in &self.nodes {
            let color = match n.color {
                Color::White => "white",
                Color::Black => "black",
            };
            match &n.phase {
                Some((a, b)) => {
                    let compact = |s: &ExactScalar| s.to_string().replace(' ', "");
                    writeln!(f, "node {} {} phase {} {}", n.id, color, compact(a), compact(b))?
                }
                None => writeln!(f, "node {} {}", n.id, color)?,
            }
        }
        let ep = |e: &Endpoint| match e {
            Endpoint::Port { node, port } => format!("{}.{}", self.nodes[*node].id, port),
            Endpoint::In(k) => format!("in.{k}"),
            Endpoint::Out(k) => format!("out.{k}"),
        };
        for (a, b) in &self.edges {
            writeln!(f, "edge {} {}", ep(a), ep(b))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// A wire still live during contraction, remembering where it must end up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WireTag {
    Edge(usize),
    BoundaryIn(usize),
    BoundaryOut(usize),
}

#[derive(Debug, Clone)]
struct Factor {
    state: Morphism, // 0 -> wires.len()
    wires: Vec<WireTag>,
}

fn contract_in_factor(factor: &mut Factor, i: usize, j: usize, cap: &Morphism) {
    let d = factor.state.dim();
    let k = factor.wires.len();
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let mut out = Morphism::zeros(d, 0, k - 2);
    let size = d.pow(k as u32);
    for idx in 0..size {
        let v = factor.state.get(idx, 0);
        if v.is_zero() {
            continue;
        }
        // digits, wire 0 most significant
        let mut digits = vec![0usize; k];
        let mut rest = idx;
        for w in (0..k).rev() {
            digits[w] = rest % d;
            rest /= d;
        }
        let weight = cap.get(0, digits[i] * d + digits[j]);
        if weight.is_zero() {
            continue;
        }
        let mut out_idx = 0usize;
        for (w, &dig) in digits.iter().enumerate() {
            if w != i && w != j {
                out_idx = out_idx * d + dig;
            }
        }
        let cur = out.get(out_idx, 0) + &(v * weight);
        out.set(out_idx, 0, cur);
    }
    factor.state = out;
    factor.wires = factor
        .wires
        .iter()
        .enumerate()
        .filter(|(w, _)| *w != i && *w != j)
        .map(|(_, t)| *t)
        .collect();
}

fn node_tensor(calc: &CalculusInstance, node: &Node, degree: usize) -> Result<Morphism, DiagramError> {
    let phase = match (&node.phase, node.color) {
        (None, _) => None,
        (Some((a, b)), Color::White) => Some(
            calc.white_phase(a, b)
                .map_err(|e| DiagramError::IllegalPhase(node.id.clone(), e.to_string()))?,
        ),
        (Some((a, b)), Color::Black) => Some(
            calc.black_phase_raw(a, b)
                .map_err(|e| DiagramError::IllegalPhase(node.id.clone(), e.to_string()))?,
        ),
    };
    let frob = match node.color {
        Color::White => &calc.zstar.white,
        Color::Black => &calc.zstar.black,
    };
    let s = spider(frob, 0, degree, phase.as_ref())
        .map_err(|e| DiagramError::IllegalPhase(node.id.clone(), e.to_string()))?;
    match node.color {
        Color::White => Ok(s),
        Color::Black => {
            // a dualizer on every leg
            let mut out = s;
            let d = calc.dualizer();
            let mut stack = Morphism::empty(calc.dim());
            for _ in 0..degree {
                stack = stack.tensor(d)?;
            }
            if degree > 0 {
                out = stack.compose(&out)?;
            }
            Ok(out)
        }
    }
}

/// Evaluate a diagram in a calculus, contracting edges in the given order
/// (indices into `d.edges`); `None` means declared order. The result does
/// not depend on the order.
pub fn evaluate_with_order(
    diagram: &Diagram,
    calc: &CalculusInstance,
    order: Option<&[usize]>,
) -> Result<Morphism, DiagramError> {
    diagram.validate()?;
    let d = calc.dim();
    let cap = calc.zstar.white_compact().cap;
    let cup = calc.zstar.white_compact().cup;

    // assign each node port a wire slot, ordered by (node, port number)
    let mut node_ports: Vec<Vec<usize>> = vec![Vec::new(); diagram.nodes.len()]; // ports sorted
    for (a, b) in &diagram.edges {
        for e in [a, b] {
            if let Endpoint::Port { node, port } = e {
                node_ports[*node].push(*port);
            }
        }
    }
    for ports in &mut node_ports {
        ports.sort_unstable();
    }

    // build factors: one per node, one cup per boundary-boundary edge
    let mut factors: Vec<Factor> = Vec::new();
    let budget_check = |m: &Morphism| -> Result<(), DiagramError> {
        let e = (m.rows() as u128) * (m.cols() as u128);
        if e > MAX_TENSOR_ENTRIES {
            Err(DiagramError::TooLarge(e))
        } else {
            Ok(())
        }
    };
    let wire_of = |e: &Endpoint, edge_idx: usize| -> WireTag {
        match e {
            Endpoint::Port { .. } => WireTag::Edge(edge_idx),
            Endpoint::In(k) => WireTag::BoundaryIn(*k),
            Endpoint::Out(k) => WireTag::BoundaryOut(*k),
        }
    };
    for (ni, node) in diagram.nodes.iter().enumerate() {
        let degree = node_ports[ni].len();
        let state = node_tensor(calc, node, degree)?;
        budget_check(&state)?;
        // wire w of the node = its w-th smallest port; tag by the edge side
        let mut wires = Vec::with_capacity(degree);
        for &port in &node_ports[ni] {
            // find the edge touching this port and the opposite endpoint
            let (edge_idx, a, b) = diagram
                .edges
                .iter()
                .enumerate()
                .find_map(|(i, (a, b))| {
                    let hit = |e: &Endpoint| {
                        matches!(e, Endpoint::Port { node, port: p } if *node == ni && *p == port)
                    };
                    if hit(a) || hit(b) {
                        Some((i, a.clone(), b.clone()))
                    } else {
                        None
                    }
                })
                .expect("validated port has an edge");
            let this = Endpoint::Port { node: ni, port };
            let other = if a == this { b } else { a };
            wires.push(match other {
                Endpoint::In(k) => WireTag::BoundaryIn(k),
                Endpoint::Out(k) => WireTag::BoundaryOut(k),
                Endpoint::Port { .. } => WireTag::Edge(edge_idx),
            });
        }
        factors.push(Factor { state, wires });
    }
    for (i, (a, b)) in diagram.edges.iter().enumerate() {
        let boundary_only = !matches!(a, Endpoint::Port { .. }) && !matches!(b, Endpoint::Port { .. });
        if boundary_only {
            factors.push(Factor {
                state: cup.clone(),
                wires: vec![wire_of(a, i), wire_of(b, i)],
            });
        }
    }

    // contract node-node edges in the requested order
    let default_order: Vec<usize> = (0..diagram.edges.len()).collect();
    let order = order.unwrap_or(&default_order);
    for &edge_idx in order {
        let (a, b) = &diagram.edges[edge_idx];
        let both_ports =
            matches!(a, Endpoint::Port { .. }) && matches!(b, Endpoint::Port { .. });
        if !both_ports {
            continue;
        }
        // find the one or two factors carrying this edge's wires
        let holders: Vec<usize> = factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.wires.contains(&WireTag::Edge(edge_idx)))
            .map(|(i, _)| i)
            .collect();
        let target = match holders.as_slice() {
            [single] => *single,
            [first, second] => {
                let second_factor = factors.remove(*second);
                let first_factor = &mut factors[*first];
                first_factor.state = first_factor.state.tensor(&second_factor.state)?;
                budget_check(&first_factor.state)?;
                first_factor.wires.extend(second_factor.wires);
                *first
            }
            _ => unreachable!("an edge has exactly two endpoints"),
        };
        let f = &mut factors[target];
        let i = f.wires.iter().position(|w| *w == WireTag::Edge(edge_idx)).unwrap();
        let j = f.wires.iter().rposition(|w| *w == WireTag::Edge(edge_idx)).unwrap();
        debug_assert_ne!(i, j, "an edge occupies two wire slots");
        contract_in_factor(f, i, j, &cap);
    }

    // tensor the remaining factors together
    let mut total = Factor { state: Morphism::empty(d), wires: Vec::new() };
    for f in factors {
        total.state = total.state.tensor(&f.state)?;
        budget_check(&total.state)?;
        total.wires.extend(f.wires);
    }

    // order wires as [out.1 .. out.m, in.1 .. in.n]
    let k = total.wires.len();
    debug_assert_eq!(k, diagram.inputs + diagram.outputs);
    let mut perm = Vec::with_capacity(k);
    for t in 1..=diagram.outputs {
        let pos = total
            .wires
            .iter()
            .position(|w| *w == WireTag::BoundaryOut(t))
            .expect("validated boundary");
        perm.push(pos + 1);
    }
    for t in 1..=diagram.inputs {
        let pos = total
            .wires
            .iter()
            .position(|w| *w == WireTag::BoundaryIn(t))
            .expect("validated boundary");
        perm.push(pos + 1);
    }
    let arranged = if k == 0 {
        total.state
    } else {
        Morphism::permutation(d, &perm)
            .expect("wire arrangement is a bijection")
            .compose(&total.state)?
    };

    // reshape to n -> m, then bend the inputs with the cap
    let mut reshaped = Morphism::zeros(d, diagram.inputs, diagram.outputs);
    let cols = reshaped.cols();
    for o in 0..reshaped.rows() {
        for s in 0..cols {
            reshaped.set(o, s, arranged.get(o * cols + s, 0).clone());
        }
    }
    if diagram.inputs == 0 {
        return Ok(reshaped);
    }
    // N[s, x] = cap(s, x) as a 1 -> 1 morphism, tensored over all inputs
    let mut n1 = Morphism::zeros(d, 1, 1);
    for s in 0..d {
        for x in 0..d {
            n1.set(s, x, cap.get(0, s * d + x).clone());
        }
    }
    let mut bend_all = n1.clone();
    for _ in 1..diagram.inputs {
        bend_all = bend_all.tensor(&n1)?;
    }
    Ok(reshaped.compose(&bend_all)?)
}

pub fn evaluate(diagram: &Diagram, calc: &CalculusInstance) -> Result<Morphism, DiagramError> {
    evaluate_with_order(diagram, calc, None)
}

// ---------------------------------------------------------------------------
// Bending
// ---------------------------------------------------------------------------

/// A boundary reassignment: move one input to an output position or back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BendMove {
    /// input `input` (1-based) becomes the output at position `at` (1-based)
    InputToOutput { input: usize, at: usize },
    /// output `output` becomes the input at position `at`
    OutputToInput { output: usize, at: usize },
}

/// Reassign one boundary port of the diagram; pure graph surgery.
pub fn bend(diagram: &Diagram, mv: &BendMove) -> Result<Diagram, DiagramError> {
    let mut out = diagram.clone();
    match *mv {
        BendMove::InputToOutput { input, at } => {
            if input == 0 || input > diagram.inputs || at == 0 || at > diagram.outputs + 1 {
                return Err(DiagramError::BadMove(format!(
                    "input {input} -> output position {at}"
                )));
            }
            out.inputs -= 1;
            out.outputs += 1;
            for (a, b) in &mut out.edges {
                for e in [&mut *a, &mut *b] {
                    *e = match e.clone() {
                        Endpoint::In(k) if k == input => Endpoint::Out(at),
                        Endpoint::In(k) if k > input => Endpoint::In(k - 1),
                        Endpoint::Out(k) if k >= at => Endpoint::Out(k + 1),
                        other => other,
                    };
                }
            }
        }
        BendMove::OutputToInput { output, at } => {
            if output == 0 || output > diagram.outputs || at == 0 || at > diagram.inputs + 1 {
                return Err(DiagramError::BadMove(format!(
                    "output {output} -> input position {at}"
                )));
            }
            out.inputs += 1;
            out.outputs -= 1;
            for (a, b) in &mut out.edges {
                for e in [&mut *a, &mut *b] {
                    *e = match e.clone() {
                        Endpoint::Out(k) if k == output => Endpoint::In(at),
                        Endpoint::Out(k) if k > output => Endpoint::Out(k - 1),
                        Endpoint::In(k) if k >= at => Endpoint::In(k + 1),
                        other => other,
                    };
                }
            }
        }
    }
    out.validate()?;
    Ok(out)
}

/// The matrix-level counterpart of [`bend`]: compose with the white cup or
/// cap on the moved port. Used as the oracle for topology invariance.
pub fn bend_morphism(
    m: &Morphism,
    mv: &BendMove,
    calc: &CalculusInstance,
) -> Result<Morphism, DiagramError> {
    let d = calc.dim();
    let compact = calc.zstar.white_compact();
    match *mv {
        BendMove::InputToOutput { input, at } => {
            let n = m.inputs();
            let mm = m.outputs();
            if input == 0 || input > n || at == 0 || at > mm + 1 {
                return Err(DiagramError::BadMove("out of range".into()));
            }
            let mut out = Morphism::zeros(d, n - 1, mm + 1);
            let cup = &compact.cup; // d^2 x 1
            for o_new in 0..out.rows() {
                // split the new output index into (o_old, t at position `at`)
                let digits = to_digits(o_new, d, mm + 1);
                let t = digits[at - 1];
                let mut o_old = 0usize;
                for (w, &dig) in digits.iter().enumerate() {
                    if w != at - 1 {
                        o_old = o_old * d + dig;
                    }
                }
                for x_new in 0..out.cols() {
                    let xdigits = to_digits(x_new, d, n - 1);
                    let mut acc = ExactScalar::zero();
                    for s in 0..d {
                        let weight = cup.get(s * d + t, 0);
                        if weight.is_zero() {
                            continue;
                        }
                        let mut x_old = 0usize;
                        let mut xi = 0usize;
                        for w in 0..n {
                            let dig = if w == input - 1 {
                                s
                            } else {
                                let v = xdigits[xi];
                                xi += 1;
                                v
                            };
                            x_old = x_old * d + dig;
                        }
                        acc = &acc + &(weight * m.get(o_old, x_old));
                    }
                    out.set(o_new, x_new, acc);
                }
            }
            Ok(out)
        }
        BendMove::OutputToInput { output, at } => {
            let n = m.inputs();
            let mm = m.outputs();
            if output == 0 || output > mm || at == 0 || at > n + 1 {
                return Err(DiagramError::BadMove("out of range".into()));
            }
            let mut out = Morphism::zeros(d, n + 1, mm - 1);
            let cap = &compact.cap; // 1 x d^2
            for o_new in 0..out.rows() {
                let odigits = to_digits(o_new, d, mm - 1);
                for x_new in 0..out.cols() {
                    let xdigits = to_digits(x_new, d, n + 1);
                    let t = xdigits[at - 1];
                    let mut x_old = 0usize;
                    for (w, &dig) in xdigits.iter().enumerate() {
                        if w != at - 1 {
                            x_old = x_old * d + dig;
                        }
                    }
                    let mut acc = ExactScalar::zero();
                    for s in 0..d {
                        let weight = cap.get(0, s * d + t);
                        if weight.is_zero() {
                            continue;
                        }
                        let mut o_old = 0usize;
                        let mut oi = 0usize;
                        for w in 0..mm {
                            let dig = if w == output - 1 {
                                s
                            } else {
                                let v = odigits[oi];
                                oi += 1;
                                v
                            };
                            o_old = o_old * d + dig;
                        }
                        acc = &acc + &(weight * m.get(o_old, x_old));
                    }
                    out.set(o_new, x_new, acc);
                }
            }
            Ok(out)
        }
    }
}

fn to_digits(mut idx: usize, d: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0usize; k];
    for w in (0..k).rev() {
        digits[w] = idx % d;
        idx /= d;
    }
    digits
}

// ---------------------------------------------------------------------------
// Isomorphism of boundary-labelled multigraphs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoReport {
    pub isomorphic: bool,
    pub evaluations_equal: bool,
}

/// Are the diagrams isomorphic as boundary-labelled multigraphs with node
/// colors and phases preserved (port numbers are immaterial)?
pub fn diagrams_isomorphic(d1: &Diagram, d2: &Diagram) -> bool {
    if d1.nodes.len() != d2.nodes.len()
        || d1.inputs != d2.inputs
        || d1.outputs != d2.outputs
        || d1.edges.len() != d2.edges.len()
    {
        return false;
    }
    let n = d1.nodes.len();
    let mut perm: Vec<usize> = (0..n).collect();
    // edge fingerprint under a node mapping, ports erased
    let key = |d: &Diagram, map: &dyn Fn(usize) -> usize| -> Vec<(String, String)> {
        let ep = |e: &Endpoint| match e {
            Endpoint::Port { node, .. } => format!("n{}", map(*node)),
            Endpoint::In(k) => format!("in{k}"),
            Endpoint::Out(k) => format!("out{k}"),
        };
        let mut edges: Vec<(String, String)> = d
            .edges
            .iter()
            .map(|(a, b)| {
                let (x, y) = (ep(a), ep(b));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort();
        edges
    };
    let target = key(d2, &|i| i);
    permute_search(&mut perm, 0, &mut |p: &[usize]| {
        // node data must match under the bijection
        for (i, &j) in p.iter().enumerate() {
            if d1.nodes[i].color != d2.nodes[j].color || d1.nodes[i].phase != d2.nodes[j].phase {
                return false;
            }
        }
        key(d1, &|i| p[i]) == target
    })
}

fn permute_search(perm: &mut Vec<usize>, k: usize, accept: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return accept(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute_search(perm, k + 1, accept) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Compare two diagrams: isomorphic graphs must evaluate equally.
pub fn isomorphic_invariance(
    d1: &Diagram,
    d2: &Diagram,
    calc: &CalculusInstance,
) -> Result<IsoReport, DiagramError> {
    let isomorphic = diagrams_isomorphic(d1, d2);
    let e1 = evaluate(d1, calc)?;
    let e2 = evaluate(d2, calc)?;
    Ok(IsoReport { isomorphic, evaluations_equal: e1 == e2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{tabulated_instance, TabulatedCalculus};

    fn zw() -> CalculusInstance {
        tabulated_instance(TabulatedCalculus::ZwOriginal, &[]).unwrap()
    }

    fn zh() -> CalculusInstance {
        tabulated_instance(TabulatedCalculus::ZhOriginal, &[]).unwrap()
    }

    #[test]
    fn identity_wire() {
        let d: Diagram = "boundary in 1 out 1\nedge in.1 out.1\n".parse().unwrap();
        assert_eq!(evaluate(&d, &zw()).unwrap(), Morphism::identity(2));
    }

    #[test]
    fn single_white_node_is_a_wire() {
        let d: Diagram = "\
boundary in 1 out 1
node v white
edge in.1 v.1
edge v.2 out.1
"
        .parse()
        .unwrap();
        assert_eq!(evaluate(&d, &zw()).unwrap(), Morphism::identity(2));
    }

    #[test]
    fn black_unit_in_zw() {
        let d: Diagram = "\
boundary in 0 out 1
node v black
edge v.1 out.1
"
        .parse()
        .unwrap();
        let m = evaluate(&d, &zw()).unwrap();
        assert_eq!(m, Morphism::from_int_rows(2, 0, 1, &[&[0], &[1]]));
    }

    #[test]
    fn white_spiders_fuse() {
        let fused: Diagram = "\
boundary in 1 out 1
node v white phase 2 3
node w white phase 5 7
edge in.1 v.1
edge v.2 w.1
edge w.2 out.1
"
        .parse()
        .unwrap();
        let single: Diagram = "\
boundary in 1 out 1
node u white phase 10 21
edge in.1 u.1
edge u.2 out.1
"
        .parse()
        .unwrap();
        let calc = zw();
        assert_eq!(evaluate(&fused, &calc).unwrap(), evaluate(&single, &calc).unwrap());
    }

    #[test]
    fn black_node_bent_is_the_black_coproduct() {
        // black node with 1 input and 2 outputs = the modified coproduct
        let d: Diagram = "\
boundary in 1 out 2
node v black
edge in.1 v.1
edge v.2 out.1
edge v.3 out.2
"
        .parse()
        .unwrap();
        let m = evaluate(&d, &zw()).unwrap();
        let expect = Morphism::from_int_rows(2, 1, 2, &[&[0, 1], &[1, 0], &[1, 0], &[0, 0]]);
        assert_eq!(m, expect);
        // and 2 inputs, 1 output = the modified product
        let d2: Diagram = "\
boundary in 2 out 1
node v black
edge in.1 v.1
edge in.2 v.2
edge v.3 out.1
"
        .parse()
        .unwrap();
        let m2 = evaluate(&d2, &zw()).unwrap();
        assert_eq!(m2, Morphism::from_int_rows(2, 2, 1, &[&[0, 1, 1, 0], &[1, 0, 0, 0]]));
    }

    #[test]
    fn self_loop_contracts_with_the_white_cap() {
        // a white node with a self-loop and two boundary legs: the loop is
        // contracted against the node's own spider, and for the copy algebra
        // cap(x, x) = 1, so the loop disappears entirely
        let looped: Diagram = "\
boundary in 1 out 1
node v white
edge in.1 v.1
edge v.2 out.1
edge v.3 v.4
"
        .parse()
        .unwrap();
        let m = evaluate(&looped, &zw()).unwrap();
        assert_eq!(m, Morphism::identity(2));
        // on a black ZW node the loop evaluates through the W cap instead
        // and annihilates the spider: cap(x, y) weights only x != y, which
        // the all-equal black 2-spider never produces
        let black_loop: Diagram = "\
boundary in 1 out 1
node v black
edge in.1 v.1
edge v.2 out.1
edge v.3 v.4
"
        .parse()
        .unwrap();
        let bm = evaluate(&black_loop, &zw()).unwrap();
        // computed independently: legs of the degree-4 black W spider with a
        // dualizer on each leg, two of them joined by the white cap
        let w4 = {
            let frob = &zw().zstar.black;
            let s = spider(frob, 0, 4, None).unwrap();
            let dd = zw().dualizer().tensor(zw().dualizer()).unwrap();
            let dddd = dd.tensor(&dd).unwrap();
            dddd.compose(&s).unwrap()
        };
        let cap = zw().zstar.white_compact().cap;
        let id2 = Morphism::identity_wires(2, 2);
        let contracted = id2.tensor(&cap).unwrap().compose(&w4).unwrap();
        // reshape 0->2 into 1->1 against the white cap, same as evaluate does
        let mut expected = Morphism::zeros(2, 1, 1);
        for o in 0..2 {
            for s in 0..2 {
                let mut acc = ExactScalar::zero();
                for t in 0..2 {
                    acc = &acc + &(contracted.get(o * 2 + t, 0) * cap.get(0, t * 2 + s));
                }
                expected.set(o, s, acc);
            }
        }
        assert_eq!(bm, expected);
    }

    #[test]
    fn evaluation_is_contraction_order_independent() {
        let d: Diagram = "\
boundary in 2 out 2
node a white phase 2 -1
node b black
node c white
edge in.1 a.1
edge in.2 b.1
edge a.2 b.2
edge a.3 c.1
edge b.3 c.2
edge c.3 out.1
edge c.4 out.2
"
        .parse()
        .unwrap();
        let calc = zh();
        let base = evaluate(&d, &calc).unwrap();
        let orders: Vec<Vec<usize>> = vec![
            vec![6, 5, 4, 3, 2, 1, 0],
            vec![2, 4, 3, 0, 1, 5, 6],
            vec![4, 2, 0, 6, 5, 1, 3],
        ];
        for order in orders {
            assert_eq!(evaluate_with_order(&d, &calc, Some(&order)).unwrap(), base);
        }
    }

    #[test]
    fn bend_round_trip() {
        let d: Diagram = "\
boundary in 1 out 1
node v white phase 3 5
edge in.1 v.1
edge v.2 out.1
"
        .parse()
        .unwrap();
        let calc = zw();
        let m = evaluate(&d, &calc).unwrap();
        let mv = BendMove::InputToOutput { input: 1, at: 1 };
        let bent = bend(&d, &mv).unwrap();
        assert_eq!(bent.inputs, 0);
        assert_eq!(bent.outputs, 2);
        let bent_eval = evaluate(&bent, &calc).unwrap();
        assert_eq!(bent_eval, bend_morphism(&m, &mv, &calc).unwrap());
        // bending back returns the original matrix
        let back = bend(&bent, &BendMove::OutputToInput { output: 1, at: 1 }).unwrap();
        assert_eq!(evaluate(&back, &calc).unwrap(), m);
    }

    #[test]
    fn isomorphism_and_leg_permutation() {
        let d1: Diagram = "\
boundary in 0 out 2
node v white
edge v.1 out.1
edge v.2 out.2
"
        .parse()
        .unwrap();
        // same graph, node renamed and legs permuted
        let d2: Diagram = "\
boundary in 0 out 2
node w white
edge w.1 out.2
edge w.2 out.1
"
        .parse()
        .unwrap();
        let calc = zw();
        let r = isomorphic_invariance(&d1, &d2, &calc).unwrap();
        assert!(r.isomorphic);
        assert!(r.evaluations_equal);
        // color swap changes the evaluation in ZW
        let d3: Diagram = "\
boundary in 0 out 2
node v black
edge v.1 out.1
edge v.2 out.2
"
        .parse()
        .unwrap();
        let r = isomorphic_invariance(&d1, &d3, &calc).unwrap();
        assert!(!r.isomorphic);
        assert!(!r.evaluations_equal);
    }

    #[test]
    fn parser_rejects_dangling_ports() {
        let bad = "boundary in 1 out 1\nedge in.1 out.2\n";
        let err = bad.parse::<Diagram>().unwrap_err();
        assert!(matches!(err, DiagramError::Parse { .. }), "{err}");
        let dangling = "boundary in 2 out 1\nedge in.1 out.1\n";
        assert!(dangling.parse::<Diagram>().is_err());
        let dup = "boundary in 1 out 1\nnode v white\nedge in.1 v.1\nedge out.1 v.1\n";
        assert!(dup.parse::<Diagram>().is_err());
        let unknown = "boundary in 1 out 1\nedge in.1 w.1\n";
        assert!(unknown.parse::<Diagram>().is_err());
        let nophase = "boundary in 0 out 1\nnode v white phase 1\nedge v.1 out.1\n";
        assert!(nophase.parse::<Diagram>().is_err());
    }

    #[test]
    fn diagram_text_round_trip() {
        let text = "\
boundary in 1 out 1
node v white phase 1/2+i 3
edge in.1 v.1
edge v.2 out.1
";
        let d: Diagram = text.parse().unwrap();
        assert_eq!(d.to_string(), text);
    }
}
