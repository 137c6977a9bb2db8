//! Rooted-tree diagrams for products of `1/(a - b)`.
//!
//! Every edge contributes `1/(child - parent)`, a double edge `=` puts
//! `child - parent` in the numerator instead. The root `*` stands for 0 and
//! a root `z:m` for an anchor. A bare color `i` is `t^(i)` with the next free
//! index in pre-order; `@var` draws an extra edge to an existing node, which
//! is how pictures with cycles are written.
//!
//! ```text
//! 1/2 sym[(1,2,2)](*(2(3(@t:2:2), 3(@t:2:2), =t:2:2(1))))
//! asym[(2)](z:1(1), z:2(1))
//! ```

mod corpus;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::canonical::asym_log_wedge;
use crate::polyrat::{sym, RatFun, Var, Weight, Q};

pub use corpus::{corpus, verify_corpus, CorpusEntry, CorpusTarget, CORPUS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{0} labels more than one vertex")]
    RepeatedVariable(Var),
    #[error("edge from {0} to itself")]
    SelfLoop(Var),
    #[error("@{0} does not name a vertex")]
    UnknownReference(Var),
    #[error("diagram content {got} does not match the weight {weight}")]
    WeightMismatch { weight: Weight, got: Weight },
    #[error("asym needs one single tree edge per vertex")]
    NotAForest,
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wrapper {
    Sym,
    Asym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    /// Colored vertex, indexed automatically.
    Color(u32),
    Var(Var),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Node(Node),
    Ref(Var),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub double: bool,
    pub target: Target,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: Label,
    pub children: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// `None` is the origin `*`.
    pub anchor: Option<Var>,
    pub children: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramTree {
    pub prefactor: Option<Q>,
    pub wrapper: Option<(Wrapper, Weight)>,
    pub roots: Vec<Root>,
}

/// An edge with resolved endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolvedEdge {
    pub parent: Option<Var>,
    pub child: Var,
    pub double: bool,
    /// False for `@` edges.
    pub tree: bool,
}

impl DiagramTree {
    /// Vertex variables in pre-order, then all edges in pre-order.
    pub fn resolve(&self) -> Result<(Vec<Var>, Vec<ResolvedEdge>), DiagramError> {
        let mut explicit = BTreeSet::new();
        let mut anchors = BTreeSet::new();
        for root in &self.roots {
            if let Some(z) = root.anchor {
                if !anchors.insert(z) {
                    return Err(DiagramError::RepeatedVariable(z));
                }
            }
            for e in &root.children {
                collect_explicit(e, &mut explicit)?;
            }
        }
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        let mut vars = Vec::new();
        let mut edges = Vec::new();
        for root in &self.roots {
            for e in &root.children {
                walk(e, root.anchor, &explicit, &mut next, &mut vars, &mut edges);
            }
        }
        for e in &edges {
            if !e.tree && !vars.contains(&e.child) {
                return Err(DiagramError::UnknownReference(e.child));
            }
            if e.parent == Some(e.child) {
                return Err(DiagramError::SelfLoop(e.child));
            }
        }
        Ok((vars, edges))
    }

    /// Multidegree of the vertex variables.
    pub fn content(&self) -> Result<Weight, DiagramError> {
        let (vars, _) = self.resolve()?;
        let rank = self.wrapper.as_ref().map_or(0, |(_, k)| k.rank());
        let rank = vars.iter().filter_map(|v| v.color()).max().map_or(rank, |c| rank.max(c as usize)).max(1);
        let mut parts = alloc::vec![0; rank];
        for v in &vars {
            if let Some(c) = v.color() {
                parts[c as usize - 1] += 1;
            }
        }
        Ok(Weight::new(parts).expect("rank is positive"))
    }

    fn check(&self) -> Result<(), DiagramError> {
        let (vars, _) = self.resolve()?;
        if let Some((_, k)) = &self.wrapper {
            let mut expected = k.variables();
            let mut got = vars.clone();
            expected.sort();
            got.sort();
            if expected != got {
                return Err(DiagramError::WeightMismatch { weight: k.clone(), got: self.content()? });
            }
        }
        Ok(())
    }
}

fn collect_explicit(e: &Edge, out: &mut BTreeSet<Var>) -> Result<(), DiagramError> {
    if let Target::Node(n) = &e.target {
        if let Label::Var(v) = n.label {
            if !out.insert(v) {
                return Err(DiagramError::RepeatedVariable(v));
            }
        }
        for c in &n.children {
            collect_explicit(c, out)?;
        }
    }
    Ok(())
}

fn walk(
    e: &Edge,
    parent: Option<Var>,
    explicit: &BTreeSet<Var>,
    next: &mut BTreeMap<u32, u32>,
    vars: &mut Vec<Var>,
    edges: &mut Vec<ResolvedEdge>,
) {
    match &e.target {
        Target::Ref(v) => edges.push(ResolvedEdge { parent, child: *v, double: e.double, tree: false }),
        Target::Node(n) => {
            let v = match n.label {
                Label::Var(v) => v,
                Label::Color(c) => {
                    let slot = next.entry(c).or_insert(1);
                    while explicit.contains(&Var::t(c, *slot)) {
                        *slot += 1;
                    }
                    *slot += 1;
                    Var::t(c, *slot - 1)
                }
            };
            vars.push(v);
            edges.push(ResolvedEdge { parent, child: v, double: e.double, tree: true });
            for c in &n.children {
                walk(c, Some(v), explicit, next, vars, edges);
            }
        }
    }
}

/// The rational function a diagram stands for.
pub fn diagram_to_ratfun(d: &DiagramTree) -> Result<RatFun, DiagramError> {
    d.check()?;
    let (_, edges) = d.resolve()?;
    let mut f = match &d.wrapper {
        Some((Wrapper::Asym, k)) => {
            if edges.iter().any(|e| e.double || !e.tree) {
                return Err(DiagramError::NotAForest);
            }
            let factors: Vec<(Var, Option<Var>)> = edges.iter().map(|e| (e.child, e.parent)).collect();
            asym_log_wedge(&factors, k).map_err(|_| DiagramError::NotAForest)?
        }
        wrapper => {
            let mut f = RatFun::one();
            for e in &edges {
                f = if e.double {
                    f.mul(&RatFun::diff(Some(e.child), e.parent))
                } else {
                    f.mul(&RatFun::inv_diff(Some(e.child), e.parent).expect("self-loops are rejected"))
                };
            }
            match wrapper {
                Some((_, k)) => sym(&f, k),
                None => f,
            }
        }
    };
    if let Some(c) = &d.prefactor {
        f = f.scale(c);
    }
    Ok(f)
}

/// Parses the diagram syntax described in the module docs.
pub fn parse_diagram(text: &str) -> Result<DiagramTree, DiagramError> {
    let mut p = Parser { src: text, pos: 0 };
    let d = p.diagram()?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    d.check()?;
    Ok(d)
}

impl FromStr for DiagramTree {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_diagram(s)
    }
}

/// Canonical text form; [`parse_diagram`] reads it back unchanged.
pub fn render(d: &DiagramTree) -> String {
    alloc::format!("{d}")
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, what: &str) -> DiagramError {
        DiagramError::Syntax { offset: self.pos, message: String::from(what) }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        while self.rest().starts_with(' ') {
            self.pos += 1;
        }
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DiagramError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{c}'")))
        }
    }

    fn token(&mut self, allowed: impl Fn(char) -> bool) -> &'a str {
        self.peek();
        let start = self.pos;
        while self.rest().starts_with(&allowed) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn diagram(&mut self) -> Result<DiagramTree, DiagramError> {
        let mut prefactor = None;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '-') {
            let start = self.pos;
            let tok = self.token(|c| c.is_ascii_digit() || c == '-' || c == '/');
            let q: Q = tok.parse().map_err(|_| DiagramError::Syntax {
                offset: start,
                message: String::from("bad prefactor"),
            })?;
            prefactor = Some(q);
        }
        self.peek();
        let wrapper = if self.rest().starts_with("sym[") {
            Some(Wrapper::Sym)
        } else if self.rest().starts_with("asym[") {
            Some(Wrapper::Asym)
        } else {
            None
        };
        let Some(w) = wrapper else {
            return Ok(DiagramTree { prefactor, wrapper: None, roots: self.forest()? });
        };
        self.token(|c| c.is_ascii_alphabetic());
        self.expect('[')?;
        let start = self.pos;
        let tok = self.token(|c| c != ']');
        let k: Weight = tok.parse().map_err(|_| DiagramError::Syntax {
            offset: start,
            message: String::from("bad weight"),
        })?;
        self.expect(']')?;
        self.expect('(')?;
        let roots = self.forest()?;
        self.expect(')')?;
        Ok(DiagramTree { prefactor, wrapper: Some((w, k)), roots })
    }

    fn forest(&mut self) -> Result<Vec<Root>, DiagramError> {
        let mut roots = alloc::vec![self.root()?];
        while self.eat(',') {
            roots.push(self.root()?);
        }
        Ok(roots)
    }

    fn root(&mut self) -> Result<Root, DiagramError> {
        let anchor = match self.peek() {
            Some('*') => {
                self.pos += 1;
                None
            }
            Some('z') => match self.var()? {
                v @ Var::Z(_) => Some(v),
                _ => unreachable!(),
            },
            _ => return Err(self.error("expected a root '*' or 'z:m'")),
        };
        Ok(Root { anchor, children: self.children()? })
    }

    fn children(&mut self) -> Result<Vec<Edge>, DiagramError> {
        let mut out = Vec::new();
        if self.eat('(') {
            out.push(self.edge()?);
            while self.eat(',') {
                out.push(self.edge()?);
            }
            self.expect(')')?;
        }
        Ok(out)
    }

    fn var(&mut self) -> Result<Var, DiagramError> {
        let start = self.pos;
        let tok = self.token(|c| c.is_ascii_alphanumeric() || c == ':');
        tok.parse().map_err(|_| DiagramError::Syntax { offset: start, message: String::from("bad variable") })
    }

    fn t_var(&mut self) -> Result<Var, DiagramError> {
        self.peek();
        let start = self.pos;
        match self.var()? {
            v @ Var::T(..) => Ok(v),
            Var::Z(_) => Err(DiagramError::Syntax { offset: start, message: String::from("anchors only label roots") }),
        }
    }

    fn edge(&mut self) -> Result<Edge, DiagramError> {
        let double = self.eat('=');
        if self.eat('@') {
            return Ok(Edge { double, target: Target::Ref(self.t_var()?) });
        }
        let label = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let tok = self.token(|c| c.is_ascii_digit());
                match tok.parse::<u32>() {
                    Ok(c) if c > 0 => Label::Color(c),
                    _ => return Err(DiagramError::Syntax { offset: start, message: String::from("bad color") }),
                }
            }
            Some('t') | Some('z') => Label::Var(self.t_var()?),
            _ => return Err(self.error("expected a vertex")),
        };
        Ok(Edge { double, target: Target::Node(Node { label, children: self.children()? }) })
    }
}

fn fmt_children(f: &mut fmt::Formatter<'_>, children: &[Edge]) -> fmt::Result {
    if children.is_empty() {
        return Ok(());
    }
    write!(f, "(")?;
    for (n, e) in children.iter().enumerate() {
        if n > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.double {
            write!(f, "=")?;
        }
        match &self.target {
            Target::Ref(v) => write!(f, "@{v}"),
            Target::Node(n) => {
                match n.label {
                    Label::Color(c) => write!(f, "{c}")?,
                    Label::Var(v) => write!(f, "{v}")?,
                }
                fmt_children(f, &n.children)
            }
        }
    }
}

impl fmt::Display for DiagramTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = &self.prefactor {
            write!(f, "{q} ")?;
        }
        if let Some((w, k)) = &self.wrapper {
            let name = match w {
                Wrapper::Sym => "sym",
                Wrapper::Asym => "asym",
            };
            write!(f, "{name}[{k}](")?;
        }
        for (n, root) in self.roots.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            match root.anchor {
                Some(z) => write!(f, "{z}")?,
                None => write!(f, "*")?,
            }
            fmt_children(f, &root.children)?;
        }
        if self.wrapper.is_some() {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn eval(s: &str) -> RatFun {
        diagram_to_ratfun(&parse_diagram(s).unwrap()).unwrap()
    }

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn two_leaves() {
        assert_eq!(eval("*(1,1)"), rf("1/(t:1:1*t:1:2)"));
        assert_eq!(eval("*(1(2), 3)"), rf("1/(t:1:1*(t:2:1-t:1:1)*t:3:1)"));
    }

    #[test]
    fn auto_indices_skip_explicit_ones() {
        let d = parse_diagram("*(1(t:1:1), 1)").unwrap();
        let (vars, _) = d.resolve().unwrap();
        assert_eq!(vars, vec![Var::t(1, 2), Var::t(1, 1), Var::t(1, 3)]);
    }

    #[test]
    fn double_edges_and_references() {
        // A diamond closed by a double edge.
        let f = eval("*(1(2(@t:1:2), 3(@t:1:2), =t:1:2))");
        let g = rf("(t:1:2-t:1:1)/(t:1:1*(t:2:1-t:1:1)*(t:3:1-t:1:1)*(t:1:2-t:2:1)*(t:1:2-t:3:1))");
        assert_eq!(f, g);
    }

    #[test]
    fn asym_of_a_chain_is_a_product_of_poles() {
        assert_eq!(eval("asym[(2)](z:1(1(1)))"), eval("z:1(1, 1)"));
        assert_eq!(eval("asym[(2)](z:1(1), z:2(1))"), eval("sym[(2)](z:1(1), z:2(1))"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_diagram("*(1,"), Err(DiagramError::Syntax { offset: 4, .. })));
        assert!(matches!(parse_diagram("*(t:1:1, t:1:1)"), Err(DiagramError::RepeatedVariable(_))));
        assert!(matches!(parse_diagram("*(t:1:1(@t:1:1))"), Err(DiagramError::SelfLoop(_))));
        assert!(matches!(parse_diagram("*(1(@t:2:1))"), Err(DiagramError::UnknownReference(_))));
        assert!(matches!(parse_diagram("sym[(2)](*(1))"), Err(DiagramError::WeightMismatch { .. })));
        assert!(matches!(parse_diagram("*(z:1)"), Err(DiagramError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_diagram("z:1, z:1"), Err(DiagramError::RepeatedVariable(_))));
    }

    #[test]
    fn render_round_trips() {
        for s in ["1/2 sym[(1,2,2)](*(2(3(@t:2:2), 3(@t:2:2), =t:2:2(1))))", "z:1(1, 1), z:2", "-3 *(t:2:1(1))"] {
            let d = parse_diagram(s).unwrap();
            assert_eq!(render(&d), s);
            assert_eq!(parse_diagram(&render(&d)).unwrap(), d);
        }
    }
}
