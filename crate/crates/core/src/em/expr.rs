use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::EMSimplex;
use crate::abelian::FgAbelian;
use crate::error::{Error, Result};

/// A k-invariant expression over the coordinates of the lower stages.
///
/// Text form (prefix s-expressions):
/// `zero`, `(coord N)`, `(sum E ...)`, `(scale K E)`, `(cup E E)`,
/// `(hom (q_1 .. q_s) ((a_11 .. a_1r) .. (a_s1 .. a_sr)) E)`.
/// `(coord N)` is the degree-`N` coordinate with values in `π_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum KExpr {
    Zero,
    Coord(usize),
    Sum(Vec<KExpr>),
    Scale(i64, Box<KExpr>),
    Cup(Box<KExpr>, Box<KExpr>),
    Hom { target: FgAbelian, matrix: Vec<Vec<i64>>, inner: Box<KExpr> },
}

impl KExpr {
    pub fn coord(n: usize) -> Self {
        KExpr::Coord(n)
    }

    pub fn cup(a: KExpr, b: KExpr) -> Self {
        KExpr::Cup(Box::new(a), Box::new(b))
    }

    pub fn scale(k: i64, e: KExpr) -> Self {
        KExpr::Scale(k, Box::new(e))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, KExpr::Zero)
    }

    /// Checks the expression against coordinate groups `groups[N-1] = π_N` and the expected
    /// target type, producing an evaluator.
    pub fn compile(&self, groups: &[FgAbelian], degree: usize, pi: &FgAbelian) -> Result<KInvariant> {
        let node = compile(self, groups)?;
        if let Some((d, g)) = node.ty() {
            if d != degree || &g != pi {
                return Err(Error::GroupMismatch(format!(
                    "expression {self} has degree {d} and coefficients {g}, expected degree {degree} and {pi}"
                )));
            }
        }
        Ok(KInvariant { expr: self.clone(), node, degree, pi: pi.clone() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CupMode {
    /// left factor is `Z`
    ScaleLeft,
    /// right factor is `Z`
    ScaleRight,
    Coordinatewise,
}

#[derive(Clone, Debug)]
enum Node {
    Zero,
    Coord { stage: usize, pi: FgAbelian },
    Sum(Vec<Node>, usize, FgAbelian),
    Scale(i64, Box<Node>, usize, FgAbelian),
    Cup { a: Box<Node>, b: Box<Node>, p: usize, mode: CupMode, degree: usize, pi: FgAbelian },
    Hom { matrix: Vec<Vec<i64>>, inner: Box<Node>, degree: usize, pi: FgAbelian },
}

impl Node {
    fn ty(&self) -> Option<(usize, FgAbelian)> {
        match self {
            Node::Zero => None,
            Node::Coord { stage, pi } => Some((*stage, pi.clone())),
            Node::Sum(_, d, pi) | Node::Scale(_, _, d, pi) => Some((*d, pi.clone())),
            Node::Cup { degree, pi, .. } | Node::Hom { degree, pi, .. } => Some((*degree, pi.clone())),
        }
    }

    /// Value on the face spanned by `face`; `None` stands for zero.
    fn value(&self, face: &[usize], lookup: &mut dyn FnMut(usize, &[usize]) -> Vec<i64>) -> Option<Vec<i64>> {
        match self {
            Node::Zero => None,
            Node::Coord { stage, .. } => {
                if face.windows(2).any(|w| w[0] >= w[1]) {
                    return None;
                }
                Some(lookup(*stage, face))
            }
            Node::Sum(terms, _, pi) => {
                let mut acc: Option<Vec<i64>> = None;
                for t in terms {
                    if let Some(v) = t.value(face, lookup) {
                        acc = Some(match acc {
                            None => v,
                            Some(a) => pi.add(&a, &v),
                        });
                    }
                }
                acc
            }
            Node::Scale(k, inner, _, pi) => inner.value(face, lookup).map(|v| {
                let mut w: Vec<i64> = v.iter().map(|x| x * k).collect();
                pi.reduce(&mut w);
                w
            }),
            Node::Cup { a, b, p, mode, pi, .. } => {
                let x = a.value(&face[..=*p], lookup)?;
                let y = b.value(&face[*p..], lookup)?;
                let mut w: Vec<i64> = match mode {
                    CupMode::ScaleLeft => y.iter().map(|v| x[0] * v).collect(),
                    CupMode::ScaleRight => x.iter().map(|v| v * y[0]).collect(),
                    CupMode::Coordinatewise => x.iter().zip(&y).map(|(u, v)| u * v).collect(),
                };
                pi.reduce(&mut w);
                Some(w)
            }
            Node::Hom { matrix, inner, pi, .. } => inner.value(face, lookup).map(|v| {
                let mut w: Vec<i64> = matrix.iter().map(|row| row.iter().zip(&v).map(|(a, x)| a * x).sum()).collect();
                pi.reduce(&mut w);
                w
            }),
        }
    }
}

fn compile(e: &KExpr, groups: &[FgAbelian]) -> Result<Node> {
    Ok(match e {
        KExpr::Zero => Node::Zero,
        KExpr::Coord(n) => {
            let pi = groups
                .get(n.wrapping_sub(1))
                .ok_or_else(|| Error::InvalidTower(format!("coordinate {n} refers to a missing stage")))?;
            if pi.is_trivial() {
                Node::Zero
            } else {
                Node::Coord { stage: *n, pi: pi.clone() }
            }
        }
        KExpr::Sum(terms) => {
            let nodes: Vec<Node> = terms.iter().map(|t| compile(t, groups)).collect::<Result<_>>()?;
            let mut ty: Option<(usize, FgAbelian)> = None;
            for n in &nodes {
                if let Some(t) = n.ty() {
                    match &ty {
                        None => ty = Some(t),
                        Some(s) if *s != t => {
                            return Err(Error::GroupMismatch(format!("sum of terms of types {s:?} and {t:?}")))
                        }
                        _ => {}
                    }
                }
            }
            let nodes: Vec<Node> = nodes.into_iter().filter(|n| !matches!(n, Node::Zero)).collect();
            match ty {
                None => Node::Zero,
                Some((d, pi)) => Node::Sum(nodes, d, pi),
            }
        }
        KExpr::Scale(k, inner) => match compile(inner, groups)? {
            Node::Zero => Node::Zero,
            node => {
                let (d, pi) = node.ty().expect("typed node");
                Node::Scale(*k, Box::new(node), d, pi)
            }
        },
        KExpr::Cup(a, b) => {
            let (a, b) = (compile(a, groups)?, compile(b, groups)?);
            let (Some((p, ga)), Some((q, gb))) = (a.ty(), b.ty()) else {
                return Ok(Node::Zero);
            };
            let z = FgAbelian::integers();
            let (mode, pi) = if ga == gb {
                (CupMode::Coordinatewise, ga)
            } else if ga == z {
                (CupMode::ScaleLeft, gb)
            } else if gb == z {
                (CupMode::ScaleRight, ga)
            } else {
                return Err(Error::GroupMismatch(format!("cup product of {ga} and {gb} coefficients")));
            };
            Node::Cup { a: Box::new(a), b: Box::new(b), p, mode, degree: p + q, pi }
        }
        KExpr::Hom { target, matrix, inner } => {
            let node = compile(inner, groups)?;
            let Some((d, source)) = node.ty() else {
                return Ok(Node::Zero);
            };
            check_hom(&source, target, matrix)?;
            Node::Hom { matrix: matrix.clone(), inner: Box::new(node), degree: d, pi: target.clone() }
        }
    })
}

/// A matrix defines a homomorphism `⊕Z/q_j -> ⊕Z/t_i` iff `t_i | a_ij q_j` for all entries.
fn check_hom(source: &FgAbelian, target: &FgAbelian, matrix: &[Vec<i64>]) -> Result<()> {
    if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
        return Err(Error::GroupMismatch(format!(
            "homomorphism matrix shape does not match {source} -> {target}"
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        let t = target.orders()[i];
        for (j, &a) in row.iter().enumerate() {
            let q = source.orders()[j];
            let ok = match (q, t) {
                (0, _) | (_, 1) => true,
                (_, 0) => a == 0,
                _ => (a * q) % t == 0,
            };
            if !ok {
                return Err(Error::GroupMismatch(format!(
                    "entry ({i},{j}) = {a} is not well defined from Z/{q} to Z/{t}"
                )));
            }
        }
    }
    Ok(())
}

/// A type-checked k-invariant `P_{n-1} -> K(π, degree)`.
#[derive(Clone, Debug)]
pub struct KInvariant {
    expr: KExpr,
    node: Node,
    degree: usize,
    pi: FgAbelian,
}

impl KInvariant {
    pub fn expr(&self) -> &KExpr {
        &self.expr
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbelian {
        &self.pi
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node, Node::Zero)
    }

    /// Value on one face, with coordinate values supplied by `lookup(stage, face)`.
    pub fn value_on(&self, face: &[usize], lookup: &mut dyn FnMut(usize, &[usize]) -> Vec<i64>) -> Vec<i64> {
        self.node.value(face, lookup).unwrap_or_else(|| self.pi.zero())
    }

    /// Evaluates on a simplex of `P_{n-1}` given by its coordinates (`coords[N-1]` in degree `N`).
    pub fn eval(&self, coords: &[EMSimplex]) -> EMSimplex {
        self.eval_with_dim(coords, coords.first().map_or(self.degree, EMSimplex::dim))
    }

    /// As [`KInvariant::eval`], on `Δ^m` (needed when there are no coordinates).
    pub fn eval_with_dim(&self, coords: &[EMSimplex], m: usize) -> EMSimplex {
        let mut lookup = |stage: usize, face: &[usize]| coords[stage - 1].value(face);
        EMSimplex::from_fn(&self.pi, self.degree, m, |face| self.value_on(face, &mut lookup))
    }
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(xs: &[i64]) -> String {
            xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
        }
        match self {
            KExpr::Zero => write!(f, "zero"),
            KExpr::Coord(n) => write!(f, "(coord {n})"),
            KExpr::Sum(terms) => {
                write!(f, "(sum")?;
                for t in terms {
                    write!(f, " {t}")?;
                }
                write!(f, ")")
            }
            KExpr::Scale(k, e) => write!(f, "(scale {k} {e})"),
            KExpr::Cup(a, b) => write!(f, "(cup {a} {b})"),
            KExpr::Hom { target, matrix, inner } => {
                let rows: Vec<String> = matrix.iter().map(|r| format!("({})", list(r))).collect();
                write!(f, "(hom ({}) ({}) {inner})", list(target.orders()), rows.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn parse_sexp(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let tok = tokens.get(*pos).ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(parse_sexp(tokens, pos)?),
                    None => return Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected ')'".into())),
        atom => Ok(Sexp::Atom(atom.to_string())),
    }
}

fn int(s: &Sexp) -> Result<i64> {
    match s {
        Sexp::Atom(a) => a.parse().map_err(|_| Error::Parse(format!("expected an integer, found {a}"))),
        Sexp::List(_) => Err(Error::Parse("expected an integer, found a list".into())),
    }
}

fn ints(s: &Sexp) -> Result<Vec<i64>> {
    match s {
        Sexp::List(items) => items.iter().map(int).collect(),
        Sexp::Atom(a) => Err(Error::Parse(format!("expected a list of integers, found {a}"))),
    }
}

fn to_expr(s: &Sexp) -> Result<KExpr> {
    match s {
        Sexp::Atom(a) if a == "zero" => Ok(KExpr::Zero),
        Sexp::Atom(a) => Err(Error::Parse(format!("unknown atom {a}"))),
        Sexp::List(items) => {
            let (head, args) = match items.split_first() {
                Some((Sexp::Atom(h), rest)) => (h.as_str(), rest),
                _ => return Err(Error::Parse("expected an operator name".into())),
            };
            let arity = |k: usize| {
                if args.len() == k {
                    Ok(())
                } else {
                    Err(Error::Parse(format!("{head} takes {k} arguments, found {}", args.len())))
                }
            };
            match head {
                "coord" => {
                    arity(1)?;
                    let n = int(&args[0])?;
                    if n < 1 {
                        return Err(Error::Parse(format!("coordinate index {n} must be positive")));
                    }
                    Ok(KExpr::Coord(n as usize))
                }
                "sum" => Ok(KExpr::Sum(args.iter().map(to_expr).collect::<Result<_>>()?)),
                "scale" => {
                    arity(2)?;
                    Ok(KExpr::Scale(int(&args[0])?, Box::new(to_expr(&args[1])?)))
                }
                "cup" => {
                    arity(2)?;
                    Ok(KExpr::cup(to_expr(&args[0])?, to_expr(&args[1])?))
                }
                "hom" => {
                    arity(3)?;
                    let target = FgAbelian::new(ints(&args[0])?)?;
                    let matrix = match &args[1] {
                        Sexp::List(rows) => rows.iter().map(ints).collect::<Result<_>>()?,
                        Sexp::Atom(a) => return Err(Error::Parse(format!("expected matrix rows, found {a}"))),
                    };
                    Ok(KExpr::Hom { target, matrix, inner: Box::new(to_expr(&args[2])?) })
                }
                other => Err(Error::Parse(format!("unknown operator {other}"))),
            }
        }
    }
}

impl FromStr for KExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let sexp = parse_sexp(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input after expression: {}", tokens[pos..].join(" "))));
        }
        to_expr(&sexp)
    }
}

impl TryFrom<String> for KExpr {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<KExpr> for String {
    fn from(e: KExpr) -> String {
        e.to_string()
    }
}
