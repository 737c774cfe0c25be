//! Words over a graded alphabet, the degree-then-lex monomial order,
//! combinatorial freeness, high terms, and quotient dimension oracles for
//! the free associative algebra.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnickError {
    #[error("empty monomial")]
    EmptyMonomial,
    #[error("zero element has no high term")]
    ZeroElement,
    #[error("element mixes degrees {0} and {1}")]
    Inhomogeneous(usize, usize),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
    #[error("letter `{0}` declared twice")]
    DuplicateLetter(String),
    #[error("letter `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0} monomials in degree {1} exceed the budget {2}")]
    Budget(usize, usize, usize),
}

fn parse_err(line: usize, msg: impl Into<String>) -> AnickError {
    AnickError::Parse { line, msg: msg.into() }
}

/// Letters in their total order, index 0 lowest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedAlphabet {
    names: Vec<String>,
    degrees: Vec<usize>,
}

impl GradedAlphabet {
    pub fn new(letters: Vec<(String, usize)>) -> Result<Self, AnickError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (name, d) in letters {
            if names.contains(&name) {
                return Err(AnickError::DuplicateLetter(name));
            }
            if d == 0 {
                return Err(AnickError::ZeroDegree(name));
            }
            names.push(name);
            degrees.push(d);
        }
        Ok(GradedAlphabet { names, degrees })
    }

    /// Letters `x1, x2, ...` with the given degrees.
    pub fn numbered(degrees: &[usize]) -> Result<Self, AnickError> {
        GradedAlphabet::new(
            degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("x{}", i + 1), d))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn word_degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&i| self.degrees[i]).sum()
    }

    pub fn letter_degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Every word of degree exactly `d`, in increasing monomial order.
    pub fn words_of_degree(&self, d: usize) -> Vec<Vec<usize>> {
        let mut by_degree: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        for e in 1..=d {
            let mut layer = Vec::new();
            for (x, &dx) in self.degrees.iter().enumerate() {
                if dx <= e {
                    for rest in &by_degree[e - dx] {
                        let mut w = Vec::with_capacity(rest.len() + 1);
                        w.push(x);
                        w.extend_from_slice(rest);
                        layer.push(w);
                    }
                }
            }
            by_degree.push(layer);
        }
        let mut out = by_degree.swap_remove(d);
        out.sort_by(|a, b| compare(self, a, b));
        out
    }

    /// `#words` of each degree `0..=d` without building them.
    pub fn word_counts(&self, d: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::one();
        for e in 1..=d {
            for &dx in &self.degrees {
                if dx <= e {
                    let prev = c[e - dx].clone();
                    c[e] += prev;
                }
            }
        }
        c
    }

    pub fn show(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("*")
    }
}

/// Degree `e(x)` first, then left-to-right comparison with a proper prefix
/// below its extensions.
pub fn compare(alpha: &GradedAlphabet, a: &[usize], b: &[usize]) -> Ordering {
    alpha
        .word_degree(a)
        .cmp(&alpha.word_degree(b))
        .then_with(|| a.cmp(b))
}

/// Why a monomial set fails to be combinatorially free. Indices refer to the
/// input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreenessWitness {
    /// `inner` occurs in `outer` starting at `position`.
    Submonomial { inner: usize, outer: usize, position: usize },
    /// The last `length` letters of `left` are the first `length` of `right`.
    Overlap { left: usize, right: usize, length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Freeness {
    pub free: bool,
    pub witness: Option<FreenessWitness>,
}

/// No monomial lies inside another, and no proper suffix of one equals a
/// proper prefix of another or of itself.
pub fn is_combinatorially_free(ms: &[Vec<usize>]) -> Result<Freeness, AnickError> {
    if ms.iter().any(Vec::is_empty) {
        return Err(AnickError::EmptyMonomial);
    }
    let witness = freeness_witness(ms);
    Ok(Freeness { free: witness.is_none(), witness })
}

fn freeness_witness(ms: &[Vec<usize>]) -> Option<FreenessWitness> {
    for (i, a) in ms.iter().enumerate() {
        for (j, b) in ms.iter().enumerate() {
            if i != j && a.len() <= b.len() {
                if let Some(p) = b.windows(a.len()).position(|w| w == a.as_slice()) {
                    return Some(FreenessWitness::Submonomial { inner: i, outer: j, position: p });
                }
            }
        }
    }
    for (i, a) in ms.iter().enumerate() {
        for (j, b) in ms.iter().enumerate() {
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] == b[..k] {
                    return Some(FreenessWitness::Overlap { left: i, right: j, length: k });
                }
            }
        }
    }
    None
}

/// Integer combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorElement {
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new())
    }

    pub fn monomial(w: Vec<usize>) -> Self {
        Self::term(BigInt::one(), w)
    }

    pub fn letter(x: usize) -> Self {
        Self::monomial(vec![x])
    }

    pub fn term(c: BigInt, w: Vec<usize>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        TensorElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, w: &[usize]) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// `Some(w)` if this is `1 * w`.
    pub fn as_monomial(&self) -> Option<&[usize]> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    /// Common degree of all terms.
    pub fn degree(&self, alpha: &GradedAlphabet) -> Result<usize, AnickError> {
        let mut ds = self.terms.keys().map(|w| alpha.word_degree(w));
        let first = ds.next().ok_or(AnickError::ZeroElement)?;
        match ds.find(|&d| d != first) {
            Some(d) => Err(AnickError::Inhomogeneous(first, d)),
            None => Ok(first),
        }
    }

    fn add_term(&mut self, w: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TensorElement) -> TensorElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero();
        }
        TensorElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, rhs: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, rhs: &TensorElement) -> TensorElement {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn show(&self, alpha: &GradedAlphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Vec<usize>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| compare(alpha, b.0, a.0));
        let mut s = String::new();
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mag = c.abs();
            if !mag.is_one() || w.is_empty() {
                s.push_str(&mag.to_string());
                if !w.is_empty() {
                    s.push('*');
                }
            }
            if !w.is_empty() {
                s.push_str(&alpha.show(w));
            }
        }
        s
    }
}

/// Maximal word under [`compare`].
pub fn high_term(alpha: &GradedAlphabet, x: &TensorElement) -> Result<Vec<usize>, AnickError> {
    x.terms
        .keys()
        .max_by(|a, b| compare(alpha, a, b))
        .cloned()
        .ok_or(AnickError::ZeroElement)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Certified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeCertificate {
    pub verdict: Certificate,
    pub high_terms: Vec<Vec<usize>>,
    pub witness: Option<FreenessWitness>,
    /// Every input is a single monomial, so `Unknown` is definitive: the set
    /// is not strongly free.
    pub monomial_input: bool,
}

/// Sufficient test: the set is strongly free if its high terms are
/// combinatorially free.
pub fn certify_strongly_free(
    alpha: &GradedAlphabet,
    xs: &[TensorElement],
) -> Result<FreeCertificate, AnickError> {
    let mut high_terms = Vec::with_capacity(xs.len());
    for x in xs {
        x.degree(alpha)?;
        high_terms.push(high_term(alpha, x)?);
    }
    let f = is_combinatorially_free(&high_terms)?;
    Ok(FreeCertificate {
        verdict: if f.free { Certificate::Certified } else { Certificate::Unknown },
        high_terms,
        witness: f.witness,
        monomial_input: xs.iter().all(|x| x.as_monomial().is_some()),
    })
}

/// Bracket and product expression over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Letter(usize),
    Bracket(Box<Expr>, Box<Expr>),
    /// Sum of `coefficient * factor_1 * factor_2 * ...`.
    Sum(Vec<(BigInt, Vec<Expr>)>),
}

impl Expr {
    pub fn bracket(a: Expr, b: Expr) -> Expr {
        Expr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn expand(&self) -> TensorElement {
        match self {
            Expr::Letter(x) => TensorElement::letter(*x),
            Expr::Bracket(a, b) => a.expand().commutator(&b.expand()),
            Expr::Sum(terms) => {
                let mut out = TensorElement::zero();
                for (c, factors) in terms {
                    let prod = factors
                        .iter()
                        .fold(TensorElement::one(), |acc, f| acc.mul(&f.expand()));
                    out = out.add(&prod.scale(c));
                }
                out
            }
        }
    }
}

/// Parse and expand, `[a, b] -> ab - ba`.
pub fn bracket_expand(alpha: &GradedAlphabet, expr: &str) -> Result<TensorElement, AnickError> {
    Ok(parse_expr(alpha, expr, 1)?.expand())
}

/// `expr := term (('+'|'-') term)*`,
/// `term := [int] ['*'] factor ('*'? factor)*`,
/// `factor := letter | '[' expr ',' expr ']' | '(' expr ')'`.
pub fn parse_expr(alpha: &GradedAlphabet, src: &str, line: usize) -> Result<Expr, AnickError> {
    let tokens = tokenize(src, line)?;
    let mut p = Parser { alpha, tokens, pos: 0, line };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(parse_err(line, format!("unexpected `{}`", p.tokens[p.pos])));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(src: &str, line: usize) -> Result<Vec<Tok>, AnickError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "[](),+-*".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(parse_err(line, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alpha: &'a GradedAlphabet,
    tokens: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), AnickError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of line".to_string(), |t| format!("`{t}`"));
            Err(parse_err(self.line, format!("expected `{c}`, found {found}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, AnickError> {
        let mut terms = Vec::new();
        let mut sign = BigInt::one();
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let (c, factors) = self.term()?;
            terms.push((c * &sign, factors));
            if self.eat('+') {
                sign = BigInt::one();
            } else if self.eat('-') {
                sign = -BigInt::one();
            } else {
                break;
            }
        }
        if let [(c, factors)] = terms.as_slice() {
            if c.is_one() && factors.len() == 1 {
                return Ok(factors[0].clone());
            }
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<(BigInt, Vec<Expr>), AnickError> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        let mut scalar = false;
        if let Some(Tok::Int(n)) = self.peek() {
            coeff = n.clone();
            scalar = true;
            self.pos += 1;
            self.eat('*');
        }
        while let Some(f) = self.factor()? {
            factors.push(f);
            self.eat('*');
        }
        if factors.is_empty() && !scalar {
            return Err(parse_err(self.line, "expected a term"));
        }
        Ok((coeff, factors))
    }

    fn factor(&mut self) -> Result<Option<Expr>, AnickError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let x = self
                    .alpha
                    .index(&name)
                    .ok_or(AnickError::UnknownLetter(name))?;
                Ok(Some(Expr::Letter(x)))
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Some(Expr::bracket(a, b)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(')')?;
                Ok(Some(a))
            }
            _ => Ok(None),
        }
    }
}

/// Parsed relations file.
#[derive(Debug, Clone)]
pub struct RelationSystem {
    pub alphabet: GradedAlphabet,
    /// Source text of each relation.
    pub sources: Vec<String>,
    pub relations: Vec<TensorElement>,
}

/// `letter: degree` lines, an optional `order: a < b < ...` line, and one
/// relation per remaining line. `#` starts a comment.
pub fn parse_relations(src: &str) -> Result<RelationSystem, AnickError> {
    let mut letters: Vec<(String, usize)> = Vec::new();
    let mut order: Option<(usize, Vec<String>)> = None;
    let mut rel_lines = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("order:") {
            if order.is_some() {
                return Err(parse_err(line, "second `order:` line"));
            }
            let names = rest.split('<').map(|s| s.trim().to_string()).collect::<Vec<_>>();
            if names.iter().any(String::is_empty) {
                return Err(parse_err(line, "empty name in `order:` line"));
            }
            order = Some((line, names));
        } else if let Some((name, deg)) = text.split_once(':') {
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                return Err(parse_err(line, format!("bad letter name `{name}`")));
            }
            let d: usize = deg
                .trim()
                .parse()
                .map_err(|_| parse_err(line, format!("bad degree `{}`", deg.trim())))?;
            letters.push((name.to_string(), d));
        } else {
            rel_lines.push((line, text.to_string()));
        }
    }
    if let Some((line, names)) = order {
        let mut sorted = Vec::new();
        for n in &names {
            let Some(&(_, d)) = letters.iter().find(|(m, _)| m == n) else {
                return Err(parse_err(line, format!("`{n}` has no degree line")));
            };
            sorted.push((n.clone(), d));
        }
        if sorted.len() != letters.len() {
            return Err(parse_err(line, "`order:` must list every letter exactly once"));
        }
        letters = sorted;
    }
    let alphabet = GradedAlphabet::new(letters).map_err(|e| match e {
        AnickError::DuplicateLetter(_) | AnickError::ZeroDegree(_) => parse_err(0, e.to_string()),
        other => other,
    })?;
    let mut relations = Vec::new();
    let mut sources = Vec::new();
    for (line, text) in rel_lines {
        let x = parse_expr(&alphabet, &text, line)?.expand();
        if x.is_zero() {
            return Err(parse_err(line, "relation expands to zero"));
        }
        x.degree(&alphabet).map_err(|e| parse_err(line, e.to_string()))?;
        relations.push(x);
        sources.push(text);
    }
    Ok(RelationSystem { alphabet, sources, relations })
}

/// Dimensions of `K<X> / (rels)` in degrees `0..=max_degree`, by exact
/// elimination in each degree. The degree-`d` slice of the ideal is spanned
/// by `x * I_{d - |x|}` over letters `x` and `r * B_{d - |r|}` over
/// relations `r`.
pub fn quotient_hilbert_oracle(
    alpha: &GradedAlphabet,
    rels: &[TensorElement],
    max_degree: usize,
    budget: usize,
) -> Result<Vec<u64>, AnickError> {
    let mut rel_deg = Vec::with_capacity(rels.len());
    for r in rels {
        rel_deg.push(r.degree(alpha)?);
    }
    if rels.iter().all(|r| r.as_monomial().is_some()) {
        let ms: Vec<Vec<usize>> = rels.iter().map(|r| r.as_monomial().unwrap().to_vec()).collect();
        return Ok(monomial_quotient_dims(alpha, &ms, max_degree)
            .into_iter()
            .map(|c| c.try_into().expect("dimension fits in u64"))
            .collect());
    }
    let mut words: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_degree + 1);
    let mut ideal: Vec<Vec<SparseRow>> = Vec::with_capacity(max_degree + 1);
    let mut dims = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let ws = alpha.words_of_degree(d);
        if ws.len() > budget {
            return Err(AnickError::Budget(ws.len(), d, budget));
        }
        let index: HashMap<&[usize], usize> = ws.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let mut echelon = Echelon::default();
        for (x, &dx) in alpha.letter_degrees().iter().enumerate() {
            if dx > d {
                continue;
            }
            for row in &ideal[d - dx] {
                let lifted = row
                    .iter()
                    .map(|(col, c)| {
                        let mut w = vec![x];
                        w.extend_from_slice(&words[d - dx][*col]);
                        (index[w.as_slice()], c.clone())
                    })
                    .collect();
                echelon.insert(lifted);
            }
        }
        for (r, &e) in rels.iter().zip(&rel_deg) {
            if e > d {
                continue;
            }
            for v in &words[d - e] {
                let row = r
                    .terms()
                    .iter()
                    .map(|(w, c)| {
                        let mut full = w.clone();
                        full.extend_from_slice(v);
                        (index[full.as_slice()], c.clone())
                    })
                    .collect();
                echelon.insert(row);
            }
        }
        let rows = echelon.into_rows();
        dims.push((ws.len() - rows.len()) as u64);
        drop(index);
        words.push(ws);
        ideal.push(rows);
    }
    Ok(dims)
}

/// Sparse row: `(column, nonzero coefficient)` sorted by column.
type SparseRow = Vec<(usize, BigInt)>;

/// Row echelon form keyed by each row's largest column.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn insert(&mut self, row: BTreeMap<usize, BigInt>) {
        let mut row: SparseRow = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        while let Some((lead, lc)) = row.last().cloned() {
            let Some(p) = self.pivots.get(&lead) else {
                let g = row.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
                if !g.is_one() {
                    for (_, c) in &mut row {
                        *c /= &g;
                    }
                }
                self.pivots.insert(lead, row);
                return;
            };
            let pc = &p.last().unwrap().1;
            let g = lc.gcd(pc);
            let (fr, fp) = (pc / &g, &lc / &g);
            row = combine(&row, &fr, p, &fp);
        }
    }

    fn into_rows(self) -> Vec<SparseRow> {
        self.pivots.into_values().collect()
    }
}

/// `a * fa - b * fb`.
fn combine(a: &SparseRow, fa: &BigInt, b: &SparseRow, fb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, &a[i].1 * fa));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(&b[j].1 * fb)));
            j += 1;
        } else {
            let v = &a[i].1 * fa - &b[j].1 * fb;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Dimensions of `K<X> / (ms)` for monomials `ms`: counts of words with no
/// factor in `ms`, by dynamic programming over an Aho-Corasick automaton.
pub fn monomial_quotient_dims(alpha: &GradedAlphabet, ms: &[Vec<usize>], max_degree: usize) -> Vec<BigInt> {
    let ac = Automaton::build(alpha.len(), ms);
    let states = ac.next.len();
    let mut count = vec![vec![BigInt::zero(); states]; max_degree + 1];
    count[0][0] = BigInt::one();
    for d in 0..max_degree {
        for s in 0..states {
            if count[d][s].is_zero() {
                continue;
            }
            for x in 0..alpha.len() {
                let e = d + alpha.degree(x);
                let t = ac.next[s][x];
                if e <= max_degree && !ac.dead[t] {
                    let v = count[d][s].clone();
                    count[e][t] += v;
                }
            }
        }
    }
    count.into_iter().map(|row| row.into_iter().sum()).collect()
}

struct Automaton {
    next: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl Automaton {
    fn build(k: usize, patterns: &[Vec<usize>]) -> Automaton {
        const NONE: usize = usize::MAX;
        let mut next = vec![vec![NONE; k]];
        let mut dead = vec![false];
        for p in patterns {
            let mut s = 0;
            for &x in p {
                if next[s][x] == NONE {
                    next.push(vec![NONE; k]);
                    dead.push(false);
                    next[s][x] = next.len() - 1;
                }
                s = next[s][x];
            }
            dead[s] = true;
        }
        let mut fail = vec![0usize; next.len()];
        let mut queue = VecDeque::new();
        for x in 0..k {
            match next[0][x] {
                NONE => next[0][x] = 0,
                t => queue.push_back(t),
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for x in 0..k {
                let t = next[s][x];
                if t == NONE {
                    next[s][x] = next[fail[s]][x];
                } else {
                    fail[t] = next[fail[s]][x];
                    queue.push_back(t);
                }
            }
        }
        Automaton { next, dead }
    }
}
