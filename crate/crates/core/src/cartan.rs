//! Cartan matrices, their Coxeter shadows, and type classification.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `a_ii = 2`
    Diagonal,
    /// `a_ij <= 0` for `i != j`
    OffDiagonalSign,
    /// `a_ij = 0` iff `a_ji = 0`
    ZeroPattern,
}

/// One violated axiom, with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::Diagonal => write!(f, "a_{{{0}{0}}} must equal 2", self.i),
            Axiom::OffDiagonalSign => write!(f, "a_{{{}{}}} must be <= 0", self.i, self.j),
            Axiom::ZeroPattern => write!(
                f,
                "a_{{{0}{1}}} and a_{{{1}{0}}} must vanish together",
                self.i, self.j
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("matrix is not square (row {row} has {len} entries, expected {n})")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("not a Cartan matrix: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<AxiomViolation>),
    #[error("unsupported Coxeter label m = {0} (allowed: 2, 3, 4, 6, infinity)")]
    UnsupportedLabel(u32),
    #[error("edge ({0}, {1}) is out of range or on the diagonal")]
    BadEdge(usize, usize),
    #[error("component is not of finite type")]
    NotFinite,
}

/// A validated generalized Cartan matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    a: Vec<i64>,
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> CartanMatrix {
        let a = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect();
        CartanMatrix { n: idx.len(), a }
    }

    /// Simultaneous row/column permutation: new index `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> CartanMatrix {
        self.principal(perm)
    }

    pub fn determinant(&self) -> BigInt {
        let rows: Vec<Vec<BigInt>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| BigInt::from(self.entry(i, j))).collect())
            .collect();
        bareiss_det(rows)
    }
}

impl fmt::Debug for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanMatrix({:?})", self.rows())
    }
}

impl Serialize for CartanMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Check the three Cartan axioms on a raw square grid.
pub fn validate(grid: &[Vec<i64>]) -> Result<CartanMatrix, CartanError> {
    let n = grid.len();
    for (row, r) in grid.iter().enumerate() {
        if r.len() != n {
            return Err(CartanError::NotSquare { row: row + 1, len: r.len(), n });
        }
    }
    let mut bad = Vec::new();
    for i in 0..n {
        if grid[i][i] != 2 {
            bad.push(AxiomViolation { axiom: Axiom::Diagonal, i: i + 1, j: i + 1 });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if grid[i][j] > 0 {
                bad.push(AxiomViolation { axiom: Axiom::OffDiagonalSign, i: i + 1, j: j + 1 });
            }
            if i < j && ((grid[i][j] == 0) != (grid[j][i] == 0)) {
                bad.push(AxiomViolation { axiom: Axiom::ZeroPattern, i: i + 1, j: j + 1 });
            }
        }
    }
    if !bad.is_empty() {
        return Err(CartanError::Invalid(bad));
    }
    Ok(CartanMatrix {
        n,
        a: grid.iter().flatten().copied().collect(),
    })
}

/// Order `m_ij` of `s_i s_j` in the Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeOrder {
    Two,
    Three,
    Four,
    Six,
    Infinite,
}

impl EdgeOrder {
    pub const ALL: [EdgeOrder; 5] = [
        EdgeOrder::Two,
        EdgeOrder::Three,
        EdgeOrder::Four,
        EdgeOrder::Six,
        EdgeOrder::Infinite,
    ];

    /// From `a_ij * a_ji`.
    pub fn from_product(p: i64) -> EdgeOrder {
        match p {
            0 => EdgeOrder::Two,
            1 => EdgeOrder::Three,
            2 => EdgeOrder::Four,
            3 => EdgeOrder::Six,
            _ => EdgeOrder::Infinite,
        }
    }

    /// From a numeric label, `0` standing for infinity.
    pub fn from_m(m: u32) -> Result<EdgeOrder, CartanError> {
        match m {
            0 => Ok(EdgeOrder::Infinite),
            2 => Ok(EdgeOrder::Two),
            3 => Ok(EdgeOrder::Three),
            4 => Ok(EdgeOrder::Four),
            6 => Ok(EdgeOrder::Six),
            other => Err(CartanError::UnsupportedLabel(other)),
        }
    }

    /// Numeric label with `0` for infinity.
    pub fn to_m(self) -> u32 {
        match self {
            EdgeOrder::Two => 2,
            EdgeOrder::Three => 3,
            EdgeOrder::Four => 4,
            EdgeOrder::Six => 6,
            EdgeOrder::Infinite => 0,
        }
    }

    /// `None` for infinity.
    pub fn value(self) -> Option<u32> {
        (self != EdgeOrder::Infinite).then(|| self.to_m())
    }

    /// Whether the pair is joined in the Coxeter graph.
    pub fn is_edge(self) -> bool {
        self != EdgeOrder::Two
    }

    /// Representative `(a_ij, a_ji)` for `i < j`.
    pub fn cartan_pair(self) -> (i64, i64) {
        match self {
            EdgeOrder::Two => (0, 0),
            EdgeOrder::Three => (-1, -1),
            EdgeOrder::Four => (-1, -2),
            EdgeOrder::Six => (-1, -3),
            EdgeOrder::Infinite => (-2, -2),
        }
    }

    fn code(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for EdgeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(m) => write!(f, "{m}"),
            None => write!(f, "inf"),
        }
    }
}

/// Symmetric Coxeter matrix with off-diagonal entries in `{2, 3, 4, 6, inf}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<EdgeOrder>,
}

impl CoxeterMatrix {
    /// Rank-`n` matrix with every pair commuting.
    pub fn new(n: usize) -> Self {
        CoxeterMatrix {
            n,
            m: vec![EdgeOrder::Two; n * n],
        }
    }

    /// From 0-based edges `(i, j, order)`; unlisted pairs commute.
    pub fn from_edges(n: usize, edges: &[(usize, usize, EdgeOrder)]) -> Result<Self, CartanError> {
        let mut x = CoxeterMatrix::new(n);
        for &(i, j, o) in edges {
            if i >= n || j >= n || i == j {
                return Err(CartanError::BadEdge(i + 1, j + 1));
            }
            x.set(i, j, o);
        }
        Ok(x)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, o: EdgeOrder) {
        assert!(i != j, "diagonal of a Coxeter matrix is fixed");
        self.m[i * self.n + j] = o;
        self.m[j * self.n + i] = o;
    }

    /// `m_ij` for `i != j`.
    pub fn order(&self, i: usize, j: usize) -> EdgeOrder {
        debug_assert!(i != j);
        self.m[i * self.n + j]
    }

    /// Numeric entry with `m_ii = 1` and `0` for infinity.
    pub fn m_value(&self, i: usize, j: usize) -> u32 {
        if i == j {
            1
        } else {
            self.order(i, j).to_m()
        }
    }

    /// Edges `(i, j, m_ij)` with `i < j` and `m_ij >= 3`.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeOrder)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let o = self.order(i, j);
                if o.is_edge() {
                    out.push((i, j, o));
                }
            }
        }
        out
    }

    pub fn restrict(&self, idx: &[usize]) -> CoxeterMatrix {
        let k = idx.len();
        let mut x = CoxeterMatrix::new(k);
        for a in 0..k {
            for b in a + 1..k {
                x.set(a, b, self.order(idx[a], idx[b]));
            }
        }
        x
    }

    /// Subset given as a bitmask over `0..n`.
    pub fn restrict_mask(&self, mask: u64) -> CoxeterMatrix {
        self.restrict(&mask_indices(mask, self.n))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.order(i, j).is_edge())
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self)
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.m_value(i, j)).collect())
            .collect()
    }

    /// Key identifying the matrix up to relabeling of vertices. Components
    /// with at most 8 vertices are brought to a canonical labeling (minimum
    /// over all permutations); larger ones keep their given labeling, which
    /// is still a valid, if less effective, memo key.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut parts: Vec<Vec<u8>> = self
            .components()
            .into_iter()
            .map(|c| {
                let sub = self.restrict(&c);
                if c.len() <= 8 {
                    sub.min_labeling()
                } else {
                    sub.upper_codes(&(0..c.len()).collect::<Vec<_>>())
                }
            })
            .collect();
        parts.sort();
        let mut key = Vec::new();
        for p in parts {
            key.push(255);
            key.extend(p);
        }
        key
    }

    fn upper_codes(&self, perm: &[usize]) -> Vec<u8> {
        let mut codes = Vec::with_capacity(self.n * self.n / 2 + 1);
        codes.push(self.n as u8);
        for a in 0..self.n {
            for b in a + 1..self.n {
                codes.push(self.order(perm[a], perm[b]).code());
            }
        }
        codes
    }

    fn min_labeling(&self) -> Vec<u8> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = self.upper_codes(&perm);
        for_each_permutation(&mut perm, &mut |p| {
            let c = self.upper_codes(p);
            if c < best {
                best = c;
            }
        });
        best
    }
}

impl fmt::Debug for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterMatrix({:?})", self.rows())
    }
}

/// Heap's algorithm; calls `f` on every permutation except the initial one.
pub fn for_each_permutation<T>(perm: &mut [T], f: &mut impl FnMut(&[T])) {
    let n = perm.len();
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub(crate) fn mask_indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `m_ij` from `a_ij * a_ji`.
pub fn coxeter_of(c: &CartanMatrix) -> CoxeterMatrix {
    let mut x = CoxeterMatrix::new(c.n);
    for i in 0..c.n {
        for j in i + 1..c.n {
            x.set(i, j, EdgeOrder::from_product(c.entry(i, j) * c.entry(j, i)));
        }
    }
    x
}

/// Representative Cartan matrix of a Coxeter matrix; the lower index of each
/// pair receives `-1` (or `-2` for infinity).
pub fn canonical_cartan(x: &CoxeterMatrix) -> CartanMatrix {
    let n = x.n;
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        a[i * n + i] = 2;
        for j in i + 1..n {
            let (aij, aji) = x.order(i, j).cartan_pair();
            a[i * n + j] = aij;
            a[j * n + i] = aji;
        }
    }
    CartanMatrix { n, a }
}

/// Connected components of the Coxeter graph (edges where `m_ij >= 3`),
/// each sorted, ordered by smallest vertex.
pub fn components(x: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let mut seen = vec![false; x.n];
    let mut out = Vec::new();
    for s in 0..x.n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in x.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Does `A = DB` hold for an invertible diagonal `D` and symmetric `B`?
///
/// Weights `d_i` are propagated along a spanning forest of the graph of
/// nonzero off-diagonal entries (`d_j / d_i = a_ji / a_ij`); the matrix is
/// symmetrizable iff every non-tree edge agrees, which is the cycle condition
/// `a_{i1 i2} ... a_{ik i1} = a_{i2 i1} ... a_{i1 ik}` on fundamental cycles.
pub fn is_symmetrizable(c: &CartanMatrix) -> bool {
    symmetrizer(c).is_some()
}

/// Positive diagonal `d` with `a_ij / d_i = a_ji / d_j`, if one exists.
pub fn symmetrizer(c: &CartanMatrix) -> Option<Vec<BigRational>> {
    let n = c.n;
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for s in 0..n {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(BigRational::one());
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if j == i || c.entry(i, j) == 0 {
                    continue;
                }
                // d_j = d_i * a_ji / a_ij
                let want = &di * BigRational::new(c.entry(j, i).into(), c.entry(i, j).into());
                match &d[j] {
                    None => {
                        d[j] = Some(want);
                        queue.push_back(j);
                    }
                    Some(have) if *have != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(d.into_iter().map(Option::unwrap).collect())
}

/// Families in the finite crystallographic catalog (`B` also covers `C`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteType {
    pub family: Family,
    pub rank: usize,
}

impl FiniteType {
    pub fn name(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn degrees(&self) -> Vec<usize> {
        let n = self.rank;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
                _ => unreachable!("no E{n}"),
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        }
    }

    /// `|W| = prod d_i`.
    pub fn order(&self) -> BigInt {
        self.degrees().into_iter().map(BigInt::from).product()
    }

    /// Number of positive roots, `sum (d_i - 1)`.
    pub fn positive_roots(&self) -> usize {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// Standard Coxeter diagram of this type.
    pub fn diagram(&self) -> CoxeterMatrix {
        let n = self.rank;
        let mut x = CoxeterMatrix::new(n);
        let path = |x: &mut CoxeterMatrix, len: usize| {
            for i in 0..len.saturating_sub(1) {
                x.set(i, i + 1, EdgeOrder::Three);
            }
        };
        match self.family {
            Family::A => path(&mut x, n),
            Family::B => {
                path(&mut x, n);
                if n >= 2 {
                    x.set(n - 2, n - 1, EdgeOrder::Four);
                }
            }
            Family::D => {
                path(&mut x, n - 1);
                x.set(n - 3, n - 1, EdgeOrder::Three);
            }
            Family::E => {
                path(&mut x, n - 1);
                x.set(2, n - 1, EdgeOrder::Three);
            }
            Family::F => {
                path(&mut x, 4);
                x.set(1, 2, EdgeOrder::Four);
            }
            Family::G => x.set(0, 1, EdgeOrder::Six),
        }
        x
    }

    /// Every catalog type of the given rank.
    pub fn catalog(rank: usize) -> Vec<FiniteType> {
        let mut out = vec![FiniteType { family: Family::A, rank }];
        if rank >= 2 {
            out.push(FiniteType { family: Family::B, rank });
        }
        if rank >= 4 {
            out.push(FiniteType { family: Family::D, rank });
        }
        if (6..=8).contains(&rank) {
            out.push(FiniteType { family: Family::E, rank });
        }
        if rank == 4 {
            out.push(FiniteType { family: Family::F, rank });
        }
        if rank == 2 {
            out.push(FiniteType { family: Family::G, rank });
        }
        out
    }
}

/// Recognize a connected Coxeter diagram as a finite crystallographic type.
pub fn recognize_finite(x: &CoxeterMatrix) -> Option<FiniteType> {
    let n = x.n;
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(FiniteType { family: Family::A, rank: 1 });
    }
    let edges = x.edges();
    if edges.len() != n - 1 || components(x).len() != 1 {
        return None;
    }
    let count = |o| edges.iter().filter(|e| e.2 == o).count();
    if count(EdgeOrder::Infinite) > 0 {
        return None;
    }
    let sixes = count(EdgeOrder::Six);
    let fours = count(EdgeOrder::Four);
    if sixes > 0 {
        return (n == 2).then_some(FiniteType { family: Family::G, rank: 2 });
    }
    let degree: Vec<usize> = (0..n).map(|i| x.neighbors(i).count()).collect();
    let branch: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();
    if fours > 1 {
        return None;
    }
    if fours == 1 {
        if !branch.is_empty() {
            return None;
        }
        let &(i, j, _) = edges.iter().find(|e| e.2 == EdgeOrder::Four).unwrap();
        if degree[i] == 1 || degree[j] == 1 {
            return Some(FiniteType { family: Family::B, rank: n });
        }
        return (n == 4).then_some(FiniteType { family: Family::F, rank: 4 });
    }
    match branch.as_slice() {
        [] => Some(FiniteType { family: Family::A, rank: n }),
        [b] if degree[*b] == 3 => {
            let mut arms: Vec<usize> = x.neighbors(*b).map(|s| arm_length(x, *b, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(FiniteType { family: Family::D, rank: n }),
                [1, 2, 2..=4] => Some(FiniteType { family: Family::E, rank: n }),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_length(x: &CoxeterMatrix, from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = x.neighbors(cur).filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Finite types of every component, or `None` if some component is infinite.
pub fn finite_components(x: &CoxeterMatrix) -> Option<Vec<FiniteType>> {
    components(x)
        .into_iter()
        .map(|c| recognize_finite(&x.restrict(&c)))
        .collect()
}

pub fn is_finite(x: &CoxeterMatrix) -> bool {
    finite_components(x).is_some()
}

/// Multiset of degrees of a finite-type Coxeter matrix (over all components).
pub fn finite_degrees(x: &CoxeterMatrix) -> Result<Vec<usize>, CartanError> {
    let types = finite_components(x).ok_or(CartanError::NotFinite)?;
    let mut d: Vec<usize> = types.iter().flat_map(FiniteType::degrees).collect();
    d.sort_unstable();
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "catalog", rename_all = "lowercase")]
pub enum TypeClass {
    Finite(Vec<String>),
    Affine,
    Indefinite,
}

impl TypeClass {
    pub fn label(&self) -> &'static str {
        match self {
            TypeClass::Finite(_) => "finite",
            TypeClass::Affine => "affine",
            TypeClass::Indefinite => "indefinite",
        }
    }
}

/// Type of one indecomposable block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    /// 0-based indices into the original matrix.
    pub indices: Vec<usize>,
    pub class: TypeClass,
}

/// Classify each indecomposable block of `c`.
pub fn classify(c: &CartanMatrix) -> Vec<ComponentClass> {
    components(&coxeter_of(c))
        .into_iter()
        .map(|idx| {
            let class = classify_indecomposable(&c.principal(&idx));
            ComponentClass { indices: idx, class }
        })
        .collect()
}

/// Single label for the whole matrix: finite if every block is, otherwise
/// indefinite if any block is, otherwise affine.
pub fn overall_class(parts: &[ComponentClass]) -> TypeClass {
    if parts.iter().any(|p| p.class == TypeClass::Indefinite) {
        return TypeClass::Indefinite;
    }
    if parts.iter().any(|p| p.class == TypeClass::Affine) {
        return TypeClass::Affine;
    }
    TypeClass::Finite(
        parts
            .iter()
            .flat_map(|p| match &p.class {
                TypeClass::Finite(v) => v.clone(),
                _ => Vec::new(),
            })
            .collect(),
    )
}

/// Finite by diagram; affine when symmetrizable with `det = 0` and every
/// maximal proper principal submatrix finite; indefinite otherwise.
pub fn classify_indecomposable(c: &CartanMatrix) -> TypeClass {
    let x = coxeter_of(c);
    if let Some(t) = recognize_finite(&x) {
        debug_assert_ne!(minor_test_finite(c), Some(false), "diagram and minors disagree");
        return TypeClass::Finite(vec![t.name()]);
    }
    debug_assert_ne!(minor_test_finite(c), Some(true), "diagram and minors disagree");
    let n = c.rank();
    if n >= 1 && is_symmetrizable(c) && c.determinant().is_zero() {
        let proper_finite = (0..n).all(|skip| {
            let idx: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
            is_finite(&x.restrict(&idx))
        });
        if proper_finite {
            return TypeClass::Affine;
        }
    }
    TypeClass::Indefinite
}

/// Sylvester test: for a symmetrizable matrix (positive symmetrizer), finite
/// type iff every leading principal minor is positive. `None` when the
/// matrix is not symmetrizable.
pub fn minor_test_finite(c: &CartanMatrix) -> Option<bool> {
    symmetrizer(c)?;
    Some((1..=c.rank()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        c.principal(&idx).determinant().is_positive()
    }))
}

/// Independent affine test for an indecomposable matrix: corank one with a
/// kernel vector whose entries are all nonzero and of one sign.
pub fn affine_by_null_vector(c: &CartanMatrix) -> bool {
    let n = c.rank();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(c.entry(i, j).into())).collect())
        .collect();
    let Some(v) = kernel_if_corank_one(rows) else { return false };
    let pos = v.iter().all(Signed::is_positive);
    let neg = v.iter().all(Signed::is_negative);
    pos || neg
}

fn kernel_if_corank_one(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for k in 0..n {
            m[row][k] = &m[row][k] * &inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..n {
                    let sub = &f * &m[row][k];
                    m[r][k] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}

/// Fraction-free determinant.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tri113() -> CartanMatrix {
        validate(&[vec![2, -1, -1], vec![-3, 2, -1], vec![-1, -1, 2]]).unwrap()
    }

    pub(crate) fn k4_111112() -> CartanMatrix {
        validate(&[
            vec![2, -1, -1, -1],
            vec![-2, 2, -1, -1],
            vec![-1, -1, 2, -1],
            vec![-1, -1, -1, 2],
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate(&[vec![2, -1], vec![-1, 2]]).is_ok());
        let err = validate(&[vec![2, 0], vec![-1, 2]]).unwrap_err();
        assert_eq!(
            err,
            CartanError::Invalid(vec![AxiomViolation { axiom: Axiom::ZeroPattern, i: 1, j: 2 }])
        );
        let err = validate(&[vec![1, 1], vec![0, 2]]).unwrap_err();
        let CartanError::Invalid(v) = err else { panic!() };
        assert_eq!(v.len(), 3);
        assert!(matches!(
            validate(&[vec![2, 0], vec![0]]),
            Err(CartanError::NotSquare { .. })
        ));
        assert_eq!(tri113().rank(), 3);
    }

    #[test]
    fn coxeter_shadows() {
        let x = coxeter_of(&tri113());
        assert_eq!(x.order(0, 1), EdgeOrder::Six);
        assert_eq!(x.order(0, 2), EdgeOrder::Three);
        assert_eq!(x.order(1, 2), EdgeOrder::Three);
        let y = coxeter_of(&k4_111112());
        assert_eq!(y.order(0, 1), EdgeOrder::Four);
        assert!(y.edges().iter().filter(|e| e.2 == EdgeOrder::Three).count() == 5);
        let z = coxeter_of(&validate(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap());
        assert!(z.edges().iter().all(|e| e.2 == EdgeOrder::Infinite) && z.edges().len() == 3);
    }

    #[test]
    fn component_split() {
        let x = CoxeterMatrix::new(2);
        assert_eq!(components(&x), vec![vec![0], vec![1]]);
        assert_eq!(components(&coxeter_of(&tri113())), vec![vec![0, 1, 2]]);
        let path = FiniteType { family: Family::A, rank: 5 }.diagram();
        assert_eq!(components(&path).len(), 1);
    }

    #[test]
    fn classification() {
        let a2 = validate(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(classify_indecomposable(&a2), TypeClass::Finite(vec!["A2".into()]));
        let aff = validate(&[vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(classify_indecomposable(&aff), TypeClass::Affine);
        assert!(affine_by_null_vector(&aff));
        assert_eq!(tri113().determinant(), BigInt::from(-6));
        assert_eq!(classify_indecomposable(&tri113()), TypeClass::Indefinite);
        // twisted affine A2^(2): same Coxeter graph as the hyperbolic [[2,-1],[-5,2]]
        let twisted = validate(&[vec![2, -1], vec![-4, 2]]).unwrap();
        assert_eq!(classify_indecomposable(&twisted), TypeClass::Affine);
        let hyper = validate(&[vec![2, -1], vec![-5, 2]]).unwrap();
        assert_eq!(classify_indecomposable(&hyper), TypeClass::Indefinite);
    }

    #[test]
    fn symmetrizability() {
        assert!(!is_symmetrizable(&tri113()));
        assert!(!is_symmetrizable(&k4_111112()));
        let sym = validate(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
        assert!(is_symmetrizable(&sym));
        // any tree is symmetrizable
        let b3 = canonical_cartan(&FiniteType { family: Family::B, rank: 3 }.diagram());
        assert!(is_symmetrizable(&b3));
    }

    #[test]
    fn degrees_from_catalog() {
        let a3 = FiniteType { family: Family::A, rank: 3 }.diagram();
        assert_eq!(finite_degrees(&a3).unwrap(), vec![2, 3, 4]);
        let mut b3 = CoxeterMatrix::new(3);
        b3.set(0, 1, EdgeOrder::Three);
        b3.set(1, 2, EdgeOrder::Four);
        assert_eq!(finite_degrees(&b3).unwrap(), vec![2, 4, 6]);
        let mut g2 = CoxeterMatrix::new(2);
        g2.set(0, 1, EdgeOrder::Six);
        assert_eq!(finite_degrees(&g2).unwrap(), vec![2, 6]);
        assert_eq!(finite_degrees(&coxeter_of(&tri113())), Err(CartanError::NotFinite));
    }

    #[test]
    fn catalog_invariants() {
        for rank in 1..=8 {
            for t in FiniteType::catalog(rank) {
                assert_eq!(recognize_finite(&t.diagram()), Some(t), "{}", t.name());
                assert_eq!(t.degrees().len(), rank);
            }
        }
        let e8 = FiniteType { family: Family::E, rank: 8 };
        assert_eq!(e8.order(), BigInt::from(696_729_600u64));
        assert_eq!(e8.positive_roots(), 120);
    }

    #[test]
    fn canonical_representatives() {
        let mut x = CoxeterMatrix::new(2);
        x.set(0, 1, EdgeOrder::Six);
        let c = canonical_cartan(&x);
        assert_eq!((c.entry(0, 1), c.entry(1, 0)), (-1, -3));
        x.set(0, 1, EdgeOrder::Infinite);
        let c = canonical_cartan(&x);
        assert_eq!((c.entry(0, 1), c.entry(1, 0)), (-2, -2));
    }

    #[test]
    fn canonical_key_ignores_labeling() {
        let d4 = FiniteType { family: Family::D, rank: 4 }.diagram();
        let relabeled = d4.restrict(&[3, 1, 0, 2]);
        assert_eq!(d4.canonical_key(), relabeled.canonical_key());
        let a4 = FiniteType { family: Family::A, rank: 4 }.diagram();
        assert_ne!(d4.canonical_key(), a4.canonical_key());
    }
}
