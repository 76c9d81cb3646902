//! Finite-dimensional simple Lie algebras in a Chevalley basis.
//!
//! The basis is ordered as
//!
//! ```text
//! x_{-b} for b in positive roots by decreasing height,
//! h_1 .. h_l (simple coroots),
//! x_{b} for b in positive roots by increasing height,
//! ```
//!
//! so that the index of a label doubles as the tie-break in canonical PBW
//! order. The Cartan part uses simple coroots rather than the vectors
//! `t_{alpha_i}`; the two differ by the nonzero scalars `<alpha_i,alpha_i>/2`
//! and with coroots every structure constant and every form value is an
//! integer.
//!
//! Structure constants `N_{a,b}` are fixed by giving every extraspecial pair
//! a positive sign, where positive roots are totally ordered by height and
//! then by decreasing coordinate vector. All other constants follow from the
//! usual relations between `N`'s (antisymmetry, the cyclic relation for
//! `a+b+c = 0`, `N_{-a,-b} = -N_{a,b}` and the four-root relation).

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::ops::{Add, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac, q, Q};

pub const DEFAULT_RANK_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A simple type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraType {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(AlgebraType { series, rank })
        } else {
            Err(Error::UnsupportedAlgebra(format!("{}{}", series.letter(), rank)))
        }
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::UnsupportedAlgebra(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedAlgebra(s.to_string()))?;
        AlgebraType::new(series, rank)
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// An element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Charge(pub Vec<i64>);

impl Charge {
    pub fn zero(rank: usize) -> Self {
        Charge(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, s: i64) -> Charge {
        Charge(self.0.iter().map(|c| c * s).collect())
    }
}

impl Add<&Charge> for &Charge {
    type Output = Charge;
    fn add(self, rhs: &Charge) -> Charge {
        Charge(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Charge> for &Charge {
    type Output = Charge;
    fn sub(self, rhs: &Charge) -> Charge {
        Charge(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Role of a basis element. Root indices refer to [`LieData::positive_roots`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    NegRoot(usize),
    Cartan(usize),
    PosRoot(usize),
}

/// Sparse element of `g` in the Chevalley basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgElem(BTreeMap<usize, Q>);

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, Q::one());
        AlgElem(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut e = AlgElem::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, s: &Q) -> AlgElem {
        if s.is_zero() {
            return AlgElem::zero();
        }
        AlgElem(self.0.iter().map(|(i, c)| (*i, c * s)).collect())
    }
}

impl Add<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i, c.clone());
        }
        out
    }
}

impl Sub<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i, -c.clone());
        }
        out
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        self.scale(&-Q::one())
    }
}

/// A simple Lie algebra with its Chevalley basis, brackets and invariant form.
#[derive(Clone, Debug)]
pub struct LieData {
    ty: AlgebraType,
    gram: Vec<Vec<Q>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    root_index: BTreeMap<Vec<i64>, usize>,
    labels: Vec<BasisLabel>,
    charges: Vec<Charge>,
    brackets: Vec<Vec<AlgElem>>,
    form: Vec<Vec<Q>>,
    theta: usize,
    dual_coxeter: u32,
    structure: BTreeMap<(usize, usize), i64>,
}

/// Build `g` of the given type with the default rank cap.
pub fn build_algebra(series: Series, rank: usize) -> Result<LieData> {
    LieData::build(AlgebraType::new(series, rank)?, DEFAULT_RANK_CAP)
}

fn gram_matrix(ty: AlgebraType) -> Vec<Vec<Q>> {
    let l = ty.rank;
    let mut g = vec![vec![Q::zero(); l]; l];
    let link = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match ty.series {
        Series::A | Series::D | Series::E => {
            for i in 0..l {
                g[i][i] = q(2);
            }
            match ty.series {
                Series::A => {
                    for i in 0..l - 1 {
                        link(&mut g, i, i + 1, q(-1));
                    }
                }
                Series::D => {
                    for i in 0..l - 2 {
                        link(&mut g, i, i + 1, q(-1));
                    }
                    link(&mut g, l - 3, l - 1, q(-1));
                }
                _ => {
                    // 1-3-4-5-6(-7-8), 2-4
                    link(&mut g, 0, 2, q(-1));
                    link(&mut g, 1, 3, q(-1));
                    for i in 2..l - 1 {
                        link(&mut g, i, i + 1, q(-1));
                    }
                }
            }
        }
        Series::B => {
            for i in 0..l {
                g[i][i] = if i == l - 1 { q(1) } else { q(2) };
            }
            for i in 0..l - 1 {
                link(&mut g, i, i + 1, q(-1));
            }
        }
        Series::C => {
            for i in 0..l {
                g[i][i] = if i == l - 1 { q(2) } else { q(1) };
            }
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, frac(-1, 2));
            }
            link(&mut g, l - 2, l - 1, q(-1));
        }
        Series::F => {
            g[0][0] = q(2);
            g[1][1] = q(2);
            g[2][2] = q(1);
            g[3][3] = q(1);
            link(&mut g, 0, 1, q(-1));
            link(&mut g, 1, 2, q(-1));
            link(&mut g, 2, 3, frac(-1, 2));
        }
        Series::G => {
            g[0][0] = frac(2, 3);
            g[1][1] = q(2);
            link(&mut g, 0, 1, q(-1));
        }
    }
    g
}

fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

fn is_positive(r: &[i64]) -> bool {
    r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0)
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vneg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn to_i64(x: &Q) -> i64 {
    assert!(x.is_integer(), "expected an integer, got {x}");
    x.to_integer().to_i64().expect("integer out of range")
}

struct RootSystem<'a> {
    gram: &'a [Vec<Q>],
    index: &'a BTreeMap<Vec<i64>, usize>,
}

impl RootSystem<'_> {
    fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if *bj != 0 {
                    s += &self.gram[i][j] * q(ai * bj);
                }
            }
        }
        s
    }

    fn is_root(&self, r: &[i64]) -> bool {
        if is_positive(r) {
            self.index.contains_key(r)
        } else {
            self.index.contains_key(&vneg(r))
        }
    }

    /// Largest `p` with `b - p a` a root.
    fn string_below(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur = vsub(b, a);
        while self.is_root(&cur) {
            p += 1;
            cur = vsub(&cur, a);
        }
        p
    }

    /// `N_{a,b}` for arbitrary roots with `a + b` a root, from the table of
    /// positive pairs.
    fn n_signed(&self, table: &BTreeMap<(usize, usize), Q>, a: &[i64], b: &[i64]) -> Q {
        match (is_positive(a), is_positive(b)) {
            (true, true) => table
                .get(&(self.index[a], self.index[b]))
                .cloned()
                .expect("structure constant requested out of order"),
            (false, false) => -self.n_signed(table, &vneg(a), &vneg(b)),
            (true, false) => {
                let s = vadd(a, b);
                if is_positive(&s) {
                    // a + b + c = 0 with c = -s
                    let ratio = self.inner(&s, &s) / self.inner(a, a);
                    -(ratio * self.n_signed(table, &vneg(b), &s))
                } else {
                    let c = vneg(&s);
                    let ratio = self.inner(&c, &c) / self.inner(b, b);
                    ratio * self.n_signed(table, &c, a)
                }
            }
            (false, true) => -self.n_signed(table, b, a),
        }
    }
}

impl LieData {
    /// Build `g` of type `ty`, refusing ranks above `rank_cap`.
    pub fn build(ty: AlgebraType, rank_cap: usize) -> Result<LieData> {
        if ty.rank > rank_cap {
            return Err(Error::RankAboveCap { rank: ty.rank, cap: rank_cap });
        }
        let l = ty.rank;
        let gram = gram_matrix(ty);
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| to_i64(&(q(2) * &gram[i][j] / &gram[i][i]))).collect())
            .collect();

        // positive roots by height, via simple-root strings
        let mut roots: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut r = vec![0; l];
                r[i] = 1;
                r
            })
            .collect();
        let mut known: BTreeMap<Vec<i64>, ()> = roots.iter().map(|r| (r.clone(), ())).collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..l {
                    let mut p = 0;
                    let mut cur = beta.clone();
                    loop {
                        cur[i] -= 1;
                        if known.contains_key(&cur) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..l).map(|j| beta[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }
        roots.sort_by_key(|r| (height(r), Reverse(r.clone())));
        let root_index: BTreeMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let n = roots.len();
        let theta = n - 1;

        let sys = RootSystem { gram: &gram, index: &root_index };

        // structure constants on positive pairs, by height of the sum
        let mut table: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for xi in roots.iter() {
            if height(xi) < 2 {
                continue;
            }
            let pairs: Vec<(usize, usize)> = (0..n)
                .filter_map(|a| {
                    let b = vsub(xi, &roots[a]);
                    root_index.get(&b).map(|&bi| (a, bi))
                })
                .collect();
            let (g, d) = pairs[0];
            debug_assert!(g < d);
            let n_gd = q(sys.string_below(&roots[g], &roots[d]) + 1);
            table.insert((g, d), n_gd.clone());
            table.insert((d, g), -n_gd.clone());
            let gamma = &roots[g];
            let delta = &roots[d];
            let xi_norm = sys.inner(xi, xi);
            for &(a, b) in &pairs {
                if a >= b || a == g {
                    continue;
                }
                let (ra, rb) = (&roots[a], &roots[b]);
                let mut acc = Q::zero();
                let b_minus_g = vsub(rb, gamma);
                if sys.is_root(&b_minus_g) {
                    let t = sys.n_signed(&table, rb, &vneg(gamma))
                        * sys.n_signed(&table, ra, &vneg(delta))
                        / sys.inner(&b_minus_g, &b_minus_g);
                    acc += t;
                }
                let a_minus_g = vsub(ra, gamma);
                if sys.is_root(&a_minus_g) {
                    let t = sys.n_signed(&table, &vneg(gamma), ra)
                        * sys.n_signed(&table, rb, &vneg(delta))
                        / sys.inner(&a_minus_g, &a_minus_g);
                    acc += t;
                }
                let value = &xi_norm / &n_gd * acc;
                table.insert((a, b), value.clone());
                table.insert((b, a), -value);
            }
        }

        // basis layout
        let mut labels = Vec::with_capacity(2 * n + l);
        for i in (0..n).rev() {
            labels.push(BasisLabel::NegRoot(i));
        }
        for i in 0..l {
            labels.push(BasisLabel::Cartan(i));
        }
        for i in 0..n {
            labels.push(BasisLabel::PosRoot(i));
        }
        let dim = labels.len();
        let signed_root = |lab: BasisLabel| -> Option<Vec<i64>> {
            match lab {
                BasisLabel::PosRoot(i) => Some(roots[i].clone()),
                BasisLabel::NegRoot(i) => Some(vneg(&roots[i])),
                BasisLabel::Cartan(_) => None,
            }
        };
        let index_of_root = |r: &[i64]| -> usize {
            if is_positive(r) {
                n + l + root_index[r]
            } else {
                n - 1 - root_index[&vneg(r)]
            }
        };
        let charges: Vec<Charge> = labels
            .iter()
            .map(|&lab| Charge(signed_root(lab).unwrap_or_else(|| vec![0; l])))
            .collect();

        let coroot = |r: &[i64]| -> AlgElem {
            // h_r = sum_i (|a_i|^2 / |r|^2) m_i h_i
            let norm = sys.inner(r, r);
            AlgElem::from_terms(
                (0..l).map(|i| (n + i, &gram[i][i] / &norm * q(r[i]))),
            )
        };
        let pairing = |r: &[i64], i: usize| -> i64 { (0..l).map(|j| r[j] * cartan[i][j]).sum() };

        let mut structure = BTreeMap::new();
        let mut brackets = vec![vec![AlgElem::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let e = match (signed_root(labels[i]), signed_root(labels[j])) {
                    (Some(a), Some(b)) => {
                        let s = vadd(&a, &b);
                        if s.iter().all(|&c| c == 0) {
                            if is_positive(&a) {
                                coroot(&a)
                            } else {
                                -&coroot(&b)
                            }
                        } else if sys.is_root(&s) {
                            let c = sys.n_signed(&table, &a, &b);
                            structure.insert((i, j), to_i64(&c));
                            AlgElem::from_terms([(index_of_root(&s), c)])
                        } else {
                            AlgElem::zero()
                        }
                    }
                    (None, Some(b)) => {
                        let BasisLabel::Cartan(ci) = labels[i] else { unreachable!() };
                        AlgElem::from_terms([(j, q(pairing(&b, ci)))])
                    }
                    (Some(a), None) => {
                        let BasisLabel::Cartan(ci) = labels[j] else { unreachable!() };
                        AlgElem::from_terms([(i, q(-pairing(&a, ci)))])
                    }
                    (None, None) => AlgElem::zero(),
                };
                brackets[i][j] = e;
            }
        }

        let mut form = vec![vec![Q::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                form[i][j] = match (labels[i], labels[j]) {
                    (BasisLabel::Cartan(a), BasisLabel::Cartan(b)) => {
                        q(4) * &gram[a][b] / (&gram[a][a] * &gram[b][b])
                    }
                    (BasisLabel::PosRoot(a), BasisLabel::NegRoot(b))
                    | (BasisLabel::NegRoot(a), BasisLabel::PosRoot(b))
                        if a == b =>
                    {
                        q(2) / sys.inner(&roots[a], &roots[a])
                    }
                    _ => Q::zero(),
                };
            }
        }

        let mut hv = Q::one();
        for i in 0..l {
            hv += q(roots[theta][i]) * &gram[i][i] / q(2);
        }
        let dual_coxeter = to_i64(&hv) as u32;

        Ok(LieData {
            ty,
            gram,
            cartan,
            positive_roots: roots,
            root_index,
            labels,
            charges,
            brackets,
            form,
            theta,
            dual_coxeter,
            structure,
        })
    }

    pub fn algebra_type(&self) -> AlgebraType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dual_coxeter(&self) -> u32 {
        self.dual_coxeter
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Inner products of simple roots, long roots of norm 2.
    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of the highest root among the positive roots.
    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        self.labels[i]
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Charge (root) of a basis element; zero for the Cartan part.
    pub fn charge(&self, i: usize) -> &Charge {
        &self.charges[i]
    }

    pub fn root_of(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    /// Basis index of `x_r` for the `r`-th positive root.
    pub fn pos_index(&self, r: usize) -> usize {
        self.num_positive_roots() + self.rank() + r
    }

    /// Basis index of `x_{-r}` for the `r`-th positive root.
    pub fn neg_index(&self, r: usize) -> usize {
        self.num_positive_roots() - 1 - r
    }

    /// Basis index of the simple coroot `h_i` (0-based).
    pub fn cartan_index(&self, i: usize) -> usize {
        self.num_positive_roots() + i
    }

    /// Basis index of the root vector for a signed root, if it is a root.
    pub fn root_vector_index(&self, coords: &[i64]) -> Option<usize> {
        if is_positive(coords) {
            self.root_of(coords).map(|r| self.pos_index(r))
        } else {
            self.root_of(&vneg(coords)).map(|r| self.neg_index(r))
        }
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if *ai != 0 && *bj != 0 {
                    s += &self.gram[i][j] * q(ai * bj);
                }
            }
        }
        s
    }

    pub fn root_norm(&self, r: usize) -> Q {
        let v = &self.positive_roots[r];
        self.inner(v, v)
    }

    pub fn is_long(&self, r: usize) -> bool {
        self.root_norm(r) == q(2)
    }

    /// `N_{a,b}` for signed roots `a`, `b` with `a + b` a root.
    pub fn structure_constant(&self, a: &[i64], b: &[i64]) -> Option<i64> {
        let i = self.root_vector_index(a)?;
        let j = self.root_vector_index(b)?;
        self.structure.get(&(i, j)).copied()
    }

    /// Bracket of two basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &AlgElem {
        &self.brackets[i][j]
    }

    pub fn form_basis(&self, i: usize, j: usize) -> &Q {
        &self.form[i][j]
    }

    pub fn bracket(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let ab = a * b;
                for (t, c) in self.brackets[i][j].terms() {
                    out.add_term(t, c * &ab);
                }
            }
        }
        out
    }

    pub fn form(&self, x: &AlgElem, y: &AlgElem) -> Q {
        let mut s = Q::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let f = &self.form[i][j];
                if !f.is_zero() {
                    s += a * b * f;
                }
            }
        }
        s
    }

    /// `x_a` for the `r`-th positive root.
    pub fn x_pos(&self, r: usize) -> AlgElem {
        AlgElem::basis(self.pos_index(r))
    }

    /// `x_{-a}` for the `r`-th positive root.
    pub fn x_neg(&self, r: usize) -> AlgElem {
        AlgElem::basis(self.neg_index(r))
    }

    /// Coroot `h_a = [x_a, x_{-a}]` for the `r`-th positive root.
    pub fn coroot(&self, r: usize) -> AlgElem {
        self.bracket_basis(self.pos_index(r), self.neg_index(r)).clone()
    }

    /// `t_a` with `a(h) = <t_a, h>`, for any element of the root lattice.
    pub fn t_vector(&self, coords: &[i64]) -> AlgElem {
        // t_{alpha_i} = (|alpha_i|^2 / 2) h_i
        AlgElem::from_terms(
            (0..self.rank()).map(|i| (self.cartan_index(i), &self.gram[i][i] / q(2) * q(coords[i]))),
        )
    }

    /// Root sl2-triple `(x_a, h_a, x_{-a})`.
    pub fn sl2_triple(&self, r: usize) -> (AlgElem, AlgElem, AlgElem) {
        (self.x_pos(r), self.coroot(r), self.x_neg(r))
    }

    /// Positive-root index for coordinates, rejecting non-roots and negatives.
    pub fn positive_root(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::NotARoot(format!("{coords:?}")));
        }
        if let Some(r) = self.root_of(coords) {
            return Ok(r);
        }
        if self.root_of(&vneg(coords)).is_some() {
            return Err(Error::NotPositiveRoot(self.root_name(coords)));
        }
        Err(Error::NotARoot(format!("{coords:?}")))
    }

    /// Level of the root sl2 for the `r`-th positive root: `(|theta|^2/|a|^2) k`.
    pub fn level_rescale(&self, r: usize, k: u32) -> u32 {
        let ratio = q(2) / self.root_norm(r);
        to_i64(&(ratio * q(k as i64))) as u32
    }

    /// A dual pair of Cartan bases: the simple coroots and their form-duals.
    pub fn cartan_dual_pair(&self) -> (Vec<AlgElem>, Vec<AlgElem>) {
        let basis: Vec<AlgElem> = (0..self.rank()).map(|i| AlgElem::basis(self.cartan_index(i))).collect();
        let dual = self.dual_basis(&basis);
        (basis, dual)
    }

    /// Form-dual of a basis of the Cartan subalgebra.
    pub fn dual_basis(&self, basis: &[AlgElem]) -> Vec<AlgElem> {
        let l = basis.len();
        let gram: Vec<Vec<Q>> =
            (0..l).map(|i| (0..l).map(|j| self.form(&basis[i], &basis[j])).collect()).collect();
        let inv = invert(&gram);
        (0..l)
            .map(|i| {
                let mut e = AlgElem::zero();
                for (j, b) in basis.iter().enumerate() {
                    e = &e + &b.scale(&inv[i][j]);
                }
                e
            })
            .collect()
    }

    /// Name of a signed root such as `a1+a2` or `-2a1-a2`.
    pub fn root_name(&self, coords: &[i64]) -> String {
        let mut s = String::new();
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push('a');
            s.push_str(&(i + 1).to_string());
        }
        s
    }

    /// Text name of a basis element: `x[a1+a2]`, `x[-a1]` or `h[1]`.
    pub fn basis_name(&self, i: usize) -> String {
        match self.labels[i] {
            BasisLabel::Cartan(c) => format!("h[{}]", c + 1),
            _ => format!("x[{}]", self.root_name(&self.charges[i].0)),
        }
    }

    pub fn basis_index_by_name(&self, name: &str) -> Option<usize> {
        (0..self.dim()).find(|&i| self.basis_name(i) == name)
    }

    /// Image of a root under a word of simple reflections (applied right to left).
    pub fn reflect_root(&self, word: &[usize], coords: &[i64]) -> Vec<i64> {
        let mut r = coords.to_vec();
        for &i in word.iter().rev() {
            let i = i - 1;
            let pairing: i64 = (0..self.rank()).map(|j| r[j] * self.cartan[i][j]).sum();
            r[i] -= pairing;
        }
        r
    }

    /// Shortest word `w` (in 1-based simple reflections) with `w(from) = to`.
    pub fn weyl_word_between(&self, from: &[i64], to: &[i64]) -> Option<Vec<usize>> {
        let mut seen: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(from.to_vec(), Vec::new());
        queue.push_back(from.to_vec());
        while let Some(r) = queue.pop_front() {
            let word = seen[&r].clone();
            if r == to {
                return Some(word);
            }
            for i in 1..=self.rank() {
                let next = self.reflect_root(&[i], &r);
                if !seen.contains_key(&next) {
                    let mut w = vec![i];
                    w.extend(word.iter().copied());
                    seen.insert(next.clone(), w);
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn ad_matrix(&self, x: &AlgElem) -> Vec<Vec<Q>> {
        let dim = self.dim();
        let mut m = vec![vec![Q::zero(); dim]; dim];
        for c in 0..dim {
            let img = self.bracket(x, &AlgElem::basis(c));
            for (r, v) in img.terms() {
                m[r][c] = v.clone();
            }
        }
        m
    }

    /// Realize a word in simple reflections as an automorphism of `g`.
    ///
    /// Each `s_i` is `exp(ad e_i) exp(-ad f_i) exp(ad e_i)`; the word acts
    /// right to left.
    pub fn weyl_element(&self, word: &[usize]) -> Result<WeylAutomorphism> {
        let dim = self.dim();
        let mut total = identity(dim);
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(Error::BadReflection(i));
            }
            let e = self.x_pos(i - 1);
            let f = self.x_neg(i - 1);
            let ee = exp_nilpotent(&self.ad_matrix(&e));
            let ff = exp_nilpotent(&scale_matrix(&self.ad_matrix(&f), &-Q::one()));
            let s = mat_mul(&mat_mul(&ee, &ff), &ee);
            total = mat_mul(&total, &s);
        }
        let images = (0..dim)
            .map(|c| AlgElem::from_terms((0..dim).map(|r| (r, total[r][c].clone()))))
            .collect();
        Ok(WeylAutomorphism { word: word.to_vec(), images })
    }
}

fn identity(n: usize) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

fn scale_matrix(m: &[Vec<Q>], s: &Q) -> Vec<Vec<Q>> {
    m.iter().map(|row| row.iter().map(|v| v * s).collect()).collect()
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![Q::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn exp_nilpotent(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut out = identity(n);
    let mut power = identity(n);
    let mut fact = BigInt::one();
    for j in 1..=n {
        power = mat_mul(&power, m);
        if power.iter().all(|row| row.iter().all(Zero::is_zero)) {
            break;
        }
        fact *= BigInt::from(j);
        let inv = Q::new(BigInt::one(), fact.clone());
        for r in 0..n {
            for c in 0..n {
                if !power[r][c].is_zero() {
                    out[r][c] += &power[r][c] * &inv;
                }
            }
        }
    }
    out
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Gram matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}

/// An inner automorphism of `g` attached to a Weyl-group word.
#[derive(Clone, Debug)]
pub struct WeylAutomorphism {
    word: Vec<usize>,
    images: Vec<AlgElem>,
}

impl WeylAutomorphism {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Image of the `i`-th basis element.
    pub fn image(&self, i: usize) -> &AlgElem {
        &self.images[i]
    }

    pub fn apply(&self, x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (i, c) in x.terms() {
            for (j, d) in self.images[i].terms() {
                out.add_term(j, c * d);
            }
        }
        out
    }

    /// If `x` is a multiple of one basis vector, that index and scalar.
    pub fn as_single_term(x: &AlgElem) -> Option<(usize, Q)> {
        if x.len() == 1 {
            x.terms().next().map(|(i, c)| (i, c.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*b{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> LieData {
        LieData::build(s.parse().unwrap(), 4).unwrap()
    }

    #[test]
    fn sl2_facts() {
        let g = alg("A1");
        assert_eq!(g.dim(), 3);
        assert_eq!(g.dual_coxeter(), 2);
        assert_eq!(g.num_positive_roots(), 1);
        assert_eq!(g.positive_roots()[g.theta()], vec![1]);
    }

    #[test]
    fn dimensions_and_dual_coxeter_numbers() {
        let cases = [
            ("A1", 3, 2),
            ("A2", 8, 3),
            ("A3", 15, 4),
            ("A4", 24, 5),
            ("B2", 10, 3),
            ("B3", 21, 5),
            ("B4", 36, 7),
            ("C2", 10, 3),
            ("C3", 21, 4),
            ("C4", 36, 5),
            ("D4", 28, 6),
            ("F4", 52, 9),
            ("G2", 14, 4),
        ];
        for (name, dim, hv) in cases {
            let g = alg(name);
            assert_eq!(g.dim(), dim, "{name}");
            assert_eq!(g.dual_coxeter(), hv, "{name}");
        }
    }

    #[test]
    fn g2_short_roots_and_rescaled_levels() {
        let g = alg("G2");
        let short = g.root_of(&[1, 0]).unwrap();
        assert_eq!(g.root_norm(short), frac(2, 3));
        assert_eq!(g.root_norm(g.theta()), q(2));
        assert_eq!(g.level_rescale(short, 2), 6);
        let c = alg("C2");
        let short = c.root_of(&[1, 0]).unwrap();
        assert_eq!(c.level_rescale(short, 2), 4);
        let a = alg("A1");
        assert_eq!(a.level_rescale(a.theta(), 5), 5);
    }

    #[test]
    fn rank_cap_and_bad_types() {
        assert!(matches!(
            LieData::build("E6".parse().unwrap(), 4),
            Err(Error::RankAboveCap { rank: 6, cap: 4 })
        ));
        assert!(LieData::build("E6".parse().unwrap(), 6).is_ok());
        assert!(matches!("G3".parse::<AlgebraType>(), Err(Error::UnsupportedAlgebra(_))));
        assert!(matches!("D3".parse::<AlgebraType>(), Err(Error::UnsupportedAlgebra(_))));
        assert!(matches!("Q1".parse::<AlgebraType>(), Err(Error::UnsupportedAlgebra(_))));
    }

    #[test]
    fn sl2_relations_and_form_values() {
        let g = alg("A1");
        let (x, h, y) = g.sl2_triple(0);
        assert_eq!(g.bracket(&x, &y), h);
        assert_eq!(g.bracket(&h, &x), x.scale(&q(2)));
        assert_eq!(g.bracket(&h, &y), y.scale(&q(-2)));
        assert_eq!(g.form(&h, &h), q(2));
        assert_eq!(g.form(&x, &y), q(1));
    }

    #[test]
    fn cartan_is_abelian() {
        let g = alg("A2");
        let a = AlgElem::basis(g.cartan_index(0));
        let b = AlgElem::basis(g.cartan_index(1));
        assert!(g.bracket(&a, &b).is_zero());
    }

    #[test]
    fn short_root_form_values() {
        let g = alg("G2");
        let r = g.root_of(&[1, 0]).unwrap();
        let (x, h, y) = g.sl2_triple(r);
        assert_eq!(g.form(&h, &h), q(6));
        assert_eq!(g.form(&x, &y), q(3));
    }

    #[test]
    fn positive_root_errors() {
        let g = alg("A2");
        assert!(matches!(g.positive_root(&[-1, 0]), Err(Error::NotPositiveRoot(_))));
        assert!(matches!(g.positive_root(&[2, 0]), Err(Error::NotARoot(_))));
        assert_eq!(g.positive_root(&[1, 1]).unwrap(), g.theta());
    }

    #[test]
    fn names() {
        let g = alg("G2");
        assert_eq!(g.root_name(&[3, 2]), "3a1+2a2");
        assert_eq!(g.root_name(&[-1, -1]), "-a1-a2");
        assert_eq!(g.basis_name(g.cartan_index(1)), "h[2]");
        assert_eq!(g.basis_name(g.neg_index(g.theta())), "x[-3a1-2a2]");
        assert_eq!(g.basis_index_by_name("x[-3a1-2a2]"), Some(0));
    }

    #[test]
    fn reflection_negates_in_sl2() {
        let g = alg("A1");
        let s = g.weyl_element(&[1]).unwrap();
        let h = g.coroot(0);
        assert_eq!(s.apply(&h), -&h);
        assert!(matches!(g.weyl_element(&[2]), Err(Error::BadReflection(2))));
    }

    #[test]
    fn weyl_words_reach_every_long_root() {
        let g = alg("C2");
        let theta = g.positive_roots()[g.theta()].clone();
        for (r, coords) in g.positive_roots().iter().enumerate() {
            let w = g.weyl_word_between(&theta, coords);
            assert_eq!(w.is_some(), g.is_long(r));
            if let Some(w) = w {
                assert_eq!(&g.reflect_root(&w, &theta), coords);
            }
        }
    }
}
