//! Sparse fraction-free linear algebra over the integers.
//!
//! Rows are sorted `(column, coefficient)` lists kept primitive (content 1,
//! positive leading entry). Rational input is cleared of denominators first;
//! spans do not care about row scaling, and [`kernel`] clears one common
//! denominator across all rows so relations are unaffected.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, content, Q};

/// A sparse integer row, sorted by column with no zero entries.
pub type IntRow<C> = Vec<(C, BigInt)>;

/// Clears denominators and divides out the content.
pub fn int_row<C: Ord + Clone>(terms: impl IntoIterator<Item = (C, Q)>) -> IntRow<C> {
    let mut terms: Vec<(C, Q)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let den = common_denominator(terms.iter().map(|(_, c)| c));
    let mut row: IntRow<C> =
        terms.into_iter().map(|(col, c)| (col, (c * Q::from_integer(den.clone())).to_integer())).collect();
    normalize(&mut row);
    row
}

fn normalize<C>(row: &mut IntRow<C>) {
    let Some(first) = row.first() else { return };
    let negative = first.1.is_negative();
    let g = content(row.iter().map(|(_, c)| c));
    if g.is_one() && !negative {
        return;
    }
    let g = if negative { -g } else { g };
    for (_, c) in row.iter_mut() {
        *c = &*c / &g;
    }
}

/// `a * x - b * y`.
fn combine<C: Ord + Clone>(a: &BigInt, x: &IntRow<C>, b: &BigInt, y: &IntRow<C>) -> IntRow<C> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.0.cmp(&q.0),
            (Some(_), None) => core::cmp::Ordering::Less,
            _ => core::cmp::Ordering::Greater,
        };
        match ord {
            core::cmp::Ordering::Less => {
                out.push((x[i].0.clone(), a * &x[i].1));
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push((y[j].0.clone(), -(b * &y[j].1)));
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A row echelon form: every stored row has a distinct leading column.
#[derive(Clone, Debug)]
pub struct Echelon<C: Ord + Clone> {
    rows: Vec<IntRow<C>>,
    pivot_of: BTreeMap<C, usize>,
}

impl<C: Ord + Clone> Default for Echelon<C> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivot_of: BTreeMap::new() }
    }
}

impl<C: Ord + Clone> Echelon<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntRow<C>] {
        &self.rows
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: IntRow<C>) -> IntRow<C> {
        let mut pos = 0;
        while pos < row.len() {
            let Some(&r) = self.pivot_of.get(&row[pos].0) else {
                pos += 1;
                continue;
            };
            let pivot_row = &self.rows[r];
            let p = &pivot_row[0].1;
            let c = &row[pos].1;
            let g = p.gcd(c);
            let (a, b) = (p / &g, c / &g);
            row = combine(&a, &row, &b, pivot_row);
            normalize(&mut row);
            // columns before the pivot are untouched, the pivot itself is gone
            let piv = &pivot_row[0].0;
            pos = row.partition_point(|(col, _)| col <= piv);
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: IntRow<C>) -> bool {
        let mut red = self.reduce(row);
        if red.is_empty() {
            return false;
        }
        normalize(&mut red);
        self.pivot_of.insert(red[0].0.clone(), self.rows.len());
        self.rows.push(red);
        true
    }

    pub fn contains(&self, row: IntRow<C>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Integer relations among `images`: each returned row lists `(i, c_i)` with
/// `sum c_i images[i] = 0`, and the rows form a basis of all such relations.
pub fn kernel<C: Ord + Clone>(images: &[Vec<(C, Q)>]) -> Vec<IntRow<usize>> {
    let den = common_denominator(images.iter().flat_map(|r| r.iter().map(|(_, c)| c)));
    let den = Q::from_integer(den);
    let mut ech: Echelon<Aug<C>> = Echelon::new();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut row: Vec<(Aug<C>, BigInt)> = img
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(col, c)| (Aug::Image(col.clone()), (c * &den).to_integer()))
            .collect();
        row.sort_by(|a, b| a.0.cmp(&b.0));
        row.push((Aug::Tag(i), BigInt::one()));
        let red = ech.reduce(row);
        if matches!(red.first(), Some((Aug::Tag(_), _))) {
            out.push(
                red.into_iter()
                    .map(|(col, c)| match col {
                        Aug::Tag(j) => (j, c),
                        Aug::Image(_) => unreachable!("image columns precede tags"),
                    })
                    .collect(),
            );
        } else {
            ech.insert(red);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Aug<C> {
    Image(C),
    Tag(usize),
}

/// A basis of `span(a) ∩ span(b)`.
pub fn intersect<C: Ord + Clone>(a: &[IntRow<C>], b: &[IntRow<C>]) -> Vec<IntRow<C>> {
    let basis = |rows: &[IntRow<C>]| {
        let mut e = Echelon::new();
        for r in rows {
            e.insert(r.clone());
        }
        e.rows
    };
    let a = basis(a);
    let b = basis(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let to_q = |r: &IntRow<C>, neg: bool| -> Vec<(C, Q)> {
        r.iter()
            .map(|(col, c)| (col.clone(), Q::from_integer(if neg { -c.clone() } else { c.clone() })))
            .collect()
    };
    let images: Vec<Vec<(C, Q)>> =
        a.iter().map(|r| to_q(r, false)).chain(b.iter().map(|r| to_q(r, true))).collect();
    let mut out = Echelon::new();
    for rel in kernel(&images) {
        let mut acc: IntRow<C> = Vec::new();
        for (i, c) in rel.iter().filter(|(i, _)| *i < a.len()) {
            acc = combine(&BigInt::one(), &acc, &-c, &a[*i]);
        }
        out.insert(acc);
    }
    out.rows
}
