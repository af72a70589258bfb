//! Exact Fock-space arithmetic for the rank-one Heisenberg algebra.
//!
//! Vectors are finite rational combinations of monomials `h(-i_1)...h(-i_k)`
//! applied to a cyclic vector. In the untwisted sector the `i_j` are positive
//! integers, in the twisted sector they lie in `1/2 + N`. Mode indices are
//! stored doubled so both sectors share one integer representation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};

/// Which Heisenberg algebra acts: integer modes or half-integer modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Untwisted,
    Twisted,
}

impl Sector {
    /// Sector whose modes have the parity of this doubled index.
    pub fn of_doubled(d: i64) -> Sector {
        if d.rem_euclid(2) == 0 {
            Sector::Untwisted
        } else {
            Sector::Twisted
        }
    }

    pub fn admits(self, i: Index) -> bool {
        Sector::of_doubled(i.doubled()) == self
    }

    /// Smallest positive mode of the sector, doubled.
    pub(crate) fn min_positive(self) -> u32 {
        match self {
            Sector::Untwisted => 2,
            Sector::Twisted => 1,
        }
    }

    /// Smallest non-negative mode of the sector, doubled.
    pub(crate) fn min_annihilator(self) -> u32 {
        match self {
            Sector::Untwisted => 0,
            Sector::Twisted => 1,
        }
    }
}

/// A mode index `d/2`, stored as the doubled value `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(i64);

impl Index {
    pub fn integer(n: i64) -> Index {
        Index(2 * n)
    }

    pub fn from_doubled(d: i64) -> Index {
        Index(d)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.rem_euclid(2) == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_rational(self) -> Rational {
        frac(self.0, 2)
    }

    pub fn sector(self) -> Sector {
        Sector::of_doubled(self.0)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// A product `h(-i_1)...h(-i_k)` of creation operators.
///
/// Parts are kept strictly decreasing with their exponents collected, so
/// equal products have equal representations. The derived ordering sorts by
/// weight first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial {
    weight2: u64,
    parts: Vec<(u32, u32)>,
}

impl FockMonomial {
    pub fn vacuum() -> FockMonomial {
        FockMonomial::default()
    }

    /// Builds a monomial from doubled parts in any order.
    pub fn from_doubled_parts<I: IntoIterator<Item = u32>>(parts: I) -> FockMonomial {
        let mut m = FockMonomial::vacuum();
        for p in parts {
            m.push(p, 1);
        }
        m
    }

    /// Builds an untwisted monomial from integer parts, e.g. `[3, 1]` for `h(-3)h(-1)`.
    pub fn from_parts(parts: &[u32]) -> FockMonomial {
        FockMonomial::from_doubled_parts(parts.iter().map(|p| 2 * p))
    }

    fn push(&mut self, part2: u32, count: u32) {
        debug_assert!(part2 > 0);
        if count == 0 {
            return;
        }
        self.weight2 += u64::from(part2) * u64::from(count);
        match self.parts.binary_search_by(|(p, _)| part2.cmp(p)) {
            Ok(pos) => self.parts[pos].1 += count,
            Err(pos) => self.parts.insert(pos, (part2, count)),
        }
    }

    /// `(doubled part, exponent)` pairs, largest part first.
    pub fn groups(&self) -> &[(u32, u32)] {
        &self.parts
    }

    /// Every part, with repetition, largest first (doubled).
    pub fn doubled_parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.parts
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
    }

    pub fn weight_doubled(&self) -> u64 {
        self.weight2
    }

    pub fn weight(&self) -> Rational {
        frac(self.weight2 as i64, 2)
    }

    /// Number of creation operators.
    pub fn len(&self) -> u32 {
        self.parts.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_vacuum()
    }

    pub fn max_part_doubled(&self) -> u32 {
        self.parts.first().map_or(0, |&(p, _)| p)
    }

    pub fn exponent(&self, part2: u32) -> u32 {
        self.parts
            .binary_search_by(|(p, _)| part2.cmp(p))
            .map_or(0, |pos| self.parts[pos].1)
    }

    /// Sector of the parts, `None` for the bare cyclic vector.
    pub fn sector(&self) -> Option<Sector> {
        self.parts
            .first()
            .map(|&(p, _)| Sector::of_doubled(i64::from(p)))
    }

    pub fn with_part(&self, part2: u32) -> FockMonomial {
        let mut m = self.clone();
        m.push(part2, 1);
        m
    }

    fn without_one(&self, part2: u32) -> FockMonomial {
        let mut m = self.clone();
        let pos = m
            .parts
            .binary_search_by(|(p, _)| part2.cmp(p))
            .expect("part present");
        m.weight2 -= u64::from(part2);
        if m.parts[pos].1 == 1 {
            m.parts.remove(pos);
        } else {
            m.parts[pos].1 -= 1;
        }
        m
    }

    /// Product of two monomials in the commutative algebra of creators.
    pub fn concat(&self, other: &FockMonomial) -> FockMonomial {
        let mut m = self.clone();
        for &(p, e) in &other.parts {
            m.push(p, e);
        }
        m
    }
}

/// A finite rational combination of monomials in one sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    sector: Sector,
    terms: BTreeMap<FockMonomial, Rational>,
}

impl FockVector {
    pub fn zero(sector: Sector) -> FockVector {
        FockVector {
            sector,
            terms: BTreeMap::new(),
        }
    }

    /// The cyclic vector: `vac` in M(1), `u` in a module.
    pub fn vacuum(sector: Sector) -> FockVector {
        FockVector::from_monomial(sector, FockMonomial::vacuum(), Rational::one())
    }

    pub fn from_monomial(sector: Sector, m: FockMonomial, coeff: Rational) -> FockVector {
        let mut v = FockVector::zero(sector);
        v.add_term(m, coeff);
        v
    }

    /// Builds a vector from `(coefficient, monomial)` pairs, checking parity.
    pub fn from_terms<I>(sector: Sector, terms: I) -> Result<FockVector>
    where
        I: IntoIterator<Item = (Rational, FockMonomial)>,
    {
        let mut v = FockVector::zero(sector);
        for (c, m) in terms {
            if let Some(found) = m.sector() {
                if found != sector {
                    return Err(Error::Sector {
                        expected: sector,
                        found,
                    });
                }
            }
            v.add_term(m, c);
        }
        Ok(v)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &FockMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FockVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        self.check_same_sector(other);
        if c.is_one() {
            for (m, x) in &other.terms {
                self.add_term(m.clone(), x.clone());
            }
        } else {
            for (m, x) in &other.terms {
                self.add_term(m.clone(), x * c);
            }
        }
    }

    /// `self += c * h(-part2/2) other`.
    pub(crate) fn add_created(&mut self, other: &FockVector, part2: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        self.check_same_sector(other);
        for (m, x) in &other.terms {
            self.add_term(m.with_part(part2), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> FockVector {
        let mut out = FockVector::zero(self.sector);
        out.add_scaled(self, c);
        out
    }

    fn check_same_sector(&self, other: &FockVector) {
        assert!(
            self.sector == other.sector || self.is_zero() || other.is_zero(),
            "mixing {:?} and {:?} vectors",
            self.sector,
            other.sector
        );
    }

    /// Largest weight occurring, `None` for the zero vector.
    pub fn max_weight_doubled(&self) -> Option<u64> {
        self.terms.keys().map(FockMonomial::weight_doubled).max()
    }

    /// Largest weight as an integer, for untwisted vectors (zero vector gives 0).
    pub fn max_weight(&self) -> i64 {
        (self.max_weight_doubled().unwrap_or(0) / 2) as i64
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.keys().map(FockMonomial::weight_doubled);
        match w.next() {
            None => true,
            Some(first) => w.all(|x| x == first),
        }
    }

    /// Largest part (doubled) over all monomials.
    pub fn max_part_doubled(&self) -> u32 {
        self.terms
            .keys()
            .map(FockMonomial::max_part_doubled)
            .max()
            .unwrap_or(0)
    }

    /// Largest number of creation operators in a monomial.
    pub fn max_len(&self) -> u32 {
        self.terms.keys().map(FockMonomial::len).max().unwrap_or(0)
    }

    fn check_index(&self, i: Index) -> Result<u32> {
        if i.doubled() <= 0 {
            return Err(Error::NonPositiveIndex(i.to_string()));
        }
        if !self.sector.admits(i) {
            return Err(Error::Sector {
                expected: self.sector,
                found: i.sector(),
            });
        }
        Ok(i.doubled() as u32)
    }

    /// Left multiplication by the creation operator `h(-i)`.
    pub fn create(&self, i: Index) -> Result<FockVector> {
        let p = self.check_index(i)?;
        Ok(self.create_unchecked(p))
    }

    pub(crate) fn create_unchecked(&self, part2: u32) -> FockVector {
        FockVector {
            sector: self.sector,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_part(part2), c.clone()))
                .collect(),
        }
    }

    /// Action of the annihilation operator `h(i)`, `i > 0`, which kills the
    /// cyclic vector and acts on creators through `[h(i), h(-i)] = i`.
    pub fn annihilate(&self, i: Index) -> Result<FockVector> {
        let p = self.check_index(i)?;
        Ok(self.annihilate_unchecked(p))
    }

    pub(crate) fn annihilate_unchecked(&self, part2: u32) -> FockVector {
        let mut out = FockVector::zero(self.sector);
        let i = frac(i64::from(part2), 2);
        for (m, c) in &self.terms {
            let k = m.exponent(part2);
            if k > 0 {
                out.add_term(m.without_one(part2), c * &i * int(i64::from(k)));
            }
        }
        out
    }

    /// The involution `h(-i_1)...h(-i_k) -> (-1)^k h(-i_1)...h(-i_k)`.
    pub fn theta(&self) -> FockVector {
        FockVector {
            sector: self.sector,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.len() % 2 == 0 { c.clone() } else { -c };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Splits into homogeneous components keyed by doubled weight.
    pub fn weight_decompose_doubled(&self) -> BTreeMap<u64, FockVector> {
        let mut out: BTreeMap<u64, FockVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight_doubled())
                .or_insert_with(|| FockVector::zero(self.sector))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Splits an untwisted vector into homogeneous components keyed by weight.
    pub fn weight_decompose(&self) -> BTreeMap<u64, FockVector> {
        self.weight_decompose_doubled()
            .into_iter()
            .map(|(w, v)| (w / 2, v))
            .collect()
    }

    /// Product in the commutative algebra of creation operators.
    pub fn multiply(&self, other: &FockVector) -> FockVector {
        self.check_same_sector(other);
        let sector = if self.is_zero() {
            other.sector
        } else {
            self.sector
        };
        let mut out = FockVector::zero(sector);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// The translation operator `L(-1)`, acting as the derivation with
    /// `h(-i) -> i h(-i-1)` and killing the cyclic vector.
    pub fn translate(&self) -> FockVector {
        let mut out = FockVector::zero(self.sector);
        for (m, c) in &self.terms {
            for &(p, e) in m.groups() {
                let coeff = c * frac(i64::from(p), 2) * int(i64::from(e));
                out.add_term(m.without_one(p).with_part(p + 2), coeff);
            }
        }
        out
    }

    /// True iff every monomial has an even number of parts.
    pub fn is_theta_fixed(&self) -> bool {
        self.terms.keys().all(|m| m.len() % 2 == 0)
    }
}

impl Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for FockVector {
    type Output = FockVector;
    fn add(mut self, rhs: FockVector) -> FockVector {
        self += &rhs;
        self
    }
}

impl Sub for FockVector {
    type Output = FockVector;
    fn sub(mut self, rhs: FockVector) -> FockVector {
        self -= &rhs;
        self
    }
}

impl AddAssign<&FockVector> for FockVector {
    fn add_assign(&mut self, rhs: &FockVector) {
        if self.is_zero() {
            self.sector = rhs.sector;
        }
        self.add_scaled(rhs, &Rational::one());
    }
}

impl SubAssign<&FockVector> for FockVector {
    fn sub_assign(&mut self, rhs: &FockVector) {
        if self.is_zero() {
            self.sector = rhs.sector;
        }
        self.add_scaled(rhs, &-Rational::one());
    }
}

impl Neg for &FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        self.scale(&-Rational::one())
    }
}

impl Mul<&FockVector> for &Rational {
    type Output = FockVector;
    fn mul(self, rhs: &FockVector) -> FockVector {
        rhs.scale(self)
    }
}

/// All monomials of the given doubled weight in a sector.
pub fn basis_doubled(weight2: u32, sector: Sector) -> Vec<FockMonomial> {
    fn rec(
        remaining: u32,
        max_part: u32,
        step: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<FockMonomial>,
    ) {
        if remaining == 0 {
            out.push(FockMonomial::from_doubled_parts(current.iter().copied()));
            return;
        }
        let mut p = max_part.min(remaining);
        // keep the parity of the sector
        while p > 0 {
            if p % 2 == step % 2 {
                current.push(p);
                rec(remaining - p, p, step, current, out);
                current.pop();
            }
            p -= 1;
        }
    }
    let step = sector.min_positive();
    let mut out = Vec::new();
    rec(weight2, weight2, step, &mut Vec::new(), &mut out);
    out
}

/// Monomials of integer weight `w` in the untwisted sector.
pub fn basis(weight: u32) -> Vec<FockMonomial> {
    basis_doubled(2 * weight, Sector::Untwisted)
}

/// Basis vectors of all doubled weights up to `max_weight2`.
pub fn basis_vectors_up_to(max_weight2: u32, sector: Sector) -> Vec<FockVector> {
    (0..=max_weight2)
        .flat_map(|w| basis_doubled(w, sector))
        .map(|m| FockVector::from_monomial(sector, m, Rational::one()))
        .collect()
}

/// Restriction on the number of parts when counting partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    All,
}

/// Number of partitions of `n` with the requested parity of length, i.e. the
/// dimension of the weight-`n` subspace of M(1)^+ (even), M(1)^- (odd) or
/// M(1) (all).
///
/// Uses the products `prod 1/(1-q^k)` and `prod 1/(1+q^k)`, whose
/// coefficients are `p_even + p_odd` and `p_even - p_odd`.
pub fn graded_dim(n: usize, parity: Parity) -> u128 {
    let mut total = vec![0i128; n + 1];
    let mut signed = vec![0i128; n + 1];
    total[0] = 1;
    signed[0] = 1;
    for k in 1..=n {
        for j in k..=n {
            total[j] = total[j]
                .checked_add(total[j - k])
                .expect("partition count overflow");
            signed[j] -= signed[j - k];
        }
    }
    let (p, a) = (total[n], signed[n]);
    let value = match parity {
        Parity::All => p,
        Parity::Even => (p + a) / 2,
        Parity::Odd => (p - a) / 2,
    };
    value as u128
}
