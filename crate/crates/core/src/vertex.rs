//! Modes of vertex operators on M(1) and on its (twisted) modules.
//!
//! For `u = h(-i_1)...h(-i_k)vac` the field is the normal-ordered product of
//! the derivative fields `h(x)^{(i_j - 1)} / (i_j - 1)!`, so
//!
//! ```text
//! u_n = sum over (m_1..m_k) with sum(m_j + i_j) = n + 1 of
//!       prod_j C(-m_j - 1, i_j - 1) : h(m_1) ... h(m_k) :
//! ```
//!
//! with annihilators (`m >= 0`) to the right. The same expansion with
//! half-integer `m` gives the untwisted-looking operator `Y_0` used on twisted
//! modules. The sum is evaluated per split of the factors into annihilators
//! and creators: annihilators act on the target vector first (bounded by its
//! largest part and the Whittaker data), then the creator factors are summed
//! over compositions of the residual weight by dynamic programming.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{FockVector, Sector};
use crate::rational::{binomial, binomial_int, frac, int, sign_pow, Rational};

/// The space a field acts on: the sector of its modes and the eigenvalues of
/// the non-negative modes on the cyclic vector.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Target<'a> {
    pub sector: Sector,
    /// `eigen[k]` is the eigenvalue of the k-th non-negative mode of the sector
    /// (`h(k)` untwisted, `h(k + 1/2)` twisted); missing entries are zero.
    pub eigen: &'a [Rational],
}

impl<'a> Target<'a> {
    pub fn vacuum_module() -> Target<'static> {
        Target {
            sector: Sector::Untwisted,
            eigen: &[],
        }
    }

    fn eigen_at(&self, a2: u32) -> Option<&Rational> {
        let k = (a2 - self.sector.min_annihilator()) / 2;
        self.eigen.get(k as usize).filter(|z| !z.is_zero())
    }

    fn max_eigen_doubled(&self) -> u32 {
        self.eigen
            .iter()
            .rposition(|z| !z.is_zero())
            .map_or(0, |k| self.sector.min_annihilator() + 2 * k as u32)
    }

    /// Action of `h(a2/2)`, `a2 >= 0`, on a module vector.
    fn annihilate(&self, a2: u32, v: &FockVector) -> FockVector {
        let mut out = if a2 > 0 {
            v.annihilate_unchecked(a2)
        } else {
            FockVector::zero(self.sector)
        };
        if let Some(z) = self.eigen_at(a2) {
            out.add_scaled(v, z);
        }
        out
    }

    /// Largest annihilation mode (doubled) that can act non-trivially on `w`
    /// or anything obtained from it by annihilation.
    pub fn annihilation_bound(&self, w: &FockVector) -> u32 {
        w.max_part_doubled().max(self.max_eigen_doubled())
    }
}

/// Memoized coefficients and creator tables shared by the splits of one
/// `field_mode` call.
struct Workspace {
    sector: Sector,
    annihilator_coeff: HashMap<(i64, u32), Rational>,
    creator_coeff: HashMap<(i64, u32), Rational>,
    creator_tables: HashMap<Vec<i64>, Vec<FockVector>>,
}

impl Workspace {
    fn new(sector: Sector) -> Workspace {
        Workspace {
            sector,
            annihilator_coeff: HashMap::new(),
            creator_coeff: HashMap::new(),
            creator_tables: HashMap::new(),
        }
    }

    /// `C(-a - 1, i - 1)` for the annihilation mode `a = a2/2`.
    fn annihilator(&mut self, i: i64, a2: u32) -> Rational {
        self.annihilator_coeff
            .entry((i, a2))
            .or_insert_with(|| binomial(&(-frac(i64::from(a2), 2) - int(1)), (i - 1) as u32))
            .clone()
    }

    /// `C(c - 1, i - 1)` for the creation mode `h(-c)`, `c = c2/2`.
    fn creator(&mut self, i: i64, c2: u32) -> Rational {
        self.creator_coeff
            .entry((i, c2))
            .or_insert_with(|| binomial(&(frac(i64::from(c2), 2) - int(1)), (i - 1) as u32))
            .clone()
    }

    /// `table[w2]` is the sum over creator modes `c_j` of doubled total weight
    /// `w2` of `prod_j C(c_j - 1, i_j - 1) h(-c_1)...h(-c_k)`, for `w2 <= max_w2`.
    fn creator_table(&mut self, creators: &[i64], max_w2: u32) -> &[FockVector] {
        let fresh = self
            .creator_tables
            .get(creators)
            .is_none_or(|t| t.len() <= max_w2 as usize);
        if fresh {
            let sector = self.sector;
            let len = max_w2 as usize + 1;
            let mut table = vec![FockVector::zero(sector); len];
            table[0] = FockVector::vacuum(sector);
            for &i in creators {
                let mut next = vec![FockVector::zero(sector); len];
                for (w, vec) in table.iter().enumerate() {
                    if vec.is_zero() {
                        continue;
                    }
                    let mut c2 = sector.min_positive();
                    while w as u32 + c2 <= max_w2 {
                        let coeff = self.creator(i, c2);
                        if !coeff.is_zero() {
                            next[w + c2 as usize].add_created(vec, c2, &coeff);
                        }
                        c2 += 2;
                    }
                }
                table = next;
            }
            self.creator_tables.insert(creators.to_vec(), table);
        }
        &self.creator_tables[creators]
    }
}

/// The mode `u_{n2/2}` of the normal-ordered field of `u` acting on `w`.
pub(crate) fn field_mode(u: &FockVector, n2: i64, w: &FockVector, target: &Target) -> FockVector {
    let mut out = FockVector::zero(target.sector);
    if w.is_zero() {
        return out;
    }
    let bound = target.annihilation_bound(w);
    let mut ws = Workspace::new(target.sector);
    for (mono, cu) in u.terms() {
        let groups: Vec<(i64, u32)> = mono
            .groups()
            .iter()
            .map(|&(p2, e)| (i64::from(p2 / 2), e))
            .collect();
        // odometer over the number of annihilators taken from each group
        let mut counts = vec![0u32; groups.len()];
        loop {
            let mut mult = cu.clone();
            let mut annihilators = Vec::new();
            let mut creators = Vec::new();
            for (&(i, e), &a) in groups.iter().zip(&counts) {
                mult *= binomial_int(i64::from(e), a);
                annihilators.extend(std::iter::repeat_n(i, a as usize));
                creators.extend(std::iter::repeat_n(i, (e - a) as usize));
            }
            let part = split_contribution(&mut ws, &annihilators, &creators, n2, w, target, bound);
            out.add_scaled(&part, &mult);

            let mut pos = 0;
            while pos < counts.len() && counts[pos] == groups[pos].1 {
                counts[pos] = 0;
                pos += 1;
            }
            if pos == counts.len() {
                break;
            }
            counts[pos] += 1;
        }
    }
    out
}

fn split_contribution(
    ws: &mut Workspace,
    annihilators: &[i64],
    creators: &[i64],
    n2: i64,
    w: &FockVector,
    target: &Target,
    bound: u32,
) -> FockVector {
    let sector = target.sector;
    let mut states: BTreeMap<i64, FockVector> = BTreeMap::new();
    states.insert(0, w.clone());
    for &i in annihilators {
        let mut next: BTreeMap<i64, FockVector> = BTreeMap::new();
        let mut a2 = sector.min_annihilator();
        while a2 <= bound {
            let coeff = ws.annihilator(i, a2);
            for (sigma, vec) in &states {
                let hv = target.annihilate(a2, vec);
                if hv.is_zero() {
                    continue;
                }
                next.entry(sigma + i64::from(a2) + 2 * i)
                    .or_insert_with(|| FockVector::zero(sector))
                    .add_scaled(&hv, &coeff);
            }
            a2 += 2;
        }
        next.retain(|_, v| !v.is_zero());
        if next.is_empty() {
            return FockVector::zero(sector);
        }
        states = next;
    }

    let creator_base: i64 = creators.iter().map(|i| 2 * i).sum::<i64>() - (n2 + 2);
    let needed = |sigma: i64| sigma + creator_base;
    let max_weight = states.keys().map(|&s| needed(s)).max().unwrap_or(-1);
    if max_weight < 0 {
        return FockVector::zero(sector);
    }
    let table = ws.creator_table(creators, max_weight as u32);

    let mut out = FockVector::zero(sector);
    for (sigma, vec) in &states {
        let w2 = needed(*sigma);
        if w2 < 0 {
            continue;
        }
        let c = &table[w2 as usize];
        if !c.is_zero() {
            out += &c.multiply(vec);
        }
    }
    out
}

fn require_untwisted(v: &FockVector) -> Result<()> {
    if v.sector() != Sector::Untwisted && !v.is_zero() {
        return Err(Error::Sector {
            expected: Sector::Untwisted,
            found: v.sector(),
        });
    }
    Ok(())
}

/// The n-th product `u_n v` in M(1).
pub fn nth_product(u: &FockVector, n: i64, v: &FockVector) -> Result<FockVector> {
    require_untwisted(u)?;
    require_untwisted(v)?;
    Ok(field_mode(u, 2 * n, v, &Target::vacuum_module()))
}

/// One past the largest `n` for which `u_n v` can be non-zero in M(1).
pub fn truncation_bound(u: &FockVector, v: &FockVector) -> i64 {
    u.max_weight() + v.max_weight()
}

/// A term `coefficient * (element)_{mode}` of a commutator formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub coefficient: Rational,
    pub element: FockVector,
    pub mode: i64,
}

/// `[u_i, v_j] = sum_k C(i, k) (u_k v)_{i + j - k}`, one entry per non-zero `u_k v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorExpansion {
    pub entries: Vec<CommutatorTerm>,
}

impl CommutatorExpansion {
    /// Action of the right-hand side on an element of M(1).
    pub fn apply(&self, w: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero(Sector::Untwisted);
        for t in &self.entries {
            out.add_scaled(&nth_product(&t.element, t.mode, w)?, &t.coefficient);
        }
        Ok(out)
    }
}

pub fn commutator_expansion(
    u: &FockVector,
    i: i64,
    v: &FockVector,
    j: i64,
) -> Result<CommutatorExpansion> {
    let mut entries = Vec::new();
    for k in 0..truncation_bound(u, v).max(0) {
        let element = nth_product(u, k, v)?;
        if element.is_zero() {
            continue;
        }
        entries.push(CommutatorTerm {
            coefficient: binomial_int(i, k as u32),
            element,
            mode: i + j - k,
        });
    }
    Ok(CommutatorExpansion { entries })
}

/// Both sides of the Borcherds identity
///
/// ```text
/// sum_i C(p,i) (u_{r+i} v)_{p+q-i} w
///   = sum_i (-1)^i C(r,i) ( u_{p+r-i} v_{q+i} w - (-1)^r v_{q+r-i} u_{p+i} w )
/// ```
pub fn borcherds_sides(
    u: &FockVector,
    v: &FockVector,
    w: &FockVector,
    p: i64,
    q: i64,
    r: i64,
) -> Result<(FockVector, FockVector)> {
    let mut lhs = FockVector::zero(Sector::Untwisted);
    let uv = truncation_bound(u, v);
    for i in 0..(uv - r).max(0) {
        let c = binomial_int(p, i as u32);
        if c.is_zero() {
            continue;
        }
        let inner = nth_product(u, r + i, v)?;
        lhs.add_scaled(&nth_product(&inner, p + q - i, w)?, &c);
    }

    let mut rhs = FockVector::zero(Sector::Untwisted);
    let last = (truncation_bound(v, w) - q).max(truncation_bound(u, w) - p);
    let sign_r = sign_pow(r);
    for i in 0..last.max(0) {
        let c = binomial_int(r, i as u32) * sign_pow(i);
        if c.is_zero() {
            continue;
        }
        let vw = nth_product(v, q + i, w)?;
        let first = nth_product(u, p + r - i, &vw)?;
        let uw = nth_product(u, p + i, w)?;
        let second = nth_product(v, q + r - i, &uw)?;
        rhs.add_scaled(&first, &c);
        rhs.add_scaled(&second, &-(&c * &sign_r));
    }
    Ok((lhs, rhs))
}

pub fn verify_borcherds(
    u: &FockVector,
    v: &FockVector,
    w: &FockVector,
    p: i64,
    q: i64,
    r: i64,
) -> Result<bool> {
    let (lhs, rhs) = borcherds_sides(u, v, w, p, q, r)?;
    Ok(lhs == rhs)
}

/// `L(-1)u` computed as `omega_0 u`.
pub fn l_minus_one(u: &FockVector) -> Result<FockVector> {
    let omega = crate::identities::omega();
    nth_product(&omega, 0, u)
}
