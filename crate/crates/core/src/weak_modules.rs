//! Mode actions of M(1) on the Whittaker modules `M(1, zeta)` and on the
//! twisted modules `M(1, zeta)(theta)`.
//!
//! On a twisted module `Y(u, x) = Y_0(e^{Delta_x} u, x)`, where
//! `Delta_x = sum c_mn h(m) h(n) x^{-m-n}` and the `c_mn` are the Taylor
//! coefficients of `-log(((1+x)^{1/2} + (1+y)^{1/2}) / 2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{FockVector, Index, Sector};
use crate::rational::{binomial, binomial_int, frac, Rational};
use crate::vertex::{field_mode, Target};

/// Sector plus the eigenvalues of the non-negative modes on the cyclic vector.
///
/// Untwisted: `(zeta_0, ..., zeta_r)`. Twisted: `(zeta_{1/2}, ..., zeta_{r-1/2})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WhittakerParams {
    sector: Sector,
    zeta: Vec<Rational>,
}

impl WhittakerParams {
    pub fn new(sector: Sector, zeta: Vec<Rational>) -> Result<WhittakerParams> {
        if zeta.is_empty() {
            return Err(Error::DegenerateInput("zeta must be non-empty".into()));
        }
        Ok(WhittakerParams { sector, zeta })
    }

    pub fn untwisted(zeta: Vec<Rational>) -> Result<WhittakerParams> {
        WhittakerParams::new(Sector::Untwisted, zeta)
    }

    pub fn twisted(zeta: Vec<Rational>) -> Result<WhittakerParams> {
        WhittakerParams::new(Sector::Twisted, zeta)
    }

    /// M(1) itself, i.e. `M(1, (0))`.
    pub fn vacuum_module() -> WhittakerParams {
        WhittakerParams {
            sector: Sector::Untwisted,
            zeta: vec![Rational::zero()],
        }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn zeta(&self) -> &[Rational] {
        &self.zeta
    }

    /// `r` as used to index the family: `len - 1` untwisted, `len` twisted.
    pub fn r(&self) -> usize {
        match self.sector {
            Sector::Untwisted => self.zeta.len() - 1,
            Sector::Twisted => self.zeta.len(),
        }
    }

    /// Eigenvalue of `h(i)` on the cyclic vector, zero outside the table.
    pub fn eigenvalue(&self, i: Index) -> Rational {
        if !self.sector.admits(i) || i.doubled() < 0 {
            return Rational::zero();
        }
        let k = (i.doubled() - i64::from(self.sector.min_annihilator())) / 2;
        self.zeta
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn negate(&self) -> WhittakerParams {
        WhittakerParams {
            sector: self.sector,
            zeta: self.zeta.iter().map(|z| -z).collect(),
        }
    }

    pub(crate) fn target(&self) -> Target<'_> {
        Target {
            sector: self.sector,
            eigen: &self.zeta,
        }
    }
}

impl fmt::Display for WhittakerParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zs: Vec<String> = self.zeta.iter().map(|z| z.to_string()).collect();
        write!(f, "M(1,({}))", zs.join(","))?;
        if self.sector == Sector::Twisted {
            write!(f, "(theta)")?;
        }
        Ok(())
    }
}

/// A vector `sum c_m m . u_zeta` in one of the modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    params: WhittakerParams,
    vector: FockVector,
}

impl ModuleVector {
    pub fn new(params: WhittakerParams, vector: FockVector) -> Result<ModuleVector> {
        if vector.sector() != params.sector && !vector.is_zero() {
            return Err(Error::Sector {
                expected: params.sector,
                found: vector.sector(),
            });
        }
        let vector = if vector.is_zero() {
            FockVector::zero(params.sector)
        } else {
            vector
        };
        Ok(ModuleVector { params, vector })
    }

    /// The cyclic vector `u_zeta`.
    pub fn cyclic(params: WhittakerParams) -> ModuleVector {
        let vector = FockVector::vacuum(params.sector);
        ModuleVector { params, vector }
    }

    pub fn params(&self) -> &WhittakerParams {
        &self.params
    }

    pub fn vector(&self) -> &FockVector {
        &self.vector
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    fn with_vector(&self, vector: FockVector) -> ModuleVector {
        ModuleVector {
            params: self.params.clone(),
            vector,
        }
    }

    /// If this vector is `c * u_zeta` (including `c = 0`), returns `c`.
    pub fn cyclic_multiple(&self) -> Option<Rational> {
        match self.vector.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.vector.terms().next().expect("one term");
                m.is_vacuum().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> ModuleVector {
        self.with_vector(self.vector.scale(c))
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, c: &Rational) {
        self.vector.add_scaled(&other.vector, c);
    }
}

/// Coefficients `c_mn` for `m + n <= maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmnTable {
    maxdeg: usize,
    // dense triangular storage, coeffs[m][n] with m + n <= maxdeg
    coeffs: Vec<Vec<Rational>>,
}

impl CmnTable {
    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    /// `c_mn`; panics if `m + n > maxdeg`.
    pub fn get(&self, m: usize, n: usize) -> &Rational {
        assert!(
            m + n <= self.maxdeg,
            "c_{m}{n} outside table of degree {}",
            self.maxdeg
        );
        &self.coeffs[m][n]
    }

    /// Entries with `m, n >= 1`, the only ones that act on M(1).
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.coeffs.iter().enumerate().skip(1).flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .skip(1)
                .map(move |(n, c)| ((m, n), c))
        })
    }
}

type Series2 = Vec<Vec<Rational>>;

fn series_zero(d: usize) -> Series2 {
    (0..=d).map(|m| vec![Rational::zero(); d + 1 - m]).collect()
}

fn series_mul(a: &Series2, b: &Series2, d: usize) -> Series2 {
    let mut out = series_zero(d);
    for (m1, row) in a.iter().enumerate() {
        for (n1, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for m2 in 0..=(d - m1 - n1) {
                for n2 in 0..=(d - m1 - n1 - m2) {
                    let y = &b[m2][n2];
                    if !y.is_zero() {
                        out[m1 + m2][n1 + n2] += x * y;
                    }
                }
            }
        }
    }
    out
}

/// Computes `c_mn` for `m + n <= maxdeg` by truncated bivariate series: the
/// binomial series of `(1+x)^{1/2}`, then `log(1 + A)` with `A` the
/// constant-free part of the average.
#[allow(clippy::needless_range_loop)]
pub fn cmn_table(maxdeg: usize) -> CmnTable {
    let d = maxdeg;
    let half = frac(1, 2);
    let mut a = series_zero(d);
    for k in 1..=d {
        let b = binomial(&half, k as u32) * &half;
        a[k][0] += &b;
        a[0][k] += &b;
    }
    let mut log = series_zero(d);
    let mut power = a.clone();
    for k in 1..=d {
        let c = if k % 2 == 1 {
            frac(1, k as i64)
        } else {
            frac(-1, k as i64)
        };
        for (m, row) in power.iter().enumerate() {
            for (n, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    log[m][n] += x * &c;
                }
            }
        }
        if k < d {
            power = series_mul(&power, &a, d);
        }
    }
    let coeffs = log
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect();
    CmnTable { maxdeg, coeffs }
}

static CMN_CACHE: OnceLock<RwLock<Arc<CmnTable>>> = OnceLock::new();

/// Process-wide table covering at least `maxdeg`, extended on demand.
pub fn cached_cmn_table(maxdeg: usize) -> Arc<CmnTable> {
    let cache = CMN_CACHE.get_or_init(|| RwLock::new(Arc::new(cmn_table(8))));
    {
        let current = cache.read().expect("cmn cache poisoned");
        if current.maxdeg >= maxdeg {
            return Arc::clone(&current);
        }
    }
    let mut current = cache.write().expect("cmn cache poisoned");
    if current.maxdeg < maxdeg {
        *current = Arc::new(cmn_table(maxdeg.max(2 * current.maxdeg)));
    }
    Arc::clone(&current)
}

/// `sum_d v_d x^{-d}` with finitely many non-zero `v_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XGradedFock {
    components: BTreeMap<u32, FockVector>,
}

impl XGradedFock {
    pub fn components(&self) -> &BTreeMap<u32, FockVector> {
        &self.components
    }

    pub fn get(&self, offset: u32) -> Option<&FockVector> {
        self.components.get(&offset)
    }

    fn add(&mut self, offset: u32, v: &FockVector, c: &Rational) {
        let entry = self
            .components
            .entry(offset)
            .or_insert_with(|| FockVector::zero(Sector::Untwisted));
        entry.add_scaled(v, c);
        if entry.is_zero() {
            self.components.remove(&offset);
        }
    }
}

fn apply_delta(x: &XGradedFock) -> XGradedFock {
    let mut out = XGradedFock {
        components: BTreeMap::new(),
    };
    for (&d, v) in &x.components {
        let top = v.max_part_doubled() / 2;
        let table = cached_cmn_table(v.max_weight() as usize);
        for m in 1..=top {
            let hm = v.annihilate_unchecked(2 * m);
            if hm.is_zero() {
                continue;
            }
            for n in 1..=top {
                let hmn = hm.annihilate_unchecked(2 * n);
                if hmn.is_zero() {
                    continue;
                }
                out.add(d + m + n, &hmn, table.get(m as usize, n as usize));
            }
        }
    }
    out
}

/// `e^{Delta_x} u = sum_k Delta_x^k u / k!`.
pub fn exp_delta(u: &FockVector) -> Result<XGradedFock> {
    if u.sector() != Sector::Untwisted && !u.is_zero() {
        return Err(Error::Sector {
            expected: Sector::Untwisted,
            found: u.sector(),
        });
    }
    let mut result = XGradedFock {
        components: BTreeMap::new(),
    };
    result.add(0, u, &Rational::one());
    let mut term = result.clone();
    let mut k = 1;
    loop {
        let mut next = apply_delta(&term);
        if next.components.is_empty() {
            break;
        }
        let inv = frac(1, k);
        for v in next.components.values_mut() {
            *v = v.scale(&inv);
        }
        for (&d, v) in &next.components {
            result.add(d, v, &Rational::one());
        }
        term = next;
        k += 1;
    }
    Ok(result)
}

/// `u_n w` for `u` in M(1) and `w` in an untwisted or twisted module.
///
/// Untwisted targets only see integer modes; on twisted targets the mode may
/// be a half-integer. Modes of the wrong parity give zero.
pub fn module_mode_action(u: &FockVector, n: Index, w: &ModuleVector) -> Result<ModuleVector> {
    if u.sector() != Sector::Untwisted && !u.is_zero() {
        return Err(Error::Sector {
            expected: Sector::Untwisted,
            found: u.sector(),
        });
    }
    let params = &w.params;
    let target = params.target();
    let out = match params.sector {
        Sector::Untwisted => {
            if n.is_integer() {
                field_mode(u, n.doubled(), &w.vector, &target)
            } else {
                FockVector::zero(Sector::Untwisted)
            }
        }
        Sector::Twisted => {
            let mut acc = FockVector::zero(Sector::Twisted);
            for (&d, v) in exp_delta(u)?.components() {
                let shifted = n.doubled() - 2 * i64::from(d);
                acc += &field_mode(v, shifted, &w.vector, &target);
            }
            acc
        }
    };
    Ok(w.with_vector(out))
}

/// `u_n` applied to `u_zeta`, returning the eigenvalue when the result lies in
/// the span of `u_zeta`.
pub fn cyclic_eigenvalue(
    u: &FockVector,
    n: Index,
    params: &WhittakerParams,
) -> Result<Option<Rational>> {
    let w = ModuleVector::cyclic(params.clone());
    Ok(module_mode_action(u, n, &w)?.cyclic_multiple())
}

/// Integer `s` and the eigenvalues `lambda_i`, `floor(s/2) < i <= s`, of the
/// Whittaker vector `u_zeta`.
pub fn whittaker_type_of(params: &WhittakerParams) -> Result<crate::whittaker::WhittakerType> {
    let zeta = params.zeta();
    if zeta.last().is_some_and(Zero::is_zero) {
        return Err(Error::DegenerateType);
    }
    let r = params.r();
    let (s, offset) = match params.sector() {
        Sector::Untwisted => {
            if r == 0 {
                return Err(Error::NotWhittaker);
            }
            (2 * r + 1, 1)
        }
        // zeta[a] = zeta_{a + 1/2}; j + k = i - 1 becomes a + b = i - 2
        Sector::Twisted => (2 * r, 2),
    };
    let lambda = ((r + 1)..=s)
        .map(|i| half_convolution(zeta, i - offset))
        .collect();
    crate::whittaker::WhittakerType::new(s as u32, lambda)
}

/// `1/2 * sum_{a + b = total} zeta[a] zeta[b]`.
pub(crate) fn half_convolution(zeta: &[Rational], total: usize) -> Rational {
    let mut acc = Rational::zero();
    for a in 0..=total {
        let b = total - a;
        if a < zeta.len() && b < zeta.len() {
            acc += &zeta[a] * &zeta[b];
        }
    }
    acc * frac(1, 2)
}

/// Eigenvalues of `J_i` on `u_zeta` for those `0 <= i <= 2s + 2` where `J_i u_zeta`
/// is a multiple of `u_zeta`, computed by direct mode action.
pub fn j_eigenvalues(params: &WhittakerParams) -> Result<BTreeMap<i64, Rational>> {
    let t = whittaker_type_of(params)?;
    let j = crate::identities::jay();
    let mut out = BTreeMap::new();
    let top = 2 * i64::from(t.s()) + 2;
    for i in 0..=top {
        if let Some(mu) = cyclic_eigenvalue(&j, Index::integer(i), params)? {
            out.insert(i, mu);
        }
    }
    Ok(out)
}

/// The closed form `sum_{i_1 + ... + i_4 = i - 3} zeta_{i_1} ... zeta_{i_4}`
/// for `J_i u_zeta`, summed over `N` (untwisted) or `1/2 + N` (twisted).
pub fn j_eigenvalue_closed_form(params: &WhittakerParams, i: i64) -> Rational {
    let zeta = params.zeta();
    // shift to zero-based indices: for twisted each index loses 1/2, so the
    // target drops by 2
    let total = match params.sector() {
        Sector::Untwisted => i - 3,
        Sector::Twisted => i - 5,
    };
    if total < 0 {
        return Rational::zero();
    }
    let len = zeta.len() as i64;
    let mut acc = Rational::zero();
    for a in 0..len {
        for b in 0..len {
            for c in 0..len {
                let d = total - a - b - c;
                if (0..len).contains(&d) {
                    acc += &zeta[a as usize]
                        * &zeta[b as usize]
                        * &zeta[c as usize]
                        * &zeta[d as usize];
                }
            }
        }
    }
    acc
}

/// Monomial basis of a module up to (doubled) creator weight `max_weight2`.
pub fn module_basis(params: &WhittakerParams, max_weight2: u32) -> Vec<ModuleVector> {
    crate::fock::basis_vectors_up_to(max_weight2, params.sector())
        .into_iter()
        .map(|v| ModuleVector {
            params: params.clone(),
            vector: v,
        })
        .collect()
}

/// Action of a commutator expansion on a module vector.
pub fn apply_expansion(
    expansion: &crate::vertex::CommutatorExpansion,
    w: &ModuleVector,
) -> Result<ModuleVector> {
    let mut out = w.with_vector(FockVector::zero(w.params.sector));
    for t in &expansion.entries {
        let x = module_mode_action(&t.element, Index::integer(t.mode), w)?;
        out.add_scaled(&x, &t.coefficient);
    }
    Ok(out)
}

/// The normal-ordered expansion of `(omega_{-p1} J_{-p2} vac)_n w`:
///
/// ```text
/// sum_{i < 0}  C(-i-1, p1-1) C(-j-1, p2-1) omega_i J_j w
/// + sum_{i >= 0} C(-i-1, p1-1) C(-j-1, p2-1) J_j omega_i w,   i + j = n + 1 - p1 - p2
/// ```
///
/// evaluated term by term. The sums are cut off using `J_j w = 0` for
/// `j > j_vanish` and `omega_i w = 0` for `i > omega_vanish`, which the caller
/// must guarantee.
pub fn oj_normal_ordered_action(
    p1: u32,
    p2: u32,
    n: i64,
    w: &ModuleVector,
    omega_vanish: i64,
    j_vanish: i64,
) -> Result<ModuleVector> {
    let (om, jy) = (crate::identities::omega(), crate::identities::jay());
    let total = n + 1 - i64::from(p1) - i64::from(p2);
    let coeff = |i: i64, j: i64| binomial_int(-i - 1, p1 - 1) * binomial_int(-j - 1, p2 - 1);
    let mut out = w.with_vector(FockVector::zero(w.params.sector));
    // i < 0 and j = total - i <= j_vanish
    for i in (total - j_vanish).min(0)..0 {
        let j = total - i;
        let c = coeff(i, j);
        if c.is_zero() {
            continue;
        }
        let x = module_mode_action(&jy, Index::integer(j), w)?;
        let x = module_mode_action(&om, Index::integer(i), &x)?;
        out.add_scaled(&x, &c);
    }
    for i in 0..=omega_vanish.max(-1) {
        let j = total - i;
        let c = coeff(i, j);
        if c.is_zero() {
            continue;
        }
        let x = module_mode_action(&om, Index::integer(i), w)?;
        let x = module_mode_action(&jy, Index::integer(j), &x)?;
        out.add_scaled(&x, &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{jay, omega};

    fn q(n: i64, d: i64) -> Rational {
        frac(n, d)
    }

    #[test]
    fn cmn_small_values() {
        let t = cmn_table(2);
        assert_eq!(t.get(0, 0), &q(0, 1));
        assert_eq!(t.get(1, 0), &q(-1, 4));
        assert_eq!(t.get(1, 1), &q(1, 16));
    }

    #[test]
    fn cmn_table_extends_consistently() {
        let small = cmn_table(4);
        let big = cmn_table(9);
        for m in 0..=4 {
            for n in 0..=(4 - m) {
                assert_eq!(small.get(m, n), big.get(m, n));
                assert_eq!(big.get(m, n), big.get(n, m));
            }
        }
        assert!(cached_cmn_table(12).maxdeg() >= 12);
    }

    #[test]
    fn exp_delta_examples() {
        let vac = FockVector::vacuum(Sector::Untwisted);
        let e = exp_delta(&vac).unwrap();
        assert_eq!(e.components().len(), 1);
        assert_eq!(e.get(0), Some(&vac));

        let e = exp_delta(&omega()).unwrap();
        assert_eq!(e.components().len(), 2);
        assert_eq!(e.get(0), Some(&omega()));
        assert_eq!(e.get(2), Some(&vac.scale(&q(1, 16))));

        let h = vac.create(Index::integer(1)).unwrap();
        let e = exp_delta(&h).unwrap();
        assert_eq!(e.components().len(), 1);
    }

    #[test]
    fn exp_delta_offsets_start_at_two() {
        let e = exp_delta(&jay()).unwrap();
        assert_eq!(e.get(0), Some(&jay()));
        assert!(e.components().keys().all(|&d| d == 0 || d >= 2));
    }

    #[test]
    fn heisenberg_zero_mode_on_whittaker_vector() {
        let p = WhittakerParams::untwisted(vec![q(3, 1)]).unwrap();
        let h = FockVector::vacuum(Sector::Untwisted)
            .create(Index::integer(1))
            .unwrap();
        assert_eq!(
            cyclic_eigenvalue(&h, Index::integer(0), &p).unwrap(),
            Some(q(3, 1))
        );
    }

    #[test]
    fn omega_on_whittaker_vectors() {
        let p = WhittakerParams::untwisted(vec![q(0, 1), q(2, 1)]).unwrap();
        assert_eq!(
            cyclic_eigenvalue(&omega(), Index::integer(3), &p).unwrap(),
            Some(q(2, 1))
        );
        let t = WhittakerParams::twisted(vec![q(0, 1)]).unwrap();
        assert_eq!(
            cyclic_eigenvalue(&omega(), Index::integer(1), &t).unwrap(),
            Some(q(1, 16))
        );
    }

    #[test]
    fn wrong_parity_mode_is_zero() {
        let p = WhittakerParams::untwisted(vec![q(1, 1), q(1, 1)]).unwrap();
        let w = ModuleVector::cyclic(p);
        let x = module_mode_action(&omega(), Index::from_doubled(3), &w).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn type_map_examples() {
        let t = whittaker_type_of(&WhittakerParams::untwisted(vec![q(0, 1), q(2, 1)]).unwrap())
            .unwrap();
        assert_eq!((t.s(), t.lambda().to_vec()), (3, vec![q(0, 1), q(2, 1)]));
        let t = whittaker_type_of(&WhittakerParams::twisted(vec![q(1, 1)]).unwrap()).unwrap();
        assert_eq!((t.s(), t.lambda().to_vec()), (2, vec![q(1, 2)]));
        let t = whittaker_type_of(&WhittakerParams::untwisted(vec![q(1, 1), q(1, 1)]).unwrap())
            .unwrap();
        assert_eq!(t.lambda().to_vec(), vec![q(1, 1), q(1, 2)]);
    }

    #[test]
    fn type_map_errors() {
        let p = WhittakerParams::untwisted(vec![q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(whittaker_type_of(&p), Err(Error::DegenerateType));
        let p = WhittakerParams::untwisted(vec![q(1, 1)]).unwrap();
        assert_eq!(whittaker_type_of(&p), Err(Error::NotWhittaker));
        assert!(WhittakerParams::twisted(vec![]).is_err());
    }

    #[test]
    fn j_eigenvalue_examples() {
        let p = WhittakerParams::untwisted(vec![q(0, 1), q(2, 1)]).unwrap();
        let mu = j_eigenvalues(&p).unwrap();
        assert_eq!(mu.get(&7), Some(&q(16, 1)));
        assert_eq!(mu.get(&8), Some(&q(0, 1)));
        let t = WhittakerParams::twisted(vec![q(1, 1)]).unwrap();
        let mu = j_eigenvalues(&t).unwrap();
        assert_eq!(mu.get(&5), Some(&q(1, 1)));
    }
}
