//! Whittaker types and the classification of simple weak M(1)^+-modules
//! that contain a Whittaker vector for omega.
//!
//! A type with odd `s = 2r + 1` is realised by the untwisted module
//! `M(1, zeta)`, `zeta = (zeta_0, ..., zeta_r)`; a type with even `s = 2r` by
//! the twisted module `M(1, zeta)(theta)`, `zeta = (zeta_{1/2}, ..., zeta_{r-1/2})`.
//! In both cases the type determines `zeta` up to an overall sign.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fock::Sector;
use crate::rational::{frac, rational_sqrt, Rational};
use crate::weak_modules::{whittaker_type_of, WhittakerParams};

/// `s >= 2` and `(lambda_{floor(s/2)+1}, ..., lambda_s)` with `lambda_s != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WhittakerType {
    s: u32,
    lambda: Vec<Rational>,
}

impl WhittakerType {
    pub fn new(s: u32, lambda: Vec<Rational>) -> Result<WhittakerType> {
        if s < 2 {
            return Err(Error::InvalidType(format!("s = {s} must be at least 2")));
        }
        let expected = (s - s / 2) as usize;
        if lambda.len() != expected {
            return Err(Error::InvalidType(format!(
                "s = {s} needs {expected} eigenvalues, got {}",
                lambda.len()
            )));
        }
        if lambda.last().is_some_and(Zero::is_zero) {
            return Err(Error::DegenerateType);
        }
        Ok(WhittakerType { s, lambda })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Smallest index carried by the type, `floor(s/2) + 1`.
    pub fn first_index(&self) -> u32 {
        self.s / 2 + 1
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// `lambda_i`, for `floor(s/2) < i <= s`.
    pub fn lambda_at(&self, i: u32) -> Option<&Rational> {
        i.checked_sub(self.first_index())
            .and_then(|k| self.lambda.get(k as usize))
    }
}

impl fmt::Display for WhittakerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.lambda.iter().map(|l| l.to_string()).collect();
        write!(f, "s={} lambda=({})", self.s, ls.join(","))
    }
}

/// One representative of an isomorphism class from the classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDescriptor {
    pub sector: Sector,
    pub r: usize,
    pub params: WhittakerParams,
    /// Whether `params` is the sign-canonical representative of `{zeta, -zeta}`.
    pub canonical: bool,
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.params.fmt(f)
    }
}

fn is_canonical(p: &WhittakerParams) -> bool {
    p.zeta()
        .iter()
        .rev()
        .find(|z| !z.is_zero())
        .is_none_or(Signed::is_positive)
}

/// Picks the representative of `{p, -p}` whose last non-zero entry is positive.
pub fn canonicalize(p: &WhittakerParams) -> WhittakerParams {
    if is_canonical(p) {
        p.clone()
    } else {
        p.negate()
    }
}

/// Solves the type map for `zeta` by the triangular back-substitution
///
/// ```text
/// lambda_top = zeta_top^2 / 2
/// lambda_i   = zeta_top zeta_{i-1-r} + 1/2 sum_{j = i-r}^{r-1} zeta_j zeta_{i-1-j}
/// ```
///
/// (indices shifted by 1/2 in the twisted case), taking `zeta_top > 0`.
pub fn params_from_type(t: &WhittakerType) -> Result<ModuleDescriptor> {
    let s = t.s() as usize;
    let top_lambda = t.lambda().last().expect("non-empty type");
    if top_lambda.is_zero() {
        return Err(Error::DegenerateType);
    }
    let two_lambda = top_lambda * Rational::from_integer(2.into());
    let top = rational_sqrt(&two_lambda)
        .ok_or_else(|| Error::IrrationalParameter(two_lambda.to_string()))?;

    // zero-based entries z[0..len]; lambda_i involves z[a] z[b] with a + b = i - offset
    let (sector, r, len, offset) = if s % 2 == 1 {
        let r = (s - 1) / 2;
        (Sector::Untwisted, r, r + 1, 1)
    } else {
        let r = s / 2;
        (Sector::Twisted, r, r, 2)
    };
    let last = len - 1;
    let mut z = vec![Rational::zero(); len];
    z[last] = top;
    // lambda_i for i = s-1 down to floor(s/2)+1 determines z[i - offset - last]
    for i in ((s / 2 + 1)..s).rev() {
        let total = i - offset;
        let k = total - last;
        let lambda_i = t.lambda_at(i as u32).expect("index in range");
        let mut rest = Rational::zero();
        for a in (k + 1)..last {
            let b = total - a;
            if b < len {
                rest += &z[a] * &z[b];
            }
        }
        z[k] = (lambda_i - rest * frac(1, 2)) / &z[last];
    }
    let params = WhittakerParams::new(sector, z)?;
    let canonical = is_canonical(&params);
    Ok(ModuleDescriptor {
        sector,
        r,
        params,
        canonical,
    })
}

/// The module, up to isomorphism, generated by a Whittaker vector of type `t`.
pub fn classify(t: &WhittakerType) -> Result<ModuleDescriptor> {
    let mut d = params_from_type(t)?;
    d.params = canonicalize(&d.params);
    d.canonical = true;
    let back = whittaker_type_of(&d.params)?;
    if &back != t {
        return Err(Error::Internal(format!(
            "classification round trip failed: {t} -> {} -> {back}",
            d.params
        )));
    }
    Ok(d)
}

/// Checks that `p` and `q` have equal types exactly when `p = +-q`.
pub fn fiber_check(p: &WhittakerParams, q: &WhittakerParams) -> Result<bool> {
    if p.sector() != q.sector() || p.r() != q.r() {
        return Err(Error::DegenerateInput(format!(
            "fiber check needs matching sector and r: {p} vs {q}"
        )));
    }
    let same_type = whittaker_type_of(p)? == whittaker_type_of(q)?;
    let related = p == q || *p == q.negate();
    Ok(same_type == related)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ty(s: u32, l: &[Rational]) -> WhittakerType {
        WhittakerType::new(s, l.to_vec()).unwrap()
    }

    #[test]
    fn params_from_type_examples() {
        let d = params_from_type(&ty(3, &[int(0), int(2)])).unwrap();
        assert_eq!(d.sector, Sector::Untwisted);
        assert_eq!(d.r, 1);
        assert_eq!(d.params.zeta(), &[int(0), int(2)]);

        let d = params_from_type(&ty(2, &[frac(1, 2)])).unwrap();
        assert_eq!(d.sector, Sector::Twisted);
        assert_eq!(d.params.zeta(), &[int(1)]);

        assert!(matches!(
            params_from_type(&ty(2, &[frac(1, 3)])),
            Err(Error::IrrationalParameter(_))
        ));
    }

    #[test]
    fn canonicalize_examples() {
        let p = WhittakerParams::untwisted(vec![int(0), int(-2)]).unwrap();
        assert_eq!(canonicalize(&p).zeta(), &[int(0), int(2)]);
        let p = WhittakerParams::untwisted(vec![int(0), int(2)]).unwrap();
        assert_eq!(canonicalize(&p), p);
        let p = WhittakerParams::twisted(vec![int(-1)]).unwrap();
        assert_eq!(canonicalize(&p).zeta(), &[int(1)]);
    }

    #[test]
    fn classify_examples() {
        let d = classify(&ty(3, &[int(0), int(2)])).unwrap();
        assert_eq!(d.to_string(), "M(1,(0,2))");
        let d = classify(&ty(2, &[frac(1, 2)])).unwrap();
        assert_eq!(d.to_string(), "M(1,(1))(theta)");
        let d = classify(&ty(5, &[int(0), int(0), int(2)])).unwrap();
        assert_eq!(d.sector, Sector::Untwisted);
        assert_eq!(d.r, 2);
        assert_eq!(d.params.zeta(), &[int(0), int(0), int(2)]);
    }

    #[test]
    fn type_validation() {
        assert!(matches!(
            WhittakerType::new(1, vec![int(1)]),
            Err(Error::InvalidType(_))
        ));
        assert!(matches!(
            WhittakerType::new(3, vec![int(1)]),
            Err(Error::InvalidType(_))
        ));
        assert_eq!(
            WhittakerType::new(3, vec![int(1), int(0)]),
            Err(Error::DegenerateType)
        );
    }

    #[test]
    fn fiber_examples() {
        let p = WhittakerParams::untwisted(vec![int(0), int(2)]).unwrap();
        let q = WhittakerParams::untwisted(vec![int(0), int(-2)]).unwrap();
        let o = WhittakerParams::untwisted(vec![int(1), int(2)]).unwrap();
        assert!(fiber_check(&p, &q).unwrap());
        assert!(fiber_check(&p, &o).unwrap());
        assert!(fiber_check(&p, &p).unwrap());
        let t = WhittakerParams::twisted(vec![int(1)]).unwrap();
        assert!(fiber_check(&p, &t).is_err());
    }
}
