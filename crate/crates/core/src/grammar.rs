//! Text form of Fock vectors.
//!
//! ```text
//! element := term (('+' | '-') term)*
//! term    := [rational '*'] ('h(' idx ')' ['^' nat])* terminal
//! idx     := '-' nat | '-' nat '/2'
//! ```
//!
//! The zero vector is written `0`. The terminal is `vac` for vertex operator algebra elements and `u` for
//! vectors of a module. `omega` and `jay` may stand in for `vac`, in which
//! case the creation operators act on that element.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::fock::{FockVector, Index, Sector};
use crate::identities::{jay, omega};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    Vac,
    U,
}

impl Terminal {
    fn word(self) -> &'static str {
        match self {
            Terminal::Vac => "vac",
            Terminal::U => "u",
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

enum Base {
    Cyclic,
    Named(FockVector),
}

struct Term {
    coeff: Rational,
    // doubled creation indices (positive), with exponents
    factors: Vec<(u32, u32)>,
    base: Base,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: &str = {
            let rest = &self.src[self.pos..];
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            &rest[..end]
        };
        if digits.is_empty() {
            return self.err("expected a natural number");
        }
        let value = digits.parse::<u64>();
        match value {
            Ok(v) => {
                self.pos += digits.len();
                Ok(v)
            }
            Err(_) => self.err("number too large"),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let num: num_bigint::BigInt = rest[..end].parse().map_err(|_| Error::Parse {
            pos: self.pos,
            msg: "expected a coefficient".into(),
        })?;
        self.pos += end;
        if self.eat("/") {
            let start = self.pos;
            let d = self.nat()?;
            if d == 0 {
                self.pos = start;
                return self.err("zero denominator");
            }
            Ok(Rational::new(num, d.into()))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn term(&mut self, terminal: Terminal) -> Result<Term> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.rational()?;
            self.expect("*")?;
            c
        } else {
            Rational::one()
        };
        let mut factors = Vec::new();
        loop {
            if self.eat("h(") {
                self.expect("-")?;
                let start = self.pos;
                let n = self.nat()?;
                let doubled = if self.eat("/") {
                    let d = self.nat()?;
                    if d != 2 || n % 2 == 0 {
                        self.pos = start;
                        return self.err("half-integer index must be an odd numerator over 2");
                    }
                    n
                } else {
                    2 * n
                };
                if doubled == 0 {
                    self.pos = start;
                    return self.err("creation index must be negative");
                }
                let doubled = u32::try_from(doubled).or_else(|_| self.err("index too large"))?;
                self.expect(")")?;
                let exp = if self.eat("^") {
                    u32::try_from(self.nat()?).or_else(|_| self.err("exponent too large"))?
                } else {
                    1
                };
                factors.push((doubled, exp));
                continue;
            }
            if self.eat(terminal.word()) {
                return Ok(Term {
                    coeff,
                    factors,
                    base: Base::Cyclic,
                });
            }
            if terminal == Terminal::Vac {
                if self.eat("omega") {
                    return Ok(Term {
                        coeff,
                        factors,
                        base: Base::Named(omega()),
                    });
                }
                if self.eat("jay") {
                    return Ok(Term {
                        coeff,
                        factors,
                        base: Base::Named(jay()),
                    });
                }
            }
            return self.err(format!("expected 'h(' or '{}'", terminal.word()));
        }
    }
}

/// Parses an element. The sector is read off the indices; `sector`, when
/// given, is required to agree and is used for elements without indices.
pub fn parse_with(src: &str, terminal: Terminal, sector: Option<Sector>) -> Result<FockVector> {
    if src.trim() == "0" {
        return Ok(FockVector::zero(sector.unwrap_or(Sector::Untwisted)));
    }
    let mut p = Parser { src, pos: 0 };
    let mut terms = Vec::new();
    let mut sign = if p.eat("-") {
        -Rational::one()
    } else {
        Rational::one()
    };
    loop {
        let start = p.pos;
        let t = p.term(terminal)?;
        terms.push((start, sign.clone(), t));
        if p.peek().is_none() {
            break;
        }
        sign = if p.eat("+") {
            Rational::one()
        } else if p.eat("-") {
            -Rational::one()
        } else {
            return p.err("expected '+', '-' or end of input");
        };
    }

    let mut found: Option<Sector> = sector;
    for (start, _, t) in &terms {
        let named = matches!(t.base, Base::Named(_)).then_some(Sector::Untwisted);
        let parities = t
            .factors
            .iter()
            .map(|&(d, _)| Sector::of_doubled(i64::from(d)));
        for s in named.into_iter().chain(parities) {
            match found {
                None => found = Some(s),
                Some(f) if f != s => {
                    return Err(Error::Parse {
                        pos: *start,
                        msg: "integer and half-integer indices mixed".into(),
                    })
                }
                Some(_) => {}
            }
        }
    }
    let sector = found.unwrap_or(Sector::Untwisted);

    let mut out = FockVector::zero(sector);
    for (_, sign, t) in terms {
        let mut v = match t.base {
            Base::Cyclic => FockVector::vacuum(sector),
            Base::Named(v) => v,
        };
        for &(d, e) in t.factors.iter().rev() {
            for _ in 0..e {
                v = v.create(Index::from_doubled(i64::from(d)))?;
            }
        }
        out.add_scaled(&v, &(sign * t.coeff));
    }
    Ok(out)
}

/// Parses an element with terminal `vac`.
pub fn parse_element(src: &str) -> Result<FockVector> {
    parse_with(src, Terminal::Vac, None)
}

/// Parses a module vector (terminal `u`) in the given sector.
pub fn parse_module_vector(src: &str, sector: Sector) -> Result<FockVector> {
    parse_with(src, Terminal::U, Some(sector))
}

/// Parses a mode index such as `3`, `-2` or `-3/2`.
pub fn parse_index(src: &str) -> Result<Index> {
    let s = src.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid mode index '{src}'"),
    };
    match s.split_once('/') {
        None => s.parse::<i64>().map(Index::integer).map_err(|_| bad()),
        Some((n, "2")) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            if n.rem_euclid(2) == 1 {
                Ok(Index::from_doubled(n))
            } else {
                Err(bad())
            }
        }
        Some(_) => Err(bad()),
    }
}

fn format_index(doubled: u32) -> String {
    if doubled.is_multiple_of(2) {
        format!("-{}", doubled / 2)
    } else {
        format!("-{doubled}/2")
    }
}

/// Prints `v` with the given terminal; parsing the output gives `v` back.
pub fn format_with(v: &FockVector, terminal: Terminal) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in v.terms().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        for &(d, e) in m.groups() {
            out.push_str(&format!("h({})", format_index(d)));
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        if !m.is_vacuum() {
            out.push(' ');
        }
        out.push_str(terminal.word());
    }
    out
}

pub fn format_element(v: &FockVector) -> String {
    format_with(v, Terminal::Vac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockMonomial;
    use crate::rational::{frac, int};

    #[test]
    fn parses_the_example() {
        let v = parse_element("1/2*h(-1)^2 vac").unwrap();
        assert_eq!(v, omega());
        assert_eq!(format_element(&v), "1/2*h(-1)^2 vac");
    }

    #[test]
    fn named_constants() {
        assert_eq!(parse_element("omega").unwrap(), omega());
        assert_eq!(parse_element("jay").unwrap(), jay());
        assert_eq!(
            parse_element("vac").unwrap(),
            FockVector::vacuum(Sector::Untwisted)
        );
        let v = parse_element("2*h(-1)omega").unwrap();
        assert_eq!(v, omega().create(Index::integer(1)).unwrap().scale(&int(2)));
    }

    #[test]
    fn signs_and_half_integers() {
        let v = parse_element("-h(-3/2)h(-1/2) vac + 3*h(-1/2)^2 vac").unwrap();
        assert_eq!(v.sector(), Sector::Twisted);
        assert_eq!(
            v.coefficient(&FockMonomial::from_doubled_parts([3, 1])),
            int(-1)
        );
        assert_eq!(
            v.coefficient(&FockMonomial::from_doubled_parts([1, 1])),
            int(3)
        );
        assert_eq!(parse_element(&format_element(&v)).unwrap(), v);
    }

    #[test]
    fn zero_round_trip() {
        let v = parse_element("vac - vac").unwrap();
        assert!(v.is_zero());
        assert_eq!(format_element(&v), "0");
        assert!(parse_element(" 0 ").unwrap().is_zero());
    }

    #[test]
    fn errors() {
        for bad in [
            "",
            "h(-1",
            "h(1) vac",
            "h(-2/2) vac",
            "1/0*vac",
            "vac +",
            "h(-1)h(-1/2) vac",
            "x",
            "u",
        ] {
            assert!(
                matches!(parse_element(bad), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn module_vectors() {
        let v = parse_module_vector("u - 1/3*h(-1/2) u", Sector::Twisted).unwrap();
        assert_eq!(
            v.coefficient(&FockMonomial::from_doubled_parts([1])),
            frac(-1, 3)
        );
        assert_eq!(format_with(&v, Terminal::U), "u - 1/3*h(-1/2) u");
        assert!(parse_module_vector("h(-1) u", Sector::Twisted).is_err());
        assert!(parse_module_vector("omega", Sector::Untwisted).is_err());
    }

    #[test]
    fn mode_indices() {
        assert_eq!(parse_index("3").unwrap(), Index::integer(3));
        assert_eq!(parse_index("-3/2").unwrap(), Index::from_doubled(-3));
        assert!(parse_index("2/2").is_err());
        assert!(parse_index("a").is_err());
    }
}
