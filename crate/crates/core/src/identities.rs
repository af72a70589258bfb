//! The generators omega and J of M(1)^+ and exact checks of the relations
//! they satisfy: the weight-9 and weight-10 relations, the commutator of
//! omega with J, the J-J commutator formula and the central charge.

use std::fmt;

use num_traits::{One, Zero};

use crate::determinant;
use crate::error::Result;
use crate::fock::{basis_vectors_up_to, FockMonomial, FockVector, Sector};
use crate::rational::{binomial_int, frac, int, Rational};
use crate::vertex::nth_product;

/// `omega = h(-1)^2 vac / 2`.
pub fn omega() -> FockVector {
    FockVector::from_monomial(
        Sector::Untwisted,
        FockMonomial::from_parts(&[1, 1]),
        frac(1, 2),
    )
}

/// `J = h(-1)^4 vac - 2 h(-3)h(-1) vac + 3/2 h(-2)^2 vac`.
pub fn jay() -> FockVector {
    FockVector::from_terms(
        Sector::Untwisted,
        [
            (int(1), FockMonomial::from_parts(&[1, 1, 1, 1])),
            (int(-2), FockMonomial::from_parts(&[3, 1])),
            (frac(3, 2), FockMonomial::from_parts(&[2, 2])),
        ],
    )
    .expect("untwisted parts")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Omega,
    Jay,
}

pub fn generator(g: Generator) -> FockVector {
    match g {
        Generator::Omega => omega(),
        Generator::Jay => jay(),
    }
}

/// `coeff * a_{n_1} b_{n_2} ... vac`, modes listed left to right.
#[derive(Clone, Debug)]
pub struct ModeWord {
    pub coeff: Rational,
    pub modes: Vec<(Generator, i64)>,
}

impl ModeWord {
    pub fn new(coeff: Rational, modes: &[(Generator, i64)]) -> ModeWord {
        ModeWord {
            coeff,
            modes: modes.to_vec(),
        }
    }

    /// Applies the modes innermost first: `a_{n_1}(b_{n_2}(... vac))`.
    pub fn evaluate(&self) -> Result<FockVector> {
        let mut v = FockVector::vacuum(Sector::Untwisted);
        for &(g, n) in self.modes.iter().rev() {
            v = nth_product(&generator(g), n, &v)?;
        }
        Ok(v.scale(&self.coeff))
    }
}

pub fn evaluate_words(words: &[ModeWord]) -> Result<FockVector> {
    let mut out = FockVector::zero(Sector::Untwisted);
    for w in words {
        out += &w.evaluate()?;
    }
    Ok(out)
}

use Generator::{Jay as J, Omega as O};

fn word(n: i64, d: i64, modes: &[(Generator, i64)]) -> ModeWord {
    ModeWord::new(frac(n, d), modes)
}

/// The weight-9 relation between omega and J.
pub fn p9_words() -> Vec<ModeWord> {
    vec![
        word(30, 1, &[(J, -6)]),
        word(-30, 1, &[(O, -1), (J, -4)]),
        word(27, 1, &[(O, -2), (J, -3)]),
        word(-39, 1, &[(O, -3), (J, -2)]),
        word(16, 1, &[(O, -1), (O, -1), (J, -2)]),
        word(52, 1, &[(O, -4), (J, -1)]),
        word(-32, 1, &[(O, -2), (O, -1), (J, -1)]),
    ]
}

/// The weight-10 relation between omega and J.
pub fn p10_words() -> Vec<ModeWord> {
    let o1 = (O, -1);
    vec![
        word(8192, 525, &[o1, o1, o1, o1, o1]),
        word(-2048, 525, &[o1, o1, o1, (J, -1)]),
        word(1, 1, &[(J, -2), (J, -2)]),
        word(-13856, 105, &[(O, -2), (O, -2), o1, o1]),
        word(-22528, 105, &[(O, -3), o1, o1, o1]),
        word(-45624, 175, &[(O, -3), (O, -2), (O, -2)]),
        word(-2304, 175, &[(O, -3), (O, -3), o1]),
        word(-134224, 525, &[(O, -4), (O, -2), o1]),
        word(-60848, 525, &[(O, -4), (O, -4)]),
        word(-2176, 75, &[(O, -5), o1, o1]),
        word(-576, 175, &[(O, -5), (O, -3)]),
        word(117664, 175, &[(O, -6), (O, -2)]),
        word(436416, 175, &[(O, -7), o1]),
        word(252832, 175, &[(O, -9)]),
        word(24184, 1575, &[(O, -2), (O, -2), (J, -1)]),
        word(65024, 1575, &[(O, -3), o1, (J, -1)]),
        word(-150176, 1575, &[(O, -5), (J, -1)]),
        word(152, 525, &[(O, -2), o1, (J, -2)]),
        word(17102, 1575, &[(O, -4), (J, -2)]),
        word(1024, 315, &[o1, o1, (J, -3)]),
        word(2544, 175, &[(O, -3), (J, -3)]),
        word(382, 525, &[(O, -2), (J, -4)]),
        word(-1088, 525, &[o1, (J, -5)]),
    ]
}

/// The element multiplying `C(i, k)` in the J-J commutator formula, i.e. the
/// claimed value of `J_k J`.
pub fn jj_words(k: u32) -> Vec<ModeWord> {
    match k {
        0 => vec![
            word(-1392, 5, &[(O, -6)]),
            word(-2784, 5, &[(O, -4), (O, -1)]),
            word(120, 1, &[(O, -3), (O, -2)]),
            word(1632, 5, &[(O, -2), (O, -1), (O, -1)]),
            word(-56, 5, &[(O, -2), (J, -1)]),
            word(-56, 5, &[(O, -1), (J, -2)]),
            word(6, 5, &[(J, -4)]),
        ],
        1 => vec![
            word(-1856, 5, &[(O, -5)]),
            word(-2384, 5, &[(O, -3), (O, -1)]),
            word(1316, 5, &[(O, -2), (O, -2)]),
            word(1088, 5, &[(O, -1), (O, -1), (O, -1)]),
            word(-112, 5, &[(O, -1), (J, -1)]),
            word(-46, 5, &[(J, -3)]),
        ],
        2 => vec![
            word(-48, 1, &[(O, -4)]),
            word(336, 1, &[(O, -2), (O, -1)]),
            word(-30, 1, &[(J, -2)]),
        ],
        3 => vec![
            word(-72, 1, &[(O, -3)]),
            word(336, 1, &[(O, -1), (O, -1)]),
            word(-60, 1, &[(J, -1)]),
        ],
        4 => vec![word(216, 1, &[(O, -2)])],
        5 => vec![word(432, 1, &[(O, -1)])],
        7 => vec![word(54, 1, &[])],
        _ => vec![],
    }
}

/// A vector or a scalar, whichever a check compares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Vector(FockVector),
    Scalar(Rational),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Vector(v) => v.is_zero(),
            Value::Scalar(c) => c.is_zero(),
        }
    }

    /// Number of non-zero terms (a scalar counts as one term when non-zero).
    pub fn term_count(&self) -> usize {
        match self {
            Value::Vector(v) => v.len(),
            Value::Scalar(c) => usize::from(!c.is_zero()),
        }
    }

    fn minus(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Vector(a), Value::Vector(b)) => Value::Vector(a - b),
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a - b),
            _ => panic!("comparing a vector with a scalar"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Vector(v) => write!(f, "{}", crate::grammar::format_element(v)),
            Value::Scalar(c) => write!(f, "{c}"),
        }
    }
}

/// Outcome of one verification; `pass` holds exactly when `residual` is zero.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub name: String,
    pub description: String,
    pub expected: Value,
    pub computed: Value,
    pub residual: Value,
    pub pass: bool,
    /// Number of elementary comparisons that went into the verdict.
    pub checks: usize,
}

impl RelationReport {
    pub fn compare(
        name: &str,
        description: &str,
        expected: Value,
        computed: Value,
    ) -> RelationReport {
        let residual = computed.minus(&expected);
        RelationReport {
            name: name.to_string(),
            description: description.to_string(),
            pass: residual.is_zero(),
            expected,
            computed,
            residual,
            checks: 1,
        }
    }

    /// Folds several reports into one; the residual is the first non-zero one.
    pub fn combine(name: &str, description: &str, parts: Vec<RelationReport>) -> RelationReport {
        let checks = parts.iter().map(|p| p.checks).sum();
        let failing = parts.iter().find(|p| !p.pass).cloned();
        let base = failing.or_else(|| parts.into_iter().next());
        let mut out = match base {
            Some(p) => p,
            None => RelationReport::compare(
                name,
                description,
                Value::Vector(FockVector::zero(Sector::Untwisted)),
                Value::Vector(FockVector::zero(Sector::Untwisted)),
            ),
        };
        out.name = name.to_string();
        out.description = description.to_string();
        out.checks = checks;
        out
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} {:<4} checks={:<5} residual_terms={}",
            self.name,
            if self.pass { "pass" } else { "FAIL" },
            self.checks,
            self.residual.term_count()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    P9,
    P10,
}

/// Expands a relation into the Fock basis; passes iff it is the zero vector.
pub fn assemble_relation(which: Relation) -> Result<RelationReport> {
    let (name, words) = match which {
        Relation::P9 => ("P9", p9_words()),
        Relation::P10 => ("P10", p10_words()),
    };
    let computed = evaluate_words(&words)?;
    Ok(RelationReport::compare(
        name,
        "relation expands to zero in M(1)",
        Value::Vector(FockVector::zero(Sector::Untwisted)),
        Value::Vector(computed),
    ))
}

/// `[u_i, v_j] w` computed by composing modes in M(1).
fn bracket_on(
    u: &FockVector,
    i: i64,
    v: &FockVector,
    j: i64,
    w: &FockVector,
) -> Result<FockVector> {
    let uvw = nth_product(u, i, &nth_product(v, j, w)?)?;
    let vuw = nth_product(v, j, &nth_product(u, i, w)?)?;
    Ok(&uvw - &vuw)
}

/// `[omega_i, J_j] = (3i - j) J_{i+j-1}`: checks `omega_0 J = L(-1)J`,
/// `omega_1 J = 4J` and `omega_k J = 0` for `2 <= k <= 7`, then compares both
/// sides as operators on every basis vector of weight at most `max_weight`.
pub fn verify_lie_oj_on(
    i_range: std::ops::RangeInclusive<i64>,
    j_range: std::ops::RangeInclusive<i64>,
    max_weight: u32,
) -> Result<RelationReport> {
    let (om, j) = (omega(), jay());
    let mut parts = vec![
        RelationReport::compare(
            "omega_0 J",
            "omega_0 J = L(-1) J",
            Value::Vector(j.translate()),
            Value::Vector(nth_product(&om, 0, &j)?),
        ),
        RelationReport::compare(
            "omega_1 J",
            "omega_1 J = 4 J",
            Value::Vector(j.scale(&int(4))),
            Value::Vector(nth_product(&om, 1, &j)?),
        ),
    ];
    for k in 2..=7 {
        parts.push(RelationReport::compare(
            &format!("omega_{k} J"),
            "vanishes",
            Value::Vector(FockVector::zero(Sector::Untwisted)),
            Value::Vector(nth_product(&om, k, &j)?),
        ));
    }
    let basis = basis_vectors_up_to(2 * max_weight, Sector::Untwisted);
    for a in i_range {
        for b in j_range.clone() {
            let c = int(3 * a - b);
            for w in &basis {
                let lhs = bracket_on(&om, a, &j, b, w)?;
                let rhs = nth_product(&j, a + b - 1, w)?.scale(&c);
                parts.push(RelationReport::compare(
                    "operator",
                    "",
                    Value::Vector(rhs),
                    Value::Vector(lhs),
                ));
            }
        }
    }
    Ok(RelationReport::combine(
        "lie-oj",
        "[omega_i, J_j] = (3i - j) J_{i+j-1}",
        parts,
    ))
}

pub fn verify_lie_oj(
    i_range: std::ops::RangeInclusive<i64>,
    j_range: std::ops::RangeInclusive<i64>,
) -> Result<RelationReport> {
    verify_lie_oj_on(i_range, j_range, 6)
}

/// `J_k J` against the displayed element, for one `k`.
pub fn jj_product_report(k: u32) -> Result<RelationReport> {
    let j = jay();
    let expected = evaluate_words(&jj_words(k))?;
    let computed = nth_product(&j, i64::from(k), &j)?;
    Ok(RelationReport::compare(
        &format!("J_{k} J"),
        "J_k J equals the displayed element",
        Value::Vector(expected),
        Value::Vector(computed),
    ))
}

/// `J_k J` for `k = 0..=10` against the commutator formula's elements (zero for
/// `k = 6` and `k >= 8`).
pub fn verify_jj_commutator() -> Result<RelationReport> {
    let parts = (0..=10)
        .map(jj_product_report)
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationReport::combine(
        "jj-commutator",
        "J_k J for k = 0..10",
        parts,
    ))
}

/// Both sides of the J-J commutator formula as operators on M(1), using the
/// displayed elements for the right-hand side.
pub fn verify_jj_operator(
    i_range: std::ops::RangeInclusive<i64>,
    j_range: std::ops::RangeInclusive<i64>,
    max_weight: u32,
) -> Result<RelationReport> {
    let j = jay();
    let elements: Vec<FockVector> = (0..=7)
        .map(|k| evaluate_words(&jj_words(k)))
        .collect::<Result<_>>()?;
    let basis = basis_vectors_up_to(2 * max_weight, Sector::Untwisted);
    let mut parts = Vec::new();
    for a in i_range {
        for b in j_range.clone() {
            for w in &basis {
                let lhs = bracket_on(&j, a, &j, b, w)?;
                let mut rhs = FockVector::zero(Sector::Untwisted);
                for (k, e) in elements.iter().enumerate() {
                    let c = binomial_int(a, k as u32);
                    if !c.is_zero() && !e.is_zero() {
                        rhs.add_scaled(&nth_product(e, a + b - k as i64, w)?, &c);
                    }
                }
                parts.push(RelationReport::compare(
                    "operator",
                    "",
                    Value::Vector(rhs),
                    Value::Vector(lhs),
                ));
            }
        }
    }
    Ok(RelationReport::combine(
        "jj-operator",
        "[J_i, J_j] acts as the displayed expansion",
        parts,
    ))
}

/// Twice the vacuum coefficient of `omega_3 omega`.
pub fn central_charge() -> Result<Rational> {
    let om = omega();
    let v = nth_product(&om, 3, &om)?;
    Ok(v.coefficient(&FockMonomial::vacuum()) * int(2))
}

fn central_charge_report() -> Result<RelationReport> {
    Ok(RelationReport::compare(
        "central-charge",
        "c = 2 * <vac, omega_3 omega> = 1",
        Value::Scalar(Rational::one()),
        Value::Scalar(central_charge()?),
    ))
}

fn determinant_report() -> Result<RelationReport> {
    let sets: [(&[i64], &[i64]); 3] = [
        (&[5], &[-2]),
        (&[2, 0], &[3, 1]),
        (&[-1, 4, 7], &[2, -3, 5]),
    ];
    let mut parts = Vec::new();
    for (n, (x, y)) in sets.iter().enumerate() {
        let x: Vec<Rational> = x.iter().map(|&a| int(a)).collect();
        let y: Vec<Rational> = y.iter().map(|&a| int(a)).collect();
        parts.push(determinant::verify_determinant_lemma(n, &x, &y)?);
    }
    Ok(RelationReport::combine(
        "determinant",
        "fraction-free determinant matches the product formula",
        parts,
    ))
}

/// Names accepted by [`run_named`], in suite order.
pub const SUITE: &[&str] = &[
    "p9",
    "p10",
    "jj-commutator",
    "jj-operator",
    "lie-oj",
    "central-charge",
    "determinant",
];

pub fn run_named(name: &str) -> Option<Result<RelationReport>> {
    let report = match name {
        "p9" => assemble_relation(Relation::P9),
        "p10" => assemble_relation(Relation::P10),
        "jj-commutator" => verify_jj_commutator(),
        "jj-operator" => verify_jj_operator(-2..=4, -2..=4, 4),
        "lie-oj" => verify_lie_oj(-1..=3, -1..=3),
        "central-charge" => central_charge_report(),
        "determinant" => determinant_report(),
        _ => return None,
    };
    Some(report)
}

pub fn verify_suite() -> Result<Vec<RelationReport>> {
    SUITE
        .iter()
        .map(|n| run_named(n).expect("suite name"))
        .collect()
}
