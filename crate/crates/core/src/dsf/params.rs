use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient family. `A`..`D` realize `XP - qPX = i`, the tilde variants
/// realize `pXP - qPX = i` with `Q = q/p` in place of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    ATilde,
    BTilde,
    CTilde,
    DTilde,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::ATilde,
        Family::BTilde,
        Family::CTilde,
        Family::DTilde,
    ];
    pub const ONE_PARAMETER: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];
    pub const TWO_PARAMETER: [Family; 4] = [
        Family::ATilde,
        Family::BTilde,
        Family::CTilde,
        Family::DTilde,
    ];

    pub fn is_two_parameter(self) -> bool {
        matches!(
            self,
            Family::ATilde | Family::BTilde | Family::CTilde | Family::DTilde
        )
    }

    /// Index `j` of `Φ^(j)`, 1 through 4.
    pub fn index(self) -> u8 {
        match self {
            Family::A | Family::ATilde => 1,
            Family::B | Family::BTilde => 2,
            Family::C | Family::CTilde => 3,
            Family::D | Family::DTilde => 4,
        }
    }

    /// The one-parameter family with the same coefficient shape.
    pub fn untilded(self) -> Family {
        match self {
            Family::ATilde => Family::A,
            Family::BTilde => Family::B,
            Family::CTilde => Family::C,
            Family::DTilde => Family::D,
            f => f,
        }
    }

    pub fn tilded(self) -> Family {
        match self {
            Family::A => Family::ATilde,
            Family::B => Family::BTilde,
            Family::C => Family::CTilde,
            Family::D => Family::DTilde,
            f => f,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::ATilde => "A~",
            Family::BTilde => "B~",
            Family::CTilde => "C~",
            Family::DTilde => "D~",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `A`..`D` and the two-parameter spellings `A~`, `At`, `Ã`
    /// (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let key = s
            .trim()
            .to_lowercase()
            .replace('\u{303}', "~")
            .replace('ã', "a~");
        let (base, suffix) = key.split_at(key.chars().next().map_or(0, char::len_utf8));
        let family = match base {
            "a" => Family::A,
            "b" => Family::B,
            "c" => Family::C,
            "d" => Family::D,
            _ => return Err(Error::Domain(format!("unknown family `{s}`"))),
        };
        match suffix {
            "" => Ok(family),
            "~" | "t" | "tilde" => Ok(family.tilded()),
            _ => Err(Error::Domain(format!("unknown family `{s}`"))),
        }
    }
}

/// A family tag plus the constants `c(0) = g(0)/k(0)` and `d(0) = h(0)/f(0)`.
///
/// With the defaults `c0 = d0 = 1` the coefficient functions are exactly the
/// tabulated ones. Other values rescale `g` and `h`, which changes `H`, `G`
/// and `Φ`; only the recipe route can evaluate `Φ` in that case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyId {
    pub family: Family,
    pub c0: f64,
    pub d0: f64,
}

impl FamilyId {
    pub fn new(family: Family) -> Self {
        FamilyId {
            family,
            c0: 1.0,
            d0: 1.0,
        }
    }

    pub fn with_constants(family: Family, c0: f64, d0: f64) -> Self {
        FamilyId { family, c0, d0 }
    }

    /// `c(0)·d(0)`, the only combination entering `H` and `G`.
    pub fn kappa(&self) -> f64 {
        self.c0 * self.d0
    }

    pub fn is_tabulated(&self) -> bool {
        self.kappa() == 1.0
    }

    /// Checks the parameter count against the family.
    pub fn check(&self, params: &DeformationParams) -> Result<()> {
        match (self.family.is_two_parameter(), params.p()) {
            (false, Some(_)) => Err(Error::FamilyMismatch {
                family: self.family.to_string(),
                reason: "one-parameter family given a p value".into(),
            }),
            (true, None) => Err(Error::FamilyMismatch {
                family: self.family.to_string(),
                reason: "two-parameter family requires p".into(),
            }),
            _ => Ok(()),
        }
    }
}

impl From<Family> for FamilyId {
    fn from(family: Family) -> Self {
        FamilyId::new(family)
    }
}

/// Reductions `p = ξ(q)` of the two-parameter algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// `p = 1`: reduces to the one-parameter families.
    POne,
    /// `p = q`: `Q = 1`, `Φ(n) = n/q`.
    PEqualsQ,
    /// `p = 1/q`: `Q = q²`.
    PInverseQ,
}

/// Real, strictly positive deformation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformationParams {
    q: f64,
    p: Option<f64>,
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Domain(format!(
            "{name} must be finite and > 0, got {x}"
        )))
    }
}

impl DeformationParams {
    pub fn new(q: f64) -> Result<Self> {
        Ok(DeformationParams {
            q: positive("q", q)?,
            p: None,
        })
    }

    pub fn with_p(q: f64, p: f64) -> Result<Self> {
        Ok(DeformationParams {
            q: positive("q", q)?,
            p: Some(positive("p", p)?),
        })
    }

    pub fn specialize(q: f64, spec: Specialization) -> Result<Self> {
        let q = positive("q", q)?;
        let p = match spec {
            Specialization::POne => 1.0,
            Specialization::PEqualsQ => q,
            Specialization::PInverseQ => 1.0 / q,
        };
        Self::with_p(q, p)
    }

    pub fn from_options(q: f64, p: Option<f64>) -> Result<Self> {
        match p {
            Some(p) => Self::with_p(q, p),
            None => Self::new(q),
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> Option<f64> {
        self.p
    }

    /// `p`, or 1 for the one-parameter algebra.
    pub fn p_or_one(&self) -> f64 {
        self.p.unwrap_or(1.0)
    }

    /// The effective base `Q = q/p` (just `q` when `p` is absent).
    pub fn big_q(&self) -> f64 {
        match self.p {
            Some(p) => self.q / p,
            None => self.q,
        }
    }

    /// Parameters with `q` and `p` exchanged (the "cousin" algebra).
    pub fn swapped(&self) -> Result<Self> {
        match self.p {
            Some(p) => Self::with_p(p, self.q),
            None => Err(Error::Domain("swapping q and p needs a p value".into())),
        }
    }
}
