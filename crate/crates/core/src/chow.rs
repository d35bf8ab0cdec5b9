//! Divisor classes and the intersection pairing on the four base surfaces.
//!
//! `S0` is `P1 x B` with basis `{s, F}`. `S1`, `S2`, `S3` are obtained from it
//! by a blow-up at a point of one fiber (with an orbi-node of order 2 or 3 on
//! `S2` or `S3`); they use the basis `{s, F0, Finf}` where `F0` is the fiber
//! component meeting the section `s` and `Finf` the other one. The full fiber
//! is `F0 + Finf`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceId {
    S0,
    S1,
    S2,
    S3,
}

impl SurfaceId {
    pub const ALL: [SurfaceId; 4] = [SurfaceId::S0, SurfaceId::S1, SurfaceId::S2, SurfaceId::S3];

    /// The orbi-node order parameter `i`; `i = 1` is an ordinary node.
    pub fn index(self) -> i64 {
        match self {
            SurfaceId::S0 => 0,
            SurfaceId::S1 => 1,
            SurfaceId::S2 => 2,
            SurfaceId::S3 => 3,
        }
    }

    pub fn from_index(i: i64) -> Option<Self> {
        Self::ALL.get(usize::try_from(i).ok()?).copied()
    }

    pub fn basis(self) -> &'static [Basis] {
        match self {
            SurfaceId::S0 => &[Basis::S, Basis::F],
            _ => &[Basis::S, Basis::F0, Basis::Finf],
        }
    }

    pub fn has_basis(self, b: Basis) -> bool {
        self.basis().contains(&b)
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// Preimage of a constant section avoiding the blown-up point.
    S,
    /// Fiber of `S0`.
    F,
    F0,
    Finf,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::S => "s",
            Basis::F => "F",
            Basis::F0 => "F0",
            Basis::Finf => "Finf",
        })
    }
}

/// A Q-linear combination of basis classes on one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    surface: SurfaceId,
    coeffs: BTreeMap<Basis, Rational>,
}

impl DivisorClass {
    pub fn zero(surface: SurfaceId) -> Self {
        DivisorClass {
            surface,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a class, rejecting symbols outside the surface's basis.
    /// Repeated symbols are summed.
    pub fn new<I>(surface: SurfaceId, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Basis, Rational)>,
    {
        let mut class = Self::zero(surface);
        for (symbol, c) in terms {
            if !surface.has_basis(symbol) {
                return Err(Error::ForeignBasis { symbol, surface });
            }
            class.add_term(symbol, c);
        }
        Ok(class)
    }

    fn add_term(&mut self, symbol: Basis, c: Rational) {
        let slot = self.coeffs.entry(symbol).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&symbol);
        }
    }

    pub fn surface(&self) -> SurfaceId {
        self.surface
    }

    pub fn coeff(&self, symbol: Basis) -> Rational {
        self.coeffs.get(&symbol).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Rational)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_surface(&self, other: &Self) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch {
                expected: self.surface,
                found: other.surface,
            });
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.same_surface(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.surface);
        }
        DivisorClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().map(|(b, v)| (*b, v * c)).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*{}", rational::format(c), b)?;
        }
        Ok(())
    }
}

/// An orbifold point with stabilizer `mu_n`; the bundle restricts to it as
/// `k(-a) + k(-b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbiPoint {
    pub n: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub id: SurfaceId,
    pub omega: DivisorClass,
    pub fiber: DivisorClass,
    pub section: DivisorClass,
    pub kappa_s: Rational,
    pub delta_s: Rational,
    pub lambda_s: Rational,
    pub orbi_points: Vec<OrbiPoint>,
}

impl SurfaceModel {
    pub fn new(id: SurfaceId) -> Self {
        let i = id.index();
        let c = |terms: Vec<(Basis, Rational)>| {
            DivisorClass::new(id, terms).expect("model classes use the surface basis")
        };
        let section = c(vec![(Basis::S, int(1))]);
        let (omega, fiber, delta_s, orbi_points) = match id {
            SurfaceId::S0 => (
                c(vec![(Basis::S, int(-2))]),
                c(vec![(Basis::F, int(1))]),
                int(0),
                vec![],
            ),
            _ => {
                let points = match id {
                    SurfaceId::S2 => vec![OrbiPoint { n: 2, a: 0, b: 1 }],
                    SurfaceId::S3 => vec![OrbiPoint { n: 3, a: 1, b: 2 }],
                    _ => vec![],
                };
                (
                    c(vec![(Basis::S, int(-2)), (Basis::Finf, int(i))]),
                    c(vec![(Basis::F0, int(1)), (Basis::Finf, int(1))]),
                    frac(1, i),
                    points,
                )
            }
        };
        let mut model = SurfaceModel {
            id,
            omega,
            fiber,
            section,
            kappa_s: int(0),
            delta_s,
            lambda_s: int(0),
            orbi_points,
        };
        model.kappa_s = model
            .intersect(&model.omega, &model.omega)
            .expect("omega lives on its own surface");
        model
    }

    /// Intersection number of two basis classes.
    pub fn pairing(&self, x: Basis, y: Basis) -> Result<Rational> {
        for symbol in [x, y] {
            if !self.id.has_basis(symbol) {
                return Err(Error::ForeignBasis {
                    symbol,
                    surface: self.id,
                });
            }
        }
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        if self.id == SurfaceId::S0 {
            return Ok(match (x, y) {
                (Basis::S, Basis::F) => int(1),
                _ => int(0),
            });
        }
        let i = self.id.index();
        Ok(match (x, y) {
            (Basis::S, Basis::S) => int(0),
            (Basis::S, Basis::F0) => int(1),
            (Basis::S, Basis::Finf) => int(0),
            (Basis::F0, Basis::Finf) => frac(1, i),
            (Basis::F0, Basis::F0) | (Basis::Finf, Basis::Finf) => frac(-1, i),
            _ => unreachable!("basis checked above"),
        })
    }

    /// Bilinear extension of [`pairing`](Self::pairing).
    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<Rational> {
        for d in [d1, d2] {
            if d.surface() != self.id {
                return Err(Error::SurfaceMismatch {
                    expected: self.id,
                    found: d.surface(),
                });
            }
        }
        let mut total = Rational::zero();
        for (x, cx) in d1.terms() {
            for (y, cy) in d2.terms() {
                total += cx * cy * self.pairing(x, y)?;
            }
        }
        Ok(total)
    }

    /// `a*s + b*F0 + c*Finf`, or `a*s + (b+c)*F` on `S0` where the two fiber
    /// components coincide.
    pub fn class(&self, s: Rational, f0: Rational, finf: Rational) -> DivisorClass {
        let terms = match self.id {
            SurfaceId::S0 => vec![(Basis::S, s), (Basis::F, f0 + finf)],
            _ => vec![(Basis::S, s), (Basis::F0, f0), (Basis::Finf, finf)],
        };
        DivisorClass::new(self.id, terms).expect("class() uses the surface basis")
    }

    /// `a*s - twist*Finf + base*fiber`. On `S0` the `Finf` twist must be zero.
    pub fn twisted_section(
        &self,
        s: &Rational,
        twist: &Rational,
        base: &Rational,
    ) -> Result<DivisorClass> {
        if self.id == SurfaceId::S0 && !twist.is_zero() {
            return Err(Error::ForeignBasis {
                symbol: Basis::Finf,
                surface: self.id,
            });
        }
        let pulled = self.fiber.scaled(base);
        let twisted = match self.id {
            SurfaceId::S0 => DivisorClass::zero(self.id),
            _ => DivisorClass::new(self.id, [(Basis::Finf, -twist.clone())])?,
        };
        self.section.scaled(s).plus(&twisted)?.plus(&pulled)
    }
}

pub fn make_surface(id: SurfaceId) -> SurfaceModel {
    SurfaceModel::new(id)
}
