//! Probability measures on `ℝ ∪ {∞}`: exact atoms plus an optional closed-form family or
//! empirical continuous part, with Möbius pushforward and the powers `F^t`, `F_a^t`.

mod distance;
mod family;
mod power;
mod quantile;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::point::ExtendedPoint;
use crate::rational::{self, Rational};

pub use distance::{kolmogorov_distance, KOLMOGOROV_GRID};
pub use family::{Family, FamilyKind};
pub use power::{
    atom_mass, bn_semigroup, closed_form_power, commute_params, f_power, polar_power, Bridge, CommuteParams,
};
pub use quantile::quantile_polynomial;

/// The part of a measure that is not an exact atom.
#[derive(Clone, Debug, PartialEq)]
pub enum ContinuousPart {
    None,
    Family(Family),
    /// Sorted finite sample locations sharing the remaining mass equally.
    Empirical(Vec<f64>),
}

/// `Σ w_i δ_{x_i} + (1 − Σ w_i)·part`, with exact atom weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedMeasure {
    atoms: Vec<(ExtendedPoint, Rational)>,
    part: ContinuousPart,
}

fn point_key(p: &ExtendedPoint) -> (bool, Option<&Rational>) {
    (p.is_infinite(), p.as_finite())
}

impl ExtendedMeasure {
    pub fn new(mut atoms: Vec<(ExtendedPoint, Rational)>, part: ContinuousPart) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidMeasure(m.into()));
        if atoms.iter().any(|(_, w)| !w.is_positive()) {
            return bad("atom weights must be positive");
        }
        atoms.sort_by(|x, y| point_key(&x.0).cmp(&point_key(&y.0)));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return bad("atom locations must be distinct");
        }
        let total: Rational = atoms.iter().map(|(_, w)| w).sum();
        let part = match part {
            ContinuousPart::Empirical(mut s) => {
                if s.is_empty() || s.iter().any(|x| !x.is_finite()) {
                    return bad("empirical samples must be finite and non-empty");
                }
                s.sort_by(f64::total_cmp);
                ContinuousPart::Empirical(s)
            }
            other => other,
        };
        match (&part, total.cmp(&Rational::one())) {
            (_, std::cmp::Ordering::Greater) => bad("atom weights exceed 1"),
            (ContinuousPart::None, std::cmp::Ordering::Less) => bad("atom weights must sum to 1"),
            (ContinuousPart::Family(_) | ContinuousPart::Empirical(_), std::cmp::Ordering::Equal) => {
                Ok(ExtendedMeasure { atoms, part: ContinuousPart::None })
            }
            _ => Ok(ExtendedMeasure { atoms, part }),
        }
    }

    pub fn atomic(atoms: Vec<(ExtendedPoint, Rational)>) -> Result<Self> {
        Self::new(atoms, ContinuousPart::None)
    }

    pub fn dirac(at: ExtendedPoint) -> Self {
        ExtendedMeasure { atoms: vec![(at, Rational::one())], part: ContinuousPart::None }
    }

    pub fn from_family(f: Family) -> Self {
        ExtendedMeasure { atoms: Vec::new(), part: ContinuousPart::Family(f) }
    }

    pub fn free_poisson(lambda: Rational) -> Result<Self> {
        Ok(Self::from_family(Family::free_poisson(lambda)?))
    }

    pub fn cauchy() -> Self {
        Self::from_family(Family::cauchy())
    }

    /// Uniform distribution on the given samples.
    pub fn empirical(samples: Vec<f64>) -> Result<Self> {
        Self::new(Vec::new(), ContinuousPart::Empirical(samples))
    }

    /// `w·δ_at + (1 − w)·self`.
    pub fn with_atom(&self, at: ExtendedPoint, w: &Rational) -> Result<Self> {
        if !w.is_positive() || *w > Rational::one() {
            return Err(Error::InvalidMeasure("mixture weight must lie in (0, 1]".into()));
        }
        let rest = Rational::one() - w;
        let mut atoms: Vec<(ExtendedPoint, Rational)> =
            self.atoms.iter().map(|(x, v)| (x.clone(), v * &rest)).filter(|(_, v)| v.is_positive()).collect();
        match atoms.iter_mut().find(|(x, _)| *x == at) {
            Some((_, v)) => *v += w,
            None => atoms.push((at, w.clone())),
        }
        Self::new(atoms, self.part.clone())
    }

    pub fn atoms(&self) -> &[(ExtendedPoint, Rational)] {
        &self.atoms
    }

    pub fn part(&self) -> &ContinuousPart {
        &self.part
    }

    /// Mass carried by the continuous part.
    pub fn continuous_weight(&self) -> Rational {
        match self.part {
            ContinuousPart::None => Rational::zero(),
            _ => Rational::one() - self.atoms.iter().map(|(_, w)| w).sum::<Rational>(),
        }
    }

    /// Exact atom mass at `x` (continuous parts contribute nothing).
    pub fn mass_at(&self, x: &ExtendedPoint) -> Rational {
        self.atoms.iter().find(|(p, _)| p == x).map(|(_, w)| w.clone()).unwrap_or_else(Rational::zero)
    }

    /// The undecorated family, when the measure is a single closed-form law.
    pub fn as_family(&self) -> Option<&Family> {
        match (&self.part, self.atoms.is_empty()) {
            (ContinuousPart::Family(f), true) => Some(f),
            _ => None,
        }
    }

    /// The location of a point mass, when the measure is one.
    pub fn as_dirac(&self) -> Option<&ExtendedPoint> {
        match (&self.part, self.atoms.as_slice()) {
            (ContinuousPart::None, [(x, _)]) => Some(x),
            _ => None,
        }
    }

    /// `µ((−∞, x])`; the atom at `∞` is never counted.
    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_impl(x, false)
    }

    /// `µ((−∞, x))`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        self.cdf_impl(x, true)
    }

    fn cdf_impl(&self, x: f64, strict: bool) -> f64 {
        let below = |y: f64| if strict { y < x } else { y <= x };
        let mut acc: f64 =
            self.atoms.iter().filter(|(p, _)| p.to_f64().is_some_and(below)).map(|(_, w)| rational::to_f64(w)).sum();
        let cw = rational::to_f64(&self.continuous_weight());
        acc += match &self.part {
            ContinuousPart::None => 0.0,
            ContinuousPart::Family(f) => cw * f.cdf(x),
            ContinuousPart::Empirical(s) => {
                let k = s.partition_point(|&y| below(y));
                cw * k as f64 / s.len() as f64
            }
        };
        acc
    }

    /// `T_*µ`. Families move only under affine maps, except Cauchy laws which every
    /// Möbius map sends to another Cauchy law.
    pub fn mobius_push(&self, t: &MobiusMap) -> Result<Self> {
        let mut atoms: Vec<(ExtendedPoint, Rational)> =
            self.atoms.iter().map(|(x, w)| (t.apply(x), w.clone())).collect();
        let part = match &self.part {
            ContinuousPart::None => ContinuousPart::None,
            ContinuousPart::Family(f) if f.is_cauchy() => ContinuousPart::Family(f.push_cauchy(t)?),
            ContinuousPart::Family(f) => ContinuousPart::Family(f.push_affine(t)?),
            ContinuousPart::Empirical(s) => {
                let cw = self.continuous_weight() / rational::int(s.len() as i64);
                let mut mapped = Vec::with_capacity(s.len());
                for &x in s {
                    match t.apply_f64(x).filter(|y| y.is_finite()) {
                        Some(y) => mapped.push(y),
                        None => match atoms.iter_mut().find(|(p, _)| p.is_infinite()) {
                            Some((_, w)) => *w += &cw,
                            None => atoms.push((ExtendedPoint::Infinity, cw.clone())),
                        },
                    }
                }
                if mapped.is_empty() {
                    ContinuousPart::None
                } else {
                    // a sample sent to ∞ took its share of mass along as an atom
                    let share = cw * rational::int(mapped.len() as i64);
                    return Self::rebuild_empirical(atoms, mapped, share);
                }
            }
        };
        Self::new(atoms, part)
    }

    fn rebuild_empirical(atoms: Vec<(ExtendedPoint, Rational)>, samples: Vec<f64>, share: Rational) -> Result<Self> {
        let m = Self::new(atoms, ContinuousPart::Empirical(samples))?;
        debug_assert_eq!(m.continuous_weight(), share);
        Ok(m)
    }

    /// Replaces a family part by `k` conditional quantile samples.
    pub fn to_empirical(&self, k: usize) -> Result<Self> {
        match &self.part {
            ContinuousPart::Family(f) => {
                if k == 0 {
                    return Err(Error::InvalidParameter("sample count must be positive".into()));
                }
                let samples = (1..=k).map(|i| f.quantile((2 * i - 1) as f64 / (2 * k) as f64)).collect();
                Self::new(self.atoms.clone(), ContinuousPart::Empirical(samples))
            }
            _ => Ok(self.clone()),
        }
    }

    /// Conditional law on `ℝ` (drops the atom at `∞` and renormalises); `None` if nothing is left.
    pub(crate) fn finite_part(&self) -> Option<Self> {
        let s = self.mass_at(&ExtendedPoint::Infinity);
        let rest = Rational::one() - &s;
        if rest.is_zero() {
            return None;
        }
        let atoms = self.atoms.iter().filter(|(p, _)| !p.is_infinite()).map(|(p, w)| (p.clone(), w / &rest)).collect();
        Some(ExtendedMeasure { atoms, part: self.part.clone() })
    }
}

fn rational_to_json(x: &Rational) -> Value {
    let f = rational::to_f64(x);
    // a plain number only when its shortest decimal form reads back exactly
    match rational::parse(&format!("{f}")) {
        Ok(back) if &back == x => serde_json::json!(f),
        _ => Value::String(rational::format(x)),
    }
}

fn rational_from_json(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => rational::parse(&n.to_string()),
        Value::String(s) => rational::parse(s),
        _ => Err(Error::Parse(format!("`{field}` must be a number or \"p/q\" string"))),
    }
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    at: String,
    w: Value,
}

#[derive(Serialize, Deserialize, Default)]
struct PartJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lambda: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    shift: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dilate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    samples: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    atoms: Vec<AtomJson>,
    part: PartJson,
}

impl Serialize for ExtendedMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let atoms = self.atoms.iter().map(|(p, w)| AtomJson { at: p.to_string(), w: rational_to_json(w) }).collect();
        let part = match &self.part {
            ContinuousPart::None => PartJson { kind: "none".into(), ..Default::default() },
            ContinuousPart::Family(f) => PartJson {
                kind: if f.is_cauchy() { "cauchy" } else { "free_poisson" }.into(),
                lambda: f.lambda().map(rational_to_json),
                shift: Some(rational_to_json(&f.shift)),
                dilate: Some(rational_to_json(&f.dilate)),
                samples: None,
            },
            ContinuousPart::Empirical(v) => {
                PartJson { kind: "empirical".into(), samples: Some(v.clone()), ..Default::default() }
            }
        };
        MeasureJson { atoms, part }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtendedMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MeasureJson::deserialize(d)?;
        parse_measure(raw).map_err(D::Error::custom)
    }
}

fn parse_measure(raw: MeasureJson) -> Result<ExtendedMeasure> {
    let atoms = raw
        .atoms
        .iter()
        .map(|a| Ok((ExtendedPoint::parse(&a.at)?, rational_from_json(&a.w, "w")?)))
        .collect::<Result<Vec<_>>>()?;
    let p = &raw.part;
    let opt = |v: &Option<Value>, field: &str, default: i64| match v {
        Some(v) => rational_from_json(v, field),
        None => Ok(rational::int(default)),
    };
    let part = match p.kind.as_str() {
        "none" => ContinuousPart::None,
        "free_poisson" => {
            let lambda = match &p.lambda {
                Some(v) => rational_from_json(v, "lambda")?,
                None => return Err(Error::Parse("free_poisson needs `lambda`".into())),
            };
            ContinuousPart::Family(Family::new(
                FamilyKind::FreePoisson { lambda },
                opt(&p.shift, "shift", 0)?,
                opt(&p.dilate, "dilate", 1)?,
            )?)
        }
        "cauchy" => ContinuousPart::Family(Family::new(
            FamilyKind::CauchyStd,
            opt(&p.shift, "shift", 0)?,
            opt(&p.dilate, "dilate", 1)?,
        )?),
        "empirical" => ContinuousPart::Empirical(
            p.samples.clone().ok_or_else(|| Error::Parse("empirical part needs `samples`".into()))?,
        ),
        other => return Err(Error::Parse(format!("unknown part kind {other:?}"))),
    };
    ExtendedMeasure::new(atoms, part)
}
