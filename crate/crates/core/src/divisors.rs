//! Weil divisors on finitely many labelled height-one primes and the class
//! groups they present.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::abgroup::{AbelianGroupPresentation, GroupStructure, Matrix, Order};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeLabel(pub String);

impl PrimeLabel {
    pub fn new(name: impl Into<String>) -> Self {
        PrimeLabel(name.into())
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Finite formal sum `sum n_p * p`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coefficients: BTreeMap<PrimeLabel, BigInt>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prime(label: &str) -> Self {
        Self::from_terms([(label, 1)])
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (label, n) in terms {
            d.add_term(PrimeLabel::new(label), BigInt::from(n));
        }
        d
    }

    pub fn add_term(&mut self, label: PrimeLabel, n: BigInt) {
        let entry = self.coefficients.entry(label.clone()).or_default();
        *entry += n;
        if entry.is_zero() {
            self.coefficients.remove(&label);
        }
    }

    pub fn coefficient(&self, label: &PrimeLabel) -> BigInt {
        self.coefficients.get(label).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coefficients.values().all(|n| !n.is_negative())
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeLabel> {
        self.coefficients.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PrimeLabel, &BigInt)> {
        self.coefficients.iter()
    }

    pub fn scale(&self, k: &BigInt) -> Divisor {
        let mut out = Divisor::zero();
        for (p, n) in &self.coefficients {
            out.add_term(p.clone(), n * k);
        }
        out
    }
}

impl std::ops::Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in &rhs.coefficients {
            out.add_term(p.clone(), n.clone());
        }
        out
    }
}

impl std::ops::Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor {
            coefficients: self
                .coefficients
                .iter()
                .map(|(p, n)| (p.clone(), -n))
                .collect(),
        }
    }
}

impl std::ops::Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, n)) in self.coefficients.iter().enumerate() {
            let sign = if n.is_negative() { "-" } else { "+" };
            let mag = n.abs();
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if mag == BigInt::from(1) {
                write!(f, "{p}")?;
            } else {
                write!(f, "{mag}*{p}")?;
            }
        }
        Ok(())
    }
}

/// JSON encoding `{label: coefficient}`; coefficients outside `i64` are
/// written as decimal strings.
impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coefficients.len()))?;
        for (p, n) in &self.coefficients {
            match n.to_i64() {
                Some(v) => map.serialize_entry(&p.0, &v)?,
                None => map.serialize_entry(&p.0, &n.to_string())?,
            }
        }
        map.end()
    }
}

/// `Div` on a finite list of primes modulo the listed principal divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClassModel {
    primes: Vec<PrimeLabel>,
    principal_relations: Vec<Divisor>,
}

impl DivisorClassModel {
    pub fn new(primes: Vec<PrimeLabel>, principal_relations: Vec<Divisor>) -> Result<Self> {
        for (i, p) in primes.iter().enumerate() {
            if primes[..i].contains(p) {
                return Err(Error::Input(format!("duplicate prime label {p}")));
            }
        }
        let model = DivisorClassModel {
            primes,
            principal_relations: Vec::new(),
        };
        for r in &principal_relations {
            model.vector(r)?;
        }
        Ok(DivisorClassModel {
            principal_relations,
            ..model
        })
    }

    pub fn free(labels: &[&str]) -> Self {
        DivisorClassModel {
            primes: labels.iter().map(|l| PrimeLabel::new(*l)).collect(),
            principal_relations: Vec::new(),
        }
    }

    pub fn primes(&self) -> &[PrimeLabel] {
        &self.primes
    }

    pub fn principal_relations(&self) -> &[Divisor] {
        &self.principal_relations
    }

    /// Coordinates of `d` in the basis of listed primes.
    pub fn vector(&self, d: &Divisor) -> Result<Vec<BigInt>> {
        for p in d.support() {
            if !self.primes.contains(p) {
                return Err(Error::Input(format!("unknown prime label {p}")));
            }
        }
        Ok(self.primes.iter().map(|p| d.coefficient(p)).collect())
    }

    pub fn presentation(&self) -> AbelianGroupPresentation<BigInt> {
        let rows: Vec<Vec<BigInt>> = self
            .principal_relations
            .iter()
            .map(|r| self.vector(r).expect("relations validated on construction"))
            .collect();
        let m = Matrix::from_rows(self.primes.len(), &rows).expect("row lengths match");
        AbelianGroupPresentation::new(self.primes.len(), m).expect("column count matches")
    }

    pub fn structure(&self) -> GroupStructure<BigInt> {
        self.presentation().structure()
    }

    /// Order of `[d]` in the presented class group.
    pub fn class_order(&self, d: &Divisor) -> Result<Order<BigInt>> {
        let v = self.vector(d)?;
        self.presentation().element_order(&v)
    }

    /// Presents `Cl / <[t]>`, i.e. adjoins `t` as a further principal relation.
    pub fn quotient_by_divisor(&self, t: &Divisor) -> Result<DivisorClassModel> {
        self.vector(t)?;
        let mut out = self.clone();
        if !t.is_zero() {
            out.principal_relations.push(t.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_effectivity() {
        let a = Divisor::from_terms([("p", 2), ("q", -1)]);
        assert!((&a + &(-&a)).is_zero());
        assert!(Divisor::from_terms([("p", 2)]).is_effective());
        assert!(!Divisor::from_terms([("p", 1), ("q", -1)]).is_effective());
        assert!(Divisor::zero().is_effective());
        assert_eq!(a.to_string(), "2*p - q");
        assert_eq!((&a - &a), Divisor::zero());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"p":2,"q":-1}"#
        );
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let d = Divisor::from_terms([("p", 1), ("p", -1), ("q", 0)]);
        assert!(d.is_zero());
        assert_eq!(d.support().count(), 0);
    }

    #[test]
    fn class_orders() {
        let m = DivisorClassModel::new(
            vec![PrimeLabel::new("p"), PrimeLabel::new("q")],
            vec![Divisor::from_terms([("p", 1), ("q", 1)])],
        )
        .unwrap();
        assert_eq!(m.class_order(&Divisor::prime("p")).unwrap(), Order::Infinite);
        assert_eq!(
            m.class_order(&Divisor::from_terms([("p", 1), ("q", 1)])).unwrap(),
            Order::Finite(1.into())
        );
        let e = DivisorClassModel::new(
            vec![PrimeLabel::new("O")],
            vec![Divisor::from_terms([("O", 3)])],
        )
        .unwrap();
        assert_eq!(e.class_order(&Divisor::prime("O")).unwrap(), Order::Finite(3.into()));
        assert!(matches!(
            e.class_order(&Divisor::prime("zz")),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn relations_must_use_listed_primes() {
        let r = DivisorClassModel::new(vec![PrimeLabel::new("p")], vec![Divisor::prime("q")]);
        assert!(r.is_err());
        let r = DivisorClassModel::new(vec![PrimeLabel::new("p"), PrimeLabel::new("p")], vec![]);
        assert!(r.is_err());
    }

    #[test]
    fn quotients() {
        let clx = DivisorClassModel::free(&["a", "b"]);
        let q = clx
            .quotient_by_divisor(&Divisor::from_terms([("a", 1), ("b", 1)]))
            .unwrap();
        assert_eq!(q.structure().to_string(), "Z");

        let deg_and_six = DivisorClassModel::new(
            vec![PrimeLabel::new("deg"), PrimeLabel::new("pt")],
            vec![Divisor::from_terms([("pt", 6)])],
        )
        .unwrap();
        let q = deg_and_six
            .quotient_by_divisor(&Divisor::from_terms([("deg", 3)]))
            .unwrap();
        assert_eq!(q.structure().to_string(), "Z/3 + Z/6");

        assert_eq!(
            clx.quotient_by_divisor(&Divisor::zero()).unwrap(),
            clx
        );
    }

    #[test]
    fn quotient_by_existing_relation_is_noop() {
        let m = DivisorClassModel::new(
            vec![PrimeLabel::new("x"), PrimeLabel::new("y")],
            vec![Divisor::from_terms([("x", 2), ("y", 4)])],
        )
        .unwrap();
        let q = m
            .quotient_by_divisor(&Divisor::from_terms([("x", -4), ("y", -8)]))
            .unwrap();
        assert_eq!(q.structure(), m.structure());
    }
}
