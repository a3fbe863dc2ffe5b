//! Exact rational arithmetic on `y^2 = x^3 + a x + b` and localisation
//! verdicts for the cone `k[X,Y,Z]/(X^3 + aXZ^2 + bZ^3 - Y^2 Z)`.
//!
//! The point at infinity `O = (0:1:0)` is an inflection point, so the line
//! `Z = 0` meets the curve only there and `div(Z) = 3 O`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::divisors::{Divisor, DivisorClassModel, PrimeLabel};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{int, parse_rat, rat_display, Int, Rat};
use crate::verdict::{cite, LineEntry, ReasonCode, TorsionValue, Tri, Verdict, Witness};

/// Largest order of a rational torsion point (Mazur).
pub const MAZUR_BOUND: u64 = 12;

const XYZ: [&str; 3] = ["X", "Y", "Z"];

/// `X^3 + a X Z^2 + b Z^3 - Y^2 Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousCubic<I: Int> {
    a: Rat<I>,
    b: Rat<I>,
}

impl<I: Int> HomogeneousCubic<I> {
    pub fn new(a: Rat<I>, b: Rat<I>) -> Self {
        HomogeneousCubic { a, b }
    }

    /// Accepts any nonzero multiple of the shape above, e.g. `X^3 - Y^2*Z - 4*Z^3`.
    pub fn parse(text: &str) -> Result<Self> {
        let f = Poly::<I>::parse(text, &XYZ)?;
        let lead = f.coefficient(&[3, 0, 0]);
        if lead.is_zero() {
            return Err(Error::Input(format!("{text:?}: no X^3 term")));
        }
        let f = f.scale(&lead.recip());
        let c = HomogeneousCubic::new(f.coefficient(&[1, 0, 2]), f.coefficient(&[0, 0, 3]));
        if c.to_poly() != f {
            return Err(Error::Input(format!(
                "{text:?} is not of the form X^3 + aXZ^2 + bZ^3 - Y^2Z"
            )));
        }
        Ok(c)
    }

    pub fn to_poly(&self) -> Poly<I> {
        Poly::from_terms(
            &XYZ,
            [
                (vec![3, 0, 0], Ratio::one()),
                (vec![1, 0, 2], self.a.clone()),
                (vec![0, 0, 3], self.b.clone()),
                (vec![0, 2, 1], -Ratio::<I>::one()),
            ],
        )
        .expect("exponent vectors have length three")
    }

    /// Dehomogenise at `Z = 1`.
    pub fn from_homogeneous(&self) -> Result<WeierstrassCurve<I>> {
        WeierstrassCurve::new(self.a.clone(), self.b.clone())
    }
}

impl<I: Int> fmt::Display for HomogeneousCubic<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ECPoint<I: Int> {
    Infinity,
    Affine(Rat<I>, Rat<I>),
}

impl<I: Int> ECPoint<I> {
    pub fn affine(x: Rat<I>, y: Rat<I>) -> Self {
        ECPoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn is_integral(&self) -> bool {
        match self {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => x.is_integer() && y.is_integer(),
        }
    }

    /// `O`, or `x,y` with integer or `n/d` coordinates (parentheses optional).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "O" {
            return Ok(ECPoint::Infinity);
        }
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        let bad = || Error::Parse(format!("bad point {text:?}"));
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        Ok(ECPoint::Affine(
            parse_rat(x).ok_or_else(bad)?,
            parse_rat(y).ok_or_else(bad)?,
        ))
    }

    fn label(&self) -> PrimeLabel {
        PrimeLabel::new(self.to_string())
    }
}

impl<I: Int> fmt::Display for ECPoint<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine(x, y) => write!(f, "({},{})", rat_display(x), rat_display(y)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve<I: Int> {
    a: Rat<I>,
    b: Rat<I>,
    disc: Rat<I>,
}

/// Outcome of the torsion test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Torsion {
    Finite(u64),
    /// Some multiple `k P` has a non-integral coordinate.
    NonIntegralMultiple(u64),
    /// No multiple up to the Mazur bound vanishes.
    BeyondMazur,
}

impl Torsion {
    pub fn order(&self) -> Option<u64> {
        match self {
            Torsion::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn value(&self) -> TorsionValue {
        match self {
            Torsion::Finite(n) => TorsionValue::Finite(*n),
            _ => TorsionValue::Infinite,
        }
    }
}

/// Image of a class under `Cl A = E(k) x Z/3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassImage<I: Int> {
    pub point: ECPoint<I>,
    pub degree: u8,
}

impl<I: Int> WeierstrassCurve<I> {
    pub fn new(a: Rat<I>, b: Rat<I>) -> Result<Self> {
        let four = Ratio::from_integer(int::<I>(4));
        let t27 = Ratio::from_integer(int::<I>(27));
        let m16 = Ratio::from_integer(int::<I>(-16));
        let disc = m16 * (four * a.clone() * a.clone() * a.clone() + t27 * b.clone() * b.clone());
        if disc.is_zero() {
            return Err(Error::Singular {
                discriminant: rat_display(&disc),
            });
        }
        Ok(WeierstrassCurve { a, b, disc })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(Ratio::from_integer(int(a)), Ratio::from_integer(int(b)))
    }

    /// Parses `a,b`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad curve coefficients {text:?}"));
        let (a, b) = text.split_once(',').ok_or_else(bad)?;
        Self::new(parse_rat(a).ok_or_else(bad)?, parse_rat(b).ok_or_else(bad)?)
    }

    pub fn a(&self) -> &Rat<I> {
        &self.a
    }

    pub fn b(&self) -> &Rat<I> {
        &self.b
    }

    pub fn discriminant(&self) -> &Rat<I> {
        &self.disc
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn cubic(&self) -> HomogeneousCubic<I> {
        HomogeneousCubic::new(self.a.clone(), self.b.clone())
    }

    pub fn ring_id(&self) -> String {
        format!("ell:{},{}", rat_display(&self.a), rat_display(&self.b))
    }

    fn rhs(&self, x: &Rat<I>) -> Rat<I> {
        x.clone() * x.clone() * x.clone() + self.a.clone() * x.clone() + self.b.clone()
    }

    pub fn contains(&self, p: &ECPoint<I>) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => y.clone() * y.clone() == self.rhs(x),
        }
    }

    fn check(&self, p: &ECPoint<I>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve(format!("{p} is not on {}", self.ring_id())))
        }
    }

    pub fn point(&self, x: Rat<I>, y: Rat<I>) -> Result<ECPoint<I>> {
        let p = ECPoint::Affine(x, y);
        self.check(&p)?;
        Ok(p)
    }

    pub fn negate(&self, p: &ECPoint<I>) -> Result<ECPoint<I>> {
        self.check(p)?;
        Ok(neg(p))
    }

    pub fn add(&self, p: &ECPoint<I>, q: &ECPoint<I>) -> Result<ECPoint<I>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &ECPoint<I>, q: &ECPoint<I>) -> ECPoint<I> {
        let (ECPoint::Affine(x1, _), ECPoint::Affine(x2, _)) = (p, q) else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        match self.secant(p, q) {
            None => ECPoint::Infinity,
            Some((m, k)) => {
                let x3 = m.clone() * m.clone() - x1.clone() - x2.clone();
                let y3 = -(m * x3.clone() + k);
                ECPoint::Affine(x3, y3)
            }
        }
    }

    /// Slope and intercept of the chord (or tangent) through two affine
    /// points; `None` when that line is vertical or a point is `O`.
    fn secant(&self, p: &ECPoint<I>, q: &ECPoint<I>) -> Option<(Rat<I>, Rat<I>)> {
        let (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) = (p, q) else {
            return None;
        };
        let m = if x1 != x2 {
            (y2.clone() - y1.clone()) / (x2.clone() - x1.clone())
        } else if y1 == y2 && !y1.is_zero() {
            let three = Ratio::from_integer(int::<I>(3));
            let two = Ratio::from_integer(int::<I>(2));
            (three * x1.clone() * x1.clone() + self.a.clone()) / (two * y1.clone())
        } else {
            return None;
        };
        let k = y1.clone() - m.clone() * x1.clone();
        Some((m, k))
    }

    pub fn mul(&self, n: i64, p: &ECPoint<I>) -> Result<ECPoint<I>> {
        self.check(p)?;
        let mut base = if n < 0 { neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Order of `P`, decided on integral models.
    ///
    /// Walks `P, 2P, ..., 12P`. A non-integral multiple proves `P` is not
    /// torsion (Nagell-Lutz); otherwise no vanishing multiple up to twelve
    /// proves it (Mazur).
    pub fn torsion_order(&self, p: &ECPoint<I>) -> Result<Torsion> {
        self.check(p)?;
        if !self.is_integral() {
            return Err(Error::Precondition(format!(
                "{} is not an integral model",
                self.ring_id()
            )));
        }
        let mut q = p.clone();
        for n in 1..=MAZUR_BOUND {
            if q.is_infinity() {
                return Ok(Torsion::Finite(n));
            }
            if !q.is_integral() {
                return Ok(Torsion::NonIntegralMultiple(n));
            }
            q = self.add_unchecked(&q, p);
        }
        Ok(Torsion::BeyondMazur)
    }

    /// `[p_P] -> (P, 1 mod 3)`.
    pub fn cl_class(&self, p: &ECPoint<I>) -> Result<ClassImage<I>> {
        self.check(p)?;
        Ok(ClassImage {
            point: p.clone(),
            degree: 1,
        })
    }

    /// The class of `div(Z)`.
    pub fn div_z_class(&self) -> ClassImage<I> {
        ClassImage {
            point: ECPoint::Infinity,
            degree: 0,
        }
    }

    pub fn add_classes(&self, c: &ClassImage<I>, d: &ClassImage<I>) -> Result<ClassImage<I>> {
        Ok(ClassImage {
            point: self.add(&c.point, &d.point)?,
            degree: (c.degree + d.degree) % 3,
        })
    }

    /// Finitely generated shadow of `Cl A` around `[p_P]`: generators `O` and
    /// `P-O` of `Cl E`, relation `n (P-O)` when `P` has order `n`, then the
    /// quotient by `div(Z) = 3 O`. Returns the model and the class of `p_P`.
    pub fn class_model(&self, p: &ECPoint<I>) -> Result<(DivisorClassModel, Divisor)> {
        let torsion = self.torsion_order(p)?;
        let labels = vec![PrimeLabel::new("O"), PrimeLabel::new("P-O")];
        let rels = match torsion.order() {
            Some(n) => vec![Divisor::from_terms([("P-O", n as i64)])],
            None => vec![],
        };
        let model = DivisorClassModel::new(labels, rels)?
            .quotient_by_divisor(&Divisor::from_terms([("O", 3)]))?;
        Ok((model, Divisor::from_terms([("O", 1), ("P-O", 1)])))
    }

    fn line_through(&self, t: &ECPoint<I>, q: &ECPoint<I>) -> (Line<I>, ECPoint<I>) {
        let sum = self.add_unchecked(t, q);
        match self.secant(t, q) {
            Some((m, k)) => (
                Line::Chord {
                    slope: m,
                    intercept: k,
                    points: [t.clone(), q.clone(), neg(&sum)],
                },
                sum,
            ),
            _ => (vertical_at(t), sum),
        }
    }

    /// Miller's double-and-add: a product of chord, tangent and vertical
    /// lines whose divisor is `n (P) - n (O)`.
    pub fn miller_function(&self, p: &ECPoint<I>, n: u64) -> Result<LineProgram<I>> {
        self.check(p)?;
        if n == 0 || !self.mul(n as i64, p)?.is_infinity() {
            return Err(Error::Precondition(format!("{n} * {p} is not O")));
        }
        let mut lines: Vec<(Line<I>, i64)> = Vec::new();
        if p.is_infinity() {
            return Ok(LineProgram {
                point: p.clone(),
                n,
                lines,
            });
        }
        if n == 1 {
            return Err(Error::Precondition(format!("{p} is not O")));
        }
        let bits = 64 - n.leading_zeros();
        let mut t = p.clone();
        for i in (0..bits - 1).rev() {
            for e in &mut lines {
                e.1 *= 2;
            }
            let (l, s) = self.line_through(&t, &t);
            push_line(&mut lines, l, 1);
            if !s.is_infinity() {
                push_line(&mut lines, vertical_at(&s), -1);
            }
            t = s;
            if (n >> i) & 1 == 1 {
                let (l, s) = self.line_through(&t, p);
                push_line(&mut lines, l, 1);
                if !s.is_infinity() {
                    push_line(&mut lines, vertical_at(&s), -1);
                }
                t = s;
            }
        }
        lines.retain(|(_, e)| *e != 0);
        Ok(LineProgram {
            point: p.clone(),
            n,
            lines,
        })
    }

    /// `(X - xZ, Y - yZ)` for an affine point, `(X, Z)` for `O`.
    pub fn prime_ideal(&self, p: &ECPoint<I>) -> String {
        match p {
            ECPoint::Infinity => "(X, Z)".to_string(),
            ECPoint::Affine(x, y) => {
                let lin = |var: usize, c: &Rat<I>| {
                    let mut e = vec![0, 0, 0];
                    e[var] = 1;
                    Poly::from_terms(&XYZ, [(e, Ratio::one()), (vec![0, 0, 1], -c.clone())])
                        .expect("three variables")
                };
                format!("({}, {})", lin(0, x), lin(1, y))
            }
        }
    }

    /// Verdict for `V(p_P)` in the cone over this curve.
    ///
    /// Flatness holds for every height-one prime of this normal graded
    /// two-dimensional domain; since `Pic A = 0`, universal and classical
    /// both reduce to `[p_P]` being torsion in `Cl A`.
    pub fn classify_point(&self, p: &ECPoint<I>) -> Result<Verdict> {
        self.check(p)?;
        let ring = self.ring_id();
        let prime = format!("{} at {p}", self.prime_ideal(p));
        if !self.is_integral() {
            return Verdict::new(
                ring,
                prime,
                [Tri::Yes, Tri::Unknown, Tri::Unknown],
                Witness::None,
                &[cite::ELLIPTIC_CONE_COHERENT],
                Some(ReasonCode::NonIntegralModel),
            );
        }
        let torsion = self.torsion_order(p)?;
        let (model, class) = self.class_model(p)?;
        let class_order = match model.class_order(&class)? {
            crate::abgroup::Order::Finite(k) => TorsionValue::Finite(
                k.to_u64()
                    .ok_or_else(|| Error::Precondition("class order overflow".into()))?,
            ),
            crate::abgroup::Order::Infinite => TorsionValue::Infinite,
        };
        match torsion {
            Torsion::Finite(n) => {
                let program = self.miller_function(p, n)?;
                let verified = program.verify(self);
                if !verified {
                    return Err(Error::Precondition(format!(
                        "line program for {p} failed its certificate"
                    )));
                }
                Verdict::new(
                    ring,
                    prime,
                    [Tri::Yes; 3],
                    Witness::TorsionOrder {
                        point: p.to_string(),
                        torsion: torsion.value(),
                        class_order,
                        line_program: program.entries(),
                        formal_divisor: program.divisor(),
                        certificate_verified: verified,
                    },
                    &[
                        cite::ELLIPTIC_CONE_COHERENT,
                        cite::ELLIPTIC_CLASS_GROUP,
                        cite::GRADED_PIC_ZERO,
                        cite::NORMAL_DOMAIN_CLASS_TORSION,
                    ],
                    None,
                )
            }
            Torsion::NonIntegralMultiple(_) | Torsion::BeyondMazur => {
                let why = if torsion == Torsion::BeyondMazur {
                    cite::MAZUR
                } else {
                    cite::NAGELL_LUTZ
                };
                let mut v = Verdict::new(
                    ring,
                    prime,
                    [Tri::Yes, Tri::No, Tri::No],
                    Witness::TorsionOrder {
                        point: p.to_string(),
                        torsion: TorsionValue::Infinite,
                        class_order,
                        line_program: Vec::new(),
                        formal_divisor: Divisor::zero(),
                        certificate_verified: false,
                    },
                    &[
                        cite::ELLIPTIC_CONE_COHERENT,
                        cite::ELLIPTIC_NON_TORSION,
                        cite::ELLIPTIC_CLASS_GROUP,
                        cite::GRADED_PIC_ZERO,
                        why,
                    ],
                    None,
                )?;
                if let Torsion::NonIntegralMultiple(k) = torsion {
                    let q = self.mul(k as i64, p)?;
                    v = v.with_note(format!("{k}P = {q} is not integral"));
                }
                Ok(v)
            }
        }
    }
}

fn neg<I: Int>(p: &ECPoint<I>) -> ECPoint<I> {
    match p {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine(x, y) => ECPoint::Affine(x.clone(), -y.clone()),
    }
}

fn vertical_at<I: Int>(p: &ECPoint<I>) -> Line<I> {
    let ECPoint::Affine(x, _) = p else {
        unreachable!("Miller steps never meet O before the last one")
    };
    Line::Vertical {
        x: x.clone(),
        points: [p.clone(), neg(p)],
    }
}

fn push_line<I: Int>(lines: &mut Vec<(Line<I>, i64)>, l: Line<I>, e: i64) {
    match lines.iter_mut().find(|(m, _)| *m == l) {
        Some(entry) => entry.1 += e,
        None => lines.push((l, e)),
    }
}

/// A line together with its claimed intersections with the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Line<I: Int> {
    /// `Y = slope X + intercept Z`, meeting the curve in three affine points.
    Chord {
        slope: Rat<I>,
        intercept: Rat<I>,
        points: [ECPoint<I>; 3],
    },
    /// `X = x Z`, meeting the curve in two affine points and `O`.
    Vertical { x: Rat<I>, points: [ECPoint<I>; 2] },
}

impl<I: Int> Line<I> {
    pub fn kind(&self) -> &'static str {
        match self {
            Line::Chord { points, .. } if points[0] == points[1] => "tangent",
            Line::Chord { .. } => "chord",
            Line::Vertical { .. } => "vertical",
        }
    }

    pub fn form(&self) -> Poly<I> {
        let terms = match self {
            Line::Chord {
                slope, intercept, ..
            } => vec![
                (vec![0, 1, 0], Ratio::one()),
                (vec![1, 0, 0], -slope.clone()),
                (vec![0, 0, 1], -intercept.clone()),
            ],
            Line::Vertical { x, .. } => vec![
                (vec![1, 0, 0], Ratio::one()),
                (vec![0, 0, 1], -x.clone()),
            ],
        };
        Poly::from_terms(&XYZ, terms).expect("three variables")
    }

    /// Divisor of the line divided by `Z`, read off the claimed intersections.
    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        let pts: &[ECPoint<I>] = match self {
            Line::Chord { points, .. } => points,
            Line::Vertical { points, .. } => {
                d.add_term(PrimeLabel::new("O"), 1.into());
                points
            }
        };
        for p in pts {
            d.add_term(p.label(), 1.into());
        }
        d.add_term(PrimeLabel::new("O"), (-3).into());
        d
    }

    /// Checks the claimed intersections exactly. For a chord this is the
    /// identity `x^3 + a x + b - (m x + k)^2 = (x - x1)(x - x2)(x - x3)`; for
    /// a vertical line, `y^2 - rhs(x0) = (y - y0)(y + y0)`.
    pub fn verify(&self, curve: &WeierstrassCurve<I>) -> bool {
        match self {
            Line::Chord {
                slope: m,
                intercept: k,
                points,
            } => {
                let mut xs = Vec::new();
                for p in points {
                    let ECPoint::Affine(x, y) = p else { return false };
                    if *y != m.clone() * x.clone() + k.clone() || !curve.contains(p) {
                        return false;
                    }
                    xs.push(x.clone());
                }
                let (x1, x2, x3) = (&xs[0], &xs[1], &xs[2]);
                let two = Ratio::from_integer(int::<I>(2));
                let e1 = x1.clone() + x2.clone() + x3.clone();
                let e2 = x1.clone() * x2.clone() + x1.clone() * x3.clone() + x2.clone() * x3.clone();
                let e3 = x1.clone() * x2.clone() * x3.clone();
                m.clone() * m.clone() == e1
                    && curve.a.clone() - two * m.clone() * k.clone() == e2
                    && curve.b.clone() - k.clone() * k.clone() == -e3
            }
            Line::Vertical { x, points } => {
                let [p, q] = points;
                match (p, q) {
                    (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) => {
                        x1 == x && x2 == x && *y2 == -y1.clone() && curve.contains(p)
                    }
                    _ => false,
                }
            }
        }
    }
}

/// `f = prod line_i^{e_i}` as produced by [`WeierstrassCurve::miller_function`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineProgram<I: Int> {
    pub point: ECPoint<I>,
    pub n: u64,
    pub lines: Vec<(Line<I>, i64)>,
}

impl<I: Int> LineProgram<I> {
    /// Formal divisor of `f`, from the line certificates alone.
    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for (l, e) in &self.lines {
            d = &d + &l.divisor().scale(&(*e).into());
        }
        d
    }

    pub fn target(&self) -> Divisor {
        let n = num_bigint::BigInt::from(self.n);
        let mut d = Divisor::zero();
        d.add_term(self.point.label(), n.clone());
        d.add_term(PrimeLabel::new("O"), -n);
        d
    }

    /// Every certificate checks and the divisor is `n (P) - n (O)`.
    pub fn verify(&self, curve: &WeierstrassCurve<I>) -> bool {
        self.lines.iter().all(|(l, _)| l.verify(curve)) && self.divisor() == self.target()
    }

    pub fn entries(&self) -> Vec<LineEntry> {
        self.lines
            .iter()
            .map(|(l, e)| LineEntry {
                kind: l.kind().to_string(),
                form: l.form().to_string(),
                exponent: *e,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pt(x: i64, y: i64) -> ECPoint<i64> {
        ECPoint::Affine(rat(x, 1), rat(y, 1))
    }

    #[test]
    fn cubics_dehomogenise() {
        for (text, a, b) in [
            ("X^3 - Y^2*Z - 4*Z^3", 0, -4),
            ("X^3 - X*Z^2 - Y^2*Z", -1, 0),
            ("X^3 - Y^2*Z + Z^3", 0, 1),
        ] {
            let c = HomogeneousCubic::<i64>::parse(text).unwrap();
            let e = c.from_homogeneous().unwrap();
            assert_eq!((*e.a(), *e.b()), (rat(a, 1), rat(b, 1)));
        }
        assert!(HomogeneousCubic::<i64>::parse("X^3 - Y^2*Z + X*Y*Z").is_err());
        let sing = HomogeneousCubic::<i64>::parse("X^3 - Y^2*Z").unwrap();
        assert!(matches!(sing.from_homogeneous(), Err(Error::Singular { .. })));
    }

    #[test]
    fn group_law() {
        let e = WeierstrassCurve::<i64>::from_ints(0, -4).unwrap();
        let p = pt(2, 2);
        assert_eq!(e.add(&p, &ECPoint::Infinity).unwrap(), p);
        assert_eq!(e.mul(2, &p).unwrap(), pt(5, -11));
        assert_eq!(e.add(&p, &e.negate(&p).unwrap()).unwrap(), ECPoint::Infinity);
        assert!(matches!(e.add(&pt(1, 1), &p), Err(Error::OffCurve(_))));
        let e = WeierstrassCurve::<i64>::from_ints(-1, 0).unwrap();
        assert_eq!(e.mul(2, &pt(0, 0)).unwrap(), ECPoint::Infinity);
    }

    #[test]
    fn torsion_orders() {
        let e = WeierstrassCurve::<i64>::from_ints(-1, 0).unwrap();
        assert_eq!(e.torsion_order(&pt(0, 0)).unwrap(), Torsion::Finite(2));
        let e = WeierstrassCurve::<i64>::from_ints(0, 1).unwrap();
        assert_eq!(e.torsion_order(&pt(2, 3)).unwrap(), Torsion::Finite(6));
        assert_eq!(e.torsion_order(&ECPoint::Infinity).unwrap(), Torsion::Finite(1));
        let e = WeierstrassCurve::<i64>::from_ints(0, -4).unwrap();
        assert!(e.torsion_order(&pt(2, 2)).unwrap().order().is_none());
        let q = WeierstrassCurve::<i64>::new(rat(1, 2), rat(0, 1)).unwrap();
        assert!(q.torsion_order(&ECPoint::Affine(rat(0, 1), rat(0, 1))).is_err());
    }

    #[test]
    fn miller_two_torsion_is_one_vertical() {
        let e = WeierstrassCurve::<i64>::from_ints(-1, 0).unwrap();
        let prog = e.miller_function(&pt(0, 0), 2).unwrap();
        assert_eq!(prog.lines.len(), 1);
        assert_eq!(prog.lines[0].0.kind(), "vertical");
        assert_eq!(prog.lines[0].0.form().to_string(), "X");
        assert_eq!(prog.lines[0].1, 1);
        assert_eq!(prog.divisor(), Divisor::from_terms([("(0,0)", 2), ("O", -2)]));
        assert!(prog.verify(&e));
    }

    #[test]
    fn miller_order_six() {
        let e = WeierstrassCurve::<i64>::from_ints(0, 1).unwrap();
        let prog = e.miller_function(&pt(2, 3), 6).unwrap();
        assert!(prog.verify(&e));
        assert!(e.miller_function(&pt(2, 3), 1).is_err());
        assert!(e.miller_function(&pt(2, 3), 4).is_err());
    }

    #[test]
    fn forged_certificate_fails() {
        let e = WeierstrassCurve::<i64>::from_ints(0, 1).unwrap();
        let mut prog = e.miller_function(&pt(2, 3), 6).unwrap();
        if let Line::Chord { points, .. } = &mut prog.lines[0].0 {
            points[2] = pt(0, 1);
        }
        assert!(!prog.verify(&e));
        let mut prog = e.miller_function(&pt(2, 3), 6).unwrap();
        prog.lines[0].1 += 1;
        assert!(!prog.verify(&e));
    }

    #[test]
    fn class_images() {
        let e = WeierstrassCurve::<i64>::from_ints(0, -4).unwrap();
        let c = e.cl_class(&pt(2, 2)).unwrap();
        assert_eq!(c.degree, 1);
        assert_eq!(e.cl_class(&ECPoint::Infinity).unwrap().degree, 1);
        assert_eq!(e.div_z_class().point, ECPoint::Infinity);
        let sum = e.add_classes(&c, &c).unwrap();
        assert_eq!(sum, ClassImage { point: pt(5, -11), degree: 2 });
    }

    #[test]
    fn verdicts() {
        let e = WeierstrassCurve::<i64>::from_ints(0, -4).unwrap();
        let v = e.classify_point(&pt(2, 2)).unwrap();
        assert_eq!(v.answers(), [Tri::Yes, Tri::No, Tri::No]);
        assert_eq!(v.prime(), "(X - 2*Z, Y - 2*Z) at (2,2)");

        let e = WeierstrassCurve::<i64>::from_ints(0, 1).unwrap();
        let v = e.classify_point(&pt(2, 3)).unwrap();
        assert_eq!(v.answers(), [Tri::Yes; 3]);
        let Witness::TorsionOrder { torsion, class_order, certificate_verified, .. } = v.witness()
        else {
            panic!("torsion witness expected");
        };
        assert_eq!(*torsion, TorsionValue::Finite(6));
        assert_eq!(*class_order, TorsionValue::Finite(6));
        assert!(certificate_verified);

        let v = e.classify_point(&ECPoint::Infinity).unwrap();
        let Witness::TorsionOrder { class_order, .. } = v.witness() else {
            panic!("torsion witness expected");
        };
        assert_eq!(*class_order, TorsionValue::Finite(3));

        let q = WeierstrassCurve::<i64>::new(rat(-1, 4), rat(0, 1)).unwrap();
        let v = q.classify_point(&ECPoint::Affine(rat(0, 1), rat(0, 1))).unwrap();
        assert_eq!(v.reason(), Some(ReasonCode::NonIntegralModel));
    }

    #[test]
    fn point_parsing() {
        assert_eq!(ECPoint::<i64>::parse("O").unwrap(), ECPoint::Infinity);
        assert_eq!(ECPoint::<i64>::parse("(2,3)").unwrap(), pt(2, 3));
        assert_eq!(
            ECPoint::<i64>::parse("1/4,-3/8").unwrap().to_string(),
            "(1/4,-3/8)"
        );
        assert!(ECPoint::<i64>::parse("1;2").is_err());
    }
}
