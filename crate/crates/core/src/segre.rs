//! Height-one primes of `A = k[X,Y,U,V]/(XU - YV)` through the Segre
//! embedding `X = S0 T0, Y = S1 T0, U = S1 T1, V = S0 T1`.
//!
//! A prime is given by its bihomogeneous equation `f` on `P^1 x P^1`; the
//! bidegree `(d, e)` decides everything: `Cl A = Z` via `[p] -> e - d`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::divisors::{Divisor, DivisorClassModel};
use crate::error::{Error, Result};
use crate::lcohom::{nonvanish_via_quotient, MonomialAlgebra, VariableIdeal};
use crate::poly::Poly;
use crate::scalar::{exact_sqrt, Int, Rat};
use crate::verdict::{cite, ReasonCode, Tri, Verdict, Witness};

pub const ST: [&str; 4] = ["S0", "S1", "T0", "T1"];
pub const XYUV: [&str; 4] = ["X", "Y", "U", "V"];

/// Box used when certifying non-coherence on the monomial quotient.
pub const COHOMOLOGY_BOX: i64 = 3;

/// Exponents of `S0^a S1^b T0^c T1^e` in the Segre image of `X, Y, U, V`.
const EMBEDDING: [[u32; 4]; 4] = [[1, 0, 1, 0], [0, 1, 1, 0], [0, 1, 0, 1], [1, 0, 0, 1]];

/// Nonzero polynomial in `S0, S1, T0, T1`, homogeneous in each pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BihomogPoly<I: Int> {
    poly: Poly<I>,
    d: u32,
    e: u32,
}

impl<I: Int> BihomogPoly<I> {
    pub fn new(poly: Poly<I>) -> Result<Self> {
        if poly.vars() != ST {
            return Err(Error::Input(format!("expected variables {ST:?}")));
        }
        let (d, e) = bidegree(&poly)?;
        Ok(BihomogPoly { poly, d, e })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(Poly::parse(text, &ST)?)
    }

    pub fn poly(&self) -> &Poly<I> {
        &self.poly
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.d, self.e)
    }
}

impl<I: Int> fmt::Display for BihomogPoly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Degrees in `(S0, S1)` and in `(T0, T1)`.
pub fn bidegree<I: Int>(f: &Poly<I>) -> Result<(u32, u32)> {
    if f.vars() != ST {
        return Err(Error::Input(format!("expected variables {ST:?}")));
    }
    if f.is_zero() {
        return Err(Error::Input("the zero polynomial has no bidegree".into()));
    }
    match (f.partial_degree(&[0, 1]), f.partial_degree(&[2, 3])) {
        (Some(d), Some(e)) => Ok((d, e)),
        _ => Err(Error::Input(format!("{f} is not bihomogeneous"))),
    }
}

/// Which pair of coordinates a linear form `g` is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `(g(X,Y), g(V,U))`, the equation `g(S0,S1)` of bidegree `(1,0)`.
    XyVu,
    /// `(g(X,V), g(Y,U))`, the equation `g(T0,T1)` of bidegree `(0,1)`.
    XvYu,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SegrePrime<I: Int> {
    /// `g = alpha s + beta t`.
    LinearPair {
        alpha: Rat<I>,
        beta: Rat<I>,
        orientation: Orientation,
    },
    /// `f` with its irreducibility either checked or asserted by the caller.
    Poly {
        f: BihomogPoly<I>,
        irreducibility_checked: bool,
    },
}

impl<I: Int> SegrePrime<I> {
    pub fn linear_pair(alpha: Rat<I>, beta: Rat<I>, orientation: Orientation) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::Input("g must be nonzero".into()));
        }
        Ok(SegrePrime::LinearPair {
            alpha,
            beta,
            orientation,
        })
    }

    /// Wraps `f`, rejecting it when it is visibly reducible. Linear
    /// factors are always detected; bidegrees `(2,0)`, `(0,2)` and `(1,1)`
    /// are factored exactly; higher degrees are accepted as asserted.
    pub fn from_poly(f: BihomogPoly<I>) -> Result<Self> {
        let checked = check_irreducible(&f)?;
        Ok(SegrePrime::Poly {
            f,
            irreducibility_checked: checked,
        })
    }

    pub fn parse_poly(text: &str) -> Result<Self> {
        Self::from_poly(BihomogPoly::parse(text)?)
    }

    /// Reads a pair of linear generators such as `(X,V)` or `(2X+Y, 2V+U)`.
    pub fn parse_ideal(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (g1, g2), got {text:?}")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("expected two generators in {text:?}")));
        }
        let l1 = Poly::<I>::parse(parts[0], &XYUV)?;
        let l2 = Poly::<I>::parse(parts[1], &XYUV)?;
        let coeffs = |p: &Poly<I>, i: usize, j: usize| -> Option<(Rat<I>, Rat<I>)> {
            let mut e = [[0u32; 4]; 2];
            e[0][i] = 1;
            e[1][j] = 1;
            let (a, b) = (p.coefficient(&e[0]), p.coefficient(&e[1]));
            let only = p.len() == usize::from(!a.is_zero()) + usize::from(!b.is_zero());
            (only && !(a.is_zero() && b.is_zero())).then_some((a, b))
        };
        // X=0, Y=1, U=2, V=3.
        let shapes = [
            (Orientation::XyVu, (0, 1), (3, 2)),
            (Orientation::XvYu, (0, 3), (1, 2)),
        ];
        for (first, second) in [(&l1, &l2), (&l2, &l1)] {
            for (orientation, (i1, j1), (i2, j2)) in shapes {
                let (Some((a, b)), Some((c, d))) =
                    (coeffs(first, i1, j1), coeffs(second, i2, j2))
                else {
                    continue;
                };
                if a.clone() * d.clone() == b.clone() * c.clone() {
                    return Self::linear_pair(a, b, orientation);
                }
            }
        }
        Err(Error::Input(format!(
            "{text:?} is not of the form (g(X,Y), g(V,U)) or (g(X,V), g(Y,U))"
        )))
    }

    /// `f_p` as a polynomial in `S0, S1, T0, T1`.
    pub fn equation(&self) -> Poly<I> {
        match self {
            SegrePrime::LinearPair {
                alpha,
                beta,
                orientation,
            } => {
                let (i, j) = match orientation {
                    Orientation::XyVu => (0, 1),
                    Orientation::XvYu => (2, 3),
                };
                let mut ei = vec![0; 4];
                ei[i] = 1;
                let mut ej = vec![0; 4];
                ej[j] = 1;
                Poly::from_terms(&ST, [(ei, alpha.clone()), (ej, beta.clone())]).expect("four variables")
            }
            SegrePrime::Poly { f, .. } => f.poly.clone(),
        }
    }

    /// `psi(p)`: the bidegree of `f_p`.
    pub fn psi(&self) -> (u32, u32) {
        match self {
            SegrePrime::LinearPair {
                orientation: Orientation::XyVu,
                ..
            } => (1, 0),
            SegrePrime::LinearPair {
                orientation: Orientation::XvYu,
                ..
            } => (0, 1),
            SegrePrime::Poly { f, .. } => f.bidegree(),
        }
    }

    /// `rho(p) = e - d`, the image of `[p]` in `Cl A = Z`.
    pub fn rho(&self) -> i64 {
        let (d, e) = self.psi();
        i64::from(e) - i64::from(d)
    }

    /// A bidegree `(1,0)` or `(0,1)` equation as a linear pair.
    fn as_linear_pair(&self) -> Option<SegrePrime<I>> {
        match self {
            SegrePrime::LinearPair { .. } => Some(self.clone()),
            SegrePrime::Poly { f, .. } => {
                let (orientation, i, j) = match f.bidegree() {
                    (1, 0) => (Orientation::XyVu, 0, 1),
                    (0, 1) => (Orientation::XvYu, 2, 3),
                    _ => return None,
                };
                let unit = |k: usize| {
                    let mut e = vec![0; 4];
                    e[k] = 1;
                    e
                };
                Some(SegrePrime::LinearPair {
                    alpha: f.poly.coefficient(&unit(i)),
                    beta: f.poly.coefficient(&unit(j)),
                    orientation,
                })
            }
        }
    }
}

impl<I: Int> fmt::Display for SegrePrime<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegrePrime::LinearPair {
                alpha,
                beta,
                orientation,
            } => {
                let lin = |i: usize, j: usize| {
                    let mut ei = vec![0; 4];
                    ei[i] = 1;
                    let mut ej = vec![0; 4];
                    ej[j] = 1;
                    Poly::<I>::from_terms(&XYUV, [(ei, alpha.clone()), (ej, beta.clone())])
                        .expect("four variables")
                };
                let (g1, g2) = match orientation {
                    Orientation::XyVu => (lin(0, 1), lin(3, 2)),
                    Orientation::XvYu => (lin(0, 3), lin(1, 2)),
                };
                write!(f, "({g1}, {g2})")
            }
            SegrePrime::Poly { f: p, .. } => write!(f, "f = {p}"),
        }
    }
}

fn is_rational_square<I: Int>(r: &Rat<I>) -> bool {
    !r.is_negative() && exact_sqrt(r.numer()).is_some() && exact_sqrt(r.denom()).is_some()
}

/// `Ok(true)` when irreducibility was proved, `Ok(false)` when only assumed.
fn check_irreducible<I: Int>(f: &BihomogPoly<I>) -> Result<bool> {
    let (d, e) = f.bidegree();
    if d + e == 0 {
        return Err(Error::Input("f must be nonconstant".into()));
    }
    let reducible = || Err(Error::Input(format!("{f} is reducible")));
    if d + e > 1 {
        for v in 0..4 {
            if f.poly.terms().all(|(exp, _)| exp[v] > 0) {
                return reducible();
            }
        }
    }
    let c = |e: [u32; 4]| f.poly.coefficient(&e);
    match (d, e) {
        (1, 0) | (0, 1) => Ok(true),
        (2, 0) | (0, 2) => {
            let (i, j) = if d == 2 { (0, 1) } else { (2, 3) };
            let mut e_ii = [0; 4];
            e_ii[i] = 2;
            let mut e_ij = [0; 4];
            e_ij[i] = 1;
            e_ij[j] = 1;
            let mut e_jj = [0; 4];
            e_jj[j] = 2;
            let (a, b, cc) = (c(e_ii), c(e_ij), c(e_jj));
            let four = Ratio::from_integer(crate::scalar::int::<I>(4));
            if is_rational_square(&(b.clone() * b - four * a * cc)) {
                return reducible();
            }
            Ok(true)
        }
        (1, 1) => {
            let det = c([1, 0, 1, 0]) * c([0, 1, 0, 1]) - c([1, 0, 0, 1]) * c([0, 1, 1, 0]);
            if det.is_zero() {
                return reducible();
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

/// Preimage of `f` (with `d = e`) under the embedding; monomials are
/// written with the largest possible power of `X`.
pub fn to_xyuv<I: Int>(f: &BihomogPoly<I>) -> Result<Poly<I>> {
    let (d, e) = f.bidegree();
    if d != e {
        return Err(Error::Input(format!(
            "{f} has bidegree ({d},{e}); only d = e lies in the image"
        )));
    }
    let mut terms = Vec::new();
    for (exp, coeff) in f.poly.terms() {
        let (a, b, c) = (exp[0], exp[1], exp[2]);
        // X^x Y^(c-x) U^(b-c+x) V^(a-x) maps to S0^a S1^b T0^c T1^(a+b-c).
        let lo = c.saturating_sub(b);
        let x = a.min(c);
        if x < lo {
            return Err(Error::Input(format!("{f} is not in the image of the embedding")));
        }
        terms.push((vec![x, c - x, b + x - c, a - x], coeff.clone()));
    }
    let g = Poly::from_terms(&XYUV, terms)?;
    if embed(&g)? != f.poly {
        return Err(Error::Input(format!("{f} is not in the image of the embedding")));
    }
    Ok(g)
}

/// Substitutes the Segre monomials into a polynomial in `X, Y, U, V`.
pub fn embed<I: Int>(g: &Poly<I>) -> Result<Poly<I>> {
    let images: Vec<Poly<I>> = EMBEDDING
        .iter()
        .map(|e| Poly::from_terms(&ST, [(e.to_vec(), Ratio::one())]))
        .collect::<Result<_>>()?;
    g.substitute(&images)
}

/// A linear change of `(S0,S1)` or `(T0,T1)` taking `g` to the first
/// coordinate, and the induced substitution on `X, Y, U, V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<I: Int> {
    /// Rows give the new coordinates in terms of the old; row one is `g`.
    pub matrix: [[Rat<I>; 2]; 2],
    pub det: Rat<I>,
    /// `(X', Y', U', V')` in terms of `X, Y, U, V`.
    pub substitution: [Poly<I>; 4],
    /// `(X,V)` or `(X,Y)`: the prime after the change.
    pub normalized: &'static str,
    pub orientation: Orientation,
}

impl<I: Int> NormalForm<I> {
    /// `X'U' - Y'V' = det (XU - YV)`.
    pub fn verify(&self) -> bool {
        let rel = |p: &[Poly<I>; 4]| -> Result<Poly<I>> {
            p[0].mul(&p[2])?.sub(&p[1].mul(&p[3])?)
        };
        let vars: [Poly<I>; 4] = XYUV.map(|v| Poly::var(&XYUV, v).expect("known variable"));
        match (rel(&self.substitution), rel(&vars)) {
            (Ok(lhs), Ok(base)) => !self.det.is_zero() && lhs == base.scale(&self.det),
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        let m = &self.matrix;
        let show = crate::scalar::rat_display::<I>;
        format!(
            "coordinate change [[{}, {}], [{}, {}]] with X'U' - Y'V' = {}(XU - YV) moves the prime to {}",
            show(&m[0][0]),
            show(&m[0][1]),
            show(&m[1][0]),
            show(&m[1][1]),
            show(&self.det),
            self.normalized
        )
    }
}

pub fn case1_normal_form<I: Int>(p: &SegrePrime<I>) -> Result<NormalForm<I>> {
    let SegrePrime::LinearPair {
        alpha,
        beta,
        orientation,
    } = p
    else {
        return Err(Error::Input("normal forms exist for linear pairs only".into()));
    };
    let (zero, one) = (Ratio::<I>::zero(), Ratio::<I>::one());
    let second = if alpha.is_zero() {
        [one.clone(), zero.clone()]
    } else {
        [zero.clone(), one.clone()]
    };
    let matrix = [[alpha.clone(), beta.clone()], second];
    let det = matrix[0][0].clone() * matrix[1][1].clone() - matrix[0][1].clone() * matrix[1][0].clone();
    let lin = |c1: &Rat<I>, v1: &str, c2: &Rat<I>, v2: &str| -> Poly<I> {
        let x = Poly::var(&XYUV, v1).expect("known").scale(c1);
        let y = Poly::var(&XYUV, v2).expect("known").scale(c2);
        x.add(&y).expect("same variables")
    };
    let [[a, b], [c, d]] = &matrix;
    let (substitution, normalized) = match orientation {
        // S0' = aS0 + bS1, S1' = cS0 + dS1.
        Orientation::XyVu => (
            [lin(a, "X", b, "Y"), lin(c, "X", d, "Y"), lin(c, "V", d, "U"), lin(a, "V", b, "U")],
            "(X,V)",
        ),
        // T0' = aT0 + bT1, T1' = cT0 + dT1.
        Orientation::XvYu => (
            [lin(a, "X", b, "V"), lin(a, "Y", b, "U"), lin(c, "Y", d, "U"), lin(c, "X", d, "V")],
            "(X,Y)",
        ),
    };
    let nf = NormalForm {
        matrix,
        det,
        substitution,
        normalized,
        orientation: *orientation,
    };
    debug_assert!(nf.verify());
    Ok(nf)
}

/// `Cl A = Z^2/((1,1))` on the generators `(1,0)` and `(0,1)`, and the class
/// of a prime of bidegree `(d,e)`.
pub fn class_model(d: u32, e: u32) -> Result<(DivisorClassModel, Divisor)> {
    let model = DivisorClassModel::free(&["(1,0)", "(0,1)"])
        .quotient_by_divisor(&Divisor::from_terms([("(1,0)", 1), ("(0,1)", 1)]))?;
    Ok((model, Divisor::from_terms([("(1,0)", i64::from(d)), ("(0,1)", i64::from(e))])))
}

/// The monomial surrogate `k[X,Y,U,V]/(XU)`: modulo `Y` or `V` it agrees
/// with `A`, which is all the reductions below use.
pub fn monomial_surrogate() -> MonomialAlgebra {
    MonomialAlgebra::parse("X,Y,U,V", &["XU"]).expect("fixed algebra")
}

/// Certificate that the complement of `V(p)` is not coherent for a linear
/// pair `p`: normalise `p` to `(X,V)` or `(X,Y)`, pass to `A/(Y)` resp.
/// `A/(V)`, which are monomial, and find a nonzero `H^2` there.
pub fn noncoherence_witness<I: Int>(p: &SegrePrime<I>) -> Result<Option<Witness>> {
    let nf = case1_normal_form(p)?;
    if !nf.verify() {
        return Err(Error::Precondition("coordinate change failed its certificate".into()));
    }
    let (gens, kill): (&[&str], &str) = match nf.orientation {
        Orientation::XyVu => (&["X", "V"], "Y"),
        Orientation::XvYu => (&["X", "Y"], "V"),
    };
    let s = monomial_surrogate();
    let ideal = VariableIdeal::new(&s, gens)?;
    let Some(cert) = nonvanish_via_quotient(&s, kill, &ideal, 2, COHOMOLOGY_BOX)? else {
        return Ok(None);
    };
    let mut reduction = vec![
        nf.describe(),
        format!("A/({kill}) = {} since XU - YV = XU modulo {kill}", cert.quotient),
    ];
    reduction.extend(cert.steps.iter().skip(1).cloned());
    Ok(Some(Witness::CohomologyWitness {
        algebra: cert.quotient.to_string(),
        ideal: cert.ideal.display(&cert.quotient),
        degree: cert.degree,
        multidegree: cert.witness,
        reduction,
    }))
}

pub fn classify_segre<I: Int>(p: &SegrePrime<I>) -> Result<Verdict> {
    let ring = "segre";
    let prime = p.to_string();
    let (d, e) = p.psi();
    if d == 0 || e == 0 {
        let Some(pair) = p.as_linear_pair() else {
            return Verdict::new(
                ring,
                prime,
                [Tri::Unknown; 3],
                Witness::None,
                &[],
                Some(ReasonCode::ClosednessHypothesis),
            )
            .map(|v| {
                v.with_note(format!(
                    "bidegree ({d},{e}) of degree above one: the linear-form description needs an algebraically closed field"
                ))
            });
        };
        return match noncoherence_witness(&pair)? {
            Some(w) => Verdict::new(
                ring,
                prime,
                [Tri::No; 3],
                w,
                &[
                    cite::SEGRE_TRICHOTOMY,
                    cite::COHERENCE_VIA_LOCAL_COHOMOLOGY,
                    cite::TOP_COHOMOLOGY_RIGHT_EXACT,
                ],
                None,
            ),
            None => Verdict::new(
                ring,
                prime,
                [Tri::Unknown; 3],
                Witness::None,
                &[],
                Some(ReasonCode::BoxExhausted),
            ),
        };
    }
    let (model, class) = class_model(d, e)?;
    let order = model.class_order(&class)?;
    if d != e {
        debug_assert!(!order.is_finite());
        return Verdict::new(
            ring,
            prime,
            [Tri::Yes, Tri::No, Tri::No],
            Witness::NonTorsionClass {
                group: model.structure().to_string(),
                class: p.rho().to_string(),
            },
            &[
                cite::SEGRE_TRICHOTOMY,
                cite::SEGRE_CLASS_GROUP,
                cite::GRADED_PIC_ZERO,
                cite::NORMAL_DOMAIN_CLASS_TORSION,
            ],
            None,
        );
    }
    let f = match p {
        SegrePrime::Poly { f, .. } => f.clone(),
        SegrePrime::LinearPair { .. } => unreachable!("linear pairs have d + e = 1"),
    };
    let s = to_xyuv(&f)?;
    let mut v = Verdict::new(
        ring,
        prime,
        [Tri::Yes; 3],
        Witness::PrincipalElement {
            element: f.to_string(),
            generator: s.to_string(),
            bidegree: (d, e),
        },
        &[
            cite::SEGRE_TRICHOTOMY,
            cite::SEGRE_CLASS_GROUP,
            cite::PRINCIPAL_PRIME,
        ],
        None,
    )?;
    if let SegrePrime::Poly {
        irreducibility_checked: false,
        ..
    } = p
    {
        v = v.with_note("irreducibility of f assumed, not checked");
    }
    Ok(v)
}
