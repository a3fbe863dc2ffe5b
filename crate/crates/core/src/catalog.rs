//! Built-in rings and the `classify(ring, prime)` dispatcher.

use num_bigint::BigInt;
use serde::Serialize;

use crate::elliptic::{ECPoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::lcohom::{certify_nonvanishing, vanishing_reason, MonomialAlgebra, NonVanishing, VariableIdeal};
use crate::quadorder::{classify_dedekind, QuadOrder};
use crate::segre::{classify_segre, noncoherence_witness, SegrePrime};
use crate::verdict::{cite, DenominatorDetail, HeightEntry, ReasonCode, Tri, Verdict, Witness};

/// Box for multidegree scans behind `classify`.
pub const CLASSIFY_BOX: i64 = 3;

/// Prefix marking a prime given by its bihomogeneous equation.
pub const EQUATION_PREFIX: &str = "fp:";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub parameters: &'static str,
    pub example_primes: &'static [&'static str],
    pub representable: bool,
    pub notes: &'static str,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "quad:-5",
        description: "Z[sqrt(-5)], a Dedekind domain with class group Z/2",
        parameters: "d = -5, discriminant -20",
        example_primes: &["p2", "p3", "p3bar", "p2,p3", "{}"],
        representable: true,
        notes: "any quad:<d> with d < 0 squarefree is accepted",
    },
    CatalogEntry {
        id: "ell:0,-4",
        description: "Q[X,Y,Z]/(X^3 - Y^2 Z - 4 Z^3), cone over y^2 = x^3 - 4",
        parameters: "a = 0, b = -4",
        example_primes: &["2,2", "5,-11", "O"],
        representable: true,
        notes: "primes are rational points; any ell:<a>,<b> is accepted",
    },
    CatalogEntry {
        id: "ell:-1,0",
        description: "Q[X,Y,Z]/(X^3 - X Z^2 - Y^2 Z), cone over y^2 = x^3 - x",
        parameters: "a = -1, b = 0",
        example_primes: &["0,0", "1,0", "-1,0", "O"],
        representable: true,
        notes: "E(Q) is 2-torsion, so the class group is torsion",
    },
    CatalogEntry {
        id: "ell:0,1",
        description: "Q[X,Y,Z]/(X^3 - Y^2 Z + Z^3), cone over y^2 = x^3 + 1",
        parameters: "a = 0, b = 1",
        example_primes: &["2,3", "0,1", "-1,0", "O"],
        representable: true,
        notes: "E(Q) is cyclic of order 6",
    },
    CatalogEntry {
        id: "segre",
        description: "k[X,Y,U,V]/(XU - YV), cone over P^1 x P^1",
        parameters: "k = Q; primes via f in S0,S1,T0,T1 or a linear pair",
        example_primes: &["(X,V)", "(X,Y)", "fp:S0*T0 + S1*T1", "fp:S0*T0^2 + S1*T1^2", "m"],
        representable: true,
        notes: "irreducibility of f is checked up to total degree 2 and assumed above",
    },
    CatalogEntry {
        id: "twoplanes",
        description: "k[[X,Y,U]]/(XU), two planes meeting in a line",
        parameters: "primes generated by variables",
        example_primes: &["(X,Y)", "(X)", "m"],
        representable: true,
        notes: "computed on the polynomial model k[X,Y,U]/(XU), whose multigraded local cohomology agrees",
    },
    CatalogEntry {
        id: "dim3hyper",
        description: "k[[X,Y,U,V]]/(XU - YV), three-dimensional normal domain",
        parameters: "primes as linear pairs such as (X,Y)",
        example_primes: &["(X,Y)", "(X,V)", "m"],
        representable: true,
        notes: "computed through monomial quotients A/(V) or A/(Y) of the polynomial model",
    },
    CatalogEntry {
        id: "nagata",
        description: "Nagata's two-dimensional normal local domain that is not analytically irreducible",
        parameters: "built from a transcendental power series",
        example_primes: &[],
        representable: false,
        notes: "no finite presentation; listed for completeness only",
    },
];

pub fn catalog_list() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn catalog_entry(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Quad(QuadOrder<BigInt>),
    Elliptic(WeierstrassCurve<BigInt>),
    Segre,
    TwoPlanes,
    Dim3Hyper,
}

/// Resolves a ring spec; `nagata` is refused as not representable.
pub fn parse_ring(spec: &str) -> Result<Ring> {
    let s = spec.trim();
    if let Some(d) = s.strip_prefix("quad:") {
        let d = crate::scalar::parse_int::<BigInt>(d)
            .ok_or_else(|| Error::Parse(format!("bad quadratic ring {s:?}")))?;
        return Ok(Ring::Quad(QuadOrder::new(d)?));
    }
    if let Some(ab) = s.strip_prefix("ell:") {
        return Ok(Ring::Elliptic(WeierstrassCurve::parse(ab)?));
    }
    match s {
        "segre" => Ok(Ring::Segre),
        "twoplanes" => Ok(Ring::TwoPlanes),
        "dim3hyper" => Ok(Ring::Dim3Hyper),
        "nagata" => Err(Error::NotRepresentable(
            "nagata: the ring has no finite description".into(),
        )),
        _ => Err(Error::Input(format!("unknown ring {s:?}"))),
    }
}

/// `classify(ring, prime)`; an equation prime is written `fp:<f>`.
pub fn classify(ring_spec: &str, prime_spec: &str) -> Result<Verdict> {
    let prime = prime_spec.trim();
    match parse_ring(ring_spec)? {
        Ring::Quad(order) => {
            let list = prime.trim_start_matches('{').trim_end_matches('}');
            let primes = list
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| order.parse_prime(p))
                .collect::<Result<Vec<_>>>()?;
            classify_dedekind(&order, &primes)
        }
        Ring::Elliptic(curve) => curve.classify_point(&ECPoint::parse(prime)?),
        Ring::Segre => {
            if prime == "m" {
                return height_violation("segre", "(X,Y,U,V)", 3);
            }
            let p = match prime.strip_prefix(EQUATION_PREFIX) {
                Some(f) => SegrePrime::<BigInt>::parse_poly(f)?,
                None => SegrePrime::parse_ideal(prime)?,
            };
            classify_segre(&p)
        }
        Ring::Dim3Hyper => {
            if prime == "m" {
                return height_violation("dim3hyper", "(X,Y,U,V)", 3);
            }
            let p = SegrePrime::<BigInt>::parse_ideal(prime)?;
            let v = match noncoherence_witness(&p)? {
                Some(w) => Verdict::new(
                    "dim3hyper",
                    p.to_string(),
                    [Tri::No; 3],
                    w,
                    &[cite::COHERENCE_VIA_LOCAL_COHOMOLOGY, cite::TOP_COHOMOLOGY_RIGHT_EXACT],
                    None,
                )?,
                None => Verdict::new(
                    "dim3hyper",
                    p.to_string(),
                    [Tri::Unknown; 3],
                    Witness::None,
                    &[],
                    Some(ReasonCode::BoxExhausted),
                )?,
            };
            Ok(v.with_note("power series ring replaced by its polynomial model"))
        }
        Ring::TwoPlanes => {
            let alg = MonomialAlgebra::parse("X,Y,U", &["XU"])?;
            let v = classify_variable_prime("twoplanes", &alg, prime)?;
            Ok(v.with_note("power series ring replaced by its polynomial model"))
        }
    }
}

fn height_violation(ring: &str, prime: &str, height: usize) -> Result<Verdict> {
    Verdict::new(
        ring,
        prime,
        [Tri::No; 3],
        Witness::HeightViolation {
            minimal_primes: vec![HeightEntry {
                prime: prime.to_string(),
                height,
            }],
        },
        &[cite::HEIGHT_CONDITION],
        None,
    )
}

/// `V(P)` for a prime `P` generated by variables of a monomial algebra.
pub fn classify_variable_prime(ring: &str, alg: &MonomialAlgebra, prime: &str) -> Result<Verdict> {
    let ideal = if prime == "m" {
        let names: Vec<&str> = alg.vars().iter().map(String::as_str).collect();
        VariableIdeal::new(alg, &names)?
    } else {
        VariableIdeal::parse(alg, prime)?
    };
    let name = ideal.display(alg);
    let height = alg.variable_prime_height(&ideal)?;
    if height > 1 {
        return height_violation(ring, &name, height);
    }
    let mut all_vanish = true;
    for k in 2..=ideal.len() {
        match certify_nonvanishing(alg, &ideal, k, CLASSIFY_BOX)? {
            NonVanishing::Witness(a) => {
                return Verdict::new(
                    ring,
                    name.clone(),
                    [Tri::No; 3],
                    Witness::CohomologyWitness {
                        algebra: alg.to_string(),
                        ideal: name,
                        degree: k,
                        multidegree: a,
                        reduction: vec![format!(
                            "multidegree scan with |a_j| <= {CLASSIFY_BOX}, Čech complex on the generators"
                        )],
                    },
                    &[cite::COHERENCE_VIA_LOCAL_COHOMOLOGY],
                    None,
                );
            }
            NonVanishing::NotFoundWithinBox { vanishing } => all_vanish &= vanishing.is_some(),
        }
    }
    if ideal.len() == 1 {
        let x = name.trim_matches(|c| c == '(' || c == ')').to_string();
        return Verdict::new(
            ring,
            name.clone(),
            [Tri::Yes; 3],
            Witness::Denominators {
                denominators: vec![x.clone()],
                details: vec![DenominatorDetail {
                    prime: name,
                    class_order: 1,
                    generator: x,
                }],
            },
            &[cite::PRINCIPAL_PRIME, cite::SUPPORT_OF_DENOMINATORS],
            None,
        );
    }
    if all_vanish {
        let why: Vec<String> = (2..=ideal.len())
            .filter_map(|k| vanishing_reason(alg, &ideal, k).map(|r| format!("H^{k}: {r}")))
            .collect();
        let mut v = Verdict::new(
            ring,
            name,
            [Tri::Yes, Tri::Unknown, Tri::Unknown],
            Witness::None,
            &[cite::COHERENCE_VIA_LOCAL_COHOMOLOGY],
            Some(ReasonCode::OutsideDecisionRules),
        )?;
        for w in why {
            v = v.with_note(w);
        }
        return Ok(v);
    }
    Verdict::new(
        ring,
        name,
        [Tri::Unknown; 3],
        Witness::None,
        &[],
        Some(ReasonCode::BoxExhausted),
    )
}
