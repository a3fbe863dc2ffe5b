//! Tri-state verdicts for the localisation hierarchy
//! classical ⊆ universal ⊆ flat, with witnesses and citation anchors.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::divisors::Divisor;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Short anchors naming the criterion that licensed a verdict.
pub mod cite {
    pub const HIERARCHY: &str = "hierarchy: classical => universal => flat";
    pub const DIM_ONE_FLAT_IS_UNIVERSAL: &str =
        "dimension one: every flat epimorphism is a universal localisation";
    pub const PIC_TORSION_CLASSICAL: &str =
        "Pic torsion: every universal localisation is classical";
    pub const DEDEKIND_PIC_FINITE: &str = "imaginary quadratic order: Pic = Cl is finite";
    pub const NORMAL_DOMAIN_CLASS_TORSION: &str =
        "normal domain: V(p) universal iff [p] torsion in Cl/Pic, classical iff torsion in Cl";
    pub const COHERENCE_VIA_LOCAL_COHOMOLOGY: &str =
        "coherence: complement of V coherent iff H^k_V(A) = 0 for all k > 1";
    pub const HEIGHT_CONDITION: &str =
        "coherence forces minimal primes of V to have height at most one";
    pub const SUPPORT_OF_DENOMINATORS: &str =
        "classical at S iff V is the union of V(s), s in S";
    pub const GRADED_PIC_ZERO: &str = "graded normal ring with A_0 = k: Pic A = 0";
    pub const ELLIPTIC_CONE_COHERENT: &str =
        "normal two-dimensional cone: height-one V(p) has coherent complement";
    pub const ELLIPTIC_CLASS_GROUP: &str = "cone over elliptic curve: Cl A = E(k) x Z/3";
    pub const ELLIPTIC_NON_TORSION: &str =
        "non-torsion point of E(k): flat epimorphism that is not a universal localisation";
    pub const MAZUR: &str = "Mazur: rational torsion orders lie in {1..10, 12}";
    pub const NAGELL_LUTZ: &str = "Nagell-Lutz: torsion points of integral models are integral";
    pub const SEGRE_CLASS_GROUP: &str = "Segre quadric: Cl A = Z via [p] -> e_p - d_p";
    pub const SEGRE_TRICHOTOMY: &str =
        "Segre quadric: d=0 or e=0 not flat; d!=e flat not universal; d=e classical";
    pub const TOP_COHOMOLOGY_RIGHT_EXACT: &str =
        "top local cohomology is right exact: nonvanishing on A/(x) lifts to A";
    pub const PRINCIPAL_PRIME: &str = "principal prime p = fA: A -> A_f is classical";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// Why a verdict is (partly) unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReasonCode {
    BoxExhausted,
    NonIntegralModel,
    ClosednessHypothesis,
    OutsideDecisionRules,
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReasonCode::BoxExhausted => "box_exhausted",
            ReasonCode::NonIntegralModel => "non_integral_model",
            ReasonCode::ClosednessHypothesis => "closedness_hypothesis",
            ReasonCode::OutsideDecisionRules => "outside_decision_rules",
        })
    }
}

/// Torsion order: a positive integer or `"infinite"` on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsionValue {
    Finite(u64),
    Infinite,
}

impl Serialize for TorsionValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TorsionValue::Finite(n) => s.serialize_u64(*n),
            TorsionValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for TorsionValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(TorsionValue::Finite(n)),
            Raw::S(s) if s == "infinite" => Ok(TorsionValue::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad torsion value {s:?}"))),
        }
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionValue::Finite(n) => write!(f, "{n}"),
            TorsionValue::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorDetail {
    pub prime: String,
    pub class_order: u64,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    pub kind: String,
    pub form: String,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightEntry {
    pub prime: String,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `V` empty: the identity map.
    Identity,
    Denominators {
        /// Generators of the multiplicative set.
        denominators: Vec<String>,
        details: Vec<DenominatorDetail>,
    },
    TorsionOrder {
        point: String,
        torsion: TorsionValue,
        class_order: TorsionValue,
        line_program: Vec<LineEntry>,
        formal_divisor: Divisor,
        certificate_verified: bool,
    },
    PrincipalElement {
        element: String,
        generator: String,
        bidegree: (u32, u32),
    },
    NonTorsionClass {
        group: String,
        class: String,
    },
    CohomologyWitness {
        algebra: String,
        ideal: String,
        degree: usize,
        multidegree: Vec<i64>,
        reduction: Vec<String>,
    },
    HeightViolation {
        minimal_primes: Vec<HeightEntry>,
    },
    None,
}

impl Witness {
    fn kind(&self) -> &'static str {
        match self {
            Witness::Identity => "identity",
            Witness::Denominators { .. } => "denominators",
            Witness::TorsionOrder { .. } => "torsion_order",
            Witness::PrincipalElement { .. } => "principal_element",
            Witness::NonTorsionClass { .. } => "non_torsion_class",
            Witness::CohomologyWitness { .. } => "cohomology_witness",
            Witness::HeightViolation { .. } => "height_violation",
            Witness::None => "none",
        }
    }
}

// Divisor deserialization lives here since only verdict round-trips need it.
impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coef {
            N(i64),
            S(String),
        }
        let raw = std::collections::BTreeMap::<String, Coef>::deserialize(d)?;
        let mut out = Divisor::zero();
        for (label, c) in raw {
            let n = match c {
                Coef::N(n) => num_bigint::BigInt::from(n),
                Coef::S(s) => s
                    .parse()
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {s:?}")))?,
            };
            out.add_term(crate::divisors::PrimeLabel::new(label), n);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    schema: u32,
    ring: String,
    prime: String,
    flat: Tri,
    universal: Tri,
    classical: Tri,
    witness: Witness,
    citations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reason: Option<ReasonCode>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Verdict {
    /// Builds a verdict, rejecting anything that breaks the hierarchy or
    /// lacks the citation/reason/witness its answers require.
    pub fn new(
        ring: impl Into<String>,
        prime: impl Into<String>,
        [flat, universal, classical]: [Tri; 3],
        witness: Witness,
        citations: &[&str],
        reason: Option<ReasonCode>,
    ) -> Result<Verdict> {
        let v = Verdict {
            schema: SCHEMA_VERSION,
            ring: ring.into(),
            prime: prime.into(),
            flat,
            universal,
            classical,
            witness,
            citations: citations.iter().map(|c| c.to_string()).collect(),
            reason,
            notes: Vec::new(),
        };
        v.validate()?;
        Ok(v)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(format!("verdict invariant: {m}")));
        use Tri::*;
        if self.schema != SCHEMA_VERSION {
            return bad("unsupported schema");
        }
        if self.classical == Yes && self.universal != Yes {
            return bad("classical = yes requires universal = yes");
        }
        if self.universal == Yes && self.flat != Yes {
            return bad("universal = yes requires flat = yes");
        }
        if self.flat == No && self.universal != No {
            return bad("flat = no forces universal = no");
        }
        if self.universal == No && self.classical != No {
            return bad("universal = no forces classical = no");
        }
        let tris = [self.flat, self.universal, self.classical];
        if tris.iter().any(|t| *t != Unknown) && self.citations.is_empty() {
            return bad("every yes/no needs a citation");
        }
        if tris.contains(&Unknown) && self.reason.is_none() {
            return bad("unknown answers need a reason code");
        }
        let kind = self.witness.kind();
        let ok = match (self.flat, self.universal, self.classical) {
            (_, _, Yes) => matches!(
                self.witness,
                Witness::Identity
                    | Witness::Denominators { .. }
                    | Witness::PrincipalElement { .. }
                    | Witness::TorsionOrder {
                        torsion: TorsionValue::Finite(_),
                        ..
                    }
            ),
            (No, _, _) => matches!(
                self.witness,
                Witness::CohomologyWitness { .. } | Witness::HeightViolation { .. }
            ),
            (Yes, No, _) => matches!(
                self.witness,
                Witness::NonTorsionClass { .. }
                    | Witness::TorsionOrder {
                        torsion: TorsionValue::Infinite,
                        ..
                    }
            ),
            _ => true,
        };
        if !ok {
            return bad(&format!("witness {kind} does not match the verdict branch"));
        }
        Ok(())
    }

    pub fn ring(&self) -> &str {
        &self.ring
    }

    pub fn prime(&self) -> &str {
        &self.prime
    }

    pub fn flat(&self) -> Tri {
        self.flat
    }

    pub fn universal(&self) -> Tri {
        self.universal
    }

    pub fn classical(&self) -> Tri {
        self.classical
    }

    pub fn answers(&self) -> [Tri; 3] {
        [self.flat, self.universal, self.classical]
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    pub fn citations(&self) -> &[String] {
        &self.citations
    }

    pub fn reason(&self) -> Option<ReasonCode> {
        self.reason
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("verdicts always serialize");
        serde_json::to_string_pretty(&value).expect("values always serialize")
    }

    pub fn from_json(text: &str) -> Result<Verdict> {
        let v: Verdict =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("verdict JSON: {e}")))?;
        v.validate()?;
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring:       {}", self.ring);
        let _ = writeln!(s, "prime:      {}", self.prime);
        let _ = writeln!(s, "flat:       {}", self.flat);
        let _ = writeln!(s, "universal:  {}", self.universal);
        let _ = writeln!(s, "classical:  {}", self.classical);
        if let Some(r) = self.reason {
            let _ = writeln!(s, "reason:     {r}");
        }
        let _ = writeln!(s, "witness:    {}", self.witness.kind());
        write_witness(&mut s, &self.witness);
        for n in &self.notes {
            let _ = writeln!(s, "note:       {n}");
        }
        let _ = writeln!(s, "citations:");
        for c in &self.citations {
            let _ = writeln!(s, "  - {c}");
        }
        s
    }
}

fn write_witness(s: &mut String, w: &Witness) {
    match w {
        Witness::Identity => {
            let _ = writeln!(s, "  V is empty: identity localisation");
        }
        Witness::Denominators {
            denominators,
            details,
        } => {
            let _ = writeln!(
                s,
                "  multiplicative set: generated by {{{}}}",
                denominators.join(", ")
            );
            for d in details {
                let _ = writeln!(
                    s,
                    "  {}: class order {}, {}^{} = ({})",
                    d.prime, d.class_order, d.prime, d.class_order, d.generator
                );
            }
        }
        Witness::TorsionOrder {
            point,
            torsion,
            class_order,
            line_program,
            formal_divisor,
            certificate_verified,
        } => {
            let _ = writeln!(s, "  point: {point}");
            let _ = writeln!(s, "  torsion: {torsion}");
            let _ = writeln!(s, "  class order in Cl A: {class_order}");
            if !line_program.is_empty() {
                let _ = writeln!(s, "  line program:");
                for l in line_program {
                    let _ = writeln!(s, "    ({})^{}  [{}]", l.form, l.exponent, l.kind);
                }
                let _ = writeln!(s, "  formal divisor: {formal_divisor}");
                let _ = writeln!(s, "  certificate verified: {certificate_verified}");
            }
        }
        Witness::PrincipalElement {
            element,
            generator,
            bidegree,
        } => {
            let _ = writeln!(s, "  p = ({element}), from f = {generator} of bidegree {bidegree:?}");
            let _ = writeln!(s, "  multiplicative set: generated by {{{element}}}");
        }
        Witness::NonTorsionClass { group, class } => {
            let _ = writeln!(s, "  class {class} is non-torsion in {group}");
        }
        Witness::CohomologyWitness {
            algebra,
            ideal,
            degree,
            multidegree,
            reduction,
        } => {
            let _ = writeln!(
                s,
                "  H^{degree}_{ideal}({algebra}) nonzero in multidegree {multidegree:?}"
            );
            for r in reduction {
                let _ = writeln!(s, "  step: {r}");
            }
        }
        Witness::HeightViolation { minimal_primes } => {
            for m in minimal_primes {
                let _ = writeln!(s, "  minimal prime {} has height {}", m.prime, m.height);
            }
        }
        Witness::None => {}
    }
}
