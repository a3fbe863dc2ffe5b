//! Multigraded Čech local cohomology of squarefree monomial quotients
//! `k[x_1..x_n]/(monomials)` with respect to ideals generated by variables.
//!
//! Every localisation `A_W` is `Z^n`-graded with pieces of dimension at most
//! one, so in a fixed multidegree the Čech complex is a complex of
//! coordinate spaces with `±1` differentials and its cohomology is a matter
//! of ranks.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::abgroup::{smith_normal_form, Matrix};
use crate::error::{Error, Result};

pub type Multidegree = Vec<i64>;

/// `k[vars]/(relations)` with squarefree monomial relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialAlgebra {
    vars: Vec<String>,
    relations: Vec<BTreeSet<usize>>,
}

impl MonomialAlgebra {
    /// Redundant relations (multiples of others) are dropped.
    pub fn new(vars: &[&str], relations: &[&[&str]]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::Input(format!("bad or duplicate variable {v:?}")));
            }
        }
        let mut rels = Vec::new();
        for r in relations {
            let mut set = BTreeSet::new();
            for name in *r {
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Input(format!("unknown variable {name:?}")))?;
                set.insert(idx);
            }
            if set.is_empty() {
                return Err(Error::Input("relation 1 gives the zero ring".into()));
            }
            rels.push(set);
        }
        Ok(Self::from_sets(vars, rels))
    }

    fn from_sets(vars: Vec<String>, mut rels: Vec<BTreeSet<usize>>) -> Self {
        rels.sort_by_key(|r| (r.len(), r.iter().copied().collect::<Vec<_>>()));
        rels.dedup();
        let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
        for r in rels {
            if !minimal.iter().any(|m| m.is_subset(&r)) {
                minimal.push(r);
            }
        }
        minimal.sort();
        MonomialAlgebra {
            vars,
            relations: minimal,
        }
    }

    /// `vars` is comma separated; each relation is a product of variable
    /// names, written `X*U` or, when unambiguous, `XU`.
    pub fn parse(vars: &str, relations: &[&str]) -> Result<Self> {
        let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let mut rels: Vec<Vec<&str>> = Vec::new();
        for r in relations {
            rels.push(split_monomial(r.trim(), &names)?);
        }
        let rel_refs: Vec<&[&str]> = rels.iter().map(Vec::as_slice).collect();
        Self::new(&names, &rel_refs)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relations(&self) -> &[BTreeSet<usize>] {
        &self.relations
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Input(format!("unknown variable {name:?}")))
    }

    /// A set of variables is a face when it contains no relation.
    pub fn is_face(&self, s: &BTreeSet<usize>) -> bool {
        !self.relations.iter().any(|r| r.is_subset(s))
    }

    /// Maximal faces, found by brute force over subsets.
    pub fn facets(&self) -> Vec<BTreeSet<usize>> {
        let n = self.vars.len();
        assert!(n < 24, "facet enumeration is exponential");
        let faces: Vec<BTreeSet<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .filter(|s| self.is_face(s))
            .collect();
        faces
            .iter()
            .filter(|f| !faces.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
            .cloned()
            .collect()
    }

    /// Largest face size.
    pub fn krull_dim(&self) -> usize {
        self.facets().iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// `A/(x)`: drops `x` and every relation containing it.
    pub fn kill(&self, var: &str) -> Result<MonomialAlgebra> {
        let k = self.var_index(var)?;
        let vars: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let shift = |i: usize| if i > k { i - 1 } else { i };
        let rels = self
            .relations
            .iter()
            .filter(|r| !r.contains(&k))
            .map(|r| r.iter().map(|&i| shift(i)).collect())
            .collect();
        Ok(Self::from_sets(vars, rels))
    }

    /// The ideal generated by the variables `t` is prime iff it meets every
    /// relation; its height is `|T| - min |F^c|` over facets `F` with `F^c ⊆ T`.
    pub fn variable_prime_height(&self, t: &VariableIdeal) -> Result<usize> {
        let ts: BTreeSet<usize> = t.generators().iter().copied().collect();
        if self.relations.iter().any(|r| r.is_disjoint(&ts)) {
            return Err(Error::Input(format!(
                "{} is not prime in {self}",
                t.display(self)
            )));
        }
        let all: BTreeSet<usize> = (0..self.vars.len()).collect();
        let best = self
            .facets()
            .iter()
            .map(|f| all.difference(f).copied().collect::<BTreeSet<_>>())
            .filter(|c| c.is_subset(&ts))
            .map(|c| c.len())
            .min()
            .expect("a prime contains some minimal prime");
        Ok(ts.len() - best)
    }
}

fn split_monomial<'a>(text: &str, names: &[&'a str]) -> Result<Vec<&'a str>> {
    let bad = || Error::Parse(format!("cannot read monomial {text:?}"));
    if text.contains('*') {
        return text
            .split('*')
            .map(|p| names.iter().find(|n| **n == p.trim()).copied().ok_or_else(bad))
            .collect();
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let hit = names
            .iter()
            .filter(|n| rest.starts_with(**n))
            .max_by_key(|n| n.len())
            .ok_or_else(bad)?;
        out.push(*hit);
        rest = &rest[hit.len()..];
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

impl fmt::Display for MonomialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]", self.vars.join(","))?;
        if self.relations.is_empty() {
            return Ok(());
        }
        let sep = if self.vars.iter().all(|v| v.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&i| self.vars[i].as_str())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        write!(f, "/({})", rels.join(", "))
    }
}

/// Ideal generated by a nonempty set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableIdeal {
    gens: Vec<usize>,
}

impl VariableIdeal {
    pub fn new(algebra: &MonomialAlgebra, names: &[&str]) -> Result<Self> {
        let mut gens = names
            .iter()
            .map(|n| algebra.var_index(n.trim()))
            .collect::<Result<Vec<_>>>()?;
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::Input("ideal needs at least one generator".into()));
        }
        Ok(VariableIdeal { gens })
    }

    /// `X,Y` or `(X,Y)`.
    pub fn parse(algebra: &MonomialAlgebra, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        let names: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::new(algebra, &names)
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn display(&self, algebra: &MonomialAlgebra) -> String {
        let names: Vec<&str> = self.gens.iter().map(|&i| algebra.vars[i].as_str()).collect();
        format!("({})", names.join(","))
    }

    /// The same generators, by name, inside another algebra.
    pub fn transport(&self, from: &MonomialAlgebra, to: &MonomialAlgebra) -> Result<Self> {
        let names: Vec<&str> = self.gens.iter().map(|&i| from.vars[i].as_str()).collect();
        Self::new(to, &names)
    }
}

/// Whether the degree-`a` piece of `A_W` is nonzero: `a_j >= 0` off `W`,
/// and no relation lies inside `W ∪ {j : a_j > 0}`.
fn piece_nonzero(alg: &MonomialAlgebra, w: &BTreeSet<usize>, a: &[i64]) -> bool {
    let mut support = w.clone();
    for (j, &aj) in a.iter().enumerate() {
        if aj < 0 && !w.contains(&j) {
            return false;
        }
        if aj > 0 {
            support.insert(j);
        }
    }
    alg.is_face(&support)
}

fn subsets_of_size(gens: &[usize], p: usize) -> Vec<BTreeSet<usize>> {
    let g = gens.len();
    (0u32..1 << g)
        .filter(|m| m.count_ones() as usize == p)
        .map(|m| (0..g).filter(|i| m >> i & 1 == 1).map(|i| gens[i]).collect())
        .collect()
}

/// Degree-`a` part of the Čech complex `0 -> C^0 -> ... -> C^g -> 0`.
#[derive(Clone, Debug)]
pub struct CechPiece {
    /// Basis of `C^p`: the subsets `W` with a nonzero piece.
    pub bases: Vec<Vec<BTreeSet<usize>>>,
    /// `d^p : C^p -> C^{p+1}` acting on column vectors.
    pub differentials: Vec<Matrix<BigInt>>,
}

impl CechPiece {
    pub fn dim(&self, i: usize) -> usize {
        let Some(basis) = self.bases.get(i) else { return 0 };
        let rank = |m: Option<&Matrix<BigInt>>| m.map_or(0, |m| smith_normal_form(m).rank());
        let out = if i < self.differentials.len() {
            rank(self.differentials.get(i))
        } else {
            0
        };
        let inc = if i > 0 { rank(self.differentials.get(i - 1)) } else { 0 };
        basis.len() - out - inc
    }
}

pub fn cech_piece(alg: &MonomialAlgebra, ideal: &VariableIdeal, a: &[i64]) -> Result<CechPiece> {
    if a.len() != alg.vars.len() {
        return Err(Error::DimensionMismatch {
            expected: alg.vars.len(),
            got: a.len(),
        });
    }
    let g = ideal.len();
    let bases: Vec<Vec<BTreeSet<usize>>> = (0..=g)
        .map(|p| {
            subsets_of_size(&ideal.gens, p)
                .into_iter()
                .filter(|w| piece_nonzero(alg, w, a))
                .collect()
        })
        .collect();
    let mut differentials = Vec::new();
    for p in 0..g {
        let (src, dst) = (&bases[p], &bases[p + 1]);
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (r, target) in dst.iter().enumerate() {
            for (c, source) in src.iter().enumerate() {
                if source.is_subset(target) {
                    let j = *target.difference(source).next().expect("sizes differ by one");
                    let pos = target.iter().position(|&t| t == j).expect("j in target");
                    m[(r, c)] = BigInt::from(if pos % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        differentials.push(m);
    }
    Ok(CechPiece {
        bases,
        differentials,
    })
}

/// `dim_k H^i_I(A)_a`.
pub fn cech_dim(alg: &MonomialAlgebra, ideal: &VariableIdeal, i: usize, a: &[i64]) -> Result<usize> {
    if i > ideal.len() {
        if a.len() != alg.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: alg.vars.len(),
                got: a.len(),
            });
        }
        return Ok(0);
    }
    Ok(cech_piece(alg, ideal, a)?.dim(i))
}

/// Why `H^i_I(A)` is known to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// `i` exceeds the number of generators, so the complex is too short.
    ComplexLength { generators: usize },
    /// `i` exceeds the Krull dimension.
    Dimension { krull_dim: usize },
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vanishing::ComplexLength { generators } => {
                write!(f, "the ideal has {generators} generators, so the Čech complex stops earlier")
            }
            Vanishing::Dimension { krull_dim } => {
                write!(f, "local cohomology vanishes above the Krull dimension {krull_dim}")
            }
        }
    }
}

pub fn vanishing_reason(alg: &MonomialAlgebra, ideal: &VariableIdeal, i: usize) -> Option<Vanishing> {
    if i > ideal.len() {
        return Some(Vanishing::ComplexLength {
            generators: ideal.len(),
        });
    }
    let d = alg.krull_dim();
    (i > d).then_some(Vanishing::Dimension { krull_dim: d })
}

/// Multidegrees with `|a_j| <= bound`, by increasing `sum |a_j|`, then
/// lexicographically.
pub fn box_degrees(n: usize, bound: i64) -> Vec<Multidegree> {
    let mut out: Vec<Multidegree> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonVanishing {
    Witness(Multidegree),
    /// Nothing in the box. This proves nothing unless `vanishing` is set.
    NotFoundWithinBox { vanishing: Option<Vanishing> },
}

/// Scans the box `|a_j| <= bound` for a degree where `H^i_I(A)` is nonzero.
pub fn certify_nonvanishing(
    alg: &MonomialAlgebra,
    ideal: &VariableIdeal,
    i: usize,
    bound: i64,
) -> Result<NonVanishing> {
    if bound < 1 {
        return Err(Error::Precondition("box bound must be at least 1".into()));
    }
    if let Some(v) = vanishing_reason(alg, ideal, i) {
        return Ok(NonVanishing::NotFoundWithinBox { vanishing: Some(v) });
    }
    for a in box_degrees(alg.vars.len(), bound) {
        if cech_dim(alg, ideal, i, &a)? > 0 {
            return Ok(NonVanishing::Witness(a));
        }
    }
    Ok(NonVanishing::NotFoundWithinBox { vanishing: None })
}

/// All nonzero pieces `(a, dim H^i_I(A)_a)` in the box, in scan order.
pub fn dims_in_box(
    alg: &MonomialAlgebra,
    ideal: &VariableIdeal,
    i: usize,
    bound: i64,
) -> Result<Vec<(Multidegree, usize)>> {
    if bound < 0 {
        return Err(Error::Precondition("box bound must be non-negative".into()));
    }
    let mut out = Vec::new();
    if i > ideal.len() {
        return Ok(out);
    }
    for a in box_degrees(alg.vars.len(), bound) {
        let d = cech_dim(alg, ideal, i, &a)?;
        if d > 0 {
            out.push((a, d));
        }
    }
    Ok(out)
}

/// `H^i_I(A) != 0` deduced from `H^i_I(A/(x)) != 0` at the top degree
/// `i = #generators`, where `H^i_I` is right exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub quotient: MonomialAlgebra,
    pub ideal: VariableIdeal,
    pub degree: usize,
    pub witness: Multidegree,
    pub steps: Vec<String>,
}

/// `Ok(None)` when the box holds no witness on the quotient.
pub fn nonvanish_via_quotient(
    alg: &MonomialAlgebra,
    kill: &str,
    ideal: &VariableIdeal,
    i: usize,
    bound: i64,
) -> Result<Option<QuotientCertificate>> {
    if i != ideal.len() {
        return Err(Error::Precondition(format!(
            "right exactness needs the top degree {}, got {i}",
            ideal.len()
        )));
    }
    let k = alg.var_index(kill)?;
    if ideal.gens.contains(&k) {
        return Err(Error::Input(format!("{kill} generates the ideal; kill another variable")));
    }
    let quotient = alg.kill(kill)?;
    let q_ideal = ideal.transport(alg, &quotient)?;
    let NonVanishing::Witness(witness) = certify_nonvanishing(&quotient, &q_ideal, i, bound)? else {
        return Ok(None);
    };
    let name = q_ideal.display(&quotient);
    let steps = vec![
        format!("{alg} modulo {kill} is {quotient}"),
        format!("H^{i}_{name}({quotient}) is nonzero in degree {witness:?}"),
        format!(
            "H^{i}_{name} is right exact as {i} is the top degree, so H^{i}_{name}(A) maps onto it"
        ),
    ];
    Ok(Some(QuotientCertificate {
        quotient,
        ideal: q_ideal,
        degree: i,
        witness,
        steps,
    }))
}
