//! Random generators and independent oracles shared by the integration
//! tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flatepi::elliptic::{ECPoint, Line, Torsion};
use flatepi::lcohom::{MonomialAlgebra, VariableIdeal};
use flatepi::quadorder::{PrimeDecomposition, QuadIdeal, QuadOrder};
use flatepi::spectool::SpecPoset;
use flatepi::verdict::Tri;
use flatepi::{Curve, IntMatrix, Point, Verdict};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

// ---------------------------------------------------------------- matrices

pub fn random_matrix(r: &mut Rng8, max_dim: usize, max_entry: i64) -> IntMatrix {
    let rows = r.gen_range(1..=max_dim);
    let cols = r.gen_range(1..=max_dim);
    let sparse = r.gen_bool(0.3);
    let data = (0..rows * cols)
        .map(|_| {
            if sparse && r.gen_bool(0.6) {
                big(0)
            } else {
                big(r.gen_range(-max_entry..=max_entry))
            }
        })
        .collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => big(1),
        1 => m[0][0].clone(),
        n => {
            let mut acc = big(0);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors as quotients of determinantal divisors: `d_k` is the gcd
/// of all `k x k` minors and `s_k = d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = big(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = big(0);
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(big(0), rows.min(cols) - out.len()));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Order of the cokernel by brute force: count the cosets of the row lattice
/// inside a box, only for square nonsingular matrices of small determinant.
pub fn cokernel_order_by_cosets(m: &IntMatrix) -> Option<u64> {
    let n = m.rows();
    if n != m.cols() || n > 3 {
        return None;
    }
    let full: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let d = det(&full).abs();
    if d.is_zero() || d > big(60) {
        return None;
    }
    let dd: i64 = (&d).try_into().unwrap();
    // Z^n / (column span) ; d Z^n lies in the column span, so reps live in [0, d)^n.
    // v ~ w iff v - w = M x for integral x, i.e. adj(M)(v - w) = 0 mod d.
    let adj: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<BigInt>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| full[r][c].clone()).collect())
                        .collect();
                    let s = det(&minor);
                    if (i + j) % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                })
                .collect()
        })
        .collect();
    let mut classes = BTreeSet::new();
    let total = (dd as usize).pow(n as u32);
    for idx in 0..total {
        let mut v = Vec::with_capacity(n);
        let mut t = idx;
        for _ in 0..n {
            v.push(big((t % dd as usize) as i64));
            t /= dd as usize;
        }
        let key: Vec<BigInt> = adj
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, x)| a * x).sum::<BigInt>().mod_floor(&d))
            .collect();
        classes.insert(key);
    }
    Some(classes.len() as u64)
}

// ------------------------------------------------------- quadratic orders

pub const SMALL_D: [i64; 12] = [-1, -2, -3, -5, -6, -7, -10, -14, -15, -21, -23, -47];
pub const SMALL_PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

pub fn random_order(r: &mut Rng8) -> QuadOrder<BigInt> {
    let d = if r.gen_bool(0.7) {
        *SMALL_D.choose(r).unwrap()
    } else {
        loop {
            let d = -r.gen_range(1i64..400);
            if flatepi::scalar::is_squarefree(&big(d)) {
                break d;
            }
        }
    };
    QuadOrder::new(big(d)).unwrap()
}

/// A random nonzero prime ideal, and the splitting type of the prime below it.
pub fn random_prime(r: &mut Rng8, o: &QuadOrder<BigInt>) -> (QuadIdeal<BigInt>, PrimeDecomposition<BigInt>) {
    let l = *SMALL_PRIMES.choose(r).unwrap();
    let dec = o.decompose_prime(&big(l)).unwrap();
    let p = match &dec {
        PrimeDecomposition::Split(p, pb) => {
            if r.gen_bool(0.5) {
                p.clone()
            } else {
                pb.clone()
            }
        }
        PrimeDecomposition::Ramified(p) | PrimeDecomposition::Inert(p) => p.clone(),
    };
    (p, dec)
}

pub fn random_ideal(r: &mut Rng8, o: &QuadOrder<BigInt>) -> QuadIdeal<BigInt> {
    let mut acc = o.unit_ideal();
    for _ in 0..r.gen_range(0..4) {
        acc = acc.mul(&random_prime(r, o).0).unwrap();
    }
    acc
}

/// Coordinates of `(-b + sqrt D)/2` and `a` in the basis `(1, w)`,
/// `w = (D + sqrt D)/2`, scaled by the ideal's rational scale.
fn lattice_basis(i: &QuadIdeal<BigInt>) -> [[BigRational; 2]; 2] {
    let disc = i.order().discriminant().clone();
    let s = i.scale().clone();
    let a = BigRational::from_integer(i.a().clone());
    let shift = BigRational::new(-(i.b() + &disc), big(2));
    [
        [&a * &s, BigRational::zero()],
        [&shift * &s, s.clone()],
    ]
}

/// `(x0 + x1 w)(y0 + y1 w)` with `w^2 = D w - (D^2 - D)/4`.
fn lattice_mul(disc: &BigInt, x: &[BigRational; 2], y: &[BigRational; 2]) -> [BigRational; 2] {
    let d = BigRational::from_integer(disc.clone());
    let c = BigRational::new(disc * disc - disc, big(4));
    let ww = &x[1] * &y[1];
    [
        &x[0] * &y[0] - &ww * &c,
        &x[0] * &y[1] + &x[1] * &y[0] + &ww * &d,
    ]
}

fn in_lattice(basis: &[[BigRational; 2]; 2], v: &[BigRational; 2]) -> bool {
    // solve v = s * basis[0] + t * basis[1] (basis[0] has zero second coordinate)
    let t = &v[1] / &basis[1][1];
    let s = (&v[0] - &t * &basis[1][0]) / &basis[0][0];
    t.is_integer() && s.is_integer()
}

/// Product of ideals computed as the lattice spanned by the four pairwise
/// products of basis vectors, compared with `got` by mutual containment.
pub fn product_matches_lattice(x: &QuadIdeal<BigInt>, y: &QuadIdeal<BigInt>, got: &QuadIdeal<BigInt>) -> bool {
    let disc = x.order().discriminant().clone();
    let (bx, by, bg) = (lattice_basis(x), lattice_basis(y), lattice_basis(got));
    let mut gens = Vec::new();
    for u in &bx {
        for v in &by {
            gens.push(lattice_mul(&disc, u, v));
        }
    }
    if !gens.iter().all(|g| in_lattice(&bg, g)) {
        return false;
    }
    // equal covolumes: the gcd of the 2x2 minors of the generators against
    // the determinant of the claimed basis
    let minor = |u: &[BigRational; 2], v: &[BigRational; 2]| &u[0] * &v[1] - &u[1] * &v[0];
    let mut den = big(1);
    for g in &gens {
        for c in g {
            den = den.lcm(c.denom());
        }
    }
    let mut covol = big(0);
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let m = minor(&gens[i], &gens[j]) * BigRational::from_integer(&den * &den);
            covol = covol.gcd(&m.to_integer());
        }
    }
    BigRational::new(covol, &den * &den) == minor(&bg[0], &bg[1]).abs()
}

// --------------------------------------------------------- elliptic curves

/// Points of known finite order on small curves: (a, b, x, y, order).
pub const TORSION_TABLE: [(i64, i64, i64, i64, u64); 14] = [
    (0, 1, -1, 0, 2),
    (0, 1, 0, 1, 3),
    (0, 1, 0, -1, 3),
    (0, 1, 2, 3, 6),
    (0, 1, 2, -3, 6),
    (-1, 0, 0, 0, 2),
    (-1, 0, 1, 0, 2),
    (0, 4, 0, 2, 3),
    (0, -432, 12, 36, 3),
    (-43, 166, 3, 8, 7),
    (-43, 166, -5, 16, 7),
    (-219, 1654, -13, 48, 9),
    (-432, 8208, -12, 108, 5),
    (-491, 154, -9, 62, 4),
];

/// A curve through a random integral point, with the point.
pub fn random_curve_point(r: &mut Rng8) -> (Curve, Point) {
    loop {
        let x = r.gen_range(-6i64..=6);
        let y = r.gen_range(-8i64..=8);
        let a = r.gen_range(-8i64..=8);
        let b = y * y - x * x * x - a * x;
        if let Ok(c) = Curve::from_ints(a, b) {
            let p = ECPoint::affine(q(x, 1), q(y, 1));
            return (c, p);
        }
    }
}

/// A torsion point from the table, rescaled by `(x, y) -> (u^2 x, u^3 y)`.
pub fn random_torsion(r: &mut Rng8) -> (Curve, Point, u64) {
    let (a, b, x, y, n) = *TORSION_TABLE.choose(r).unwrap();
    let u = r.gen_range(1i64..=3);
    let c = Curve::from_ints(a * u.pow(4), b * u.pow(6)).unwrap();
    let p = ECPoint::affine(q(x * u * u, 1), q(y * u.pow(3), 1));
    (c, p, n)
}

/// Smallest `n <= limit` with `nP = O`, by repeated addition.
pub fn naive_order_upto(c: &Curve, p: &Point, limit: u64) -> Option<u64> {
    let mut acc = p.clone();
    for n in 1..=limit {
        if acc.is_infinity() {
            return Some(n);
        }
        acc = c.add(&acc, p).unwrap();
    }
    None
}

pub fn naive_order(c: &Curve, p: &Point) -> Option<u64> {
    naive_order_upto(c, p, 16)
}

fn on_line(l: &Line<BigInt>, p: &Point) -> bool {
    let (x, y, z) = match p {
        ECPoint::Infinity => (BigRational::zero(), BigRational::one(), BigRational::zero()),
        ECPoint::Affine(x, y) => (x.clone(), y.clone(), BigRational::one()),
    };
    let f = l.form();
    let vals = [x, y, z];
    let mut acc = BigRational::zero();
    for (exp, c) in f.terms() {
        let mut t = c.clone();
        for (v, e) in vals.iter().zip(exp) {
            for _ in 0..*e {
                t *= v;
            }
        }
        acc += t;
    }
    acc.is_zero()
}

/// Independent checker for a Miller line program: every claimed intersection
/// lies on both the curve and the line, the three intersections of a chord
/// are the roots of the restricted cubic with multiplicity, the point
/// labels match the line divisor, and the exponents add up to
/// `n (P) - n (O)`.
pub fn check_miller(c: &Curve, p: &Point, n: u64) -> bool {
    let Ok(prog) = c.miller_function(p, n) else {
        return false;
    };
    let mut total: std::collections::BTreeMap<Point, BigInt> = Default::default();
    for (line, e) in &prog.lines {
        let pts: Vec<Point> = match line {
            Line::Chord { points, .. } => points.to_vec(),
            Line::Vertical { points, .. } => {
                let mut v = points.to_vec();
                v.push(ECPoint::Infinity);
                v
            }
        };
        if !pts.iter().all(|q| c.contains(q) && on_line(line, q)) {
            return false;
        }
        if let Line::Chord { slope, intercept, points } = line {
            // x^3 + a x + b - (m x + k)^2 evaluated at each root must vanish
            // to the claimed multiplicity.
            let g = |x: &BigRational| -> BigRational {
                x * x * x + c.a() * x + c.b() - (slope * x + intercept) * (slope * x + intercept)
            };
            let dg = |x: &BigRational| -> BigRational {
                BigRational::from_integer(big(3)) * x * x + c.a() - BigRational::from_integer(big(2)) * slope * (slope * x + intercept)
            };
            let d2g = |x: &BigRational| -> BigRational {
                BigRational::from_integer(big(6)) * x - BigRational::from_integer(big(2)) * slope * slope
            };
            for q in points.iter() {
                let ECPoint::Affine(x, _) = q else { return false };
                let mult = points.iter().filter(|o| *o == q).count();
                let ok = match mult {
                    1 => g(x).is_zero(),
                    2 => g(x).is_zero() && dg(x).is_zero(),
                    _ => g(x).is_zero() && dg(x).is_zero() && d2g(x).is_zero(),
                };
                if !ok {
                    return false;
                }
            }
        }
        for q in pts {
            *total.entry(q).or_default() += big(*e);
        }
        *total.entry(ECPoint::Infinity).or_default() -= big(3 * e);
    }
    total.retain(|_, v| !v.is_zero());
    let mut want = std::collections::BTreeMap::new();
    if !p.is_infinity() {
        want.insert(p.clone(), big(n as i64));
        want.insert(ECPoint::Infinity, big(-(n as i64)));
    }
    total == want
}

/// The reported order is the first vanishing multiple. A non-integral
/// multiple on an integral model already rules out finite order, so only the
/// multiples before it are walked.
pub fn torsion_is_minimal(c: &Curve, p: &Point) -> bool {
    match c.torsion_order(p) {
        Ok(Torsion::Finite(n)) => naive_order(c, p) == Some(n),
        Ok(Torsion::NonIntegralMultiple(k)) => {
            let kp = c.mul(k as i64, p).unwrap();
            !kp.is_infinity() && !kp.is_integral() && naive_order_upto(c, p, k).is_none()
        }
        Ok(Torsion::BeyondMazur) => naive_order_upto(c, p, 12).is_none(),
        Err(_) => false,
    }
}

// ------------------------------------------------------ local cohomology

pub fn random_algebra(r: &mut Rng8) -> MonomialAlgebra {
    let n = r.gen_range(2..=5);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rels: Vec<Vec<&str>> = Vec::new();
    for _ in 0..r.gen_range(0..=3) {
        let k = r.gen_range(2..=n.min(3));
        let mut pick = refs.clone();
        pick.shuffle(r);
        pick.truncate(k);
        rels.push(pick);
    }
    let rel_refs: Vec<&[&str]> = rels.iter().map(Vec::as_slice).collect();
    MonomialAlgebra::new(&refs, &rel_refs).unwrap()
}

pub fn random_variable_ideal(r: &mut Rng8, alg: &MonomialAlgebra) -> VariableIdeal {
    let mut names: Vec<&str> = alg.vars().iter().map(String::as_str).collect();
    names.shuffle(r);
    let k = r.gen_range(1..=names.len());
    VariableIdeal::new(alg, &names[..k]).unwrap()
}

pub fn random_degree(r: &mut Rng8, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(-bound..=bound)).collect()
}

/// Whether the localisation at the product of `w` has a nonzero piece in
/// degree `a`: multiply by a high power of `prod w` to clear denominators and
/// test the resulting honest monomial against the relations.
fn localised_piece(alg: &MonomialAlgebra, w: &BTreeSet<usize>, a: &[i64]) -> bool {
    let shift = a.iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
    let exps: Vec<i64> = a
        .iter()
        .enumerate()
        .map(|(j, &x)| if w.contains(&j) { x + shift } else { x })
        .collect();
    if exps.iter().any(|&e| e < 0) {
        return false;
    }
    let support: BTreeSet<usize> = exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j).collect();
    !alg.relations().iter().any(|rel| rel.is_subset(&support))
}

fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H^i` of the Čech complex in degree `a`, built from scratch over `Q`.
pub fn cech_dim_oracle(alg: &MonomialAlgebra, ideal: &VariableIdeal, i: usize, a: &[i64]) -> usize {
    let gens = ideal.generators().to_vec();
    let g = gens.len();
    if i > g {
        return 0;
    }
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        combinations(g, k)
            .into_iter()
            .map(|c| c.into_iter().map(|j| gens[j]).collect::<Vec<_>>())
            .map(|mut v| {
                v.sort();
                v
            })
            .filter(|v| localised_piece(alg, &v.iter().copied().collect(), a))
            .collect()
    };
    let diff = |k: usize| -> Vec<Vec<BigRational>> {
        let (src, dst) = (subsets(k), subsets(k + 1));
        dst.iter()
            .map(|t| {
                src.iter()
                    .map(|s| {
                        if s.iter().all(|x| t.contains(x)) {
                            let j = t.iter().find(|x| !s.contains(x)).unwrap();
                            let pos = t.iter().position(|x| x == j).unwrap();
                            q(if pos % 2 == 0 { 1 } else { -1 }, 1)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let dim = subsets(i).len();
    let out = if i < g { rational_rank(diff(i)) } else { 0 };
    let inc = if i > 0 { rational_rank(diff(i - 1)) } else { 0 };
    dim - out - inc
}

// --------------------------------------------------------------- posets

pub fn random_poset(r: &mut Rng8, max_nodes: usize) -> SpecPoset {
    let n = r.gen_range(1..=max_nodes);
    let labels: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let mut rel = Vec::new();
    // child < parent only for child index > parent index: acyclic by construction
    for c in 1..n {
        for p in 0..c {
            if r.gen_bool(0.25) {
                rel.push((c, p));
            }
        }
    }
    SpecPoset::new(labels, &rel).unwrap()
}

/// Closed sets by checking all `2^n` subsets for upward closure, where
/// "above" is recomputed from the parent relation by graph search.
pub fn brute_force_closed_count(p: &SpecPoset) -> usize {
    let n = p.len();
    let up: Vec<BTreeSet<usize>> = (0..n).map(|i| p.above(i)).collect();
    (0u32..(1 << n))
        .filter(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .all(|i| up[i].iter().all(|j| mask & (1 << j) != 0))
        })
        .count()
}

// -------------------------------------------------------------- verdicts

/// `classical => universal => flat`, read as: a yes below forces yes above,
/// a no above forces no below.
pub fn monotone(v: &Verdict) -> bool {
    let [f, u, c] = v.answers();
    let implies = |lo: Tri, hi: Tri| !(lo == Tri::Yes && hi != Tri::Yes) && !(hi == Tri::No && lo != Tri::No);
    implies(c, u) && implies(u, f) && v.validate().is_ok()
}

/// A random `(ring, prime)` pair drawn from every catalog family.
pub fn random_classify_input(r: &mut Rng8) -> (String, String) {
    match r.gen_range(0..6) {
        0 => {
            let o = random_order(r);
            let k = r.gen_range(0..=3);
            let mut ps = Vec::new();
            for _ in 0..k {
                let l = SMALL_PRIMES.choose(r).unwrap();
                let bar = if r.gen_bool(0.3) { "bar" } else { "" };
                ps.push(format!("p{l}{bar}"));
            }
            (format!("quad:{}", o.d()), ps.join(","))
        }
        1 => {
            if r.gen_bool(0.5) {
                let (c, p, _) = random_torsion(r);
                (c.ring_id(), point_spec(&p))
            } else {
                let (c, p) = random_curve_point(r);
                (c.ring_id(), point_spec(&p))
            }
        }
        2 => {
            let pairs = [("X", "V"), ("Y", "U"), ("X", "Y"), ("U", "V")];
            if r.gen_bool(0.5) {
                let (g, h) = pairs.choose(r).unwrap();
                ("segre".into(), format!("({g},{h})"))
            } else {
                let (d, e) = (r.gen_range(0..=2), r.gen_range(0..=2));
                let (d, e) = if d + e == 0 { (1, 1) } else { (d, e) };
                let mono = |s: &str, t: &str| {
                    let mut parts = Vec::new();
                    if d > 0 {
                        parts.push(format!("{s}^{d}"));
                    }
                    if e > 0 {
                        parts.push(format!("{t}^{e}"));
                    }
                    parts.join("*")
                };
                let c = r.gen_range(1..=5);
                ("segre".into(), format!("fp:{}+{c}*{}", mono("S0", "T0"), mono("S1", "T1")))
            }
        }
        3 => {
            let gens = ["X", "Y", "U"];
            let mut g: Vec<&str> = gens.to_vec();
            g.shuffle(r);
            g.truncate(r.gen_range(1..=3));
            ("twoplanes".into(), format!("({})", g.join(",")))
        }
        4 => {
            let p = ["(X,V)", "(X,Y)", "(Y,U)", "(U,V)", "m"].choose(r).unwrap();
            ("dim3hyper".into(), p.to_string())
        }
        _ => ("segre".into(), "m".into()),
    }
}

pub fn point_spec(p: &Point) -> String {
    match p {
        ECPoint::Infinity => "O".into(),
        ECPoint::Affine(x, y) => format!("{x},{y}"),
    }
}
