//! Exact models of finite crystallographic root systems, weight lattices,
//! and multiplicity functions.
//!
//! Weights are stored in fundamental-weight coordinates of the (possibly
//! rescaled) system with a global denominator in `{1, 2}`, so the whole
//! half-weight lattice `(1/2)P` is representable with integer numerators.
//! The inner product is normalized so that long roots have squared length 2
//! at scale 1; a scale factor `c` multiplies every root by `c` (coordinates
//! are unchanged, the bilinear form picks up `c^2`).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{qq, Q};

/// Shared handle to an immutable root system.
pub type Rs = Arc<RootSystem>;

/// Supported families. Only `A_n (n <= 4)`, `B_2` and `G_2` have tables;
/// the other listed families exist for parsing and report `UnsupportedType`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        write!(f, "{s}")
    }
}

/// An element of the half-weight lattice `(1/2)P` in fundamental-weight
/// coordinates: `num[i]/den` is the coefficient of the i-th fundamental
/// weight. Canonical form: `den = 2` only if some numerator is odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    num: Vec<i64>,
    den: i64,
}

impl Weight {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den == 1 || den == 2, "weight denominator must be 1 or 2");
        let mut w = Weight { num, den };
        w.canonicalize();
        w
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            num: vec![0; rank],
            den: 1,
        }
    }

    /// The i-th fundamental weight (0-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut num = vec![0; rank];
        num[i] = 1;
        Weight { num, den: 1 }
    }

    fn canonicalize(&mut self) {
        if self.den == 2 && self.num.iter().all(|x| x % 2 == 0) {
            for x in &mut self.num {
                *x /= 2;
            }
            self.den = 1;
        }
    }

    pub fn rank(&self) -> usize {
        self.num.len()
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn num(&self) -> &[i64] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| *x == 0)
    }

    /// True if the weight lies in the full lattice `P` (denominator 1).
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Coordinate `i` as an exact rational.
    pub fn coord(&self, i: usize) -> Q {
        qq(self.num[i], self.den)
    }

    pub fn coords(&self) -> Vec<Q> {
        (0..self.rank()).map(|i| self.coord(i)).collect()
    }

    /// Halve the weight (always representable in `(1/2)P` when `self` is in `P`).
    pub fn half(&self) -> Self {
        assert!(self.den == 1, "cannot halve a weight outside P");
        Weight::new(self.num.clone(), 2)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Weight, sign: i64) -> Weight {
        assert_eq!(self.rank(), other.rank());
        let den = self.den.max(other.den);
        let a = den / self.den;
        let b = den / other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| x * a + sign * y * b)
            .collect();
        Weight::new(num, den)
    }

    pub fn neg(&self) -> Weight {
        Weight {
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den,
        }
    }

    pub fn scaled(&self, m: i64) -> Weight {
        Weight::new(self.num.iter().map(|x| x * m).collect(), self.den)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .num
            .iter()
            .map(|x| {
                if self.den == 1 {
                    x.to_string()
                } else {
                    format!("{x}/2")
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: coordinatewise rational values, lexicographically. This is
/// the deterministic exponent order used by all sorted renderings.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.rank(), other.rank());
        for i in 0..self.rank() {
            // num[i]/den vs other.num[i]/other.den, cross-multiplied.
            let lhs = (self.num[i] as i128) * (other.den as i128);
            let rhs = (other.num[i] as i128) * (self.den as i128);
            match lhs.cmp(&rhs) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// A rational coordinate vector on the same fundamental-weight basis;
/// carries objects like `rho(k)` and spectral vectors that live in
/// `P (x) QQ` rather than in the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatVec {
    pub coords: Vec<Q>,
}

impl RatVec {
    pub fn zero(rank: usize) -> Self {
        RatVec {
            coords: vec![Q::zero(); rank],
        }
    }

    pub fn from_weight(w: &Weight) -> Self {
        RatVec { coords: w.coords() }
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        RatVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        RatVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> RatVec {
        RatVec {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::q_str).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One positive root with all derived exact data.
#[derive(Debug, Clone)]
pub struct Root {
    /// Fundamental-weight coordinates (always integral).
    pub coords: Vec<i64>,
    /// Coordinates in the simple-root basis.
    pub root_coords: Vec<i64>,
    /// Pairing functional: `<lambda, alpha^vee> = sum_i lambda_i * coroot[i]`.
    pub coroot: Vec<i64>,
    /// Index of the W-orbit this root belongs to.
    pub orbit: usize,
    /// Height = sum of simple-root coefficients.
    pub height: i64,
}

impl Root {
    pub fn weight(&self) -> Weight {
        Weight::new(self.coords.clone(), 1)
    }
}

/// A finite crystallographic root system with rescaled roots `c * alpha`.
#[derive(Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub scale: Q,
    /// Cartan matrix, row-major: `a[i][j] = <alpha_j, alpha_i^vee>`.
    cartan: Vec<i64>,
    /// Scale-1 symmetrizers `d_i = (alpha_i, alpha_i)/2`.
    d: Vec<Q>,
    /// Positive roots in height-then-lexicographic order.
    positive: Vec<Root>,
    /// Inverse Cartan matrix (row-major, rational).
    ainv: Vec<Q>,
    /// All root coordinates -> (index into `positive`, is-positive flag).
    root_lookup: HashMap<Vec<i64>, (usize, bool)>,
    orbit_count: usize,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank && self.scale == other.scale
    }
}
impl Eq for RootSystem {}

/// Table of Cartan matrices and symmetrizers for the supported systems.
fn tables(family: Family, rank: usize) -> Result<(Vec<i64>, Vec<Q>)> {
    match (family, rank) {
        (Family::A, n) if (1..=4).contains(&n) => {
            let mut a = vec![0i64; n * n];
            for i in 0..n {
                a[i * n + i] = 2;
                if i + 1 < n {
                    a[i * n + i + 1] = -1;
                    a[(i + 1) * n + i] = -1;
                }
            }
            Ok((a, vec![Q::one(); n]))
        }
        (Family::B, 2) => Ok((vec![2, -1, -2, 2], vec![Q::one(), qq(1, 2)])),
        (Family::G, 2) => Ok((vec![2, -1, -3, 2], vec![Q::one(), qq(1, 3)])),
        _ => Err(Error::UnsupportedType(format!("{family}{rank}"))),
    }
}

pub fn build_root_system(family: Family, rank: usize, scale: Q) -> Result<RootSystem> {
    if !scale.is_positive() {
        return Err(Error::UnsupportedType(format!(
            "scale {} must be positive",
            crate::q_str(&scale)
        )));
    }
    let n = rank;
    let (cartan, d) = tables(family, rank)?;

    // Closure of the simple roots under simple reflections, in the
    // simple-root basis: s_j(m) = m - (sum_i m_i a[j][i]) e_j.
    let mut all: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, ()> = all.iter().cloned().map(|m| (m, ())).collect();
    let mut queue: Vec<Vec<i64>> = all.clone();
    while let Some(m) = queue.pop() {
        for j in 0..n {
            let pairing: i64 = (0..n).map(|i| m[i] * cartan[j * n + i]).sum();
            let mut img = m.clone();
            img[j] -= pairing;
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                all.push(img.clone());
                queue.push(img);
            }
        }
    }

    let mut pos: Vec<Vec<i64>> = all
        .iter()
        .filter(|m| m.iter().all(|x| *x >= 0))
        .cloned()
        .collect();
    // Fundamental coordinates of a root with root-basis coords m:
    // t_i = sum_j m_j a[i][j].
    let fund = |m: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|i| (0..n).map(|j| m[j] * cartan[i * n + j]).sum())
            .collect()
    };
    // Height, then colexicographic on root-basis coordinates; this puts the
    // simple roots first in index order.
    pos.sort_by_key(|m| {
        let rev: Vec<i64> = m.iter().rev().copied().collect();
        (m.iter().sum::<i64>(), rev)
    });

    let expected = match (family, rank) {
        (Family::A, n) => n * (n + 1) / 2,
        (Family::B, 2) => 4,
        (Family::G, 2) => 6,
        _ => unreachable!(),
    };
    assert_eq!(pos.len(), expected, "positive root count mismatch");

    // Squared length at scale 1: (beta,beta) = sum_ij m_i m_j d_i a[i][j].
    let sq_len = |m: &[i64]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                s += &d[i] * qq(m[i] * m[j] * cartan[i * n + j], 1);
            }
        }
        s
    };

    // Orbits of the W-action on roots, ids assigned in positive-root order.
    let mut orbit_of: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut orbit_count = 0;
    for m0 in &pos {
        if orbit_of.contains_key(m0) {
            continue;
        }
        let id = orbit_count;
        orbit_count += 1;
        let mut stack = vec![m0.clone()];
        orbit_of.insert(m0.clone(), id);
        while let Some(m) = stack.pop() {
            for j in 0..n {
                let pairing: i64 = (0..n).map(|i| m[i] * cartan[j * n + i]).sum();
                let mut img = m.clone();
                img[j] -= pairing;
                if !orbit_of.contains_key(&img) {
                    orbit_of.insert(img.clone(), id);
                    stack.push(img);
                }
            }
        }
    }

    let mut positive = Vec::with_capacity(pos.len());
    for m in &pos {
        let len2 = sq_len(m);
        // alpha^vee = sum_j m_j (d_j / d_alpha) alpha_j^vee with d_alpha = len2/2.
        let d_alpha = &len2 / qq(2, 1);
        let coroot: Vec<i64> = (0..n)
            .map(|j| {
                let c = &d[j] / &d_alpha * qq(m[j], 1);
                assert!(c.is_integer(), "coroot coordinates must be integral");
                let v: num::BigInt = c.to_integer();
                i64::try_from(&v).expect("coroot coordinate overflow")
            })
            .collect();
        positive.push(Root {
            coords: fund(m),
            root_coords: m.clone(),
            coroot,
            orbit: orbit_of[m],
            height: m.iter().sum(),
        });
    }

    let ainv = invert_cartan(&cartan, n);

    let mut root_lookup = HashMap::new();
    for (idx, r) in positive.iter().enumerate() {
        root_lookup.insert(r.coords.clone(), (idx, true));
        root_lookup.insert(r.coords.iter().map(|x| -x).collect(), (idx, false));
    }

    let rs = RootSystem {
        family,
        rank,
        scale,
        cartan,
        d,
        positive,
        ainv,
        root_lookup,
        orbit_count,
    };
    rs.check_invariants();
    Ok(rs)
}

fn invert_cartan(a: &[i64], n: usize) -> Vec<Q> {
    // Gauss-Jordan over QQ on [A | I].
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        qq(a[i * n + j], 1)
                    } else if j - n == i {
                        Q::one()
                    } else {
                        Q::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|r| !m[*r][col].is_zero())
            .expect("Cartan matrix is invertible");
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..2 * n {
            m[col][j] = &m[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..2 * n {
                    m[r][j] = &m[r][j] - &f * &m[col][j];
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for row in m {
        out.extend_from_slice(&row[n..]);
    }
    out
}

impl RootSystem {
    fn check_invariants(&self) {
        let n = self.rank;
        // a_ij = <alpha_j, alpha_i^vee> reproduces the stored pairings.
        for i in 0..n {
            for j in 0..n {
                let aj = self.positive[self.simple_root_index(j)].weight();
                let p = self.pairing_idx(&aj, self.simple_root_index(i));
                assert_eq!(p, qq(self.cartan[i * n + j], 1), "Cartan pairing mismatch");
            }
        }
        // <fw_i, alpha_j^vee> = delta_ij.
        for i in 0..n {
            for j in 0..n {
                let p = self.pairing_idx(&Weight::fundamental(n, i), self.simple_root_index(j));
                let expect = if i == j { Q::one() } else { Q::zero() };
                assert_eq!(p, expect, "fundamental weight pairing mismatch");
            }
        }
    }

    pub fn key(&self) -> (Family, usize, Q) {
        (self.family, self.rank, self.scale.clone())
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.rank + j]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_count
    }

    /// Index into `positive_roots` of the i-th simple root.
    pub fn simple_root_index(&self, i: usize) -> usize {
        let coords: Vec<i64> = (0..self.rank).map(|r| self.cartan(r, i)).collect();
        self.root_lookup[&coords].0
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::new((0..self.rank).map(|r| self.cartan(r, i)).collect(), 1)
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank, i)
    }

    /// Look up a weight among the roots: `Some((positive index, sign))`.
    pub fn as_root(&self, w: &Weight) -> Option<(usize, bool)> {
        if w.den != 1 {
            return None;
        }
        self.root_lookup.get(&w.num).copied()
    }

    /// `<lambda, alpha^vee>` for the positive root with the given index.
    pub fn pairing_idx(&self, lambda: &Weight, root_idx: usize) -> Q {
        let r = &self.positive[root_idx];
        let s: i64 = lambda
            .num
            .iter()
            .zip(&r.coroot)
            .map(|(a, b)| a * b)
            .sum();
        qq(s, lambda.den)
    }

    /// `<lambda, alpha^vee>` where `alpha` is any root of this system.
    pub fn pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<Q> {
        if lambda.rank() != self.rank || alpha.rank() != self.rank {
            return Err(Error::MismatchedRootSystem);
        }
        let (idx, positive) = self
            .as_root(alpha)
            .ok_or(Error::MismatchedRootSystem)?;
        let p = self.pairing_idx(lambda, idx);
        Ok(if positive { p } else { -p })
    }

    /// Pairing with the i-th simple coroot (cheap common case).
    pub fn pairing_simple(&self, lambda: &Weight, i: usize) -> Q {
        qq(lambda.num[i], lambda.den)
    }

    /// The W-invariant bilinear form `(lambda, mu)`, including the scale factor.
    pub fn bilinear(&self, lambda: &[Q], mu: &[Q]) -> Q {
        let n = self.rank;
        // (lambda, mu) = sum_j (A^{-1} mu)_j d_j lambda_j * scale^2.
        let mut s = Q::zero();
        for j in 0..n {
            let mut mj = Q::zero();
            for i in 0..n {
                mj += &self.ainv[j * n + i] * &mu[i];
            }
            s += mj * &self.d[j] * &lambda[j];
        }
        s * &self.scale * &self.scale
    }

    pub fn bilinear_weights(&self, lambda: &Weight, mu: &Weight) -> Q {
        self.bilinear(&lambda.coords(), &mu.coords())
    }

    /// Coordinates of a weight in the simple-root basis (rational).
    pub fn root_basis_coords(&self, w: &Weight) -> Vec<Q> {
        let n = self.rank;
        (0..n)
            .map(|j| {
                let mut s = Q::zero();
                for i in 0..n {
                    s += &self.ainv[j * n + i] * w.coord(i);
                }
                s
            })
            .collect()
    }

    /// `lambda` is I-dominant: `<lambda, alpha^vee> >= 0` for every simple
    /// `alpha_i` with `i` in `I` (equivalently for all of `R_I^+`).
    pub fn is_dominant(&self, lambda: &Weight, i_set: &[usize]) -> bool {
        i_set.iter().all(|&i| lambda.num[i] >= 0)
    }

    /// Full set `S` of simple-reflection indices.
    pub fn full_set(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    /// `rho(k) = (1/2) sum_{alpha > 0} k_alpha alpha` in fundamental coordinates.
    pub fn rho(&self, k: &Multiplicity) -> RatVec {
        let mut coords = vec![Q::zero(); self.rank];
        for r in &self.positive {
            let ka = &k.values[r.orbit];
            for i in 0..self.rank {
                coords[i] += ka * qq(r.coords[i], 2);
            }
        }
        RatVec { coords }
    }

    /// Evaluate the functional with the given fundamental coordinates at the
    /// vector `xi` given in the basis dual to the scale-1 fundamental weights.
    pub fn eval_at_xi(&self, coords: &[Q], xi: &[Q]) -> Q {
        let mut s = Q::zero();
        for (c, x) in coords.iter().zip(xi) {
            s += c * x;
        }
        s * &self.scale
    }

    /// JSON reference `{"family":"A","rank":2,"scale":"2"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.to_string(),
            "rank": self.rank,
            "scale": crate::q_str(&self.scale),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<RootSystem> {
        let fam = v["family"]
            .as_str()
            .ok_or_else(|| Error::Parse("missing family".into()))?;
        let family = parse_family(fam)?;
        let rank = v["rank"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing rank".into()))? as usize;
        let scale = match &v["scale"] {
            serde_json::Value::String(s) => crate::parse_q(s)?,
            serde_json::Value::Null => Q::one(),
            other => return Err(Error::Parse(format!("bad scale {other}"))),
        };
        build_root_system(family, rank, scale)
    }
}

pub fn parse_family(s: &str) -> Result<Family> {
    match s {
        "A" | "a" => Ok(Family::A),
        "B" | "b" => Ok(Family::B),
        "C" | "c" => Ok(Family::C),
        "D" | "d" => Ok(Family::D),
        "G" | "g" => Ok(Family::G),
        other => Err(Error::UnsupportedType(other.to_string())),
    }
}

/// Parse `"A2"`, `"G2"`, ... into a scale-1 system; scale set separately.
pub fn parse_root_system(s: &str, scale: Q) -> Result<RootSystem> {
    let s = s.trim();
    if s.len() < 2 {
        return Err(Error::UnsupportedType(s.to_string()));
    }
    let family = parse_family(&s[..1])?;
    let rank: usize = s[1..]
        .parse()
        .map_err(|_| Error::UnsupportedType(s.to_string()))?;
    build_root_system(family, rank, scale)
}

/// A W-invariant multiplicity function: one exact rational `k >= 0` per
/// W-orbit of roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    values: Vec<Q>,
}

impl Multiplicity {
    pub fn per_orbit(rs: &RootSystem, values: Vec<Q>) -> Result<Self> {
        if values.len() != rs.num_orbits() {
            return Err(Error::Parse(format!(
                "expected {} multiplicity values, got {}",
                rs.num_orbits(),
                values.len()
            )));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::Parse("multiplicities must be >= 0".into()));
        }
        Ok(Multiplicity { values })
    }

    pub fn constant(rs: &RootSystem, k: Q) -> Result<Self> {
        Multiplicity::per_orbit(rs, vec![k; rs.num_orbits()])
    }

    pub fn zero(rs: &RootSystem) -> Self {
        Multiplicity {
            values: vec![Q::zero(); rs.num_orbits()],
        }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// `k_alpha` for the positive root with the given index.
    pub fn k_at(&self, rs: &RootSystem, root_idx: usize) -> &Q {
        &self.values[rs.positive_roots()[root_idx].orbit]
    }

    /// All values as nonnegative integers, if they are integers.
    pub fn as_integers(&self) -> Result<Vec<u64>> {
        self.values
            .iter()
            .map(|v| {
                if v.is_integer() && !v.is_negative() {
                    Ok(u64::try_from(&v.to_integer()).expect("multiplicity overflow"))
                } else {
                    Err(Error::NonIntegerMultiplicity)
                }
            })
            .collect()
    }
}
