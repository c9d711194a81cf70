//! Sparse exact Laurent polynomials on the half-weight lattice, with Weyl
//! action, conjugation on the compact torus, the weight function `delta_k`,
//! and the constant-term inner product `(.,.)_k`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{Multiplicity, Rs, Weight};
use crate::weylgroup::WeylElt;
use crate::{q_str, Q};

/// A sparse Laurent polynomial: exponents in `(1/2)P`, nonzero exact
/// rational coefficients. Terms are kept in the deterministic exponent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    rs: Rs,
    terms: BTreeMap<Weight, Q>,
}

impl LaurentPoly {
    pub fn zero(rs: &Rs) -> Self {
        LaurentPoly {
            rs: rs.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rs: &Rs) -> Self {
        Self::constant(rs, Q::one())
    }

    pub fn constant(rs: &Rs, c: Q) -> Self {
        let mut p = Self::zero(rs);
        if !c.is_zero() {
            p.terms.insert(Weight::zero(rs.rank), c);
        }
        p
    }

    /// The monomial `c * e^lambda`.
    pub fn monomial(rs: &Rs, lambda: &Weight, c: Q) -> Self {
        let mut p = Self::zero(rs);
        if !c.is_zero() {
            p.terms.insert(lambda.clone(), c);
        }
        p
    }

    pub fn rs(&self) -> &Rs {
        &self.rs
    }

    pub fn terms(&self) -> &BTreeMap<Weight, Q> {
        &self.terms
    }

    pub(crate) fn from_terms(rs: &Rs, terms: BTreeMap<Weight, Q>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPoly {
            rs: rs.clone(),
            terms,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Weight) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Weight::zero(self.rs.rank))
    }

    fn same_rs(&self, other: &LaurentPoly) -> Result<()> {
        if self.rs.as_ref() == other.rs.as_ref() {
            Ok(())
        } else {
            Err(Error::MismatchedRootSystem)
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_rs(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_rs(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.rs);
        }
        LaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_rs(other)?;
        let mut acc: HashMap<Weight, Q> = HashMap::with_capacity(self.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let w = w1.add(w2);
                let c = c1 * c2;
                match acc.get_mut(&w) {
                    Some(existing) => *existing += c,
                    None => {
                        acc.insert(w, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly {
            rs: self.rs.clone(),
            terms,
        })
    }

    /// Multiply by a single monomial (cheap special case).
    pub fn mul_monomial(&self, w: &Weight, c: &Q) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.rs);
        }
        LaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.add(w), x * c))
                .collect(),
        }
    }

    /// Weyl action `w e^lambda = e^{w lambda}`, extended linearly.
    pub fn weyl_act(&self, w: &WeylElt) -> LaurentPoly {
        LaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (w.act(e), c.clone()))
                .collect(),
        }
    }

    /// Conjugation on the compact torus: negate exponents, keep coefficients.
    pub fn star(&self) -> LaurentPoly {
        LaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.neg(), c.clone()))
                .collect(),
        }
    }

    /// True if `s_i f = f` for every `i` in `I`.
    pub fn is_invariant(&self, i_set: &[usize]) -> bool {
        i_set.iter().all(|&i| {
            let s = WeylElt::simple(&self.rs, i);
            self.weyl_act(&s) == *self
        })
    }

    /// Exact division: returns `q` with `self = q * g`, or `NotDivisible`.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_rs(g)?;
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero(&self.rs));
        }
        let n = self.rs.rank;
        // Common exponent denominator; work with integer vectors.
        let den = self
            .terms
            .keys()
            .chain(g.terms.keys())
            .map(|w| w.den())
            .max()
            .unwrap_or(1);
        let to_vec = |w: &Weight| -> Vec<i64> {
            let f = den / w.den();
            w.num().iter().map(|x| x * f).collect()
        };
        let mut f_map: BTreeMap<Vec<i64>, Q> = self
            .terms
            .iter()
            .map(|(w, c)| (to_vec(w), c.clone()))
            .collect();
        let g_map: BTreeMap<Vec<i64>, Q> = g
            .terms
            .iter()
            .map(|(w, c)| (to_vec(w), c.clone()))
            .collect();

        // Shift both so exponents are coordinatewise >= 0. Monomials are
        // units, so Laurent divisibility is unchanged, and both shifted
        // polynomials have coordinatewise minimum 0, which makes the
        // polynomial quotient exactly the shifted Laurent quotient.
        let min_of = |m: &BTreeMap<Vec<i64>, Q>| -> Vec<i64> {
            (0..n)
                .map(|i| m.keys().map(|e| e[i]).min().unwrap())
                .collect()
        };
        let sf = min_of(&f_map);
        let sg = min_of(&g_map);
        let shift = |m: BTreeMap<Vec<i64>, Q>, s: &[i64]| -> BTreeMap<Vec<i64>, Q> {
            m.into_iter()
                .map(|(e, c)| ((0..n).map(|i| e[i] - s[i]).collect(), c))
                .collect()
        };
        f_map = shift(f_map, &sf);
        let g_map = shift(g_map, &sg);

        // Division by a single divisor with lex leading terms; any failure
        // to divide a leading term certifies non-divisibility.
        let (g_lead, g_lead_c) = g_map
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut quot: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
        while let Some((r_lead, r_c)) = f_map
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            let m: Vec<i64> = (0..n).map(|i| r_lead[i] - g_lead[i]).collect();
            if m.iter().any(|x| *x < 0) {
                return Err(Error::NotDivisible);
            }
            let mc = &r_c / &g_lead_c;
            for (e, c) in &g_map {
                let key: Vec<i64> = (0..n).map(|i| e[i] + m[i]).collect();
                let delta = -(&mc * c);
                match f_map.get_mut(&key) {
                    Some(x) => {
                        *x += delta;
                        if x.is_zero() {
                            f_map.remove(&key);
                        }
                    }
                    None => {
                        if !delta.is_zero() {
                            f_map.insert(key, delta);
                        }
                    }
                }
            }
            quot.insert(m, mc);
        }

        // Shift the quotient back by sf - sg and rebuild weights.
        let terms: BTreeMap<Weight, Q> = quot
            .into_iter()
            .map(|(e, c)| {
                let num: Vec<i64> = (0..n).map(|i| e[i] + sf[i] - sg[i]).collect();
                (Weight::new(num, den), c)
            })
            .collect();
        Ok(LaurentPoly {
            rs: self.rs.clone(),
            terms,
        })
    }

    /// Deterministic plain-text rendering.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = q_str(&mag);
            if w.is_zero() {
                out.push_str(&coeff);
            } else {
                if coeff != "1" {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&format!("e{w}"));
            }
        }
        out
    }

    /// LaTeX rendering, terms sorted by the deterministic exponent order.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let exp_latex = |w: &Weight| -> String {
            let mut s = String::new();
            for (i, &x) in w.num().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !s.is_empty() && x > 0 {
                    s.push('+');
                }
                match (x, w.den()) {
                    (1, 1) => {}
                    (-1, 1) => s.push('-'),
                    (x, 1) => s.push_str(&x.to_string()),
                    (x, _) => s.push_str(&format!("\\tfrac{{{x}}}{{2}}")),
                }
                s.push_str(&format!("\\varpi_{{{}}}", i + 1));
            }
            s
        };
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            if w.is_zero() {
                out.push_str(&coeff);
            } else {
                if coeff != "1" {
                    out.push_str(&coeff);
                }
                out.push_str(&format!("e^{{{}}}", exp_latex(w)));
            }
        }
        out
    }

    /// JSON encoding `{"terms":[{"exp":{"num":[...],"den":1},"coeff":"p/q"},...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                serde_json::json!({
                    "exp": {"num": w.num(), "den": w.den()},
                    "coeff": q_str(c),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(rs: &Rs, v: &serde_json::Value) -> Result<LaurentPoly> {
        let arr = v["terms"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        let mut out = LaurentPoly::zero(rs);
        for t in arr {
            let num: Vec<i64> = t["exp"]["num"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing exp.num".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse("bad exponent".into()))
                })
                .collect::<Result<_>>()?;
            if num.len() != rs.rank {
                return Err(Error::Parse("exponent rank mismatch".into()));
            }
            let den = t["exp"]["den"].as_i64().unwrap_or(1);
            if den != 1 && den != 2 {
                return Err(Error::Parse("exponent denominator must be 1 or 2".into()));
            }
            let c = crate::parse_q(
                t["coeff"]
                    .as_str()
                    .ok_or_else(|| Error::Parse("missing coeff".into()))?,
            )?;
            add_term(&mut out.terms, Weight::new(num, den), c);
        }
        Ok(out)
    }
}

pub(crate) fn add_term(map: &mut BTreeMap<Weight, Q>, w: Weight, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

/// `delta_k = prod_{alpha in R} (e^{alpha/2} - e^{-alpha/2})^{k_alpha}
///          = prod_{alpha > 0} (2 - e^alpha - e^{-alpha})^{k_alpha}`,
/// available only for nonnegative integer multiplicities. Memoized.
pub fn delta_k(rs: &Rs, k: &Multiplicity) -> Result<Arc<LaurentPoly>> {
    let ints = k.as_integers()?;
    type Memo = Mutex<HashMap<(String, Vec<u64>), Arc<LaurentPoly>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (
        format!("{}{}@{}", rs.family, rs.rank, q_str(&rs.scale)),
        ints.clone(),
    );
    if let Some(d) = memo.lock().unwrap().get(&key) {
        return Ok(d.clone());
    }
    let mut out = LaurentPoly::one(rs);
    for root in rs.positive_roots() {
        let e = ints[root.orbit];
        if e == 0 {
            continue;
        }
        let alpha = root.weight();
        let factor = LaurentPoly::constant(rs, crate::qz(2))
            .sub(&LaurentPoly::monomial(rs, &alpha, Q::one()))
            .unwrap()
            .sub(&LaurentPoly::monomial(rs, &alpha.neg(), Q::one()))
            .unwrap();
        for _ in 0..e {
            out = out.mul(&factor).unwrap();
        }
    }
    let arc = Arc::new(out);
    memo.lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// The Hermitean inner product `(f, g)_k = CT(star(f) g delta_k)`.
pub fn inner_k(f: &LaurentPoly, g: &LaurentPoly, k: &Multiplicity) -> Result<Q> {
    if f.rs.as_ref() != g.rs.as_ref() {
        return Err(Error::MismatchedRootSystem);
    }
    let d = delta_k(&f.rs, k)?;
    let h = g.mul(&d)?;
    // CT(star(f) h) = sum_e f_e h_e.
    let mut s = Q::zero();
    for (e, c) in &f.terms {
        if let Some(x) = h.terms.get(e) {
            s += c * x;
        }
    }
    Ok(s)
}

/// `m_I(lambda) = sum_{mu in W_I lambda} e^mu` for I-dominant `lambda`.
pub fn orbit_sum(rs: &Rs, i_set: &[usize], lambda: &Weight) -> Result<LaurentPoly> {
    if !rs.is_dominant(lambda, i_set) {
        return Err(Error::NotIDominant(lambda.clone()));
    }
    let mut p = LaurentPoly::zero(rs);
    for mu in weyl_orbit(rs, i_set, lambda) {
        p.terms.insert(mu, Q::one());
    }
    Ok(p)
}

/// The `W_I`-orbit of a weight, as a sorted set.
pub fn weyl_orbit(rs: &Rs, i_set: &[usize], lambda: &Weight) -> Vec<Weight> {
    let mut seen: BTreeMap<Weight, ()> = BTreeMap::new();
    seen.insert(lambda.clone(), ());
    let mut queue = vec![lambda.clone()];
    let gens: Vec<WeylElt> = i_set.iter().map(|&i| WeylElt::simple(rs, i)).collect();
    while let Some(w) = queue.pop() {
        for g in &gens {
            let img = g.act(&w);
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                queue.push(img);
            }
        }
    }
    seen.into_keys().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use crate::rootsys::RootSystem;
    use crate::{qq, qz};
    use proptest::prelude::*;

    fn arc(rs: RootSystem) -> Rs {
        Arc::new(rs)
    }

    fn a1() -> Rs {
        arc(build_root_system(Family::A, 1, Q::one()).unwrap())
    }

    fn a2() -> Rs {
        arc(build_root_system(Family::A, 2, Q::one()).unwrap())
    }

    fn mono(rs: &Rs, num: Vec<i64>, c: Q) -> LaurentPoly {
        LaurentPoly::monomial(rs, &Weight::new(num, 1), c)
    }

    #[test]
    fn ring_ops_examples() {
        let rs = a1();
        let e1 = mono(&rs, vec![1], Q::one());
        let em1 = mono(&rs, vec![-1], Q::one());
        assert_eq!(e1.mul(&em1).unwrap(), LaurentPoly::one(&rs));
        // (e^w + e^{-w})^2 = e^{2w} + 2 + e^{-2w}
        let s = e1.add(&em1).unwrap();
        let sq = s.mul(&s).unwrap();
        let expect = mono(&rs, vec![2], Q::one())
            .add(&LaurentPoly::constant(&rs, qz(2)))
            .unwrap()
            .add(&mono(&rs, vec![-2], Q::one()))
            .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(s.add(&LaurentPoly::zero(&rs)).unwrap(), s);
    }

    #[test]
    fn mismatched_root_systems() {
        let r1 = a1();
        let r2 = a2();
        let f = LaurentPoly::one(&r1);
        let g = LaurentPoly::one(&r2);
        assert_eq!(f.add(&g), Err(Error::MismatchedRootSystem));
        assert_eq!(f.mul(&g), Err(Error::MismatchedRootSystem));
    }

    #[test]
    fn weyl_act_examples() {
        let rs = a2();
        let s1 = WeylElt::simple(&rs, 0);
        let s2 = WeylElt::simple(&rs, 1);
        let f = mono(&rs, vec![-1, 0], Q::one());
        assert_eq!(f.weyl_act(&s1), mono(&rs, vec![1, -1], Q::one()));
        assert_eq!(LaurentPoly::one(&rs).weyl_act(&s1), LaurentPoly::one(&rs));
        // phi_{s1} = e^{-w1+w2} + e^{-w2} is invariant for I = {s2}.
        let phi = mono(&rs, vec![-1, 1], Q::one())
            .add(&mono(&rs, vec![0, -1], Q::one()))
            .unwrap();
        assert_eq!(phi.weyl_act(&s2), phi);
        assert!(phi.is_invariant(&[1]));
        assert!(!phi.is_invariant(&[0]));
    }

    #[test]
    fn star_examples() {
        let rs = a1();
        let f = mono(&rs, vec![1], Q::one())
            .add(&mono(&rs, vec![-1], qz(2)))
            .unwrap();
        let sf = f.star();
        assert_eq!(
            sf,
            mono(&rs, vec![-1], Q::one())
                .add(&mono(&rs, vec![1], qz(2)))
                .unwrap()
        );
        assert_eq!(sf.star(), f);
        assert_eq!(LaurentPoly::one(&rs).star(), LaurentPoly::one(&rs));
    }

    #[test]
    fn constant_term_examples() {
        let rs = a1();
        assert_eq!(mono(&rs, vec![3], Q::one()).constant_term(), Q::zero());
        assert_eq!(LaurentPoly::constant(&rs, qz(5)).constant_term(), qz(5));
        let alpha = rs.positive_roots()[0].weight();
        let f = LaurentPoly::constant(&rs, qz(2))
            .sub(&LaurentPoly::monomial(&rs, &alpha, Q::one()))
            .unwrap()
            .sub(&LaurentPoly::monomial(&rs, &alpha.neg(), Q::one()))
            .unwrap();
        assert_eq!(f.constant_term(), qz(2));
    }

    #[test]
    fn delta_k_examples() {
        let rs = a1();
        let k1 = Multiplicity::constant(&rs, Q::one()).unwrap();
        let d = delta_k(&rs, &k1).unwrap();
        let expect = LaurentPoly::constant(&rs, qz(2))
            .sub(&mono(&rs, vec![2], Q::one()))
            .unwrap()
            .sub(&mono(&rs, vec![-2], Q::one()))
            .unwrap();
        assert_eq!(*d, expect);

        let k0 = Multiplicity::zero(&rs);
        assert_eq!(*delta_k(&rs, &k0).unwrap(), LaurentPoly::one(&rs));

        let khalf = Multiplicity::constant(&rs, qq(1, 2)).unwrap();
        assert!(matches!(
            delta_k(&rs, &khalf),
            Err(Error::NonIntegerMultiplicity)
        ));
    }

    #[test]
    fn delta_k_a2_against_naive_product() {
        // Oracle: naive triple product over the positive roots.
        let rs = a2();
        let k1 = Multiplicity::constant(&rs, Q::one()).unwrap();
        let d = delta_k(&rs, &k1).unwrap();
        let mut naive = LaurentPoly::one(&rs);
        for r in rs.positive_roots() {
            let a = r.weight();
            let f = LaurentPoly::constant(&rs, qz(2))
                .sub(&LaurentPoly::monomial(&rs, &a, Q::one()))
                .unwrap()
                .sub(&LaurentPoly::monomial(&rs, &a.neg(), Q::one()))
                .unwrap();
            naive = naive.mul(&f).unwrap();
        }
        assert_eq!(*d, naive);
        assert!(d.is_invariant(&rs.full_set()));
    }

    #[test]
    fn inner_k_examples() {
        let rs = a1();
        let k1 = Multiplicity::constant(&rs, Q::one()).unwrap();
        let one = LaurentPoly::one(&rs);
        assert_eq!(inner_k(&one, &one, &k1).unwrap(), qz(2));
        let ew = mono(&rs, vec![1], Q::one());
        assert_eq!(inner_k(&one, &ew, &k1).unwrap(), Q::zero());
        // (E(w,1), E(-w,1))_1 = 0 with E(w,1) = e^w, E(-w,1) = e^{-w} + e^w/2.
        let em = mono(&rs, vec![-1], Q::one())
            .add(&mono(&rs, vec![1], qq(1, 2)))
            .unwrap();
        assert_eq!(inner_k(&ew, &em, &k1).unwrap(), Q::zero());
    }

    #[test]
    fn monomial_orthogonality_k0() {
        let rs = a2();
        let k0 = Multiplicity::zero(&rs);
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let f = mono(&rs, vec![a, b], Q::one());
                let g = mono(&rs, vec![1, 0], Q::one());
                let expect = if (a, b) == (1, 0) { Q::one() } else { Q::zero() };
                assert_eq!(inner_k(&f, &g, &k0).unwrap(), expect);
            }
        }
    }

    #[test]
    fn orbit_sum_examples() {
        let rs = a2();
        let i = [1usize];
        assert_eq!(
            orbit_sum(&rs, &i, &Weight::zero(2)).unwrap(),
            LaurentPoly::one(&rs)
        );
        // m_I(fw2) = e^{fw2} + e^{fw1 - fw2}
        let m = orbit_sum(&rs, &i, &Weight::new(vec![0, 1], 1)).unwrap();
        let expect = mono(&rs, vec![0, 1], Q::one())
            .add(&mono(&rs, vec![1, -1], Q::one()))
            .unwrap();
        assert_eq!(m, expect);
        // Singleton orbit for -fw1.
        let m2 = orbit_sum(&rs, &i, &Weight::new(vec![-1, 0], 1)).unwrap();
        assert_eq!(m2, mono(&rs, vec![-1, 0], Q::one()));
        assert!(matches!(
            orbit_sum(&rs, &i, &Weight::new(vec![0, -1], 1)),
            Err(Error::NotIDominant(_))
        ));
    }

    #[test]
    fn exact_div_examples() {
        let rs = a1();
        // (e^{2w} - e^{-2w}) / (e^w - e^{-w}) = e^w + e^{-w}
        let f = mono(&rs, vec![2], Q::one())
            .sub(&mono(&rs, vec![-2], Q::one()))
            .unwrap();
        let g = mono(&rs, vec![1], Q::one())
            .sub(&mono(&rs, vec![-1], Q::one()))
            .unwrap();
        let q = f.exact_div(&g).unwrap();
        assert_eq!(
            q,
            mono(&rs, vec![1], Q::one())
                .add(&mono(&rs, vec![-1], Q::one()))
                .unwrap()
        );
        assert_eq!(f.exact_div(&LaurentPoly::one(&rs)).unwrap(), f);
        // (e^w + 1) / (e^w - 1) has no Laurent quotient.
        let h = mono(&rs, vec![1], Q::one())
            .add(&LaurentPoly::one(&rs))
            .unwrap();
        let d = mono(&rs, vec![1], Q::one())
            .sub(&LaurentPoly::one(&rs))
            .unwrap();
        assert_eq!(h.exact_div(&d), Err(Error::NotDivisible));
    }

    #[test]
    fn exact_div_half_weights() {
        let rs = a2();
        let h = Weight::new(vec![1, -1], 2);
        let f = LaurentPoly::monomial(&rs, &h, qz(3))
            .add(&LaurentPoly::one(&rs))
            .unwrap();
        let g = LaurentPoly::monomial(&rs, &h.neg(), Q::one())
            .add(&mono(&rs, vec![1, 0], qz(2)))
            .unwrap();
        let p = f.mul(&g).unwrap();
        assert_eq!(p.exact_div(&g).unwrap(), f);
        assert_eq!(p.exact_div(&f).unwrap(), g);
    }

    #[test]
    fn inner_product_symmetry_and_w_invariance() {
        let rs = a2();
        let k = Multiplicity::constant(&rs, qz(1)).unwrap();
        let w_all: Vec<WeylElt> = crate::weylgroup::enumerate(&rs, &rs.full_set()).to_vec();
        let polys = [
            mono(&rs, vec![1, 0], Q::one()),
            mono(&rs, vec![-1, 2], qq(2, 3))
                .add(&LaurentPoly::one(&rs))
                .unwrap(),
            mono(&rs, vec![0, -2], qz(3))
                .add(&mono(&rs, vec![1, 1], qz(-1)))
                .unwrap(),
        ];
        for f in &polys {
            for g in &polys {
                let fg = inner_k(f, g, &k).unwrap();
                assert_eq!(fg, inner_k(g, f, &k).unwrap());
                for w in &w_all {
                    assert_eq!(inner_k(&f.weyl_act(w), &g.weyl_act(w), &k).unwrap(), fg);
                }
            }
        }
    }

    #[test]
    fn positivity_random_sample() {
        use rand::{Rng, SeedableRng};
        let rs = a2();
        let k = Multiplicity::constant(&rs, qz(2)).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..25 {
            let mut f = LaurentPoly::zero(&rs);
            for _ in 0..rng.gen_range(1..=4) {
                let a = rng.gen_range(-3i64..=3);
                let b = rng.gen_range(-3i64..=3);
                let c = rng.gen_range(-5i64..=5);
                f = f.add(&mono(&rs, vec![a, b], qz(c))).unwrap();
            }
            if f.is_zero() {
                continue;
            }
            let norm = inner_k(&f, &f, &k).unwrap();
            assert!(norm.is_positive(), "norm of {} was {}", f.to_text(), norm);
        }
    }

    #[test]
    fn json_round_trip() {
        let rs = a2();
        let f = mono(&rs, vec![1, -1], qq(-5, 3))
            .add(&LaurentPoly::monomial(
                &rs,
                &Weight::new(vec![1, 1], 2),
                qz(7),
            ))
            .unwrap();
        let j = f.to_json();
        let back = LaurentPoly::from_json(&rs, &j).unwrap();
        assert_eq!(back, f);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn ring_laws(seed in 0u64..1 << 20) {
            use rand::{Rng, SeedableRng};
            let rs = a2();
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let mut rand_poly = || {
                let mut f = LaurentPoly::zero(&rs);
                for _ in 0..rng.gen_range(0..=3) {
                    let a = rng.gen_range(-2i64..=2);
                    let b = rng.gen_range(-2i64..=2);
                    let c = rng.gen_range(-4i64..=4);
                    f = f.add(&mono(&rs, vec![a, b], qz(c))).unwrap();
                }
                f
            };
            let f = rand_poly();
            let g = rand_poly();
            let h = rand_poly();
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(
                f.mul(&g).unwrap().mul(&h).unwrap(),
                f.mul(&g.mul(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(
                f.add(&g).unwrap().mul(&h).unwrap(),
                f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(f.star().star(), f.clone());
            prop_assert_eq!(f.mul(&g).unwrap().star(), f.star().mul(&g.star()).unwrap());
        }
    }
}
