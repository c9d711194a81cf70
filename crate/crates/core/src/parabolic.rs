//! Steinberg weights and generators, the bijection
//! `f_I : W^I x P^+ -> P_I^+`, the alternative generators, the partial
//! orders on weights, and lower-ideal enumeration.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{orbit_sum, LaurentPoly};
use crate::rootsys::{Rs, Weight};
use crate::weylgroup::{self, WeylElt};
use crate::Q;

/// One free-module generator of the `W`-invariants module structure:
/// `v in W^I`, its Steinberg weight `lambda_v`, the I-dominant weight
/// `v^{-1} lambda_v`, and the generator polynomial `phi_v`.
#[derive(Debug, Clone)]
pub struct SteinbergDatum {
    pub v: WeylElt,
    pub lambda_v: Weight,
    pub mu: Weight,
    pub phi: LaurentPoly,
}

/// `lambda_v = sum of fundamental weights over simple alpha with v^{-1} alpha < 0`.
pub fn steinberg_weight(rs: &Rs, v: &WeylElt) -> Weight {
    let vinv = v.inverse(rs);
    let mut w = Weight::zero(rs.rank);
    for i in 0..rs.rank {
        let img = vinv.act(&rs.simple_root(i));
        let (_, positive) = rs.as_root(&img).expect("root image");
        if !positive {
            w = w.add(&rs.fundamental_weight(i));
        }
    }
    w
}

/// One datum per `v in W^I`, in the canonical `W^I` order.
pub fn steinberg_generators(rs: &Rs, i_set: &[usize]) -> Vec<SteinbergDatum> {
    weylgroup::min_coset_reps(rs, i_set)
        .into_iter()
        .map(|v| {
            let lambda_v = steinberg_weight(rs, &v);
            let mu = v.inverse(rs).act(&lambda_v);
            let phi = orbit_sum(rs, i_set, &mu).expect("v^{-1} lambda_v is I-dominant");
            SteinbergDatum {
                v,
                lambda_v,
                mu,
                phi,
            }
        })
        .collect()
}

/// `f_I(v, sigma) = v^{-1}(lambda_v + sigma)`.
pub fn f_i(rs: &Rs, i_set: &[usize], v: &WeylElt, sigma: &Weight) -> Weight {
    debug_assert!(rs.is_dominant(sigma, &rs.full_set()), "sigma must be dominant");
    debug_assert!(
        weylgroup::min_coset_reps(rs, i_set).contains(v),
        "v must lie in W^I"
    );
    let lambda_v = steinberg_weight(rs, v);
    v.inverse(rs).act(&lambda_v.add(sigma))
}

/// Inverse of `f_I`: `v = vbar(mu)^{-1}`, `sigma = v mu - lambda_v`.
pub fn f_i_inverse(rs: &Rs, i_set: &[usize], mu: &Weight) -> Result<(WeylElt, Weight)> {
    if !rs.is_dominant(mu, i_set) {
        return Err(Error::NotIDominant(mu.clone()));
    }
    let ce = weylgroup::canonical_elements(rs, i_set, mu);
    let v = ce.vbar.inverse(rs);
    let sigma = v.act(mu).sub(&steinberg_weight(rs, &v));
    debug_assert!(rs.is_dominant(&sigma, &rs.full_set()));
    Ok((v, sigma))
}

/// Alternative generator datum from the antidominant cover of `P_I^+`:
/// `mu_w = -lambda_w` and the base weight `w_0^I w^{-1} mu_w`, whose
/// `W_I`-orbit sum is the alternative generator.
#[derive(Debug, Clone)]
pub struct AltSteinbergDatum {
    pub w: WeylElt,
    pub mu_w: Weight,
    pub base: Weight,
    pub gen: LaurentPoly,
}

pub fn alt_steinberg(rs: &Rs, i_set: &[usize]) -> Vec<AltSteinbergDatum> {
    let w0i = weylgroup::enumerate(rs, i_set)
        .last()
        .expect("nonempty")
        .clone();
    weylgroup::min_coset_reps(rs, i_set)
        .into_iter()
        .map(|w| {
            let mu_w = steinberg_weight(rs, &w).neg();
            let base = w0i.mul(rs, &w.inverse(rs)).act(&mu_w);
            let gen = orbit_sum(rs, i_set, &base).expect("base weight is I-dominant");
            AltSteinbergDatum { w, mu_w, base, gen }
        })
        .collect()
}

/// Which of the three orders to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    /// `lambda <= mu` iff `mu - lambda` is a nonnegative integer combination
    /// of simple roots.
    Dominance,
    /// The two-clause order on all of `P`.
    Empty,
    /// The restriction of the two-clause order to `P_I^+`.
    I,
}

/// `mu - lambda in Q^+`?
fn dominance_leq(rs: &Rs, lambda: &Weight, mu: &Weight) -> bool {
    if lambda.den() != 1 || mu.den() != 1 {
        return lambda == mu;
    }
    let diff = mu.sub(lambda);
    rs.root_basis_coords(&diff)
        .iter()
        .all(|c| c.is_integer() && !c.is_negative())
}

/// The two-clause order on `P`: `lambda <= mu` iff `lambda_+ <= mu_+` in
/// dominance, with Bruhat comparison of `vbar` on ties.
fn empty_leq(rs: &Rs, lambda: &Weight, mu: &Weight) -> bool {
    let cl = weylgroup::canonical_elements(rs, &[], lambda);
    let cm = weylgroup::canonical_elements(rs, &[], mu);
    if cl.lambda_plus == cm.lambda_plus {
        weylgroup::bruhat_leq(rs, &cl.vbar, &cm.vbar)
    } else {
        dominance_leq(rs, &cl.lambda_plus, &cm.lambda_plus)
    }
}

pub fn leq(rs: &Rs, i_set: &[usize], lambda: &Weight, mu: &Weight, mode: OrderMode) -> Result<bool> {
    match mode {
        OrderMode::Dominance => Ok(dominance_leq(rs, lambda, mu)),
        OrderMode::Empty => Ok(empty_leq(rs, lambda, mu)),
        OrderMode::I => {
            if !rs.is_dominant(lambda, i_set) {
                return Err(Error::NotIDominant(lambda.clone()));
            }
            if !rs.is_dominant(mu, i_set) {
                return Err(Error::NotIDominant(mu.clone()));
            }
            Ok(empty_leq(rs, lambda, mu))
        }
    }
}

/// All dominant `nu` with `nu` dominance-below `lambda_plus` (inclusive).
/// Writes `nu = lambda_plus - sum m_i alpha_i`; dominant weights have
/// nonnegative root-basis coordinates, which bounds every `m_i`.
pub fn dominant_below(rs: &Rs, lambda_plus: &Weight) -> Vec<Weight> {
    assert!(rs.is_dominant(lambda_plus, &rs.full_set()));
    let n = rs.rank;
    let c = rs.root_basis_coords(lambda_plus);
    let bounds: Vec<i64> = c
        .iter()
        .map(|x| {
            assert!(!x.is_negative());
            x.floor().to_integer().try_into().expect("bound overflow")
        })
        .collect();
    let mut out = Vec::new();
    let mut m = vec![0i64; n];
    loop {
        let mut nu = lambda_plus.clone();
        for i in 0..n {
            nu = nu.sub(&rs.simple_root(i).scaled(m[i]));
        }
        if rs.is_dominant(&nu, &rs.full_set()) {
            out.push(nu);
        }
        // Odometer over 0..=bounds.
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            m[i] += 1;
            if m[i] <= bounds[i] {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// The finite set `{mu in P_I^+ : mu <=_I lambda}`, ordered by the linear
/// extension (height of `mu_+`, length of `vbar(mu)`, coordinates).
pub fn lower_ideal(rs: &Rs, i_set: &[usize], lambda: &Weight) -> Result<Vec<Weight>> {
    if !rs.is_dominant(lambda, i_set) {
        return Err(Error::NotIDominant(lambda.clone()));
    }
    let cl = weylgroup::canonical_elements(rs, &[], lambda);
    let lambda_plus = &cl.lambda_plus;
    let mut out: Vec<(Q, usize, Weight)> = Vec::new();
    for nu in dominant_below(rs, lambda_plus) {
        let strict = &nu != lambda_plus;
        let ht: Q = rs.root_basis_coords(&nu).iter().fold(Q::zero(), |a, b| a + b);
        for mu in crate::laurent::weyl_orbit(rs, &rs.full_set(), &nu) {
            if !rs.is_dominant(&mu, i_set) {
                continue;
            }
            let cm = weylgroup::canonical_elements(rs, &[], &mu);
            if strict || weylgroup::bruhat_leq(rs, &cm.vbar, &cl.vbar) {
                out.push((ht.clone(), cm.vbar.len(), mu));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    Ok(out.into_iter().map(|(_, _, w)| w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use crate::Q;
    use num::One;
    use std::sync::Arc;

    fn a1() -> Rs {
        Arc::new(build_root_system(Family::A, 1, Q::one()).unwrap())
    }

    fn a2() -> Rs {
        Arc::new(build_root_system(Family::A, 2, Q::one()).unwrap())
    }

    fn w(num: Vec<i64>) -> Weight {
        Weight::new(num, 1)
    }

    #[test]
    fn steinberg_generators_a2_s2() {
        let rs = a2();
        let data = steinberg_generators(&rs, &[1]);
        assert_eq!(data.len(), 3);
        // phi_e = 1, phi_{s1} = e^{-w1+w2} + e^{-w2}, phi_{s2s1} = e^{-w1}.
        assert_eq!(data[0].v.word_string(), "e");
        assert_eq!(data[0].phi, LaurentPoly::one(&rs));
        assert_eq!(data[1].v.word_string(), "s1");
        let phi_s1 = LaurentPoly::monomial(&rs, &w(vec![-1, 1]), Q::one())
            .add(&LaurentPoly::monomial(&rs, &w(vec![0, -1]), Q::one()))
            .unwrap();
        assert_eq!(data[1].phi, phi_s1);
        assert_eq!(data[2].v.word_string(), "s2*s1");
        assert_eq!(
            data[2].phi,
            LaurentPoly::monomial(&rs, &w(vec![-1, 0]), Q::one())
        );
    }

    /// The full table of `(v, lambda_v, v^{-1} lambda_v)` for `A_2` and the
    /// membership of each `v` in `W^I` for the three `I`.
    #[test]
    fn figure_table_a2() {
        let rs = a2();
        let all = weylgroup::enumerate(&rs, &rs.full_set());
        let expect: Vec<(&str, Vec<i64>, Vec<i64>, [bool; 3])> = vec![
            ("e", vec![0, 0], vec![0, 0], [true, true, true]),
            ("s1", vec![1, 0], vec![-1, 1], [true, true, false]),
            ("s2", vec![0, 1], vec![1, -1], [true, false, false]),
            ("s1*s2", vec![1, 0], vec![0, -1], [true, false, false]),
            ("s2*s1", vec![0, 1], vec![-1, 0], [true, true, false]),
            ("s1*s2*s1", vec![1, 1], vec![-1, -1], [true, false, false]),
        ];
        let i_sets: [&[usize]; 3] = [&[], &[1], &[0, 1]];
        let reps: Vec<Vec<WeylElt>> = i_sets
            .iter()
            .map(|i| weylgroup::min_coset_reps(&rs, i))
            .collect();
        for (word, lv, vinv_lv, members) in expect {
            let v = all.iter().find(|x| x.word_string() == word).unwrap();
            let lambda_v = steinberg_weight(&rs, v);
            assert_eq!(lambda_v, w(lv), "lambda_v for {word}");
            assert_eq!(v.inverse(&rs).act(&lambda_v), w(vinv_lv), "v^-1 lambda_v for {word}");
            for (col, r) in reps.iter().enumerate() {
                assert_eq!(r.contains(v), members[col], "membership of {word} in col {col}");
            }
        }
    }

    #[test]
    fn steinberg_i_full() {
        let rs = a2();
        let data = steinberg_generators(&rs, &[0, 1]);
        assert_eq!(data.len(), 1);
        assert!(data[0].v.is_identity());
        assert!(data[0].lambda_v.is_zero());
        assert!(data[0].mu.is_zero());
        assert_eq!(data[0].phi, LaurentPoly::one(&rs));
    }

    #[test]
    fn f_i_examples() {
        let rs = a2();
        let i = [1usize];
        let e = WeylElt::identity(&rs);
        let sigma = w(vec![2, 1]);
        assert_eq!(f_i(&rs, &i, &e, &sigma), sigma);
        let s1 = WeylElt::simple(&rs, 0);
        assert_eq!(f_i(&rs, &i, &s1, &Weight::zero(2)), w(vec![-1, 1]));
        // Inverse: -2 fw1 + fw2 -> (s2 s1, fw1).
        let (v, sig) = f_i_inverse(&rs, &i, &w(vec![-2, 1])).unwrap();
        assert_eq!(v.word_string(), "s2*s1");
        assert_eq!(sig, w(vec![1, 0]));
        assert!(matches!(
            f_i_inverse(&rs, &i, &w(vec![0, -1])),
            Err(Error::NotIDominant(_))
        ));
    }

    #[test]
    fn f_i_inverse_matches_enumeration_oracle() {
        // Oracle: enumerate all (v, sigma) with sigma in a box and invert by
        // exhaustive matching.
        let rs = a2();
        let i = [1usize];
        let reps = weylgroup::min_coset_reps(&rs, &i);
        let mut table = Vec::new();
        for v in &reps {
            for a in 0..=6i64 {
                for b in 0..=6i64 {
                    let sigma = w(vec![a, b]);
                    table.push((v.clone(), sigma.clone(), f_i(&rs, &i, v, &sigma)));
                }
            }
        }
        for (v, sigma, mu) in &table {
            let (v2, sigma2) = f_i_inverse(&rs, &i, mu).unwrap();
            assert_eq!(&v2, v);
            assert_eq!(&sigma2, sigma);
        }
    }

    #[test]
    fn round_trip_box_all_i() {
        let rs = a2();
        for i_set in [vec![], vec![1], vec![0, 1]] {
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    let mu = w(vec![a, b]);
                    if !rs.is_dominant(&mu, &i_set) {
                        continue;
                    }
                    let (v, sigma) = f_i_inverse(&rs, &i_set, &mu).unwrap();
                    assert_eq!(f_i(&rs, &i_set, &v, &sigma), mu);
                }
            }
        }
    }

    #[test]
    fn disjoint_cover_box() {
        // The images v^{-1}(lambda_v + P^+) partition P_I^+ within the box.
        let rs = a2();
        for i_set in [vec![], vec![1], vec![0, 1]] {
            let reps = weylgroup::min_coset_reps(&rs, &i_set);
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    let mu = w(vec![a, b]);
                    if !rs.is_dominant(&mu, &i_set) {
                        continue;
                    }
                    let mut hits = 0;
                    for v in &reps {
                        let lv = steinberg_weight(&rs, v);
                        let sigma = v.act(&mu).sub(&lv);
                        if rs.is_dominant(&sigma, &rs.full_set()) {
                            hits += 1;
                        }
                    }
                    assert_eq!(hits, 1, "mu={mu} I={i_set:?}");
                }
            }
        }
    }

    #[test]
    fn alt_steinberg_a2() {
        let rs = a2();
        let data = alt_steinberg(&rs, &[1]);
        assert_eq!(data[0].mu_w, Weight::zero(2));
        assert_eq!(data[0].gen, LaurentPoly::one(&rs));
        assert_eq!(data[1].mu_w, w(vec![-1, 0]));
        // Alternative generators: 1, e^{w1-w2} + e^{w2}, e^{w1}.
        let g2 = LaurentPoly::monomial(&rs, &w(vec![1, -1]), Q::one())
            .add(&LaurentPoly::monomial(&rs, &w(vec![0, 1]), Q::one()))
            .unwrap();
        assert_eq!(data[1].gen, g2);
        assert_eq!(
            data[2].gen,
            LaurentPoly::monomial(&rs, &w(vec![1, 0]), Q::one())
        );
    }

    #[test]
    fn leq_examples() {
        let rs = a2();
        let zero = Weight::zero(2);
        let rho = w(vec![1, 1]);
        assert!(leq(&rs, &[], &zero, &rho, OrderMode::Dominance).unwrap());
        // fw1 <= -fw1+fw2 (same dominant rep, e <= s1).
        assert!(leq(&rs, &[], &w(vec![1, 0]), &w(vec![-1, 1]), OrderMode::Empty).unwrap());
        assert!(!leq(&rs, &[], &w(vec![-1, 1]), &w(vec![1, 0]), OrderMode::Empty).unwrap());
        // Incomparable pair in mode I: dominant reps fw2 vs fw1.
        let a = w(vec![-1, 0]);
        let b = w(vec![-1, 1]);
        assert!(!leq(&rs, &[1], &a, &b, OrderMode::I).unwrap());
        assert!(!leq(&rs, &[1], &b, &a, OrderMode::I).unwrap());
        assert!(matches!(
            leq(&rs, &[1], &w(vec![0, -1]), &zero, OrderMode::I),
            Err(Error::NotIDominant(_))
        ));
    }

    #[test]
    fn lower_ideal_a1_examples() {
        let rs = a1();
        let ideal = lower_ideal(&rs, &[], &w(vec![-1])).unwrap();
        assert_eq!(ideal, vec![w(vec![1]), w(vec![-1])]);
        let ideal2 = lower_ideal(&rs, &[], &w(vec![2])).unwrap();
        assert_eq!(ideal2, vec![w(vec![0]), w(vec![2])]);
        let ideal3 = lower_ideal(&rs, &[], &w(vec![1])).unwrap();
        assert_eq!(ideal3, vec![w(vec![1])]);
    }

    #[test]
    fn lower_ideal_is_downward_closed() {
        let rs = a2();
        for i_set in [vec![], vec![1]] {
            let lam = w(vec![1, 1]);
            let ideal = lower_ideal(&rs, &i_set, &lam).unwrap();
            // Every member is <=_I lambda, and membership is transitive.
            for mu in &ideal {
                assert!(leq(&rs, &i_set, mu, &lam, OrderMode::I).unwrap());
                let sub = lower_ideal(&rs, &i_set, mu).unwrap();
                for nu in &sub {
                    assert!(ideal.contains(nu), "{nu} under {mu} missing from ideal of {lam}");
                }
            }
        }
    }

    #[test]
    fn stability_lemma_box() {
        // lambda in P_I^+, mu <_0 lambda, w in W_{I,lambda} => w mu <_0 lambda.
        let rs = a2();
        for i_set in [vec![1], vec![0, 1]] {
            for a in -3i64..=3 {
                for b in -3i64..=3 {
                    let lam = w(vec![a, b]);
                    if !rs.is_dominant(&lam, &i_set) {
                        continue;
                    }
                    let ce = weylgroup::canonical_elements(&rs, &i_set, &lam);
                    for c in -3i64..=3 {
                        for d in -3i64..=3 {
                            let mu = w(vec![c, d]);
                            let lt = empty_leq(&rs, &mu, &lam) && mu != lam;
                            if !lt {
                                continue;
                            }
                            for s in &ce.stab_i {
                                let smu = s.act(&mu);
                                assert!(
                                    empty_leq(&rs, &smu, &lam) && smu != lam,
                                    "w mu = {smu} not < lambda = {lam}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_lemma_box() {
        // mu <_0 lambda with mu_+ = lambda_+ => mu_{I,+} <_0 lambda.
        let rs = a2();
        for i_set in [vec![1], vec![0, 1]] {
            for a in -4i64..=4 {
                for b in -4i64..=4 {
                    let lam = w(vec![a, b]);
                    if !rs.is_dominant(&lam, &i_set) {
                        continue;
                    }
                    let cl = weylgroup::canonical_elements(&rs, &[], &lam);
                    for mu in crate::laurent::weyl_orbit(&rs, &rs.full_set(), &cl.lambda_plus) {
                        if empty_leq(&rs, &mu, &lam) && mu != lam {
                            let cm = weylgroup::canonical_elements(&rs, &i_set, &mu);
                            let proj = cm.lambda_i_plus;
                            assert!(
                                empty_leq(&rs, &proj, &lam) && proj != lam,
                                "mu={mu} proj={proj} lam={lam}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_axioms_box() {
        let rs = a2();
        let mut box_weights = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                box_weights.push(w(vec![a, b]));
            }
        }
        for x in &box_weights {
            assert!(empty_leq(&rs, x, x));
            for y in &box_weights {
                if empty_leq(&rs, x, y) && empty_leq(&rs, y, x) {
                    assert_eq!(x, y, "antisymmetry");
                }
                for z in &box_weights {
                    if empty_leq(&rs, x, y) && empty_leq(&rs, y, z) {
                        assert!(empty_leq(&rs, x, z), "transitivity {x} {y} {z}");
                    }
                }
            }
        }
    }
}
