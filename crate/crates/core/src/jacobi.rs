//! The parabolic Jacobi polynomials `p_I(lambda, k)` by two independent
//! constructions (symmetrized nonsymmetric polynomials, and the Gram system
//! against lower basic invariants), their Gram matrices, and spectral data.

use num::{One, Zero};

use crate::cherednik::{d_iq_apply, e_poly, spectral};
use crate::error::{Error, Result};
use crate::laurent::{delta_k, orbit_sum, LaurentPoly};
use crate::multipoly::MultiPoly;
use crate::parabolic::{leq, lower_ideal, OrderMode};
use crate::rootsys::{Family, Multiplicity, Rs, Weight};
use crate::weylgroup;
use crate::{qq, Q};

/// A parabolic Jacobi polynomial with its expansion over the basic
/// invariants `m_I(mu)` and the eigenvalues of the default generator set.
#[derive(Debug, Clone)]
pub struct JacobiPoly {
    pub label: Weight,
    pub i_set: Vec<usize>,
    pub k: Multiplicity,
    pub poly: LaurentPoly,
    /// Coefficients `c_{lambda,mu}` over `m_I(mu)`, in exponent order;
    /// contains `(lambda, 1)` and only labels `mu <=_I lambda`.
    pub expansion: Vec<(Weight, Q)>,
    /// Values `q(lambda_tilde)` for `default_generators(rs, I)`.
    pub spectral: Vec<Q>,
}

impl JacobiPoly {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": {"num": self.label.num(), "den": self.label.den()},
            "I": self.i_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "k": self.k.values().iter().map(crate::q_str).collect::<Vec<_>>(),
            "expansion": self.expansion.iter().map(|(mu, c)| {
                serde_json::json!({
                    "mu": {"num": mu.num(), "den": mu.den()},
                    "c": crate::q_str(c),
                })
            }).collect::<Vec<_>>(),
            "poly": self.poly.to_json(),
            "spectral": self.spectral.iter().map(crate::q_str).collect::<Vec<_>>(),
        })
    }
}

/// Expand a `W_I`-invariant polynomial over the basic invariants and verify
/// the unitriangularity contract for the given top label.
fn expand_over_basic(
    rs: &Rs,
    i_set: &[usize],
    lambda: &Weight,
    p: &LaurentPoly,
) -> Result<Vec<(Weight, Q)>> {
    let mut expansion = Vec::new();
    let mut check = LaurentPoly::zero(rs);
    for (e, c) in p.terms() {
        if rs.is_dominant(e, i_set) {
            expansion.push((e.clone(), c.clone()));
            check = check.add(&orbit_sum(rs, i_set, e)?.scale(c))?;
        }
    }
    if &check != p {
        return Err(Error::InternalInconsistency(format!(
            "polynomial for {lambda} is not W_I-invariant"
        )));
    }
    for (mu, c) in &expansion {
        if mu == lambda {
            if !c.is_one() {
                return Err(Error::InternalInconsistency(format!(
                    "leading coefficient at {lambda} is {c}, not 1"
                )));
            }
        } else if !leq(rs, i_set, mu, lambda, OrderMode::I)? {
            return Err(Error::InternalInconsistency(format!(
                "expansion label {mu} is not strictly below {lambda}"
            )));
        }
    }
    Ok(expansion)
}

/// `p_I(lambda, k)` by symmetrizing `E(lambda, k)` over the shortest coset
/// representatives `(W_I)^lambda`. Works for any rational `k >= 0`.
pub fn jacobi_sym(rs: &Rs, i_set: &[usize], lambda: &Weight, k: &Multiplicity) -> Result<JacobiPoly> {
    if !rs.is_dominant(lambda, i_set) {
        return Err(Error::NotIDominant(lambda.clone()));
    }
    let e = e_poly(rs, lambda, k)?;
    let ce = weylgroup::canonical_elements(rs, i_set, lambda);
    let mut p = LaurentPoly::zero(rs);
    for w in &ce.reps_i {
        p = p.add(&e.weyl_act(w))?;
    }
    let expansion = expand_over_basic(rs, i_set, lambda, &p)?;
    let spectral = spectral_values(rs, i_set, lambda, k)?;
    Ok(JacobiPoly {
        label: lambda.clone(),
        i_set: i_set.to_vec(),
        k: k.clone(),
        poly: p,
        expansion,
        spectral,
    })
}

/// `p_I(lambda, k)` as the unique `m_I(lambda) + lower` orthogonal to every
/// `m_I(mu)` with `mu <_I lambda`; integer multiplicities only.
pub fn jacobi_gs(rs: &Rs, i_set: &[usize], lambda: &Weight, k: &Multiplicity) -> Result<JacobiPoly> {
    let delta = delta_k(rs, k)?;
    let ideal = lower_ideal(rs, i_set, lambda)?;
    let m = ideal.len() - 1;
    debug_assert_eq!(&ideal[m], lambda);
    let basics: Vec<LaurentPoly> = ideal
        .iter()
        .map(|mu| orbit_sum(rs, i_set, mu))
        .collect::<Result<_>>()?;
    // (m_mu, m_nu)_k via h_nu = m_nu * delta_k and sparse dot products.
    let hs: Vec<LaurentPoly> = basics
        .iter()
        .map(|b| b.mul(&delta).expect("same root system"))
        .collect();
    let dot = |r: usize, c: usize| -> Q {
        let mut s = Q::zero();
        for (e, x) in basics[r].terms() {
            if let Some(y) = hs[c].terms().get(e) {
                s += x * y;
            }
        }
        s
    };
    let mut a = vec![Q::zero(); m * m];
    let mut b = vec![Q::zero(); m];
    for r in 0..m {
        for c in 0..=r {
            let v = dot(r, c);
            a[r * m + c] = v.clone();
            a[c * m + r] = v;
        }
        b[r] = -dot(r, m);
    }
    let x = crate::linalg::solve_spd(&a, &b, m)?;
    let mut p = basics[m].clone();
    let mut expansion = vec![(lambda.clone(), Q::one())];
    for (i, c) in x.into_iter().enumerate() {
        if !c.is_zero() {
            p = p.add(&basics[i].scale(&c))?;
            expansion.push((ideal[i].clone(), c));
        }
    }
    expansion.sort_by(|u, v| u.0.cmp(&v.0));
    let spectral = spectral_values(rs, i_set, lambda, k)?;
    Ok(JacobiPoly {
        label: lambda.clone(),
        i_set: i_set.to_vec(),
        k: k.clone(),
        poly: p,
        expansion,
        spectral,
    })
}

/// Matrix of inner products `(p_I(lambda,k), p_I(mu,k))_k` over the given
/// labels; diagonal with positive entries when the theory holds.
pub fn gram_matrix(
    rs: &Rs,
    i_set: &[usize],
    k: &Multiplicity,
    labels: &[Weight],
) -> Result<Vec<Vec<Q>>> {
    let delta = delta_k(rs, k)?;
    let polys: Vec<LaurentPoly> = labels
        .iter()
        .map(|l| Ok(jacobi_sym(rs, i_set, l, k)?.poly))
        .collect::<Result<_>>()?;
    let hs: Vec<LaurentPoly> = polys
        .iter()
        .map(|p| p.mul(&delta).expect("same root system"))
        .collect();
    let mut out = vec![vec![Q::zero(); labels.len()]; labels.len()];
    for r in 0..labels.len() {
        for c in 0..labels.len() {
            let mut s = Q::zero();
            for (e, x) in polys[r].terms() {
                if let Some(y) = hs[c].terms().get(e) {
                    s += x * y;
                }
            }
            out[r][c] = s;
        }
    }
    Ok(out)
}

/// The generator pair of the `W_I`-invariant polynomials on the Cartan used
/// throughout the rank-2 computations: the projection vector fixed by `W_I`
/// and the full symmetric quadratic. For `I` empty the coordinates
/// themselves are returned; in general a Reynolds-averaged monomial basis
/// up to degree `rank` is used.
pub fn default_generators(rs: &Rs, i_set: &[usize]) -> Vec<MultiPoly> {
    let n = rs.rank;
    if rs.family == Family::A && n == 2 {
        if i_set == [1] {
            return a2_paper_generators();
        }
        if i_set == [0] {
            // Mirror image: xi fixed by s_1 is xi_3' = -(1/3, 2/3).
            let xi = MultiPoly::linear(&[-qq(1, 3), -qq(2, 3)]);
            return vec![xi, a2_symmetric_quadratic()];
        }
    }
    if i_set.is_empty() {
        return (0..n).map(|i| MultiPoly::var(n, i)).collect();
    }
    reynolds_generators(rs, i_set, n as u32 + 1)
}

/// The A2 generator pair for the parabolic fixed by the second reflection:
/// `xi_1` and `xi_1 xi_2 + xi_1 xi_3 + xi_2 xi_3` written in the basis dual
/// to the fundamental weights.
pub fn a2_paper_generators() -> Vec<MultiPoly> {
    vec![
        MultiPoly::linear(&[qq(2, 3), qq(1, 3)]),
        a2_symmetric_quadratic(),
    ]
}

fn a2_xi_vectors() -> [Vec<Q>; 3] {
    [
        vec![qq(2, 3), qq(1, 3)],
        vec![-qq(1, 3), qq(1, 3)],
        vec![-qq(1, 3), -qq(2, 3)],
    ]
}

fn a2_symmetric_quadratic() -> MultiPoly {
    let [x1, x2, x3] = a2_xi_vectors();
    let l1 = MultiPoly::linear(&x1);
    let l2 = MultiPoly::linear(&x2);
    let l3 = MultiPoly::linear(&x3);
    l1.mul(&l2).add(&l1.mul(&l3)).add(&l2.mul(&l3))
}

/// Averages of all monomials of degree `1..=max_deg` over `W_I`; spans the
/// invariants up to that degree.
pub fn reynolds_generators(rs: &Rs, i_set: &[usize], max_deg: u32) -> Vec<MultiPoly> {
    let n = rs.rank;
    let group = weylgroup::enumerate(rs, i_set);
    let mut all_exps: Vec<Vec<u32>> = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![vec![0; n]];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for e in &level {
            for i in 0..n {
                let mut e2 = e.clone();
                e2[i] += 1;
                next.push(e2);
            }
        }
        next.sort();
        next.dedup();
        all_exps.extend(next.iter().cloned());
        level = next;
    }
    let mut out: Vec<MultiPoly> = Vec::new();
    for e in all_exps {
        let mono = MultiPoly::monomial(n, e, Q::one());
        let mut avg = MultiPoly::zero(n);
        for w in group.iter() {
            avg = avg.add(&crate::cherednik::weyl_act_on_sym(rs, w, &mono));
        }
        if !avg.is_zero() && !out.contains(&avg) {
            out.push(avg);
        }
    }
    out
}

/// `q(lambda_tilde)` for each default generator (no operator application).
fn spectral_values(rs: &Rs, i_set: &[usize], lambda: &Weight, k: &Multiplicity) -> Result<Vec<Q>> {
    let sv = spectral(rs, lambda, k)?;
    let point: Vec<Q> = sv.coords.coords.iter().map(|c| c * &rs.scale).collect();
    Ok(default_generators(rs, i_set)
        .iter()
        .map(|q| q.eval(&point))
        .collect())
}

/// `q(lambda_tilde)` for the supplied generators, with the eigenfunction
/// property `D_{I,q} p_I(lambda,k) = q(lambda_tilde) p_I(lambda,k)` asserted
/// exactly for each generator.
pub fn spectral_data(
    rs: &Rs,
    i_set: &[usize],
    lambda: &Weight,
    k: &Multiplicity,
    gens: &[MultiPoly],
) -> Result<Vec<Q>> {
    let p = jacobi_sym(rs, i_set, lambda, k)?;
    let sv = spectral(rs, lambda, k)?;
    let point: Vec<Q> = sv.coords.coords.iter().map(|c| c * &rs.scale).collect();
    let mut out = Vec::with_capacity(gens.len());
    for q in gens {
        let val = q.eval(&point);
        let applied = d_iq_apply(rs, i_set, q, k, &p.poly)?;
        if applied != p.poly.scale(&val) {
            return Err(Error::InternalInconsistency(format!(
                "eigenfunction property failed at {lambda} for generator {q}"
            )));
        }
        out.push(val);
    }
    Ok(out)
}
