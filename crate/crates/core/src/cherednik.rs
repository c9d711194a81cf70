//! Cherednik differential-reflection operators, spectral vectors, and the
//! nonsymmetric Jacobi polynomials `E(lambda, k)` by two independent routes:
//! the triangular eigenfunction recursion, and Gram orthogonalization at
//! integer multiplicities.
//!
//! Directions in the Cartan subalgebra are written in the basis dual to the
//! scale-1 fundamental weights, so `lambda(xi_j) = scale * lambda_j`.

use std::collections::HashMap;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{add_term, delta_k, LaurentPoly};
use crate::multipoly::MultiPoly;
use crate::parabolic::lower_ideal;
use crate::rootsys::{Multiplicity, RatVec, Rs, Weight};
use crate::weylgroup::{self, WeylElt};
use crate::{qz, Q};

/// The eigenvalue functional of `E(lambda, k)`, as rational coordinates in
/// the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralVector {
    pub lambda: Weight,
    pub coords: RatVec,
}

impl SpectralVector {
    /// Evaluate at a direction `xi` (coordinates in the dual basis of the
    /// scale-1 fundamental weights).
    pub fn eval(&self, rs: &Rs, xi: &[Q]) -> Q {
        rs.eval_at_xi(&self.coords.coords, xi)
    }
}

/// `lambda_tilde = lambda - v(lambda)^{-1} rho(k)`, cross-checked against
/// the sign form `lambda + (1/2) sum_a k_a eps(<lambda,a^vee>) a` with
/// `eps(0) = -1`.
pub fn spectral(rs: &Rs, lambda: &Weight, k: &Multiplicity) -> Result<SpectralVector> {
    let rho = rs.rho(k);
    let ce = weylgroup::canonical_elements(rs, &[], lambda);
    let route1 = RatVec::from_weight(lambda).sub(&ce.v_min.inverse(rs).act_rat(&rho));

    let mut route2 = RatVec::from_weight(lambda);
    for (idx, root) in rs.positive_roots().iter().enumerate() {
        let pairing = rs.pairing_idx(lambda, idx);
        let eps = if pairing.is_positive() { qz(1) } else { qz(-1) };
        let ka = k.k_at(rs, idx);
        for i in 0..rs.rank {
            route2.coords[i] += &eps * ka * crate::qq(root.coords[i], 2);
        }
    }
    if route1 != route2 {
        return Err(Error::InternalInconsistency(format!(
            "spectral vector routes disagree at {lambda}: {route1} vs {route2}"
        )));
    }
    Ok(SpectralVector {
        lambda: lambda.clone(),
        coords: route1,
    })
}

/// The longest-element form of the spectral vector for I-dominant `lambda`:
/// `lambda_tilde = w_0^{I,lambda} (lambda - w_0^I v(w_0^I lambda)^{-1} rho(k))`.
/// Returns the claimed value for comparison against `spectral`.
pub fn spectral_w0_form(
    rs: &Rs,
    i_set: &[usize],
    lambda: &Weight,
    k: &Multiplicity,
) -> Result<RatVec> {
    if !rs.is_dominant(lambda, i_set) {
        return Err(Error::NotIDominant(lambda.clone()));
    }
    let ce = weylgroup::canonical_elements(rs, i_set, lambda);
    let w0l = ce.w0_i.act(lambda);
    let ce2 = weylgroup::canonical_elements(rs, &[], &w0l);
    let inner = RatVec::from_weight(lambda).sub(
        &ce.w0_i
            .mul(rs, &ce2.v_min.inverse(rs))
            .act_rat(&rs.rho(k)),
    );
    Ok(ce.w0_i_lambda.act_rat(&inner))
}

/// `(1 - e^{-alpha})^{-1} (1 - s_alpha)` on a Laurent polynomial; always a
/// Laurent polynomial again (truncated geometric sums along root strings).
pub fn divided_difference(rs: &Rs, root_idx: usize, f: &LaurentPoly) -> LaurentPoly {
    let alpha = rs.positive_roots()[root_idx].weight();
    let mut out = std::collections::BTreeMap::new();
    for (e, c) in f.terms() {
        let m = rs.pairing_idx(e, root_idx);
        assert!(
            m.is_integer(),
            "divided difference needs integral pairings, got {m} at {e}"
        );
        let m: i64 = i64::try_from(&m.to_integer()).expect("pairing overflow");
        if m > 0 {
            for j in 0..m {
                add_term(&mut out, e.sub(&alpha.scaled(j)), c.clone());
            }
        } else if m < 0 {
            for j in 1..=(-m) {
                add_term(&mut out, e.add(&alpha.scaled(j)), -c.clone());
            }
        }
    }
    LaurentPoly::from_terms(f.rs(), out)
}

/// The Cherednik operator
/// `D_xi(k) = d_xi + sum_{a>0} k_a a(xi) (1-e^{-a})^{-1}(1-s_a) - rho(k)(xi)`.
pub fn cherednik_apply(rs: &Rs, xi: &[Q], k: &Multiplicity, f: &LaurentPoly) -> LaurentPoly {
    let mut out = std::collections::BTreeMap::new();
    // Derivative part: d_xi e^lambda = lambda(xi) e^lambda.
    for (e, c) in f.terms() {
        let v = rs.eval_at_xi(&e.coords(), xi);
        add_term(&mut out, e.clone(), c * v);
    }
    // Reflection parts.
    for (idx, root) in rs.positive_roots().iter().enumerate() {
        let a_xi = rs.eval_at_xi(
            &root.coords.iter().map(|&x| qz(x)).collect::<Vec<_>>(),
            xi,
        );
        if a_xi.is_zero() {
            continue;
        }
        let ka = k.k_at(rs, idx);
        if ka.is_zero() {
            continue;
        }
        let coeff = ka * a_xi;
        let dd = divided_difference(rs, idx, f);
        for (e, c) in dd.terms() {
            add_term(&mut out, e.clone(), c * &coeff);
        }
    }
    // Constant part: -rho(k)(xi).
    let rho_xi = rs.eval_at_xi(&rs.rho(k).coords, xi);
    if !rho_xi.is_zero() {
        for (e, c) in f.terms() {
            add_term(&mut out, e.clone(), -(c * &rho_xi));
        }
    }
    LaurentPoly::from_terms(f.rs(), out)
}

/// Evaluate a polynomial `q` in the commuting Cherednik operators:
/// the monomial `x^a` acts as the composition of the basis operators.
pub fn poly_in_cherednik(rs: &Rs, q: &MultiPoly, k: &Multiplicity, f: &LaurentPoly) -> LaurentPoly {
    assert_eq!(q.nvars(), rs.rank);
    let mut out = LaurentPoly::zero(f.rs());
    for (exp, c) in q.terms() {
        let mut g = f.clone();
        for (j, &p) in exp.iter().enumerate() {
            let mut xi = vec![Q::zero(); rs.rank];
            xi[j] = Q::one();
            for _ in 0..p {
                g = cherednik_apply(rs, &xi, k, &g);
            }
        }
        out = out.add(&g.scale(c)).expect("same root system");
    }
    out
}

/// The restriction `D_{I,q}` of `q(D(k))` to `W_I`-invariants; asserts that
/// the input and output are `W_I`-invariant.
pub fn d_iq_apply(
    rs: &Rs,
    i_set: &[usize],
    q: &MultiPoly,
    k: &Multiplicity,
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    if !f.is_invariant(i_set) {
        return Err(Error::NotInvariant);
    }
    let out = poly_in_cherednik(rs, q, k, f);
    if !out.is_invariant(i_set) {
        return Err(Error::InternalInconsistency(
            "q(D) broke W_I-invariance; q is not W_I-invariant".into(),
        ));
    }
    Ok(out)
}

/// The action of `w` on a polynomial on the dual Cartan: variables transform
/// by the rows of the matrix of `w^{-1}`.
pub fn weyl_act_on_sym(rs: &Rs, w: &WeylElt, q: &MultiPoly) -> MultiPoly {
    let n = rs.rank;
    let winv = w.inverse(rs);
    let m: Vec<Vec<Q>> = (0..n)
        .map(|j| (0..n).map(|i| qz(winv.mat()[j * n + i])).collect())
        .collect();
    q.linear_sub(&m)
}

/// True if `q` is fixed by every simple reflection in `I`.
pub fn is_sym_invariant(rs: &Rs, i_set: &[usize], q: &MultiPoly) -> bool {
    i_set
        .iter()
        .all(|&i| weyl_act_on_sym(rs, &WeylElt::simple(rs, i), q) == *q)
}

/// Nonsymmetric Jacobi polynomial by the triangular eigenfunction recursion:
/// the unique `e^lambda + lower terms` killed by `D_xi(k) - lambda_tilde(xi)`
/// for all `xi`. Requires `lambda_tilde != mu_tilde` along the lower ideal.
pub fn e_poly(rs: &Rs, lambda: &Weight, k: &Multiplicity) -> Result<LaurentPoly> {
    let ideal = lower_ideal(rs, &[], lambda)?;
    let m = ideal.len();
    let index: HashMap<Weight, usize> = ideal
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    debug_assert_eq!(index[lambda], m - 1);

    let spectra: Vec<SpectralVector> = ideal
        .iter()
        .map(|mu| spectral(rs, mu, k))
        .collect::<Result<_>>()?;
    let lam_tilde = &spectra[m - 1];

    let n = rs.rank;
    let units: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut xi = vec![Q::zero(); n];
            xi[j] = Q::one();
            xi
        })
        .collect();

    // Sparse columns of D_{xi_j} on the span of the ideal; any term outside
    // the ideal breaks triangularity and is a hard failure.
    let mut cols: Vec<Vec<Vec<(usize, Q)>>> = vec![Vec::with_capacity(m); n];
    for (j, xi) in units.iter().enumerate() {
        for mu in &ideal {
            let img = cherednik_apply(rs, xi, k, &LaurentPoly::monomial(rs, mu, Q::one()));
            let mut col = Vec::with_capacity(img.num_terms());
            for (e, c) in img.terms() {
                let row = *index.get(e).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "Cherednik operator escaped the lower ideal of {lambda} at {e}"
                    ))
                })?;
                col.push((row, c.clone()));
            }
            cols[j].push(col);
        }
    }

    // Solve top-down in the linear extension: the ideal is sorted ascending
    // and every off-diagonal entry of column nu sits strictly below nu.
    let mut coeffs: Vec<Q> = vec![Q::zero(); m];
    coeffs[m - 1] = Q::one();
    for row in (0..m - 1).rev() {
        // Pick a direction separating lambda_tilde from mu_tilde.
        let mut chosen = None;
        for (j, xi) in units.iter().enumerate() {
            let gap = lam_tilde.eval(rs, xi) - spectra[row].eval(rs, xi);
            if !gap.is_zero() {
                chosen = Some((j, gap));
                break;
            }
        }
        let (j, gap) = chosen.ok_or_else(|| {
            Error::SpectralCollision(lambda.clone(), ideal[row].clone())
        })?;
        // lambda_tilde(xi) c_row = sum_{nu > row} D[row, nu] c_nu + mu_tilde(xi) c_row.
        let mut rhs = Q::zero();
        for nu in (row + 1)..m {
            if coeffs[nu].is_zero() {
                continue;
            }
            for (r, val) in &cols[j][nu] {
                if *r == row {
                    rhs += val * &coeffs[nu];
                }
            }
        }
        coeffs[row] = rhs / gap;
    }

    let mut terms = std::collections::BTreeMap::new();
    for (i, mu) in ideal.iter().enumerate() {
        if !coeffs[i].is_zero() {
            terms.insert(mu.clone(), coeffs[i].clone());
        }
    }
    let e = LaurentPoly::from_terms(rs, terms);

    // Certify the eigen-equations exactly in every basis direction.
    for (j, xi) in units.iter().enumerate() {
        let lhs = cherednik_apply(rs, xi, k, &e);
        let rhs = e.scale(&lam_tilde.eval(rs, xi));
        if lhs != rhs {
            return Err(Error::InternalInconsistency(format!(
                "eigen-equation failed for {lambda} in direction {j}"
            )));
        }
    }
    Ok(e)
}

/// Independent Gram route at integer multiplicities: the unique
/// `e^lambda + lower` orthogonal to every `e^mu` with `mu <_0 lambda`.
pub fn e_poly_gs(rs: &Rs, lambda: &Weight, k: &Multiplicity) -> Result<LaurentPoly> {
    let delta = delta_k(rs, k)?;
    let ideal = lower_ideal(rs, &[], lambda)?;
    let m = ideal.len() - 1; // unknowns: all strictly lower labels
    debug_assert_eq!(&ideal[m], lambda);
    // (e^mu, e^nu)_k = coefficient of (mu - nu) in delta_k.
    let gram_entry = |mu: &Weight, nu: &Weight| -> Q { delta.coeff(&mu.sub(nu)) };
    let mut a = vec![Q::zero(); m * m];
    let mut b = vec![Q::zero(); m];
    for r in 0..m {
        for c in 0..m {
            a[r * m + c] = gram_entry(&ideal[r], &ideal[c]);
        }
        b[r] = -gram_entry(&ideal[r], lambda);
    }
    let x = crate::linalg::solve_spd(&a, &b, m)?;
    let mut terms = std::collections::BTreeMap::new();
    terms.insert(lambda.clone(), Q::one());
    for (i, c) in x.into_iter().enumerate() {
        if !c.is_zero() {
            terms.insert(ideal[i].clone(), c);
        }
    }
    Ok(LaurentPoly::from_terms(rs, terms))
}
