//! Rewriting W-invariant Laurent polynomials as genuine polynomials in the
//! fundamental invariants, the Steinberg generator matrix and its
//! determinant identity, free-module coordinates, the matrix weight, and
//! the matrix-valued orthogonal polynomials assembled from the vector ones.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{orbit_sum, LaurentPoly};
use crate::multipoly::MultiPoly;
use crate::parabolic::steinberg_generators;
use crate::rootsys::{Multiplicity, Rs, Weight};
use crate::vectorize::{big_p, gamma, VectorPoly};
use crate::weylgroup::{self, WeylElt};
use crate::Q;

/// The fundamental invariants: orbit sums of the fundamental weights.
/// `C[P]^W` is the polynomial ring on these.
pub fn fundamental_invariants(rs: &Rs) -> Vec<LaurentPoly> {
    (0..rs.rank)
        .map(|i| orbit_sum(rs, &rs.full_set(), &rs.fundamental_weight(i)).expect("dominant"))
        .collect()
}

/// `prod_i chi_i^{a_i}`, memoized per root system: the rewrite loop hits
/// the same powers over and over.
fn chi_power(rs: &Rs, chis: &[LaurentPoly], exp: &[u32]) -> LaurentPoly {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    type Memo = Mutex<HashMap<(String, Vec<u32>), LaurentPoly>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (
        format!("{}{}@{}", rs.family, rs.rank, crate::q_str(&rs.scale)),
        exp.to_vec(),
    );
    if let Some(p) = memo.lock().unwrap().get(&key) {
        return p.clone();
    }
    // Recurse on a decremented exponent so all intermediate powers land in
    // the memo too.
    let out = match exp.iter().position(|&e| e > 0) {
        None => LaurentPoly::one(rs),
        Some(i) => {
            let mut lower = exp.to_vec();
            lower[i] -= 1;
            chi_power(rs, chis, &lower)
                .mul(&chis[i])
                .expect("same root system")
        }
    };
    memo.lock().unwrap().insert(key, out.clone());
    out
}

/// Rewrite an exactly W-invariant Laurent polynomial as a polynomial in the
/// fundamental invariants, by repeatedly cancelling a dominance-maximal
/// dominant exponent. The result substitutes back to the input exactly.
pub fn to_chi(rs: &Rs, f: &LaurentPoly) -> Result<MultiPoly> {
    if !f.is_invariant(&rs.full_set()) {
        return Err(Error::NotWInvariant);
    }
    let chis = fundamental_invariants(rs);
    let mut g = f.clone();
    let mut out = MultiPoly::zero(rs.rank);
    let mut guard = 0usize;
    while !g.is_zero() {
        guard += 1;
        assert!(guard < 100_000, "chi reduction failed to terminate");
        // A height-maximal dominant exponent is dominance-maximal.
        let lead = g
            .terms()
            .keys()
            .filter(|w| rs.is_dominant(w, &rs.full_set()))
            .max_by_key(|w| {
                let ht: Q = rs
                    .root_basis_coords(w)
                    .iter()
                    .fold(Q::zero(), |a, b| a + b);
                (ht, (*w).clone())
            })
            .ok_or(Error::NotWInvariant)?
            .clone();
        if !lead.is_integral() {
            return Err(Error::NotWInvariant);
        }
        let c = g.coeff(&lead);
        let exp: Vec<u32> = lead
            .num()
            .iter()
            .map(|&x| u32::try_from(x).expect("dominant exponent is nonnegative"))
            .collect();
        out = out.add(&MultiPoly::monomial(rs.rank, exp.clone(), c.clone()));
        g = g.sub(&chi_power(rs, &chis, &exp).scale(&c))?;
    }
    Ok(out)
}

/// Substitute the fundamental invariants back into a chi-polynomial.
pub fn chi_substitute(rs: &Rs, p: &MultiPoly) -> LaurentPoly {
    let chis = fundamental_invariants(rs);
    p.eval_generic(
        LaurentPoly::zero(rs),
        LaurentPoly::one(rs),
        |a, b| a.mul(b).expect("same root system"),
        |acc, t, c| acc.add(&t.scale(c)).expect("same root system"),
        &chis,
    )
}

/// Determinant of a square matrix of Laurent polynomials (cofactor
/// expansion; sizes here are at most `|W|`).
pub fn laurent_det(rs: &Rs, mat: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let m = mat.len();
    if m == 0 {
        return LaurentPoly::one(rs);
    }
    if m == 1 {
        return mat[0][0].clone();
    }
    let mut det = LaurentPoly::zero(rs);
    for (col, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&laurent_det(rs, &minor)).expect("same rs");
        det = if col % 2 == 0 {
            det.add(&term).expect("same rs")
        } else {
            det.sub(&term).expect("same rs")
        };
    }
    det
}

/// The Steinberg matrix: columns are the coset-averaged generator vectors,
/// rows the components in the canonical order. Carries the verified
/// determinant factorization data.
#[derive(Debug, Clone)]
pub struct SteinbergMatrix {
    pub rs: Rs,
    pub i_set: Vec<usize>,
    /// `mat[row u][col v]` = component `u` of the `v`-th generator vector.
    pub mat: Vec<Vec<LaurentPoly>>,
    pub det: LaurentPoly,
    /// Number of coset pairs interchanged by each positive-root reflection.
    pub n_alpha: Vec<u32>,
    /// Sign relating `det` to the product formula.
    pub sign: i64,
    /// Adjugate, row-major: `adj[v][u]` with `adj * mat = det * Id`.
    adj: Vec<Vec<LaurentPoly>>,
}

/// The number of pairs in `W/W_I` interchanged by `s_alpha`.
pub fn pair_count(rs: &Rs, i_set: &[usize], root_idx: usize) -> u32 {
    let reps = weylgroup::min_coset_reps(rs, i_set);
    let alpha = rs.positive_roots()[root_idx].weight();
    // Reflection s_alpha as a Weyl element: acts on fundamental coords by
    // lambda - <lambda, alpha^vee> alpha.
    let s = reflection(rs, &alpha);
    let mut moved = 0;
    for v in &reps {
        let img = s.mul(rs, v);
        let (rep, _) = weylgroup::coset_decompose(rs, &img, i_set);
        if &rep != v {
            moved += 1;
        }
    }
    assert!(moved % 2 == 0);
    moved / 2
}

fn reflection(rs: &Rs, alpha: &Weight) -> WeylElt {
    // Build s_alpha from a word: conjugate of a simple reflection; here we
    // just locate it inside W by its action.
    let all = weylgroup::enumerate(rs, &rs.full_set());
    let idx = rs.as_root(alpha).expect("alpha must be a root").0;
    let coroot_pairing = |lam: &Weight| rs.pairing_idx(lam, idx);
    for w in all.iter() {
        let mut is_refl = true;
        for i in 0..rs.rank {
            let fw = rs.fundamental_weight(i);
            let expect = {
                let p = coroot_pairing(&fw);
                let pi = i64::try_from(&p.to_integer()).expect("integral pairing");
                fw.sub(&alpha.scaled(pi))
            };
            if w.act(&fw) != expect {
                is_refl = false;
                break;
            }
        }
        if is_refl {
            return w.clone();
        }
    }
    unreachable!("every root has a reflection in W");
}

pub fn steinberg_matrix(rs: &Rs, i_set: &[usize]) -> SteinbergMatrix {
    let gens = steinberg_generators(rs, i_set);
    let m = gens.len();
    let cols: Vec<VectorPoly> = gens
        .iter()
        .map(|g| gamma(rs, i_set, &g.phi).expect("phi is W_I-invariant"))
        .collect();
    let mat: Vec<Vec<LaurentPoly>> = (0..m)
        .map(|row| (0..m).map(|col| cols[col].comps()[row].clone()).collect())
        .collect();
    let det = laurent_det(rs, &mat);

    let n_alpha: Vec<u32> = (0..rs.positive_roots().len())
        .map(|idx| pair_count(rs, i_set, idx))
        .collect();
    let mut expected = LaurentPoly::one(rs);
    for (idx, root) in rs.positive_roots().iter().enumerate() {
        let half = root.weight().half();
        let factor = LaurentPoly::monomial(rs, &half, Q::one())
            .sub(&LaurentPoly::monomial(rs, &half.neg(), Q::one()))
            .expect("same rs");
        for _ in 0..n_alpha[idx] {
            expected = expected.mul(&factor).expect("same rs");
        }
    }
    let sign = if det == expected {
        1
    } else if det == expected.neg() {
        -1
    } else {
        panic!("Steinberg determinant does not match the product formula");
    };

    // Adjugate from cofactors of the (small) generator matrix.
    let minor_det = |row: usize, col: usize| -> LaurentPoly {
        let minor: Vec<Vec<LaurentPoly>> = (0..m)
            .filter(|r| *r != row)
            .map(|r| {
                (0..m)
                    .filter(|c| *c != col)
                    .map(|c| mat[r][c].clone())
                    .collect()
            })
            .collect();
        laurent_det(rs, &minor)
    };
    let adj: Vec<Vec<LaurentPoly>> = (0..m)
        .map(|v| {
            (0..m)
                .map(|u| {
                    let d = minor_det(u, v);
                    if (u + v) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect();

    SteinbergMatrix {
        rs: rs.clone(),
        i_set: i_set.to_vec(),
        mat,
        det,
        n_alpha,
        sign,
        adj,
    }
}

impl SteinbergMatrix {
    /// Unique coordinates `f_v` with `Phi = sum_v f_v Gamma(phi_v)`, by the
    /// adjugate of the matrix and exact division by its determinant. A
    /// division failure would contradict freeness and surfaces as an error.
    pub fn coordinates(&self, phi: &VectorPoly) -> Result<Vec<LaurentPoly>> {
        let m = self.mat.len();
        assert_eq!(phi.comps().len(), m);
        let mut out = Vec::with_capacity(m);
        for v in 0..m {
            // f_v = (adjugate row v) . Phi / det.
            let mut num = LaurentPoly::zero(&self.rs);
            for u in 0..m {
                num = num.add(&self.adj[v][u].mul(&phi.comps()[u])?)?;
            }
            let f = num.exact_div(&self.det)?;
            if !f.is_invariant(&self.rs.full_set()) {
                return Err(Error::NotWInvariant);
            }
            out.push(f);
        }
        Ok(out)
    }

    /// The matrix weight: entries `to_chi` of `(star Phi)^t Phi`.
    pub fn weight_matrix(&self) -> Result<Vec<Vec<MultiPoly>>> {
        let m = self.mat.len();
        let mut out = vec![vec![MultiPoly::zero(self.rs.rank); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut s = LaurentPoly::zero(&self.rs);
                for u in 0..m {
                    s = s.add(&self.mat[u][i].star().mul(&self.mat[u][j])?)?;
                }
                out[i][j] = to_chi(&self.rs, &s)?;
            }
        }
        Ok(out)
    }
}

/// `script_p`: the vector Jacobi polynomial in free-module coordinates,
/// rewritten in the fundamental invariants.
pub fn script_p(
    rs: &Rs,
    i_set: &[usize],
    lambda: &Weight,
    k: &Multiplicity,
) -> Result<Vec<MultiPoly>> {
    let sm = steinberg_matrix(rs, i_set);
    script_p_with(rs, &sm, lambda, k)
}

/// Same, reusing a precomputed Steinberg matrix.
pub fn script_p_with(
    rs: &Rs,
    sm: &SteinbergMatrix,
    lambda: &Weight,
    k: &Multiplicity,
) -> Result<Vec<MultiPoly>> {
    let p = big_p(rs, &sm.i_set, lambda, k)?;
    script_p_from_vector(rs, sm, &p)
}

/// Coordinates-and-rewrite of an already-computed vector polynomial.
pub fn script_p_from_vector(
    rs: &Rs,
    sm: &SteinbergMatrix,
    phi: &VectorPoly,
) -> Result<Vec<MultiPoly>> {
    let coords = sm.coordinates(phi)?;
    coords.iter().map(|f| to_chi(rs, f)).collect()
}

/// The matrix weight `W_I` for the pairing of the genuine-polynomial side.
pub fn weight_matrix(rs: &Rs, i_set: &[usize]) -> Result<Vec<Vec<MultiPoly>>> {
    steinberg_matrix(rs, i_set).weight_matrix()
}

/// The matrix-valued orthogonal polynomial with columns labelled by the
/// minimal coset representatives: column `v` is `script_p` at
/// `v^{-1}(lambda_v + sigma)`.
pub fn mvop_matrix(
    rs: &Rs,
    i_set: &[usize],
    sigma: &Weight,
    k: &Multiplicity,
) -> Result<Vec<Vec<MultiPoly>>> {
    if !rs.is_dominant(sigma, &rs.full_set()) {
        return Err(Error::NotIDominant(sigma.clone()));
    }
    let sm = steinberg_matrix(rs, i_set);
    let reps = weylgroup::min_coset_reps(rs, i_set);
    let m = reps.len();
    let mut cols = Vec::with_capacity(m);
    for v in &reps {
        let label = crate::parabolic::f_i(rs, i_set, v, sigma);
        cols.push(script_p_with(rs, &sm, &label, k)?);
    }
    // Transpose into row-major entries.
    let out = (0..m)
        .map(|row| (0..m).map(|col| cols[col][row].clone()).collect())
        .collect();
    Ok(out)
}

/// Pull a coordinate vector of chi-polynomials back to the torus:
/// substitute the invariants and multiply by the Steinberg matrix. For
/// columns produced by `script_p` this recovers the vector Jacobi
/// polynomial exactly, realizing the unitary pullback of the
/// genuine-polynomial pairing.
pub fn pull_back_column(rs: &Rs, sm: &SteinbergMatrix, col: &[MultiPoly]) -> Result<VectorPoly> {
    let m = sm.mat.len();
    assert_eq!(col.len(), m);
    let subs: Vec<LaurentPoly> = col.iter().map(|p| chi_substitute(rs, p)).collect();
    let comps: Vec<LaurentPoly> = (0..m)
        .map(|row| {
            let mut s = LaurentPoly::zero(rs);
            for v in 0..m {
                s = s.add(&sm.mat[row][v].mul(&subs[v])?)?;
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(VectorPoly::new(rs, &sm.i_set, comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use num::Signed;
    use crate::vectorize::vec_inner;
    use crate::{qq, qz};
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

    fn kc(rs: &Rs, k: Q) -> Multiplicity {
        Multiplicity::constant(rs, k).unwrap()
    }

    #[test]
    fn fundamental_invariants_examples() {
        let r1 = a1();
        let chi = fundamental_invariants(&r1);
        let expect = LaurentPoly::monomial(&r1, &w(vec![1]), Q::one())
            .add(&LaurentPoly::monomial(&r1, &w(vec![-1]), Q::one()))
            .unwrap();
        assert_eq!(chi[0], expect);

        let r2 = a2();
        let chi2 = fundamental_invariants(&r2);
        assert_eq!(chi2[0].num_terms(), 3);
        assert_eq!(chi2[0].coeff(&w(vec![1, 0])), Q::one());
        assert_eq!(chi2[0].coeff(&w(vec![-1, 1])), Q::one());
        assert_eq!(chi2[0].coeff(&w(vec![0, -1])), Q::one());
    }

    #[test]
    fn to_chi_examples() {
        let rs = a2();
        let chi = fundamental_invariants(&rs);
        // to_chi(chi_1) = x1.
        assert_eq!(to_chi(&rs, &chi[0]).unwrap(), MultiPoly::var(2, 0));
        // to_chi(1) = 1.
        assert_eq!(
            to_chi(&rs, &LaurentPoly::one(&rs)).unwrap(),
            MultiPoly::one(2)
        );
        // to_chi(m_S(rho)) = x1 x2 - 3.
        let m_rho = orbit_sum(&rs, &rs.full_set(), &w(vec![1, 1])).unwrap();
        let expect = MultiPoly::var(2, 0)
            .mul(&MultiPoly::var(2, 1))
            .sub(&MultiPoly::constant(2, qz(3)));
        assert_eq!(to_chi(&rs, &m_rho).unwrap(), expect);
        // Non-invariant input is rejected.
        assert!(matches!(
            to_chi(&rs, &LaurentPoly::monomial(&rs, &w(vec![1, 0]), Q::one())),
            Err(Error::NotWInvariant)
        ));
    }

    #[test]
    fn substitution_exactness_random() {
        use rand::{Rng, SeedableRng};
        let rs = a2();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(21);
        for _ in 0..15 {
            // Random W-invariant: rational combination of orbit sums.
            let mut f = LaurentPoly::zero(&rs);
            for _ in 0..rng.gen_range(1..=3) {
                let a = rng.gen_range(0i64..=3);
                let b = rng.gen_range(0i64..=3);
                let c = rng.gen_range(-4i64..=4);
                let m = orbit_sum(&rs, &rs.full_set(), &w(vec![a, b])).unwrap();
                f = f.add(&m.scale(&qz(c))).unwrap();
            }
            let p = to_chi(&rs, &f).unwrap();
            assert_eq!(chi_substitute(&rs, &p), f);
        }
    }

    #[test]
    fn steinberg_matrix_a2() {
        let rs = a2();
        let sm = steinberg_matrix(&rs, &[1]);
        // n_alpha = 1 for each of the three positive roots.
        assert_eq!(sm.n_alpha, vec![1, 1, 1]);
        // det = prod_{a>0} (e^{a/2} - e^{-a/2}), sign +1.
        assert_eq!(sm.sign, 1);
        let mut expect = LaurentPoly::one(&rs);
        for r in rs.positive_roots() {
            let half = r.weight().half();
            expect = expect
                .mul(
                    &LaurentPoly::monomial(&rs, &half, Q::one())
                        .sub(&LaurentPoly::monomial(&rs, &half.neg(), Q::one()))
                        .unwrap(),
                )
                .unwrap();
        }
        assert_eq!(sm.det, expect);

        // I = S: single entry 1, empty product.
        let sms = steinberg_matrix(&rs, &[0, 1]);
        assert_eq!(sms.mat.len(), 1);
        assert_eq!(sms.det, LaurentPoly::one(&rs));
        assert_eq!(sms.n_alpha, vec![0, 0, 0]);
    }

    #[test]
    fn pair_count_oracle_a2() {
        // Oracle: the explicit action of each reflection on the three
        // cosets {eW', s1 W', s2s1 W'} swaps exactly one pair.
        let rs = a2();
        for idx in 0..3 {
            assert_eq!(pair_count(&rs, &[1], idx), 1);
        }
        // For I = empty, each reflection is fixed-point free on W: 3 pairs.
        for idx in 0..3 {
            assert_eq!(pair_count(&rs, &[], idx), 3);
        }
    }

    #[test]
    fn det_identity_all_i_a1_a2() {
        let r1 = a1();
        for i_set in [vec![], vec![0]] {
            let _ = steinberg_matrix(&r1, &i_set); // panics on mismatch
        }
        let r2 = a2();
        for i_set in [vec![], vec![1], vec![0, 1]] {
            let _ = steinberg_matrix(&r2, &i_set);
        }
    }

    #[test]
    fn coordinates_examples() {
        let rs = a2();
        let i = [1usize];
        let sm = steinberg_matrix(&rs, &i);
        // Gamma(1) -> (1, 0, 0).
        let g1 = gamma(&rs, &i, &LaurentPoly::one(&rs)).unwrap();
        let c = sm.coordinates(&g1).unwrap();
        assert_eq!(c[0], LaurentPoly::one(&rs));
        assert!(c[1].is_zero() && c[2].is_zero());
        // Gamma(chi_1 * 1) -> (chi_1, 0, 0).
        let chi1 = fundamental_invariants(&rs)[0].clone();
        let gc = gamma(&rs, &i, &chi1).unwrap();
        let c2 = sm.coordinates(&gc).unwrap();
        assert_eq!(c2[0], chi1);
        assert!(c2[1].is_zero() && c2[2].is_zero());
    }

    #[test]
    fn coordinates_of_jacobi_vector() {
        // P_I(-fw1, k) decomposes as (k/(1+k)) chi_2 phi_e + (1/(1+k)) phi_{s2s1}:
        // m_I(fw2) = chi_2 phi_e - phi_{s2s1}, so the top coordinate is
        // 1/(1+k), which is 1/2 at k = 1.
        let rs = a2();
        let i = [1usize];
        let k = kc(&rs, qz(1));
        let sm = steinberg_matrix(&rs, &i);
        let p = big_p(&rs, &i, &w(vec![-1, 0]), &k).unwrap();
        let c = sm.coordinates(&p).unwrap();
        assert_eq!(c[2].constant_term(), qq(1, 2));
        assert!(c[1].is_zero());
        let chi2 = fundamental_invariants(&rs)[1].clone();
        assert_eq!(c[0], chi2.scale(&qq(1, 2)));
        // Reconstruction: sum_v f_v Gamma(phi_v) = Phi.
        let gens = steinberg_generators(&rs, &i);
        let mut rebuilt = crate::vectorize::VectorPoly::zero(&rs, &i);
        for (f, g) in c.iter().zip(&gens) {
            let gv = gamma(&rs, &i, &g.phi).unwrap();
            let scaled: Vec<LaurentPoly> = gv
                .comps()
                .iter()
                .map(|comp| comp.mul(f).unwrap())
                .collect();
            rebuilt = rebuilt
                .add(&crate::vectorize::VectorPoly::new(&rs, &i, scaled))
                .unwrap();
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn freeness_random_sample() {
        use rand::{Rng, SeedableRng};
        let rs = a2();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(33);
        for i_set in [vec![1], vec![0, 1]] {
            let sm = steinberg_matrix(&rs, &i_set);
            let gens = steinberg_generators(&rs, &i_set);
            for _ in 0..10 {
                // Random element of the free module: sum f_v Gamma(phi_v)
                // with random W-invariant f_v.
                let mut phi = crate::vectorize::VectorPoly::zero(&rs, &i_set);
                let mut coeffs = Vec::new();
                for g in &gens {
                    let mut f = LaurentPoly::zero(&rs);
                    for _ in 0..rng.gen_range(0..=2) {
                        let a = rng.gen_range(0i64..=2);
                        let b = rng.gen_range(0i64..=2);
                        let c = rng.gen_range(-3i64..=3);
                        f = f
                            .add(
                                &orbit_sum(&rs, &rs.full_set(), &w(vec![a, b]))
                                    .unwrap()
                                    .scale(&qz(c)),
                            )
                            .unwrap();
                    }
                    coeffs.push(f.clone());
                    let gv = gamma(&rs, &i_set, &g.phi).unwrap();
                    let scaled: Vec<LaurentPoly> = gv
                        .comps()
                        .iter()
                        .map(|comp| comp.mul(&f).unwrap())
                        .collect();
                    phi = phi
                        .add(&crate::vectorize::VectorPoly::new(&rs, &i_set, scaled))
                        .unwrap();
                }
                let rec = sm.coordinates(&phi).unwrap();
                assert_eq!(rec, coeffs);
            }
        }
    }

    #[test]
    fn weight_matrix_entry_example() {
        let rs = a2();
        let wm = weight_matrix(&rs, &[1]).unwrap();
        // (1,1) entry: columns Gamma(phi_e) = (1,1,1): sum star(1)*1 = 3.
        assert_eq!(wm[0][0], MultiPoly::constant(2, qz(3)));
        // Hermitean structure under star-transpose: W[i][j](chi) substitutes
        // back to star of the (j,i) substitution.
        for i in 0..3 {
            for j in 0..3 {
                let a = chi_substitute(&rs, &wm[i][j]);
                let b = chi_substitute(&rs, &wm[j][i]).star();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn script_p_examples() {
        let rs = a2();
        let i = [1usize];
        let k = kc(&rs, qz(1));
        let p0 = script_p(&rs, &i, &Weight::zero(2), &k).unwrap();
        assert_eq!(p0[0], MultiPoly::one(2));
        assert!(p0[1].is_zero() && p0[2].is_zero());
        // Pure Steinberg label: constant coordinate 1/(1+k) at its slot and a
        // scalar multiple of a fundamental invariant in the leading slot.
        let p = script_p(&rs, &i, &w(vec![-1, 0]), &k).unwrap();
        assert_eq!(p[2].coeff(&[0, 0]), qq(1, 2));
        assert_eq!(p[0], MultiPoly::var(2, 1).scale(&qq(1, 2)));
    }

    #[test]
    fn mvop_zero_sigma_structure() {
        let rs = a2();
        let i = [1usize];
        let k = kc(&rs, qz(1));
        let m = mvop_matrix(&rs, &i, &Weight::zero(2), &k).unwrap();
        // First column is (1, 0, 0)^t.
        assert_eq!(m[0][0], MultiPoly::one(2));
        assert!(m[1][0].is_zero() && m[2][0].is_zero());
        // Column v has a nonzero constant coefficient in row v; at k = 1 the
        // values are 1, 1/(1+2k) = 1/3 and 1/(1+k) = 1/2.
        let expect = [Q::one(), qq(1, 3), qq(1, 2)];
        for v in 0..3 {
            assert_eq!(m[v][v].coeff(&[0, 0]), expect[v], "column {v}");
        }
    }

    #[test]
    fn pull_back_recovers_vector_polynomial() {
        let rs = a2();
        let i = [1usize];
        let k = kc(&rs, qz(1));
        let sm = steinberg_matrix(&rs, &i);
        for lam in [w(vec![-1, 0]), w(vec![1, 1]), w(vec![-2, 1])] {
            let col = script_p_with(&rs, &sm, &lam, &k).unwrap();
            let back = pull_back_column(&rs, &sm, &col).unwrap();
            assert_eq!(back, big_p(&rs, &i, &lam, &k).unwrap());
        }
    }

    #[test]
    fn mvop_columns_orthogonal_small() {
        // Columns across different sigma and within one sigma are orthogonal
        // in the pulled-back pairing.
        let rs = a2();
        let i = [1usize];
        let k = kc(&rs, qz(1));
        let sm = steinberg_matrix(&rs, &i);
        let sigmas = [Weight::zero(2), w(vec![1, 0]), w(vec![0, 1])];
        let mut pulled: Vec<Vec<crate::vectorize::VectorPoly>> = Vec::new();
        for s in &sigmas {
            let m = mvop_matrix(&rs, &i, s, &k).unwrap();
            let cols: Vec<_> = (0..3)
                .map(|v| {
                    let col: Vec<MultiPoly> = (0..3).map(|r| m[r][v].clone()).collect();
                    pull_back_column(&rs, &sm, &col).unwrap()
                })
                .collect();
            pulled.push(cols);
        }
        for (si, cols_i) in pulled.iter().enumerate() {
            for (sj, cols_j) in pulled.iter().enumerate() {
                for (vi, ci) in cols_i.iter().enumerate() {
                    for (vj, cj) in cols_j.iter().enumerate() {
                        if si == sj && vi == vj {
                            assert!(vec_inner(ci, cj, &k).unwrap().is_positive());
                        } else {
                            assert_eq!(
                                vec_inner(ci, cj, &k).unwrap(),
                                Q::zero(),
                                "sigma {si} col {vi} vs sigma {sj} col {vj}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_lookup() {
        let rs = a2();
        // The reflection at the highest root is s1 s2 s1.
        let theta = rs.positive_roots()[2].weight();
        let s = reflection(&rs, &theta);
        assert_eq!(s.word_string(), "s1*s2*s1");
        let _ = qq(1, 2);
    }
}
