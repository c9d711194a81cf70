//! Weyl group elements, parabolic subgroups, minimal coset representatives,
//! Bruhat order, and the canonical elements attached to a weight.
//!
//! Elements are identified by their integer action matrix on
//! fundamental-weight coordinates; the stored reduced word is always the
//! lexicographically smallest one, recomputed by left-descent recursion, so
//! equality, hashing and the deterministic (length, word) order are all
//! unambiguous.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::Zero;

use crate::error::{Error, Result};
use crate::rootsys::{RatVec, RootSystem, Weight};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElt {
    /// Lexicographically smallest reduced word (0-based simple indices).
    word: Vec<usize>,
    /// Action matrix on fundamental-weight coordinates, row-major.
    mat: Vec<i64>,
    rank: usize,
}

impl WeylElt {
    pub fn identity(rs: &RootSystem) -> Self {
        let n = rs.rank;
        let mut mat = vec![0i64; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        WeylElt {
            word: vec![],
            mat,
            rank: n,
        }
    }

    /// The simple reflection `s_i` (0-based).
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank;
        let mut mat = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                mat[r * n + c] = i64::from(r == c);
                if c == i {
                    mat[r * n + c] -= rs.cartan(r, i);
                }
            }
        }
        WeylElt {
            word: vec![i],
            mat,
            rank: n,
        }
    }

    /// Reconstruct canonical form from an action matrix (word recomputed).
    fn from_mat(rs: &RootSystem, mat: Vec<i64>) -> Self {
        let word = canonical_word(rs, &mat);
        WeylElt {
            word,
            mat,
            rank: rs.rank,
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut w = WeylElt::identity(rs);
        for &i in word {
            w = w.mul(rs, &WeylElt::simple(rs, i));
        }
        w
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn mat(&self) -> &[i64] {
        &self.mat
    }

    /// Product `self * other` (acting as `self(other(lambda))`).
    pub fn mul(&self, rs: &RootSystem, other: &WeylElt) -> WeylElt {
        let n = self.rank;
        let mut mat = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = 0i64;
                for t in 0..n {
                    s += self.mat[r * n + t] * other.mat[t * n + c];
                }
                mat[r * n + c] = s;
            }
        }
        WeylElt::from_mat(rs, mat)
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElt {
        let mut w = WeylElt::identity(rs);
        for &i in self.word.iter().rev() {
            w = w.mul(rs, &WeylElt::simple(rs, i));
        }
        w
    }

    pub fn act(&self, lambda: &Weight) -> Weight {
        let n = self.rank;
        assert_eq!(lambda.rank(), n);
        let num = lambda.num();
        let out: Vec<i64> = (0..n)
            .map(|r| (0..n).map(|c| self.mat[r * n + c] * num[c]).sum())
            .collect();
        Weight::new(out, lambda.den())
    }

    pub fn act_rat(&self, v: &RatVec) -> RatVec {
        let n = self.rank;
        let coords = (0..n)
            .map(|r| {
                let mut s = Q::zero();
                for c in 0..n {
                    s += crate::qz(self.mat[r * n + c]) * &v.coords[c];
                }
                s
            })
            .collect();
        RatVec { coords }
    }

    /// Serialized form: `"e"` or `"s2*s1"` (1-based indices).
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn parse(rs: &RootSystem, s: &str) -> Result<WeylElt> {
        let s = s.trim();
        if s == "e" {
            return Ok(WeylElt::identity(rs));
        }
        let mut word = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let idx: usize = part
                .strip_prefix('s')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad Weyl word `{s}`")))?;
            if idx == 0 || idx > rs.rank {
                return Err(Error::Parse(format!(
                    "reflection index out of range in `{s}`"
                )));
            }
            word.push(idx - 1);
        }
        Ok(WeylElt::from_word(rs, &word))
    }

    /// Deterministic total order: length, then lexicographic word.
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.word.clone())
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word_string())
    }
}

/// Sign of the image of the i-th simple root under the matrix; false = negative.
fn image_sign(rs: &RootSystem, mat: &[i64], i: usize) -> bool {
    let n = rs.rank;
    let coords: Vec<i64> = (0..n)
        .map(|r| (0..n).map(|c| mat[r * n + c] * rs.cartan(c, i)).sum())
        .collect();
    let w = Weight::new(coords, 1);
    rs.as_root(&w).expect("Weyl image of a root is a root").1
}

/// Lexicographically smallest reduced word, by greedy left descents.
fn canonical_word(rs: &RootSystem, mat: &[i64]) -> Vec<usize> {
    let n = rs.rank;
    // Left descent i of w  <=>  w^{-1} alpha_i < 0; iterate on x = w^{-1}.
    let mut x = invert_int(mat, n);
    let mut word = Vec::new();
    let bound = rs.positive_roots().len() + 1;
    loop {
        let mut found = None;
        for i in 0..n {
            if !image_sign(rs, &x, i) {
                found = Some(i);
                break;
            }
        }
        match found {
            None => break,
            Some(i) => {
                word.push(i);
                // w -> s_i w means x -> x * M_i.
                let mi = WeylElt::simple(rs, i);
                let mut nx = vec![0i64; n * n];
                for r in 0..n {
                    for c in 0..n {
                        let mut s = 0i64;
                        for t in 0..n {
                            s += x[r * n + t] * mi.mat[t * n + c];
                        }
                        nx[r * n + c] = s;
                    }
                }
                x = nx;
                assert!(word.len() <= bound, "descent recursion failed to terminate");
            }
        }
    }
    word
}

/// Integer matrix inverse via adjugate; Weyl matrices have det = +-1.
fn invert_int(mat: &[i64], n: usize) -> Vec<i64> {
    fn minor_of(m: &[i64], n: usize, row: usize, col: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == row {
                continue;
            }
            for c in 0..n {
                if c == col {
                    continue;
                }
                out.push(m[r * n + c]);
            }
        }
        out
    }
    fn det(m: &[i64], n: usize) -> i64 {
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0];
        }
        let mut d = 0i64;
        for c in 0..n {
            let minor = minor_of(m, n, 0, c);
            let s = if c % 2 == 0 { 1 } else { -1 };
            d += s * m[c] * det(&minor, n - 1);
        }
        d
    }
    let d = det(mat, n);
    assert!(d == 1 || d == -1, "Weyl matrix determinant must be +-1");
    let mut inv = vec![0i64; n * n];
    for r in 0..n {
        for c in 0..n {
            let minor = minor_of(mat, n, c, r);
            let s = if (r + c) % 2 == 0 { 1 } else { -1 };
            inv[r * n + c] = s * det(&minor, n - 1) * d;
        }
    }
    inv
}

type GroupMemo = Mutex<HashMap<(String, Vec<usize>), Arc<Vec<WeylElt>>>>;

fn rs_key(rs: &RootSystem) -> String {
    format!("{}{}@{}", rs.family, rs.rank, crate::q_str(&rs.scale))
}

fn group_memo() -> &'static GroupMemo {
    static MEMO: OnceLock<GroupMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All elements of the parabolic subgroup `W_I`, in (length, word) order.
pub fn enumerate(rs: &RootSystem, i_set: &[usize]) -> Arc<Vec<WeylElt>> {
    let mut key_i = i_set.to_vec();
    key_i.sort_unstable();
    key_i.dedup();
    let key = (rs_key(rs), key_i.clone());
    if let Some(v) = group_memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let gens: Vec<WeylElt> = key_i.iter().map(|&i| WeylElt::simple(rs, i)).collect();
    let mut seen: HashMap<Vec<i64>, WeylElt> = HashMap::new();
    let e = WeylElt::identity(rs);
    seen.insert(e.mat.clone(), e.clone());
    let mut queue = vec![e];
    while let Some(w) = queue.pop() {
        for g in &gens {
            let p = w.mul(rs, g);
            if !seen.contains_key(&p.mat) {
                seen.insert(p.mat.clone(), p.clone());
                queue.push(p);
            }
        }
    }
    let mut all: Vec<WeylElt> = seen.into_values().collect();
    all.sort_by_key(|w| w.sort_key());
    let arc = Arc::new(all);
    group_memo().lock().unwrap().insert(key, arc.clone());
    arc
}

/// `W^I`: the shortest representatives of `W/W_I`, i.e. the `v` with
/// `v(R_I^+) <= R^+`, sorted by (length, word). This order also fixes the
/// component order of vector-valued polynomials.
pub fn min_coset_reps(rs: &RootSystem, i_set: &[usize]) -> Vec<WeylElt> {
    let all = enumerate(rs, &rs.full_set());
    let reps: Vec<WeylElt> = all
        .iter()
        .filter(|w| i_set.iter().all(|&i| image_sign(rs, &w.mat, i)))
        .cloned()
        .collect();
    let wi = enumerate(rs, i_set);
    assert_eq!(reps.len() * wi.len(), all.len(), "coset count mismatch");
    reps
}

/// Unique decomposition `w = w'' * w'` with `w'' in W^I`, `w' in W_I`
/// and additive lengths.
pub fn coset_decompose(rs: &RootSystem, w: &WeylElt, i_set: &[usize]) -> (WeylElt, WeylElt) {
    let mut u = w.clone();
    let mut picked = Vec::new();
    loop {
        let mut found = None;
        for &i in i_set {
            if !image_sign(rs, &u.mat, i) {
                found = Some(i);
                break;
            }
        }
        match found {
            None => break,
            Some(i) => {
                u = u.mul(rs, &WeylElt::simple(rs, i));
                picked.push(i);
            }
        }
    }
    let mut wp = WeylElt::identity(rs);
    for &i in picked.iter().rev() {
        wp = wp.mul(rs, &WeylElt::simple(rs, i));
    }
    debug_assert_eq!(u.mul(rs, &wp).mat, w.mat);
    debug_assert_eq!(u.len() + wp.len(), w.len());
    (u, wp)
}

struct BruhatTable {
    index: HashMap<Vec<i64>, usize>,
    leq: Vec<bool>,
    size: usize,
}

fn bruhat_table(rs: &RootSystem) -> Arc<BruhatTable> {
    type Memo = Mutex<HashMap<String, Arc<BruhatTable>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = rs_key(rs);
    if let Some(t) = memo.lock().unwrap().get(&key) {
        return t.clone();
    }
    let all = enumerate(rs, &rs.full_set());
    let m = all.len();
    let index: HashMap<Vec<i64>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, w)| (w.mat.clone(), i))
        .collect();
    // Standard descent recursion; elements are sorted by length, so sv and
    // all length-(l-1) data are ready when v is processed.
    let mut leq = vec![false; m * m];
    for (vi, v) in all.iter().enumerate() {
        if v.is_identity() {
            leq[vi * m + vi] = true;
            continue;
        }
        let s = WeylElt::simple(rs, v.word[0]);
        let sv = s.mul(rs, v);
        let svi = index[&sv.mat];
        for (ui, u) in all.iter().enumerate() {
            let su = s.mul(rs, u);
            let sui = index[&su.mat];
            leq[ui * m + vi] = if su.len() < u.len() {
                leq[sui * m + svi]
            } else {
                leq[ui * m + svi]
            };
        }
    }
    let t = Arc::new(BruhatTable {
        index,
        leq,
        size: m,
    });
    memo.lock().unwrap().insert(key, t.clone());
    t
}

/// Bruhat order on `W`.
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElt, v: &WeylElt) -> bool {
    let t = bruhat_table(rs);
    let ui = t.index[&u.mat];
    let vi = t.index[&v.mat];
    t.leq[ui * t.size + vi]
}

/// `R(w) = {alpha in R^+ : w alpha < 0}` as indices into `positive_roots`.
pub fn inversions(rs: &RootSystem, w: &WeylElt) -> Vec<usize> {
    let n = rs.rank;
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            let coords: Vec<i64> = (0..n)
                .map(|row| (0..n).map(|c| w.mat[row * n + c] * r.coords[c]).sum())
                .collect();
            !rs.as_root(&Weight::new(coords, 1)).expect("root image").1
        })
        .map(|(i, _)| i)
        .collect()
}

/// Greedy I-dominant representative: returns `(lambda_{I,+}, u)` with
/// `u in W_I`, `u(lambda) = lambda_{I,+}`. Each step removes exactly one
/// root from `{alpha in R_I^+ : (lambda, alpha) < 0}`, so `u` is of minimal
/// length among elements of `W_I` doing this.
fn make_dominant(rs: &RootSystem, i_set: &[usize], lambda: &Weight) -> (Weight, WeylElt) {
    let mut cur = lambda.clone();
    let mut u = WeylElt::identity(rs);
    loop {
        let mut found = None;
        for &i in i_set {
            if rs.pairing_simple(&cur, i) < Q::zero() {
                found = Some(i);
                break;
            }
        }
        match found {
            None => return (cur, u),
            Some(i) => {
                let s = WeylElt::simple(rs, i);
                cur = s.act(&cur);
                u = s.mul(rs, &u);
            }
        }
    }
}

fn make_antidominant(rs: &RootSystem, i_set: &[usize], lambda: &Weight) -> (Weight, WeylElt) {
    let (neg_plus, u) = make_dominant(rs, i_set, &lambda.neg());
    (neg_plus.neg(), u)
}

/// The canonical elements attached to `(I, lambda)`.
#[derive(Debug, Clone)]
pub struct CanonicalElts {
    /// Unique dominant element of `W * lambda`.
    pub lambda_plus: Weight,
    /// Unique I-dominant element of `W_I * lambda`.
    pub lambda_i_plus: Weight,
    /// Shortest element with `vbar * lambda_plus = lambda`; lies in `W^{lambda_plus}`.
    pub vbar: WeylElt,
    /// Shortest element with `v_min * lambda` antidominant.
    pub v_min: WeylElt,
    /// Shortest element of `W_I` with `vbar_i * lambda_{I,+} = lambda`.
    pub vbar_i: WeylElt,
    /// Stabilizer `W_{I,lambda}` of `lambda` in `W_I`, sorted.
    pub stab_i: Vec<WeylElt>,
    /// `(W_I)^lambda`: shortest representatives of `W_I / W_{I,lambda}`, sorted.
    pub reps_i: Vec<WeylElt>,
    /// Longest element of `W_I`.
    pub w0_i: WeylElt,
    /// Longest element of `W_{I,lambda}`.
    pub w0_i_lambda: WeylElt,
}

pub fn canonical_elements(rs: &RootSystem, i_set: &[usize], lambda: &Weight) -> CanonicalElts {
    let full = rs.full_set();
    let (lambda_plus, u) = make_dominant(rs, &full, lambda);
    // {w : w lambda_plus = lambda} = u^{-1} W_{lambda_plus}; take the
    // minimal coset representative.
    let stab_plus: Vec<usize> = (0..rs.rank)
        .filter(|&i| lambda_plus.num()[i] == 0)
        .collect();
    let vbar = coset_decompose(rs, &u.inverse(rs), &stab_plus).0;
    debug_assert_eq!(vbar.act(&lambda_plus), *lambda);

    let (lambda_minus, p) = make_antidominant(rs, &full, lambda);
    // {w : w lambda = lambda_-} = W_{lambda_-} p; the minimal element is
    // (minimal representative of p^{-1} W_{lambda_-})^{-1}.
    let stab_minus: Vec<usize> = (0..rs.rank)
        .filter(|&i| lambda_minus.num()[i] == 0)
        .collect();
    let v_min = coset_decompose(rs, &p.inverse(rs), &stab_minus)
        .0
        .inverse(rs);
    debug_assert_eq!(v_min.act(lambda), lambda_minus);

    let (lambda_i_plus, ui) = make_dominant(rs, i_set, lambda);
    let stab_i_plus: Vec<usize> = i_set
        .iter()
        .copied()
        .filter(|&i| lambda_i_plus.num()[i] == 0)
        .collect();
    let vbar_i = coset_decompose(rs, &ui.inverse(rs), &stab_i_plus).0;

    let wi = enumerate(rs, i_set);
    let stab_i: Vec<WeylElt> = wi
        .iter()
        .filter(|w| &w.act(lambda) == lambda)
        .cloned()
        .collect();
    // Shortest reps of W_I / W_{I,lambda}: elements of W_I sending every
    // positive root of the stabilizer to a positive root.
    let n = rs.rank;
    let zero_roots: Vec<&crate::rootsys::Root> = rs
        .positive_roots()
        .iter()
        .filter(|r| {
            in_parabolic(rs, r, i_set)
                && lambda
                    .num()
                    .iter()
                    .zip(&r.coroot)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    == 0
        })
        .collect();
    let mut reps_i: Vec<WeylElt> = wi
        .iter()
        .filter(|w| {
            zero_roots.iter().all(|r| {
                let coords: Vec<i64> = (0..n)
                    .map(|row| (0..n).map(|c| w.mat[row * n + c] * r.coords[c]).sum())
                    .collect();
                rs.as_root(&Weight::new(coords, 1)).expect("root image").1
            })
        })
        .cloned()
        .collect();
    reps_i.sort_by_key(|w| w.sort_key());
    assert_eq!(reps_i.len() * stab_i.len(), wi.len());

    let w0_i = wi.last().expect("nonempty group").clone();
    let w0_i_lambda = stab_i
        .iter()
        .max_by_key(|w| w.sort_key())
        .expect("nonempty stabilizer")
        .clone();

    CanonicalElts {
        lambda_plus,
        lambda_i_plus,
        vbar,
        v_min,
        vbar_i,
        stab_i,
        reps_i,
        w0_i,
        w0_i_lambda,
    }
}

fn in_parabolic(rs: &RootSystem, r: &crate::rootsys::Root, i_set: &[usize]) -> bool {
    (0..rs.rank).all(|j| r.root_coords[j] == 0 || i_set.contains(&j))
}
