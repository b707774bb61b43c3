//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! (degree selection after Higham, SIAM J. Matrix Anal. Appl. 26 (2005)).

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

const THETA: [(usize, f64); 5] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
    (13, 5.371920351148152e0),
];

fn pade_coefficients(m: usize) -> &'static [f64] {
    match m {
        3 => &[120.0, 60.0, 12.0, 1.0],
        5 => &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0],
        7 => &[17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0],
        9 => &[
            17643225600.0,
            8821612800.0,
            2075673600.0,
            302702400.0,
            30270240.0,
            2162160.0,
            110880.0,
            3960.0,
            90.0,
            1.0,
        ],
        13 => &[
            64764752532480000.0,
            32382376266240000.0,
            7771770303897600.0,
            1187353796428800.0,
            129060195264000.0,
            10559470521600.0,
            670442572800.0,
            33522128640.0,
            1323241920.0,
            40840800.0,
            960960.0,
            16380.0,
            182.0,
            1.0,
        ],
        _ => unreachable!("unsupported Padé degree {m}"),
    }
}

fn lin_comb(terms: &[(f64, &CMatrix)]) -> CMatrix {
    let (r, c) = terms[0].1.shape();
    let mut out = CMatrix::zeros(r, c);
    for &(w, m) in terms {
        if w != 0.0 {
            out += &m.scale_real(w);
        }
    }
    out
}

/// `exp(A)` for a square complex matrix.
pub fn mat_exp(a: &CMatrix) -> Result<CMatrix> {
    let n = a.ensure_square("mat_exp")?;
    let norm = a.norm_one();
    if !norm.is_finite() {
        return Err(Error::Overflow("mat_exp: non-finite input norm".into()));
    }
    if norm == 0.0 {
        return Ok(CMatrix::identity(n));
    }
    let id = CMatrix::identity(n);

    for &(m, theta) in &THETA[..4] {
        if norm <= theta {
            return pade_low(a, m, &id);
        }
    }

    let theta13 = THETA[4].1;
    let s = ((norm / theta13).log2().ceil()).max(0.0);
    if s > 1000.0 {
        return Err(Error::Overflow(format!("mat_exp: norm {norm:.3e} too large")));
    }
    let s = s as i32;
    let scaled = a.scale_real(2f64.powi(-s));
    let mut result = pade13(&scaled, &id)?;
    for _ in 0..s {
        result = &result * &result;
    }
    if result.has_non_finite() {
        return Err(Error::Overflow("mat_exp: result overflowed".into()));
    }
    Ok(result)
}

fn pade_low(a: &CMatrix, m: usize, id: &CMatrix) -> Result<CMatrix> {
    let b = pade_coefficients(m);
    let a2 = a * a;
    let mut powers = vec![id.clone(), a2.clone()];
    for _ in 2..=m / 2 {
        let next = powers.last().expect("non-empty") * &a2;
        powers.push(next);
    }
    let odd: Vec<(f64, &CMatrix)> = (0..=m / 2).map(|k| (b[2 * k + 1], &powers[k])).collect();
    let even: Vec<(f64, &CMatrix)> = (0..=m / 2).map(|k| (b[2 * k], &powers[k])).collect();
    let u = a * &lin_comb(&odd);
    let v = lin_comb(&even);
    solve_pade(&u, &v)
}

fn pade13(a: &CMatrix, id: &CMatrix) -> Result<CMatrix> {
    let b = pade_coefficients(13);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = lin_comb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]);
    let u = a * &(&(&a6 * &inner_u) + &lin_comb(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], id)]));
    let inner_v = lin_comb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]);
    let v = &(&a6 * &inner_v) + &lin_comb(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], id)]);
    solve_pade(&u, &v)
}

// r = (V − U)^{-1} (V + U)
fn solve_pade(u: &CMatrix, v: &CMatrix) -> Result<CMatrix> {
    let p = v + u;
    let q = v - u;
    q.solve(&p).map_err(|_| Error::Overflow("mat_exp: singular Padé denominator".into()))
}

/// `exp(−i h t)` for a hermitian generator.
pub fn unitary_propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    mat_exp(&h.scale(Complex64::new(0.0, -t)))
}
