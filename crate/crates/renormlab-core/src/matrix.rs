//! Dense linear algebra at working precision.
//!
//! Small (N ~ 40-50) real matrices arise as truncated linearizations of the
//! renormalization operator. The eigensolver is the classical pipeline:
//! radix-2 balancing, Householder reduction to Hessenberg form, Francis
//! double-shift QR to real Schur form with accumulated transforms, and
//! eigenvalues off the 1x1/2x2 diagonal blocks. The accumulated Schur
//! factorization gives an a-posteriori residual certificate covering every
//! eigenvalue at once.

use crate::error::{Error, Result};
use crate::real::{Prec, Real};

#[derive(Clone, Debug)]
pub struct Matrix {
    pub n: usize,
    a: Vec<Real>,
}

impl Matrix {
    pub fn zeros(prec: Prec, n: usize) -> Self {
        Matrix {
            n,
            a: vec![prec.zero(); n * n],
        }
    }

    pub fn identity(prec: Prec, n: usize) -> Self {
        let mut m = Matrix::zeros(prec, n);
        for i in 0..n {
            *m.at_mut(i, i) = prec.one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Real>(n: usize, mut f: F) -> Self {
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(f(i, j));
            }
        }
        Matrix { n, a }
    }

    pub fn at(&self, i: usize, j: usize) -> &Real {
        &self.a[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Real {
        &mut self.a[i * self.n + j]
    }

    pub fn frobenius(&self) -> Real {
        let mut s = self.a[0].zero_like();
        for v in &self.a {
            s += &v.square();
        }
        s.sqrt()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut s = self.a[0].zero_like();
            for k in 0..n {
                s += &(self.at(i, k) * other.at(k, j));
            }
            s
        })
    }

    pub fn mul_vec(&self, x: &[Real]) -> Vec<Real> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut s = self.a[0].zero_like();
                for k in 0..n {
                    s += &(self.at(i, k) * &x[k]);
                }
                s
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.at(i, j) - other.at(i, j))
    }
}

// ---------------------------------------------------------------------------
// LU with partial pivoting
// ---------------------------------------------------------------------------

pub struct Lu {
    lu: Matrix,
    piv: Vec<usize>,
    pub singular: bool,
}

pub fn lu_decompose(m: &Matrix) -> Lu {
    let n = m.n;
    let mut lu = m.clone();
    let mut piv: Vec<usize> = (0..n).collect();
    let mut singular = false;
    for k in 0..n {
        let mut p = k;
        let mut best = lu.at(k, k).abs();
        for i in k + 1..n {
            let v = lu.at(i, k).abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best.is_zero() {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                let tmp = lu.at(k, j).clone();
                *lu.at_mut(k, j) = lu.at(p, j).clone();
                *lu.at_mut(p, j) = tmp;
            }
            piv.swap(k, p);
        }
        for i in k + 1..n {
            let factor = lu.at(i, k) / lu.at(k, k);
            *lu.at_mut(i, k) = factor.clone();
            for j in k + 1..n {
                let upd = lu.at(i, j) - &factor * lu.at(k, j);
                *lu.at_mut(i, j) = upd;
            }
        }
    }
    Lu { lu, piv, singular }
}

impl Lu {
    pub fn solve(&self, b: &[Real]) -> Vec<Real> {
        let n = self.lu.n;
        let mut y: Vec<Real> = (0..n).map(|i| b[self.piv[i]].clone()).collect();
        for i in 1..n {
            for j in 0..i {
                let upd = &y[i] - self.lu.at(i, j) * &y[j];
                y[i] = upd;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let upd = &y[i] - self.lu.at(i, j) * &y[j];
                y[i] = upd;
            }
            y[i] = &y[i] / self.lu.at(i, i);
        }
        y
    }
}

// ---------------------------------------------------------------------------
// Real Schur form
// ---------------------------------------------------------------------------

pub struct Schur {
    /// Quasi-upper-triangular factor.
    pub t: Matrix,
    /// Accumulated similarity: A ≈ Z T Z⁻¹ (Z orthogonal up to balancing).
    pub z: Matrix,
    /// Balancing scales: A_balanced = D⁻¹ A D with D = diag(scale).
    pub scale: Vec<Real>,
}

/// Osborne balancing in radix 2: rescales rows/columns by exact powers of
/// two so no rounding is introduced.
fn balance(m: &mut Matrix) -> Vec<Real> {
    let n = m.n;
    let one = m.at(0, 0).one_like();
    let two = &one + &one;
    let mut scale = vec![one.clone(); n];
    for _ in 0..4 {
        let mut converged = true;
        for i in 0..n {
            let mut r = one.zero_like();
            let mut c = one.zero_like();
            for j in 0..n {
                if j != i {
                    r += &m.at(i, j).abs();
                    c += &m.at(j, i).abs();
                }
            }
            if r.is_zero() || c.is_zero() {
                continue;
            }
            let mut f = one.clone();
            let mut cc = c.clone();
            let mut rr = r.clone();
            while cc < &rr / &two {
                f = &f * &two;
                cc = &cc * &two;
                rr = &rr / &two;
            }
            while cc >= &rr * &two {
                f = &f / &two;
                cc = &cc / &two;
                rr = &rr * &two;
            }
            if f != one {
                converged = false;
                scale[i] = &scale[i] * &f;
                for j in 0..n {
                    let upd = m.at(i, j) / &f;
                    *m.at_mut(i, j) = upd;
                    let upd = m.at(j, i) * &f;
                    *m.at_mut(j, i) = upd;
                }
            }
        }
        if converged {
            break;
        }
    }
    scale
}

/// Householder reduction to upper Hessenberg form, accumulating Q.
fn hessenberg(h: &mut Matrix, q: &mut Matrix) {
    let n = h.n;
    for k in 0..n.saturating_sub(2) {
        // reflector annihilating h[k+2.., k]
        let mut norm2 = h.at(0, 0).zero_like();
        for i in k + 1..n {
            norm2 += &h.at(i, k).square();
        }
        let norm = norm2.sqrt();
        if norm.is_zero() {
            continue;
        }
        let x0 = h.at(k + 1, k).clone();
        let alpha = if x0.is_negative() {
            norm.clone()
        } else {
            -norm.clone()
        };
        // v = x - alpha e1, normalized so v[0] = 1
        let v0 = &x0 - &alpha;
        if v0.is_zero() {
            continue;
        }
        let mut v = vec![h.at(0, 0).one_like()];
        for i in k + 2..n {
            v.push(h.at(i, k) / &v0);
        }
        // beta = 2 / (vᵀv)
        let mut vtv = h.at(0, 0).zero_like();
        for vi in &v {
            vtv += &vi.square();
        }
        let beta = (&h.at(0, 0).one_like() + &h.at(0, 0).one_like()) / &vtv;

        // H := (I - beta v vᵀ) H
        for j in 0..n {
            let mut s = h.at(0, 0).zero_like();
            for (idx, vi) in v.iter().enumerate() {
                s += &(vi * h.at(k + 1 + idx, j));
            }
            s = &s * &beta;
            for (idx, vi) in v.iter().enumerate() {
                let upd = h.at(k + 1 + idx, j) - vi * &s;
                *h.at_mut(k + 1 + idx, j) = upd;
            }
        }
        // H := H (I - beta v vᵀ)
        for i in 0..n {
            let mut s = h.at(0, 0).zero_like();
            for (idx, vi) in v.iter().enumerate() {
                s += &(vi * h.at(i, k + 1 + idx));
            }
            s = &s * &beta;
            for (idx, vi) in v.iter().enumerate() {
                let upd = h.at(i, k + 1 + idx) - vi * &s;
                *h.at_mut(i, k + 1 + idx) = upd;
            }
        }
        // Q := Q (I - beta v vᵀ)
        for i in 0..n {
            let mut s = q.at(0, 0).zero_like();
            for (idx, vi) in v.iter().enumerate() {
                s += &(vi * q.at(i, k + 1 + idx));
            }
            s = &s * &beta;
            for (idx, vi) in v.iter().enumerate() {
                let upd = q.at(i, k + 1 + idx) - vi * &s;
                *q.at_mut(i, k + 1 + idx) = upd;
            }
        }
        // clean the annihilated column
        *h.at_mut(k + 1, k) = alpha;
        for i in k + 2..n {
            *h.at_mut(i, k) = h.at(0, 0).zero_like();
        }
    }
}

/// Apply a 3-element Householder reflector to rows r..r+2 (columns span),
/// used by the bulge chase.
fn apply_left(h: &mut Matrix, v: &[Real; 3], beta: &Real, r: usize, len: usize, lo_col: usize) {
    let n = h.n;
    for j in lo_col..n {
        let mut s = h.at(0, 0).zero_like();
        for idx in 0..len {
            s += &(&v[idx] * h.at(r + idx, j));
        }
        s = &s * beta;
        for idx in 0..len {
            let upd = h.at(r + idx, j) - &v[idx] * &s;
            *h.at_mut(r + idx, j) = upd;
        }
    }
}

fn apply_right(h: &mut Matrix, v: &[Real; 3], beta: &Real, c: usize, len: usize, hi_row: usize) {
    for i in 0..hi_row {
        let mut s = h.at(0, 0).zero_like();
        for idx in 0..len {
            s += &(&v[idx] * h.at(i, c + idx));
        }
        s = &s * beta;
        for idx in 0..len {
            let upd = h.at(i, c + idx) - &v[idx] * &s;
            *h.at_mut(i, c + idx) = upd;
        }
    }
}

fn householder3(x: &Real, y: &Real, z: &Real) -> Option<([Real; 3], Real)> {
    let norm2 = x.square() + y.square() + z.square();
    if norm2.is_zero() {
        return None;
    }
    let norm = norm2.sqrt();
    let alpha = if x.is_negative() { norm } else { -norm };
    let v0 = x - &alpha;
    if v0.is_zero() {
        return None;
    }
    let v = [x.one_like(), y / &v0, z / &v0];
    let vtv = v[0].square() + v[1].square() + v[2].square();
    let beta = (x.one_like() + x.one_like()) / vtv;
    Some((v, beta))
}

/// Francis double-shift QR on a Hessenberg matrix, accumulating Z.
fn francis(h: &mut Matrix, z: &mut Matrix, prec: Prec) -> Result<()> {
    let n = h.n;
    if n < 2 {
        return Ok(());
    }
    let eps = prec.pow10(-(((prec.digits() as i32) * 9) / 10));
    let mut hi = n - 1;
    let mut iters_this_block = 0usize;
    let max_total = 80 * n;
    let mut total = 0usize;

    while hi >= 1 {
        total += 1;
        if total > max_total {
            return Err(Error::EigSolverFailure {
                offdiag: h.at(hi, hi - 1).to_decimal(8),
            });
        }
        // deflation scan
        let mut lo = hi;
        while lo >= 1 {
            let off = h.at(lo, lo - 1).abs();
            let local = h.at(lo - 1, lo - 1).abs() + h.at(lo, lo).abs();
            if off <= &eps * &local || off.is_zero() {
                *h.at_mut(lo, lo - 1) = h.at(0, 0).zero_like();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            // 1x1 block converged
            hi -= 1;
            iters_this_block = 0;
            continue;
        }
        if lo + 1 == hi {
            // 2x2 block converged (eigenvalues extracted later)
            hi = lo.saturating_sub(1);
            if lo == 0 {
                break;
            }
            iters_this_block = 0;
            continue;
        }

        iters_this_block += 1;
        // double shift from the trailing 2x2, with occasional exceptional shift
        let (s, t) = if iters_this_block % 16 == 0 {
            let a = h.at(hi, hi - 1).abs() + h.at(hi - 1, hi - 2).abs();
            let s = &a * 3i64 / 2i64;
            let t = a.square();
            (s, t)
        } else {
            let s = h.at(hi - 1, hi - 1) + h.at(hi, hi);
            let t = h.at(hi - 1, hi - 1) * h.at(hi, hi) - h.at(hi - 1, hi) * h.at(hi, hi - 1);
            (s, t)
        };

        // first column of (H - aI)(H - bI); block size is >= 3 here
        let h00 = h.at(lo, lo);
        let h10 = h.at(lo + 1, lo);
        let mut x = h00.square() + h.at(lo, lo + 1) * h10 - &s * h00 + &t;
        let mut y = h10 * &(h00 + h.at(lo + 1, lo + 1) - &s);
        let mut w = h10 * h.at(lo + 2, lo + 1);

        // bulge chase with 3-element reflectors
        for k in lo..hi - 1 {
            if let Some((v, beta)) = householder3(&x, &y, &w) {
                let col0 = if k > lo { k - 1 } else { lo };
                apply_left(h, &v, &beta, k, 3, col0);
                let row_hi = (k + 4).min(hi + 1);
                apply_right(h, &v, &beta, k, 3, row_hi);
                // accumulate into Z over all rows
                for i in 0..n {
                    let mut sdot = h.at(0, 0).zero_like();
                    for idx in 0..3 {
                        sdot += &(&v[idx] * z.at(i, k + idx));
                    }
                    sdot = &sdot * &beta;
                    for idx in 0..3 {
                        let upd = z.at(i, k + idx) - &v[idx] * &sdot;
                        *z.at_mut(i, k + idx) = upd;
                    }
                }
                if k > lo {
                    // the reflector annihilated the bulge column below row k
                    for i in k + 1..(k + 3).min(n) {
                        *h.at_mut(i, k - 1) = h.at(0, 0).zero_like();
                    }
                }
            }
            x = h.at(k + 1, k).clone();
            y = h.at(k + 2, k).clone();
            w = if k + 3 <= hi {
                h.at(k + 3, k).clone()
            } else {
                h.at(0, 0).zero_like()
            };
        }
        // final 2-element reflector at the bottom of the chase
        let zero = h.at(0, 0).zero_like();
        if let Some((v, beta)) = householder3(&x, &y, &zero) {
            let col0 = hi - 2;
            apply_left(h, &v, &beta, hi - 1, 2, col0);
            apply_right(h, &v, &beta, hi - 1, 2, hi + 1);
            for i in 0..n {
                let mut sdot = h.at(0, 0).zero_like();
                for idx in 0..2 {
                    sdot += &(&v[idx] * z.at(i, hi - 1 + idx));
                }
                sdot = &sdot * &beta;
                for idx in 0..2 {
                    let upd = z.at(i, hi - 1 + idx) - &v[idx] * &sdot;
                    *z.at_mut(i, hi - 1 + idx) = upd;
                }
            }
            *h.at_mut(hi, hi - 2) = h.at(0, 0).zero_like();
        }
    }
    Ok(())
}

/// Complex eigenvalue as a (re, im) pair of reals.
pub type ComplexEig = (Real, Real);

/// Real Schur decomposition with accumulated transforms.
pub fn schur(m: &Matrix, prec: Prec) -> Result<Schur> {
    let mut t = m.clone();
    let scale = balance(&mut t);
    let mut z = Matrix::identity(prec, m.n);
    hessenberg(&mut t, &mut z);
    francis(&mut t, &mut z, prec)?;
    Ok(Schur { t, z, scale })
}

impl Schur {
    /// Eigenvalues from the quasi-triangular diagonal, unsorted.
    pub fn eigenvalues(&self) -> Vec<ComplexEig> {
        let n = self.t.n;
        let zero = || self.t.at(0, 0).zero_like();
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            let last = i + 1 == n;
            let sub = if last {
                zero()
            } else {
                self.t.at(i + 1, i).clone()
            };
            if last || sub.is_zero() {
                out.push((self.t.at(i, i).clone(), zero()));
                i += 1;
            } else {
                let a = self.t.at(i, i);
                let b = self.t.at(i, i + 1);
                let c = &sub;
                let d = self.t.at(i + 1, i + 1);
                let tr = a + d;
                let half_tr = &tr / 2i64;
                let det = a * d - b * c;
                let disc = half_tr.square() - &det;
                if disc.is_negative() || disc.is_zero() {
                    let im = (-&disc).sqrt();
                    out.push((half_tr.clone(), im.clone()));
                    out.push((half_tr, -im));
                } else {
                    let r = disc.sqrt();
                    out.push((&half_tr + &r, zero()));
                    out.push((&half_tr - &r, zero()));
                }
                i += 2;
            }
        }
        out
    }

    /// Relative Schur residual ||A Z' - Z' T|| / (||A|| ||Z'||) in the
    /// Frobenius norm, where Z' undoes the balancing. This certifies every
    /// eigenvalue of T as an eigenvalue of A to the same relative accuracy.
    pub fn residual(&self, original: &Matrix) -> Real {
        let n = self.t.n;
        // Z' = D Z with D = diag(scale)
        let zp = Matrix::from_fn(n, |i, j| &self.scale[i] * self.z.at(i, j));
        let az = original.mul(&zp);
        let zt = zp.mul(&self.t);
        let num = az.sub(&zt).frobenius();
        let den = original.frobenius() * zp.frobenius();
        if den.is_zero() {
            return num;
        }
        num / den
    }
}

/// Largest-modulus real eigenvalue refinement: shifted inverse iteration
/// from the Schur estimate, returning the certified eigenpair.
pub fn dominant_real_eigenpair(
    m: &Matrix,
    lambda_estimate: &Real,
    tol: &Real,
) -> Result<(Real, Vec<Real>)> {
    let n = m.n;
    let one = lambda_estimate.one_like();
    // slightly detuned shift keeps the solve nonsingular
    let detune = (lambda_estimate.abs() + &one) / 1_000_000i64;
    let shift = lambda_estimate + &detune;
    let shifted = Matrix::from_fn(n, |i, j| {
        if i == j {
            m.at(i, j) - &shift
        } else {
            m.at(i, j).clone()
        }
    });
    let lu = lu_decompose(&shifted);
    if lu.singular {
        return Err(Error::EigSolverFailure {
            offdiag: "singular shift".into(),
        });
    }
    let mut v: Vec<Real> = (0..n)
        .map(|i| &one / (i as i64 + 1))
        .collect();
    let mut lambda = lambda_estimate.clone();
    for _ in 0..60 {
        let w = lu.solve(&v);
        let norm = w
            .iter()
            .fold(lambda.zero_like(), |acc, x| acc + x.square())
            .sqrt();
        v = w.iter().map(|x| x / &norm).collect();
        // Rayleigh quotient
        let mv = m.mul_vec(&v);
        lambda = v
            .iter()
            .zip(&mv)
            .fold(lambda.zero_like(), |acc, (vi, mvi)| acc + vi * mvi);
        // residual check
        let mut res2 = lambda.zero_like();
        for i in 0..n {
            res2 += &(&mv[i] - &lambda * &v[i]).square();
        }
        if res2.sqrt() <= *tol {
            return Ok((lambda, v));
        }
    }
    let mv = m.mul_vec(&v);
    let mut res2 = lambda.zero_like();
    for i in 0..n {
        res2 += &(&mv[i] - &lambda * &v[i]).square();
    }
    Err(Error::EigenvectorUncertified {
        residual: res2.sqrt().to_decimal(8),
        tol: tol.to_decimal(8),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Prec {
        Prec::decimal(50)
    }

    #[test]
    fn lu_solves_small_system() {
        let p = prec();
        let m = Matrix::from_fn(3, |i, j| p.from_i64([[2, 1, 1], [1, 3, 2], [1, 0, 0]][i][j]));
        let b = vec![p.from_i64(4), p.from_i64(5), p.from_i64(6)];
        let lu = lu_decompose(&m);
        assert!(!lu.singular);
        let x = lu.solve(&b);
        let back = m.mul_vec(&x);
        for (bi, wi) in back.iter().zip(&b) {
            assert!((bi - wi).abs() < p.pow10(-45));
        }
    }

    #[test]
    fn schur_diagonalizes_companion_matrix() {
        let p = prec();
        // companion of (x-1)(x-2)(x-3)(x+4) = x⁴ - 2x³ - 13x² + 38x - 24
        let coeffs = [24i64, -38, 13, 2]; // negated monic coefficients
        let n = 4;
        let m = Matrix::from_fn(n, |i, j| {
            if j == n - 1 {
                p.from_i64(coeffs[i])
            } else if i == j + 1 {
                p.one()
            } else {
                p.zero()
            }
        });
        let s = schur(&m, p).unwrap();
        assert!(s.residual(&m) < p.pow10(-40));
        let mut eigs: Vec<f64> = s.eigenvalues().iter().map(|(re, _)| re.to_f64()).collect();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [-4.0, 1.0, 2.0, 3.0];
        for (e, w) in eigs.iter().zip(want) {
            assert!((e - w).abs() < 1e-30, "eig {} vs {}", e, w);
        }
    }

    #[test]
    fn schur_handles_complex_pairs() {
        let p = prec();
        // rotation-by-90 plus a real eigenvalue 5
        let vals = [[0i64, -1, 0], [1, 0, 0], [0, 0, 5]];
        let m = Matrix::from_fn(3, |i, j| p.from_i64(vals[i][j]));
        let s = schur(&m, p).unwrap();
        assert!(s.residual(&m) < p.pow10(-40));
        let eigs = s.eigenvalues();
        let mut moduli: Vec<f64> = eigs
            .iter()
            .map(|(re, im)| (re.square() + im.square()).sqrt().to_f64())
            .collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((moduli[0] - 1.0).abs() < 1e-40);
        assert!((moduli[1] - 1.0).abs() < 1e-40);
        assert!((moduli[2] - 5.0).abs() < 1e-40);
    }

    #[test]
    fn inverse_iteration_certifies_dominant_pair() {
        let p = prec();
        let vals = [[4i64, 1, 0], [1, 2, 1], [0, 1, 1]];
        let m = Matrix::from_fn(3, |i, j| p.from_i64(vals[i][j]));
        let s = schur(&m, p).unwrap();
        let top = s
            .eigenvalues()
            .into_iter()
            .max_by(|a, b| {
                let ma = a.0.square() + a.1.square();
                let mb = b.0.square() + b.1.square();
                ma.total_cmp(&mb)
            })
            .unwrap();
        let (lambda, v) = dominant_real_eigenpair(&m, &top.0, &p.pow10(-25)).unwrap();
        let mv = m.mul_vec(&v);
        for (mvi, vi) in mv.iter().zip(&v) {
            assert!((mvi - &lambda * vi).abs() < p.pow10(-24));
        }
    }
}
