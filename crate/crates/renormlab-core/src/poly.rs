//! Polynomial interpolation on cosine-spaced nodes.
//!
//! Renormalized germs are recovered as monomial coefficients of the even
//! part v(y), y = x², by interpolating values at Chebyshev nodes of [0, 1]
//! and expanding the Newton form. Equispaced nodes are hopeless at order 40;
//! cosine spacing keeps the Lebesgue constant tame, and the working guard
//! precision absorbs the basis conversion's conditioning.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::real::{Prec, Real};

/// Chebyshev (Gauss) nodes of [0, 1]: (1 + cos((2j+1)π/2n))/2, j = 0..n-1.
pub fn chebyshev_nodes(prec: Prec, n: usize) -> Arc<Vec<Real>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<Vec<Real>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(nodes) = cache.lock().unwrap().get(&(prec.bits(), n)) {
        return nodes.clone();
    }
    let pi = prec.pi();
    let half = prec.ratio(1, 2);
    let mut nodes = Vec::with_capacity(n);
    for j in 0..n {
        let angle = &pi * (2 * j as i64 + 1) / (2 * n as i64);
        nodes.push((prec.one() + angle.cos()) * &half);
    }
    let nodes = Arc::new(nodes);
    cache
        .lock()
        .unwrap()
        .insert((prec.bits(), n), nodes.clone());
    nodes
}

/// Newton divided-difference coefficients for data (xs[i], ys[i]).
pub fn divided_differences(xs: &[Real], ys: &[Real]) -> Vec<Real> {
    let n = xs.len();
    let mut dd: Vec<Real> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    dd
}

/// Expand a Newton-form interpolant into monomial coefficients (low first).
pub fn newton_to_monomial(xs: &[Real], dd: &[Real]) -> Vec<Real> {
    let n = dd.len();
    let mut coeffs = vec![xs[0].zero_like(); n];
    coeffs[0] = dd[n - 1].clone();
    let mut deg = 0usize;
    for k in (0..n - 1).rev() {
        // multiply by (x - xs[k]) then add dd[k]
        deg += 1;
        for i in (1..=deg).rev() {
            let lower = coeffs[i - 1].clone();
            coeffs[i] = &coeffs[i] * &(-&xs[k]) + lower;
        }
        coeffs[0] = &coeffs[0] * &(-&xs[k]) + &dd[k];
    }
    coeffs
}

/// Monomial coefficients of the unique degree < n interpolant of ys at xs.
pub fn interpolate_monomial(xs: &[Real], ys: &[Real]) -> Vec<Real> {
    let dd = divided_differences(xs, ys);
    newton_to_monomial(xs, &dd)
}

/// Horner evaluation, coefficients low-order first.
pub fn horner(coeffs: &[Real], x: &Real) -> Real {
    let mut acc = coeffs
        .last()
        .expect("empty polynomial")
        .clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc * x + c;
    }
    acc
}

/// Derivative coefficients, low-order first.
pub fn derivative(coeffs: &[Real]) -> Vec<Real> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as i64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Prec::decimal(50);
        let nodes = chebyshev_nodes(p, 8);
        // f(y) = 1 - 2y + 3y³
        let f = |y: &Real| p.one() - y * 2i64 + y.powi(3) * 3i64;
        let ys: Vec<Real> = nodes.iter().map(f).collect();
        let coeffs = interpolate_monomial(&nodes, &ys);
        let want = [1i64, -2, 0, 3, 0, 0, 0, 0];
        for (c, w) in coeffs.iter().zip(want) {
            assert!(
                (c - &p.from_i64(w)).abs() < p.pow10(-45),
                "coefficient {} vs {}",
                c,
                w
            );
        }
        // evaluation away from the nodes
        let x = p.from_f64(0.37);
        assert!((horner(&coeffs, &x) - f(&x)).abs() < p.pow10(-45));
    }

    #[test]
    fn nodes_live_in_unit_interval() {
        let p = Prec::decimal(40);
        let nodes = chebyshev_nodes(p, 40);
        for y in nodes.iter() {
            assert!(y.is_positive() && *y < p.one());
        }
        // symmetric about 1/2
        let sum = nodes.iter().fold(p.zero(), |acc, y| acc + y);
        assert!((sum - p.from_i64(20)).abs() < p.pow10(-35));
    }

    #[test]
    fn derivative_coefficients() {
        let p = Prec::decimal(30);
        let coeffs = vec![p.from_i64(5), p.from_i64(-1), p.from_i64(4)];
        let d = derivative(&coeffs);
        assert_eq!(d.len(), 2);
        assert!((&d[0] + 1i64).is_zero());
        assert!((&d[1] - 8i64).is_zero());
    }
}
