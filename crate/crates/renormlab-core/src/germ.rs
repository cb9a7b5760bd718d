//! Even analytic germs and the renormalization operator.
//!
//! A germ is a truncated even series f(x) = v(x²) with v a polynomial of
//! order N and f(0) = v_0 = 1 pinned exactly. Quadratics embed as
//! F_c(x) = 1 + c·x² (the affine representative of x² + c with the critical
//! value moved to 1), and one renormalization step of period p is
//!
//!     (R_p f)(x) = a⁻¹ · f^p(a·x),   a = f^p(0),
//!
//! which preserves the normalization on the nose. Coefficients of the
//! result are recovered by interpolating y -> (R_p f)(√y) at Chebyshev
//! nodes of [0, 1]. Fixed germs of composite words are found by Newton on
//! the coefficient vector, with the jacobian assembled column by column
//! from central differences; its spectrum is the truncated linearization
//! of the operator.

use std::cmp::Ordering;

use crate::config::Ctx;
use crate::dyncore::{self, Kneading};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::par;
use crate::poly;
use crate::real::Real;

/// Truncated even analytic map f(x) = v(x²), normalized to f(0) = 1.
#[derive(Clone, Debug)]
pub struct Germ {
    coeffs: Vec<Real>,
    rho_dom: Real,
}

impl Germ {
    /// Wrap a coefficient vector; the constant term must be exactly one.
    pub fn new(coeffs: Vec<Real>, rho_dom: Real) -> Result<Germ> {
        if coeffs.is_empty() || coeffs[0] != coeffs[0].one_like() {
            return Err(Error::InvalidInput(
                "germ coefficients must start with v_0 = 1".into(),
            ));
        }
        Ok(Germ { coeffs, rho_dom })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn rho_dom(&self) -> &Real {
        &self.rho_dom
    }

    /// v(y) by Horner.
    pub fn eval_y(&self, y: &Real) -> Real {
        poly::horner(&self.coeffs, y)
    }

    /// f(x) = v(x²), rejecting points outside the validity disk.
    pub fn eval(&self, x: &Real) -> Result<Real> {
        if x.abs() > self.rho_dom {
            return Err(Error::DomainEscape {
                x: x.to_decimal(8),
                rho: self.rho_dom.to_decimal(8),
                step: 0,
            });
        }
        Ok(self.eval_y(&x.square()))
    }

    /// f'(x) = 2x·v'(x²).
    pub fn deriv(&self, x: &Real) -> Real {
        let d = poly::derivative(&self.coeffs);
        poly::horner(&d, &x.square()) * x * 2i64
    }

    /// |v_{N-1}|·rho^(2(N-1)): the last term's size at the domain edge.
    pub fn tail_bound(&self) -> Real {
        let n = self.coeffs.len();
        self.coeffs[n - 1].abs() * self.rho_dom.powi(2 * (n as i32 - 1))
    }

    /// v' keeps one sign on (0, 1], sampled on a grid: f is unimodal there.
    pub fn is_unimodal(&self) -> bool {
        let d = poly::derivative(&self.coeffs);
        if d.is_empty() {
            return false;
        }
        let one = self.coeffs[0].one_like();
        let mut sign = 0i32;
        for k in 1..=32i64 {
            let y = &one * k / 32i64;
            let s = poly::horner(&d, &y).signum();
            if s == 0 {
                return false;
            }
            if sign == 0 {
                sign = s;
            } else if s != sign {
                return false;
            }
        }
        true
    }

    /// True when the critical point is a maximum (v_1 < 0), like 1 + c·x²
    /// for c < 0.
    pub fn folds_up(&self) -> bool {
        self.coeffs[1].is_negative()
    }

    /// Zero-padded or truncated copy with `n` coefficients.
    pub fn resized(&self, n: usize) -> Germ {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, self.coeffs[0].zero_like());
        Germ {
            coeffs,
            rho_dom: self.rho_dom.clone(),
        }
    }

    fn perturbed(&self, j: usize, delta: &Real) -> Germ {
        let mut coeffs = self.coeffs.clone();
        coeffs[j] = &coeffs[j] + delta;
        Germ {
            coeffs,
            rho_dom: self.rho_dom.clone(),
        }
    }
}

/// A finite renormalization word: the sequence of window labels whose
/// operators are composed, first letter applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenormWord {
    pub letters: Vec<WordLetter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordLetter {
    pub period: usize,
    pub label: String,
}

impl RenormWord {
    pub fn doubling() -> Self {
        RenormWord::from_periods(&[2])
    }

    pub fn from_periods(periods: &[usize]) -> Self {
        RenormWord {
            letters: periods
                .iter()
                .map(|&p| WordLetter {
                    period: p,
                    label: format!("p{p}"),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn periods(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.period).collect()
    }
}

/// The affine representative 1 + c·x² of x² + c.
pub fn germ_from_quadratic(ctx: &Ctx, c: &Real) -> Result<Germ> {
    if c.is_zero() {
        return Err(Error::DegenerateCenter);
    }
    let gp = ctx.guard();
    let n = ctx.series_order;
    let mut coeffs = vec![gp.zero(); n];
    coeffs[0] = gp.one();
    coeffs[1] = c.round_to(gp);
    Ok(Germ {
        coeffs,
        rho_dom: ctx.rho_dom_real(),
    })
}

/// One application of the period-p renormalization.
pub fn renormalize(ctx: &Ctx, g: &Germ, period: usize) -> Result<Germ> {
    let gp = ctx.guard();
    let n = ctx.series_order;

    // a = f^p(0), with the full orbit kept inside the validity disk
    let mut a = g.coeffs[0].clone(); // f(0) = 1
    for step in 1..period {
        if a.abs() > g.rho_dom {
            return Err(Error::DomainEscape {
                x: a.to_decimal(8),
                rho: g.rho_dom.to_decimal(8),
                step,
            });
        }
        a = g.eval_y(&a.square());
    }
    if a.abs() < gp.pow10(6 - (ctx.digits + ctx.guard_digits) as i32) {
        // superstable input: the rescaling collapses
        return Err(Error::DegenerateCenter);
    }

    let nodes = poly::chebyshev_nodes(gp, n);
    let a2 = a.square();
    let mut values = Vec::with_capacity(n);
    for (j, y) in nodes.iter().enumerate() {
        // f^p(a·x) with x = sqrt(y), iterated through v(x²) only
        let mut cur_y = &a2 * y; // (a·x)²
        let mut val = g.coeffs[0].zero_like();
        for step in 0..period {
            val = g.eval_y(&cur_y);
            if step + 1 < period {
                if val.abs() > g.rho_dom {
                    return Err(Error::DomainEscape {
                        x: val.to_decimal(8),
                        rho: g.rho_dom.to_decimal(8),
                        step: n * step + j,
                    });
                }
                cur_y = val.square();
            }
        }
        values.push(val / &a);
    }

    let mut coeffs = poly::interpolate_monomial(&nodes, &values);
    coeffs[0] = gp.one(); // exact by construction: a⁻¹·f^p(0) = 1

    let out = Germ {
        coeffs,
        rho_dom: g.rho_dom.clone(),
    };
    let tail = out.tail_bound();
    if tail > gp.pow10(ctx.tail_tol_exp) {
        return Err(Error::TailBlowup {
            bound: tail.to_decimal(8),
        });
    }
    Ok(out)
}

/// Apply a whole word, first letter first.
pub fn renormalize_word(ctx: &Ctx, g: &Germ, word: &RenormWord) -> Result<Germ> {
    let mut cur = g.clone();
    for letter in &word.letters {
        cur = renormalize(ctx, &cur, letter.period)?;
    }
    Ok(cur)
}

/// Max difference of two germs over the interpolation grid in x.
pub fn grid_distance(ctx: &Ctx, a: &Germ, b: &Germ) -> Real {
    let gp = ctx.guard();
    let nodes = poly::chebyshev_nodes(gp, ctx.series_order);
    let mut worst = gp.zero();
    for y in nodes.iter() {
        let d = (a.eval_y(y) - b.eval_y(y)).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Straightening
// ---------------------------------------------------------------------------

/// Itinerary of the germ's critical value under its own dynamics, converted
/// to the min-at-0 convention so it can be compared with quadratic words.
fn germ_kneading(ctx: &Ctx, g: &Germ, k: usize) -> Result<Kneading> {
    let tol = ctx.tol_sym();
    let flip = g.folds_up();
    let start = if flip {
        -g.coeffs[0].one_like()
    } else {
        g.coeffs[0].one_like()
    };
    let g = g.clone();
    dyncore::itinerary(
        start,
        move |x| {
            let v = g.eval(x)?;
            Ok(if flip { -v } else { v })
        },
        k,
        &tol,
    )
}

/// Attracting cycle data used as the tie-break when kneading saturates.
#[derive(Clone, Debug)]
struct CycleData {
    period: usize,
    multiplier: Real,
}

fn germ_attracting_cycle(ctx: &Ctx, g: &Germ) -> Option<CycleData> {
    let one = g.coeffs[0].one_like();
    let dcoeffs = poly::derivative(&g.coeffs);
    let p_cap = 64usize;
    let detect = one.zero_like().one_like() / 10_000_000i64;

    let mut x = one.clone(); // critical value
    let mut spent = 0usize;
    let chunk = 512usize;
    while spent < ctx.cycle_budget {
        for _ in 0..chunk {
            x = g.eval(&x).ok()?;
        }
        spent += chunk;
        // near-return probe
        let mut window = Vec::with_capacity(p_cap + 1);
        window.push(x.clone());
        let mut y = x.clone();
        for _ in 0..p_cap {
            y = g.eval(&y).ok()?;
            window.push(y.clone());
        }
        spent += p_cap;
        let mut candidate = None;
        for p in 1..=p_cap {
            if (&window[p] - &window[0]).abs() < detect {
                candidate = Some(p);
                break;
            }
        }
        if let Some(p) = candidate {
            // Newton polish on g^p(x) - x
            let mut z = x.clone();
            for _ in 0..60 {
                let mut v = z.clone();
                let mut d = one.clone();
                for _ in 0..p {
                    let dv = poly::horner(&dcoeffs, &v.square()) * &v * 2i64;
                    d = &d * &dv;
                    v = g.eval(&v).ok()?;
                }
                let gp_minus = &d - 1i64;
                if gp_minus.is_zero() {
                    return None;
                }
                let step = (&v - &z) / &gp_minus;
                z = &z - &step;
                if step.abs() < ctx.tol_cycle() {
                    break;
                }
            }
            // multiplier over the polished cycle
            let mut mult = one.clone();
            let mut v = z.clone();
            let mut ok_cycle = true;
            for _ in 0..p {
                mult = mult * &(poly::horner(&dcoeffs, &v.square()) * &v * 2i64);
                v = match g.eval(&v) {
                    Ok(w) => w,
                    Err(_) => {
                        ok_cycle = false;
                        break;
                    }
                };
            }
            if ok_cycle && (&v - &z).abs() < ctx.tol_cycle() && mult.abs() < one {
                // reduce to minimal period
                let mut period = p;
                'outer: for d in 1..p {
                    if p % d == 0 {
                        let mut w = z.clone();
                        for _ in 0..d {
                            w = g.eval(&w).ok()?;
                        }
                        if (&w - &z).abs() < ctx.tol_cycle() {
                            period = d;
                            let mut m2 = one.clone();
                            let mut u = z.clone();
                            for _ in 0..d {
                                m2 = m2 * &(poly::horner(&dcoeffs, &u.square()) * &u * 2i64);
                                u = g.eval(&u).ok()?;
                            }
                            mult = m2;
                            break 'outer;
                        }
                    }
                }
                return Some(CycleData {
                    period,
                    multiplier: mult,
                });
            }
        }
    }
    None
}

fn quadratic_attracting_cycle(ctx: &Ctx, c: &Real, p_hint: usize) -> Option<CycleData> {
    let tol = ctx.prec().pow10(-((ctx.digits / 2) as i32));
    match dyncore::find_attracting_cycle(ctx, c, p_hint.max(2) * 2, &tol) {
        Ok(Some(cycle)) => Some(CycleData {
            period: cycle.period,
            multiplier: cycle.multiplier,
        }),
        _ => None,
    }
}

/// Order two parameters by their attracting-cycle data.
///
/// Within one window the cycle multiplier increases from -1 to +1 with c;
/// across a period doubling the longer period sits at smaller c. Returns
/// how the germ's parameter compares to the probe parameter.
fn cycle_order(germ_cycle: &CycleData, quad_cycle: &CycleData, tol: &Real) -> Ordering {
    if germ_cycle.period == quad_cycle.period {
        let d = &germ_cycle.multiplier - &quad_cycle.multiplier;
        if d.abs() < *tol {
            Ordering::Equal
        } else if d.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if germ_cycle.period > quad_cycle.period {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// The unique c' in [-2, 1/4] whose quadratic realizes the germ's dynamics:
/// kneading bisection, refined inside hyperbolic windows by matching the
/// attracting-cycle multiplier.
pub fn straighten(ctx: &Ctx, g: &Germ) -> Result<Real> {
    if !g.is_unimodal() {
        return Err(Error::NotUnimodal);
    }
    let p = ctx.prec();
    let mut k = ctx.kneading_len;
    let mut word_g = match germ_kneading(ctx, g, k) {
        Ok(w) => w,
        Err(Error::DomainEscape { .. }) => {
            return Err(Error::StraighteningFailed {
                reason: "critical orbit escapes the germ domain".into(),
            })
        }
        Err(e) => return Err(e),
    };
    let mut germ_cycle: Option<Option<CycleData>> = None; // computed lazily, once

    let mut lo = p.from_i64(-2);
    let mut hi = p.ratio(1, 4);

    // reject targets outside the family
    if matches!(
        dyncore::kneading_compare(&dyncore::kneading(ctx, &lo, word_g.len()), &word_g),
        Ok(Ordering::Less)
    ) {
        return Err(Error::StraighteningFailed {
            reason: "kneading beyond the c = -2 end".into(),
        });
    }

    let tol_bisect = p.pow10(-(2 * ctx.digits as i32) / 3);
    let mult_tol = p.pow10(-((ctx.digits - 10) as i32));
    let mut iters = 0usize;
    while (&hi - &lo) > tol_bisect {
        iters += 1;
        if iters > 2000 {
            return Err(Error::BisectionStalled { iters });
        }
        let mid = (&lo + &hi) / 2i64;
        let w_mid = dyncore::kneading(ctx, &mid, word_g.len().max(k));
        match dyncore::kneading_compare(&w_mid, &word_g) {
            Ok(Ordering::Greater) => lo = mid, // mid's word too high: c' > mid
            Ok(Ordering::Less) => hi = mid,
            Err(Error::IncomparablePrefix) => {
                // mid sits on a superstable center matching a prefix; nudge
                hi = &mid + (&hi - &mid) / 1024i64;
            }
            Err(e) => return Err(e),
            Ok(Ordering::Equal) => {
                if word_g.terminated() {
                    // exact superstable match
                    return Ok(mid.round_to(p));
                }
                let gc = germ_cycle
                    .get_or_insert_with(|| germ_attracting_cycle(ctx, g))
                    .clone();
                let qc = gc
                    .as_ref()
                    .and_then(|d| quadratic_attracting_cycle(ctx, &mid, d.period));
                match (gc, qc) {
                    (Some(gd), Some(qd)) => match cycle_order(&gd, &qd, &mult_tol) {
                        Ordering::Greater => lo = mid,
                        Ordering::Less => hi = mid,
                        Ordering::Equal => return Ok(mid.round_to(p)),
                    },
                    _ => {
                        // no cycle on one side: sharpen the word if we can
                        if k < ctx.kneading_len_max {
                            k = (2 * k).min(ctx.kneading_len_max);
                            word_g = germ_kneading(ctx, g, k)?;
                            germ_cycle = None;
                        } else {
                            // kneading saturated: bisect the matching zone
                            return equal_zone_midpoint(ctx, &lo, &hi, &mid, &word_g);
                        }
                    }
                }
            }
        }
    }
    Ok(((lo + hi) / 2i64).round_to(p))
}

/// Midpoint of the maximal parameter zone whose kneading matches the word;
/// the fallback when both the word and the cycle probes are exhausted.
fn equal_zone_midpoint(
    ctx: &Ctx,
    lo: &Real,
    hi: &Real,
    inside: &Real,
    word: &Kneading,
) -> Result<Real> {
    let p = ctx.prec();
    let steps = 80;
    let mut a_lo = lo.clone();
    let mut a_hi = inside.clone();
    for _ in 0..steps {
        let m = (&a_lo + &a_hi) / 2i64;
        match dyncore::kneading_compare(&dyncore::kneading(ctx, &m, word.len()), word) {
            Ok(Ordering::Equal) => a_hi = m,
            _ => a_lo = m,
        }
    }
    let mut b_lo = inside.clone();
    let mut b_hi = hi.clone();
    for _ in 0..steps {
        let m = (&b_lo + &b_hi) / 2i64;
        match dyncore::kneading_compare(&dyncore::kneading(ctx, &m, word.len()), word) {
            Ok(Ordering::Equal) => b_lo = m,
            _ => b_hi = m,
        }
    }
    Ok(((a_hi + b_lo) / 2i64).round_to(p))
}

// ---------------------------------------------------------------------------
// Fixed germs, jacobian, spectrum
// ---------------------------------------------------------------------------

/// Grid residual ||R_w g - g|| over the interpolation nodes.
pub fn word_residual(ctx: &Ctx, g: &Germ, word: &RenormWord) -> Result<Real> {
    let rg = renormalize_word(ctx, g, word)?;
    Ok(grid_distance(ctx, &rg, g))
}

/// Newton solve for the fixed germ of R_w on the v_0 = 1 slice.
pub fn newton_fixed_point(ctx: &Ctx, word: &RenormWord, init: &Germ) -> Result<Germ> {
    let n = ctx.series_order;
    let target = ctx.tol_newton();
    let mut g = init.resized(n);
    let mut best_res: Option<Real> = None;

    for _ in 0..ctx.newton_max_iter {
        let rg = renormalize_word(ctx, &g, word)?;
        let res = grid_distance(ctx, &rg, &g);
        if best_res.as_ref().map_or(true, |b| res < *b) {
            best_res = Some(res.clone());
        }
        if res < target {
            return Ok(g);
        }

        let jac = jacobian(ctx, &g, word)?;
        // solve (DR - I) s = -(R(v) - v) on coefficients 1..N
        let m = Matrix::from_fn(n - 1, |i, j| {
            let v = jac.at(i + 1, j + 1);
            if i == j {
                v - 1i64
            } else {
                v.clone()
            }
        });
        let rhs: Vec<Real> = (1..n)
            .map(|i| &g.coeffs[i] - &rg.coeffs[i])
            .collect();
        let lu = matrix::lu_decompose(&m);
        if lu.singular {
            return Err(Error::NewtonDiverged {
                target: target.to_decimal(6),
                best: best_res.unwrap().to_decimal(6),
                iters: ctx.newton_max_iter,
            });
        }
        let step = lu.solve(&rhs);

        // damped update: halve until the residual does not grow
        let mut scale = g.coeffs[0].one_like();
        let mut accepted = false;
        for _ in 0..5 {
            let mut cand = g.clone();
            for i in 1..n {
                cand.coeffs[i] = &g.coeffs[i] + &(&step[i - 1] * &scale);
            }
            match renormalize_word(ctx, &cand, word) {
                Ok(rc) => {
                    let cres = grid_distance(ctx, &rc, &cand);
                    if cres < res {
                        g = cand;
                        accepted = true;
                        break;
                    }
                }
                Err(_) => {}
            }
            scale = &scale / 2i64;
        }
        if !accepted {
            return Err(Error::NewtonDiverged {
                target: target.to_decimal(6),
                best: best_res.unwrap().to_decimal(6),
                iters: ctx.newton_max_iter,
            });
        }
    }
    Err(Error::NewtonDiverged {
        target: target.to_decimal(6),
        best: best_res.unwrap().to_decimal(6),
        iters: ctx.newton_max_iter,
    })
}

/// Central-difference jacobian of the coefficient map v -> coeffs(R_w(v)).
///
/// Columns are independent and computed in parallel. The empty word is the
/// identity map, hence the identity matrix.
pub fn jacobian(ctx: &Ctx, g: &Germ, word: &RenormWord) -> Result<Matrix> {
    let n = ctx.series_order;
    let gp = ctx.guard();
    if word.is_empty() {
        return Ok(Matrix::identity(gp, n));
    }
    let h = ctx.fd_step();
    let g = g.resized(n);

    let cols: Vec<Result<Vec<Real>>> = par::par_map_range(n, |j| {
        let plus = renormalize_word(ctx, &g.perturbed(j, &h), word).map_err(|e| match e {
            Error::DomainEscape { x, rho, .. } => Error::DomainEscape { x, rho, step: j },
            other => other,
        })?;
        let minus = renormalize_word(ctx, &g.perturbed(j, &(-&h)), word)?;
        let denom = &h * 2i64;
        Ok((0..n)
            .map(|i| (&plus.coeffs[i] - &minus.coeffs[i]) / &denom)
            .collect())
    });

    let mut columns = Vec::with_capacity(n);
    for col in cols {
        columns.push(col?);
    }
    Ok(Matrix::from_fn(n, |i, j| columns[j][i].clone()))
}

/// Eigenvalues of the truncated linearization, sorted by modulus.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpectrumReport {
    pub truncation: usize,
    /// (re, im) pairs, decreasing modulus.
    pub eigenvalues: Vec<(Real, Real)>,
    /// Count of |λ| > 1 + margin; values within the margin are flagged
    /// separately, not counted.
    pub expanding_count: usize,
    pub marginal_count: usize,
    /// Modulus of the largest eigenvalue.
    pub top: Real,
    /// Modulus of the second largest.
    pub gap: Real,
}

const EXPANDING_MARGIN: f64 = 1e-6;

pub fn spectrum(ctx: &Ctx, m: &Matrix) -> Result<SpectrumReport> {
    let gp = ctx.guard();
    let dec = matrix::schur(m, gp)?;
    let rel = dec.residual(m);
    if rel > ctx.tol_eig() {
        return Err(Error::EigSolverFailure {
            offdiag: rel.to_decimal(8),
        });
    }
    let mut eigs = dec.eigenvalues();
    eigs.sort_by(|a, b| {
        let ma = a.0.square() + a.1.square();
        let mb = b.0.square() + b.1.square();
        mb.total_cmp(&ma)
    });
    let margin = gp.from_f64(EXPANDING_MARGIN);
    let one = gp.one();
    let mut expanding = 0usize;
    let mut marginal = 0usize;
    for (re, im) in &eigs {
        let modulus = (re.square() + im.square()).sqrt();
        if modulus > &one + &margin {
            expanding += 1;
        } else if modulus > &one - &margin {
            marginal += 1;
        }
    }
    let top = (eigs[0].0.square() + eigs[0].1.square()).sqrt();
    let gap = if eigs.len() > 1 {
        (eigs[1].0.square() + eigs[1].1.square()).sqrt()
    } else {
        gp.zero()
    };
    Ok(SpectrumReport {
        truncation: m.n,
        eigenvalues: eigs,
        expanding_count: expanding,
        marginal_count: marginal,
        top,
        gap,
    })
}

/// Certified dominant eigenpair of the linearization.
pub fn top_eigenpair(ctx: &Ctx, m: &Matrix) -> Result<(Real, Vec<Real>)> {
    let report = spectrum(ctx, m)?;
    let (re, im) = &report.eigenvalues[0];
    if !im.is_zero() {
        return Err(Error::EigSolverFailure {
            offdiag: "dominant eigenvalue is not real".into(),
        });
    }
    let tol = ctx.tol_eig();
    matrix::dominant_real_eigenpair(m, re, &tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx {
            series_order: 24,
            ..Ctx::default()
        }
    }

    #[test]
    fn quadratic_embedding() {
        let ctx = ctx();
        let p = ctx.prec();
        let g = germ_from_quadratic(&ctx, &p.from_i64(-1)).unwrap();
        assert_eq!(g.order(), 24);
        assert!((&g.coeffs()[1] + 1i64).is_zero());
        assert!(g.coeffs()[2].is_zero());
        assert!(matches!(
            germ_from_quadratic(&ctx, &p.zero()),
            Err(Error::DegenerateCenter)
        ));

        let g2 = germ_from_quadratic(&ctx, &p.from_i64(-2)).unwrap();
        let one = p.one().round_to(ctx.guard());
        assert!((g2.eval(&one).unwrap() + 1i64).abs() < ctx.tol_sym());
    }

    #[test]
    fn eval_examples() {
        let ctx = ctx();
        let gp = ctx.guard();
        let mut coeffs = vec![gp.zero(); 24];
        coeffs[0] = gp.one();
        coeffs[1] = gp.parse("-1.5276").unwrap();
        coeffs[2] = gp.parse("0.1048").unwrap();
        let g = Germ::new(coeffs, ctx.rho_dom_real()).unwrap();
        let x = gp.parse("0.5").unwrap();
        let want = gp.parse("0.62465").unwrap();
        assert!((g.eval(&x).unwrap() - want).abs() < gp.pow10(-12));

        // out of domain
        assert!(g.eval(&gp.from_f64(1.7)).is_err());

        let gq = germ_from_quadratic(&ctx, &gp.from_i64(-1).round_to(ctx.prec())).unwrap();
        assert!((gq.eval(&gp.zero()).unwrap() - 1i64).is_zero());
        assert!(gq.eval(&gp.one()).unwrap().abs() < ctx.tol_sym());
    }

    #[test]
    fn renormalize_superstable_center_degenerates() {
        let ctx = ctx();
        let p = ctx.prec();
        let g = germ_from_quadratic(&ctx, &p.from_i64(-1)).unwrap();
        assert!(matches!(
            renormalize(&ctx, &g, 2),
            Err(Error::DegenerateCenter)
        ));
    }

    #[test]
    fn renormalize_preserves_normalization() {
        let ctx = ctx();
        let p = ctx.prec();
        // inside the doubling window but away from the center
        let g = germ_from_quadratic(&ctx, &p.from_f64(-1.38)).unwrap();
        let rg = renormalize(&ctx, &g, 2).unwrap();
        assert!(rg.coeffs()[0] == rg.coeffs()[0].one_like());
        assert!(rg.is_unimodal());
    }

    #[test]
    fn jacobian_of_empty_word_is_identity() {
        let ctx = ctx();
        let p = ctx.prec();
        let g = germ_from_quadratic(&ctx, &p.from_f64(-1.4)).unwrap();
        let j = jacobian(&ctx, &g, &RenormWord::from_periods(&[])).unwrap();
        for i in 0..j.n {
            for k in 0..j.n {
                let want = if i == k { 1i64 } else { 0 };
                assert!((j.at(i, k) - want).is_zero());
            }
        }
    }

    #[test]
    fn spectrum_of_identity() {
        let ctx = ctx();
        let gp = ctx.guard();
        let id = Matrix::identity(gp, 8);
        let rep = spectrum(&ctx, &id).unwrap();
        assert_eq!(rep.expanding_count, 0);
        assert_eq!(rep.marginal_count, 8);
        assert!((&rep.top - 1i64).abs() < gp.pow10(-40));
    }

    #[test]
    fn straighten_round_trips_sample_parameters() {
        let ctx = ctx();
        let p = ctx.prec();
        // a chaotic-side value, a window-interior value, and a Misiurewicz-ish one
        for c in [-1.9, -1.62, -0.9] {
            let c = p.from_f64(c);
            let g = germ_from_quadratic(&ctx, &c).unwrap();
            let back = straighten(&ctx, &g).unwrap();
            assert!(
                (&back - &c).abs() < p.pow10(-8),
                "round trip at {}: got {}",
                c,
                back
            );
        }
    }

    #[test]
    fn straighten_rejects_escaping_germ() {
        let ctx = ctx();
        let p = ctx.prec();
        let g = germ_from_quadratic(&ctx, &p.from_f64(-2.4)).unwrap();
        assert!(matches!(
            straighten(&ctx, &g),
            Err(Error::StraighteningFailed { .. })
        ));
    }
}
