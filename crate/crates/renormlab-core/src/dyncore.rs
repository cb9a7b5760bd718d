//! Arbitrary-precision dynamics of the real quadratic family x -> x² + c.
//!
//! Everything downstream (nests, windows, germs) reduces to a handful of
//! primitives implemented here: orbit evaluation, attracting-cycle capture,
//! fixed points, kneading itineraries with the signed unimodal order, and
//! superstable parameter roots. The period-doubling chase at the bottom is
//! the independent oracle for the expansion rate of doubling
//! renormalization: the ratio of successive superstable gaps.

use std::cmp::Ordering;

use crate::config::Ctx;
use crate::error::{Error, Result};
use crate::real::Real;

/// Orbit points escape once they leave [-ESCAPE, ESCAPE].
const ESCAPE: f64 = 1e6;

/// A finite orbit segment; `escaped` marks truncation by the escape radius.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<Real>,
    pub escaped: bool,
}

/// `[x0, P_c(x0), ..., P_c^n(x0)]`, truncated early if the orbit escapes.
pub fn eval_orbit(ctx: &Ctx, c: &Real, x0: &Real, n: usize) -> Orbit {
    let escape = ctx.prec().from_f64(ESCAPE);
    let mut points = Vec::with_capacity(n + 1);
    let mut x = x0.clone();
    points.push(x.clone());
    for _ in 0..n {
        if x.abs() > escape {
            return Orbit {
                points,
                escaped: true,
            };
        }
        x = x.square() + c;
        points.push(x.clone());
    }
    Orbit {
        points,
        escaped: false,
    }
}

/// Both fixed points of x² + c.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    /// (1 - sqrt(1-4c))/2; orientation-reversing and repelling for c < -3/4.
    pub alpha: Real,
    /// (1 + sqrt(1-4c))/2; always repelling for c < 1/4.
    pub beta: Real,
}

pub fn fixed_points(ctx: &Ctx, c: &Real) -> Result<FixedPoints> {
    let p = ctx.prec();
    let disc = p.one() - c * 4i64;
    if disc.is_negative() {
        return Err(Error::NoRealFixedPoint {
            c: c.to_decimal(20),
        });
    }
    let root = disc.sqrt();
    let half = p.ratio(1, 2);
    Ok(FixedPoints {
        alpha: (p.one() - &root) * &half,
        beta: (p.one() + &root) * half,
    })
}

/// An attracting (or superattracting) cycle of x² + c.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub period: usize,
    pub points: Vec<Real>,
    /// Product of 2x over the cycle.
    pub multiplier: Real,
}

/// Captures the cycle the critical orbit converges to, if any of period
/// <= `p_max` with |multiplier| < 1 - tol exists.
///
/// The critical orbit is burned in for 10·p_max·D iterations (the attracting
/// cycle attracts the critical point whenever it exists), a near-return
/// detects the candidate period, and a Newton polish on P^p(x) - x pins the
/// cycle to working precision.
pub fn find_attracting_cycle(
    ctx: &Ctx,
    c: &Real,
    p_max: usize,
    tol: &Real,
) -> Result<Option<Cycle>> {
    let p = ctx.prec();
    let escape = p.from_f64(ESCAPE);
    let burn_in = 10 * p_max * ctx.digits as usize;
    let budget = burn_in + 4 * p_max + ctx.cycle_budget;

    let mut x = p.zero();
    for _ in 0..burn_in {
        x = x.square() + c;
        if x.abs() > escape {
            return Ok(None);
        }
    }

    // Near-return scan, retried with deeper burn-in while budget remains.
    let detect = p.from_f64(1e-7);
    let mut spent = burn_in;
    loop {
        let mut window = Vec::with_capacity(p_max + 1);
        window.push(x.clone());
        let mut y = x.clone();
        for _ in 0..p_max {
            y = y.square() + c;
            window.push(y.clone());
        }
        let mut candidate = None;
        for period in 1..=p_max {
            if (&window[period] - &window[0]).abs() < detect {
                candidate = Some(period);
                break;
            }
        }
        if let Some(period) = candidate {
            if let Some(cycle) = polish_cycle(ctx, c, &x, period)? {
                if cycle.multiplier.abs() < p.one() - tol {
                    return Ok(Some(cycle));
                }
                return Ok(None);
            }
        }
        // keep contracting toward the (slow) cycle
        for _ in 0..(2 * p_max * ctx.digits as usize) {
            x = x.square() + c;
        }
        spent += 2 * p_max * ctx.digits as usize + p_max;
        if spent > budget {
            return Err(Error::Inconclusive { budget });
        }
    }
}

/// Newton on P^p(x) - x from `x0`; returns the minimal-period cycle or None
/// if the polish leaves the basin.
fn polish_cycle(ctx: &Ctx, c: &Real, x0: &Real, period: usize) -> Result<Option<Cycle>> {
    let p = ctx.prec();
    let tol_close = ctx.tol_cycle();
    let mut x = x0.clone();
    let mut converged = false;
    for _ in 0..80 {
        // value and x-derivative of P^p
        let mut v = x.clone();
        let mut d = p.one();
        for _ in 0..period {
            d = &d * &v * 2i64;
            v = v.square() + c;
        }
        let g = &v - &x;
        let gp = &d - 1i64;
        if gp.abs() < p.pow10(-(ctx.digits as i32)) {
            return Ok(None); // parabolic degeneracy
        }
        let step = &g / &gp;
        x = &x - &step;
        if step.abs() < p.pow10(8 - ctx.digits as i32) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Ok(None);
    }

    let orbit = eval_orbit(ctx, c, &x, period);
    if orbit.escaped {
        return Ok(None);
    }
    let closure = (&orbit.points[period] - &x).abs();
    if closure > tol_close {
        return Ok(None);
    }
    // reduce to the minimal period
    let mut true_period = period;
    for d in 1..period {
        if period % d == 0 {
            let mut is_d = true;
            for i in 0..period {
                if (&orbit.points[(i + d) % period] - &orbit.points[i]).abs() > tol_close {
                    is_d = false;
                    break;
                }
            }
            if is_d {
                true_period = d;
                break;
            }
        }
    }
    let points: Vec<Real> = orbit.points[..true_period].to_vec();
    let mut multiplier = p.one();
    for pt in &points {
        multiplier = multiplier * pt * 2i64;
    }
    Ok(Some(Cycle {
        period: true_period,
        points,
        multiplier,
    }))
}

// ---------------------------------------------------------------------------
// Kneading itineraries
// ---------------------------------------------------------------------------

/// Itinerary symbol relative to the critical point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Sym {
    L,
    C,
    R,
}

impl Sym {
    fn rank(self) -> u8 {
        // base order for the parameter-monotone comparison: L > C > R
        match self {
            Sym::L => 2,
            Sym::C => 1,
            Sym::R => 0,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sym::L => 'L',
            Sym::C => 'C',
            Sym::R => 'R',
        }
    }
}

/// Finite kneading word over {L, C, R}; C appears only as a terminator.
///
/// `key` is the parity-adjusted rank word: whenever an L (the
/// orientation-reversing branch of x² + c) occurs, comparisons beyond it
/// flip. Lexicographic order on `key` therefore realizes the signed
/// unimodal order, oriented so that the word of a *smaller* parameter
/// compares greater.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kneading {
    pub symbols: Vec<Sym>,
    pub key: Vec<u8>,
}

impl Kneading {
    pub fn from_symbols(symbols: Vec<Sym>) -> Self {
        let mut key = Vec::with_capacity(symbols.len());
        let mut flips = 0usize;
        for s in &symbols {
            let r = s.rank();
            key.push(if flips % 2 == 0 { r } else { 2 - r });
            if *s == Sym::L {
                flips += 1;
            }
        }
        Kneading { symbols, key }
    }

    pub fn word(&self) -> String {
        self.symbols.iter().map(|s| s.as_char()).collect()
    }

    pub fn terminated(&self) -> bool {
        self.symbols.last() == Some(&Sym::C)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Build an itinerary by stepping `advance` from `start`, classifying each
/// point against the symbol tolerance. Stops at C (orbit hits the critical
/// point to within tol) or after `k` symbols.
pub fn itinerary<F>(start: Real, mut advance: F, k: usize, tol: &Real) -> Result<Kneading>
where
    F: FnMut(&Real) -> Result<Real>,
{
    let mut symbols = Vec::with_capacity(k);
    let mut x = start;
    for i in 0..k {
        if x.abs() <= *tol {
            symbols.push(Sym::C);
            break;
        }
        symbols.push(if x.is_negative() { Sym::L } else { Sym::R });
        if i + 1 < k {
            x = advance(&x)?;
        }
    }
    Ok(Kneading::from_symbols(symbols))
}

/// Kneading word of the quadratic P_c: the itinerary of the critical value.
pub fn kneading(ctx: &Ctx, c: &Real, k: usize) -> Kneading {
    let tol = ctx.tol_sym();
    let c = c.clone();
    itinerary(c.clone(), move |x| Ok(x.square() + &c), k, &tol)
        .expect("quadratic itinerary cannot fail")
}

/// Signed comparison of kneading words, oriented so that for c1 < c2 the
/// word of c1 compares Greater whenever the words differ.
pub fn kneading_compare(a: &Kneading, b: &Kneading) -> Result<Ordering> {
    let n = a.len().min(b.len());
    for i in 0..n {
        match a.key[i].cmp(&b.key[i]) {
            Ordering::Equal => continue,
            ord => return Ok(ord),
        }
    }
    if a.len() == b.len() {
        Ok(Ordering::Equal)
    } else {
        // one word C-terminated strictly inside the other
        Err(Error::IncomparablePrefix)
    }
}

// ---------------------------------------------------------------------------
// Superstable parameters
// ---------------------------------------------------------------------------

/// Critical-value section P_c^p(0) and its c-derivative.
fn critical_section(c: &Real, period: usize, escape: &Real) -> (Real, Real) {
    let one = {
        let mut o = c.clone();
        o = &o - c + 1i64; // one at c's precision
        o
    };
    let mut x = c.clone();
    let mut dx = one;
    for _ in 1..period {
        if x.abs() > *escape {
            break;
        }
        dx = &dx * &x * 2i64 + 1i64;
        x = x.square() + c;
    }
    (x, dx)
}

/// Root of c -> P_c^p(0) in the bracket, by sign scan, bisection, and a
/// Newton finish with the forward-propagated parameter derivative.
///
/// The scan must see exactly one sign change, and the root must not be
/// superstable for a proper divisor of `p`.
pub fn superstable(ctx: &Ctx, period: usize, lo: &Real, hi: &Real) -> Result<Real> {
    superstable_with_scan(ctx, period, lo, hi, 128)
}

pub fn superstable_with_scan(
    ctx: &Ctx,
    period: usize,
    lo: &Real,
    hi: &Real,
    scan_points: usize,
) -> Result<Real> {
    let p = ctx.prec();
    let escape = p.from_f64(ESCAPE);
    let tol = ctx.tol_root();

    let n = scan_points.max(2);
    let step = (hi - lo) / n as i64;
    let mut crossings: Vec<(Real, Real)> = Vec::new();
    let mut last_sign = {
        let (v0, _) = critical_section(lo, period, &escape);
        v0.signum()
    };
    // a grid point landing exactly on a root spans one crossing, not two
    let mut pending_zero: Option<Real> = None;
    let mut prev_c = lo.clone();
    for i in 1..=n {
        let ci = if i == n {
            hi.clone()
        } else {
            lo + &step * i as i64
        };
        let (vi, _) = critical_section(&ci, period, &escape);
        let s = vi.signum();
        if s == 0 {
            crossings.push((prev_c.clone(), ci.clone()));
            pending_zero = Some(ci.clone());
        } else if let Some(zc) = pending_zero.take() {
            // extend the zero's bracket to the first nonzero neighbor
            if let Some(last) = crossings.last_mut() {
                if last.1 == zc {
                    last.1 = ci.clone();
                }
            }
            last_sign = s;
        } else if last_sign != 0 && s != last_sign {
            crossings.push((prev_c.clone(), ci.clone()));
            last_sign = s;
        } else {
            last_sign = s;
        }
        prev_c = ci;
    }
    if crossings.is_empty() {
        return Err(Error::NoRootInBracket);
    }
    if crossings.len() > 1 {
        return Err(Error::MultipleRoots {
            count: crossings.len(),
        });
    }

    let (mut a, mut b) = crossings.into_iter().next().unwrap();
    let (mut fa, _) = critical_section(&a, period, &escape);
    for _ in 0..24 {
        let m = (&a + &b) / 2i64;
        let (fm, _) = critical_section(&m, period, &escape);
        if fm.signum() == fa.signum() && !fm.is_zero() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }

    let mut c = (&a + &b) / 2i64;
    let mut best = c.clone();
    let mut best_res: Option<Real> = None;
    for _ in 0..ctx.newton_max_iter {
        let (v, dv) = critical_section(&c, period, &escape);
        let res = v.abs();
        if best_res.as_ref().map_or(true, |r| res < *r) {
            best = c.clone();
            best_res = Some(res.clone());
        }
        if res < tol {
            break;
        }
        if dv.is_zero() {
            break;
        }
        c = &c - &v / &dv;
        if !(c >= a && c <= b) {
            // Newton left the bracket: fall back to its midpoint
            c = (&a + &b) / 2i64;
        }
    }
    let (v, _) = critical_section(&best, period, &escape);
    if v.abs() > tol {
        return Err(Error::BisectionStalled {
            iters: ctx.newton_max_iter,
        });
    }
    // reject roots that are superstable already for a proper divisor
    for d in 1..period {
        if period % d == 0 {
            let (vd, _) = critical_section(&best, d, &escape);
            if vd.abs() < tol {
                return Err(Error::NoRootInBracket);
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Doubling cascade oracle
// ---------------------------------------------------------------------------

/// Superstable parameters of periods 2^0, 2^1, ..., 2^max_level along the
/// doubling cascade, chased with geometric bracket prediction.
pub fn doubling_superstables(ctx: &Ctx, max_level: u32) -> Result<Vec<Real>> {
    let p = ctx.prec();
    let mut cs = vec![p.zero()];
    if max_level == 0 {
        return Ok(cs);
    }
    let c1 = superstable_with_scan(ctx, 2, &p.from_f64(-1.2), &p.from_f64(-0.8), 16)?;
    cs.push(c1);
    for level in 2..=max_level {
        let n = cs.len();
        let gap = &cs[n - 1] - &cs[n - 2];
        // successive gap ratios lie in (0.21, 0.32) along the cascade
        let lo = &cs[n - 1] + &gap * &p.from_f64(0.42);
        let hi = &cs[n - 1] + &gap * &p.from_f64(0.10);
        let period = 1usize << level;
        let root = superstable_with_scan(ctx, period, &lo, &hi, 8)?;
        cs.push(root);
    }
    Ok(cs)
}

/// Gap ratios (c_{n-1} - c_{n-2}) / (c_n - c_{n-1}) of a cascade.
pub fn gap_ratios(cs: &[Real]) -> Vec<Real> {
    let mut out = Vec::new();
    for n in 2..cs.len() {
        out.push((&cs[n - 1] - &cs[n - 2]) / (&cs[n] - &cs[n - 1]));
    }
    out
}

/// Limit of the gap-ratio sequence, estimated from its tail with one Aitken
/// delta-squared step (the ratios themselves converge geometrically).
pub fn delta_estimate(ratios: &[Real]) -> Real {
    let m = ratios.len();
    assert!(m >= 3, "need at least three ratios");
    let (r0, r1, r2) = (&ratios[m - 3], &ratios[m - 2], &ratios[m - 1]);
    let d1 = r1 - r0;
    let d2 = r2 - r1;
    let denom = &d2 - &d1;
    if denom.is_zero() {
        return r2.clone();
    }
    r2 - &d2 * &d2 / denom
}

/// Accumulation point of the doubling cascade, from the chase through
/// `level` plus the geometric tail correction.
pub fn feigenbaum_parameter(ctx: &Ctx, level: u32) -> Result<Real> {
    let cs = doubling_superstables(ctx, level)?;
    let n = cs.len();
    let g_last = &cs[n - 1] - &cs[n - 2];
    let g_prev = &cs[n - 2] - &cs[n - 3];
    let rho = &g_last / &g_prev;
    let one = ctx.prec().one();
    Ok(&cs[n - 1] + g_last * &rho / (one - &rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn orbit_fixed_critical_point() {
        let ctx = ctx();
        let p = ctx.prec();
        let orb = eval_orbit(&ctx, &p.zero(), &p.zero(), 5);
        assert_eq!(orb.points.len(), 6);
        assert!(!orb.escaped);
        for pt in &orb.points {
            assert!(pt.is_zero());
        }
    }

    #[test]
    fn orbit_ulam_neumann() {
        let ctx = ctx();
        let p = ctx.prec();
        let orb = eval_orbit(&ctx, &p.from_i64(-2), &p.zero(), 3);
        let want = [0i64, -2, 2, 2];
        for (pt, w) in orb.points.iter().zip(want) {
            assert!((pt - &p.from_i64(w)).abs() < ctx.tol_sym());
        }
    }

    #[test]
    fn orbit_superstable_two_cycle() {
        let ctx = ctx();
        let p = ctx.prec();
        let orb = eval_orbit(&ctx, &p.from_i64(-1), &p.zero(), 4);
        let want = [0i64, -1, 0, -1, 0];
        for (pt, w) in orb.points.iter().zip(want) {
            assert!((pt - &p.from_i64(w)).abs() < ctx.tol_sym());
        }
    }

    #[test]
    fn fixed_points_closed_forms() {
        let ctx = ctx();
        let p = ctx.prec();
        let fp = fixed_points(&ctx, &p.zero()).unwrap();
        assert!(fp.alpha.abs() < ctx.tol_sym());
        assert!((&fp.beta - 1i64).abs() < ctx.tol_sym());

        let fp = fixed_points(&ctx, &p.from_i64(-1)).unwrap();
        let phi = (p.one() + p.from_i64(5).sqrt()) / 2i64;
        assert!((&fp.beta - &phi).abs() < ctx.tol_sym());
        assert!((&fp.alpha - (p.one() - &phi)).abs() < ctx.tol_sym());

        let fp = fixed_points(&ctx, &p.ratio(1, 4)).unwrap();
        assert!((&fp.alpha - &fp.beta).abs() < ctx.tol_sym());

        assert!(fixed_points(&ctx, &p.ratio(1, 3)).is_err());

        // alpha is repelling and orientation-reversing below -3/4
        let fp = fixed_points(&ctx, &p.from_f64(-0.8)).unwrap();
        assert!(&fp.alpha * 2i64 < p.from_i64(-1));
    }

    #[test]
    fn attracting_cycle_examples() {
        let ctx = ctx();
        let p = ctx.prec();
        let tol = p.pow10(-6);

        let c0 = find_attracting_cycle(&ctx, &p.zero(), 4, &tol).unwrap().unwrap();
        assert_eq!(c0.period, 1);
        assert!(c0.multiplier.abs() < ctx.tol_cycle());

        let c = p.from_f64(-0.5);
        let cyc = find_attracting_cycle(&ctx, &c, 4, &tol).unwrap().unwrap();
        assert_eq!(cyc.period, 1);
        let want_x = (p.one() - p.from_i64(3).sqrt()) / 2i64;
        assert!((&cyc.points[0] - &want_x).abs() < ctx.tol_cycle());
        let want_mult = p.one() - p.from_i64(3).sqrt();
        assert!((&cyc.multiplier - &want_mult).abs() < ctx.tol_cycle());

        let c = p.from_f64(-1.1);
        let cyc = find_attracting_cycle(&ctx, &c, 4, &tol).unwrap().unwrap();
        assert_eq!(cyc.period, 2);
        // period-2 multiplier of x² + c is 4(c + 1)
        let want = (&c + 1i64) * 4i64;
        assert!((&cyc.multiplier - &want).abs() < ctx.tol_cycle());
    }

    #[test]
    fn cycle_multiplier_bound_enforced() {
        let ctx = ctx();
        let p = ctx.prec();
        // c = -2: critical orbit lands on the repelling fixed point
        let got = find_attracting_cycle(&ctx, &p.from_i64(-2), 4, &p.pow10(-6)).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn kneading_examples() {
        let ctx = ctx();
        let p = ctx.prec();
        assert_eq!(kneading(&ctx, &p.from_i64(-2), 4).word(), "LRRR");
        assert_eq!(kneading(&ctx, &p.zero(), 1).word(), "C");
        assert_eq!(kneading(&ctx, &p.from_i64(-1), 2).word(), "LC");
    }

    #[test]
    fn kneading_compare_examples() {
        let ctx = ctx();
        let p = ctx.prec();
        // itineraries of c = -2 and c = -1: smaller parameter compares greater
        let a = kneading(&ctx, &p.from_i64(-2), 4);
        let b = kneading(&ctx, &p.from_i64(-1), 4);
        assert_eq!(kneading_compare(&a, &b).unwrap(), Ordering::Greater);

        let w = kneading(&ctx, &p.from_f64(-1.3), 16);
        assert_eq!(kneading_compare(&w, &w).unwrap(), Ordering::Equal);

        let r = kneading(&ctx, &p.from_f64(0.2), 8);
        let l = kneading(&ctx, &p.from_f64(-0.5), 8);
        assert_eq!(kneading_compare(&l, &r).unwrap(), Ordering::Greater);
    }

    #[test]
    fn kneading_prefix_ambiguity() {
        let ctx = ctx();
        let p = ctx.prec();
        let short = kneading(&ctx, &p.from_i64(-1), 2); // LC
        let long = kneading(&ctx, &p.from_i64(-1), 8); // still LC: terminated
        assert_eq!(kneading_compare(&short, &long).unwrap(), Ordering::Equal);
        let other = kneading(&ctx, &p.from_i64(-2), 1); // "L"
        assert!(matches!(
            kneading_compare(&other, &short),
            Err(Error::IncomparablePrefix)
        ));
    }

    #[test]
    fn kneading_monotone_on_grid() {
        let ctx = ctx();
        let p = ctx.prec();
        // 200-point grid over [-2, 1/4]: compare is monotone in c
        let n = 200;
        let lo = p.from_i64(-2);
        let hi = p.ratio(1, 4);
        let step = (&hi - &lo) / n as i64;
        let mut prev: Option<Kneading> = None;
        for i in 0..=n {
            let c = &lo + &step * i as i64;
            let w = kneading(&ctx, &c, 24);
            if let Some(pw) = prev {
                match kneading_compare(&pw, &w) {
                    Ok(ord) => assert_ne!(ord, Ordering::Less, "kneading increased at {}", c),
                    Err(Error::IncomparablePrefix) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
            prev = Some(w);
        }
    }

    #[test]
    fn superstable_examples() {
        let ctx = ctx();
        let p = ctx.prec();
        let c1 = superstable(&ctx, 1, &p.from_f64(-0.5), &p.from_f64(0.2)).unwrap();
        assert!(c1.abs() < ctx.tol_root());

        let c2 = superstable(&ctx, 2, &p.from_f64(-1.2), &p.from_f64(-0.8)).unwrap();
        assert!((&c2 + 1i64).abs() < ctx.tol_root());

        // period 3: root of c³ + 2c² + c + 1, pinned here by an independent
        // bisection on that cubic
        let c3 = superstable(&ctx, 3, &p.from_f64(-1.8), &p.from_f64(-1.7)).unwrap();
        let cubic = |c: &Real| c.powi(3) + c.square() * 2i64 + c + 1i64;
        let (mut a, mut b) = (p.from_f64(-1.8), p.from_f64(-1.7));
        for _ in 0..200 {
            let m = (&a + &b) / 2i64;
            if cubic(&m).signum() == cubic(&a).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        let root = (&a + &b) / 2i64;
        assert!(
            (&c3 - &root).abs() < p.pow10(-40),
            "c3 = {} vs cubic root {}",
            c3,
            root
        );
        assert!((&c3 - &p.from_f64(-1.7548776662)).abs() < p.pow10(-9));
    }

    #[test]
    fn superstable_error_paths() {
        let ctx = ctx();
        let p = ctx.prec();
        assert!(matches!(
            superstable(&ctx, 2, &p.from_f64(-0.5), &p.from_f64(-0.2)),
            Err(Error::NoRootInBracket)
        ));
        // two period-4 roots (one primitive, one inside the doubling cascade)
        assert!(matches!(
            superstable(&ctx, 4, &p.from_f64(-2.0), &p.from_f64(-1.2)),
            Err(Error::MultipleRoots { .. })
        ));
        // divisor root: the period-2 center is not a primitive period-4 root
        assert!(superstable(&ctx, 4, &p.from_f64(-1.05), &p.from_f64(-0.95)).is_err());
    }

    #[test]
    fn superstable_stable_under_extra_digits() {
        let ctx30 = Ctx::new(34, 10);
        let ctx60 = Ctx::new(68, 10);
        let a = superstable(&ctx30, 3, &ctx30.prec().from_f64(-1.8), &ctx30.prec().from_f64(-1.7))
            .unwrap();
        let b = superstable(&ctx60, 3, &ctx60.prec().from_f64(-1.8), &ctx60.prec().from_f64(-1.7))
            .unwrap();
        let diff = (&a - &b.round_to(ctx30.prec())).abs();
        assert!(diff < ctx30.prec().pow10(4 - 34));
    }

    #[test]
    fn doubling_chase_matches_known_cascade() {
        let ctx = ctx();
        let p = ctx.prec();
        let cs = doubling_superstables(&ctx, 5).unwrap();
        let known = [
            0.0,
            -1.0,
            -1.3107026413368328,
            -1.3815474844320617,
            -1.3969453597045663,
            -1.4002530812148153,
        ];
        for (c, k) in cs.iter().zip(known) {
            assert!(
                (c - &p.from_f64(k)).abs() < p.pow10(-12),
                "cascade point {} vs {}",
                c,
                k
            );
        }
    }

    #[test]
    fn trapping_interval_invariant() {
        // for c in [-2, 1/4] and x0 in [-beta, beta], orbits stay in [-beta, beta]
        let ctx = ctx();
        let p = ctx.prec();
        let tol = ctx.tol_sym();
        for i in 0..12i64 {
            let c = p.from_i64(-2) + p.ratio(9, 48) * i; // up to 1/4 within range
            let beta = fixed_points(&ctx, &c).unwrap().beta;
            // interior samples: orbits seeded exactly on the repelling
            // boundary would drift out by amplified roundoff
            for j in -4..=4i64 {
                let x0 = &beta * &p.ratio(j, 5);
                let orb = eval_orbit(&ctx, &c, &x0, 50);
                assert!(!orb.escaped);
                for pt in orb.points {
                    assert!(pt.abs() <= &beta + &tol, "escaped trap at c = {}", c);
                }
            }
        }
    }
}
