use renormlab_core::*;

fn main() {
    let ctx = Ctx::default();
    let p = ctx.prec();
    let lo = p.from_f64(-1.2);
    let hi = p.from_f64(-0.8);
    let n = 128i64;
    let step = (&hi - &lo) / n;
    let mut prev = &lo.square() + &lo;
    for i in 1..=n {
        let ci = if i == n { hi.clone() } else { &lo + &step * i };
        let vi = ci.square() + &ci;
        if (prev.signum() != vi.signum() && vi.signum() != 0) || vi.is_zero() {
            println!(
                "crossing at i={} c={} v={} prev={}",
                i,
                ci.to_decimal(25),
                vi.to_decimal(8),
                prev.to_decimal(8)
            );
        }
        prev = vi;
    }
}
