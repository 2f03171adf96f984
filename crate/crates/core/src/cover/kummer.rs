//! Power-residue symbols for Kummer components `Y^d = D`.

use crate::field::{FieldCtx, Fq};
use crate::poly::{resultant, Poly};

/// `k` with `x = zeta_d^k`, for `x` a `d`-th root of unity.
pub fn dlog_root_of_unity(ctx: &FieldCtx, x: Fq, d: u32) -> usize {
    let step = (ctx.q() - 1) / d;
    let l = ctx.log(x).expect("root of unity is nonzero");
    debug_assert_eq!(l % step, 0, "not a d-th root of unity");
    (l / step) as usize
}

/// The symbol of a nonzero constant: `c^((q-1)/d)` as an exponent of `zeta_d`.
pub fn constant_symbol(ctx: &FieldCtx, c: Fq, d: u32) -> usize {
    let step = (ctx.q() - 1) / d;
    dlog_root_of_unity(ctx, ctx.pow(c, step as u64), d)
}

/// `(u / f)_d` for monic `f` coprime to `u`: the symbol of the norm
/// `Res(f, u) = prod_{f(a)=0} u(a)`. Completely multiplicative in `f`.
pub fn symbol(u: &Poly, f: &Poly, d: u32) -> Option<usize> {
    let ctx = u.ctx();
    let r = resultant(f, u);
    if r == 0 {
        return None;
    }
    Some(constant_symbol(ctx, r, d))
}
