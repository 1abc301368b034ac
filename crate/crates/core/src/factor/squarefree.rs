use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ff::{FFElem, FfPoly};

/// `f^(1/p)` for `f` with `f' = 0`, i.e. supported on multiples of `p`.
fn pth_root_poly(f: &FfPoly) -> FfPoly {
    let field = f.field();
    let p = field.p() as usize;
    let cs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pth_root(c))
        .collect();
    FfPoly::new(field.clone(), cs)
}

fn sff(f: &FfPoly, scale: usize, out: &mut Vec<(FfPoly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().p() as usize;
    let df = f.derivative();
    if df.is_zero() {
        sff(&pth_root_poly(f), scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i * scale));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if !c.is_one() {
        sff(&pth_root_poly(&c), scale * p, out);
    }
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// squarefree parts with distinct multiplicities, ascending by multiplicity.
/// The product of `part^mult` is the monic associate of `f`.
pub fn squarefree(f: &FfPoly) -> Result<Vec<(FfPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::arg(
            "squarefree decomposition of the zero polynomial",
        ));
    }
    let mut raw = Vec::new();
    sff(&f.monic(), 1, &mut raw);
    let mut merged: BTreeMap<usize, FfPoly> = BTreeMap::new();
    for (g, m) in raw {
        let slot = merged
            .entry(m)
            .or_insert_with(|| FfPoly::constant(g.field().clone(), FFElem::ONE));
        *slot = slot.mul(&g);
    }
    Ok(merged.into_iter().map(|(m, g)| (g, m)).collect())
}
