//! Builds F_25, finds its canonical generator and sorts a few elements into
//! cube cosets via discrete logarithms.
//!
//!     cargo run --example field_arithmetic

use invopoly::{build_field, GeneratorCtx};

fn main() -> invopoly::Result<()> {
    let f = build_field(5, 2)?;
    println!("F_{} = F_{}[t] / {:?}", f.q(), f.p(), f.modulus());

    let t = f.from_coeffs(&[0, 1])?;
    let x = f.add(&f.mul(&t, &t), &f.add(&t, &f.one()));
    println!("t^2 + t + 1 = {}", f.format_elem(&x));
    println!("(t^2 + t + 1)^-1 = {}", f.format_elem(&f.inv(&x)?));
    println!("order(t) = {}", f.order(&t)?);

    let gctx = GeneratorCtx::canonical(f.clone())?;
    let f = gctx.field();
    println!(
        "gamma = {}  omega = gamma^{} = {}  ({} generators total)",
        f.format_elem(gctx.gamma()),
        gctx.m(),
        f.format_elem(gctx.omega()),
        f.enumerate_generators().len()
    );

    for idx in [1, 2, 7, 13, 24] {
        let y = f.from_index(idx)?;
        println!(
            "{:>6}  dlog = {:>2}  coset = {}",
            f.format_elem(&y),
            gctx.dlog(&y)?,
            gctx.coset_index(&y)?
        );
    }
    Ok(())
}
