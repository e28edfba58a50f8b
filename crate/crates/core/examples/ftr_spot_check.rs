//! Transform integrals of each family compared with Γ(s) times the function.
//!
//! cargo run --example ftr_spot_check

use zetadr::family::{Family, FamilyParams};
use zetadr::numerics::{HPComplex, HPReal};
use zetadr::quadrature::{default_tolerance, ftr_check};
use zetadr::zeta;

fn main() -> zetadr::Result<()> {
    let d = 64;
    let tol = default_tolerance(d);
    let params = FamilyParams::new(d)
        .with_a(HPComplex::from_f64(0.5, 0.0, d))
        .with_z(HPComplex::from_f64(0.5, 0.0, d));
    for (sigma, tau) in [(2.0, 0.0), (3.0, 0.0), (3.0, 1.0), (2.5, -4.0)] {
        let s = HPComplex::from_f64(sigma, tau, d);
        let (sr, tr) = (HPReal::from_f64(sigma, d), HPReal::from_f64(tau, d));
        let g = zeta::gamma(&s)?;
        let refs = [
            (Family::Gamma, g.clone()),
            (Family::Rzf, &g * &zeta::zeta(&s)?),
            (Family::Hzf, &g * &zeta::hurwitz(&s, &params.a)?),
            (Family::Hlzf, &g * &zeta::lerch(&params.z, &s, &params.a)?),
        ];
        for (fam, reference) in refs {
            let q = ftr_check(fam, &sr, &tr, &params, &tol)?;
            let rel = (&(&q.value - &reference).abs() / &reference.abs()).to_f64();
            println!("s = {sigma}{tau:+}i  {:<5} integral {}  rel. error {rel:.1e}", fam.as_str(), q.value.to_decimal(20));
        }
    }
    Ok(())
}
