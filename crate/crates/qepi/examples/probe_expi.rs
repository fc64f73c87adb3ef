fn main() {
    use qepi::fock::*;
    use qepi::linalg;
    let d = 40;
    let cutoff = FockCutoff::single(d).unwrap();
    let theta = 0.5;
    let u = displacement_along(&cutoff, QuadratureIndex::q(0), theta).unwrap();
    let vac = make_fock(0, d).unwrap();
    let displaced = TruncatedState::from_density(linalg::conjugate(&u, vac.rho()), cutoff.clone()).unwrap();
    let q = quadrature_operator(&cutoff, QuadratureIndex::q(0));
    let p = quadrature_operator(&cutoff, QuadratureIndex::p(0));
    println!("<Q> = {} (want 0.5), <P> = {} (want 0)", displaced.expect_re(&q), displaced.expect_re(&p));
    let uinv = displacement_along(&cutoff, QuadratureIndex::q(0), -theta).unwrap();
    println!("|U U_inv - I| = {}", linalg::fro_norm(&(u.dot(&uinv) - linalg::eye(d))));
    // relative entropy probe
    use qepi::information::*;
    let t = make_thermal(1.0, 50).unwrap();
    let vac50 = make_fock(0, 50).unwrap();
    println!("S(vac||th1) = {:?} want {}", relative_entropy(&vac50, &t).unwrap(), 2.0f64.ln());
}
