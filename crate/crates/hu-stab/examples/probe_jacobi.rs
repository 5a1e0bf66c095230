use hu_stab::{C64, Mat};

struct Rng(u64);
impl Rng {
    fn next(&mut self) -> u64 { let mut x = self.0; x ^= x << 13; x ^= x >> 7; x ^= x << 17; self.0 = x; x }
    fn f(&mut self) -> f64 { (self.next() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0 }
    fn c(&mut self) -> C64 { C64::new(self.f(), self.f()) }
}

fn main() {
    let mut rng = Rng(0x12345678);
    let mut worst_recon: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    let mut unordered = 0usize;
    for trial in 0..3000 {
        let m = 1 + (rng.next() % 16) as usize;
        let n = 1 + (rng.next() % 12) as usize;
        let k = m.min(n);
        let r = match trial % 3 { 0 => k, 1 => (rng.next() as usize) % (k + 1), _ => if k > 1 { k - 1 } else { 0 } };
        let a = if r == 0 { Mat::zeros(m, n) } else {
            let x = Mat::from_fn(m, r, |_, _| rng.c());
            let y = Mat::from_fn(r, n, |_, _| rng.c());
            &x * &y
        };
        let norm_a = a.frobenius_norm();
        let svd = a.svd().expect("svd");
        for i in 1..svd.singular_values.len() {
            if svd.singular_values[i] > svd.singular_values[i-1] { unordered += 1; }
        }
        let rerr = (&svd.reconstruct() - &a).frobenius_norm() / norm_a.max(1.0);
        worst_recon = worst_recon.max(rerr);
        let uerr = (&(&svd.u.adjoint() * &svd.u) - &Mat::identity(m)).frobenius_norm();
        let verr = (&(&svd.vstar * &svd.vstar.adjoint()) - &Mat::identity(n)).frobenius_norm();
        worst_orth = worst_orth.max(uerr.max(verr));
    }
    println!("worst reconstruction rel err: {worst_recon:.3e}");
    println!("worst orthonormality err:    {worst_orth:.3e}");
    println!("unordered count:             {unordered}");

    let mut worst64: f64 = 0.0;
    let mut worst64o: f64 = 0.0;
    for t in 0..50 {
        let r = if t % 2 == 0 { 64 } else { 40 };
        let x = Mat::from_fn(64, r, |_, _| rng.c());
        let y = Mat::from_fn(r, 64, |_, _| rng.c());
        let a = &x * &y;
        let svd = a.svd().expect("svd64");
        worst64 = worst64.max((&svd.reconstruct() - &a).frobenius_norm() / a.frobenius_norm());
        worst64o = worst64o.max((&(&svd.u.adjoint() * &svd.u) - &Mat::identity(64)).frobenius_norm());
    }
    println!("worst 64x64 recon rel err:   {worst64:.3e}");
    println!("worst 64x64 U orth err:      {worst64o:.3e}");
}
