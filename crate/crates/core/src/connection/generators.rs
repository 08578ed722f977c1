use num_complex::Complex64;

use crate::linalg::{self, CMatrix, I};

fn m2(e: [Complex64; 4]) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &e)
}

/// Pauli matrices `σ_1, σ_2, σ_3`.
pub fn pauli() -> [CMatrix; 3] {
    let (z, o) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    [m2([z, o, o, z]), m2([z, -I, I, z]), m2([o, z, z, -o])]
}

/// Gell-Mann matrices `λ_1 … λ_8`, `Tr(λ_a λ_b) = 2δ_ab`.
pub fn gell_mann() -> [CMatrix; 8] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let s = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let m = |e: [Complex64; 9]| CMatrix::from_row_slice(3, 3, &e);
    [
        m([z, o, z, o, z, z, z, z, z]),
        m([z, -I, z, I, z, z, z, z, z]),
        m([o, z, z, z, -o, z, z, z, z]),
        m([z, z, o, z, z, z, o, z, z]),
        m([z, z, -I, z, z, z, I, z, z]),
        m([z, z, z, z, z, o, z, o, z]),
        m([z, z, z, z, z, -I, z, I, z]),
        m([s, z, z, z, s, z, z, z, s * -2.0]),
    ]
}

/// Anti-Hermitian su(2) basis `t_a = −(i/2)σ_a`.
pub fn su2() -> Vec<CMatrix> {
    pauli().iter().map(|s| s * (-I * 0.5)).collect()
}

/// Anti-Hermitian su(3) basis `t_a = −(i/2)λ_a`.
pub fn su3() -> Vec<CMatrix> {
    gell_mann().iter().map(|l| l * (-I * 0.5)).collect()
}

/// `f_abc` with `[t_a, t_b] = f_abc t_c` for a basis with `Tr(t_a t_b) = −½δ_ab`.
pub fn structure_constants(basis: &[CMatrix]) -> Vec<f64> {
    let k = basis.len();
    let mut f = vec![0.0; k * k * k];
    for a in 0..k {
        for b in 0..k {
            let c_ab = linalg::commutator(&basis[a], &basis[b]);
            for c in 0..k {
                f[(a * k + b) * k + c] = -2.0 * linalg::trace(&(&c_ab * &basis[c])).re;
            }
        }
    }
    f
}
