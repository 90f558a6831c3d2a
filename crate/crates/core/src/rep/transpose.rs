//! Auslander–Reiten transpose, duality and translation.

use crate::field::Field;

use super::present::projective_map;
use super::Rep;

/// `Tr M`, the cokernel of `Hom_A(f, A)` for a minimal projective
/// presentation `f: P1 -> P0` of `M`. It is a module over the opposite
/// algebra without projective summands.
pub fn transpose<F: Field>(m: &Rep<F>) -> Rep<F> {
    let alg = m.algebra();
    let op = alg.opposite();
    let g = m.generators();
    let images: Vec<Vec<F>> =
        g.p0.iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut v = Vec::new();
                for (j, &y) in g.p1.iter().enumerate() {
                    let mut part = vec![F::zero(); op.basis_len(y, x)];
                    let mut pos: usize = g.p0[..i].iter().map(|&x0| alg.basis_len(x0, y)).sum();
                    for p in alg.basis(x, y) {
                        let c = &g.relations[j][pos];
                        pos += 1;
                        if c.is_zero() {
                            continue;
                        }
                        for (k, e) in op.reduce(&p.reversed()).iter().enumerate() {
                            part[k] = part[k].add(&c.mul(e));
                        }
                    }
                    v.extend(part);
                }
                v
            })
            .collect();
    projective_map(&op, &g.p0, &g.p1, &images).cokernel().module
}

/// `D M = Hom_K(M, K)` over the opposite algebra.
pub fn dual<F: Field>(m: &Rep<F>) -> Rep<F> {
    let op = m.algebra().opposite();
    let maps = m.maps().iter().map(|a| a.transpose()).collect();
    Rep::new_unchecked(op, m.dims().to_vec(), maps)
}

/// `τ M = D Tr M`, returned over the algebra of `m`.
pub fn tau<F: Field>(m: &Rep<F>) -> Rep<F> {
    dual(&transpose(m)).rehome(m.algebra())
}

/// `τ⁻¹ M = Tr D M`, returned over the algebra of `m`.
pub fn tau_inverse<F: Field>(m: &Rep<F>) -> Rep<F> {
    transpose(&dual(m)).rehome(m.algebra())
}
