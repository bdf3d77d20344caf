//! Critical points of `φ_n(q) = ‖𝔉 − L_q/q‖²` over monic denominators.

mod functional;
mod hessian;
mod solver;

pub use functional::{compute_uq, gradient, phi_n, ContourSplit, Evaluation, Functional, State};
pub use hessian::{hessian, morse_index, morse_index_of, quadratic_via_nu, HessianForm};
pub use solver::{
    index_audit, multistart, random_start, root_distance, solve_critical, start_rng, CriticalPointRecord, IndexAudit, IterateRecord,
    MultistartResult, SolveOutcome, Stage, Start, StartFailure,
};

use crate::hardy::{ComplexPoly, MonicPoly};
use crate::pade::common_roots;

/// Whether `L` and `q` have no common root within `tol`, and the number of
/// common roots found.
///
/// ```
/// use num_complex::Complex64 as C64;
/// use ratl2::critical::irreducibility_check;
/// use ratl2::hardy::{ComplexPoly, MonicPoly};
/// let q = MonicPoly::from_roots(&[C64::new(0.5, 0.0), C64::new(0.25, 0.0)]);
/// let l = ComplexPoly::from_roots(&[C64::new(0.5, 0.0)]);
/// assert_eq!(irreducibility_check(&l, &q, 1e-8), (false, 1));
/// ```
pub fn irreducibility_check(l: &ComplexPoly, q: &MonicPoly, tol: f64) -> (bool, usize) {
    let q_roots = q.roots();
    if l.is_zero() {
        return (q_roots.is_empty(), q_roots.len());
    }
    let k = common_roots(&l.roots(), &q_roots, tol).len();
    (k == 0, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn constant_numerator_is_irreducible() {
        let q = MonicPoly::from_roots(&[c(0.0, 0.0)]);
        assert_eq!(irreducibility_check(&ComplexPoly::one(), &q, 1e-8), (true, 0));
    }

    #[test]
    fn tolerance_separates_nearby_roots() {
        let q = MonicPoly::from_roots(&[c(0.5, 0.0), c(0.25, 0.0)]);
        let l = ComplexPoly::from_roots(&[c(0.5 + 1e-4, 0.0)]);
        assert_eq!(irreducibility_check(&l, &q, 1e-8), (true, 0));
        assert_eq!(irreducibility_check(&l, &q, 1e-3), (false, 1));
    }
}
