//! Hardy-space primitives on the unit circle: polynomials, Laurent tails,
//! the σ-involution, projection onto `V_q` and winding numbers.

mod jet;
mod poly;
mod projection;
mod series;
mod winding;

pub use jet::Jet;
pub use poly::{reciprocal_poly, ComplexPoly, MonicPoly};
pub(crate) use poly::eigenvalues;
pub use projection::{
    check_denominator, gram_matrix, grid_size_for, project_on_grid, project_vq, Projection,
};
pub use series::{
    circle_points, dft, inner_product, CircleGrid, Evaluator, InnerProduct, LaurentTail,
    PowerSeries,
};
pub use winding::{winding_adaptive, winding_number};
