//! Torus-equivariant data of toric surfaces and their Hilbert schemes.

pub mod character;
pub mod fixed;
pub mod model;

pub use character::{EquivChar, Weight};
pub use fixed::{
    ext_pair_char, ext_to_line_char, fixed_points, ideal_pair_char, partitions, struct_sheaf_char, tangent_char,
    HilbFixedPoint, Partition,
};
pub use model::{Chart, EquivDivisor, ToricSurfaceModel};
