//! Concrete finite matrix groups: `GL_N(F_q)`, its standard parabolic,
//! Levi and unipotent subgroups, `S_n`, and generated subgroups. Conjugacy
//! classes, class algebra constants and exponents.

mod classes;
mod orbits;
mod parabolic;
mod spec;

pub use classes::{
    class_constant, class_key, class_members, conjugacy_classes, exponent, lcm, ClassConstants, ClassKey,
    ConjClassTable,
};
pub use orbits::{gl_generators, levi_generators, orbit_partition, radical_generators, ElementMap};
pub use parabolic::{parabolic, ParabolicData};
pub use spec::{
    cycle_type, enumerate_group, gl_order, permutation_matrix, permutation_of, permutations, FiniteGroup,
    GroupSpec, DEFAULT_ORDER_BOUND,
};
