//! Linear-algebra statements behind the multiplicity-one results: theta
//! invariance of orbits on `X_{n,k}`, the two-sided parabolic orbit lemma and
//! its dual, and the Deligne filtration of a nilpotent operator.

mod deligne;
mod keylemma;
mod xpairs;

pub use deligne::{
    all_deligne_type_filtrations, deligne_filtration, deligne_uniqueness_check, jordan_chains,
    nilpotent_representatives, nu_image_check, unique_filtration_matches, DeligneFiltration, NuImageReport,
    UniquenessReport,
};
pub use keylemma::{
    dual_key_lemma_check, key_lemma_check, two_sided_orbit, violation_holds, HomDomain, OrbitCheckReport, OrbitViolation,
    TwoSided,
};
pub use xpairs::{
    enumerate_x, theta_orbit_witness, verify_geometric_statement, x_size_bound, CertificateStatus,
    GeometricReport, OrbitCertificate, XPair,
};
