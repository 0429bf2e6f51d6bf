//! Certified majorants, κ certificates, and the growth inequalities they imply.

pub mod growth;
pub mod kappa;
pub mod majorant;

pub use growth::{verify_growth, GrowthCheck, GrowthReport, SampleSpec};
pub use kappa::{
    compare_a_b, compare_with, kappa_from, lower_bound, optimize_kappa, standard_certificate, CertificateJson, Comparison, Grid,
    KappaCertificate, Variant,
};
pub use majorant::{majorant_eval, Majorant, MajorantKind};
