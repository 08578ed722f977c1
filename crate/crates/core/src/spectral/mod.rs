//! Finite spectral triples, inner fluctuations and the Standard-Model finite
//! Dirac operator.

mod fluctuation;
mod sm;
mod triple;

pub use fluctuation::{
    fluctuate, gauge_transform_fluctuation, gauge_unitary, inner_fluctuations, one_form_span, spectrum,
    split_u1_u3, unimodular_projection, FluctuationElement, OneFormSpan, Projection, UnimodularSplit,
};
pub use sm::{
    build_sm_finite, lepton_yukawa, quark_yukawa, represent, two_point, two_point_doubled, AlgebraElement, Sector,
    SectorDims, SmFinite, YukawaData, YukawaMode,
};
pub use triple::{check_axioms, AxiomCheck, AxiomReport, FiniteTriple, RealStructure, Signs};

/// Named finite triples available to configs.
pub fn builtin(name: &str, mass: f64) -> crate::Result<FiniteTriple> {
    match name {
        "two-point" => two_point(mass),
        "two-point-doubled" => two_point_doubled(num_complex::Complex64::new(mass, 0.0)),
        "sm-leptons" | "sm-full" => {
            let k = crate::linalg::identity(3) * num_complex::Complex64::new(mass, 0.0);
            let y = YukawaData::new(k.clone(), k.clone(), k, YukawaMode::Hermitian)?;
            let sector = if name == "sm-leptons" { Sector::Leptons } else { Sector::Full };
            Ok(build_sm_finite(&y, sector)?.triple)
        }
        other => Err(crate::Error::InvalidParameter(format!("unknown finite triple '{other}'"))),
    }
}
