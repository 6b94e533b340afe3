#pragma once

#include <hiso/certificate.hpp>
#include <hiso/isometry.hpp>

#include <cstdint>

namespace hiso {

struct TransferResult {
    /// f_m^#(V) = ker(A conj(Jf(0))^T), from the kernel presentation of V.
    LinearSubspace subspace;
    /// The equivalent presentation df_0(V) (+) ker conj(Jf(0))^T.
    LinearSubspace direct_sum;
    /// Largest principal angle between the two presentations (certified
    /// below angle_roundtrip on construction).
    double agreement_angle = 0.0;
};

/// The injective Grassmannian map induced by f: subspaces V of the source
/// with 1 <= dim V <= n-1 transfer to (N-n+dim V)-dimensional subspaces of
/// the target ambient space.
TransferResult transfer(const IsometryMap& f, const LinearSubspace& v,
                        const Tolerances& tol = {});

/// Homogeneous-coordinate form: spanning matrix [Jf(0) Z, Z_0] for a
/// full-column-rank n x m matrix Z (certified to span transfer(span Z)).
MatrixXcd homogeneous_coordinates(const IsometryMap& f, const MatrixXcd& z,
                                  const Tolerances& tol = {});

/// Sampled certificate for
///   f((V + v) ∩ B^n) = (f_m^#(V) + Jf(0) v) ∩ f(B^n)
/// and its f(v)-offset variant: forward inclusion, reverse inclusion on
/// image samples, and consistency of the two offsets.
Certificate section_preservation_check(const IsometryMap& f, const LinearSubspace& v,
                                       const VectorXcd& offset, int samples,
                                       std::uint64_t seed, const Tolerances& tol = {});

} // namespace hiso
