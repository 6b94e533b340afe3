#pragma once

#include <hiso/jet_series.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

namespace hiso {

/// Deterministic sample source. One SampleStream per sub-check: the stream
/// is derived from (seed, label) so adding a check never perturbs the draws
/// of another, and reports stay byte-identical under a fixed seed. The
/// uint64 -> double mapping is spelled out here rather than delegated to
/// std distributions, so the sequence is identical across standard
/// libraries.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::string_view label);

    std::uint64_t next_u64();

    /// Uniform in [0, 1): top 53 bits of the generator output.
    double uniform();
    double uniform(double lo, double hi);

    /// Standard complex Gaussian (Box-Muller on two uniforms).
    Complex gaussian();

    /// Uniform-direction point with uniform radius in [0, rmax]
    /// (rays through the origin are sampled evenly, which is what the
    /// membership and retraction checks want).
    Eigen::VectorXcd ball_point(int dim, double rmax);

    /// Complex scalar of modulus <= rmax, uniform in angle and radius.
    Complex disk_point(double rmax);

    /// Unimodular complex scalar.
    Complex phase();

    Eigen::VectorXcd gaussian_vector(int dim);

private:
    std::uint64_t state_;
};

/// Haar-ish random unitary of size n (QR of a Gaussian matrix with the
/// phase convention fixed so the result is deterministic).
Eigen::MatrixXcd random_unitary(int n, SampleStream& stream);

} // namespace hiso
