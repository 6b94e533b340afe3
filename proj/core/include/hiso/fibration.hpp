#pragma once

#include <hiso/certificate.hpp>
#include <hiso/isometry.hpp>

#include <cstdint>

namespace hiso {

/// The induced submersion attached to a verified isometry f: the domain
/// D_f = {z in Omega : pi(z) in D} with pi(z) = M(f) z, the projection,
/// the retraction r_f = f o pi, fibers and the tangent splitting. For a
/// ball source with unit target weights the defining seminorm condition
/// reads ||conj(Jf(0))^T z|| < k, the form the margins are reported in.
class Fibration {
public:
    explicit Fibration(IsometryMap f, const Tolerances& tol = {});

    const IsometryMap& map() const { return map_; }
    double k() const { return map_.k; }
    const MatrixXcd& jf0() const { return jac_.jf0; }
    /// n x N weighted projection matrix M(f).
    const MatrixXcd& m_matrix() const { return m_; }
    /// Orthonormal basis of ker M(f) = ker d(pi), N x (N-n). Constant: the
    /// projection is linear.
    const MatrixXcd& kernel() const { return kernel_; }

    /// z in D_f: inside the target domain and projecting into the source.
    /// Margin is min(target margin, seminorm slack), the latter reported in
    /// the k-scale for irreducible sources.
    MembershipResult in_df(const VectorXcd& z) const;

    /// pi(z) = M(f) z; throws domain_error outside D_f.
    VectorXcd project(const VectorXcd& z) const;

    /// r_f(z) = f(pi(z)); idempotent, fixes exactly the image points.
    VectorXcd retract(const VectorXcd& z) const;

    struct AffineFiber {
        VectorXcd offset;          ///< f(w)
        LinearSubspace directions; ///< ker M(f)
    };

    /// The fiber through x = f(w), presented as offset + kernel; w must
    /// project back onto itself through the map (image-point check).
    AffineFiber fiber_presentation(const VectorXcd& w) const;

    /// Jf at an interior source point: central differences on the closed
    /// form when available (step 1e-5), exact derivatives of the truncated
    /// jets otherwise.
    MatrixXcd jacobian_at(const VectorXcd& w) const;

    /// Certifies T_{f(w)}S (+) ker d(pi) = C^N: smallest singular value of
    /// the N x N concatenation [Jf(w) | kernel] must exceed tau_split.
    Certificate splitting_check(const VectorXcd& w) const;

    /// Sampled two-sided check of f(B(w0, r)) = D_f(f(w0), r) ∩ f(B^n).
    Certificate ball_image_identity(const VectorXcd& w0, double r, int samples,
                                    std::uint64_t seed) const;

private:
    IsometryMap map_;
    Tolerances tol_;
    JacobianAtZero jac_;
    MatrixXcd m_;
    MatrixXcd kernel_;
};

/// Sampled D_f geometry: lambda z stays inside for |lambda| <= 1 and
/// chords stay inside at t in {1/4, 1/2, 3/4}; zero failures required.
/// Sample base points keep a safety margin off the boundary.
Certificate balanced_convex_check(const Fibration& fib, int samples, std::uint64_t seed,
                                  const Tolerances& tol = {});

/// Sampled retraction identities: project(f(w)) = w, retract idempotent,
/// z - retract(z) in ker(project), and retract(z - retract(z)) = 0
/// whenever the difference lies in D_f.
Certificate retraction_suite(const Fibration& fib, int samples, std::uint64_t seed,
                             const Tolerances& tol = {});

/// splitting_check at sampled interior points ||w|| <= 0.7; reports the
/// worst smallest singular value.
Certificate splitting_suite(const Fibration& fib, int samples, std::uint64_t seed,
                            const Tolerances& tol = {});

} // namespace hiso
