#pragma once

#include <hiso/certificate.hpp>
#include <hiso/domains.hpp>
#include <hiso/linear_subspace.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hiso {

/// A candidate holomorphic isometry germ at 0, f(0) = 0. `jets` holds one
/// JetSeries per target component, all in source-dim variables at a common
/// order. `k` is the isometry constant; for an irreducible source it must
/// coincide with the source weight. `closed_form` optionally names a
/// registry evaluator for exact pointwise evaluation:
///   "ball_linear"                f(w) = Jf(0) w, read off the jets
///   "typeIV_graph"               (w, 0, ..., 0, 1 - sqrt(1 - sum w_j^2))
///   "typeIV_phase_graph:<theta>" the phase-rotated graph solution
///   "diag_square"                w -> (w, w)
struct IsometryMap {
    DomainSpec source;
    DomainSpec target;
    double k = 1.0;
    std::vector<JetSeries> jets;
    std::string closed_form;

    int source_dim() const { return source.dim(); }
    int target_dim() const { return target.dim(); }
    int order() const;

    /// Checks the structural invariants: component count, shared num_vars
    /// and order, vanishing constant terms, k consistent with the source
    /// weight when the source is irreducible. Throws on violation.
    void validate(const Tolerances& tol = {}) const;
};

struct JacobianAtZero {
    MatrixXcd jf0;    ///< N x n, degree-1 jet coefficients
    MatrixXcd lf;     ///< n x N, L_f = (1/k) conj(Jf(0))^T
    MatrixXcd kernel; ///< N x (N-n), orthonormal basis of ker conj(Jf(0))^T
};

/// Reads the degree-1 coefficients and computes the kernel by SVD. Throws
/// hypothesis_error when the differential is rank-deficient (such a map
/// cannot satisfy the isometry identities).
JacobianAtZero jacobian_at_zero(const IsometryMap& f, const Tolerances& tol = {});

/// The weighted projection matrix
///   M(f) = diag(1/lambda_i) conj(Jf(0))^T diag(mu_j)   (n x N),
/// rank n certified by singular values.
MatrixXcd matrix_M(const IsometryMap& f, const Tolerances& tol = {});

bool has_closed_form(const IsometryMap& f);

/// Exact pointwise evaluation through the closed-form registry; throws
/// hypothesis_error for unknown tags.
VectorXcd evaluate_closed_form(const IsometryMap& f, const VectorXcd& w);

/// Evaluate the truncated jets at a point (truncation error is the
/// caller's concern).
VectorXcd evaluate_jets(const IsometryMap& f, const VectorXcd& w);

/// Closed form when available, jets otherwise.
VectorXcd evaluate_point(const IsometryMap& f, const VectorXcd& w);

/// Polarized functional equation on jets: both sides of
///   prod_j h_{Omega_j}(f_j(w), f_j(zeta))^{mu_j}
///     = prod_i h_{D_i}(w^i, zeta^i)^{lambda_i}
/// are built as jets in (w, conj(zeta)) truncated at `order` and compared
/// coefficientwise against eps_fun.
Certificate verify_functional_equation(const IsometryMap& f, int order,
                                       const Tolerances& tol = {});

/// Pointwise cross-check of the same identity at sampled pairs within
/// radius tol.r_sample, using the closed form when available.
Certificate verify_functional_equation_pointwise(const IsometryMap& f, int samples,
                                                 std::uint64_t seed,
                                                 const Tolerances& tol = {});

/// L_f(f(w)) = k w at sampled points; residual bound eps_fun * k.
Certificate verify_linear_functional(const IsometryMap& f, int samples, std::uint64_t seed,
                                     const Tolerances& tol = {});

/// conj(Jf(0))^T Jf(0) = k I_n within eps_lin.
Certificate verify_jacobian_identity(const IsometryMap& f, const Tolerances& tol = {});

/// M(f) f(w)^T = w^T at sampled points within eps_lin (the weighted-product
/// consequence of differentiating the functional equation).
Certificate verify_projection_identity(const IsometryMap& f, int samples, std::uint64_t seed,
                                       const Tolerances& tol = {});

/// Some standard corpus maps.
IsometryMap identity_ball_map(int n, int order);
/// The graph isometry ball(n-1) -> typeIV(n),
/// f(w) = (w, 1 - sqrt(1 - sum w_j^2)), as jets plus closed form.
IsometryMap type_iv_graph_map(int n, int order);
/// The diagonal (disk, 2 g) -> (disk^2, g) isometry w -> (w, w).
IsometryMap diagonal_disk_map(int order);

} // namespace hiso
