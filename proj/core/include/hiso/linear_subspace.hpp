#pragma once

#include <hiso/errors.hpp>
#include <hiso/tolerances.hpp>

#include <Eigen/Dense>

#include <vector>

namespace hiso {

using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

/// Numerical rank: number of singular values >= tau_rank * sigma_max.
int numerical_rank(const MatrixXcd& m, double tau_rank = 1e-9);

/// Orthonormal basis of the null space {x : m x = 0}, via full SVD with the
/// relative threshold tau_rank. Columns span the kernel.
MatrixXcd kernel_basis(const MatrixXcd& m, double tau_rank = 1e-9);

/// Orthonormal basis of the column span of m (rank-revealing).
MatrixXcd orthonormal_span(const MatrixXcd& m, double tau_rank = 1e-9);

/// A complex subspace of C^d, stored as an orthonormal spanning basis.
/// Construction certifies the presented rank by singular values; both the
/// span and the kernel-of-matrix presentations are accepted and can be
/// recovered.
class LinearSubspace {
public:
    /// Span of the columns of `span`, which must have full column rank.
    static LinearSubspace from_span(const MatrixXcd& span, double tau_rank = 1e-9);

    /// ker(A) for a full-row-rank matrix A (c x d).
    static LinearSubspace from_kernel(const MatrixXcd& a, double tau_rank = 1e-9);

    /// The zero-dimensional subspace of C^d.
    static LinearSubspace zero(int ambient_dim);

    /// All of C^d.
    static LinearSubspace full(int ambient_dim);

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }

    /// Orthonormal columns spanning the subspace (d x dim).
    const MatrixXcd& basis() const { return basis_; }

    /// A full-row-rank matrix A with ker(A) == this subspace
    /// ((d-dim) x d; the conjugate-transposed orthonormal complement).
    MatrixXcd kernel_matrix() const;

    /// Orthonormal basis of the orthogonal complement (d x (d-dim)).
    MatrixXcd complement_basis() const;

    /// Orthogonal projection of v onto the subspace.
    VectorXcd project(const VectorXcd& v) const;

    /// Distance of v to the subspace.
    double distance(const VectorXcd& v) const;

    bool contains_point(const VectorXcd& v, double tol) const { return distance(v) <= tol; }

    /// Principal angles against another subspace of the same ambient space,
    /// ascending, min(dim, other.dim) of them.
    std::vector<double> principal_angles(const LinearSubspace& other) const;

    /// Largest principal angle when dims agree; pi/2 sentinel otherwise.
    double gap_angle(const LinearSubspace& other) const;

    /// this is (numerically) a subspace of `other`.
    bool contained_in(const LinearSubspace& other, double angle_tol) const;

    bool same_subspace(const LinearSubspace& other, double angle_tol) const;

private:
    explicit LinearSubspace(MatrixXcd orthonormal_basis) : basis_(std::move(orthonormal_basis)) {}
    MatrixXcd basis_; // d x dim, orthonormal columns
};

/// Direct sum of two subspaces whose intersection is trivial; throws
/// hypothesis_error when the concatenated basis is rank-deficient.
LinearSubspace direct_sum(const LinearSubspace& a, const LinearSubspace& b, double tau_rank = 1e-9);

} // namespace hiso
