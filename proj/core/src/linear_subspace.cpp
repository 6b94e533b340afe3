#include <hiso/linear_subspace.hpp>

#include <algorithm>
#include <cmath>

namespace hiso {

namespace {

Eigen::JacobiSVD<MatrixXcd> full_svd(const MatrixXcd& m) {
    return Eigen::JacobiSVD<MatrixXcd>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

} // namespace

int numerical_rank(const MatrixXcd& m, double tau_rank) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cut = tau_rank * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) >= cut) ++r;
    return r;
}

MatrixXcd kernel_basis(const MatrixXcd& m, double tau_rank) {
    auto svd = full_svd(m);
    const auto& sv = svd.singularValues();
    int r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cut = tau_rank * sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) >= cut) ++r;
    }
    return svd.matrixV().rightCols(m.cols() - r);
}

MatrixXcd orthonormal_span(const MatrixXcd& m, double tau_rank) {
    auto svd = full_svd(m);
    const int r = numerical_rank(m, tau_rank);
    return svd.matrixU().leftCols(r);
}

LinearSubspace LinearSubspace::from_span(const MatrixXcd& span, double tau_rank) {
    if (span.cols() == 0) return zero(static_cast<int>(span.rows()));
    const int r = numerical_rank(span, tau_rank);
    if (r != span.cols())
        throw dimension_error("LinearSubspace::from_span: spanning matrix is rank-deficient");
    return LinearSubspace(orthonormal_span(span, tau_rank));
}

LinearSubspace LinearSubspace::from_kernel(const MatrixXcd& a, double tau_rank) {
    if (a.rows() == 0) return full(static_cast<int>(a.cols()));
    const int r = numerical_rank(a, tau_rank);
    if (r != a.rows())
        throw dimension_error("LinearSubspace::from_kernel: kernel presentation is rank-deficient");
    return LinearSubspace(kernel_basis(a, tau_rank));
}

LinearSubspace LinearSubspace::zero(int ambient_dim) {
    return LinearSubspace(MatrixXcd::Zero(ambient_dim, 0));
}

LinearSubspace LinearSubspace::full(int ambient_dim) {
    return LinearSubspace(MatrixXcd::Identity(ambient_dim, ambient_dim));
}

MatrixXcd LinearSubspace::kernel_matrix() const { return complement_basis().adjoint(); }

MatrixXcd LinearSubspace::complement_basis() const {
    // Null space of basis^H: the orthogonal complement.
    if (dim() == 0) return MatrixXcd::Identity(ambient_dim(), ambient_dim());
    return kernel_basis(basis_.adjoint());
}

VectorXcd LinearSubspace::project(const VectorXcd& v) const {
    if (v.size() != basis_.rows()) throw dimension_error("LinearSubspace::project: length mismatch");
    return basis_ * (basis_.adjoint() * v);
}

double LinearSubspace::distance(const VectorXcd& v) const { return (v - project(v)).norm(); }

std::vector<double> LinearSubspace::principal_angles(const LinearSubspace& other) const {
    if (ambient_dim() != other.ambient_dim())
        throw dimension_error("principal_angles: ambient dimensions differ");
    const Eigen::Index k = std::min(basis_.cols(), other.basis_.cols());
    if (k == 0) return {};
    // Bjorck-Golub: cosines from Q1^H Q2, sines from (I - P1) Q2. Small
    // angles come out of the sine route at full precision, large ones out
    // of the cosine route.
    const MatrixXcd c = basis_.adjoint() * other.basis_;
    Eigen::JacobiSVD<MatrixXcd> cos_svd(c);
    Eigen::JacobiSVD<MatrixXcd> sin_svd(other.basis_ - basis_ * c);
    const auto& cosines = cos_svd.singularValues(); // descending
    auto sines = sin_svd.singularValues();          // descending, k2 values
    std::vector<double> angles(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        // i-th smallest angle: i-th largest cosine, i-th smallest sine.
        const double cv = std::clamp(cosines(i), 0.0, 1.0);
        const double sv = std::clamp(sines(sines.size() - 1 - i), 0.0, 1.0);
        angles[static_cast<std::size_t>(i)] = sv < 0.7 ? std::asin(sv) : std::acos(cv);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

double LinearSubspace::gap_angle(const LinearSubspace& other) const {
    constexpr double half_pi = 1.5707963267948966;
    if (dim() != other.dim()) return half_pi;
    if (dim() == 0) return 0.0;
    auto angles = principal_angles(other);
    return angles.back();
}

bool LinearSubspace::contained_in(const LinearSubspace& other, double angle_tol) const {
    if (ambient_dim() != other.ambient_dim()) return false;
    if (dim() == 0) return true;
    if (dim() > other.dim()) return false;
    auto angles = principal_angles(other);
    return angles.back() <= angle_tol;
}

bool LinearSubspace::same_subspace(const LinearSubspace& other, double angle_tol) const {
    return dim() == other.dim() && gap_angle(other) <= angle_tol;
}

LinearSubspace direct_sum(const LinearSubspace& a, const LinearSubspace& b, double tau_rank) {
    if (a.ambient_dim() != b.ambient_dim())
        throw dimension_error("direct_sum: ambient dimensions differ");
    MatrixXcd stacked(a.ambient_dim(), a.dim() + b.dim());
    stacked << a.basis(), b.basis();
    if (numerical_rank(stacked, tau_rank) != stacked.cols())
        throw hypothesis_error("direct_sum: summands intersect non-trivially");
    return LinearSubspace::from_span(stacked, tau_rank);
}

} // namespace hiso
