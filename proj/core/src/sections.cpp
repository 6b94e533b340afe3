#include <hiso/sections.hpp>

#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>

#include <cmath>

namespace hiso {

namespace {

std::span<const Complex> as_span(const VectorXcd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

} // namespace

TransferResult transfer(const IsometryMap& f, const LinearSubspace& v, const Tolerances& tol) {
    const int n = f.source_dim();
    if (v.ambient_dim() != n)
        throw dimension_error("transfer: subspace does not live in the source space");
    if (v.dim() < 1 || v.dim() > n - 1)
        throw hypothesis_error("transfer: requires 1 <= dim V <= n-1");
    const JacobianAtZero jac = jacobian_at_zero(f, tol);

    TransferResult result{
        LinearSubspace::from_kernel(v.kernel_matrix() * jac.jf0.adjoint(), tol.tau_rank),
        direct_sum(LinearSubspace::from_span(jac.jf0 * v.basis(), tol.tau_rank),
                   LinearSubspace::from_span(jac.kernel, tol.tau_rank), tol.tau_rank),
        0.0};
    result.agreement_angle = result.subspace.gap_angle(result.direct_sum);
    if (result.agreement_angle > tol.angle_roundtrip)
        throw hypothesis_error(
            "transfer: kernel and direct-sum presentations disagree beyond tolerance");
    if (result.subspace.dim() != f.target_dim() - n + v.dim())
        throw hypothesis_error("transfer: certified dimension differs from N - n + m");
    return result;
}

MatrixXcd homogeneous_coordinates(const IsometryMap& f, const MatrixXcd& z,
                                  const Tolerances& tol) {
    const int n = f.source_dim();
    if (z.rows() != n) throw dimension_error("homogeneous_coordinates: Z must have n rows");
    if (numerical_rank(z, tol.tau_rank) != z.cols())
        throw dimension_error("homogeneous_coordinates: Z is rank-deficient");
    const JacobianAtZero jac = jacobian_at_zero(f, tol);
    MatrixXcd out(f.target_dim(), z.cols() + jac.kernel.cols());
    out << jac.jf0 * z, jac.kernel;
    return out;
}

Certificate section_preservation_check(const IsometryMap& f, const LinearSubspace& v,
                                       const VectorXcd& offset, int samples,
                                       std::uint64_t seed, const Tolerances& tol) {
    Certificate cert;
    cert.check = "section_preservation";
    cert.add_tolerance("eps_fun", tol.eps_fun);
    cert.add_tolerance("reverse_eps", tol.reverse_eps);
    cert.add_metric("samples", samples);
    const int n = f.source_dim();
    if (offset.size() != n)
        throw dimension_error("section_preservation_check: offset length != n");
    if (offset.norm() >= 1.0)
        throw hypothesis_error("section_preservation_check: offset lies outside the ball");

    const TransferResult tr = transfer(f, v, tol);
    const JacobianAtZero jac = jacobian_at_zero(f, tol);
    const VectorXcd off_linear = jac.jf0 * offset;
    const VectorXcd off_image = evaluate_point(f, offset);

    SampleStream stream(seed, "section_preservation");

    // (iii) offset consistency: both offsets cut the same affine subspace.
    const double off_res = tr.subspace.distance(off_linear - off_image);
    cert.add_metric("offset_residual", off_res);
    cert.require_residual(off_res, tol.eps_fun);

    // (i) forward inclusion on samples of (V + v) ∩ B^n.
    double forward = 0.0;
    int in_slice = 0;
    for (int s = 0; s < samples; ++s) {
        VectorXcd w = offset + v.basis() * stream.gaussian_vector(v.dim()) * 0.35;
        if (w.norm() > 0.9) continue;
        ++in_slice;
        const VectorXcd fw = evaluate_point(f, w);
        forward = std::max(forward, tr.subspace.distance(fw - off_linear));
        forward = std::max(forward, tr.subspace.distance(fw - off_image));
    }
    cert.add_metric("forward_samples", in_slice);
    cert.add_metric("forward_residual", forward);
    cert.require_residual(forward, tol.eps_fun);

    // (ii) reverse inclusion: image points landing in the affine subspace
    // must come from (V + v). Slice samples are guaranteed hits; ambient
    // samples exercise the contrapositive.
    double reverse = 0.0;
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        VectorXcd w;
        if (s % 2 == 0) {
            w = offset + v.basis() * stream.gaussian_vector(v.dim()) * 0.35;
            if (w.norm() > 0.9) continue;
        } else {
            w = stream.ball_point(n, 0.9);
        }
        const VectorXcd fw = evaluate_point(f, w);
        if (tr.subspace.distance(fw - off_linear) > tol.eps_fun) continue;
        ++hits;
        reverse = std::max(reverse, v.distance(w - offset));
    }
    cert.add_metric("reverse_hits", hits);
    cert.add_metric("reverse_residual", reverse);
    cert.require_residual(reverse, tol.reverse_eps);
    if (in_slice == 0 || hits == 0) {
        cert.status = CertStatus::Fail;
        cert.note("empty slice: no usable samples");
    }
    return cert;
}

} // namespace hiso
