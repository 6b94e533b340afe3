#include <hiso/fibration.hpp>

#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>

#include <cmath>
#include <limits>

namespace hiso {

namespace {

std::span<const Complex> as_span(const VectorXcd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

constexpr double kFdStep = 1e-5;

} // namespace

Fibration::Fibration(IsometryMap f, const Tolerances& tol)
    : map_(std::move(f)), tol_(tol), jac_(jacobian_at_zero(map_, tol)),
      m_(matrix_M(map_, tol)), kernel_(kernel_basis(m_, tol.tau_rank)) {}

MembershipResult Fibration::in_df(const VectorXcd& z) const {
    const MembershipResult omega = membership(map_.target, as_span(z));
    const VectorXcd pz = m_ * z;
    const MembershipResult base = membership(map_.source, as_span(pz));
    MembershipResult result;
    result.inside = omega.inside && base.inside;
    // For a ball source the base slack in the k-scale is k - ||conj(Jf0)^T z||.
    const double slack = map_.source.is_irreducible() ? map_.k * base.margin : base.margin;
    result.margin = std::min(omega.margin, slack);
    return result;
}

VectorXcd Fibration::project(const VectorXcd& z) const {
    if (z.size() != map_.target_dim())
        throw dimension_error("Fibration::project: point length != N");
    if (!in_df(z).inside) throw domain_error("Fibration::project: point lies outside D_f");
    return m_ * z;
}

VectorXcd Fibration::retract(const VectorXcd& z) const {
    return evaluate_point(map_, project(z));
}

Fibration::AffineFiber Fibration::fiber_presentation(const VectorXcd& w) const {
    if (w.size() != map_.source_dim())
        throw dimension_error("Fibration::fiber_presentation: point length != n");
    const VectorXcd x = evaluate_point(map_, w);
    if ((m_ * x - w).norm() > tol_.eps_fun * std::max(map_.k, 1.0))
        throw domain_error(
            "Fibration::fiber_presentation: point is not recognized as an image point");
    return AffineFiber{x, LinearSubspace::from_span(kernel_, tol_.tau_rank)};
}

MatrixXcd Fibration::jacobian_at(const VectorXcd& w) const {
    const int n = map_.source_dim();
    const int bign = map_.target_dim();
    if (w.size() != n) throw dimension_error("Fibration::jacobian_at: point length != n");
    MatrixXcd jf(bign, n);
    if (has_closed_form(map_)) {
        for (int j = 0; j < n; ++j) {
            VectorXcd wp = w, wm = w;
            wp(j) += kFdStep;
            wm(j) -= kFdStep;
            jf.col(j) = (evaluate_closed_form(map_, wp) - evaluate_closed_form(map_, wm)) /
                        (2.0 * kFdStep);
        }
    } else {
        for (int i = 0; i < bign; ++i)
            for (int j = 0; j < n; ++j)
                jf(i, j) = evaluate(partial(map_.jets[static_cast<std::size_t>(i)], j), as_span(w));
    }
    return jf;
}

Certificate Fibration::splitting_check(const VectorXcd& w) const {
    Certificate cert;
    cert.check = "tangent_splitting";
    cert.add_tolerance("tau_split", tol_.tau_split);
    if (!membership(map_.source, as_span(w)).inside)
        throw domain_error("Fibration::splitting_check: source point outside the domain");
    const int bign = map_.target_dim();
    MatrixXcd concat(bign, bign);
    concat << jacobian_at(w), kernel_;
    Eigen::JacobiSVD<MatrixXcd> svd(concat);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    cert.add_metric("sigma_min", smin);
    if (!(smin > tol_.tau_split)) cert.status = CertStatus::Fail;
    return cert;
}

Certificate Fibration::ball_image_identity(const VectorXcd& w0, double r, int samples,
                                           std::uint64_t seed) const {
    Certificate cert;
    cert.check = "ball_image_identity";
    cert.add_metric("radius", r);
    cert.add_metric("samples", samples);
    const int n = map_.source_dim();
    if (w0.size() != n)
        throw dimension_error("Fibration::ball_image_identity: center length != n");
    if (w0.norm() + r >= 1.0)
        throw hypothesis_error("Fibration::ball_image_identity: B(w0, r) is not compactly "
                               "contained in the source ball");
    SampleStream stream(seed, "ball_image_identity");
    const VectorXcd fw0 = evaluate_point(map_, w0);
    auto seminorm = [&](const VectorXcd& z) { return (jac_.jf0.adjoint() * z).norm(); };

    double worst_inside = std::numeric_limits<double>::infinity();
    double worst_outside = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        // inside: ||f(w) - f(w0)||_f < k r
        const VectorXcd win = w0 + stream.ball_point(n, r * 0.999);
        worst_inside =
            std::min(worst_inside, map_.k * r - seminorm(evaluate_point(map_, win) - fw0));
        // outside: ||f(w) - f(w0)||_f >= k ||w - w0|| >= k r
        VectorXcd wout = stream.ball_point(n, 0.95);
        if ((wout - w0).norm() <= r + 1e-12) continue;
        const double lhs = seminorm(evaluate_point(map_, wout) - fw0);
        worst_outside = std::min(
            worst_outside,
            std::min(lhs - map_.k * (wout - w0).norm() + tol_.eps_point, lhs - map_.k * r));
    }
    cert.add_metric("worst_inside_margin", worst_inside);
    cert.add_metric("worst_outside_margin", worst_outside);
    if (!(worst_inside > 0.0) || !(worst_outside >= 0.0)) cert.status = CertStatus::Fail;
    return cert;
}

namespace {

// Rejection-sample a point of D_f with a safety margin off the boundary.
VectorXcd sample_df_point(const Fibration& fib, SampleStream& stream, double margin_floor) {
    const int bign = fib.map().target_dim();
    for (int tries = 0; tries < 256; ++tries) {
        const VectorXcd z = stream.ball_point(bign, 0.85);
        const MembershipResult r = fib.in_df(z);
        if (r.inside && r.margin > margin_floor) return z;
    }
    throw error("sample_df_point: rejection sampling failed to hit D_f");
}

} // namespace

Certificate balanced_convex_check(const Fibration& fib, int samples, std::uint64_t seed,
                                  const Tolerances& tol) {
    Certificate cert;
    cert.check = "balanced_convex";
    cert.add_metric("samples", samples);
    SampleStream stream(seed, "balanced_convex");
    int balanced_failures = 0, convex_failures = 0;
    for (int s = 0; s < samples; ++s) {
        const VectorXcd z = sample_df_point(fib, stream, 1e-9);
        const Complex lambda = stream.disk_point(1.0);
        if (!fib.in_df(lambda * z).inside) ++balanced_failures;
        const VectorXcd xi = sample_df_point(fib, stream, 1e-9);
        for (double t : {0.25, 0.5, 0.75})
            if (!fib.in_df((1.0 - t) * z + t * xi).inside) ++convex_failures;
    }
    cert.add_metric("balanced_failures", balanced_failures);
    cert.add_metric("convex_failures", convex_failures);
    if (balanced_failures + convex_failures > 0) cert.status = CertStatus::Fail;
    (void)tol;
    return cert;
}

Certificate retraction_suite(const Fibration& fib, int samples, std::uint64_t seed,
                             const Tolerances& tol) {
    Certificate cert;
    cert.check = "retraction_suite";
    cert.add_tolerance("eps_fun", tol.eps_fun);
    cert.add_metric("samples", samples);
    SampleStream stream(seed, "retraction_suite");
    const int n = fib.map().source_dim();
    double section = 0.0, idem = 0.0, kernel_defect = 0.0, difference_zero = 0.0;
    int difference_cases = 0;
    for (int s = 0; s < samples; ++s) {
        // section identity on the source side
        const VectorXcd w = stream.ball_point(n, tol.r_sample);
        const VectorXcd fw = evaluate_point(fib.map(), w);
        section = std::max(section, (fib.m_matrix() * fw - w).norm());

        // retraction identities on the target side
        const VectorXcd z = sample_df_point(fib, stream, 1e-9);
        const VectorXcd rz = fib.retract(z);
        idem = std::max(idem, (fib.retract(rz) - rz).norm());
        const VectorXcd diff = z - rz;
        kernel_defect = std::max(kernel_defect, (fib.m_matrix() * diff).norm());
        if (fib.in_df(diff).inside) {
            ++difference_cases;
            difference_zero = std::max(difference_zero, fib.retract(diff).norm());
        }
    }
    cert.add_metric("section_residual", section);
    cert.add_metric("idempotence_residual", idem);
    cert.add_metric("kernel_defect", kernel_defect);
    cert.add_metric("difference_retract_zero", difference_zero);
    cert.add_metric("difference_cases", difference_cases);
    cert.require_residual(section, tol.eps_fun);
    cert.require_residual(idem, tol.eps_fun);
    cert.require_residual(kernel_defect, tol.eps_fun);
    cert.require_residual(difference_zero, tol.eps_fun);
    return cert;
}

Certificate splitting_suite(const Fibration& fib, int samples, std::uint64_t seed,
                            const Tolerances& tol) {
    Certificate cert;
    cert.check = "splitting_suite";
    cert.add_tolerance("tau_split", tol.tau_split);
    cert.add_metric("samples", samples);
    SampleStream stream(seed, "splitting_suite");
    const int n = fib.map().source_dim();
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const VectorXcd w = stream.ball_point(n, 0.7);
        const Certificate one = fib.splitting_check(w);
        worst = std::min(worst, one.metrics.back().second);
        if (one.failed()) cert.status = CertStatus::Fail;
    }
    cert.add_metric("worst_sigma_min", worst);
    return cert;
}

} // namespace hiso
