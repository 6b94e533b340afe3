#include <hiso/isometry.hpp>

#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>

#include <cmath>

namespace hiso {

namespace {

struct ClosedFormTag {
    std::string name;
    double param = 0.0;
    bool has_param = false;
};

ClosedFormTag split_tag(const std::string& tag) {
    ClosedFormTag t;
    const auto colon = tag.find(':');
    if (colon == std::string::npos) {
        t.name = tag;
        return t;
    }
    t.name = tag.substr(0, colon);
    try {
        t.param = std::stod(tag.substr(colon + 1));
    } catch (const std::exception&) {
        throw io_error("closed form tag: bad parameter in '" + tag + "'");
    }
    t.has_param = true;
    return t;
}

std::span<const Complex> as_span(const VectorXcd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

// sum of squares of the source variables
Complex squares_sum(const VectorXcd& w) {
    Complex s{0.0, 0.0};
    for (Eigen::Index j = 0; j < w.size(); ++j) s += w(j) * w(j);
    return s;
}

} // namespace

int IsometryMap::order() const {
    if (jets.empty()) throw dimension_error("IsometryMap: no component jets");
    return jets.front().order();
}

void IsometryMap::validate(const Tolerances& tol) const {
    if (static_cast<int>(jets.size()) != target.dim())
        throw dimension_error("IsometryMap: component count != target dimension");
    for (const auto& s : jets) {
        if (s.num_vars() != source.dim())
            throw dimension_error("IsometryMap: jet num_vars != source dimension");
        if (s.order() != jets.front().order())
            throw dimension_error("IsometryMap: components disagree on truncation order");
        if (std::abs(s.constant_term()) > tol.eps_zero)
            throw hypothesis_error("IsometryMap: f(0) != 0; recenter the map before ingestion");
    }
    if (k <= 0.0) throw hypothesis_error("IsometryMap: isometry constant must be positive");
    if (source.is_irreducible() && std::abs(source.factor(0).weight - k) > tol.eps_zero)
        throw hypothesis_error("IsometryMap: irreducible source weight must equal k");
}

JacobianAtZero jacobian_at_zero(const IsometryMap& f, const Tolerances& tol) {
    f.validate(tol);
    const int n = f.source_dim();
    const int bign = f.target_dim();
    JacobianAtZero jac;
    jac.jf0 = MatrixXcd::Zero(bign, n);
    for (int i = 0; i < bign; ++i)
        for (int j = 0; j < n; ++j)
            jac.jf0(i, j) = f.jets[static_cast<std::size_t>(i)].coeff(MultiIndex::unit(n, j));
    if (numerical_rank(jac.jf0, tol.tau_rank) < n)
        throw hypothesis_error(
            "jacobian_at_zero: rank Jf(0) < n; the differential is degenerate");
    jac.lf = jac.jf0.adjoint() / f.k;
    jac.kernel = kernel_basis(jac.jf0.adjoint(), tol.tau_rank);
    return jac;
}

MatrixXcd matrix_M(const IsometryMap& f, const Tolerances& tol) {
    const JacobianAtZero jac = jacobian_at_zero(f, tol);
    const int n = f.source_dim();
    const int bign = f.target_dim();
    Eigen::VectorXd left(n), right(bign);
    for (int i = 0; i < f.source.num_factors(); ++i) {
        const auto& fac = f.source.factor(i);
        const int off = f.source.factor_offset(i);
        for (int j = 0; j < fac.dim; ++j) left(off + j) = 1.0 / fac.weight;
    }
    for (int i = 0; i < f.target.num_factors(); ++i) {
        const auto& fac = f.target.factor(i);
        const int off = f.target.factor_offset(i);
        for (int j = 0; j < fac.dim; ++j) right(off + j) = fac.weight;
    }
    MatrixXcd m = left.asDiagonal() * jac.jf0.adjoint() * right.asDiagonal();
    if (numerical_rank(m, tol.tau_rank) < n)
        throw hypothesis_error("matrix_M: rank M(f) < n");
    return m;
}

bool has_closed_form(const IsometryMap& f) { return !f.closed_form.empty(); }

VectorXcd evaluate_closed_form(const IsometryMap& f, const VectorXcd& w) {
    if (w.size() != f.source_dim())
        throw dimension_error("evaluate_closed_form: point length != source dimension");
    const ClosedFormTag tag = split_tag(f.closed_form);
    const int bign = f.target_dim();

    if (tag.name == "ball_linear") {
        return jacobian_at_zero(f).jf0 * w;
    }
    if (tag.name == "typeIV_graph" || tag.name == "typeIV_phase_graph") {
        const Complex phase = tag.name == "typeIV_graph"
                                  ? Complex{1.0, 0.0}
                                  : std::exp(Complex{0.0, tag.param});
        VectorXcd out = VectorXcd::Zero(bign);
        out.head(w.size()) = w;
        const Complex s2 = squares_sum(w);
        out(bign - 1) =
            phase * (Complex{1.0, 0.0} - std::sqrt(Complex{1.0, 0.0} - s2 / (phase * phase)));
        return out;
    }
    if (tag.name == "diag_square") {
        if (f.source_dim() != 1 || bign != 2)
            throw hypothesis_error("diag_square closed form needs disk -> bidisk");
        VectorXcd out(2);
        out(0) = w(0);
        out(1) = w(0);
        return out;
    }
    throw hypothesis_error("unknown closed form tag: " + f.closed_form);
}

VectorXcd evaluate_jets(const IsometryMap& f, const VectorXcd& w) {
    if (w.size() != f.source_dim())
        throw dimension_error("evaluate_jets: point length != source dimension");
    VectorXcd out(f.target_dim());
    for (int i = 0; i < f.target_dim(); ++i)
        out(i) = evaluate(f.jets[static_cast<std::size_t>(i)], as_span(w));
    return out;
}

VectorXcd evaluate_point(const IsometryMap& f, const VectorXcd& w) {
    return has_closed_form(f) ? evaluate_closed_form(f, w) : evaluate_jets(f, w);
}

Certificate verify_functional_equation(const IsometryMap& f, int order, const Tolerances& tol) {
    f.validate(tol);
    Certificate cert;
    cert.check = "functional_equation";
    cert.add_tolerance("eps_fun", tol.eps_fun);
    cert.add_metric("order", order);
    const int n = f.source_dim();
    std::vector<JetSeries> trunc;
    trunc.reserve(f.jets.size());
    for (const auto& s : f.jets) trunc.push_back(s.truncated(order));
    const JetSeries lhs = weighted_norm_jet(f.target, trunc, trunc, order);
    const auto id = identity_jets(n, order);
    const JetSeries rhs = weighted_norm_jet(f.source, id, id, order);
    cert.require_residual(max_coeff_distance(lhs, rhs), tol.eps_fun);
    return cert;
}

Certificate verify_functional_equation_pointwise(const IsometryMap& f, int samples,
                                                 std::uint64_t seed, const Tolerances& tol) {
    f.validate(tol);
    Certificate cert;
    cert.check = "functional_equation_pointwise";
    cert.add_tolerance("eps_point", tol.eps_point);
    cert.add_metric("samples", samples);
    if (!has_closed_form(f)) cert.note("no closed form: evaluating truncated jets");
    SampleStream stream(seed, "functional_equation_pointwise");
    const int n = f.source_dim();
    int used = 0;
    for (int s = 0; s < samples; ++s) {
        const VectorXcd w = stream.ball_point(n, tol.r_sample);
        const VectorXcd zeta = stream.ball_point(n, tol.r_sample);
        if (!membership(f.source, as_span(w)).inside ||
            !membership(f.source, as_span(zeta)).inside)
            continue;
        ++used;
        const VectorXcd fw = evaluate_point(f, w);
        const VectorXcd fz = evaluate_point(f, zeta);
        const Complex lhs = weighted_norm_eval(f.target, as_span(fw), as_span(fz));
        const Complex rhs = weighted_norm_eval(f.source, as_span(w), as_span(zeta));
        cert.require_residual(std::abs(lhs - rhs), tol.eps_point);
    }
    cert.add_metric("samples_used", used);
    return cert;
}

Certificate verify_linear_functional(const IsometryMap& f, int samples, std::uint64_t seed,
                                     const Tolerances& tol) {
    const JacobianAtZero jac = jacobian_at_zero(f, tol);
    Certificate cert;
    cert.check = "linear_functional";
    cert.add_tolerance("eps_fun_times_k", tol.eps_fun * f.k);
    cert.add_metric("samples", samples);
    SampleStream stream(seed, "linear_functional");
    const int n = f.source_dim();
    int used = 0;
    for (int s = 0; s < samples; ++s) {
        const VectorXcd w = stream.ball_point(n, tol.r_sample);
        if (!membership(f.source, as_span(w)).inside) continue;
        ++used;
        const VectorXcd fw = evaluate_point(f, w);
        const double residual = (jac.jf0.adjoint() * fw - f.k * w).norm();
        cert.require_residual(residual, tol.eps_fun * f.k);
    }
    cert.add_metric("samples_used", used);
    return cert;
}

Certificate verify_jacobian_identity(const IsometryMap& f, const Tolerances& tol) {
    const JacobianAtZero jac = jacobian_at_zero(f, tol);
    Certificate cert;
    cert.check = "jacobian_identity";
    cert.add_tolerance("eps_lin", tol.eps_lin);
    const int n = f.source_dim();
    const MatrixXcd gram = jac.jf0.adjoint() * jac.jf0 - f.k * MatrixXcd::Identity(n, n);
    cert.require_residual(gram.cwiseAbs().maxCoeff(), tol.eps_lin);
    const MatrixXcd cross = jac.jf0.adjoint() * jac.kernel;
    if (cross.size() > 0) cert.require_residual(cross.cwiseAbs().maxCoeff(), tol.eps_lin);
    return cert;
}

Certificate verify_projection_identity(const IsometryMap& f, int samples, std::uint64_t seed,
                                       const Tolerances& tol) {
    const MatrixXcd m = matrix_M(f, tol);
    Certificate cert;
    cert.check = "projection_identity";
    cert.add_tolerance("eps_lin", tol.eps_lin);
    cert.add_metric("samples", samples);
    SampleStream stream(seed, "projection_identity");
    const int n = f.source_dim();
    for (int s = 0; s < samples; ++s) {
        const VectorXcd w = stream.ball_point(n, tol.r_sample);
        if (!membership(f.source, as_span(w)).inside) continue;
        const VectorXcd fw = evaluate_point(f, w);
        cert.require_residual((m * fw - w).norm(), tol.eps_lin);
    }
    return cert;
}

IsometryMap identity_ball_map(int n, int order) {
    IsometryMap f;
    f.source = DomainSpec::ball(n);
    f.target = DomainSpec::ball(n);
    f.k = 1.0;
    f.jets = identity_jets(n, order);
    f.closed_form = "ball_linear";
    return f;
}

IsometryMap type_iv_graph_map(int n, int order) {
    if (n < 3) throw hypothesis_error("type_iv_graph_map: needs n >= 3");
    const int m = n - 1;
    IsometryMap f;
    f.source = DomainSpec::ball(m);
    f.target = DomainSpec::type_iv(n);
    f.k = 1.0;
    f.jets = identity_jets(m, order);
    // phi = 1 - sqrt(1 - sum w_j^2) via the binomial series
    JetSeries s2(m, order);
    for (int j = 0; j < m; ++j) {
        std::vector<int> e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(j)] = 2;
        s2.set_coeff(MultiIndex(std::move(e)), Complex{1.0, 0.0});
    }
    const JetSeries one = JetSeries::constant(m, order, Complex{1.0, 0.0});
    f.jets.push_back(sub(one, pow_real(sub(one, s2), 0.5)));
    f.closed_form = "typeIV_graph";
    return f;
}

IsometryMap diagonal_disk_map(int order) {
    IsometryMap f;
    f.source = DomainSpec::ball(1, 2.0);
    f.target = DomainSpec::product(DomainSpec::ball(1), DomainSpec::ball(1));
    f.k = 2.0;
    const JetSeries w = JetSeries::variable(1, order, 0);
    f.jets = {w, w};
    f.closed_form = "diag_square";
    return f;
}

} // namespace hiso
