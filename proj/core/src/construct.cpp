#include <hiso/construct.hpp>

#include <hiso/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace hiso {

namespace {

void check_problem(const GraphConstructionProblem& p, int& n_dim, int& r_dim) {
    if (!p.target.is_irreducible())
        throw hypothesis_error("solve_graph_isometry: target must be irreducible");
    const auto& fac = p.target.factor(0);
    if (fac.rank != 2) throw hypothesis_error("solve_graph_isometry: target must be of rank 2");
    const int bign = p.target.dim();
    const int nprime = p.target.nprime();
    n_dim = 2 * bign - nprime;
    r_dim = nprime - bign;
    if (n_dim < 2)
        throw hypothesis_error(
            "solve_graph_isometry: 2N - N' <= 1 (excluded typeI 2xq target, q >= 5)");
    if (p.unitary.rows() != r_dim || p.unitary.cols() != r_dim)
        throw hypothesis_error("solve_graph_isometry: unitary must be (N'-N)-square");
    const MatrixXcd defect =
        p.unitary * p.unitary.adjoint() - MatrixXcd::Identity(r_dim, r_dim);
    if (defect.cwiseAbs().maxCoeff() > 1e-11)
        throw hypothesis_error("solve_graph_isometry: matrix is not unitary");
    if (p.order < 1) throw hypothesis_error("solve_graph_isometry: order must be >= 1");
    if (!p.arrangement.empty()) {
        if (static_cast<int>(p.arrangement.size()) != bign)
            throw hypothesis_error("solve_graph_isometry: arrangement must permute 0..N-1");
        std::vector<int> sorted = p.arrangement;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < bign; ++i)
            if (sorted[static_cast<std::size_t>(i)] != i)
                throw hypothesis_error("solve_graph_isometry: arrangement must permute 0..N-1");
    }
}

} // namespace

GraphConstructionResult solve_graph_isometry(const GraphConstructionProblem& p,
                                             const Tolerances& tol) {
    int n = 0, r = 0;
    check_problem(p, n, r);
    const int bign = p.target.dim();
    const auto& fac = p.target.factor(0);
    const int order = p.order;

    // Slot s -> global coordinate. Solved components occupy slots [0, r).
    std::vector<int> solved_pos(static_cast<std::size_t>(r));
    std::vector<int> free_pos(static_cast<std::size_t>(n));
    if (p.arrangement.empty()) {
        std::iota(free_pos.begin(), free_pos.end(), 0);
        std::iota(solved_pos.begin(), solved_pos.end(), n);
    } else {
        for (int j = 0; j < r; ++j) solved_pos[static_cast<std::size_t>(j)] = p.arrangement[static_cast<std::size_t>(j)];
        for (int l = 0; l < n; ++l) free_pos[static_cast<std::size_t>(l)] = p.arrangement[static_cast<std::size_t>(r + l)];
    }

    const MatrixXcd u = p.unitary.adjoint(); // U = conj(U~)^T

    std::vector<JetSeries> phi(static_cast<std::size_t>(r), JetSeries(n, order));
    std::vector<JetSeries> comps(static_cast<std::size_t>(bign), JetSeries(n, order));
    for (int sweep = 0; sweep < order; ++sweep) {
        for (int l = 0; l < n; ++l)
            comps[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(l)])] =
                JetSeries::variable(n, order, l);
        for (int j = 0; j < r; ++j)
            comps[static_cast<std::size_t>(solved_pos[static_cast<std::size_t>(j)])] =
                phi[static_cast<std::size_t>(j)];
        std::vector<JetSeries> gvals;
        gvals.reserve(fac.g_terms.size());
        for (const auto& g : fac.g_terms) gvals.push_back(compose_poly(g, comps));
        for (int j = 0; j < r; ++j) {
            JetSeries next(n, order);
            for (int l = 0; l < r; ++l)
                next = add(next, scale(gvals[static_cast<std::size_t>(l)], u(j, l)));
            phi[static_cast<std::size_t>(j)] = next;
        }
    }

    GraphConstructionResult result;
    result.map.source = DomainSpec::ball(n);
    result.map.target = p.target;
    result.map.k = 1.0;
    result.map.jets.assign(static_cast<std::size_t>(bign), JetSeries(n, order));
    for (int l = 0; l < n; ++l)
        result.map.jets[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(l)])] =
            JetSeries::variable(n, order, l);
    for (int j = 0; j < r; ++j)
        result.map.jets[static_cast<std::size_t>(solved_pos[static_cast<std::size_t>(j)])] =
            phi[static_cast<std::size_t>(j)];

    // Plain graph arrangement into typeIV with a 1x1 unitary has the
    // phase-rotated closed form.
    if (p.arrangement.empty() && fac.kind == FactorKind::TypeIV && r == 1) {
        const double theta = std::arg(p.unitary(0, 0));
        if (std::abs(theta) < 1e-15) {
            result.map.closed_form = "typeIV_graph";
        } else {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "typeIV_phase_graph:%.17g", theta);
            result.map.closed_form = buf;
        }
    }

    result.u_prime = MatrixXcd::Zero(r, bign);
    for (int j = 0; j < r; ++j)
        result.u_prime.col(solved_pos[static_cast<std::size_t>(j)]) = p.unitary.col(j);

    result.certificate = verify_functional_equation(result.map, order, tol);
    return result;
}

IsometryMap slice(const IsometryMap& f, int m) {
    const int n = f.source_dim();
    if (m < 1 || m > n) throw hypothesis_error("slice: dimension out of range");
    if (m == n) return f;
    if (!f.source.is_irreducible() || f.source.factor(0).kind != FactorKind::Ball)
        throw hypothesis_error("slice: source must be a ball");
    IsometryMap out;
    out.source = DomainSpec::ball(m, f.source.factor(0).weight);
    out.target = f.target;
    out.k = f.k;
    out.closed_form = f.closed_form;
    out.jets.reserve(f.jets.size());
    for (const auto& s : f.jets) {
        JetSeries t(m, s.order());
        for (const auto& [idx, c] : s.coeffs()) {
            bool survives = true;
            for (int j = m; j < n && survives; ++j) survives = idx[j] == 0;
            if (!survives) continue;
            std::vector<int> e(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(j)] = idx[j];
            t.set_coeff(MultiIndex(std::move(e)), c);
        }
        out.jets.push_back(std::move(t));
    }
    return out;
}

VarietyResult variety_membership(const DomainSpec& target, const MatrixXcd& u_prime,
                                 std::span<const Complex> z, const Tolerances& tol) {
    if (!target.is_irreducible())
        throw hypothesis_error("variety_membership: target must be irreducible");
    const auto& fac = target.factor(0);
    const int bign = target.dim();
    const int r = target.nprime() - bign;
    if (u_prime.rows() != r || u_prime.cols() != bign)
        throw dimension_error("variety_membership: U' must be (N'-N) x N");
    if (static_cast<int>(z.size()) != bign)
        throw dimension_error("variety_membership: point length != N");
    if (!membership(target, z).inside)
        throw domain_error("variety_membership: point lies outside the domain");
    VectorXcd zv(bign);
    for (int i = 0; i < bign; ++i) zv(i) = z[static_cast<std::size_t>(i)];
    VectorXcd g(r);
    for (int l = 0; l < r; ++l) g(l) = evaluate(fac.g_terms[static_cast<std::size_t>(l)], z);
    VarietyResult result;
    result.residual = (u_prime * zv - g).norm();
    result.member = result.residual <= tol.eps_fun;
    return result;
}

} // namespace hiso
