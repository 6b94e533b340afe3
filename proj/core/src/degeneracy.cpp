#include <hiso/degeneracy.hpp>

#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>
#include <hiso/sections.hpp>

#include <cmath>

namespace hiso {

namespace {

std::span<const Complex> as_span(const VectorXcd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double multi_index_factorial(const MultiIndex& idx) {
    double f = 1.0;
    for (int j = 0; j < idx.num_vars(); ++j) f *= factorial(idx[j]);
    return f;
}

void enumerate_exponents(int pos, int remaining, std::vector<int>& cur,
                         std::vector<MultiIndex>& out) {
    if (pos == static_cast<int>(cur.size()) - 1) {
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(pos)] = e;
            out.emplace_back(cur);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[static_cast<std::size_t>(pos)] = e;
        enumerate_exponents(pos + 1, remaining - e, cur, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

// All multi-indices with 1 <= degree <= k_max in graded-lex order.
std::vector<MultiIndex> derivative_indices(int num_vars, int k_max) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(num_vars), 0);
    enumerate_exponents(0, k_max, cur, out);
    std::erase_if(out, [](const MultiIndex& i) { return i.degree() == 0; });
    std::sort(out.begin(), out.end());
    return out;
}

// Greedy graded-lex selection of rows reaching full rank N, or empty when
// the matrix never reaches it.
std::vector<int> greedy_full_rank_rows(const JetMatrix& jm, int bign, double tau_rank) {
    std::vector<int> selected;
    MatrixXcd stack(0, jm.rows.cols());
    int rank = 0;
    for (int i = 0; i < jm.rows.rows() && rank < bign; ++i) {
        MatrixXcd candidate(stack.rows() + 1, jm.rows.cols());
        if (stack.rows() > 0) candidate.topRows(stack.rows()) = stack;
        candidate.row(candidate.rows() - 1) = jm.rows.row(i);
        const int r = numerical_rank(candidate, tau_rank);
        if (r > rank) {
            rank = r;
            stack = std::move(candidate);
            selected.push_back(i);
        }
    }
    if (rank < bign) return {};
    return selected;
}

} // namespace

JetMatrix build_jet_matrix(const IsometryMap& f, int k_max) {
    if (k_max < 1) throw hypothesis_error("build_jet_matrix: k_max must be >= 1");
    const int n = f.source_dim();
    const int bign = f.target_dim();
    const int effective = std::min(k_max, f.order());
    JetMatrix jm;
    jm.row_indices = derivative_indices(n, effective);
    jm.rows = MatrixXcd::Zero(static_cast<Eigen::Index>(jm.row_indices.size()), bign);
    for (std::size_t r = 0; r < jm.row_indices.size(); ++r) {
        const auto& idx = jm.row_indices[r];
        const double fact = multi_index_factorial(idx);
        for (int j = 0; j < bign; ++j)
            jm.rows(static_cast<Eigen::Index>(r), j) =
                fact * f.jets[static_cast<std::size_t>(j)].coeff(idx);
    }
    return jm;
}

Certificate linear_degeneracy(const IsometryMap& f, int k_max, const Tolerances& tol) {
    f.validate(tol);
    Certificate cert;
    cert.check = "linear_degeneracy";
    cert.add_tolerance("tau_rank", tol.tau_rank);
    cert.add_metric("k_max", k_max);
    const int bign = f.target_dim();
    const JetMatrix jm = build_jet_matrix(f, k_max);
    const int rank = numerical_rank(jm.rows, tol.tau_rank);
    cert.add_metric("jet_rank", rank);
    if (rank < bign) {
        cert.status = CertStatus::Degenerate;
        // The coefficient span contains the image (through order k_max for
        // non-polynomial maps).
        cert.witness_basis = orthonormal_span(jm.rows.transpose(), tol.tau_rank);
        const int effective = std::min(k_max, f.order());
        int max_deg = 0;
        for (const auto& s : f.jets) max_deg = std::max(max_deg, s.max_degree());
        if (max_deg <= effective && max_deg < f.order())
            cert.note("all stored coefficients lie below the examined order: witness is exact "
                      "for polynomial maps");
        else
            cert.note("witness holds through order " + std::to_string(effective));
    } else {
        cert.status = CertStatus::NonDegenerateCertified;
        const auto rows = greedy_full_rank_rows(jm, bign, tol.tau_rank);
        for (int i : rows) cert.witness_indices.push_back(jm.row_indices[static_cast<std::size_t>(i)]);
    }
    return cert;
}

LinearSubspace degeneracy_from_slicing(const IsometryMap& f, const LinearSubspace& v,
                                       int samples, std::uint64_t seed,
                                       const Tolerances& tol) {
    const TransferResult tr = transfer(f, v, tol);
    SampleStream stream(seed, "degeneracy_from_slicing");
    for (int s = 0; s < samples; ++s) {
        VectorXcd w = v.basis() * stream.gaussian_vector(v.dim()) * 0.25;
        if (w.norm() > tol.r_sample) continue;
        const VectorXcd fw = evaluate_point(f, w);
        if (tr.subspace.distance(fw) > tol.eps_point)
            throw hypothesis_error(
                "degeneracy_from_slicing: sampled image escapes the certified container");
    }
    return tr.subspace;
}

LinearSubspace degeneracy_from_factorization(const IsometryMap& g, const MatrixXcd& a,
                                             const Tolerances& tol) {
    const int m = g.source_dim();
    const int bign = g.target_dim();
    if (a.rows() != m)
        throw dimension_error("degeneracy_from_factorization: A must have m rows");
    if (numerical_rank(a, tol.tau_rank) != a.cols())
        throw dimension_error("degeneracy_from_factorization: A is rank-deficient");
    const MatrixXcd mg = matrix_M(g, tol);
    const MatrixXcd product = mg.transpose() * a; // N x (m-k)
    // rank(M(G)^T A) >= rank(M(G)^T) + rank(A) - m = cols(A), and M(G)^T is
    // injective, so equality is certified here.
    if (numerical_rank(product, tol.tau_rank) != a.cols())
        throw hypothesis_error("degeneracy_from_factorization: rank(M(G)^T A) != cols(A)");
    LinearSubspace w = LinearSubspace::from_kernel(product.transpose(), tol.tau_rank);
    if (w.dim() != bign - static_cast<int>(a.cols()))
        throw hypothesis_error("degeneracy_from_factorization: dim W != N - (m - k)");
    return w;
}

AvoidanceWitnesses avoidance_witnesses(const DomainSpec& target, const Tolerances& tol) {
    if (!target.is_irreducible() || target.factor(0).rank != 2)
        throw hypothesis_error("avoidance_witnesses: target must be irreducible of rank 2");
    const int bign = target.dim();
    const int r = target.nprime() - bign;
    if (2 * bign - target.nprime() <= 1)
        throw hypothesis_error("avoidance_witnesses: requires 2N - N' > 1");
    const int count = r + 2; // non-zero witnesses; r+2 <= N by the hypothesis
    AvoidanceWitnesses out;
    MatrixXcd stacked(count, bign);
    for (int i = 0; i < count; ++i) {
        VectorXcd x = VectorXcd::Zero(bign);
        x(i) = Complex{0.1, 0.0};
        if (!membership(target, as_span(x)).inside)
            throw hypothesis_error("avoidance_witnesses: scaled coordinate point escaped the domain");
        stacked.row(i) = x.transpose();
        out.points.push_back(std::move(x));
    }
    out.points.push_back(VectorXcd::Zero(bign));
    Eigen::JacobiSVD<MatrixXcd> svd(stacked);
    out.min_singular_value = svd.singularValues()(svd.singularValues().size() - 1);
    (void)tol;
    return out;
}

int missed_witness(const AvoidanceWitnesses& witnesses, const LinearSubspace& w, double tol) {
    for (std::size_t i = 0; i < witnesses.points.size(); ++i) {
        const auto& x = witnesses.points[i];
        if (x.norm() == 0.0) continue;
        if (w.distance(x) > tol) return static_cast<int>(i);
    }
    return -1;
}

Certificate sufficient_nondegeneracy(const IsometryMap& f, int k_max, const Tolerances& tol) {
    f.validate(tol);
    Certificate cert;
    cert.check = "sufficient_nondegeneracy";
    cert.add_tolerance("tau_rank", tol.tau_rank);
    cert.add_metric("k_max", k_max);
    const int bign = f.target_dim();
    const JetMatrix jm = build_jet_matrix(f, k_max);
    const auto rows = greedy_full_rank_rows(jm, bign, tol.tau_rank);
    if (!rows.empty()) {
        cert.status = CertStatus::NonDegenerateCertified;
        for (int i : rows) cert.witness_indices.push_back(jm.row_indices[static_cast<std::size_t>(i)]);
        cert.add_metric("jet_rank", bign);
    } else {
        // One-sided: no full-rank selection up to k_max does NOT mean the
        // system is degenerate (the bidisk diagonal example).
        cert.status = CertStatus::Inconclusive;
        cert.add_metric("jet_rank", numerical_rank(jm.rows, tol.tau_rank));
        cert.note("no full-rank jet row selection up to k_max");
    }
    return cert;
}

Certificate example_fiber_probe(int samples, std::uint64_t seed, const Tolerances& tol) {
    Certificate cert;
    cert.check = "example_fiber_probe";
    cert.add_tolerance("eps_fun", tol.eps_fun);
    cert.add_metric("samples", samples);
    SampleStream stream(seed, "example_fiber_probe");
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Complex w = stream.disk_point(0.95);
        // z2 = 2w - z1 reduces the system to z1^2 - 2w z1 + w^2 = 0.
        const Complex disc = 4.0 * w * w - 4.0 * (w * w);
        const Complex root = std::sqrt(disc) / 2.0;
        const Complex z1a = w + root, z1b = w - root;
        for (const Complex& z1 : {z1a, z1b}) {
            const Complex z2 = 2.0 * w - z1;
            if (std::abs(z1) >= 1.0 || std::abs(z2) >= 1.0) continue;
            worst = std::max({worst, std::abs(z1 - w), std::abs(z2 - w)});
        }
        // residual of the double-root certificate
        worst = std::max(worst, std::abs(disc));
    }
    cert.add_metric("fiber_dimension", 0);
    cert.add_metric("component_dimension", 1);
    cert.require_residual(worst, tol.eps_fun);
    return cert;
}

} // namespace hiso
