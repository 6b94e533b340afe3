#include <hiso/domains.hpp>

#include <hiso/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace hiso {

namespace {

bool is_integer_weight(double w) { return std::abs(w - std::round(w)) < 1e-12; }

// All k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// det of the submatrix (rows, cols) of the p-by-q variable matrix, as a
// polynomial in the p*q row-major entries. Leibniz expansion; k <= rank.
JetSeries minor_polynomial(int p, int q, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    const int nv = p * q;
    JetSeries det(nv, k);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        // sign of the permutation by counting inversions
        int inversions = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
        std::vector<int> exps(static_cast<std::size_t>(nv), 0);
        for (int i = 0; i < k; ++i) {
            const int r = rows[static_cast<std::size_t>(i)];
            const int c = cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            exps[static_cast<std::size_t>(r * q + c)] += 1;
        }
        const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
        det.add_to_coeff(MultiIndex(exps), Complex{sign, 0.0});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

void check_length(const DomainSpec& dom, std::span<const Complex> v, const char* who) {
    if (static_cast<int>(v.size()) != dom.dim())
        throw dimension_error(std::string(who) + ": vector length != domain dimension");
}

Complex factor_norm_eval(const DomainFactor& f, std::span<const Complex> z,
                         std::span<const Complex> xi) {
    Complex h{1.0, 0.0};
    for (int j = 0; j < f.dim; ++j) h -= z[static_cast<std::size_t>(j)] * std::conj(xi[static_cast<std::size_t>(j)]);
    for (std::size_t l = 0; l < f.g_terms.size(); ++l) {
        const double sign = (f.g_degrees[l] % 2 == 0) ? 1.0 : -1.0;
        h += sign * evaluate(f.g_terms[l], z) * std::conj(evaluate(f.g_terms[l], xi));
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

DomainSpec DomainSpec::ball(int n, double weight) {
    if (n < 1) throw dimension_error("ball: dimension must be positive");
    if (weight <= 0.0) throw hypothesis_error("ball: weight must be positive");
    DomainSpec d;
    DomainFactor f;
    f.kind = FactorKind::Ball;
    f.dim = n;
    f.rank = 1;
    f.genus = n + 1;
    f.weight = weight;
    d.factors_.push_back(std::move(f));
    d.dim_ = n;
    return d;
}

DomainSpec DomainSpec::type_iv(int n, double weight) {
    if (n < 2) throw hypothesis_error("typeIV: dimension must be >= 2");
    if (weight <= 0.0) throw hypothesis_error("typeIV: weight must be positive");
    DomainSpec d;
    DomainFactor f;
    f.kind = FactorKind::TypeIV;
    f.dim = n;
    f.rank = 2;
    f.genus = n;
    f.weight = weight;
    JetSeries g(n, 2);
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 2;
        g.set_coeff(MultiIndex(std::move(e)), Complex{0.5, 0.0});
    }
    f.g_terms.push_back(std::move(g));
    f.g_degrees.push_back(2);
    d.factors_.push_back(std::move(f));
    d.dim_ = n;
    return d;
}

DomainSpec DomainSpec::type_i(int p, int q, double weight) {
    if (p < 1 || q < 1) throw dimension_error("typeI: matrix shape must be positive");
    if (weight <= 0.0) throw hypothesis_error("typeI: weight must be positive");
    DomainSpec d;
    DomainFactor f;
    f.kind = FactorKind::TypeI;
    f.dim = p * q;
    f.p = p;
    f.q = q;
    f.rank = std::min(p, q);
    f.genus = p + q;
    f.weight = weight;
    for (int k = 2; k <= std::min(p, q); ++k) {
        for (const auto& rows : subsets(p, k))
            for (const auto& cols : subsets(q, k)) {
                f.g_terms.push_back(minor_polynomial(p, q, rows, cols));
                f.g_degrees.push_back(k);
            }
    }
    d.factors_.push_back(std::move(f));
    d.dim_ = p * q;
    return d;
}

DomainSpec DomainSpec::product(const DomainSpec& a, const DomainSpec& b) {
    DomainSpec d;
    d.factors_ = a.factors_;
    d.factors_.insert(d.factors_.end(), b.factors_.begin(), b.factors_.end());
    d.dim_ = a.dim_ + b.dim_;
    return d;
}

DomainSpec DomainSpec::parse(const std::string& text) {
    if (text.empty()) throw io_error("domain spec: empty string");
    DomainSpec result;
    bool first = true;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '*')) {
        double weight = 1.0;
        if (auto at = part.find('@'); at != std::string::npos) {
            try {
                weight = std::stod(part.substr(at + 1));
            } catch (const std::exception&) {
                throw io_error("domain spec: bad weight in '" + part + "'");
            }
            part = part.substr(0, at);
        }
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw io_error("domain spec: expected 'name:dims' in '" + part + "'");
        const std::string name = part.substr(0, colon);
        const std::string dims = part.substr(colon + 1);
        DomainSpec factor = [&] {
            try {
                if (name == "ball") return ball(std::stoi(dims), weight);
                if (name == "typeIV") return type_iv(std::stoi(dims), weight);
                if (name == "typeI") {
                    auto x = dims.find('x');
                    if (x == std::string::npos)
                        throw io_error("domain spec: typeI needs 'pxq' dims");
                    return type_i(std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1)),
                                  weight);
                }
            } catch (const io_error&) {
                throw;
            } catch (const hypothesis_error&) {
                throw;
            } catch (const std::exception&) {
                throw io_error("domain spec: bad dimensions in '" + part + "'");
            }
            throw io_error("domain spec: unknown factor kind '" + name + "'");
        }();
        result = first ? factor : product(result, factor);
        first = false;
    }
    return result;
}

std::string DomainSpec::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (i > 0) out += '*';
        switch (f.kind) {
            case FactorKind::Ball: out += "ball:" + std::to_string(f.dim); break;
            case FactorKind::TypeIV: out += "typeIV:" + std::to_string(f.dim); break;
            case FactorKind::TypeI:
                out += "typeI:" + std::to_string(f.p) + "x" + std::to_string(f.q);
                break;
        }
        if (f.weight != 1.0) out += "@" + format_double(f.weight);
    }
    return out;
}

int DomainSpec::nprime() const {
    int np = dim_;
    for (const auto& f : factors_) np += static_cast<int>(f.g_terms.size());
    return np;
}

int DomainSpec::factor_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += factors_[static_cast<std::size_t>(j)].dim;
    return off;
}

std::vector<double> DomainSpec::weights() const {
    std::vector<double> w;
    w.reserve(factors_.size());
    for (const auto& f : factors_) w.push_back(f.weight);
    return w;
}

DomainSpec DomainSpec::with_weights(const std::vector<double>& w) const {
    if (w.size() != factors_.size())
        throw dimension_error("with_weights: one weight per factor required");
    DomainSpec d = *this;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0) throw hypothesis_error("with_weights: weights must be positive");
        d.factors_[i].weight = w[i];
    }
    return d;
}

bool DomainSpec::same_shape(const DomainSpec& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& a = factors_[i];
        const auto& b = other.factors_[i];
        if (a.kind != b.kind || a.dim != b.dim || a.p != b.p || a.q != b.q) return false;
    }
    return true;
}

Complex generic_norm_eval(const DomainSpec& dom, std::span<const Complex> z,
                          std::span<const Complex> xi) {
    check_length(dom, z, "generic_norm_eval");
    check_length(dom, xi, "generic_norm_eval");
    Complex h{1.0, 0.0};
    for (int i = 0; i < dom.num_factors(); ++i) {
        const int off = dom.factor_offset(i);
        const auto& f = dom.factor(i);
        h *= factor_norm_eval(f, z.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim)),
                              xi.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim)));
    }
    return h;
}

Complex weighted_norm_eval(const DomainSpec& dom, std::span<const Complex> z,
                           std::span<const Complex> xi) {
    check_length(dom, z, "weighted_norm_eval");
    check_length(dom, xi, "weighted_norm_eval");
    Complex h{1.0, 0.0};
    for (int i = 0; i < dom.num_factors(); ++i) {
        const int off = dom.factor_offset(i);
        const auto& f = dom.factor(i);
        const Complex hj =
            factor_norm_eval(f, z.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim)),
                             xi.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim)));
        h *= is_integer_weight(f.weight)
                 ? std::pow(hj, static_cast<int>(std::llround(f.weight)))
                 : std::pow(hj, Complex{f.weight, 0.0});
    }
    return h;
}

MembershipResult membership(const DomainSpec& dom, std::span<const Complex> z) {
    check_length(dom, z, "membership");
    MembershipResult result{true, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < dom.num_factors(); ++i) {
        const int off = dom.factor_offset(i);
        const auto& f = dom.factor(i);
        auto zi = z.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim));
        double margin = 0.0;
        switch (f.kind) {
            case FactorKind::Ball: {
                double n2 = 0.0;
                for (const auto& c : zi) n2 += std::norm(c);
                margin = 1.0 - std::sqrt(n2);
                break;
            }
            case FactorKind::TypeI: {
                Eigen::MatrixXcd m(f.p, f.q);
                for (int r = 0; r < f.p; ++r)
                    for (int c = 0; c < f.q; ++c) m(r, c) = zi[static_cast<std::size_t>(r * f.q + c)];
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
                margin = 1.0 - (svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0);
                break;
            }
            case FactorKind::TypeIV: {
                double n2 = 0.0;
                for (const auto& c : zi) n2 += std::norm(c);
                const Complex g = evaluate(f.g_terms[0], zi);
                margin = std::min(2.0 - n2, 1.0 + std::norm(g) - n2);
                break;
            }
        }
        result.margin = std::min(result.margin, margin);
    }
    result.inside = result.margin > 0.0;
    return result;
}

Complex bergman_Q(const DomainSpec& dom, std::span<const Complex> z,
                  std::span<const Complex> xi) {
    check_length(dom, z, "bergman_Q");
    check_length(dom, xi, "bergman_Q");
    Complex qv{1.0, 0.0};
    for (int i = 0; i < dom.num_factors(); ++i) {
        const int off = dom.factor_offset(i);
        const auto& f = dom.factor(i);
        const Complex hj =
            factor_norm_eval(f, z.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim)),
                             xi.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(f.dim)));
        qv *= std::pow(hj, f.genus);
    }
    return qv;
}

std::vector<JetSeries> identity_jets(int n, int order) {
    std::vector<JetSeries> jets;
    jets.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) jets.push_back(JetSeries::variable(n, order, j));
    return jets;
}

namespace {

void check_components(const DomainSpec& dom, std::span<const JetSeries> f, const char* who) {
    if (static_cast<int>(f.size()) != dom.dim())
        throw dimension_error(std::string(who) + ": component count != domain dimension");
    for (const auto& s : f)
        if (s.num_vars() != f.front().num_vars())
            throw dimension_error(std::string(who) + ": components disagree on num_vars");
}

// h_j(f(w), g(zeta)) for one factor, as a jet in 2n variables.
JetSeries factor_norm_jet(const DomainFactor& fac, std::span<const JetSeries> f,
                          std::span<const JetSeries> g, int n, int order) {
    const int tv = 2 * n;
    JetSeries h = JetSeries::constant(tv, order, Complex{1.0, 0.0});
    for (int j = 0; j < fac.dim; ++j) {
        const JetSeries fw = embed_block(f[static_cast<std::size_t>(j)].truncated(order), tv, 0);
        const JetSeries gc =
            embed_block(conjugated(g[static_cast<std::size_t>(j)].truncated(order)), tv, n);
        h = sub(h, mul(fw, gc));
    }
    for (std::size_t l = 0; l < fac.g_terms.size(); ++l) {
        const double sign = (fac.g_degrees[l] % 2 == 0) ? 1.0 : -1.0;
        const JetSeries gf = compose_poly(fac.g_terms[l], f);
        const JetSeries gg = compose_poly(fac.g_terms[l], g);
        const JetSeries a = embed_block(gf.truncated(order), tv, 0);
        const JetSeries b = embed_block(conjugated(gg.truncated(order)), tv, n);
        h = add(h, scale(mul(a, b), Complex{sign, 0.0}));
    }
    return h;
}

JetSeries norm_jet_impl(const DomainSpec& dom, std::span<const JetSeries> f,
                        std::span<const JetSeries> g, int order, bool weighted) {
    check_components(dom, f, "generic_norm_jet");
    check_components(dom, g, "generic_norm_jet");
    if (f.front().num_vars() != g.front().num_vars())
        throw dimension_error("generic_norm_jet: f and g disagree on num_vars");
    const int n = f.front().num_vars();
    JetSeries h = JetSeries::constant(2 * n, order, Complex{1.0, 0.0});
    for (int i = 0; i < dom.num_factors(); ++i) {
        const int off = dom.factor_offset(i);
        const auto& fac = dom.factor(i);
        JetSeries hj = factor_norm_jet(
            fac, f.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(fac.dim)),
            g.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(fac.dim)), n, order);
        if (weighted && fac.weight != 1.0) {
            if (is_integer_weight(fac.weight)) {
                hj = pow_int(hj, static_cast<int>(std::llround(fac.weight)));
            } else {
                if (std::abs(hj.constant_term() - Complex{1.0, 0.0}) > 1e-13)
                    throw normalization_error(
                        "weighted_norm_jet: non-integer weight on a factor whose norm jet has "
                        "constant term != 1");
                hj = pow_real(hj, fac.weight);
            }
        }
        h = mul(h, hj);
    }
    return h;
}

} // namespace

JetSeries generic_norm_jet(const DomainSpec& dom, std::span<const JetSeries> f,
                           std::span<const JetSeries> g, int order) {
    return norm_jet_impl(dom, f, g, order, false);
}

JetSeries weighted_norm_jet(const DomainSpec& dom, std::span<const JetSeries> f,
                            std::span<const JetSeries> g, int order) {
    return norm_jet_impl(dom, f, g, order, true);
}

} // namespace hiso
