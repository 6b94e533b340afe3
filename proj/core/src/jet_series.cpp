#include <hiso/jet_series.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace hiso {

namespace {

void require_same_shape(const JetSeries& a, const JetSeries& b, const char* op) {
    if (a.num_vars() != b.num_vars())
        throw dimension_error(std::string(op) + ": mismatched num_vars");
}

} // namespace

JetSeries JetSeries::constant(int num_vars, int order, Complex value) {
    JetSeries s(num_vars, order);
    if (value != Complex{0.0, 0.0}) s.set_coeff(MultiIndex::zero(num_vars), value);
    return s;
}

JetSeries JetSeries::variable(int num_vars, int order, int var) {
    if (var < 0 || var >= num_vars) throw dimension_error("JetSeries::variable: index out of range");
    JetSeries s(num_vars, order);
    if (order >= 1) s.set_coeff(MultiIndex::unit(num_vars, var), Complex{1.0, 0.0});
    return s;
}

void JetSeries::set_coeff(const MultiIndex& idx, Complex value) {
    if (idx.num_vars() != num_vars_)
        throw dimension_error("JetSeries::set_coeff: index has wrong number of variables");
    if (idx.degree() > order_)
        throw dimension_error("JetSeries::set_coeff: index degree exceeds truncation order");
    if (value == Complex{0.0, 0.0})
        coeffs_.erase(idx);
    else
        coeffs_[idx] = value;
}

void JetSeries::add_to_coeff(const MultiIndex& idx, Complex value) {
    if (idx.num_vars() != num_vars_)
        throw dimension_error("JetSeries::add_to_coeff: index has wrong number of variables");
    if (idx.degree() > order_) return;
    auto [it, inserted] = coeffs_.try_emplace(idx, value);
    if (!inserted) it->second += value;
}

JetSeries JetSeries::truncated(int new_order) const {
    JetSeries r(num_vars_, std::min(order_, new_order));
    for (const auto& [idx, c] : coeffs_)
        if (idx.degree() <= r.order_) r.coeffs_.emplace(idx, c);
    return r;
}

JetSeries JetSeries::pruned(double eps) const {
    JetSeries r(num_vars_, order_);
    for (const auto& [idx, c] : coeffs_)
        if (std::abs(c) >= eps) r.coeffs_.emplace(idx, c);
    return r;
}

int JetSeries::max_degree() const {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first.degree();
}

bool JetSeries::is_zero(double eps) const {
    for (const auto& [idx, c] : coeffs_)
        if (std::abs(c) >= eps) return false;
    return true;
}

JetSeries add(const JetSeries& a, const JetSeries& b) {
    require_same_shape(a, b, "add");
    JetSeries r(a.num_vars(), std::min(a.order(), b.order()));
    for (const auto& [idx, c] : a.coeffs())
        if (idx.degree() <= r.order()) r.add_to_coeff(idx, c);
    for (const auto& [idx, c] : b.coeffs())
        if (idx.degree() <= r.order()) r.add_to_coeff(idx, c);
    return r;
}

JetSeries sub(const JetSeries& a, const JetSeries& b) { return add(a, negate(b)); }

JetSeries negate(const JetSeries& a) { return scale(a, Complex{-1.0, 0.0}); }

JetSeries scale(const JetSeries& a, Complex factor) {
    JetSeries r(a.num_vars(), a.order());
    if (factor == Complex{0.0, 0.0}) return r;
    for (const auto& [idx, c] : a.coeffs()) r.set_coeff(idx, factor * c);
    return r;
}

JetSeries mul(const JetSeries& a, const JetSeries& b) {
    require_same_shape(a, b, "mul");
    JetSeries r(a.num_vars(), std::min(a.order(), b.order()));
    for (const auto& [ia, ca] : a.coeffs()) {
        if (ia.degree() > r.order()) break;
        for (const auto& [ib, cb] : b.coeffs()) {
            if (ia.degree() + ib.degree() > r.order()) break;
            r.add_to_coeff(ia + ib, ca * cb);
        }
    }
    return r;
}

JetSeries pow_int(const JetSeries& a, int e) {
    if (e < 0) throw dimension_error("pow_int: negative exponent");
    JetSeries acc = JetSeries::constant(a.num_vars(), a.order(), Complex{1.0, 0.0});
    JetSeries base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

namespace {

JetSeries compose_impl(const JetSeries& outer, std::span<const JetSeries> inners, int order) {
    const int m = inners.front().num_vars();
    // Cached powers of each inner series, grown on demand.
    std::vector<std::vector<JetSeries>> pows(inners.size());
    auto inner_pow = [&](std::size_t j, int e) -> const JetSeries& {
        auto& col = pows[j];
        if (col.empty()) col.push_back(JetSeries::constant(m, order, Complex{1.0, 0.0}));
        while (static_cast<int>(col.size()) <= e)
            col.push_back(mul(col.back(), inners[j].truncated(order)));
        return col[static_cast<std::size_t>(e)];
    };

    JetSeries r(m, order);
    for (const auto& [idx, c] : outer.coeffs()) {
        JetSeries term = JetSeries::constant(m, order, c);
        for (int j = 0; j < idx.num_vars(); ++j)
            if (idx[j] > 0) term = mul(term, inner_pow(static_cast<std::size_t>(j), idx[j]));
        r = add(r, term);
    }
    return r;
}

void require_inner_pack(const JetSeries& outer, std::span<const JetSeries> inners) {
    if (static_cast<int>(inners.size()) != outer.num_vars())
        throw dimension_error("compose: inner count != outer num_vars");
    const int m = inners.front().num_vars();
    for (const auto& s : inners)
        if (s.num_vars() != m) throw dimension_error("compose: inners disagree on num_vars");
}

} // namespace

JetSeries compose(const JetSeries& outer, std::span<const JetSeries> inners, double eps_zero) {
    require_inner_pack(outer, inners);
    int order = outer.order();
    for (const auto& s : inners) {
        if (std::abs(s.constant_term()) > eps_zero)
            throw composition_error("compose: inner series has non-zero constant term");
        order = std::min(order, s.order());
    }
    return compose_impl(outer, inners, order);
}

JetSeries compose_poly(const JetSeries& outer, std::span<const JetSeries> inners) {
    require_inner_pack(outer, inners);
    int order = inners.front().order();
    for (const auto& s : inners) order = std::min(order, s.order());
    return compose_impl(outer, inners, order);
}

JetSeries log_series(const JetSeries& a, double eps_zero) {
    if (std::abs(a.constant_term() - Complex{1.0, 0.0}) > eps_zero)
        throw normalization_error("log_series: constant term is not 1");
    const int order = a.order();
    JetSeries u = sub(a, JetSeries::constant(a.num_vars(), order, Complex{1.0, 0.0}));
    // log(1+u) = sum (-1)^{m+1} u^m / m; u has zero constant term so u^m
    // starts at degree m and the loop stops at the truncation order.
    JetSeries r(a.num_vars(), order);
    JetSeries upow = u;
    for (int m = 1; m <= order; ++m) {
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        r = add(r, scale(upow, Complex{sign / m, 0.0}));
        if (m < order) upow = mul(upow, u);
    }
    return r;
}

JetSeries exp_series(const JetSeries& v, double eps_zero) {
    if (std::abs(v.constant_term()) > eps_zero)
        throw normalization_error("exp_series: constant term is not 0");
    const int order = v.order();
    JetSeries r = JetSeries::constant(v.num_vars(), order, Complex{1.0, 0.0});
    JetSeries vpow = v;
    double fact = 1.0;
    for (int m = 1; m <= order; ++m) {
        fact *= m;
        r = add(r, scale(vpow, Complex{1.0 / fact, 0.0}));
        if (m < order) vpow = mul(vpow, v);
    }
    return r;
}

JetSeries pow_real(const JetSeries& a, double e, double eps_zero) {
    if (std::abs(a.constant_term() - Complex{1.0, 0.0}) > eps_zero)
        throw normalization_error("pow_real: constant term is not 1");
    return exp_series(scale(log_series(a, eps_zero), Complex{e, 0.0}), eps_zero);
}

JetSeries partial(const JetSeries& a, int var) {
    if (var < 0 || var >= a.num_vars()) throw dimension_error("partial: variable index out of range");
    JetSeries r(a.num_vars(), std::max(a.order() - 1, 0));
    for (const auto& [idx, c] : a.coeffs()) {
        if (idx[var] == 0) continue;
        if (idx.degree() - 1 > r.order()) continue;
        r.add_to_coeff(idx.lowered(var), c * static_cast<double>(idx[var]));
    }
    return r;
}

Complex evaluate(const JetSeries& a, std::span<const Complex> point) {
    if (static_cast<int>(point.size()) != a.num_vars())
        throw dimension_error("evaluate: point length != num_vars");
    std::vector<std::vector<Complex>> pows(point.size());
    auto var_pow = [&](std::size_t j, int e) -> Complex {
        auto& col = pows[j];
        if (col.empty()) col.push_back(Complex{1.0, 0.0});
        while (static_cast<int>(col.size()) <= e) col.push_back(col.back() * point[j]);
        return col[static_cast<std::size_t>(e)];
    };
    Complex acc{0.0, 0.0};
    for (const auto& [idx, c] : a.coeffs()) {
        Complex term = c;
        for (int j = 0; j < idx.num_vars(); ++j)
            if (idx[j] > 0) term *= var_pow(static_cast<std::size_t>(j), idx[j]);
        acc += term;
    }
    return acc;
}

JetSeries conjugated(const JetSeries& a) {
    JetSeries r(a.num_vars(), a.order());
    for (const auto& [idx, c] : a.coeffs()) r.set_coeff(idx, std::conj(c));
    return r;
}

JetSeries embed_block(const JetSeries& a, int total_vars, int offset) {
    if (offset < 0 || offset + a.num_vars() > total_vars)
        throw dimension_error("embed_block: block does not fit");
    JetSeries r(total_vars, a.order());
    for (const auto& [idx, c] : a.coeffs()) {
        std::vector<int> e(static_cast<std::size_t>(total_vars), 0);
        for (int j = 0; j < a.num_vars(); ++j) e[static_cast<std::size_t>(offset + j)] = idx[j];
        r.set_coeff(MultiIndex(std::move(e)), c);
    }
    return r;
}

double max_coeff_distance(const JetSeries& a, const JetSeries& b) {
    if (a.num_vars() != b.num_vars())
        throw dimension_error("max_coeff_distance: mismatched num_vars");
    const int order = std::min(a.order(), b.order());
    double worst = 0.0;
    for (const auto& [idx, c] : a.coeffs())
        if (idx.degree() <= order) worst = std::max(worst, std::abs(c - b.coeff(idx)));
    for (const auto& [idx, c] : b.coeffs())
        if (idx.degree() <= order) worst = std::max(worst, std::abs(c - a.coeff(idx)));
    return worst;
}

bool approx_equal(const JetSeries& a, const JetSeries& b, double eps) {
    return a.num_vars() == b.num_vars() && max_coeff_distance(a, b) <= eps;
}

} // namespace hiso
