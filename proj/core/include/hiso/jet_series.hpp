#pragma once

#include <hiso/errors.hpp>
#include <hiso/multi_index.hpp>

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace hiso {

using Complex = std::complex<double>;

/// Truncated multivariate power series over the complex numbers, the
/// substrate for every analytic computation in the library.
///
/// Coefficients are stored sparsely, keyed by MultiIndex in graded-lex
/// order; an absent key means a zero coefficient. `order` is the
/// truncation degree: coefficients of total degree > order are not
/// represented and arithmetic never reports them. All operations are
/// pure; values are safe to share between threads.
class JetSeries {
public:
    JetSeries(int num_vars, int order) : num_vars_(num_vars), order_(order) {
        if (num_vars < 1) throw dimension_error("JetSeries: num_vars must be positive");
        if (order < 0) throw dimension_error("JetSeries: order must be non-negative");
    }

    static JetSeries constant(int num_vars, int order, Complex value);
    /// The bare variable z_var.
    static JetSeries variable(int num_vars, int order, int var);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }

    Complex coeff(const MultiIndex& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
    }
    Complex constant_term() const { return coeff(MultiIndex::zero(num_vars_)); }

    void set_coeff(const MultiIndex& idx, Complex value);
    void add_to_coeff(const MultiIndex& idx, Complex value);

    const std::map<MultiIndex, Complex>& coeffs() const { return coeffs_; }

    /// Drop coefficients of total degree > new_order. The resulting order is
    /// min(order, new_order): truncation never claims accuracy it does not have.
    JetSeries truncated(int new_order) const;

    /// Remove stored coefficients of magnitude < eps.
    JetSeries pruned(double eps) const;

    /// Largest stored total degree (0 for the zero series).
    int max_degree() const;

    bool is_zero(double eps) const;

private:
    int num_vars_;
    int order_;
    std::map<MultiIndex, Complex> coeffs_;
};

JetSeries add(const JetSeries& a, const JetSeries& b);
JetSeries sub(const JetSeries& a, const JetSeries& b);
JetSeries negate(const JetSeries& a);
JetSeries scale(const JetSeries& a, Complex factor);

/// Cauchy product truncated at min(a.order, b.order). Exact for polynomial
/// inputs whose product degree fits under the truncation.
JetSeries mul(const JetSeries& a, const JetSeries& b);

/// Non-negative integer power by repeated multiplication.
JetSeries pow_int(const JetSeries& a, int e);

/// Substitute `inners` for the variables of `outer`. Every inner must have a
/// zero constant term (within eps_zero); otherwise the tail of `outer`
/// beyond its truncation would contribute at low degrees and the result
/// would be meaningless, so a composition_error is thrown. Result order =
/// min(outer.order, min inner order).
JetSeries compose(const JetSeries& outer, std::span<const JetSeries> inners,
                  double eps_zero = 1e-13);

/// Substitution that treats `outer` as an exact polynomial (all of its
/// coefficients are stored), so inners with non-zero constant terms are
/// admissible. Result order = min inner order.
JetSeries compose_poly(const JetSeries& outer, std::span<const JetSeries> inners);

/// a^e = exp(e * log(a)) for real e, via the log/exp series recurrences.
/// Requires constant term 1 (within eps_zero): throws normalization_error.
JetSeries pow_real(const JetSeries& a, double e, double eps_zero = 1e-13);

/// log(a) for unit-constant a; zero constant term.
JetSeries log_series(const JetSeries& a, double eps_zero = 1e-13);
/// exp(v) for v with zero constant term.
JetSeries exp_series(const JetSeries& v, double eps_zero = 1e-13);

/// Formal partial derivative; order drops by one.
JetSeries partial(const JetSeries& a, int var);

/// Evaluate the stored polynomial at a point, graded order of summation.
/// Trustworthy for polynomials, or for points well inside the radius of
/// accuracy of the jet (the caller's concern).
Complex evaluate(const JetSeries& a, std::span<const Complex> point);

/// Series with conjugated coefficients: represents conj(a(conj(u))) as a
/// series in u, used for the anti-holomorphic argument blocks.
JetSeries conjugated(const JetSeries& a);

/// Re-index an n-variable series into a larger variable space, placing its
/// variables at [offset, offset + n).
JetSeries embed_block(const JetSeries& a, int total_vars, int offset);

/// Largest coefficient magnitude of a - b over the union of stored indices
/// up to the common truncation order. Throws on mismatched num_vars.
double max_coeff_distance(const JetSeries& a, const JetSeries& b);

/// Equality after dropping coefficients below eps.
bool approx_equal(const JetSeries& a, const JetSeries& b, double eps);

inline JetSeries operator+(const JetSeries& a, const JetSeries& b) { return add(a, b); }
inline JetSeries operator-(const JetSeries& a, const JetSeries& b) { return sub(a, b); }
inline JetSeries operator-(const JetSeries& a) { return negate(a); }
inline JetSeries operator*(const JetSeries& a, const JetSeries& b) { return mul(a, b); }
inline JetSeries operator*(Complex c, const JetSeries& a) { return scale(a, c); }
inline JetSeries operator*(const JetSeries& a, Complex c) { return scale(a, c); }

} // namespace hiso
