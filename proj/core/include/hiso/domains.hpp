#pragma once

#include <hiso/jet_series.hpp>
#include <hiso/tolerances.hpp>

#include <span>
#include <string>
#include <vector>

namespace hiso {

enum class FactorKind { Ball, TypeI, TypeIV };

/// One irreducible factor of a bounded symmetric domain in its
/// Harish-Chandra realization, together with its generic-norm data:
/// h(z, xi) = 1 - sum z_j conj(xi_j)
///              + sum_l (-1)^{deg G_l} G_l(z) conj(G_l(xi)),
/// where the G_l are the homogeneous polynomials of degree >= 2 stored in
/// `g_terms`. For type I_{p,q} these are all k-by-k minors of the p-by-q
/// matrix (2 <= k <= min(p,q), entries row-major); for type IV_n the single
/// quadric G(z) = (1/2) sum z_j^2; for balls the list is empty.
struct DomainFactor {
    FactorKind kind;
    int dim;
    int p = 0; // typeI only
    int q = 0; // typeI only
    int rank;
    int genus;
    double weight = 1.0; // canonical-metric constant (lambda or mu)
    std::vector<JetSeries> g_terms;
    std::vector<int> g_degrees;
};

/// A bounded symmetric domain, possibly a weighted product of irreducible
/// factors. Immutable after construction; evaluations are pure.
class DomainSpec {
public:
    /// Empty spec (dimension 0); fill via the factory functions or parse.
    DomainSpec() = default;

    static DomainSpec ball(int n, double weight = 1.0);
    static DomainSpec type_iv(int n, double weight = 1.0);
    static DomainSpec type_i(int p, int q, double weight = 1.0);
    static DomainSpec product(const DomainSpec& a, const DomainSpec& b);

    /// Parse spec strings: "ball:3", "typeIV:4", "typeI:2x3", weighted
    /// factors "ball:2@1.5", products "ball:2*typeIV:4".
    static DomainSpec parse(const std::string& text);
    std::string to_string() const;

    int dim() const { return dim_; }
    /// N' = N + total number of G_l terms (minimal-embedding count).
    int nprime() const;
    int num_factors() const { return static_cast<int>(factors_.size()); }
    const std::vector<DomainFactor>& factors() const { return factors_; }
    const DomainFactor& factor(int i) const { return factors_.at(static_cast<std::size_t>(i)); }
    /// Coordinate offset of factor i inside C^dim.
    int factor_offset(int i) const;
    bool is_irreducible() const { return factors_.size() == 1; }

    std::vector<double> weights() const;
    DomainSpec with_weights(const std::vector<double>& w) const;

    /// Same factor kinds and dimensions, ignoring weights.
    bool same_shape(const DomainSpec& other) const;

private:
    std::vector<DomainFactor> factors_;
    int dim_ = 0;
};

struct MembershipResult {
    bool inside = false;
    /// Signed slack of the binding inequality; positive inside.
    double margin = 0.0;
};

/// Product over factors of the unweighted generic norms h_j(z^j, xi^j).
Complex generic_norm_eval(const DomainSpec& dom, std::span<const Complex> z,
                          std::span<const Complex> xi);

/// Product of the factor norms raised to their weights (principal branch
/// for non-integer weights; near-1 arguments only, the caller's concern).
Complex weighted_norm_eval(const DomainSpec& dom, std::span<const Complex> z,
                           std::span<const Complex> xi);

MembershipResult membership(const DomainSpec& dom, std::span<const Complex> z);

/// Q_Omega(z, xi) = prod_j h_j(z^j, xi^j)^{p_j} with the integer genus
/// exponents; the Bergman kernel is C / Q with a volume constant C that no
/// check here needs.
Complex bergman_Q(const DomainSpec& dom, std::span<const Complex> z,
                  std::span<const Complex> xi);

/// h_Omega(f(w), g(zeta)) as a jet in 2n variables: the first n are the
/// holomorphic block w, the last n stand for the conjugated block
/// conj(zeta). Components of f and g are jets in n variables with zero
/// constant term. Unweighted product across factors, truncated at `order`.
JetSeries generic_norm_jet(const DomainSpec& dom, std::span<const JetSeries> f,
                           std::span<const JetSeries> g, int order);

/// Same with each factor raised to its weight: integer weights by repeated
/// multiplication, real weights via pow_real (unit constant term required,
/// which f(0)=g(0)=0 guarantees).
JetSeries weighted_norm_jet(const DomainSpec& dom, std::span<const JetSeries> f,
                            std::span<const JetSeries> g, int order);

/// Identity component jets (z_1, ..., z_n) at the given order.
std::vector<JetSeries> identity_jets(int n, int order);

} // namespace hiso
