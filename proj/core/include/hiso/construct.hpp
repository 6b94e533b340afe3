#pragma once

#include <hiso/certificate.hpp>
#include <hiso/isometry.hpp>

#include <span>
#include <vector>

namespace hiso {

/// Input to the graph-isometry constructor. The target must be an
/// irreducible rank-2 domain with m := 2N - N' >= 2 (equivalently, not one
/// of the excluded typeI 2-by-q cases, q >= 5); `unitary` is the
/// (N'-N)-square unitary of the construction. `arrangement`, when present,
/// is a permutation of 0..N-1 describing which coordinate each slot maps
/// to: slots [0, N'-N) carry the solved graph components (and the unitary
/// columns of U'), slots [N'-N, N) carry the free variables in order.
/// Empty means the plain graph arrangement: free variables first, solved
/// components in the last N'-N coordinates.
struct GraphConstructionProblem {
    DomainSpec target;
    MatrixXcd unitary;
    std::vector<int> arrangement;
    int order = 8;
};

struct GraphConstructionResult {
    IsometryMap map;
    /// Functional-equation certificate of the constructed map, embedded by
    /// the constructor.
    Certificate certificate;
    /// The (N'-N) x N matrix U' whose variety W_{U'} the image lies on.
    MatrixXcd u_prime;
};

/// Solve phi = U G(z, phi) degree by degree (U = conj(unitary)^T). Every
/// G_l of a rank-2 domain is homogeneous of degree 2, so each fixed-point
/// sweep extends correctness by at least one degree and `order` sweeps
/// determine all coefficients up to the truncation. The result is
/// f(z) = (z, phi(z)) (or its arranged permutation) with k = 1, and it is
/// verified before being returned.
GraphConstructionResult solve_graph_isometry(const GraphConstructionProblem& problem,
                                             const Tolerances& tol = {});

/// Set the last (source_dim - m) variables to zero in every component:
/// the slicing isometry from ball(m) of the theorem.
IsometryMap slice(const IsometryMap& f, int m);

struct VarietyResult {
    bool member = false;
    double residual = 0.0;
};

/// Membership of z in W_{U'} = {w in Omega : U' w = (G_1(w), ..., G_{N'-N}(w))};
/// residual is the Euclidean defect. Throws domain_error when z lies
/// outside the target domain.
VarietyResult variety_membership(const DomainSpec& target, const MatrixXcd& u_prime,
                                 std::span<const Complex> z, const Tolerances& tol = {});

} // namespace hiso
