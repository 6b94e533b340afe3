#pragma once

#include <hiso/certificate.hpp>
#include <hiso/isometry.hpp>

#include <cstdint>
#include <vector>

namespace hiso {

/// Rows of jet derivatives at 0: for every multi-index I with
/// 1 <= |I| <= k_max (graded-lex), row_I holds the vector
/// d^{|I|}F/dzeta^I(0) = I! * (coefficient of zeta^I) per component.
struct JetMatrix {
    std::vector<MultiIndex> row_indices;
    MatrixXcd rows; ///< #indices x N
};

JetMatrix build_jet_matrix(const IsometryMap& f, int k_max);

/// Jet-rank linear-degeneracy test. Rank N certifies linear
/// non-degeneracy (witnessed by N multi-indices); rank r < N yields the
/// r-dimensional coefficient span W containing the image — a genuine
/// certificate when the map is polynomial of degree <= k_max, a
/// through-order-k_max statement otherwise (noted on the certificate).
Certificate linear_degeneracy(const IsometryMap& f, int k_max, const Tolerances& tol = {});

/// The degeneracy container W produced by slicing through V (delegates to
/// the Grassmannian transfer), re-certified by sampling f on V ∩ ball.
LinearSubspace degeneracy_from_slicing(const IsometryMap& f, const LinearSubspace& v,
                                       int samples, std::uint64_t seed,
                                       const Tolerances& tol = {});

/// Degeneracy transfer under factorization f = G ∘ F: given the outer
/// verified isometry G and a full-column-rank matrix A annihilating the
/// image of the inner map, W = {z : z^T M(G)^T A = 0} of dimension
/// N - cols(A), rank-certified.
LinearSubspace degeneracy_from_factorization(const IsometryMap& g, const MatrixXcd& a,
                                             const Tolerances& tol = {});

struct AvoidanceWitnesses {
    /// N'-N+2 scaled coordinate points followed by the origin.
    std::vector<VectorXcd> points;
    /// Smallest singular value of the stacked non-zero witnesses.
    double min_singular_value = 0.0;
};

/// Points that no disk-isometry image into the target can fully contain:
/// 0 plus N'-N+2 linearly independent small coordinate vectors.
AvoidanceWitnesses avoidance_witnesses(const DomainSpec& target, const Tolerances& tol = {});

/// Index of a non-zero witness missed by the degeneracy container W, or -1
/// when all lie inside (impossible for proper W by the dimension count).
int missed_witness(const AvoidanceWitnesses& witnesses, const LinearSubspace& w,
                   double tol = 1e-6);

/// One-sided certificate that the system of functional equations is
/// sufficiently non-degenerate: found N full-rank jet rows => certified
/// (linear non-degeneracy implies sufficiency); not found up to k_max =>
/// inconclusive, never "degenerate" — linearly degenerate maps can still
/// be sufficiently non-degenerate.
Certificate sufficient_nondegeneracy(const IsometryMap& f, int k_max,
                                     const Tolerances& tol = {});

/// Desk-scale probe of the bidisk diagonal example: for sampled w in the
/// disk, the system {-z1 - z2 + 2w = 0, 2 z1 z2 - 2w^2 = 0} over the
/// bidisk is solved exactly and its solution set certified to be {(w, w)}
/// (double root), so the variety component through the graph has fiber
/// dimension 0 and total dimension 1.
Certificate example_fiber_probe(int samples, std::uint64_t seed, const Tolerances& tol = {});

} // namespace hiso
