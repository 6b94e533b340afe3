#pragma once

namespace hiso {

/// Central numeric thresholds. Defaults are tuned for double precision on
/// jets of order <= 12 and matrices of dimension <= ~30; the CLI can
/// override individual entries.
struct Tolerances {
    /// Coefficient drop threshold for series comparison and serialization.
    double eps_zero = 1e-13;
    /// Functional-identity tolerance (jet residuals).
    double eps_fun = 1e-10;
    /// Pointwise closed-form residual tolerance (sampled identities).
    double eps_point = 1e-9;
    /// Linear-algebra identity tolerance (Jacobian orthogonality, M(f) rows).
    double eps_lin = 1e-11;
    /// Relative singular-value threshold for every numerical rank decision.
    double tau_rank = 1e-9;
    /// Absolute lower bound on the smallest singular value of the tangent
    /// splitting concatenation at interior points.
    double tau_split = 1e-6;
    /// Principal-angle threshold for subspace equality and containment.
    double angle_tol = 1e-8;
    /// Reverse-inclusion residual bound for the section-preservation check.
    double reverse_eps = 1e-8;
    /// Principal-angle threshold for presentation round-trips (span<->kernel).
    double angle_roundtrip = 1e-10;
    /// Radius for pointwise sampling of closed forms.
    double r_sample = 0.5;
    /// Default truncation order for jets.
    int default_order = 8;
    /// Default maximal jet order examined by the degeneracy certificates.
    int degeneracy_max_order = 6;
};

} // namespace hiso
