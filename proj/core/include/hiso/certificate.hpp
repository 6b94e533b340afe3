#pragma once

#include <hiso/linear_subspace.hpp>
#include <hiso/multi_index.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hiso {

enum class CertStatus {
    Pass,
    Fail,
    Degenerate,
    NonDegenerateCertified,
    Inconclusive,
};

std::string to_string(CertStatus s);
CertStatus cert_status_from_string(const std::string& s);

/// Outcome record of a verification or degeneracy run: status, the worst
/// residual, named metrics, witness data and the tolerances that were in
/// force. Immutable result value once filled; serialized as JSON by the
/// CLI and the report assembler.
struct Certificate {
    std::string check;
    CertStatus status = CertStatus::Pass;
    double max_residual = 0.0;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::pair<std::string, double>> tolerances;
    std::vector<std::string> notes;

    /// Subspace witness (orthonormal columns), e.g. the degeneracy container.
    std::optional<MatrixXcd> witness_basis;
    /// Multi-index witness, e.g. the rows certifying full jet rank.
    std::vector<MultiIndex> witness_indices;

    /// A failed verification; Degenerate / Inconclusive are determinations,
    /// not failures.
    bool failed() const { return status == CertStatus::Fail; }

    void add_metric(std::string name, double value) {
        metrics.emplace_back(std::move(name), value);
    }
    void add_tolerance(std::string name, double value) {
        tolerances.emplace_back(std::move(name), value);
    }
    void note(std::string text) { notes.push_back(std::move(text)); }

    /// Record a residual and fail the certificate if it exceeds the bound.
    void require_residual(double residual, double bound) {
        max_residual = std::max(max_residual, residual);
        if (!(residual <= bound)) status = CertStatus::Fail;
    }
};

} // namespace hiso
