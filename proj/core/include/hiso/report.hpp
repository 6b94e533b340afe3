#pragma once

#include <hiso/fibration.hpp>
#include <hiso/serialization.hpp>

#include <cstdint>
#include <string>

namespace hiso {

struct ReportOptions {
    int samples = 1000;
    std::uint64_t seed = 7;
    int order = 8;
    int k_max = 6;
    /// Suppress the timestamp so identical runs are byte-identical.
    bool deterministic = false;
    Tolerances tol;
};

/// Worker-thread cap: BSD_ISO_THREADS when set (clamped to >= 1),
/// hardware concurrency otherwise.
int thread_cap();

/// One composite document for a map: verification, fibration, sections and
/// degeneracy certificates. Sub-checks run in parallel (bounded by
/// thread_cap()) and are joined before assembly; the document itself is
/// built single-threaded, so bytes depend only on the inputs and the seed.
Json build_report(const IsometryMap& f, const ReportOptions& opt);

/// Most severe certificate status in the document (pass < degenerate /
/// inconclusive < fail for exit-code purposes).
bool report_has_failure(const Json& report);

/// "json", "csv" (one row per sub-check) or "human".
std::string render_report(const Json& report, const std::string& format);

} // namespace hiso
