#pragma once

#include <stdexcept>
#include <string>

namespace hiso {

/// Base class for all errors raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched variable counts, vector lengths or component counts.
struct dimension_error : error {
    using error::error;
};

/// Substitution into a truncated jet with an inadmissible inner series.
struct composition_error : error {
    using error::error;
};

/// Real-power of a series whose constant term is not 1.
struct normalization_error : error {
    using error::error;
};

/// A point lies outside the domain a computation requires it in.
struct domain_error : error {
    using error::error;
};

/// A construction was asked for outside its theorem hypotheses.
struct hypothesis_error : error {
    using error::error;
};

/// File or format problems.
struct io_error : error {
    using error::error;
};

} // namespace hiso
