#pragma once

#include <hiso/errors.hpp>

#include <compare>
#include <numeric>
#include <vector>

namespace hiso {

/// Exponent vector of a monomial, ordered graded-lexicographically:
/// lower total degree first, ties broken by lexicographic comparison of
/// the exponent vectors. The ordering is total, so MultiIndex can key a
/// std::map and serialization enumerates coefficients deterministically.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<int> exponents)
        : exp_(std::move(exponents)),
          degree_(std::accumulate(exp_.begin(), exp_.end(), 0)) {
        for (int e : exp_)
            if (e < 0) throw dimension_error("MultiIndex: negative exponent");
    }

    static MultiIndex zero(int num_vars) {
        return MultiIndex(std::vector<int>(static_cast<std::size_t>(num_vars), 0));
    }

    /// The exponent vector of the bare variable z_var.
    static MultiIndex unit(int num_vars, int var) {
        std::vector<int> e(static_cast<std::size_t>(num_vars), 0);
        e.at(static_cast<std::size_t>(var)) = 1;
        return MultiIndex(std::move(e));
    }

    int num_vars() const { return static_cast<int>(exp_.size()); }
    int degree() const { return degree_; }
    int operator[](int i) const { return exp_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return exp_; }

    MultiIndex operator+(const MultiIndex& other) const {
        std::vector<int> e(exp_.size());
        for (std::size_t i = 0; i < exp_.size(); ++i) e[i] = exp_[i] + other.exp_[i];
        MultiIndex r;
        r.exp_ = std::move(e);
        r.degree_ = degree_ + other.degree_;
        return r;
    }

    /// Decrement the exponent of one variable (formal differentiation step).
    MultiIndex lowered(int var) const {
        std::vector<int> e = exp_;
        e[static_cast<std::size_t>(var)] -= 1;
        if (e[static_cast<std::size_t>(var)] < 0)
            throw dimension_error("MultiIndex: cannot lower zero exponent");
        MultiIndex r;
        r.exp_ = std::move(e);
        r.degree_ = degree_ - 1;
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.exp_ == b.exp_;
    }

    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        return a.exp_ <=> b.exp_;
    }

private:
    std::vector<int> exp_;
    int degree_ = 0;
};

} // namespace hiso
