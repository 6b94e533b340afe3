#include <hiso/jet_series.hpp>

#include "oracle_poly.hpp"

#include <doctest.h>

#include <random>

using namespace hiso;

namespace {

// Random sparse series with dyadic coefficients (exactly representable, so
// algebraic identities that hold over the rationals hold bit-for-bit).
JetSeries random_series(std::mt19937_64& gen, int num_vars, int order, int terms,
                        bool unit_constant = false) {
    JetSeries s(num_vars, order);
    std::uniform_int_distribution<int> coeff(-512, 512);
    std::uniform_int_distribution<int> expo(0, order);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(static_cast<std::size_t>(num_vars), 0);
        int budget = expo(gen);
        for (int j = 0; j < num_vars && budget > 0; ++j) {
            std::uniform_int_distribution<int> part(0, budget);
            e[static_cast<std::size_t>(j)] = part(gen);
            budget -= e[static_cast<std::size_t>(j)];
        }
        s.set_coeff(MultiIndex(e), Complex{coeff(gen) * 0x1.0p-10, coeff(gen) * 0x1.0p-10});
    }
    if (unit_constant) s.set_coeff(MultiIndex::zero(num_vars), Complex{1.0, 0.0});
    return s;
}

double oracle_distance(const JetSeries& s, const oracle::Poly& p) {
    double worst = 0.0;
    for (const auto& [idx, c] : s.coeffs())
        worst = std::max(worst, std::abs(c - p.at(idx.exponents())));
    for (const auto& [e, c] : p.coeff)
        if (oracle::degree(e) <= s.order())
            worst = std::max(worst, std::abs(c - s.coeff(MultiIndex(e))));
    return worst;
}

} // namespace

TEST_CASE("multi-index ordering is graded-lex") {
    const MultiIndex a({1, 0});
    const MultiIndex b({0, 2});
    const MultiIndex c({0, 1});
    CHECK(a < b);  // degree first
    CHECK(c < a);  // degree first again
    const MultiIndex d({1, 1});
    const MultiIndex e({0, 2});
    CHECK(e < d);  // same degree, lexicographic on exponents
    CHECK(a.degree() == 1);
    CHECK(d.degree() == 2);
}

TEST_CASE("add: cancellation, identity, basis") {
    const JetSeries one = JetSeries::constant(1, 4, 1.0);
    const JetSeries z = JetSeries::variable(1, 4, 0);
    const JetSeries sum = add(add(one, z), sub(one, z)); // (1+z) + (1-z)
    CHECK(approx_equal(sum, JetSeries::constant(1, 4, 2.0), 0.0));

    std::mt19937_64 gen(1);
    const JetSeries s = random_series(gen, 3, 5, 12);
    CHECK(approx_equal(add(s, JetSeries(3, 5)), s, 0.0));

    const JetSeries z1 = JetSeries::variable(2, 3, 0);
    const JetSeries z2 = JetSeries::variable(2, 3, 1);
    const JetSeries both = add(z1, z2);
    CHECK(both.coeff(MultiIndex({1, 0})) == Complex{1.0, 0.0});
    CHECK(both.coeff(MultiIndex({0, 1})) == Complex{1.0, 0.0});
    CHECK(both.coeffs().size() == 2);

    CHECK_THROWS_AS(add(z1, JetSeries::variable(3, 3, 0)), dimension_error);
}

TEST_CASE("mul: difference of squares and cross term") {
    const JetSeries one = JetSeries::constant(1, 4, 1.0);
    const JetSeries z = JetSeries::variable(1, 4, 0);
    const JetSeries prod = mul(add(one, z), sub(one, z));
    JetSeries expect(1, 4);
    expect.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    expect.set_coeff(MultiIndex({2}), Complex{-1.0, 0.0});
    CHECK(approx_equal(prod, expect, 0.0));

    const JetSeries z1 = JetSeries::variable(2, 4, 0);
    const JetSeries z2 = JetSeries::variable(2, 4, 1);
    const JetSeries cross = mul(z1, z2);
    CHECK(cross.coeff(MultiIndex({1, 1})) == Complex{1.0, 0.0});
    CHECK(cross.coeffs().size() == 1);
}

TEST_CASE("mul: (1-s^2) * (1-s^2)^{1/2} matches the binomial oracle for (1-s^2)^{3/2}") {
    const int order = 6;
    JetSeries one_minus_s2(1, order);
    one_minus_s2.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    one_minus_s2.set_coeff(MultiIndex({2}), Complex{-1.0, 0.0});
    const JetSeries sqrt_series = pow_real(one_minus_s2, 0.5);
    const JetSeries product = mul(one_minus_s2, sqrt_series);

    oracle::Poly u(1); // -s^2
    u.coeff[{2}] = oracle::C{-1.0, 0.0};
    const oracle::Poly expect = oracle::binomial_series(u, 1.5, order);
    CHECK(oracle_distance(product, expect) < 1e-14);
}

TEST_CASE("compose: quadratic outer, identity, and the typeIV quadric identity") {
    // outer = w^2, inner = z1 + z2
    JetSeries outer(1, 2);
    outer.set_coeff(MultiIndex({2}), Complex{1.0, 0.0});
    const std::vector<JetSeries> inners = {
        add(JetSeries::variable(2, 4, 0), JetSeries::variable(2, 4, 1))};
    const JetSeries composed = compose(outer, inners);
    CHECK(composed.coeff(MultiIndex({2, 0})) == Complex{1.0, 0.0});
    CHECK(composed.coeff(MultiIndex({1, 1})) == Complex{2.0, 0.0});
    CHECK(composed.coeff(MultiIndex({0, 2})) == Complex{1.0, 0.0});

    // compose with the identity tuple is the identity (exactly)
    std::mt19937_64 gen(2);
    const JetSeries s = random_series(gen, 2, 5, 10);
    std::vector<JetSeries> id = {JetSeries::variable(2, 5, 0), JetSeries::variable(2, 5, 1)};
    CHECK(approx_equal(compose(s, id), s, 0.0));

    // G(w) = (1/2) sum w_j^2 over f = (z1, z2, 1 - sqrt(1 - z1^2 - z2^2))
    // collapses to 1 - sqrt(1 - s^2): the quadric absorbs the graph component.
    const int order = 10;
    JetSeries g(3, 2);
    for (int j = 0; j < 3; ++j) {
        std::vector<int> e(3, 0);
        e[static_cast<std::size_t>(j)] = 2;
        g.set_coeff(MultiIndex(e), Complex{0.5, 0.0});
    }
    JetSeries s2(2, order);
    s2.set_coeff(MultiIndex({2, 0}), Complex{1.0, 0.0});
    s2.set_coeff(MultiIndex({0, 2}), Complex{1.0, 0.0});
    const JetSeries one = JetSeries::constant(2, order, 1.0);
    const JetSeries phi = sub(one, pow_real(sub(one, s2), 0.5));
    const std::vector<JetSeries> f = {JetSeries::variable(2, order, 0),
                                      JetSeries::variable(2, order, 1), phi};
    const JetSeries composed_g = compose_poly(g, f);

    oracle::Poly u(2); // -z1^2 - z2^2
    u.coeff[{2, 0}] = oracle::C{-1.0, 0.0};
    u.coeff[{0, 2}] = oracle::C{-1.0, 0.0};
    oracle::Poly expect = oracle::scale(oracle::binomial_series(u, 0.5, order), {-1.0, 0.0});
    expect = oracle::add(expect, oracle::Poly::constant(2, {1.0, 0.0})); // 1 - sqrt(1 - s^2)
    CHECK(oracle_distance(composed_g, expect) < 1e-13);
}

TEST_CASE("compose rejects non-zero inner constant terms on truncated jets") {
    std::mt19937_64 gen(3);
    const JetSeries outer = random_series(gen, 1, 6, 5);
    std::vector<JetSeries> bad = {JetSeries::constant(1, 6, 0.5)};
    CHECK_THROWS_AS(compose(outer, bad), composition_error);
    // compose_poly treats the outer as exact and accepts them
    CHECK_NOTHROW(compose_poly(outer, bad));
}

TEST_CASE("pow_real: integer exponent, binomial oracle, exponent product property") {
    JetSeries one_minus_z(1, 6);
    one_minus_z.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    one_minus_z.set_coeff(MultiIndex({1}), Complex{-1.0, 0.0});
    JetSeries expect(1, 6);
    expect.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    expect.set_coeff(MultiIndex({1}), Complex{-2.0, 0.0});
    expect.set_coeff(MultiIndex({2}), Complex{1.0, 0.0});
    CHECK(approx_equal(pow_real(one_minus_z, 2.0), expect, 1e-14));

    // (1 - s^2)^{1/2} = 1 - s^2/2 - s^4/8 - s^6/16 ...
    JetSeries one_minus_s2(1, 6);
    one_minus_s2.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    one_minus_s2.set_coeff(MultiIndex({2}), Complex{-1.0, 0.0});
    const JetSeries root = pow_real(one_minus_s2, 0.5);
    CHECK(std::abs(root.coeff(MultiIndex({2})) - Complex{-0.5, 0.0}) < 1e-15);
    CHECK(std::abs(root.coeff(MultiIndex({4})) - Complex{-0.125, 0.0}) < 1e-15);
    CHECK(std::abs(root.coeff(MultiIndex({6})) - Complex{-0.0625, 0.0}) < 1e-15);

    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const JetSeries s = random_series(gen, 2, 6, 8, true);
        std::uniform_real_distribution<double> expo(-1.5, 1.5);
        const double a = expo(gen), b = expo(gen);
        const JetSeries lhs = pow_real(pow_real(s, a), b);
        const JetSeries rhs = pow_real(s, a * b);
        CHECK(max_coeff_distance(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("pow_real rejects non-unit constant terms") {
    const JetSeries z = JetSeries::variable(1, 4, 0);
    CHECK_THROWS_AS(pow_real(z, 0.5), normalization_error);
}

TEST_CASE("partial: monomials, constants, and the polarized-kernel derivative") {
    JetSeries s(2, 4);
    s.set_coeff(MultiIndex({2, 1}), Complex{1.0, 0.0}); // z1^2 z2
    const JetSeries d1 = partial(s, 0);
    CHECK(d1.coeff(MultiIndex({1, 1})) == Complex{2.0, 0.0});
    CHECK(partial(JetSeries::constant(2, 4, 3.0), 1).is_zero(0.0));

    // d/d(conj zeta_mu) of (1 - sum w_j conj(zeta_j))^k at zeta = 0 is -k w_mu.
    const int n = 3, k = 2, order = 6;
    JetSeries pairing(2 * n, order);
    pairing.set_coeff(MultiIndex::zero(2 * n), Complex{1.0, 0.0});
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(static_cast<std::size_t>(2 * n), 0);
        e[static_cast<std::size_t>(j)] = 1;
        e[static_cast<std::size_t>(n + j)] = 1;
        pairing.set_coeff(MultiIndex(e), Complex{-1.0, 0.0});
    }
    const JetSeries powered = pow_real(pairing, k);
    for (int mu = 0; mu < n; ++mu) {
        JetSeries deriv = partial(powered, n + mu);
        // evaluate the conj-zeta block at zero: keep only zero exponents there
        JetSeries at_zero(2 * n, deriv.order());
        for (const auto& [idx, c] : deriv.coeffs()) {
            bool pure_w = true;
            for (int j = n; j < 2 * n && pure_w; ++j) pure_w = idx[j] == 0;
            if (pure_w) at_zero.set_coeff(idx, c);
        }
        JetSeries expect(2 * n, deriv.order());
        expect.set_coeff(MultiIndex::unit(2 * n, mu), Complex{-double(k), 0.0});
        CHECK(max_coeff_distance(at_zero, expect) < 1e-13);
    }
}

TEST_CASE("partial commutes exactly on dyadic series") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const JetSeries s = random_series(gen, 3, 6, 15);
        CHECK(max_coeff_distance(partial(partial(s, 0), 1), partial(partial(s, 1), 0)) == 0.0);
    }
}

TEST_CASE("evaluate: polynomials and the order-12 sqrt jet") {
    JetSeries p(1, 4);
    p.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    p.set_coeff(MultiIndex({2}), Complex{-1.0, 0.0});
    const Complex at_half = evaluate(p, std::vector<Complex>{{0.5, 0.0}});
    CHECK(std::abs(at_half - Complex{0.75, 0.0}) < 1e-15);

    const JetSeries z1 = JetSeries::variable(2, 3, 0);
    const JetSeries z2 = JetSeries::variable(2, 3, 1);
    const Complex v =
        evaluate(add(z1, z2), std::vector<Complex>{{0.0, 1.0}, {0.0, -1.0}});
    CHECK(std::abs(v) < 1e-15);

    // order-12 jet of 1 - sqrt(1 - s^2) at s = 0.3 against the closed form
    const int order = 12;
    JetSeries one_minus_s2(1, order);
    one_minus_s2.set_coeff(MultiIndex({0}), Complex{1.0, 0.0});
    one_minus_s2.set_coeff(MultiIndex({2}), Complex{-1.0, 0.0});
    const JetSeries phi =
        sub(JetSeries::constant(1, order, 1.0), pow_real(one_minus_s2, 0.5));
    const Complex approx = evaluate(phi, std::vector<Complex>{{0.3, 0.0}});
    const double exact = 1.0 - std::sqrt(1.0 - 0.09);
    CHECK(std::abs(approx - Complex{exact, 0.0}) < 1e-9);
}

TEST_CASE("ring axioms on random sparse series") {
    std::mt19937_64 gen(6);
    for (int trial = 0; trial < 10; ++trial) {
        const JetSeries a = random_series(gen, 2, 6, 8);
        const JetSeries b = random_series(gen, 2, 6, 8);
        const JetSeries c = random_series(gen, 2, 6, 8);
        CHECK(max_coeff_distance(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-13);
        CHECK(max_coeff_distance(mul(a, add(b, c)), add(mul(a, b), mul(a, c))) < 1e-13);
        CHECK(max_coeff_distance(mul(a, b), mul(b, a)) == 0.0);
    }
}

TEST_CASE("pow_real unit laws and exp/log round trip") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 10; ++trial) {
        const JetSeries a = random_series(gen, 2, 6, 8, true);
        CHECK(max_coeff_distance(pow_real(a, 1.0), a) < 1e-10);
        CHECK(approx_equal(pow_real(a, 0.0), JetSeries::constant(2, 6, 1.0), 1e-12));
        CHECK(max_coeff_distance(exp_series(log_series(a)), a) < 1e-10);
    }
}

TEST_CASE("truncation semantics: binary ops take the minimum order") {
    std::mt19937_64 gen(8);
    const JetSeries a = random_series(gen, 2, 8, 10);
    const JetSeries b = random_series(gen, 2, 5, 10);
    CHECK(add(a, b).order() == 5);
    CHECK(mul(a, b).order() == 5);
    CHECK(a.truncated(3).order() == 3);
    CHECK(a.truncated(12).order() == 8); // truncation never raises the order
}
