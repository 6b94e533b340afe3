#include <hiso/domains.hpp>

#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>

#include <doctest.h>

#include <Eigen/Dense>

using namespace hiso;

namespace {

std::vector<Complex> to_vec(const VectorXcd& v) {
    return {v.data(), v.data() + v.size()};
}

} // namespace

TEST_CASE("spec strings parse and print canonically") {
    for (const char* text : {"ball:3", "typeIV:4", "typeI:2x3", "ball:2*typeIV:4",
                             "ball:2@1.5", "ball:1@2*ball:1"}) {
        const DomainSpec d = DomainSpec::parse(text);
        CHECK(d.to_string() == text);
        CHECK(DomainSpec::parse(d.to_string()).to_string() == text);
    }
    CHECK(DomainSpec::parse("typeI:2x3").dim() == 6);
    CHECK(DomainSpec::parse("ball:2*typeIV:4").dim() == 6);
    CHECK(DomainSpec::parse("ball:2*typeIV:4").num_factors() == 2);
    CHECK_THROWS_AS(DomainSpec::parse("disk:1"), io_error);
    CHECK_THROWS_AS(DomainSpec::parse("ball"), io_error);
    CHECK_THROWS_AS(DomainSpec::parse("typeI:4"), io_error);
    CHECK_THROWS_AS(DomainSpec::parse(""), io_error);
}

TEST_CASE("catalog constants: rank, genus, N'") {
    const DomainSpec b = DomainSpec::ball(3);
    CHECK(b.factor(0).rank == 1);
    CHECK(b.factor(0).genus == 4);
    CHECK(b.nprime() == 3);

    const DomainSpec iv = DomainSpec::type_iv(4);
    CHECK(iv.factor(0).rank == 2);
    CHECK(iv.factor(0).genus == 4);
    CHECK(iv.nprime() == 5); // one quadric

    const DomainSpec t23 = DomainSpec::type_i(2, 3);
    CHECK(t23.factor(0).rank == 2);
    CHECK(t23.factor(0).genus == 5);
    CHECK(t23.nprime() == 6 + 3); // three 2x2 minors

    const DomainSpec t33 = DomainSpec::type_i(3, 3);
    // nine 2x2 minors plus the determinant
    CHECK(t33.nprime() == 9 + 9 + 1);
}

TEST_CASE("ball generic norm is the polarized inner product") {
    SampleStream stream(7, "ball_norm");
    const DomainSpec b = DomainSpec::ball(3);
    for (int t = 0; t < 50; ++t) {
        const VectorXcd z = stream.ball_point(3, 0.9);
        const VectorXcd xi = stream.ball_point(3, 0.9);
        Complex expect{1.0, 0.0};
        for (int j = 0; j < 3; ++j) expect -= z(j) * std::conj(xi(j));
        CHECK(std::abs(generic_norm_eval(b, to_vec(z), to_vec(xi)) - expect) < 1e-15);
    }
    // h(z, 0) = 1 on every catalog domain
    for (const char* spec : {"ball:2", "typeIV:3", "typeI:2x2", "ball:1*typeIV:4"}) {
        const DomainSpec d = DomainSpec::parse(spec);
        const VectorXcd z = stream.ball_point(d.dim(), 0.7);
        const VectorXcd zero = VectorXcd::Zero(d.dim());
        CHECK(std::abs(generic_norm_eval(d, to_vec(z), to_vec(zero)) - Complex{1.0, 0.0}) <
              1e-15);
    }
}

TEST_CASE("generic norm is Hermitian-symmetric on random pairs") {
    SampleStream stream(8, "hermitian");
    for (const char* spec : {"ball:3", "typeIV:4", "typeI:2x3", "ball:2*typeIV:3"}) {
        const DomainSpec d = DomainSpec::parse(spec);
        for (int t = 0; t < 250; ++t) {
            const VectorXcd z = stream.ball_point(d.dim(), 0.8);
            const VectorXcd xi = stream.ball_point(d.dim(), 0.8);
            const Complex a = generic_norm_eval(d, to_vec(z), to_vec(xi));
            const Complex b = generic_norm_eval(d, to_vec(xi), to_vec(z));
            CHECK(std::abs(a - std::conj(b)) < 1e-13);
        }
    }
}

TEST_CASE("typeI norm equals det(I - Z conj(W)^T)") {
    SampleStream stream(9, "typeI_det");
    for (const auto [p, q] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
        const DomainSpec d = DomainSpec::type_i(p, q);
        for (int t = 0; t < 100; ++t) {
            const VectorXcd z = stream.ball_point(p * q, 0.9);
            const VectorXcd w = stream.ball_point(p * q, 0.9);
            Eigen::MatrixXcd zm(p, q), wm(p, q);
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < q; ++j) {
                    zm(i, j) = z(i * q + j);
                    wm(i, j) = w(i * q + j);
                }
            const Complex oracle =
                (Eigen::MatrixXcd::Identity(p, p) - zm * wm.adjoint()).determinant();
            CHECK(std::abs(generic_norm_eval(d, to_vec(z), to_vec(w)) - oracle) < 1e-12);
        }
    }
}

TEST_CASE("typeIV norm collapses on the graph image") {
    // h(f(w), f(w)) = 1 - |w|^2 for f(w) = (w, 1 - sqrt(1 - sum w^2))
    SampleStream stream(10, "typeIV_graph_norm");
    const int n = 3;
    const DomainSpec d = DomainSpec::type_iv(n);
    for (int t = 0; t < 100; ++t) {
        const VectorXcd w = stream.ball_point(n - 1, 0.8);
        Complex s2{0.0, 0.0};
        double norm2 = 0.0;
        for (int j = 0; j < n - 1; ++j) {
            s2 += w(j) * w(j);
            norm2 += std::norm(w(j));
        }
        VectorXcd f(n);
        f.head(n - 1) = w;
        f(n - 1) = Complex{1.0, 0.0} - std::sqrt(Complex{1.0, 0.0} - s2);
        const Complex h = generic_norm_eval(d, to_vec(f), to_vec(f));
        CHECK(std::abs(h - Complex{1.0 - norm2, 0.0}) < 1e-13);
    }
}

TEST_CASE("membership: ball margin and typeIV directions") {
    const DomainSpec b2 = DomainSpec::ball(2);
    std::vector<Complex> z = {{0.6, 0.0}, {0.0, 0.0}};
    const auto r = membership(b2, z);
    CHECK(r.inside);
    CHECK(r.margin == doctest::Approx(0.4));

    // isotropic direction t (1, i)/sqrt(2): inside iff t < 1
    const DomainSpec iv2 = DomainSpec::type_iv(3);
    auto isotropic = [&](double t) {
        std::vector<Complex> p = {Complex{t / std::sqrt(2.0), 0.0},
                                  Complex{0.0, t / std::sqrt(2.0)}, Complex{0.0, 0.0}};
        return membership(iv2, p).inside;
    };
    CHECK(isotropic(0.99));
    CHECK(!isotropic(1.01));

    // real direction (t, 0, 0): inside iff t < sqrt(2); scan for the boundary
    auto real_dir = [&](double t) {
        std::vector<Complex> p = {Complex{t, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}};
        return membership(iv2, p).inside;
    };
    double lo = 1.0, hi = 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (real_dir(mid) ? lo : hi) = mid;
    }
    CHECK(std::abs(lo - std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("membership margin grows toward the origin and h stays positive inside") {
    SampleStream stream(11, "margin_monotone");
    for (const char* spec : {"ball:3", "typeIV:4", "typeI:2x2"}) {
        const DomainSpec d = DomainSpec::parse(spec);
        for (int t = 0; t < 30; ++t) {
            VectorXcd z = stream.ball_point(d.dim(), 1.0);
            // find an inside point along the ray
            while (!membership(d, to_vec(z)).inside) z *= 0.9;
            double prev = membership(d, to_vec(z)).margin;
            for (double s : {0.8, 0.6, 0.4, 0.2}) {
                const VectorXcd zs = z * s;
                const double m = membership(d, to_vec(zs)).margin;
                CHECK(m >= prev - 1e-12);
                prev = m;
            }
            // h(tz, tz) > 0 along [0, 1] for inside points
            for (int k = 0; k <= 100; ++k) {
                const VectorXcd zt = z * (k / 100.0);
                CHECK(generic_norm_eval(d, to_vec(zt), to_vec(zt)).real() > 0.0);
            }
        }
    }
}

TEST_CASE("bergman Q uses the genus exponents") {
    SampleStream stream(12, "bergman");
    const DomainSpec disk = DomainSpec::ball(1);
    for (int t = 0; t < 20; ++t) {
        const Complex z = stream.disk_point(0.9);
        const Complex xi = stream.disk_point(0.9);
        const Complex h = Complex{1.0, 0.0} - z * std::conj(xi);
        std::vector<Complex> zv = {z}, xv = {xi};
        CHECK(std::abs(bergman_Q(disk, zv, xv) - h * h) < 1e-14);
    }
    const DomainSpec b3 = DomainSpec::ball(3);
    for (int t = 0; t < 20; ++t) {
        const VectorXcd z = stream.ball_point(3, 0.9);
        const VectorXcd xi = stream.ball_point(3, 0.9);
        const Complex h = generic_norm_eval(b3, to_vec(z), to_vec(xi));
        CHECK(std::abs(bergman_Q(b3, to_vec(z), to_vec(xi)) - std::pow(h, 4)) < 1e-13);
        const VectorXcd zero = VectorXcd::Zero(3);
        CHECK(std::abs(bergman_Q(b3, to_vec(zero), to_vec(xi)) - Complex{1.0, 0.0}) < 1e-15);
    }
}

TEST_CASE("norm jets: identity ball, graph image, weighted bidisk") {
    const int order = 8;
    // ball target, f = g = identity: 1 - sum w_j zeta_j
    {
        const DomainSpec b = DomainSpec::ball(2);
        const auto id = identity_jets(2, order);
        const JetSeries h = generic_norm_jet(b, id, id, order);
        JetSeries expect(4, order);
        expect.set_coeff(MultiIndex::zero(4), Complex{1.0, 0.0});
        expect.set_coeff(MultiIndex({1, 0, 1, 0}), Complex{-1.0, 0.0});
        expect.set_coeff(MultiIndex({0, 1, 0, 1}), Complex{-1.0, 0.0});
        CHECK(max_coeff_distance(h, expect) < 1e-15);
    }
    // typeIV graph map: h jet collapses to the ball kernel of the source
    {
        const int n = 4;
        const DomainSpec iv = DomainSpec::type_iv(n);
        JetSeries s2(n - 1, order);
        for (int j = 0; j < n - 1; ++j) {
            std::vector<int> e(static_cast<std::size_t>(n - 1), 0);
            e[static_cast<std::size_t>(j)] = 2;
            s2.set_coeff(MultiIndex(e), Complex{1.0, 0.0});
        }
        const JetSeries one = JetSeries::constant(n - 1, order, 1.0);
        std::vector<JetSeries> f = identity_jets(n - 1, order);
        f.push_back(sub(one, pow_real(sub(one, s2), 0.5)));
        const JetSeries h = generic_norm_jet(iv, f, f, order);
        const auto id = identity_jets(n - 1, order);
        const JetSeries expect = generic_norm_jet(DomainSpec::ball(n - 1), id, id, order);
        CHECK(max_coeff_distance(h, expect) < 1e-12);
    }
    // weighted bidisk on the diagonal: (1 - w conj(zeta))^2
    {
        const DomainSpec bidisk = DomainSpec::product(DomainSpec::ball(1), DomainSpec::ball(1));
        const JetSeries w = JetSeries::variable(1, order, 0);
        const std::vector<JetSeries> diag = {w, w};
        const JetSeries h = weighted_norm_jet(bidisk, diag, diag, order);
        JetSeries pairing(2, order);
        pairing.set_coeff(MultiIndex::zero(2), Complex{1.0, 0.0});
        pairing.set_coeff(MultiIndex({1, 1}), Complex{-1.0, 0.0});
        CHECK(max_coeff_distance(h, mul(pairing, pairing)) < 1e-14);
    }
}

TEST_CASE("length mismatches are dimension errors") {
    const DomainSpec b = DomainSpec::ball(2);
    std::vector<Complex> bad = {{0.1, 0.0}};
    std::vector<Complex> ok = {{0.1, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(generic_norm_eval(b, bad, ok), dimension_error);
    CHECK_THROWS_AS(membership(b, bad), dimension_error);
    CHECK_THROWS_AS(bergman_Q(b, ok, bad), dimension_error);
}
