#include <hiso/linear_subspace.hpp>

#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>

#include <doctest.h>

using namespace hiso;

TEST_CASE("span and kernel presentations round-trip") {
    SampleStream stream(42, "subspace_roundtrip");
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 3 + static_cast<int>(stream.next_u64() % 5); // ambient 3..7
        const int m = 1 + static_cast<int>(stream.next_u64() % static_cast<std::uint64_t>(d - 1));
        MatrixXcd span(d, m);
        for (int c = 0; c < m; ++c) span.col(c) = stream.gaussian_vector(d);
        const LinearSubspace v = LinearSubspace::from_span(span);
        const LinearSubspace back = LinearSubspace::from_kernel(v.kernel_matrix());
        CHECK(back.dim() == v.dim());
        CHECK(v.gap_angle(back) < 1e-10);
        // converting twice more changes nothing
        const LinearSubspace again = LinearSubspace::from_kernel(back.kernel_matrix());
        CHECK(v.gap_angle(again) < 1e-10);
    }
}

TEST_CASE("rank certification rejects bad presentations") {
    MatrixXcd rank_deficient(3, 2);
    rank_deficient.col(0) = VectorXcd::Ones(3);
    rank_deficient.col(1) = 2.0 * VectorXcd::Ones(3);
    CHECK_THROWS_AS(LinearSubspace::from_span(rank_deficient), dimension_error);

    MatrixXcd bad_kernel(2, 3);
    bad_kernel.row(0) << Complex{1, 0}, Complex{0, 0}, Complex{1, 0};
    bad_kernel.row(1) << Complex{2, 0}, Complex{0, 0}, Complex{2, 0};
    CHECK_THROWS_AS(LinearSubspace::from_kernel(bad_kernel), dimension_error);
}

TEST_CASE("distance, projection and containment") {
    MatrixXcd plane(3, 2);
    plane.setZero();
    plane(0, 0) = Complex{1, 0};
    plane(1, 1) = Complex{1, 0};
    const LinearSubspace v = LinearSubspace::from_span(plane); // span{e1, e2}
    VectorXcd x(3);
    x << Complex{1, 0}, Complex{2, 0}, Complex{3, 0};
    CHECK(v.distance(x) == doctest::Approx(3.0));
    VectorXcd expect(3);
    expect << Complex{1, 0}, Complex{2, 0}, Complex{0, 0};
    CHECK((v.project(x) - expect).norm() < 1e-14);

    MatrixXcd line(3, 1);
    line.setZero();
    line(0, 0) = Complex{1, 0};
    const LinearSubspace l = LinearSubspace::from_span(line);
    CHECK(l.contained_in(v, 1e-10));
    CHECK(!v.contained_in(l, 1e-10));
    CHECK(v.same_subspace(v, 1e-12));
}

TEST_CASE("direct_sum rejects overlapping summands") {
    MatrixXcd a(3, 2), b(3, 1);
    a.setZero();
    a(0, 0) = Complex{1, 0};
    a(1, 1) = Complex{1, 0};
    b.setZero();
    b(0, 0) = Complex{1, 0};
    const LinearSubspace va = LinearSubspace::from_span(a);
    const LinearSubspace vb = LinearSubspace::from_span(b);
    CHECK_THROWS_AS(direct_sum(va, vb), hypothesis_error);

    MatrixXcd c(3, 1);
    c.setZero();
    c(2, 0) = Complex{1, 0};
    const LinearSubspace vc = LinearSubspace::from_span(c);
    CHECK(direct_sum(va, vc).dim() == 3);
}

TEST_CASE("numerical rank uses the relative threshold") {
    MatrixXcd m = MatrixXcd::Zero(3, 3);
    m(0, 0) = Complex{1.0, 0.0};
    m(1, 1) = Complex{1e-6, 0.0};
    m(2, 2) = Complex{1e-12, 0.0}; // below tau_rank * sigma_max
    CHECK(numerical_rank(m, 1e-9) == 2);
    CHECK(kernel_basis(m, 1e-9).cols() == 1);
    CHECK(numerical_rank(MatrixXcd::Zero(2, 2)) == 0);
}
