#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qjl/rng.hpp"
#include "qjl/sampling.hpp"
#include "qjl/types.hpp"

using namespace qjl;

TEST_CASE("l2_norm basics") {
    CHECK(l2_norm(CVector{{3.0, 0.0}, {4.0, 0.0}}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(l2_norm(CVector(17, cplx(0.0))) == 0.0);
    CHECK(l2_norm(CVector{}) == 0.0);
    CHECK(l2_norm(CVector{{1.0, 0.0}, {0.0, 1.0}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(Matrix::identity(9)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(frobenius_norm(Matrix(4, 4)) == 0.0);

    RngStream rng(11, 0);
    Matrix m(4, 4);
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            m(i, j) = sample_complex_gaussian(rng);
            sum += std::norm(m(i, j));
        }
    CHECK(frobenius_norm(m) * frobenius_norm(m) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("inner product convention and properties") {
    const StateVector e1 = StateVector::basis(4, 0);
    const StateVector e2 = StateVector::basis(4, 1);
    CHECK(inner_product(e1, e1) == cplx(1.0));
    CHECK(inner_product(e1, e2) == cplx(0.0));

    // conjugate-linear in the first argument
    CVector iu{{0.0, 1.0}};
    CVector w{{0.5, 0.25}};
    CHECK(inner_product(iu, w) == std::conj(cplx(0.0, 1.0)) * w[0]);

    RngStream rng(3, 5);
    for (int k = 0; k < 50; ++k) {
        const StateVector u = sample_haar_unit_vector(8, rng);
        const StateVector v = sample_haar_unit_vector(8, rng);
        const cplx uv = inner_product(u, v);
        CHECK(std::abs(uv) <= u.norm() * v.norm() + 1e-12);  // Cauchy-Schwarz
        CHECK(std::abs(uv - std::conj(inner_product(v, u))) < 1e-14);
    }

    CHECK_THROWS_AS((void)inner_product(CVector(3), CVector(4)), std::invalid_argument);
}

TEST_CASE("block projection") {
    const BlockStructure bs(4, 2);
    CHECK(bs.num_blocks == 2);
    const CVector v{{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}};
    CHECK(block_project(v, 1, bs) == CVector{{1.0, 0.0}, {2.0, 0.0}});
    CHECK(block_project(v, 2, bs) == CVector{{3.0, 0.0}, {4.0, 0.0}});
    CHECK_THROWS_AS((void)block_project(v, 0, bs), std::out_of_range);
    CHECK_THROWS_AS((void)block_project(v, 3, bs), std::out_of_range);
    CHECK_THROWS_AS((void)block_project(CVector(5), 1, bs), std::invalid_argument);

    // Pythagoras over the orthogonal blocks.
    RngStream rng(9, 1);
    const BlockStructure bs2(64, 8);
    const StateVector x = sample_haar_unit_vector(64, rng);
    double total = 0.0;
    for (std::size_t j = 1; j <= bs2.num_blocks; ++j) {
        const double n = l2_norm(block_project(x, j, bs2));
        total += n * n;
    }
    CHECK(total == doctest::Approx(x.norm() * x.norm()).epsilon(1e-10));
}

TEST_CASE("BlockStructure validation") {
    CHECK_THROWS_AS(BlockStructure(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(BlockStructure(4, 4), std::invalid_argument);
    CHECK_THROWS_AS(BlockStructure(4, 0), std::invalid_argument);
}

TEST_CASE("l1 distance") {
    const std::vector<double> p{0.75, 0.25}, q{0.5, 0.5};
    const std::vector<double> point_a{1.0, 0.0}, point_b{0.0, 1.0};
    const std::vector<double> three{0.5, 0.25, 0.25}, negative{1.5, -0.5}, short_sum{0.5, 0.4};
    CHECK(l1_distance(p, p) == 0.0);
    CHECK(l1_distance(point_a, point_b) == 2.0);
    CHECK(l1_distance(p, q) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS((void)l1_distance(p, three), std::invalid_argument);
    CHECK_THROWS_AS((void)l1_distance(p, negative), std::invalid_argument);
    CHECK_THROWS_AS((void)l1_distance(p, short_sum), std::invalid_argument);
}

TEST_CASE("StateVector") {
    StateVector v(CVector{{3.0, 0.0}, {4.0, 0.0}});
    CHECK_FALSE(v.is_normalized());
    v.normalize();
    CHECK(v.is_normalized(1e-14));
    CHECK(v[0] == cplx(0.6));
    CHECK_THROWS_AS(StateVector(2).normalize(), std::domain_error);
    CHECK_THROWS_AS((void)StateVector::basis(4, 4), std::out_of_range);
}

TEST_CASE("matrix algebra") {
    const Matrix id = Matrix::identity(3);
    CHECK(unitarity_defect(id) == 0.0);
    CHECK(is_unitary(id));

    RngStream rng(21, 2);
    Matrix a(3, 3), b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            a(i, j) = sample_complex_gaussian(rng);
            b(i, j) = sample_complex_gaussian(rng);
        }
    const Matrix ab = a * b;
    // spot-check one entry against a hand product
    cplx expect = 0.0;
    for (std::size_t k = 0; k < 3; ++k) expect += a(1, k) * b(k, 2);
    CHECK(std::abs(ab(1, 2) - expect) < 1e-12);

    const Matrix ad = dagger(a);
    CHECK(ad(0, 1) == std::conj(a(1, 0)));

    const Matrix kk = kron(a, b);
    CHECK(kk.rows() == 9);
    CHECK(std::abs(kk(4, 5) - a(1, 1) * b(1, 2)) < 1e-12);

    CHECK_THROWS_AS((void)(Matrix(2, 3) * Matrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS((void)apply(a, CVector(4)), std::invalid_argument);
}
