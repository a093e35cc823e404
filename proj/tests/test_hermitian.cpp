#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "polsar/hermitian.hpp"
#include "polsar/reference.hpp"

using namespace polsar;

TEST_CASE("determinant of identity and diagonal matrices") {
    CHECK(determinant(HermitianMatrix::identity()) == Catch::Approx(1.0));
    CHECK(determinant(HermitianMatrix::diagonal(2, 3, 4)) == Catch::Approx(24.0));
}

TEST_CASE("determinant matches the cofactor oracle on a bundled matrix") {
    const HermitianMatrix m = reference::sigma_a1();
    const oracle::Complex od = oracle::det_cofactor(oracle::to_full(m));
    REQUIRE(std::abs(od.imag()) < 1e-9 * std::abs(od.real()));
    CHECK(determinant(m) == Catch::Approx(od.real()).epsilon(1e-12));
}

TEST_CASE("inverse of diagonal matrices") {
    const HermitianMatrix inv = inverse(HermitianMatrix::diagonal(2, 4, 5));
    CHECK(inv.diag(0) == Catch::Approx(0.5));
    CHECK(inv.diag(1) == Catch::Approx(0.25));
    CHECK(inv.diag(2) == Catch::Approx(0.2));
    CHECK(inverse(HermitianMatrix::identity()) == HermitianMatrix::identity());
}

TEST_CASE("inverse multiplies back to identity") {
    const HermitianMatrix m = reference::sigma_pf();
    const oracle::Mat3 prod = oracle::multiply(oracle::to_full(m), oracle::to_full(inverse(m)));
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const oracle::Complex expected = i == j ? 1.0 : 0.0;
            err += std::norm(prod[i][j] - expected);
        }
    CHECK(std::sqrt(err) < 1e-9 * std::sqrt(3.0));
}

TEST_CASE("inverse rejects singular input") {
    // rank-deficient: third column is zero
    CHECK_THROWS_AS(inverse(HermitianMatrix{1.0, 1.0, 0.0, {0, 0}, {0, 0}, {0, 0}}),
                    SingularMatrix);
}

TEST_CASE("trace_product identities") {
    const HermitianMatrix id = HermitianMatrix::identity();
    CHECK(trace_product(id, id) == Catch::Approx(3.0));
    const HermitianMatrix s = reference::sigma_rg();
    CHECK(trace_product(inverse(s), s) == Catch::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("trace_product matches the full-multiply oracle") {
    const HermitianMatrix a = reference::sigma_ps();
    const HermitianMatrix b = reference::sigma_rg();
    const oracle::Complex tr = oracle::trace(oracle::multiply(oracle::to_full(a), oracle::to_full(b)));
    REQUIRE(std::abs(tr.imag()) < 1e-9 * std::abs(tr.real()));
    CHECK(trace_product(a, b) == Catch::Approx(tr.real()).epsilon(1e-12));
}

TEST_CASE("convex_combination endpoints and entrywise arithmetic") {
    const HermitianMatrix a = reference::sigma_a1();
    const HermitianMatrix b = reference::sigma_bs();
    CHECK(convex_combination(a, b, 1.0) == a);
    CHECK(convex_combination(a, a, 0.5) == a);
    const HermitianMatrix c = convex_combination(a, b, 0.9);
    CHECK(c.diag(0) == Catch::Approx(0.9 * 47.95 + 0.1 * 21.15));
    CHECK(c.u01().real() == Catch::Approx(0.9 * -0.03 + 0.1 * 0.01));
    CHECK(c.u02().imag() == Catch::Approx(0.9 * 4.09 + 0.1 * -1.98));
    CHECK(is_positive_definite(c));
}

TEST_CASE("properties over random HPD matrices") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const HermitianMatrix m = oracle::random_hpd(rng);
        const double det = determinant(m);
        REQUIRE(det > 0.0);
        CHECK(determinant(inverse(m)) == Catch::Approx(1.0 / det).epsilon(1e-9));
        CHECK(frobenius_distance(inverse(inverse(m)), m) < 1e-9 * frobenius_norm(m));
        const HermitianMatrix n = oracle::random_hpd(rng);
        const double ab = trace_product(m, n);
        const double ba = trace_product(n, m);
        CHECK(ab == Catch::Approx(ba).epsilon(1e-12));
    }
}

TEST_CASE("non-finite entries are rejected") {
    CHECK_THROWS_AS(HermitianMatrix(std::nan(""), 1, 1, {0, 0}, {0, 0}, {0, 0}), Error);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(HermitianMatrix(1, 1, 1, {inf, 0}, {0, 0}, {0, 0}), Error);
}
