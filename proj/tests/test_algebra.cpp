#include "rauzy/algebra.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

using namespace rauzy;

namespace {

using Mat = std::array<std::array<long long, 3>, 3>;

// Matrix of z -> alpha z on the basis (1, alpha, alpha^2), built from alpha^3 = a alpha^2 - alpha + 1.
Mat companion(int a) { return Mat{{{0, 0, 1}, {1, 0, -1}, {0, 1, a}}}; }
// Inverse from alpha^{-1} = alpha^2 - a alpha + 1, applied column by column.
Mat companion_inverse(int a) { return Mat{{{1, 1, 0}, {-a, 0, 1}, {1, 0, 0}}}; }

Mat mul(const Mat& x, const Mat& y) {
    Mat z{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) z[i][j] += x[i][k] * y[k][j];
    return z;
}

// First column of M^n: the coordinates of alpha^n.
std::array<long long, 3> matrix_power_oracle(int a, int n) {
    Mat m = n >= 0 ? companion(a) : companion_inverse(a);
    Mat acc{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int i = 0; i < std::abs(n); ++i) acc = mul(m, acc);
    return {acc[0][0], acc[1][0], acc[2][0]};
}

// Plain bisection on p in long double, independent of the library's root finder.
long double bisect_beta(int a) {
    long double lo = a - 1, hi = a;
    for (int i = 0; i < 200; ++i) {
        const long double mid = (lo + hi) / 2;
        const long double v = ((mid - a) * mid + 1) * mid - 1;
        (v < 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

AlgNum random_small(FamilyParam p, std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> c(lo, hi);
    return AlgNum(p, c(rng), c(rng), c(rng));
}

}  // namespace

TEST_CASE("reduce folds high powers") {
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        CHECK(reduce({0, 0, 0, 1}, p) == AlgNum(p, 1, -1, a));
        CHECK(reduce({}, p) == AlgNum::zero(p));
        CHECK(reduce({-1, 1, -a, 1}, p).is_zero());
    }
    const FamilyParam p3(3);
    CHECK(reduce({0, 0, 0, 0, 1}, p3) == AlgNum(p3, 3, -2, 8));
}

TEST_CASE("alpha_power matches the companion matrix") {
    for (int a = 2; a <= 8; ++a) {
        const FamilyParam p(a);
        for (int n = -12; n <= 15; ++n) {
            const auto want = matrix_power_oracle(a, n);
            const AlgNum got = alpha_power(n, p);
            CHECK(got == AlgNum(p, static_cast<long>(want[0]), static_cast<long>(want[1]), static_cast<long>(want[2])));
        }
    }
    CHECK(alpha_power(0, FamilyParam(5)) == AlgNum::one(FamilyParam(5)));
    CHECK(alpha_power(-1, FamilyParam(4)) == AlgNum(FamilyParam(4), 1, -4, 1));
}

TEST_CASE("ring operations") {
    const FamilyParam p(3);
    const AlgNum x(p, 0, 1, 0), x2(p, 0, 0, 1);
    CHECK(x * x == x2);
    CHECK(x2 * x == AlgNum(p, 1, -1, 3));
    CHECK((AlgNum(p, 1) + AlgNum(p, -1)).is_zero());
    CHECK(-AlgNum(p, 1, 2, 3) == AlgNum(p, -1, -2, -3));
    CHECK(AlgNum(p, 1, 2, 3) - AlgNum(p, 1, 2, 3) == AlgNum::zero(p));
    CHECK(3 * AlgNum(p, 1, -1, 2) == AlgNum(p, 3, -3, 6));
    CHECK_THROWS_AS(AlgNum(p, 1) + AlgNum(FamilyParam(4), 1), std::invalid_argument);
    CHECK_THROWS_AS(FamilyParam(1), std::invalid_argument);
}

TEST_CASE("mul_alpha_inv") {
    for (int a = 2; a <= 6; ++a) {
        const FamilyParam p(a);
        CHECK(mul_alpha_inv(AlgNum::alpha(p)) == AlgNum::one(p));
        CHECK(mul_alpha_inv(AlgNum::one(p)) == AlgNum(p, 1, -a, 1));
        CHECK(mul_alpha_inv(AlgNum::one(p)) * AlgNum::alpha(p) == AlgNum::one(p));
        CHECK(mul_alpha_inv(AlgNum(p, 0, 0, 1)) == AlgNum::alpha(p));
    }
}

TEST_CASE("property: multiplying by alpha and dividing back is exact") {
    std::mt19937_64 rng(11);
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        for (int i = 0; i < 200; ++i) {
            const AlgNum x = random_small(p, rng, -1000, 1000);
            CHECK(mul_alpha_inv(x * AlgNum::alpha(p)) == x);
            CHECK(x.mul_alpha().mul_alpha_inv() == x);
            CHECK(x.mul_alpha() == x * AlgNum::alpha(p));
        }
    }
}

TEST_CASE("property: ring laws on random elements") {
    std::mt19937_64 rng(12);
    const FamilyParam p(4);
    for (int i = 0; i < 200; ++i) {
        const AlgNum x = random_small(p, rng, -50, 50), y = random_small(p, rng, -50, 50),
                     z = random_small(p, rng, -50, 50);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
    }
}

TEST_CASE("printing") {
    const FamilyParam p(3);
    CHECK(AlgNum(p, 1, -2, 3).poly() == "1 - 2α + 3α²");
    CHECK(AlgNum(p, 0, -1, 0).poly() == "-α");
    CHECK(AlgNum::zero(p).poly() == "0");
    CHECK(AlgNum(p, -1, 1, -1).triple() == "(-1, 1, -1)");
}

TEST_CASE("roots agree with an independent bisection") {
    for (int a = 2; a <= 10; ++a) {
        const Embedding e = roots(FamilyParam(a));
        const long double beta = bisect_beta(a);
        CHECK(e.err <= 1e-14);
        CHECK(std::fabs(e.beta - static_cast<double>(beta)) <= 1e-14);
        CHECK(e.beta > a - 1);
        CHECK(e.beta < a);
        CHECK(e.alpha.imag() > 0);
        CHECK(std::fabs(e.abs_alpha() - 1 / std::sqrt(e.beta)) <= 1e-14);
        CHECK(std::fabs(e.beta * std::norm(e.alpha) - 1) <= 10 * e.err);
        const std::complex<long double> al(e.alpha.real(), e.alpha.imag());
        CHECK(std::abs(((al - static_cast<long double>(a)) * al + 1.0L) * al - 1.0L) < 1e-13L);
    }
    CHECK(roots(FamilyParam(3)).beta == doctest::Approx(2.769292).epsilon(1e-6));
    CHECK(roots(FamilyParam(3)).abs_alpha() == doctest::Approx(1 / std::sqrt(2.769292)).epsilon(1e-6));
    CHECK(roots(FamilyParam(2)).beta == doctest::Approx(1.754878).epsilon(1e-6));
}

TEST_CASE("roots reports an unreachable target") {
    try {
        roots(FamilyParam(3), 1e-40);
        FAIL("expected PrecisionError");
    } catch (const PrecisionError& err) {
        CHECK(err.achieved() > 1e-40);
        CHECK(err.achieved() < 1e-14);
    }
}

TEST_CASE("embed") {
    const FamilyParam p(3);
    const Embedding e = roots(p);
    CHECK(embed(AlgNum::one(p), e) == std::complex<double>(1, 0));
    CHECK(std::abs(embed(AlgNum::alpha(p), e) - e.alpha) <= 1e-15);
    const std::complex<double> v = e.alpha - e.alpha * e.alpha - 1.0;
    CHECK(std::abs(embed(AlgNum(p, -1, 1, -1), e) - v) <= 1e-14);
    CHECK(real_embed(AlgNum::alpha(p), e) == doctest::Approx(e.beta));
}

TEST_CASE("property: embed is a ring homomorphism within tolerance") {
    std::mt19937_64 rng(13);
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        const Embedding e = roots(p);
        for (int i = 0; i < 100; ++i) {
            const AlgNum x = random_small(p, rng, -1, 1), y = random_small(p, rng, -1, 1);
            const double tol = 10 * e.err * (x.l1_norm() + y.l1_norm()) + 1e-300;
            CHECK(std::abs(embed(x * y, e) - embed(x, e) * embed(y, e)) <= tol + 4e-16 * std::abs(embed(x * y, e)));
            CHECK(std::abs(embed(x + y, e) - embed(x, e) - embed(y, e)) <= tol + 4e-16);
        }
    }
}

TEST_CASE("embed rejects coefficients beyond its precision") {
    const FamilyParam p(3);
    const Embedding e = roots(p);
    mpz_class huge = 1;
    huge <<= 2000;
    CHECK_THROWS_AS(embed(AlgNum(p, huge), e), std::overflow_error);
    CHECK(embed_error(AlgNum(p, 1, 1, 1), e) < 1e-14);
}
