#include "rauzy/boundary_geometry.hpp"

#include <doctest.h>

#include <random>

using namespace rauzy;

namespace {

// The g maps written straight from their formulas in complex arithmetic.
std::complex<double> g_numeric(int i, std::complex<double> z, const Embedding& e) {
    const auto al = e.alpha, al3 = al * al * al;
    const int a = e.param.a();
    if (i % 2 == 1) {
        const int k = (i - 1) / 2;
        return -1.0 - double(k) * al3 + al3 * z;
    }
    const int k = i / 2;
    return al - 1.0 + double(a - 1 - k) * al3 + al * al * z;
}

PeriodicCode tail_to_minus_one(int a) { return {{}, {0, 2 * a - 2}}; }
PeriodicCode tail_to_v(int a) { return {{}, {2 * a - 2, 0}}; }

}  // namespace

TEST_CASE("g and f map coefficients") {
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        CHECK(g_map(1, p) == AffineMap{AlgNum(p, -1), AlgNum(p, 1, -1, a)});
        CHECK(g_map(2 * a - 2, p) == AffineMap{AlgNum(p, -1, 1, 0), AlgNum(p, 0, 0, 1)});
        CHECK(f_map(3, p) == AffineMap{AlgNum(p, 1, -1, 0), AlgNum(p, 1)});
        CHECK(f_map(1, p) == AffineMap{AlgNum(p, 0, -a, 1), AlgNum(p, 1, -a, 1)});
        CHECK(f_map(2, p) == AffineMap{AlgNum(p, 0, -(a - 1), 0), AlgNum(p, 1, -a, 1)});
        CHECK_THROWS_AS(g_map(-1, p), std::out_of_range);
        CHECK_THROWS_AS(g_map(2 * a - 1, p), std::out_of_range);
        CHECK_THROWS_AS(f_map(0, p), std::out_of_range);
        CHECK_THROWS_AS(f_map(4, p), std::out_of_range);
    }
    const FamilyParam p3(3);
    CHECK(g_map(0, p3) == AffineMap{AlgNum(p3, 1, -1, 6), AlgNum(p3, 0, 0, 1)});
}

TEST_CASE("g maps agree with their complex formulas and contract") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int a = 2; a <= 8; ++a) {
        const FamilyParam p(a);
        const Embedding e = roots(p);
        for (int i = 0; i <= 2 * a - 2; ++i) {
            const AffineMap g = g_map(i, p);
            CHECK(std::abs(embed(g.s, e)) < 1);
            for (int s = 0; s < 10; ++s) {
                const AlgNum z(p, c(rng), c(rng), c(rng));
                CHECK(std::abs(embed(g(z), e) - g_numeric(i, embed(z, e), e)) < 1e-12);
            }
        }
        CHECK(std::abs(embed(f_map(1, p).s, e)) > 1);
    }
}

TEST_CASE("compose") {
    const FamilyParam p(4);
    CHECK(compose(std::span<const AffineMap>{}, p) == identity_map(p));
    const AffineMap g0 = g_map(0, p), g6 = g_map(6, p);
    const AlgNum z = AlgNum(p, 2, -1, 3);
    CHECK(compose(g0, g6)(z) == g0(g6(z)));
    const std::vector<AffineMap> seq{g_map(3, p), g_map(5, p), g_map(2, p)};
    CHECK(compose(seq, p)(z) == seq[0](seq[1](seq[2](z))));
}

TEST_CASE("powers of g_0 ∘ g_{2(a-1)} follow the closed form") {
    for (int a = 2; a <= 6; ++a) {
        const FamilyParam p(a);
        const AffineMap step = compose(g_map(0, p), g_map(2 * a - 2, p));
        const AlgNum z = AlgNum(p, 1, 2, -1);
        AffineMap acc = identity_map(p);
        for (int n = 1; n <= 8; ++n) {
            acc = compose(acc, step);
            AlgNum want = alpha_power(4 * n, p) * z;
            for (int i = 1; i <= n; ++i)
                want += (a - 1) * (alpha_power(4 * i - 2, p) + alpha_power(4 * i - 1, p));
            CHECK(acc(z) == want);
        }
    }
}

TEST_CASE("property: scale of a length-n composition") {
    std::mt19937_64 rng(42);
    const FamilyParam p(3);
    const Embedding e = roots(p);
    for (int i = 0; i < 100; ++i) {
        const auto code = random_gcode(12, rng, p);
        std::vector<AffineMap> maps;
        for (int b : code) maps.push_back(g_map(b, p));
        CHECK(std::abs(embed(compose(maps, p).s, e)) <= std::pow(e.abs_alpha(), 24) * (1 + 1e-12));
    }
}

TEST_CASE("key points") {
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        const KeyPoints kp = key_points(p);
        CHECK(kp.u == AlgNum(p, -1));
        CHECK(kp.v == AlgNum(p, -1, 1, -1));
        CHECK(kp.v == -(a - 1) * AlgNum::alpha(p) - alpha_power(-1, p));
        CHECK(kp.w == AlgNum(p, -2, 1, -a));
        CHECK(g_map(1, p)(kp.u) == kp.w);
        CHECK(g_map(2, p)(kp.v) == kp.w);
    }
    const FamilyParam p3(3);
    CHECK(key_points(p3).even_glue[0] == AlgNum(p3, -7, 4, -17));
    CHECK(g_map(0, p3)(key_points(p3).w) == AlgNum(p3, -7, 4, -17));
    CHECK(g_map(1, p3)(key_points(p3).v) == AlgNum(p3, -7, 4, -17));
}

TEST_CASE("gluing identities, exact and numeric") {
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        const Embedding e = roots(p);
        const KeyPoints kp = key_points(p);
        REQUIRE(kp.even_glue.size() == static_cast<std::size_t>(a - 1));
        for (int k = 0; k <= a - 2; ++k) {
            const AlgNum even = AlgNum(p, -1) - alpha_power(2, p) - k * alpha_power(3, p) - (a - 1) * alpha_power(4, p);
            const AlgNum odd = AlgNum(p, -1) - (k + 1) * alpha_power(3, p);
            CHECK(g_map(2 * k, p)(kp.w) == even);
            CHECK(g_map(2 * k + 1, p)(kp.v) == even);
            CHECK(g_map(2 * k + 1, p)(kp.u) == odd);
            CHECK(g_map(2 * k + 2, p)(kp.v) == odd);
            CHECK(kp.even_glue[k] == even);
            CHECK(kp.odd_glue[k] == odd);
            const auto ae = std::pow(e.alpha, 2), a3 = std::pow(e.alpha, 3), a4 = std::pow(e.alpha, 4);
            CHECK(std::abs(g_numeric(2 * k, embed(kp.w, e), e) - (-1.0 - ae - double(k) * a3 - double(a - 1) * a4)) < 1e-12);
        }
    }
}

TEST_CASE("corner identities") {
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        const KeyPoints kp = key_points(p);
        const AlgNum ma = -AlgNum::alpha(p), ma2 = AlgNum(p, 0, 0, -1);
        CHECK(f_map(1, p)(kp.u) == kp.u);
        CHECK(f_map(2, p)(kp.u) == kp.v);
        CHECK(f_map(3, p)(kp.u) == ma);
        CHECK(f_map(1, p)(kp.v) == ma);
        CHECK(f_map(2, p)(kp.v) == ma2);
        CHECK(f_map(3, p)(kp.v) == ma2);
    }
}

TEST_CASE("follow rule") {
    const FamilyParam p(3);
    CHECK_FALSE(may_follow(0, 0, p));
    CHECK_FALSE(may_follow(2, 1, p));
    CHECK(may_follow(4, 0, p));
    CHECK(may_follow(1, 0, p));
    CHECK(may_follow(0, 2, p));
    const std::vector<int> good{0, 4, 0, 4}, bad{2, 0}, range{5};
    CHECK_NOTHROW(check_gcode(good, p));
    CHECK_THROWS_AS(check_gcode(bad, p), std::invalid_argument);
    CHECK_THROWS_AS(check_gcode(range, p), std::invalid_argument);
    std::mt19937_64 rng(43);
    for (int a = 3; a <= 6; ++a)
        for (int i = 0; i < 50; ++i) CHECK_NOTHROW(check_gcode(random_gcode(40, rng, FamilyParam(a)), FamilyParam(a)));
}

TEST_CASE("eval_gcode limits") {
    for (int a = 2; a <= 8; ++a) {
        const FamilyParam p(a);
        const Embedding e = roots(p);
        const double C = diameter_bound(e);
        const KeyPoints kp = key_points(p);
        const auto c1 = tail_to_minus_one(a).take(40);
        const auto c2 = tail_to_v(a).take(40);
        std::vector<int> c3{2};
        c3.insert(c3.end(), c2.begin(), c2.end() - 1);
        for (std::size_t n : {10u, 20u, 40u}) {
            const GCodeEval x = eval_gcode(c1, n, kp.w, e, C);
            CHECK(std::abs(embed(x.exact - kp.u, e)) <= x.trunc_bound);
            const GCodeEval y = eval_gcode(c2, n, kp.w, e, C);
            CHECK(std::abs(embed(y.exact - kp.v, e)) <= y.trunc_bound);
            const GCodeEval z = eval_gcode(c3, n, kp.w, e, C);
            CHECK(std::abs(embed(z.exact - kp.w, e)) <= z.trunc_bound);
        }
        CHECK_THROWS(eval_gcode(c1, 41, kp.w, e, C));
    }
}

TEST_CASE("property: self-similarity and Cauchy bound") {
    std::mt19937_64 rng(44);
    for (int a = 3; a <= 5; ++a) {
        const FamilyParam p(a);
        const Embedding e = roots(p);
        const double C = diameter_bound(e);
        const KeyPoints kp = key_points(p);
        const NumericGMaps num(e);
        for (int i = 0; i < 100; ++i) {
            const auto code = random_gcode(25, rng, p);
            const std::span<const int> rest(code.begin() + 1, code.end());
            const GCodeEval whole = eval_gcode(code, 21, kp.w, e, C);
            const GCodeEval tail = eval_gcode(rest, 20, kp.w, e, C);
            CHECK(whole.exact == g_map(code[0], p)(tail.exact));
            for (std::size_t n = 1; n < 20; ++n) {
                const auto d = eval_gcode(code, n + 1, kp.w, e, C).point - eval_gcode(code, n, kp.w, e, C).point;
                CHECK(std::abs(d) <= std::pow(e.abs_alpha(), 2.0 * n) * C);
            }
            CHECK(std::abs(num.eval(std::span<const int>(code.data(), 21)) - whole.point) < 1e-12);
        }
    }
}

TEST_CASE("piece disjointness witnesses") {
    const Embedding e = roots(FamilyParam(3));
    for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 2}, {0, 4}, {2, 4}, {1, 3}}) {
        const DisjointnessReport r = piece_disjointness_witness(i, j, 12, 1000, 7, e);
        CHECK(r.min_distance > 0.01);
        CHECK(r.min_distance > 10 * r.trunc_bound);
    }
    const KeyPoints kp = key_points(FamilyParam(3));
    const auto glue = embed(kp.even_glue[0], e);
    const DisjointnessReport coarse = piece_disjointness_witness(0, 1, 12, 1000, 7, e);
    const DisjointnessReport fine = piece_disjointness_witness(0, 1, 12, 20000, 7, e);
    CHECK(fine.min_distance <= coarse.min_distance);
    CHECK(fine.min_distance < 0.01);
    CHECK(std::abs(fine.closest_a - glue) < 0.1);
    CHECK_THROWS_AS(piece_disjointness_witness(2, 2, 12, 10, 7, e), std::invalid_argument);
    CHECK_THROWS_AS(piece_disjointness_witness(0, 5, 12, 10, 7, e), std::invalid_argument);
}
