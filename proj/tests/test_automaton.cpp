#include "rauzy/boundary_automaton.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

using namespace rauzy;

namespace {

struct Built {
    Embedding e;
    BoundaryAutomaton aut;
};

const Built& built(int a) {
    static std::vector<std::unique_ptr<Built>> cache(11);
    if (!cache[a]) {
        const FamilyParam p(a);
        Embedding e = roots(p);
        cache[a] = std::make_unique<Built>(Built{e, build_automaton(p, e)});
    }
    return *cache[a];
}

std::set<std::string> triples(const std::vector<AlgNum>& xs) {
    std::set<std::string> out;
    for (const auto& x : xs) out.insert(x.triple());
    return out;
}

PeriodicWord random_word(std::mt19937_64& rng, int a, int low) {
    std::uniform_int_distribution<int> dig(0, a - 1), len(0, 5), plen(1, 4);
    for (;;) {
        PeriodicWord w{low, {}, {}};
        w.preperiod.resize(len(rng));
        w.period.resize(plen(rng));
        for (int& d : w.preperiod) d = rng() % 2 ? a - 1 : dig(rng);
        for (int& d : w.period) d = rng() % 2 ? 0 : dig(rng);
        if (std::all_of(w.period.begin(), w.period.end(), [](int d) { return d == 0; }) &&
            std::all_of(w.preperiod.begin(), w.preperiod.end(), [](int d) { return d == 0; }))
            continue;
        if (is_admissible(w, FamilyParam(a))) return w;
    }
}

}  // namespace

TEST_CASE("state set is exactly S") {
    for (int a = 2; a <= 10; ++a) {
        const auto t0 = std::chrono::steady_clock::now();
        const FamilyParam p(a);
        const Embedding e = roots(p);
        const BoundaryAutomaton aut = build_automaton(p, e);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CHECK(aut.states().size() == 15);
        CHECK(triples(aut.states()) == triples(expected_states(p)));
        CHECK(secs < 1.0);
    }
}

TEST_CASE("S written out for a = 3") {
    const FamilyParam p(3);
    const std::set<std::string> want{
        "(0, 0, 0)",   "(0, 1, 0)",   "(0, -1, 0)",  "(0, 0, 1)",  "(0, 0, -1)",
        "(0, 1, -1)",  "(0, -1, 1)",  "(1, 0, 2)",   "(-1, 0, -2)", "(1, 0, 1)",
        "(-1, 0, -1)", "(1, -1, 2)",  "(-1, 1, -2)", "(1, -2, 3)", "(-1, 2, -3)"};
    CHECK(triples(expected_states(p)) == want);
}

TEST_CASE("every transition satisfies the update rule exactly") {
    for (int a = 2; a <= 10; ++a) {
        const auto& aut = built(a).aut;
        const FamilyParam p(a);
        std::set<std::string> states = triples(aut.states());
        for (const auto& edge : aut.edges()) {
            const AlgNum& from = aut.states()[edge.from];
            const AlgNum& to = aut.states()[edge.to];
            CHECK(to == from.mul_alpha_inv() + AlgNum(p, 0, 0, edge.d));
            CHECK(!edge.labels.empty());
            for (auto [x, y] : edge.labels) {
                CHECK(x - y == edge.d);
                CHECK(aut.step(edge.from, x, y) == edge.to);
            }
        }
    }
}

TEST_CASE("S is symmetric under negation") {
    for (int a = 2; a <= 10; ++a) {
        const auto& aut = built(a).aut;
        for (const auto& x : aut.states()) CHECK(aut.index_of(-x).has_value());
        std::set<std::tuple<std::string, int, std::string>> edges;
        for (const auto& ed : aut.edges())
            edges.insert({aut.states()[ed.from].triple(), ed.d, aut.states()[ed.to].triple()});
        for (const auto& ed : aut.edges())
            CHECK(edges.count({(-aut.states()[ed.from]).triple(), -ed.d, (-aut.states()[ed.to]).triple()}) == 1);
    }
}

TEST_CASE("states stay inside the disk bound") {
    for (int a = 2; a <= 10; ++a) {
        const auto& b = built(a);
        const double r = b.e.abs_alpha();
        const double bound = (a - 1) * r * r * r / (1 - r) + 1e-9;
        for (const auto& x : b.aut.states()) CHECK(std::abs(embed(x, b.e)) <= bound);
    }
}

TEST_CASE("sample transitions") {
    const FamilyParam p(3);
    const auto& aut = built(3).aut;
    const std::size_t a2 = *aut.index_of(AlgNum(p, 0, 0, 1));
    CHECK(aut.step(a2, 0, 0) == aut.index_of(AlgNum(p, 0, 1, 0)));
    CHECK(aut.step(a2, 0, 1) == aut.index_of(AlgNum(p, 0, 1, -1)));
    const std::size_t zero = aut.initial();
    CHECK(aut.states()[zero].is_zero());
    for (int t = 0; t < 3; ++t) CHECK(aut.step(zero, t, t) == zero);
    CHECK_THROWS_AS(aut.step(zero, 3, 0), std::out_of_range);
    CHECK_THROWS_AS(aut.step(zero, 0, -1), std::out_of_range);
}

TEST_CASE("run_prefix examples") {
    const FamilyParam p(3);
    const auto& aut = built(3).aut;
    const RunResult diag = aut.run_prefix({{2, 2}, {0, 0}, {1, 1}, {0, 0}});
    REQUIRE(diag.accepted());
    CHECK(*diag.state == aut.initial());

    const RunResult path = aut.run_prefix({{1, 0}, {0, 0}, {2, 0}, {1, 0}, {0, 0}});
    REQUIRE(path.accepted());
    CHECK(aut.states()[*path.state] == AlgNum(p, 0, -1, 1));
    const auto out = aut.outgoing(*path.state);
    REQUIRE(out.size() == 1);
    CHECK(out[0].first == DigitPair{0, 2});

    const RunResult rej = aut.run_prefix({{1, 0}, {0, 1}, {2, 2}});
    CHECK_FALSE(rej.accepted());
    REQUIRE(rej.rejected_at.has_value());
    CHECK(*rej.rejected_at == 2);
    CHECK(aut.run_prefix({}).state == aut.initial());
}

TEST_CASE("DOT and JSON output") {
    const auto& aut = built(3).aut;
    const std::string dot = aut.to_dot();
    CHECK(dot == built(3).aut.to_dot());
    CHECK(dot == build_automaton(FamilyParam(3), roots(FamilyParam(3))).to_dot());
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("\"0\" -> \"0\"") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 15);
    const std::string js = aut.to_json();
    CHECK(js.find("\"states\"") != std::string::npos);
    CHECK(js.find("\"transitions\"") != std::string::npos);
}

TEST_CASE("property: verify_equality agrees with exact periodic values") {
    std::mt19937_64 rng(31);
    int equal_seen = 0;
    for (int a = 2; a <= 5; ++a) {
        const FamilyParam p(a);
        const auto& aut = built(a).aut;
        for (int i = 0; i < 400; ++i) {
            const PeriodicWord x = random_word(rng, a, 0);
            PeriodicWord y = random_word(rng, a, 0);
            if (i % 4 == 0) y = x;
            const bool want = same_value(periodic_value(x, p), periodic_value(y, p));
            CHECK(verify_equality(aut, x, y) == want);
            equal_seen += want;
        }
    }
    CHECK(equal_seen > 0);
}

TEST_CASE("verify_equality on distinct expansions of the same point") {
    for (int a = 2; a <= 10; ++a) {
        const FamilyParam p(a);
        const auto& aut = built(a).aut;
        const int t = a - 1;
        const PeriodicWord v1{2, {t, 0, 0}, {t, t, 0, 0}};
        const PeriodicWord v2{-3, {1, 0, t, t - 1, 0, 0, 0}, {t, t, 0, 0}};
        CHECK(same_value(periodic_value(v1, p), periodic_value(v2, p)));
        CHECK(verify_equality(aut, v2, v1));
        CHECK(verify_equality(aut, v1, v2));
        const PeriodicWord x{2, {}, {t, t, 0, 0}}, y{2, {}, {0, 0, t, t}};
        CHECK_FALSE(verify_equality(aut, x, y));
        CHECK(verify_equality(aut, x, PeriodicWord{2, {t, t, 0, 0}, {t, t, 0, 0}}));
    }
}

TEST_CASE("verify_equality rejects bad input") {
    const auto& aut = built(3).aut;
    CHECK_THROWS_AS(verify_equality(aut, PeriodicWord{0, {1}, {}}, PeriodicWord{0, {}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(verify_equality(aut, PeriodicWord{0, {}, {2, 2, 1}}, PeriodicWord{0, {}, {1}}),
                    std::invalid_argument);
}
