#include "rauzy/verification.hpp"

#include "rauzy/boundary_automaton.hpp"
#include "rauzy/boundary_geometry.hpp"
#include "rauzy/fractal_render.hpp"
#include "rauzy/numeration.hpp"
#include "rauzy/unit_interval_codec.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace rauzy {

bool VerifyReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["a"] = a;
    j["level"] = level == VerifyLevel::Quick ? "quick" : "full";
    j["passed"] = all_passed();
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}});
    }
    j["checks"] = std::move(list);
    return j.dump(2) + "\n";
}

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

mpq_class random_unit_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> pick(0, 999'999'999'999L);
    mpq_class t(pick(rng), 1'000'000'000'000L);
    t.canonicalize();
    return t;
}

Outcome check_roots(const Embedding& e) {
    const int a = e.param.a();
    const double mod2 = std::norm(e.alpha);
    const bool bracket = e.beta > a - 1 && e.beta < a;
    const double prod = std::fabs(e.beta * mod2 - 1.0);
    return {bracket && prod <= 10 * e.err + 1e-15 && e.alpha.imag() > 0,
            "beta=" + fmt(e.beta) + " |alpha|=" + fmt(std::sqrt(mod2)) + " |beta|alpha|^2-1|=" + fmt(prod)};
}

Outcome check_automaton(const Embedding& e) {
    const BoundaryAutomaton aut = build_automaton(e.param, e);
    const bool same = aut.states() == expected_states(e.param);
    // negating states and swapping labels must map transitions onto transitions
    bool symmetric = true;
    for (const auto& edge : aut.edges()) {
        const auto from = aut.index_of(-aut.states()[edge.from]);
        const auto to = aut.index_of(-aut.states()[edge.to]);
        if (!from || !to) {
            symmetric = false;
            break;
        }
        for (auto [x, y] : edge.labels) symmetric = symmetric && aut.step(*from, y, x) == to;
    }
    return {same && symmetric, "states=" + std::to_string(aut.states().size()) + " edges=" +
                                   std::to_string(aut.edges().size()) + " matches S: " + (same ? "true" : "false") +
                                   " symmetric: " + (symmetric ? "true" : "false")};
}

Outcome check_corners(FamilyParam p) {
    const KeyPoints kp = key_points(p);
    const AffineMap f1 = f_map(1, p), f2 = f_map(2, p), f3 = f_map(3, p);
    const AlgNum minus_alpha(p, 0, -1), minus_alpha2(p, 0, 0, -1);
    const bool ok = f1(kp.u) == kp.u && f2(kp.u) == kp.v && f3(kp.u) == minus_alpha && f1(kp.v) == minus_alpha &&
                    f2(kp.v) == minus_alpha2 && f3(kp.v) == minus_alpha2;
    return {ok, "f1(u)=u f2(u)=v f3(u)=-α f1(v)=-α f2(v)=-α² f3(v)=-α²"};
}

Outcome check_gluing(FamilyParam p) {
    const KeyPoints kp = key_points(p);
    return {true, std::to_string(kp.even_glue.size() + kp.odd_glue.size()) + " gluing points, g0(w)=" +
                      kp.even_glue.front().triple()};
}

Outcome check_singletons(const Embedding& e) {
    const FamilyParam p = e.param;
    const int t = p.a() - 1;
    const AlgNum u = AlgNum::alpha(p) - AlgNum::one(p);
    auto value_is = [&](const PeriodicWord& w, const AlgNum& x) {
        return is_admissible(w, p) && same_value(periodic_value(w, p), {x, AlgNum::one(p)});
    };
    const PeriodicWord minus_one{2, {}, {t, t, 0, 0}};
    const PeriodicWord minus_alpha2{2, {}, {0, 0, t, t}};
    const PeriodicWord minus_alpha{2, {}, {0, t, t, 0}};
    const PeriodicWord v_word{2, {t, 0, 0}, {t, t, 0, 0}};
    const PeriodicWord v_shifted{-3, {1, 0, t, t - 1, 0, 0, 0}, {t, t, 0, 0}};

    const AlgNum v = key_points(p).v;
    bool ok = value_is(minus_one, AlgNum(p, -1)) && value_is(minus_alpha2, AlgNum(p, 0, 0, -1));
    ok = ok && (AlgNum(p, -1) - AlgNum(p, 0, 0, -1)) == (AlgNum::one(p) + AlgNum::alpha(p)) * u;
    ok = ok && value_is(minus_alpha, AlgNum(p, 0, -1)) && value_is(v_word, v);
    ok = ok && (AlgNum(p, 0, -1) - v) == (AlgNum::alpha(p) - AlgNum::one(p)) * u;
    const BoundaryAutomaton aut = build_automaton(p, e);
    const bool pair = verify_equality(aut, v_shifted, v_word);
    const bool distinct = !verify_equality(aut, minus_one, minus_alpha2);
    return {ok && pair && distinct, std::string("-1 and -α witnesses exact; v pair accepted: ") +
                                        (pair ? "true" : "false")};
}

Outcome check_endpoints(const Parametrization& ctx) {
    const ParamPoint f0 = boundary_param_f(0, 40, ctx);
    const ParamPoint f1 = boundary_param_f(1, 40, ctx);
    const double d0 = std::abs(embed(f0.exact - ctx.keys.u, ctx.emb));
    const double d1 = std::abs(embed(f1.exact - ctx.keys.v, ctx.emb));
    return {d0 <= f0.bound && d1 <= f1.bound && f0.bound < 1e-9,
            "|f(0)+1|=" + fmt(d0) + " |f(1)-v|=" + fmt(d1) + " bound=" + fmt(f0.bound)};
}

Outcome check_tails(FamilyParam p) {
    const int r = p.r();
    for (int kase = 1; kase <= 4; ++kase) {
        for (int n = 1; n <= 6; ++n) {
            for (int m = 0; m <= 6; ++m) {
                auto [lhs, rhs] = tail_identity(kase, n, m, r);
                if (series_value(lhs, r) != unit_weight(n, m, r) || series_value(rhs, r) != unit_weight(n, m, r)) {
                    return {false, "case " + std::to_string(kase) + " fails at (" + std::to_string(n) + "," +
                                       std::to_string(m) + ")"};
                }
            }
        }
    }
    return {true, "4 cases, (n,m) in [1,6]x[0,6]"};
}

Outcome check_identified_pairs(const Parametrization& ctx, int count, std::mt19937_64& rng) {
    const FamilyParam p = ctx.emb.param;
    constexpr int depth = 40;
    std::uniform_int_distribution<int> klen(1, 12);
    int made = 0, tries = 0;
    double worst = 0;
    std::set<int> cases;
    while (made < count && tries < 100 * count) {
        ++tries;
        const int k = klen(rng);
        const auto prefix = expand(random_unit_rational(rng), p, k).digits.digits();
        auto pair = identified_pair(p, prefix);
        if (!pair) continue;
        if (periodic_value(pair->lower, p) != periodic_value(pair->upper, p)) {
            return {false, "identified pair with different values at prefix length " + std::to_string(k)};
        }
        const ParamPoint x = param_from_digits(pair->lower.take(depth), ctx);
        const ParamPoint y = param_from_digits(pair->upper.take(depth), ctx);
        const double gap = std::abs(embed(x.exact - y.exact, ctx.emb));
        worst = std::max(worst, gap / (2 * x.bound));
        cases.insert(pair->kase);
        ++made;
    }
    return {made == count && worst <= 1.0 && cases.size() == 4,
            std::to_string(made) + " pairs, cases seen " + std::to_string(cases.size()) +
                ", worst gap/(2 bound)=" + fmt(worst)};
}

Outcome check_round_trip(FamilyParam p, int count, std::mt19937_64& rng) {
    constexpr int K = 30;
    for (int i = 0; i < count; ++i) {
        const mpq_class t = random_unit_rational(rng);
        const MixedExpansion ex = expand(t, p, K);
        const MixedEntry& last = ex.digits.entries().back();
        if (ex.remainder < 0 || ex.remainder >= unit_weight(last.n, last.m, p.r()) ||
            ex.digits.value() + ex.remainder != t) {
            return {false, "round trip fails for t=" + t.get_str()};
        }
    }
    return {true, std::to_string(count) + " random t at depth 30"};
}

Outcome check_psi_exhaustive(FamilyParam p, int max_len) {
    const int r = p.r();
    long words = 0;
    std::vector<int> digits;
    std::function<void(Increment)> rec = [&](Increment inc) {
        if (!digits.empty()) {
            psi(digits, p);
            ++words;
        }
        if (static_cast<int>(digits.size()) == max_len) return;
        const Increment next =
            digits.empty() ? Increment::N : next_increment(static_cast<int>(digits.size()), digits.back(), inc, r);
        for (int d = 0; d <= max_digit(next, r); ++d) {
            digits.push_back(d);
            rec(next);
            digits.pop_back();
        }
    };
    rec(Increment::N);
    return {true, std::to_string(words) + " digit prefixes up to length " + std::to_string(max_len)};
}

Outcome check_enumeration(FamilyParam p, int max_n) {
    for (int n = 1; n <= max_n; ++n) {
        std::set<std::vector<int>> streamed;
        AdmissibleStream s(p, n, 2);
        while (auto w = s.next()) streamed.insert(w->digits);
        std::set<std::vector<int>> filtered;
        std::vector<int> digits(n, 0);
        for (;;) {
            if (is_admissible(DigitWord{2, digits}, p)) filtered.insert(digits);
            int j = n - 1;
            while (j >= 0 && digits[j] == p.a() - 1) digits[j--] = 0;
            if (j < 0) break;
            ++digits[j];
        }
        if (streamed != filtered || count_admissible(p, n) != filtered.size()) {
            return {false, "mismatch at length " + std::to_string(n)};
        }
    }
    return {true, "lengths 1.." + std::to_string(max_n)};
}

Outcome check_one(const Embedding& e) {
    const int a = e.param.a();
    const OneExpansion d = d_one(a, -1);
    const std::vector<int> expect{a - 1, a - 1, 0, 1};
    const BetaExpansion g = greedy_expand(AlgNum::one(e.param), e, 12);
    bool ok = d.kind == OneExpansionCase::MinusOne && d.preperiod == expect && d.period.empty();
    for (int i = 0; i < 12; ++i) ok = ok && g.digits[i] == (i < 4 ? expect[i] : 0);
    return {ok, "d(1,beta) = .(a-1)(a-1)01 from both the classifier and the greedy digits"};
}

Outcome check_area(const Embedding& e, unsigned threads) {
    const Lattice L = lattice(e);
    CloudOptions opt;
    opt.threads = threads;
    // deep enough that the 2e6-point draw is a genuine subsample of the words
    int depth = 18;
    while (count_admissible(e.param, depth) < 10 * opt.max_points) ++depth;
    const PointCloud cloud = points_of_R(e, depth, opt);
    const double h = std::sqrt(L.covolume) / 400.0;
    const double area = area_estimate(cloud.points, h);
    const double ratio = area / L.covolume;
    return {std::fabs(ratio - 1.0) <= 0.02,
            "area/covolume=" + fmt(ratio) + " covolume=" + fmt(L.covolume) + " depth=" + std::to_string(depth)};
}

}  // namespace

VerifyReport run_verification(FamilyParam p, VerifyLevel level, std::uint64_t seed, unsigned threads) {
    VerifyReport rep{p.a(), level, {}};
    const bool full = level == VerifyLevel::Full;
    std::mt19937_64 rng(seed);

    auto run = [&](const std::string& name, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = body();
        } catch (const std::exception& err) {
            out = {false, std::string("exception: ") + err.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rep.checks.push_back({name, out.ok, out.detail, secs});
    };

    const Embedding e = roots(p);
    run("roots_certified", [&] { return check_roots(e); });
    run("automaton_state_set", [&] { return check_automaton(e); });
    // the brute-force side visits a^n words
    int brute = 1;
    while (brute < (full ? 8 : 6) && std::pow(p.a(), brute + 1) <= 2e6) ++brute;
    run("enumeration_matches_filter", [&] { return check_enumeration(p, brute); });
    run("expansion_of_one", [&] { return check_one(e); });
    run("neighbor_singletons", [&] { return check_singletons(e); });
    run("corner_identities", [&] { return check_corners(p); });
    run("gluing_identities", [&] { return check_gluing(p); });
    if (p.a() >= 3) {
        const Parametrization ctx(e);
        run("tail_identities", [&] { return check_tails(p); });
        run("codec_round_trip", [&] { return check_round_trip(p, full ? 1000 : 100, rng); });
        run("psi_follow_rule", [&] { return check_psi_exhaustive(p, full && p.a() <= 4 ? 8 : 4); });
        run("param_endpoints", [&] { return check_endpoints(ctx); });
        run("identified_pairs_agree", [&] { return check_identified_pairs(ctx, full ? 200 : 40, rng); });
    }
    if (full) run("tiling_area", [&] { return check_area(e, threads); });
    return rep;
}

}  // namespace rauzy
