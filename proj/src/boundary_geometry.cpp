#include "rauzy/boundary_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rauzy {

AffineMap identity_map(FamilyParam p) { return {AlgNum::zero(p), AlgNum::one(p)}; }

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    return {outer.t + outer.s * inner.t, outer.s * inner.s};
}

AffineMap compose(std::span<const AffineMap> maps, FamilyParam p) {
    AffineMap acc = identity_map(p);
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) acc = compose(*it, acc);
    return acc;
}

AffineMap g_map(int i, FamilyParam p) {
    const int a = p.a();
    if (i < 0 || i > 2 * a - 2) {
        throw std::out_of_range("g index " + std::to_string(i) + " outside [0, " + std::to_string(2 * a - 2) + "]");
    }
    const AlgNum alpha3 = alpha_power(3, p);
    const int k = i / 2;
    if (i % 2 == 1) return {AlgNum(p, -1) - alpha3 * k, alpha3};
    return {AlgNum(p, -1, 1) + alpha3 * (a - 1 - k), AlgNum(p, 0, 0, 1)};
}

AffineMap f_map(int j, FamilyParam p) {
    const AlgNum inv = alpha_power(-1, p);
    switch (j) {
        case 1:
            return {inv - AlgNum::one(p), inv};
        case 2:
            return {AlgNum(p, 0, -(p.a() - 1)), inv};
        case 3:
            return {AlgNum(p, 1, -1), AlgNum::one(p)};
        default:
            throw std::out_of_range("f index must be 1, 2 or 3, got " + std::to_string(j));
    }
}

KeyPoints key_points(FamilyParam p) {
    const int a = p.a();
    KeyPoints kp{AlgNum(p, -1), AlgNum(p, 0, -(a - 1)) - alpha_power(-1, p), AlgNum(p, -1) - alpha_power(3, p), {}, {}};

    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw std::logic_error("key point identity failed: " + what);
    };
    require(kp.v == AlgNum(p, -1, 1, -1), "v = (-1, 1, -1)");
    const AffineMap top = g_map(2 * a - 2, p);
    const AffineMap g0 = g_map(0, p);
    require(compose(g0, top)(kp.u) == kp.u, "u fixed by g_0 g_{2a-2}");
    require(compose(top, g0)(kp.v) == kp.v, "v fixed by g_{2a-2} g_0");
    require(g_map(2, p)(kp.v) == kp.w, "w = g_2(v)");

    const AlgNum alpha2 = alpha_power(2, p), alpha3 = alpha_power(3, p), alpha4 = alpha_power(4, p);
    for (int k = 0; k <= a - 2; ++k) {
        const AlgNum even = AlgNum(p, -1) - alpha2 - alpha3 * k - alpha4 * (a - 1);
        require(g_map(2 * k, p)(kp.w) == even, "g_{2k}(w), k=" + std::to_string(k));
        require(g_map(2 * k + 1, p)(kp.v) == even, "g_{2k+1}(v), k=" + std::to_string(k));
        kp.even_glue.push_back(even);

        const AlgNum odd = AlgNum(p, -1) - alpha3 * (k + 1);
        require(g_map(2 * k + 1, p)(kp.u) == odd, "g_{2k+1}(u), k=" + std::to_string(k));
        require(g_map(2 * k + 2, p)(kp.v) == odd, "g_{2k+2}(v), k=" + std::to_string(k));
        kp.odd_glue.push_back(odd);
    }
    return kp;
}

bool may_follow(int b, int next, FamilyParam p) {
    return !(b % 2 == 0 && b <= 2 * p.a() - 4 && next <= 1);
}

void check_gcode(std::span<const int> code, FamilyParam p) {
    for (std::size_t j = 0; j < code.size(); ++j) {
        if (code[j] < 0 || code[j] > 2 * p.a() - 2) {
            throw std::invalid_argument("g-code digit " + std::to_string(code[j]) + " out of range at position " +
                                        std::to_string(j));
        }
        if (j + 1 < code.size() && !may_follow(code[j], code[j + 1], p)) {
            throw std::invalid_argument("g-code digit " + std::to_string(code[j + 1]) + " may not follow " +
                                        std::to_string(code[j]) + " at position " + std::to_string(j + 1));
        }
    }
}

std::vector<int> PeriodicCode::take(std::size_t n) const {
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < preperiod.size()) {
            out.push_back(preperiod[j]);
        } else {
            if (period.empty()) throw std::invalid_argument("periodic code has an empty period");
            out.push_back(period[(j - preperiod.size()) % period.size()]);
        }
    }
    return out;
}

std::vector<int> random_gcode(std::size_t n, std::mt19937_64& rng, FamilyParam p) {
    const int top = 2 * p.a() - 2;
    std::vector<int> code;
    code.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const bool restricted = j > 0 && !may_follow(code.back(), 0, p);
        std::uniform_int_distribution<int> pick(restricted ? 2 : 0, top);
        code.push_back(pick(rng));
    }
    return code;
}

NumericGMaps::NumericGMaps(const Embedding& e) {
    const FamilyParam p = e.param;
    auto widen = [&](const AlgNum& x) {
        const std::complex<double> z = embed(x, e);
        // the long double parts carry the high-precision value past double rounding
        const HighPrecisionRoots& hp = *e.hp;
        mpf_class re(x[0], hp.bits), im(0, hp.bits);
        re += x[1] * hp.alpha_re + x[2] * hp.alpha2_re;
        im += x[1] * hp.alpha_im + x[2] * hp.alpha2_im;
        const long double rl = static_cast<long double>(z.real()) +
                               static_cast<long double>(mpf_class(re - z.real()).get_d());
        const long double il = static_cast<long double>(z.imag()) +
                               static_cast<long double>(mpf_class(im - z.imag()).get_d());
        return std::complex<long double>(rl, il);
    };
    for (int i = 0; i <= 2 * p.a() - 2; ++i) {
        const AffineMap g = g_map(i, p);
        t_.push_back(widen(g.t));
        s_.push_back(widen(g.s));
    }
    x0_ = widen(AlgNum(p, -1) - alpha_power(3, p));
}

std::complex<double> NumericGMaps::eval(std::span<const int> code) const {
    std::complex<long double> z = x0_;
    for (auto it = code.rbegin(); it != code.rend(); ++it) z = t_.at(*it) + s_.at(*it) * z;
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

double diameter_bound(const Embedding& e) {
    const NumericGMaps maps(e);
    std::mt19937_64 rng(0x5eed);
    double far = 0;
    for (int i = 0; i < 4096; ++i) {
        const auto code = random_gcode(10, rng, e.param);
        far = std::max(far, std::abs(maps.eval(code)));
    }
    return 4.0 * far;
}

GCodeEval eval_gcode(std::span<const int> code, std::size_t n, const AlgNum& x0, const Embedding& e, double C) {
    if (code.size() < n) {
        throw std::invalid_argument("g-code has " + std::to_string(code.size()) + " digits, depth " +
                                    std::to_string(n) + " requested");
    }
    const auto head = code.first(n);
    check_gcode(head, e.param);
    AlgNum z = x0;
    for (auto it = head.rbegin(); it != head.rend(); ++it) z = g_map(*it, e.param)(z);
    const double mod = e.abs_alpha();
    return {z, embed(z, e), std::pow(mod, 2.0 * static_cast<double>(n)) * C};
}

DisjointnessReport piece_disjointness_witness(int i, int j, std::size_t depth, std::size_t samples,
                                              std::uint64_t seed, const Embedding& e) {
    const FamilyParam p = e.param;
    const int top = 2 * p.a() - 2;
    if (i == j) throw std::invalid_argument("piece indices must differ");
    if (i < 0 || j < 0 || i > top || j > top) throw std::invalid_argument("piece index out of range");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");

    const NumericGMaps maps(e);
    auto sample = [&](int lead, std::uint64_t stream) {
        std::mt19937_64 rng(seed ^ (stream * 0x9e3779b97f4a7c15ULL));
        std::vector<std::complex<double>> pts;
        pts.reserve(samples);
        while (pts.size() < samples) {
            auto code = random_gcode(depth, rng, p);
            code[0] = lead;
            if (depth > 1 && !may_follow(lead, code[1], p)) continue;
            pts.push_back(maps.eval(code));
        }
        return pts;
    };
    const auto A = sample(i, 1), B = sample(j, 2);
    DisjointnessReport rep{std::numeric_limits<double>::infinity(), {}, {}, 0};
    for (const auto& x : A) {
        for (const auto& y : B) {
            const double d = std::abs(x - y);
            if (d < rep.min_distance) rep = {d, x, y, 0};
        }
    }
    rep.trunc_bound = std::pow(e.abs_alpha(), 2.0 * static_cast<double>(depth)) * diameter_bound(e);
    return rep;
}

}  // namespace rauzy
