#include "rauzy/unit_interval_codec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace rauzy {

namespace {

void require_codec_param(FamilyParam p) {
    if (p.a() < 3) {
        throw std::domain_error("the unit-interval numeration requires a >= 3 (got a=" + std::to_string(p.a()) + ")");
    }
}

mpz_class ipow(int base, int e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return out;
}

// Walks a digit sequence position by position, tracking (n, m) and checking ranges.
struct HistoryWalker {
    int r;
    std::size_t pos = 0;  // last position consumed
    int n = 0, m = 0;
    Increment inc = Increment::N;
    int last = 0;

    Increment peek() const { return pos == 0 ? Increment::N : next_increment(static_cast<int>(pos), last, inc, r); }

    MixedEntry push(int digit) {
        const Increment next = peek();
        if (digit < 0 || digit > max_digit(next, r)) {
            throw std::invalid_argument("digit " + std::to_string(digit) + " at position " + std::to_string(pos + 1) +
                                        " exceeds " + std::to_string(max_digit(next, r)));
        }
        ++pos;
        (next == Increment::N ? n : m) += 1;
        inc = next;
        last = digit;
        return {digit, n, m, inc};
    }
};

}  // namespace

Increment next_increment(int i, int digit, Increment inc, int r) {
    if (i == 1) return (digit % 2 == 1 || digit == r - 1) ? Increment::N : Increment::M;
    const bool even = i % 2 == 0;
    if (digit == 0) return even ? Increment::N : Increment::M;
    if (digit == r - 1) return even ? Increment::M : Increment::N;
    if (digit == r - 3) {
        if (inc == Increment::N) return Increment::M;
        return even ? Increment::M : Increment::N;
    }
    return digit % 2 == 1 ? Increment::N : Increment::M;
}

MixedDigits MixedDigits::from_digits(FamilyParam p, const std::vector<int>& digits) {
    require_codec_param(p);
    HistoryWalker walk{p.r()};
    std::vector<MixedEntry> entries;
    entries.reserve(digits.size());
    for (int d : digits) entries.push_back(walk.push(d));
    return MixedDigits(p, std::move(entries));
}

std::vector<int> MixedDigits::digits() const {
    std::vector<int> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.digit);
    return out;
}

mpq_class unit_weight(int n, int m, int r) {
    mpq_class w(1, ipow(r, n) * ipow(r - 2, m));
    w.canonicalize();
    return w;
}

mpq_class MixedDigits::value() const {
    mpq_class s = 0;
    for (const auto& e : entries_) {
        if (e.digit != 0) s += e.digit * unit_weight(e.n, e.m, r());
    }
    return s;
}

std::string MixedDigits::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ' ';
        os << entries_[i].digit << '(' << entries_[i].n << ',' << entries_[i].m << ')';
    }
    return os.str();
}

MixedExpansion expand(const mpq_class& t_in, FamilyParam p, int K) {
    require_codec_param(p);
    // GMP comparisons assume canonical form; callers may pass e.g. mpq_class(4, 4).
    mpq_class t(t_in);
    t.canonicalize();
    if (t < 0 || t > 1) throw std::domain_error("expand needs 0 <= t <= 1");
    if (K < 1) throw std::invalid_argument("expansion depth must be >= 1");
    const int r = p.r();

    std::vector<int> digits;
    digits.reserve(K);
    if (t == 1) {
        digits.push_back(r - 1);
        for (int i = 1; i < K; ++i) digits.push_back(i % 2 == 1 ? r - 1 : r - 3);
        MixedDigits d = MixedDigits::from_digits(p, digits);
        mpq_class rem = t - d.value();
        return {std::move(d), rem};
    }

    HistoryWalker walk{r};
    mpq_class rem = t;
    for (int i = 0; i < K; ++i) {
        const Increment next = walk.peek();
        const int n = walk.n + (next == Increment::N ? 1 : 0);
        const int m = walk.m + (next == Increment::M ? 1 : 0);
        mpq_class scaled = rem * ipow(r, n) * ipow(r - 2, m);
        mpz_class q = scaled.get_num() / scaled.get_den();
        const int digit = static_cast<int>(q.get_si());
        walk.push(digit);
        digits.push_back(digit);
        rem -= digit * unit_weight(n, m, r);
    }
    return {MixedDigits::from_digits(p, digits), rem};
}

int PeriodicMixed::at(std::size_t i) const {
    if (i == 0) throw std::out_of_range("mixed positions start at 1");
    if (i <= preperiod.size()) return preperiod[i - 1];
    if (period.empty()) throw std::invalid_argument("periodic digits with an empty period");
    return period[(i - 1 - preperiod.size()) % period.size()];
}

std::vector<int> PeriodicMixed::take(std::size_t K) const {
    std::vector<int> out;
    out.reserve(K);
    for (std::size_t i = 1; i <= K; ++i) out.push_back(at(i));
    return out;
}

mpq_class periodic_value(const PeriodicMixed& d, FamilyParam p) {
    require_codec_param(p);
    if (d.period.empty()) throw std::invalid_argument("periodic_value needs a nonempty period");
    const int r = p.r();
    HistoryWalker walk{r};
    mpq_class sum = 0;
    auto consume = [&](int digit) {
        const MixedEntry e = walk.push(digit);
        if (digit != 0) sum += digit * unit_weight(e.n, e.m, r);
    };
    for (int digit : d.preperiod) consume(digit);

    // The increments inside a block depend only on the block start parity and the increment
    // of the position just before it, so a repeat of that pair closes a geometric cycle.
    using Key = std::pair<int, int>;
    std::map<Key, std::tuple<mpq_class, int, int>> seen;
    for (;;) {
        for (int digit : d.period) consume(digit);
        const Key key{static_cast<int>((walk.pos + 1) % 2), static_cast<int>(walk.inc)};
        auto it = seen.find(key);
        if (it != seen.end()) {
            const auto& [sum0, n0, m0] = it->second;
            const mpq_class cycle = sum - sum0;
            const mpq_class ratio = unit_weight(walk.n - n0, walk.m - m0, r);
            return sum0 + cycle / (1 - ratio);
        }
        seen.emplace(key, std::make_tuple(sum, walk.n, walk.m));
    }
}

int identification_case(std::size_t k, Increment next_inc) {
    const bool even = k % 2 == 0;
    if (next_inc == Increment::N) return even ? 1 : 2;
    return even ? 4 : 3;
}

PeriodicMixed with_maximal_tail(FamilyParam p, const std::vector<int>& prefix) {
    require_codec_param(p);
    const int r = p.r();
    HistoryWalker walk{r};
    for (int digit : prefix) walk.push(digit);
    constexpr int kLook = 16;
    std::vector<int> tail;
    for (int i = 0; i < kLook; ++i) {
        const int digit = max_digit(walk.peek(), r);
        walk.push(digit);
        tail.push_back(digit);
    }
    for (int h = 0; h <= 4; ++h) {
        bool ok = true;
        for (int j = h; j < kLook && ok; ++j) ok = tail[j] == tail[h + (j - h) % 2];
        if (ok) {
            PeriodicMixed out{prefix, {tail[h], tail[h + 1]}};
            out.preperiod.insert(out.preperiod.end(), tail.begin(), tail.begin() + h);
            return out;
        }
    }
    throw std::logic_error("maximal tail is not eventually 2-periodic");
}

std::optional<PeriodicMixed> with_raised_last(FamilyParam p, const std::vector<int>& prefix) {
    require_codec_param(p);
    if (prefix.empty()) throw std::invalid_argument("prefix must be nonempty");
    const MixedDigits d = MixedDigits::from_digits(p, prefix);
    const MixedEntry& last = d.entries().back();
    if (last.digit >= max_digit(last.inc, p.r())) return std::nullopt;
    PeriodicMixed out{prefix, {0}};
    out.preperiod.back() += 1;
    return out;
}

std::optional<IdentifiedPair> identified_pair(FamilyParam p, const std::vector<int>& prefix) {
    auto upper = with_raised_last(p, prefix);
    if (!upper) return std::nullopt;
    const MixedDigits d = MixedDigits::from_digits(p, prefix);
    const MixedEntry& last = d.entries().back();
    const int kase = identification_case(prefix.size(),
                                         next_increment(static_cast<int>(prefix.size()), last.digit, last.inc, p.r()));
    return IdentifiedPair{with_maximal_tail(p, prefix), *upper, kase};
}

namespace {

// Length after which two eventually periodic sequences agree forever if they agree so far.
std::size_t decisive_length(const PeriodicMixed& x, const PeriodicMixed& y) {
    return std::max(x.preperiod.size(), y.preperiod.size()) + std::lcm(x.period.size(), y.period.size());
}

bool same_sequence(const PeriodicMixed& x, const PeriodicMixed& y) {
    const std::size_t L = decisive_length(x, y);
    for (std::size_t i = 1; i <= L; ++i) {
        if (x.at(i) != y.at(i)) return false;
    }
    return true;
}

}  // namespace

bool equal_expansions(const PeriodicMixed& d, const PeriodicMixed& d2, FamilyParam p) {
    require_codec_param(p);
    for (const PeriodicMixed* x : {&d, &d2}) {
        if (x->period.empty()) throw std::invalid_argument("equal_expansions needs eventually periodic input");
        MixedDigits::from_digits(p, x->take(x->preperiod.size() + 2 * x->period.size() + 4));
    }
    const std::size_t L = decisive_length(d, d2);
    std::size_t k = 0;
    for (std::size_t i = 1; i <= L; ++i) {
        if (d.at(i) != d2.at(i)) {
            k = i;
            break;
        }
    }
    if (k == 0) return true;
    const PeriodicMixed& lo = d.at(k) < d2.at(k) ? d : d2;
    const PeriodicMixed& hi = d.at(k) < d2.at(k) ? d2 : d;
    const std::vector<int> prefix = lo.take(k);
    const auto upper = with_raised_last(p, prefix);
    if (!upper) return false;
    return same_sequence(hi, *upper) && same_sequence(lo, with_maximal_tail(p, prefix));
}

mpq_class series_value(const TailSeries& s, int r) {
    mpq_class head = 0, cycle = 0;
    for (const auto& t : s.head) head += t.digit * unit_weight(t.n, t.m, r);
    for (const auto& t : s.cycle) cycle += t.digit * unit_weight(t.n, t.m, r);
    return head + cycle / (1 - unit_weight(1, 1, r));
}

std::pair<TailSeries, TailSeries> tail_identity(int kase, int n, int m, int r) {
    TailSeries lhs;
    switch (kase) {
        case 1:
            lhs.head = {{r - 1, n + 1, m}};
            lhs.cycle = {{r - 1, n + 2, m}, {r - 3, n + 2, m + 1}};
            break;
        case 2:
            lhs.cycle = {{r - 1, n + 1, m}, {r - 3, n + 1, m + 1}};
            break;
        case 3:
            lhs.head = {{r - 3, n, m + 1}};
            lhs.cycle = {{r - 3, n, m + 2}, {r - 1, n + 1, m + 2}};
            break;
        case 4:
            lhs.cycle = {{r - 3, n, m + 1}, {r - 1, n + 1, m + 1}};
            break;
        default:
            throw std::invalid_argument("identification case must be 1..4, got " + std::to_string(kase));
    }
    return {lhs, TailSeries{{{1, n, m}}, {}}};
}

std::vector<int> psi(const std::vector<int>& digits, FamilyParam p) {
    require_codec_param(p);
    const int r = p.r();
    std::vector<int> b;
    b.reserve(digits.size());
    for (std::size_t j = 1; j <= digits.size(); ++j) {
        const int aj = digits[j - 1];
        if (j == 1) {
            b.push_back(aj);
        } else if (j % 2 == 0) {
            b.push_back(r - 1 - aj);
        } else {
            const int prev = digits[j - 2];
            b.push_back((prev == 0 || prev % 2 == 1) ? aj : aj + 2);
        }
    }
    try {
        check_gcode(b, p);
    } catch (const std::invalid_argument& err) {
        throw std::logic_error(std::string("psi produced an invalid g-code: ") + err.what());
    }
    return b;
}

Parametrization::Parametrization(const Embedding& e)
    : emb(e), C((require_codec_param(e.param), diameter_bound(e))), keys(key_points(e.param)) {}

ParamPoint param_from_digits(const std::vector<int>& digits, const Parametrization& ctx) {
    MixedDigits md = MixedDigits::from_digits(ctx.emb.param, digits);
    std::vector<int> code = psi(digits, ctx.emb.param);
    GCodeEval ev = eval_gcode(code, code.size(), ctx.keys.w, ctx.emb, ctx.C);
    return {std::move(md), std::move(code), std::move(ev.exact), ev.point, ev.trunc_bound};
}

ParamPoint boundary_param_f(const mpq_class& t, int depth, const Parametrization& ctx) {
    const MixedExpansion ex = expand(t, ctx.emb.param, depth);
    return param_from_digits(ex.digits.digits(), ctx);
}

ParamPoint square_param_F(double x, double y, int depth, const Parametrization& ctx) {
    constexpr double tol = 1e-12;
    auto near = [](double s, double target) { return std::fabs(s - target) <= tol; };
    const bool inside = x >= -tol && x <= 1 + tol && y >= -tol && y <= 1 + tol;
    if (!inside || !(near(x, 0) || near(x, 1) || near(y, 0) || near(y, 1))) {
        std::ostringstream os;
        os << "(" << x << ", " << y << ") is not on the boundary of the unit square";
        throw std::domain_error(os.str());
    }
    auto param = [](double s) { return mpq_class(std::clamp(s, 0.0, 1.0)); };

    int which = 0;
    double s = y;
    if (near(x, 0)) {
        which = 0;
        s = y;
    } else if (near(y, 1)) {
        which = 2;
        s = x;
    } else if (near(x, 1)) {
        which = 3;
        s = y;
    } else {
        which = 1;
        s = x;
    }
    ParamPoint pt = boundary_param_f(param(s), depth, ctx);
    if (which != 0) {
        pt.exact = f_map(which, ctx.emb.param)(pt.exact);
        pt.point = embed(pt.exact, ctx.emb);
        if (which != 3) pt.bound /= ctx.emb.abs_alpha();
    }
    return pt;
}

mpq_class parse_rational(const std::string& text) {
    auto fail = [&]() -> mpq_class { throw std::invalid_argument("not a rational number: '" + text + "'"); };
    if (text.empty()) return fail();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0) return fail();
        if (den == 0) return fail();
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
    std::string mantissa;
    long exponent = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa += c;
            seen_digit = true;
            if (seen_dot) --exponent;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return fail();
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return fail();
        const std::string rest = text.substr(i + 1);
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(rest, &used);
        } catch (const std::exception&) {
            return fail();
        }
        if (used != rest.size()) return fail();
        exponent += e;
    }
    if (exponent > 4000 || exponent < -4000) return fail();
    mpq_class q(mpz_class(mantissa, 10));
    const mpz_class scale = ipow(10, static_cast<int>(std::labs(exponent)));
    if (exponent >= 0) {
        q *= scale;
    } else {
        q /= scale;
    }
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

}  // namespace rauzy
