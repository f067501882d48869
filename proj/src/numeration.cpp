#include "rauzy/numeration.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rauzy {

namespace {

void check_digit(int d, FamilyParam p) {
    if (d < 0 || d > p.a() - 1) {
        throw std::out_of_range("digit " + std::to_string(d) + " outside [0, " +
                                std::to_string(p.a() - 1) + "]");
    }
}

std::uint8_t digit_class(int d, FamilyParam p) {
    if (d == 0) return 0;
    return d == p.a() - 1 ? 2 : 1;
}

}  // namespace

bool is_admissible(const DigitWord& w, FamilyParam p) {
    for (int d : w.digits) check_digit(d, p);
    const int top = p.a() - 1;
    for (int i = w.lowest_index; i <= w.highest_index(); ++i) {
        // (a_i, a_{i-1}, a_{i-2}, a_{i-3}) >= (a-1, a-1, 0, 1)
        if (w.at(i) == top && w.at(i - 1) == top && (w.at(i - 2) > 0 || w.at(i - 3) > 0)) {
            return false;
        }
    }
    return true;
}

std::optional<ParryState> parry_step(ParryState s, int d, FamilyParam p) {
    if (d == p.a() - 1 && s.last_class == 2 && (s.last2_nonzero || s.last3_nonzero)) {
        return std::nullopt;
    }
    return ParryState{digit_class(d, p), s.last_class != 0, s.last2_nonzero};
}

DigitWord BetaExpansion::to_word() const {
    DigitWord w;
    w.lowest_index = -static_cast<int>(digits.size());
    w.digits.assign(digits.rbegin(), digits.rend());
    return w;
}

BetaExpansion greedy_expand(double x, const Embedding& e, int depth) {
    if (!(x > 0.0 && x <= 1.0)) {
        throw std::domain_error("greedy_expand needs 0 < x <= 1, got " + std::to_string(x));
    }
    const HighPrecisionRoots& hp = *e.hp;
    const int a = e.param.a();
    mpf_class r(x, hp.bits);
    mpf_class slack(1, hp.bits);
    mpf_div_2exp(slack.get_mpf_t(), slack.get_mpf_t(), hp.bits - 80);

    BetaExpansion out;
    out.digits.reserve(depth);
    for (int i = 0; i < depth; ++i) {
        mpf_class y(r * hp.beta, hp.bits);
        slack *= hp.beta;
        mpf_class fl(floor(y + slack), hp.bits);
        long d = fl.get_si();
        if (abs(y - fl) < slack || abs(y - fl - 1) < slack) out.near_boundary = true;
        d = std::clamp<long>(d, 0, a - 1);
        out.digits.push_back(static_cast<int>(d));
        r = y - d;
    }
    return out;
}

BetaExpansion greedy_expand(const AlgNum& x, const Embedding& e, int depth) {
    const int a = e.param.a();
    mpf_class tiny(1, e.hp->bits);
    mpf_div_2exp(tiny.get_mpf_t(), tiny.get_mpf_t(), e.hp->bits - 120);

    const mpf_class xv = real_embed_hp(x, e);
    const bool is_one = (x - AlgNum::one(x.param())).is_zero();
    if (!is_one && !(xv > 0 && xv < 1)) {
        throw std::domain_error("greedy_expand needs 0 < x <= 1");
    }

    BetaExpansion out;
    out.digits.reserve(depth);
    AlgNum r = x;
    for (int i = 0; i < depth; ++i) {
        AlgNum y = r.mul_alpha();
        const mpf_class yv = real_embed_hp(y, e);
        mpf_class nearest = floor(yv + 0.5);
        long d;
        if (abs(yv - nearest) < tiny) {
            d = nearest.get_si();
            if (!(y - AlgNum(x.param(), d)).is_zero()) {
                out.near_boundary = true;
                if (yv < nearest) --d;
            }
        } else {
            d = mpf_class(floor(yv)).get_si();
        }
        d = std::clamp<long>(d, 0, a - 1);
        out.digits.push_back(static_cast<int>(d));
        r = y - AlgNum(x.param(), d);
    }
    return out;
}

OneExpansion d_one(int a, int b) {
    if (a < 0) throw std::domain_error("d_one needs a >= 0");
    if (b >= -a + 1 && b <= -2) {
        return {OneExpansionCase::NegativeB, {a - 1, a + b - 1}, {a + b}};
    }
    if (b >= 0 && b <= a) return {OneExpansionCase::SmallB, {a, b, 1}, {}};
    if (b == -1) return {OneExpansionCase::MinusOne, {a - 1, a - 1, 0, 1}, {}};
    if (b == a + 1) return {OneExpansionCase::APlusOne, {a + 1, 0, 0, a, 1}, {}};
    throw std::domain_error("no expansion of 1 listed for a=" + std::to_string(a) +
                            ", b=" + std::to_string(b));
}

AdmissibleStream::AdmissibleStream(FamilyParam p, int n, int start)
    : param_(p), n_(n), start_(start), digits_(n, 0), states_(n + 1) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    for (int j = 0; j < n; ++j) states_[j + 1] = *parry_step(states_[j], 0, p);
}

std::optional<DigitWord> AdmissibleStream::next() {
    if (done_) return std::nullopt;
    if (started_) {
        int j = n_ - 1;
        for (; j >= 0; --j) {
            bool advanced = false;
            for (int d = digits_[j] + 1; d < param_.a(); ++d) {
                if (auto s = parry_step(states_[j], d, param_)) {
                    digits_[j] = d;
                    states_[j + 1] = *s;
                    advanced = true;
                    break;
                }
            }
            if (advanced) break;
        }
        if (j < 0) {
            done_ = true;
            return std::nullopt;
        }
        for (int k = j + 1; k < n_; ++k) {
            digits_[k] = 0;
            states_[k + 1] = *parry_step(states_[k], 0, param_);
        }
    }
    started_ = true;
    return DigitWord{start_, digits_};
}

mpz_class count_admissible(FamilyParam p, int n) {
    std::array<mpz_class, ParryState::kCount> cur, nxt;
    cur[ParryState{}.index()] = 1;
    for (int step = 0; step < n; ++step) {
        for (auto& c : nxt) c = 0;
        for (int s = 0; s < ParryState::kCount; ++s) {
            if (cur[s] == 0) continue;
            for (int d = 0; d < p.a(); ++d) {
                if (auto t = parry_step(ParryState::from_index(s), d, p)) nxt[t->index()] += cur[s];
            }
        }
        cur.swap(nxt);
    }
    mpz_class total = 0;
    for (const auto& c : cur) total += c;
    return total;
}

AlgNum word_value(const DigitWord& w, FamilyParam p) {
    AlgNum z = AlgNum::zero(p);
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) {
        z = z.mul_alpha() + AlgNum(p, *it);
    }
    return z * alpha_power(w.lowest_index, p);
}

std::complex<double> eval_word(const DigitWord& w, const Embedding& e) {
    return embed(word_value(w, e.param), e);
}

int PeriodicWord::at(int i) const {
    const long j = static_cast<long>(i) - lowest_index;
    if (j < 0) return 0;
    if (j < static_cast<long>(preperiod.size())) return preperiod[j];
    if (period.empty()) return 0;
    return period[(j - preperiod.size()) % period.size()];
}

DigitWord PeriodicWord::truncate(int hi) const {
    DigitWord w{lowest_index, {}};
    for (int i = lowest_index; i <= hi; ++i) w.digits.push_back(at(i));
    return w;
}

bool same_value(const AlgFraction& x, const AlgFraction& y) {
    return x.num * y.den == y.num * x.den;
}

AlgFraction periodic_value(const PeriodicWord& w, FamilyParam p) {
    if (w.period.empty()) throw std::invalid_argument("periodic_value needs a nonempty period");
    const AlgNum head = word_value(DigitWord{w.lowest_index, w.preperiod}, p);
    const AlgNum cycle = word_value(DigitWord{0, w.period}, p);
    const int tail_start = w.lowest_index + static_cast<int>(w.preperiod.size());
    const AlgNum den = AlgNum::one(p) - alpha_power(static_cast<int>(w.period.size()), p);
    return {head * den + alpha_power(tail_start, p) * cycle, den};
}

bool is_admissible(const PeriodicWord& w, FamilyParam p) {
    const int hi = w.lowest_index + static_cast<int>(w.preperiod.size() + w.period.size()) + 3;
    return is_admissible(w.truncate(hi), p);
}

}  // namespace rauzy
