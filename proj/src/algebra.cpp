#include "rauzy/algebra.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

namespace rauzy {

FamilyParam::FamilyParam(int a) : a_(a) {
    if (a < 2) {
        throw std::invalid_argument("family parameter a must be >= 2, got " + std::to_string(a));
    }
}

AlgNum::AlgNum(FamilyParam p, mpz_class c0, mpz_class c1, mpz_class c2)
    : param_(p), c_{std::move(c0), std::move(c1), std::move(c2)} {}

bool AlgNum::is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }

std::size_t AlgNum::max_coeff_bits() const {
    std::size_t bits = 0;
    for (const auto& c : c_) {
        if (c != 0) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    }
    return bits;
}

double AlgNum::l1_norm() const {
    double s = 0;
    for (const auto& c : c_) s += std::fabs(c.get_d());
    return s;
}

void AlgNum::check_same(const AlgNum& o) const {
    if (param_ != o.param_) {
        throw std::invalid_argument("AlgNum param mismatch: a=" + std::to_string(param_.a()) +
                                    " vs a=" + std::to_string(o.param_.a()));
    }
}

AlgNum AlgNum::mul_alpha() const {
    // alpha^3 = a alpha^2 - alpha + 1
    const int a = param_.a();
    return AlgNum(param_, c_[2], c_[0] - c_[2], c_[1] + a * c_[2]);
}

AlgNum AlgNum::mul_alpha_inv() const {
    // (c0 + c1 alpha + c2 alpha^2) / alpha = c0 (alpha^2 - a alpha + 1) + c1 + c2 alpha
    const int a = param_.a();
    return AlgNum(param_, c_[0] + c_[1], c_[2] - a * c_[0], c_[0]);
}

AlgNum AlgNum::operator-() const { return AlgNum(param_, -c_[0], -c_[1], -c_[2]); }

AlgNum& AlgNum::operator+=(const AlgNum& o) {
    check_same(o);
    for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
}

AlgNum& AlgNum::operator-=(const AlgNum& o) {
    check_same(o);
    for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
}

AlgNum& AlgNum::operator*=(const AlgNum& o) {
    check_same(o);
    std::array<mpz_class, 5> d;
    for (int i = 0; i < 3; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < 3; ++j) d[i + j] += c_[i] * o.c_[j];
    }
    *this = reduce(d, param_);
    return *this;
}

AlgNum& AlgNum::operator*=(long k) {
    for (auto& c : c_) c *= k;
    return *this;
}

bool operator==(const AlgNum& x, const AlgNum& y) {
    return x.param_ == y.param_ && x.c_ == y.c_;
}

std::string AlgNum::triple() const {
    std::ostringstream os;
    os << '(' << c_[0] << ", " << c_[1] << ", " << c_[2] << ')';
    return os.str();
}

std::string AlgNum::poly() const {
    static const char* const power[3] = {"", "α", "α²"};
    std::string out;
    for (int i = 0; i < 3; ++i) {
        const mpz_class& c = c_[i];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (i == 0 || mag != 1) out += mag.get_str();
        out += power[i];
    }
    return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const AlgNum& x) { return os << x.triple(); }

bool TripleLess::operator()(const AlgNum& x, const AlgNum& y) const {
    if (x.param().a() != y.param().a()) return x.param().a() < y.param().a();
    for (std::size_t i = 0; i < 3; ++i) {
        const int c = cmp(x[i], y[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

AlgNum reduce(std::span<const mpz_class> coeffs, FamilyParam p) {
    std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
    if (c.size() < 3) c.resize(3);
    const int a = p.a();
    // alpha^n = a alpha^{n-1} - alpha^{n-2} + alpha^{n-3}
    for (std::size_t n = c.size() - 1; n >= 3; --n) {
        if (c[n] == 0) continue;
        c[n - 1] += a * c[n];
        c[n - 2] -= c[n];
        c[n - 3] += c[n];
        c[n] = 0;
    }
    return AlgNum(p, c[0], c[1], c[2]);
}

AlgNum reduce(std::initializer_list<long> coeffs, FamilyParam p) {
    std::vector<mpz_class> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return reduce(c, p);
}

AlgNum alpha_power(int n, FamilyParam p) {
    AlgNum x = AlgNum::one(p);
    if (n >= 0) {
        for (int i = 0; i < n; ++i) x = x.mul_alpha();
    } else {
        for (int i = 0; i < -n; ++i) x = x.mul_alpha_inv();
    }
    return x;
}

namespace {

mpq_class to_rational(const mpf_class& x) {
    mpq_class q;
    mpq_set_f(q.get_mpq_t(), x.get_mpf_t());
    return q;
}

// Exact sign of p at a binary rational.
int exact_sign_p(const mpf_class& x, int a) {
    const mpq_class q = to_rational(x);
    const mpq_class v = ((q - a) * q + 1) * q - 1;
    return sgn(v);
}

mpf_class hp(double v, unsigned bits) { return mpf_class(v, bits); }

}  // namespace

Embedding roots(FamilyParam p, double target) {
    const int a = p.a();
    const unsigned bits = kEmbeddingBits;

    // p(a-1) = -(a^2 - 3a + 3) < 0 < a - 1 = p(a)
    mpf_class lo(a - 1, bits), hi(a, bits);
    mpf_class x(a, bits);
    mpf_class tol(1, bits);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), bits - 48);

    for (int iter = 0; iter < 4 * static_cast<int>(bits); ++iter) {
        mpf_class px(((x - a) * x + 1) * x - 1, bits);
        mpf_class dpx((3 * x - 2 * a) * x + 1, bits);
        mpf_class next(0, bits);
        if (dpx > 0) next = x - px / dpx;
        if (dpx <= 0 || next <= lo || next >= hi) next = (lo + hi) / 2;

        mpf_class step = abs(next - x);
        x = next;
        const int s = exact_sign_p(x, a);
        if (s == 0) {
            lo = hi = x;
            break;
        }
        (s < 0 ? lo : hi) = x;
        if (hi - lo < tol) break;
        if (step < tol) {
            // Newton approaches from one side; probe the other side to close the bracket.
            mpf_class probe = (s > 0) ? mpf_class(x - tol / 2, bits) : mpf_class(x + tol / 2, bits);
            if (probe > lo && probe < hi) {
                const int ps = exact_sign_p(probe, a);
                if (ps == 0) {
                    lo = hi = probe;
                    break;
                }
                (ps < 0 ? lo : hi) = probe;
            }
            if (hi - lo < tol) break;
        }
    }
    if (hi - lo >= tol) {
        throw PrecisionError("root bracketing did not converge", mpf_class(hi - lo).get_d());
    }

    auto r = std::make_shared<HighPrecisionRoots>();
    r->bits = bits;
    r->beta = mpf_class((lo + hi) / 2, bits);
    r->beta_err = mpf_class(hi - lo, bits).get_d();

    // alpha, conj(alpha) are the roots of x^2 - (a - beta) x + 1/beta.
    const mpf_class& b = r->beta;
    mpf_class sum(a - b, bits);
    mpf_class disc(4 / b - sum * sum, bits);
    if (disc <= 0) throw std::logic_error("complex pair not found for a=" + std::to_string(a));
    r->alpha_re = mpf_class(sum / 2, bits);
    r->alpha_im = mpf_class(sqrt(disc) / 2, bits);
    r->alpha2_re = mpf_class(r->alpha_re * r->alpha_re - r->alpha_im * r->alpha_im, bits);
    r->alpha2_im = mpf_class(2 * r->alpha_re * r->alpha_im, bits);
    r->beta2 = mpf_class(b * b, bits);

    const double bd = b.get_d();
    const double disc_d = disc.get_d();
    const double dim = std::fabs(-4.0 / (bd * bd) + 2.0 * (a - bd)) / (4.0 * std::sqrt(disc_d));
    r->alpha_err = (0.5 + dim) * r->beta_err + std::ldexp(1.0, -static_cast<int>(bits) + 16);

    Embedding e{p, r->beta.get_d(), {r->alpha_re.get_d(), r->alpha_im.get_d()}, 0.0, nullptr};
    const double beta_round = mpf_class(abs(r->beta - hp(e.beta, bits))).get_d();
    const double re_round = mpf_class(abs(r->alpha_re - hp(e.alpha.real(), bits))).get_d();
    const double im_round = mpf_class(abs(r->alpha_im - hp(e.alpha.imag(), bits))).get_d();
    e.err = std::max(beta_round + r->beta_err, std::hypot(re_round, im_round) + r->alpha_err);
    e.hp = std::move(r);

    if (!(e.err <= target)) {
        std::ostringstream os;
        os << "root precision target " << target << " not met (achieved " << e.err << ")";
        throw PrecisionError(os.str(), e.err);
    }
    return e;
}

namespace {

void check_embeddable(const AlgNum& x, const HighPrecisionRoots& r) {
    if (x.max_coeff_bits() + 96 > r.bits) {
        throw std::overflow_error("coefficients of " + std::to_string(x.max_coeff_bits()) +
                                  " bits exceed the embedding precision");
    }
}

}  // namespace

std::complex<double> embed(const AlgNum& x, const Embedding& e) {
    const HighPrecisionRoots& r = *e.hp;
    check_embeddable(x, r);
    mpf_class c0(x[0], r.bits), c1(x[1], r.bits), c2(x[2], r.bits);
    mpf_class re(c0 + c1 * r.alpha_re + c2 * r.alpha2_re, r.bits);
    mpf_class im(c1 * r.alpha_im + c2 * r.alpha2_im, r.bits);
    return {re.get_d(), im.get_d()};
}

double embed_error(const AlgNum& x, const Embedding& e) {
    const HighPrecisionRoots& r = *e.hp;
    const double mod = e.abs_alpha();
    const double err1 = r.alpha_err;
    const double err2 = 2.0 * mod * r.alpha_err + r.alpha_err * r.alpha_err;
    const double z = std::abs(embed(x, e));
    return std::fabs(x[1].get_d()) * err1 + std::fabs(x[2].get_d()) * err2 + z * DBL_EPSILON;
}

mpf_class real_embed_hp(const AlgNum& x, const Embedding& e) {
    const HighPrecisionRoots& r = *e.hp;
    check_embeddable(x, r);
    mpf_class c0(x[0], r.bits), c1(x[1], r.bits), c2(x[2], r.bits);
    return mpf_class(c0 + c1 * r.beta + c2 * r.beta2, r.bits);
}

double real_embed(const AlgNum& x, const Embedding& e) { return real_embed_hp(x, e).get_d(); }

}  // namespace rauzy
