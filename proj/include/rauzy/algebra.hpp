#pragma once

// Exact arithmetic in Z[alpha], alpha a root of p(x) = x^3 - a x^2 + x - 1,
// and a certified numerical embedding of the roots.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

namespace rauzy {

/// The integer a selecting the polynomial x^3 - a x^2 + x - 1. Always a >= 2.
class FamilyParam {
public:
    explicit FamilyParam(int a);

    int a() const noexcept { return a_; }
    /// Radix r = 2a - 1 of the unit-interval numeration.
    int r() const noexcept { return 2 * a_ - 1; }

    friend bool operator==(FamilyParam, FamilyParam) = default;

private:
    int a_;
};

/// Element c0 + c1*alpha + c2*alpha^2 of Z[alpha]. Always in reduced form.
class AlgNum {
public:
    explicit AlgNum(FamilyParam p, mpz_class c0 = 0, mpz_class c1 = 0, mpz_class c2 = 0);

    static AlgNum zero(FamilyParam p) { return AlgNum(p); }
    static AlgNum one(FamilyParam p) { return AlgNum(p, 1); }
    static AlgNum alpha(FamilyParam p) { return AlgNum(p, 0, 1); }

    FamilyParam param() const noexcept { return param_; }
    const mpz_class& operator[](std::size_t i) const { return c_[i]; }
    const std::array<mpz_class, 3>& coeffs() const noexcept { return c_; }

    bool is_zero() const;
    /// Bit length of the largest coefficient in absolute value.
    std::size_t max_coeff_bits() const;
    /// l1 norm of the coefficient vector, as a double.
    double l1_norm() const;

    AlgNum mul_alpha() const;
    AlgNum mul_alpha_inv() const;

    AlgNum operator-() const;
    AlgNum& operator+=(const AlgNum& o);
    AlgNum& operator-=(const AlgNum& o);
    AlgNum& operator*=(const AlgNum& o);
    AlgNum& operator*=(long k);

    friend AlgNum operator+(AlgNum x, const AlgNum& y) { return x += y; }
    friend AlgNum operator-(AlgNum x, const AlgNum& y) { return x -= y; }
    friend AlgNum operator*(AlgNum x, const AlgNum& y) { return x *= y; }
    friend AlgNum operator*(AlgNum x, long k) { return x *= k; }
    friend AlgNum operator*(long k, AlgNum x) { return x *= k; }

    /// Equal iff same family and same coefficient triple.
    friend bool operator==(const AlgNum& x, const AlgNum& y);

    /// "(c0, c1, c2)"
    std::string triple() const;
    /// Human-readable polynomial form, e.g. "1 - 2α + 3α²"; zero prints as "0".
    std::string poly() const;

private:
    void check_same(const AlgNum& o) const;

    FamilyParam param_;
    std::array<mpz_class, 3> c_;
};

std::ostream& operator<<(std::ostream& os, const AlgNum& x);

/// Lexicographic order on coefficient triples, for ordered containers and sorted output.
struct TripleLess {
    bool operator()(const AlgNum& x, const AlgNum& y) const;
};

/// Evaluates sum coeffs[i] * alpha^i and reduces it to degree < 3.
AlgNum reduce(std::span<const mpz_class> coeffs, FamilyParam p);
AlgNum reduce(std::initializer_list<long> coeffs, FamilyParam p);

/// x * alpha^{-1}; exact because alpha^{-1} = alpha^2 - a*alpha + 1.
inline AlgNum mul_alpha_inv(const AlgNum& x) { return x.mul_alpha_inv(); }

/// alpha^n for any integer n.
AlgNum alpha_power(int n, FamilyParam p);

/// The same roots held at high precision (GMP floats), used to embed elements with large
/// coefficients without cancellation.
struct HighPrecisionRoots {
    unsigned bits;
    mpf_class beta;
    mpf_class alpha_re, alpha_im;
    mpf_class alpha2_re, alpha2_im;  // alpha^2
    mpf_class beta2;                 // beta^2
    double beta_err;                 // certified |beta - beta_true|
    double alpha_err;                // bound on |alpha - alpha_true|
};

/// Numerical roots of p: the real root beta > 1 and the complex root alpha with Im > 0.
struct Embedding {
    FamilyParam param;
    double beta;
    std::complex<double> alpha;
    /// Certified absolute error bound on both double fields.
    double err;
    std::shared_ptr<const HighPrecisionRoots> hp;

    double abs_alpha() const { return std::abs(alpha); }
};

/// Raised when the requested root precision is not reachable.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

inline constexpr unsigned kEmbeddingBits = 1024;

/// Brackets beta in (a-1, a), refines it, and deflates to get alpha.
/// Throws PrecisionError if the achieved bound exceeds `target`.
Embedding roots(FamilyParam p, double target = 1e-14);

/// c0 + c1*alpha + c2*alpha^2, evaluated at high precision and rounded.
std::complex<double> embed(const AlgNum& x, const Embedding& e);
/// First-order error bound on embed(x).
double embed_error(const AlgNum& x, const Embedding& e);
/// c0 + c1*beta + c2*beta^2 (the real embedding).
double real_embed(const AlgNum& x, const Embedding& e);
/// Real embedding at full precision.
mpf_class real_embed_hp(const AlgNum& x, const Embedding& e);

}  // namespace rauzy
