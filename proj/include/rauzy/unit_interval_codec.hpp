#pragma once

// Mixed-radix numeration of [0, 1] with radices r = 2a − 1 and r − 2:
//   t = a_1/r + sum_{i>=2} a_i / (r^{n_i} (r−2)^{m_i}),
// where the digit a_{i−1} decides which exponent grows at position i. The coding psi
// turns these digits into g-map indices, which gives the parametrization f of the
// boundary piece and the map F from the boundary of the unit square onto the boundary
// of the fractal.

#include "rauzy/algebra.hpp"
#include "rauzy/boundary_geometry.hpp"

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rauzy {

enum class Increment : unsigned char { N, M };

struct MixedEntry {
    int digit;
    int n;
    int m;
    Increment inc;  // which exponent grew at this position (N for position 1)

    friend bool operator==(const MixedEntry&, const MixedEntry&) = default;
};

/// Which exponent grows at position i + 1, given position i, its digit and its own
/// increment. Position 1: n after an odd digit or r−1, else m. Later positions: n after
/// 0 at an even position or r−1 at an odd one; r−3 after an n-step gives m, after an
/// m-step n at odd and m at even positions; any other odd digit gives n and any other
/// even digit m.
Increment next_increment(int i, int digit, Increment inc, int r);

/// Largest digit allowed at a position with the given increment.
inline int max_digit(Increment inc, int r) { return inc == Increment::N ? r - 1 : r - 3; }

/// Mixed digits with their (n_i, m_i) history; position i is entries[i − 1].
class MixedDigits {
public:
    /// Derives the history and checks every digit against its radix. Throws
    /// std::invalid_argument on an out-of-range digit and std::domain_error for a < 3.
    static MixedDigits from_digits(FamilyParam p, const std::vector<int>& digits);

    FamilyParam param() const { return param_; }
    int r() const { return param_.r(); }
    const std::vector<MixedEntry>& entries() const { return entries_; }
    std::vector<int> digits() const;
    std::size_t size() const { return entries_.size(); }

    /// Exact partial sum.
    mpq_class value() const;
    /// "a_i(n_i,m_i)" entries separated by spaces.
    std::string describe() const;

private:
    MixedDigits(FamilyParam p, std::vector<MixedEntry> e) : param_(p), entries_(std::move(e)) {}
    FamilyParam param_;
    std::vector<MixedEntry> entries_;
};

struct MixedExpansion {
    MixedDigits digits;
    mpq_class remainder;  // t − value(digits), in [0, 1/(r^{n_K}(r−2)^{m_K}))
};

/// Greedy digits of t in [0, 1] to K positions; t = 1 gets r−1, r−1, r−3, r−1, r−3, ...
/// Throws std::domain_error for a < 3 or t outside [0, 1].
MixedExpansion expand(const mpq_class& t, FamilyParam p, int K);

/// 1 / (r^n (r−2)^m)
mpq_class unit_weight(int n, int m, int r);

/// Eventually periodic digit sequence.
struct PeriodicMixed {
    std::vector<int> preperiod;
    std::vector<int> period;

    int at(std::size_t i) const;  // position i >= 1
    std::vector<int> take(std::size_t K) const;
};

/// Exact value of the infinite sum; the increment pattern is followed until it repeats at
/// a period boundary and the remaining tail is summed as a geometric series. Throws
/// std::invalid_argument on an empty period or a digit out of range.
mpq_class periodic_value(const PeriodicMixed& d, FamilyParam p);

/// Identification case at a position k whose digit can be raised: 1 and 4 for even k,
/// 2 and 3 for odd k; 1 and 2 when the next position is an n-step, 3 and 4 when it is an
/// m-step.
int identification_case(std::size_t k, Increment next_inc);

/// prefix followed by the largest admissible digit at every later position.
PeriodicMixed with_maximal_tail(FamilyParam p, const std::vector<int>& prefix);

/// prefix with its last digit raised by one, then zeros. nullopt if that digit is
/// already maximal.
std::optional<PeriodicMixed> with_raised_last(FamilyParam p, const std::vector<int>& prefix);

/// The two expansions t (maximal tail) and t' (raised digit, zero tail) of one number.
struct IdentifiedPair {
    PeriodicMixed lower;
    PeriodicMixed upper;
    int kase;
};
std::optional<IdentifiedPair> identified_pair(FamilyParam p, const std::vector<int>& prefix);

/// True iff d and d' are literally equal or form an identified pair. Throws
/// std::invalid_argument on an empty period or an invalid digit.
bool equal_expansions(const PeriodicMixed& d, const PeriodicMixed& d2, FamilyParam p);

/// A digit series written as explicit terms digit / (r^n (r−2)^m): head terms once, then
/// cycle terms repeated with (n, m) advanced by (1, 1) per round.
struct SeriesTerm {
    int digit;
    int n;
    int m;
};
struct TailSeries {
    std::vector<SeriesTerm> head;
    std::vector<SeriesTerm> cycle;
};
mpq_class series_value(const TailSeries& s, int r);

/// The two sides of the tail identity for a case: the maximal tail after position k with
/// exponents (n, m), and the single term 1/(r^n (r−2)^m). Throws std::invalid_argument for a
/// case outside 1..4.
std::pair<TailSeries, TailSeries> tail_identity(int kase, int n, int m, int r);

/// psi: b_1 = a_1, b_{2k} = r−1−a_{2k}, b_{2k+1} = a_{2k+1} after a zero or odd a_{2k},
/// a_{2k+1}+2 otherwise. Throws std::logic_error if the result breaks the g-code follow
/// rule.
std::vector<int> psi(const std::vector<int>& digits, FamilyParam p);

struct ParamPoint {
    MixedDigits digits;
    std::vector<int> code;
    AlgNum exact;
    std::complex<double> point;
    double bound;
};

/// Context shared by the parametrization calls for one family member.
struct Parametrization {
    explicit Parametrization(const Embedding& e);

    Embedding emb;
    double C;  // diameter bound
    KeyPoints keys;
};

/// f(t) truncated at depth digits, with |f(t) − point| <= bound.
ParamPoint boundary_param_f(const mpq_class& t, int depth, const Parametrization& ctx);
/// The same from an explicit digit sequence.
ParamPoint param_from_digits(const std::vector<int>& digits, const Parametrization& ctx);

/// F on the boundary of [0,1]^2: the left edge is f(y), the top edge f_2∘f(x), the right
/// edge f_3∘f(y), the bottom edge f_1∘f(x); edges are tried in that order. Throws
/// std::domain_error if (x, y) is farther than 1e−12 from the square's boundary.
ParamPoint square_param_F(double x, double y, int depth, const Parametrization& ctx);

/// Parses "1/3", "0.25", "1" or a decimal in scientific notation into an exact rational.
mpq_class parse_rational(const std::string& text);

}  // namespace rauzy
