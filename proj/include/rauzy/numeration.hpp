#pragma once

// Beta-expansions in base beta, the admissible digit language, and evaluation of
// digit words at alpha.

#include "rauzy/algebra.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace rauzy {

/// Finite digit word; digits[j] is the digit at index lowest_index + j.
/// Digits outside the stored range read as 0.
struct DigitWord {
    int lowest_index = 0;
    std::vector<int> digits;

    int at(int i) const {
        const long j = static_cast<long>(i) - lowest_index;
        return (j >= 0 && j < static_cast<long>(digits.size())) ? digits[j] : 0;
    }
    int highest_index() const { return lowest_index + static_cast<int>(digits.size()) - 1; }

    friend bool operator==(const DigitWord&, const DigitWord&) = default;
};

/// True iff every window (a_i, a_{i-1}, a_{i-2}, a_{i-3}) is lexicographically below
/// (a-1, a-1, 0, 1). Throws std::out_of_range on a digit outside [0, a-1].
bool is_admissible(const DigitWord& w, FamilyParam p);

/// Compressed automaton for the admissibility condition when digits are appended at
/// increasing index. Only three things matter about the history: whether the last digit
/// is 0, a-1 or in between, and whether each of the two digits before it is nonzero.
struct ParryState {
    std::uint8_t last_class = 0;  // 0: zero, 1: middle, 2: top digit a-1
    bool last2_nonzero = false;
    bool last3_nonzero = false;

    static constexpr int kCount = 12;
    int index() const { return last_class * 4 + (last2_nonzero ? 2 : 0) + (last3_nonzero ? 1 : 0); }
    static ParryState from_index(int i) {
        return {static_cast<std::uint8_t>(i / 4), (i & 2) != 0, (i & 1) != 0};
    }
    friend bool operator==(ParryState, ParryState) = default;
};

/// State after appending digit d, or nullopt if the new window is forbidden.
std::optional<ParryState> parry_step(ParryState s, int d, FamilyParam p);

/// Greedy expansion x = sum_{i>=1} digits[i-1] * beta^{-i}.
struct BetaExpansion {
    std::vector<int> digits;
    /// Some remainder landed within the precision slack of an integer.
    bool near_boundary = false;

    /// The same digits as a word at indices -N .. -1 (at(-i) is the i-th digit).
    DigitWord to_word() const;
};

/// Greedy digits of x in (0, 1], computed at the embedding's full precision.
/// Throws std::domain_error if x is outside (0, 1].
BetaExpansion greedy_expand(double x, const Embedding& e, int depth);
/// Greedy digits of the real embedding of x (a value in Z[beta]) with exact remainders.
BetaExpansion greedy_expand(const AlgNum& x, const Embedding& e, int depth);

enum class OneExpansionCase { NegativeB, SmallB, MinusOne, APlusOne };

/// d(1, beta) for beta the Pisot root of x^3 - a x^2 - b x - 1.
struct OneExpansion {
    OneExpansionCase kind;
    std::vector<int> preperiod;
    std::vector<int> period;  // empty for a finite expansion
};

/// Throws std::domain_error outside -a+1 <= b <= a+1 or a < 0.
OneExpansion d_one(int a, int b);

/// Depth-first enumeration of the admissible words occupying indices start..start+n-1,
/// in lexicographic order of (a_start, a_start+1, ...). Digits below start are 0.
class AdmissibleStream {
public:
    AdmissibleStream(FamilyParam p, int n, int start = 2);
    std::optional<DigitWord> next();

private:
    FamilyParam param_;
    int n_;
    int start_;
    std::vector<int> digits_;
    std::vector<ParryState> states_;  // states_[j] is the state before digit j
    bool done_ = false;
    bool started_ = false;
};

/// Number of admissible words of length n (digits below the word are 0).
mpz_class count_admissible(FamilyParam p, int n);

/// sum a_i alpha^i as an exact element; negative indices are allowed.
AlgNum word_value(const DigitWord& w, FamilyParam p);
/// sum a_i alpha^i numerically.
std::complex<double> eval_word(const DigitWord& w, const Embedding& e);

/// Eventually periodic digit sequence extending upward from lowest_index:
/// preperiod first, then period repeated forever.
struct PeriodicWord {
    int lowest_index = 0;
    std::vector<int> preperiod;
    std::vector<int> period;

    int at(int i) const;
    /// Stored digits up to and including index hi.
    DigitWord truncate(int hi) const;
};

/// num / den in Q(alpha).
struct AlgFraction {
    AlgNum num;
    AlgNum den;
};

bool same_value(const AlgFraction& x, const AlgFraction& y);

/// Exact value of sum a_i alpha^i for an eventually periodic word. Throws
/// std::invalid_argument on an empty period.
AlgFraction periodic_value(const PeriodicWord& w, FamilyParam p);

/// Admissibility of the infinite word; checks windows until they become periodic.
bool is_admissible(const PeriodicWord& w, FamilyParam p);

}  // namespace rauzy
