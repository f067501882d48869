#pragma once

// Affine contractions on the boundary piece R ∩ (R + α − 1): the three maps f_j that
// reassemble the whole boundary, the 2a−1 maps g_i of the graph-directed system on the
// piece, and their exact fixed and gluing points.

#include "rauzy/algebra.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rauzy {

/// z -> t + s z with exact coefficients.
struct AffineMap {
    AlgNum t;
    AlgNum s;

    AlgNum operator()(const AlgNum& z) const { return t + s * z; }
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

AffineMap identity_map(FamilyParam p);
/// outer ∘ inner
AffineMap compose(const AffineMap& outer, const AffineMap& inner);
/// maps[0] ∘ maps[1] ∘ ... ∘ maps[n-1]; identity for an empty sequence.
AffineMap compose(std::span<const AffineMap> maps, FamilyParam p);

/// g_{2k+1}(z) = −1 − kα³ + α³z and g_{2k}(z) = α − 1 + (a−1−k)α³ + α²z, for 0 <= i <= 2a−2.
/// Throws std::out_of_range otherwise.
AffineMap g_map(int i, FamilyParam p);
/// f_1(z) = α⁻¹ − 1 + α⁻¹z, f_2(z) = −(a−1)α + α⁻¹z, f_3(z) = 1 − α + z.
/// Throws std::out_of_range for j outside 1..3.
AffineMap f_map(int j, FamilyParam p);

struct KeyPoints {
    AlgNum u;  // −1
    AlgNum v;  // −(a−1)α − α⁻¹
    AlgNum w;  // −1 − α³
    /// even_glue[k] = g_{2k}(w) = g_{2k+1}(v) = −1 − α² − kα³ − (a−1)α⁴, k = 0..a−2
    std::vector<AlgNum> even_glue;
    /// odd_glue[k] = g_{2k+1}(u) = g_{2k+2}(v) = −1 − (k+1)α³, k = 0..a−2
    std::vector<AlgNum> odd_glue;
};

/// Builds the key points and checks every gluing identity exactly; throws
/// std::logic_error if one fails.
KeyPoints key_points(FamilyParam p);

/// Even g-indices other than 2a−2 act on the sub-piece whose third digit is not a−1, and
/// g_0, g_1 map onto its complement, so such an index cannot be followed by 0 or 1.
bool may_follow(int b, int next, FamilyParam p);
/// Throws std::invalid_argument naming the first position that breaks the follow rule or
/// the digit range.
void check_gcode(std::span<const int> code, FamilyParam p);

/// Code preperiod then period repeated.
struct PeriodicCode {
    std::vector<int> preperiod;
    std::vector<int> period;

    std::vector<int> take(std::size_t n) const;
};

/// Uniformly random digit at each step among those allowed after the previous one.
std::vector<int> random_gcode(std::size_t n, std::mt19937_64& rng, FamilyParam p);

struct GCodeEval {
    AlgNum exact;                // g_{b1} ∘ ... ∘ g_{bn}(x0)
    std::complex<double> point;  // embedded
    double trunc_bound;          // |alpha|^{2n} C, distance to the limit point
};

/// Bound C on 2·diam of the piece, from 4·max|z| over seeded random depth-10 codes.
double diameter_bound(const Embedding& e);

/// Evaluates the first n digits of code exactly from the right. Throws on follow-rule
/// violations and when code is shorter than n.
GCodeEval eval_gcode(std::span<const int> code, std::size_t n, const AlgNum& x0, const Embedding& e,
                     double C);
/// The g maps embedded once, for bulk sampling in long double arithmetic.
class NumericGMaps {
public:
    explicit NumericGMaps(const Embedding& e);
    /// g_{b1} ∘ ... ∘ g_{bn}(w) for the whole code; no follow-rule check.
    std::complex<double> eval(std::span<const int> code) const;

private:
    std::vector<std::complex<long double>> t_, s_;
    std::complex<long double> x0_;
};

struct DisjointnessReport {
    double min_distance;
    std::complex<double> closest_a, closest_b;
    double trunc_bound;
};

/// Samples g_i(X_i) and g_j(X_j) with random valid codes and reports their closest
/// approach. Throws std::invalid_argument if i == j or either index is out of range.
DisjointnessReport piece_disjointness_witness(int i, int j, std::size_t depth, std::size_t samples,
                                              std::uint64_t seed, const Embedding& e);

}  // namespace rauzy
