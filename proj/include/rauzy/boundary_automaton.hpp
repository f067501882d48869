#pragma once

// The automaton whose infinite paths are the pairs of admissible digit streams with
// equal alpha-sums. A state is the normalized partial difference
// A_k = alpha^{2-k} * sum_{i<=k} (eps_i - eps'_i) alpha^i.

#include "rauzy/algebra.hpp"
#include "rauzy/numeration.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rauzy {

using DigitPair = std::pair<int, int>;

struct AutEdge {
    std::size_t from;
    int d;  // eps - eps'
    std::size_t to;
    /// Concrete labels (eps, eps') realized by some pair of admissible streams, sorted.
    std::vector<DigitPair> labels;
};

struct RunResult {
    std::optional<std::size_t> state;        // set when the whole prefix was consumed
    std::optional<std::size_t> rejected_at;  // position of the first missing transition
    bool accepted() const { return state.has_value(); }
};

class BoundaryAutomaton {
public:
    BoundaryAutomaton(FamilyParam p, std::vector<AlgNum> states, std::vector<AutEdge> edges);

    FamilyParam param() const { return param_; }
    const std::vector<AlgNum>& states() const { return states_; }
    const std::vector<AutEdge>& edges() const { return edges_; }
    std::size_t initial() const { return initial_; }
    std::optional<std::size_t> index_of(const AlgNum& x) const;

    /// Target of the labeled transition, if it exists. Throws std::out_of_range on digits
    /// outside [0, a-1].
    std::optional<std::size_t> step(std::size_t state, int e, int e2) const;
    /// Outgoing labels of a state with their targets, sorted by label.
    std::vector<std::pair<DigitPair, std::size_t>> outgoing(std::size_t state) const;

    RunResult run_prefix(const std::vector<DigitPair>& prefix) const;

    std::string to_dot() const;
    std::string to_json() const;

private:
    FamilyParam param_;
    std::vector<AlgNum> states_;
    std::vector<AutEdge> edges_;
    std::size_t initial_;
    std::vector<int> table_;  // (state * a + e) * a + e2 -> target or -1
};

/// Raised when the closure exceeds its state cap.
class ClosureOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Breadth-first closure from 0 over (value, admissibility state of each stream),
/// keeping candidates with |embed(value)| <= (a-1)|alpha|^3/(1-|alpha|) + 1e-9, then
/// pruning dead and unreachable states and projecting onto values.
BoundaryAutomaton build_automaton(FamilyParam p, const Embedding& e, std::size_t state_cap = 200000);

/// The 15 values 0, ±α, ±α², ±(α−α²), ±(1+(a−1)α²), ±(1+(a−2)α²), ±(1−α+(a−1)α²),
/// ±(1−2α+aα²), sorted by triple.
std::vector<AlgNum> expected_states(FamilyParam p);

/// True iff the two streams have equal alpha-sums. Both must be admissible with a
/// nonempty period; throws std::invalid_argument otherwise.
bool verify_equality(const BoundaryAutomaton& aut, const PeriodicWord& s1, const PeriodicWord& s2);

}  // namespace rauzy
