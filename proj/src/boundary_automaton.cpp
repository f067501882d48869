#include "rauzy/boundary_automaton.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rauzy {

BoundaryAutomaton::BoundaryAutomaton(FamilyParam p, std::vector<AlgNum> states, std::vector<AutEdge> edges)
    : param_(p), states_(std::move(states)), edges_(std::move(edges)) {
    const int a = p.a();
    auto zero = index_of(AlgNum::zero(p));
    if (!zero) throw std::invalid_argument("automaton has no zero state");
    initial_ = *zero;
    table_.assign(states_.size() * a * a, -1);
    const AlgNum alpha2(p, 0, 0, 1);
    for (const auto& edge : edges_) {
        if (edge.from >= states_.size() || edge.to >= states_.size()) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (states_[edge.from].mul_alpha_inv() + alpha2 * edge.d != states_[edge.to]) {
            throw std::logic_error("transition " + states_[edge.from].triple() + " -> " +
                                   states_[edge.to].triple() + " breaks the update rule");
        }
        for (auto [e, e2] : edge.labels) {
            if (e - e2 != edge.d) throw std::logic_error("label does not match edge difference");
            table_[(edge.from * a + e) * a + e2] = static_cast<int>(edge.to);
        }
    }
}

std::optional<std::size_t> BoundaryAutomaton::index_of(const AlgNum& x) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), x, TripleLess{});
    if (it == states_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

std::optional<std::size_t> BoundaryAutomaton::step(std::size_t state, int e, int e2) const {
    const int a = param_.a();
    if (e < 0 || e >= a || e2 < 0 || e2 >= a) {
        throw std::out_of_range("label (" + std::to_string(e) + "," + std::to_string(e2) +
                                ") outside the digit range");
    }
    const int t = table_.at((state * a + e) * a + e2);
    if (t < 0) return std::nullopt;
    return static_cast<std::size_t>(t);
}

std::vector<std::pair<DigitPair, std::size_t>> BoundaryAutomaton::outgoing(std::size_t state) const {
    std::vector<std::pair<DigitPair, std::size_t>> out;
    for (int e = 0; e < param_.a(); ++e) {
        for (int e2 = 0; e2 < param_.a(); ++e2) {
            if (auto t = step(state, e, e2)) out.push_back({{e, e2}, *t});
        }
    }
    return out;
}

RunResult BoundaryAutomaton::run_prefix(const std::vector<DigitPair>& prefix) const {
    std::size_t s = initial_;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        auto t = step(s, prefix[i].first, prefix[i].second);
        if (!t) return {std::nullopt, i};
        s = *t;
    }
    return {s, std::nullopt};
}

namespace {

std::string label_list(const std::vector<DigitPair>& labels) {
    std::string out;
    for (auto [e, e2] : labels) {
        if (!out.empty()) out += ' ';
        out += '(' + std::to_string(e) + ',' + std::to_string(e2) + ')';
    }
    return out;
}

}  // namespace

std::string BoundaryAutomaton::to_dot() const {
    std::ostringstream os;
    os << "digraph boundary_automaton {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    for (std::size_t i = 0; i < states_.size(); ++i) {
        os << "  \"" << states_[i].poly() << "\" [tooltip=\"" << states_[i].triple() << "\"";
        if (i == initial_) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (const auto& edge : edges_) {
        os << "  \"" << states_[edge.from].poly() << "\" -> \"" << states_[edge.to].poly()
           << "\" [label=\"d=" << edge.d << ": " << label_list(edge.labels) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string BoundaryAutomaton::to_json() const {
    using nlohmann::json;
    json j;
    j["a"] = param_.a();
    j["initial"] = initial_;
    json states = json::array();
    for (const auto& s : states_) {
        states.push_back({{"triple", {s[0].get_si(), s[1].get_si(), s[2].get_si()}}, {"poly", s.poly()}});
    }
    j["states"] = std::move(states);
    json edges = json::array();
    for (const auto& edge : edges_) {
        json labels = json::array();
        for (auto [e, e2] : edge.labels) labels.push_back({e, e2});
        edges.push_back({{"from", edge.from}, {"d", edge.d}, {"to", edge.to}, {"labels", std::move(labels)}});
    }
    j["transitions"] = std::move(edges);
    return j.dump(2) + "\n";
}

BoundaryAutomaton build_automaton(FamilyParam p, const Embedding& e, std::size_t state_cap) {
    const int a = p.a();
    const double mod = e.abs_alpha();
    const double bound = (a - 1) * mod * mod * mod / (1.0 - mod) + 1e-9;
    constexpr int kParry = ParryState::kCount;

    std::map<AlgNum, std::size_t, TripleLess> value_id;
    std::vector<AlgNum> values;
    std::vector<bool> value_ok;
    auto intern = [&](const AlgNum& v) {
        auto [it, fresh] = value_id.emplace(v, values.size());
        if (fresh) {
            values.push_back(v);
            value_ok.push_back(std::abs(embed(v, e)) <= bound);
        }
        return it->second;
    };

    struct Node {
        std::size_t value;
        int p1, p2;
    };
    struct Move {
        int e, e2;
        std::size_t to;
    };
    std::vector<Node> nodes;
    std::vector<std::vector<Move>> moves;
    std::unordered_map<std::size_t, std::size_t> node_id;
    auto key = [](std::size_t v, int p1, int p2) { return (v * kParry + p1) * kParry + p2; };

    const int p0 = ParryState{}.index();
    nodes.push_back({intern(AlgNum::zero(p)), p0, p0});
    node_id[key(nodes[0].value, p0, p0)] = 0;
    moves.emplace_back();

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const Node node = nodes[cur];
        const AlgNum shifted = values[node.value].mul_alpha_inv();
        for (int e1 = 0; e1 < a; ++e1) {
            auto s1 = parry_step(ParryState::from_index(node.p1), e1, p);
            if (!s1) continue;
            for (int e2 = 0; e2 < a; ++e2) {
                auto s2 = parry_step(ParryState::from_index(node.p2), e2, p);
                if (!s2) continue;
                const std::size_t v = intern(shifted + AlgNum(p, 0, 0, e1 - e2));
                if (!value_ok[v]) continue;
                const std::size_t k = key(v, s1->index(), s2->index());
                auto [it, fresh] = node_id.emplace(k, nodes.size());
                if (fresh) {
                    if (nodes.size() >= state_cap) {
                        throw ClosureOverflow("automaton closure exceeded " + std::to_string(state_cap) +
                                              " states");
                    }
                    nodes.push_back({v, s1->index(), s2->index()});
                    moves.emplace_back();
                    queue.push_back(it->second);
                }
                moves[cur].push_back({e1, e2, it->second});
            }
        }
    }

    // Keep only nodes that lie on an infinite path from the start.
    std::vector<bool> keep(nodes.size(), true);
    for (bool changed = true; changed;) {
        std::vector<bool> live(nodes.size(), false);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!keep[i]) continue;
            live[i] = std::any_of(moves[i].begin(), moves[i].end(), [&](const Move& m) { return keep[m.to]; });
        }
        std::vector<bool> reach(nodes.size(), false);
        std::deque<std::size_t> q;
        if (live[0]) {
            reach[0] = true;
            q.push_back(0);
        }
        while (!q.empty()) {
            const std::size_t i = q.front();
            q.pop_front();
            for (const Move& m : moves[i]) {
                if (live[m.to] && !reach[m.to]) {
                    reach[m.to] = true;
                    q.push_back(m.to);
                }
            }
        }
        changed = reach != keep;
        keep = std::move(reach);
    }

    std::set<AlgNum, TripleLess> kept_values;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (keep[i]) kept_values.insert(values[nodes[i].value]);
    }
    std::vector<AlgNum> states(kept_values.begin(), kept_values.end());
    auto sid = [&](std::size_t node) {
        const AlgNum& v = values[nodes[node].value];
        return static_cast<std::size_t>(std::lower_bound(states.begin(), states.end(), v, TripleLess{}) -
                                        states.begin());
    };

    std::map<std::tuple<std::size_t, int, std::size_t>, std::set<DigitPair>> projected;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!keep[i]) continue;
        for (const Move& m : moves[i]) {
            if (keep[m.to]) projected[{sid(i), m.e - m.e2, sid(m.to)}].insert({m.e, m.e2});
        }
    }
    std::vector<AutEdge> edges;
    for (auto& [k, labels] : projected) {
        edges.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), {labels.begin(), labels.end()}});
    }
    return BoundaryAutomaton(p, std::move(states), std::move(edges));
}

std::vector<AlgNum> expected_states(FamilyParam p) {
    const int a = p.a();
    std::vector<AlgNum> s{AlgNum::zero(p)};
    const AlgNum positive[] = {
        AlgNum(p, 0, 1, 0),  AlgNum(p, 0, 0, 1),      AlgNum(p, 0, 1, -1),     AlgNum(p, 1, 0, a - 1),
        AlgNum(p, 1, 0, a - 2), AlgNum(p, 1, -1, a - 1), AlgNum(p, 1, -2, a),
    };
    for (const auto& x : positive) {
        s.push_back(x);
        s.push_back(-x);
    }
    std::sort(s.begin(), s.end(), TripleLess{});
    return s;
}

bool verify_equality(const BoundaryAutomaton& aut, const PeriodicWord& s1, const PeriodicWord& s2) {
    const FamilyParam p = aut.param();
    for (const PeriodicWord* w : {&s1, &s2}) {
        if (w->period.empty()) throw std::invalid_argument("verify_equality needs eventually periodic input");
        if (!is_admissible(*w, p)) throw std::invalid_argument("verify_equality needs admissible input");
    }
    const int lo = std::min(s1.lowest_index, s2.lowest_index);
    const int head_end = std::max(s1.lowest_index + static_cast<int>(s1.preperiod.size()),
                                  s2.lowest_index + static_cast<int>(s2.preperiod.size()));
    const std::size_t period = std::lcm(s1.period.size(), s2.period.size());

    std::size_t state = aut.initial();
    int i = lo;
    for (; i < head_end; ++i) {
        auto t = aut.step(state, s1.at(i), s2.at(i));
        if (!t) return false;
        state = *t;
    }
    // Past the head both streams repeat with the common period, so the state at the start
    // of each period determines the rest; a repeated state closes an infinite path.
    std::vector<bool> seen(aut.states().size(), false);
    while (!seen[state]) {
        seen[state] = true;
        for (std::size_t j = 0; j < period; ++j, ++i) {
            auto t = aut.step(state, s1.at(i), s2.at(i));
            if (!t) return false;
            state = *t;
        }
    }
    return true;
}

}  // namespace rauzy
