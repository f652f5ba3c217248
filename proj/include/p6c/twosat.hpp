#pragma once

#include <optional>
#include <string>
#include <vector>

namespace p6c {

// Literal: variable id with polarity.
struct Lit {
    int var;
    bool neg;
};
inline Lit pos(int v) { return {v, false}; }
inline Lit neg(int v) { return {v, true}; }

// 2-SAT instance. Every clause has exactly two literal slots; unit clauses
// are encoded as a duplicated literal. Duplicate clauses are allowed.
class TwoSatInstance {
public:
    explicit TwoSatInstance(int vars = 0) : vars_(vars) {}

    int vars() const { return vars_; }
    int new_var() { return vars_++; }

    void add_clause(Lit a, Lit b) { clauses_.push_back({a, b}); }
    void add_unit(Lit a) { add_clause(a, a); }

    const std::vector<std::pair<Lit, Lit>>& clauses() const { return clauses_; }

private:
    int vars_;
    std::vector<std::pair<Lit, Lit>> clauses_;
};

using BoolAssignment = std::vector<bool>;

// Satisfying assignment via the implication-graph / SCC method, or nullopt.
// Deterministic: fixed vertex order in the SCC pass.
std::optional<BoolAssignment> solve(const TwoSatInstance& inst);

// True iff every clause has a true literal.
bool verify(const TwoSatInstance& inst, const BoolAssignment& asg);

// DIMACS-CNF restricted to width-2 clauses (debugging aid).
std::string to_dimacs(const TwoSatInstance& inst);
TwoSatInstance from_dimacs(const std::string& text);

} // namespace p6c
