#pragma once

#include "twoseq/calculus.hpp"
#include "twoseq/models.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace twoseq {

class SemanticsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Row-major adjacency: r[a][b] iff a R b.
using Relation2 = std::vector<std::vector<bool>>;

// K, D: edges; T: reflexive closure; K4: transitive closure; S4: both.
Relation2 accessibility(const GraphModel& m, SystemId sys);
bool isSerial(const GraphModel& m);
void validateModel(const GraphModel& m);

bool forces(const GraphModel& m, SystemId sys, std::size_t node, const Formula& f);

// Partial map from positions to nodes; absent keys are undefined.
using Rho = std::map<SeqPos, std::size_t>;

bool satisfiesLeft(const GraphModel& m, SystemId sys, const Rho& rho, const PFormula& pf);
bool satisfiesRight(const GraphModel& m, SystemId sys, const Rho& rho, const PFormula& pf);
bool sequentHolds(const GraphModel& m, SystemId sys, const Rho& rho, const Sequent& s);

// rho{pos/t}; an empty t leaves pos undefined.
Rho substitute(const Rho& rho, const SeqPos& pos, std::optional<std::size_t> t);

// Domain downward closed, defined steps along the accessibility relation,
// total for D, T and S4; D also needs a serial model.
bool admissible(const GraphModel& m, SystemId sys, const Rho& rho, const std::set<SeqPos>& positions);

// Calls `f` on every admissible map over the prefix closure of `positions`
// (the empty position is always included and always defined); stops when f returns false.
void forEachAdmissible(const GraphModel& m, SystemId sys, const std::set<SeqPos>& positions,
                       const std::function<bool(const Rho&)>& f);
std::vector<Rho> admissibleAssignments(const GraphModel& m, SystemId sys, const std::set<SeqPos>& positions);

std::set<SeqPos> inizOf(const Sequent& s);

// 2 to maxNodes nodes, each ordered pair an edge with probability `density`;
// D models get a successor added to every sink.
GraphModel randomModel(std::mt19937_64& rng, SystemId sys, const std::set<std::string>& atoms,
                       std::size_t maxNodes = 6, double density = 0.4);

struct Counterexample {
    std::variant<GraphModel, LassoWord> model;
    Sequent sequent;
    std::vector<std::pair<std::string, std::string>> assignment;
};

struct Verdict {
    bool valid = true;
    std::size_t modelsTried = 0;
    std::optional<Counterexample> counterexample;
};

// Checks the conclusion of every node of `p` on `budget` random models.
Verdict soundnessFuzz(const Proof& p, SystemId sys, std::size_t budget, std::uint64_t seed);
Verdict fuzzSequent(const Sequent& s, SystemId sys, std::size_t budget, std::uint64_t seed);

// Exhaustive over admissible maps on one model.
std::optional<Rho> findFalsifying(const GraphModel& m, SystemId sys, const Sequent& s);

std::string renderRho(const Rho& rho);

} // namespace twoseq
