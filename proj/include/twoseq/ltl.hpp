#pragma once

#include "twoseq/calculus.hpp"
#include "twoseq/models.hpp"
#include "twoseq/semantics.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace twoseq {

class LtlError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Tokens not in the map are worth 0.
using TokenValuation = std::map<Token, std::uint64_t>;

std::uint64_t aValue(const TokenValuation& a, const LtlPos& s);

// Equivalent instant inside prefix + one loop.
std::uint64_t normalizeInstant(const LassoWord& w, std::uint64_t m);

bool evalAt(const LassoWord& w, std::uint64_t m, const Formula& f);

// N_{a,v} |= A^s, and the sequent clause over it.
bool ltlSatisfies(const LassoWord& w, const TokenValuation& a, const PFormula& pf);
bool ltlSequentHolds(const LassoWord& w, const TokenValuation& a, const Sequent& s);

enum class LtlVariant { Ind, IndAx };

CheckReport checkLtlProof(const Proof& p, LtlVariant variant);
CheckReport checkPastProof(const Proof& p);

// prefix of 0 to 4 letters, loop of 1 to 3, letters over `atoms`.
LassoWord randomLasso(std::mt19937_64& rng, const std::set<std::string>& atoms,
                      std::size_t maxPrefix = 4, std::size_t maxLoop = 3);

// Every node conclusion under `budget` random (lasso, valuation) pairs, token values <= bound.
Verdict ltlSoundnessFuzz(const Proof& p, std::size_t budget, std::uint64_t seed, std::uint64_t bound = 4);
Verdict ltlFuzzSequent(const Sequent& s, std::size_t budget, std::uint64_t seed, std::uint64_t bound = 4);

} // namespace twoseq
