#pragma once

#include "twoseq/calculus.hpp"
#include "twoseq/parser.hpp"

#include <set>
#include <string>

namespace testing {

inline twoseq::Proof proofOf(const std::string& text) {
    return twoseq::expandDoubleLines(twoseq::parseProof(text));
}

inline bool accepted(const twoseq::Proof& p, twoseq::SystemId sys) {
    return twoseq::checkProof(p, sys).accepted;
}

inline void eigenTokens(const twoseq::Proof& p, std::multiset<std::string>& out) {
    for (const twoseq::Proof& q : p->premises) eigenTokens(q, out);
    if (twoseq::isEigenRule(p->rule) && p->params.x) out.insert(p->params.x->name);
}

inline bool eigenTokensDistinct(const twoseq::Proof& p) {
    std::multiset<std::string> s;
    eigenTokens(p, s);
    return std::set<std::string>(s.begin(), s.end()).size() == s.size();
}

} // namespace testing
