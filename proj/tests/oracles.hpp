#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include "twoseq/ltl.hpp"
#include "twoseq/semantics.hpp"

#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace twoseq;

// Nodes reachable from n by a path whose length satisfies the system's Θ_M:
// exactly one edge (K, D), at most one (T), at least one (K4), any (S4).
inline std::set<std::size_t> thetaTargets(const GraphModel& m, SystemId sys, std::size_t n) {
    std::vector<std::vector<std::size_t>> adj(m.nodes);
    for (const auto& [a, b] : m.edges) adj[a].push_back(b);
    std::set<std::size_t> one(adj[n].begin(), adj[n].end());
    if (sys == SystemId::K || sys == SystemId::D) return one;
    if (sys == SystemId::T) {
        one.insert(n);
        return one;
    }
    std::set<std::size_t> seen;
    std::deque<std::size_t> q(one.begin(), one.end());
    while (!q.empty()) {
        std::size_t a = q.front();
        q.pop_front();
        if (!seen.insert(a).second) continue;
        for (std::size_t b : adj[a]) q.push_back(b);
    }
    if (sys == SystemId::S4) seen.insert(n);
    return seen;
}

inline bool forcesRef(const GraphModel& m, SystemId sys, std::size_t n, const Formula& f) {
    switch (f.op()) {
    case Op::Atom: return n < m.valuation.size() && m.valuation[n].count(f.name());
    case Op::Not: return !forcesRef(m, sys, n, f.arg());
    case Op::And: return forcesRef(m, sys, n, f.arg()) && forcesRef(m, sys, n, f.right());
    case Op::Or: return forcesRef(m, sys, n, f.arg()) || forcesRef(m, sys, n, f.right());
    case Op::Imp: return !forcesRef(m, sys, n, f.arg()) || forcesRef(m, sys, n, f.right());
    case Op::Box:
        for (std::size_t t : thetaTargets(m, sys, n))
            if (!forcesRef(m, sys, t, f.arg())) return false;
        return true;
    case Op::Dia:
        for (std::size_t t : thetaTargets(m, sys, n))
            if (forcesRef(m, sys, t, f.arg())) return true;
        return false;
    default: return false;
    }
}

inline Formula randomFormula(std::mt19937_64& rng, int depth, const std::vector<Op>& unary,
                             const std::vector<std::string>& atoms) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 0 : 3);
    std::uniform_int_distribution<std::size_t> pa(0, atoms.size() - 1), pu(0, unary.size() - 1), pb(0, 2);
    int k = kind(rng);
    if (k == 0) return Formula::atom(atoms[pa(rng)]);
    if (k <= 2) return Formula::unary(unary[pu(rng)], randomFormula(rng, depth - 1, unary, atoms));
    static const Op bin[] = {Op::And, Op::Or, Op::Imp};
    return Formula::binary(bin[pb(rng)], randomFormula(rng, depth - 1, unary, atoms),
                           randomFormula(rng, depth - 1, unary, atoms));
}

// rho |=r box A^alpha  iff  for all t in Θ_M from rho(alpha): rho{alpha.x/t} |=r A^{alpha.x};
// with rho(alpha) undefined every substituted map is undefined at alpha.x.
inline bool sub1Agrees(const GraphModel& m, SystemId sys, const Rho& rho, const SeqPos& alpha, const Token& x,
                       const Formula& a, bool box) {
    PFormula whole{box ? Formula::box(a) : Formula::dia(a), alpha};
    SeqPos ax = append(alpha, x);
    PFormula part{a, ax};
    bool lhs = satisfiesRight(m, sys, rho, whole);
    bool rhs;
    auto it = rho.find(alpha);
    if (it == rho.end()) {
        rhs = satisfiesRight(m, sys, substitute(rho, ax, std::nullopt), part);
    } else {
        rhs = box;
        for (std::size_t t : thetaTargets(m, sys, it->second)) {
            bool v = satisfiesRight(m, sys, substitute(rho, ax, t), part);
            if (box && !v) rhs = false;
            if (!box && v) rhs = true;
        }
    }
    return lhs == rhs;
}

// rho |=r A^{alpha.beta}  iff  rho{alpha.x/rho(alpha.beta)} |=r A^{alpha.x}
inline bool sub2Agrees(const GraphModel& m, SystemId sys, const Rho& rho, const SeqPos& alpha, const SeqPos& beta,
                       const Token& x, const Formula& a) {
    SeqPos ab = concat(alpha, beta), ax = append(alpha, x);
    auto it = rho.find(ab);
    std::optional<std::size_t> t;
    if (it != rho.end()) t = it->second;
    bool lhs = satisfiesRight(m, sys, rho, PFormula{a, ab});
    bool rhs = satisfiesRight(m, sys, substitute(rho, ax, t), PFormula{a, ax});
    return lhs == rhs;
}

// Fixpoint labelling on the lasso's state graph 0 .. |prefix|+|loop|-1.
inline bool evalRef(const LassoWord& w, std::uint64_t m, const Formula& f) {
    std::size_t n = w.prefix.size() + w.loop.size();
    auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : w.prefix.size(); };
    std::function<std::vector<bool>(const Formula&)> label = [&](const Formula& g) {
        std::vector<bool> v(n);
        switch (g.op()) {
        case Op::Atom:
            for (std::size_t i = 0; i < n; ++i) v[i] = w.at(i).count(g.name()) > 0;
            return v;
        case Op::Not: {
            auto a = label(g.arg());
            for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
            return v;
        }
        case Op::And:
        case Op::Or:
        case Op::Imp: {
            auto a = label(g.arg()), b = label(g.right());
            for (std::size_t i = 0; i < n; ++i)
                v[i] = g.op() == Op::And ? (a[i] && b[i]) : g.op() == Op::Or ? (a[i] || b[i]) : (!a[i] || b[i]);
            return v;
        }
        case Op::Next: {
            auto a = label(g.arg());
            for (std::size_t i = 0; i < n; ++i) v[i] = a[succ(i)];
            return v;
        }
        case Op::Box:
        case Op::Dia: {
            auto a = label(g.arg());
            bool box = g.op() == Op::Box;
            for (std::size_t i = 0; i < n; ++i) {
                bool acc = box;
                std::size_t j = i;
                for (std::size_t k = 0; k < n; ++k, j = succ(j))
                    if (a[j] != box) acc = !box;
                v[i] = acc;
            }
            return v;
        }
        default: throw LtlError("past");
        }
    };
    std::uint64_t i = m;
    while (i >= n) i -= w.loop.size();
    return label(f)[i];
}

// The three clauses of the LTL substitution lemma; n ranges far enough to cover a full loop.
inline bool subLtlAgrees(const LassoWord& w, const TokenValuation& a, const LtlPos& s, const Token& x,
                         const LtlPos& t, const Formula& f) {
    std::uint64_t horizon = w.prefix.size() + w.loop.size() + 1;
    LtlPos sx = ltlAdd(s, LtlPos{0, {x}});
    bool all = true, some = false;
    for (std::uint64_t n = 0; n < horizon; ++n) {
        TokenValuation b = a;
        b[x] = n;
        bool v = ltlSatisfies(w, b, PFormula{f, sx});
        all = all && v;
        some = some || v;
    }
    if (ltlSatisfies(w, a, PFormula{Formula::box(f), s}) != all) return false;
    if (ltlSatisfies(w, a, PFormula{Formula::dia(f), s}) != some) return false;
    TokenValuation c = a;
    c[x] = aValue(a, t);
    return ltlSatisfies(w, a, PFormula{f, ltlAdd(s, t)}) == ltlSatisfies(w, c, PFormula{f, sx});
}

} // namespace oracle
