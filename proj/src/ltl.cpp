#include "twoseq/ltl.hpp"

#include <set>

namespace twoseq {

const std::set<std::string>& LassoWord::at(std::uint64_t m) const {
    if (loop.empty()) throw LtlError("lasso loop must be nonempty");
    if (m < prefix.size()) return prefix[m];
    return loop[(m - prefix.size()) % loop.size()];
}

std::uint64_t aValue(const TokenValuation& a, const LtlPos& s) {
    std::uint64_t v = s.steps;
    for (const Token& x : s.future) {
        auto it = a.find(x);
        if (it != a.end()) v += it->second;
    }
    return v;
}

std::uint64_t normalizeInstant(const LassoWord& w, std::uint64_t m) {
    if (w.loop.empty()) throw LtlError("lasso loop must be nonempty");
    if (m < w.prefix.size()) return m;
    return w.prefix.size() + (m - w.prefix.size()) % w.loop.size();
}

namespace {

bool eval(const LassoWord& w, std::uint64_t m, const Formula& f) {
    switch (f.op()) {
    case Op::Atom: return w.at(m).count(f.name()) > 0;
    case Op::Not: return !eval(w, m, f.arg());
    case Op::And: return eval(w, m, f.arg()) && eval(w, m, f.right());
    case Op::Or: return eval(w, m, f.arg()) || eval(w, m, f.right());
    case Op::Imp: return !eval(w, m, f.arg()) || eval(w, m, f.right());
    case Op::Next: return eval(w, normalizeInstant(w, m + 1), f.arg());
    case Op::Box:
    case Op::Dia: {
        // from m through one full loop past the prefix covers every suffix
        std::uint64_t end = std::max<std::uint64_t>(m, w.prefix.size()) + w.loop.size();
        bool box = f.op() == Op::Box;
        for (std::uint64_t n = m; n < end; ++n)
            if (eval(w, n, f.arg()) != box) return !box;
        return box;
    }
    default: throw LtlError("ℕ-semantics has no past");
    }
}

} // namespace

bool evalAt(const LassoWord& w, std::uint64_t m, const Formula& f) {
    return eval(w, normalizeInstant(w, m), f);
}

bool ltlSatisfies(const LassoWord& w, const TokenValuation& a, const PFormula& pf) {
    const LtlPos* s = std::get_if<LtlPos>(&pf.pos);
    if (!s) throw LtlError("p-formula " + render(pf) + " is not over LTL positions");
    return evalAt(w, aValue(a, *s), pf.f);
}

bool ltlSequentHolds(const LassoWord& w, const TokenValuation& a, const Sequent& s) {
    for (const PFormula& pf : s.ant)
        if (!ltlSatisfies(w, a, pf)) return true;
    for (const PFormula& pf : s.suc)
        if (ltlSatisfies(w, a, pf)) return true;
    return false;
}

CheckReport checkLtlProof(const Proof& p, LtlVariant variant) {
    return checkProof(p, variant == LtlVariant::Ind ? SystemId::LTL : SystemId::LTL_IndAx);
}

CheckReport checkPastProof(const Proof& p) { return checkProof(p, SystemId::LTLP); }

LassoWord randomLasso(std::mt19937_64& rng, const std::set<std::string>& atoms, std::size_t maxPrefix,
                      std::size_t maxLoop) {
    std::uniform_int_distribution<std::size_t> pre(0, maxPrefix), lp(1, std::max<std::size_t>(1, maxLoop));
    std::bernoulli_distribution coin(0.5);
    auto letter = [&] {
        std::set<std::string> l;
        for (const std::string& a : atoms)
            if (coin(rng)) l.insert(a);
        return l;
    };
    LassoWord w;
    for (std::size_t i = pre(rng); i > 0; --i) w.prefix.push_back(letter());
    for (std::size_t i = lp(rng); i > 0; --i) w.loop.push_back(letter());
    return w;
}

namespace {

void collect(const Proof& p, std::vector<Sequent>& out, std::set<std::string>& seen) {
    if (seen.insert(render(p->conclusion)).second) out.push_back(p->conclusion);
    for (const Proof& q : p->premises) collect(q, out, seen);
}

Verdict fuzzMany(const std::vector<Sequent>& seqs, std::size_t budget, std::uint64_t seed, std::uint64_t bound) {
    std::set<std::string> atoms;
    TokenSet tokens;
    for (const Sequent& s : seqs) {
        for (const PFormula& pf : s.ant)
            if (!std::holds_alternative<LtlPos>(pf.pos)) throw LtlError("sequent is not over LTL positions");
        for (const PFormula& pf : s.suc)
            if (!std::holds_alternative<LtlPos>(pf.pos)) throw LtlError("sequent is not over LTL positions");
        auto a = atomsOf(s);
        atoms.insert(a.begin(), a.end());
        auto t = tokensOf(s);
        tokens.insert(t.begin(), t.end());
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> value(0, bound);
    Verdict v;
    for (std::size_t i = 0; i < budget; ++i) {
        LassoWord w = randomLasso(rng, atoms);
        TokenValuation a;
        for (const Token& x : tokens) a[x] = value(rng);
        ++v.modelsTried;
        for (const Sequent& s : seqs) {
            if (ltlSequentHolds(w, a, s)) continue;
            v.valid = false;
            Counterexample c{w, s, {}};
            for (const auto& [x, n] : a) c.assignment.emplace_back(x.name, std::to_string(n));
            v.counterexample = std::move(c);
            return v;
        }
    }
    return v;
}

} // namespace

Verdict ltlSoundnessFuzz(const Proof& p, std::size_t budget, std::uint64_t seed, std::uint64_t bound) {
    std::vector<Sequent> seqs;
    std::set<std::string> seen;
    collect(p, seqs, seen);
    return fuzzMany(seqs, budget, seed, bound);
}

Verdict ltlFuzzSequent(const Sequent& s, std::size_t budget, std::uint64_t seed, std::uint64_t bound) {
    return fuzzMany({s}, budget, seed, bound);
}

} // namespace twoseq
