#include "twoseq/semantics.hpp"

#include <set>
#include <sstream>

namespace twoseq {

namespace {

void requireSeqSystem(SystemId sys) {
    if (!isCoreModal(sys)) throw SemanticsError(std::string("no graph semantics for ") + systemName(sys));
}

bool holdsAt(const GraphModel& m, const Relation2& r, std::size_t n, const Formula& f) {
    switch (f.op()) {
    case Op::Atom: return n < m.valuation.size() && m.valuation[n].count(f.name()) > 0;
    case Op::Not: return !holdsAt(m, r, n, f.arg());
    case Op::And: return holdsAt(m, r, n, f.arg()) && holdsAt(m, r, n, f.right());
    case Op::Or: return holdsAt(m, r, n, f.arg()) || holdsAt(m, r, n, f.right());
    case Op::Imp: return !holdsAt(m, r, n, f.arg()) || holdsAt(m, r, n, f.right());
    case Op::Box:
        for (std::size_t t = 0; t < m.nodes; ++t)
            if (r[n][t] && !holdsAt(m, r, t, f.arg())) return false;
        return true;
    case Op::Dia:
        for (std::size_t t = 0; t < m.nodes; ++t)
            if (r[n][t] && holdsAt(m, r, t, f.arg())) return true;
        return false;
    default: throw SemanticsError("temporal connective " + render(f) + " has no Kripke semantics");
    }
}

const SeqPos& seqOf(const PFormula& pf) {
    const SeqPos* s = std::get_if<SeqPos>(&pf.pos);
    if (!s) throw SemanticsError("p-formula " + render(pf) + " is not over sequence positions");
    return *s;
}

SeqPos parentOf(const SeqPos& p) {
    return SeqPos(std::vector<Token>(p.items.begin(), p.items.end() - 1));
}

bool partialAllowed(SystemId sys) { return sys == SystemId::K || sys == SystemId::K4; }

} // namespace

void validateModel(const GraphModel& m) {
    if (m.nodes == 0) throw SemanticsError("model has no nodes");
    if (m.root >= m.nodes) throw SemanticsError("root out of range");
    for (const auto& [a, b] : m.edges)
        if (a >= m.nodes || b >= m.nodes) throw SemanticsError("edge endpoint out of range");
    if (m.valuation.size() > m.nodes) throw SemanticsError("valuation names an unknown node");
}

Relation2 accessibility(const GraphModel& m, SystemId sys) {
    requireSeqSystem(sys);
    validateModel(m);
    Relation2 r(m.nodes, std::vector<bool>(m.nodes, false));
    for (const auto& [a, b] : m.edges) r[a][b] = true;
    if (sys == SystemId::K4 || sys == SystemId::S4)
        for (std::size_t k = 0; k < m.nodes; ++k)
            for (std::size_t i = 0; i < m.nodes; ++i)
                if (r[i][k])
                    for (std::size_t j = 0; j < m.nodes; ++j)
                        if (r[k][j]) r[i][j] = true;
    if (sys == SystemId::T || sys == SystemId::S4)
        for (std::size_t i = 0; i < m.nodes; ++i) r[i][i] = true;
    return r;
}

bool isSerial(const GraphModel& m) {
    std::vector<bool> has(m.nodes, false);
    for (const auto& e : m.edges)
        if (e.first < m.nodes) has[e.first] = true;
    for (bool b : has)
        if (!b) return false;
    return true;
}

bool forces(const GraphModel& m, SystemId sys, std::size_t node, const Formula& f) {
    Relation2 r = accessibility(m, sys);
    if (node >= m.nodes) throw SemanticsError("node out of range");
    return holdsAt(m, r, node, f);
}

bool satisfiesLeft(const GraphModel& m, SystemId sys, const Rho& rho, const PFormula& pf) {
    auto it = rho.find(seqOf(pf));
    return it != rho.end() && forces(m, sys, it->second, pf.f);
}

bool satisfiesRight(const GraphModel& m, SystemId sys, const Rho& rho, const PFormula& pf) {
    auto it = rho.find(seqOf(pf));
    return it == rho.end() || forces(m, sys, it->second, pf.f);
}

bool sequentHolds(const GraphModel& m, SystemId sys, const Rho& rho, const Sequent& s) {
    Relation2 r = accessibility(m, sys);
    for (const PFormula& a : s.ant) {
        auto it = rho.find(seqOf(a));
        if (it == rho.end() || !holdsAt(m, r, it->second, a.f)) return true;
    }
    for (const PFormula& b : s.suc) {
        auto it = rho.find(seqOf(b));
        if (it == rho.end() || holdsAt(m, r, it->second, b.f)) return true;
    }
    return false;
}

Rho substitute(const Rho& rho, const SeqPos& pos, std::optional<std::size_t> t) {
    Rho out = rho;
    if (t) out[pos] = *t;
    else out.erase(pos);
    return out;
}

std::set<SeqPos> inizOf(const Sequent& s) {
    std::vector<SeqPos> ps = seqPositionsOf(s.ant);
    std::vector<SeqPos> more = seqPositionsOf(s.suc);
    ps.insert(ps.end(), more.begin(), more.end());
    std::set<SeqPos> out = initials(ps);
    out.insert(SeqPos{});
    return out;
}

bool admissible(const GraphModel& m, SystemId sys, const Rho& rho, const std::set<SeqPos>& positions) {
    Relation2 r = accessibility(m, sys);
    if (sys == SystemId::D && !isSerial(m)) return false;
    for (const auto& [pos, node] : rho) {
        if (node >= m.nodes) return false;
        if (pos.empty()) continue;
        auto par = rho.find(parentOf(pos));
        if (par == rho.end() || !r[par->second][node]) return false;
    }
    if (!partialAllowed(sys))
        for (const SeqPos& p : positions)
            if (!rho.count(p)) return false;
    return true;
}

void forEachAdmissible(const GraphModel& m, SystemId sys, const std::set<SeqPos>& positions,
                       const std::function<bool(const Rho&)>& f) {
    Relation2 r = accessibility(m, sys);
    if (sys == SystemId::D && !isSerial(m)) return;
    std::vector<SeqPos> order;
    {
        std::vector<SeqPos> ps(positions.begin(), positions.end());
        std::set<SeqPos> closed = initials(ps);
        closed.insert(SeqPos{});
        order.assign(closed.begin(), closed.end());   // prefixes sort first
    }
    Rho rho;
    bool stop = false;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (stop) return;
        if (i == order.size()) {
            if (!f(rho)) stop = true;
            return;
        }
        const SeqPos& p = order[i];
        if (p.empty()) {
            for (std::size_t n = 0; n < m.nodes && !stop; ++n) {
                rho[p] = n;
                go(i + 1);
            }
            rho.erase(p);
            return;
        }
        auto par = rho.find(parentOf(p));
        if (par == rho.end()) {
            go(i + 1);
            return;
        }
        std::size_t from = par->second;
        for (std::size_t n = 0; n < m.nodes && !stop; ++n) {
            if (!r[from][n]) continue;
            rho[p] = n;
            go(i + 1);
        }
        rho.erase(p);
        if (partialAllowed(sys) && !stop) go(i + 1);
    };
    go(0);
}

std::vector<Rho> admissibleAssignments(const GraphModel& m, SystemId sys, const std::set<SeqPos>& positions) {
    std::vector<Rho> out;
    forEachAdmissible(m, sys, positions, [&](const Rho& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

GraphModel randomModel(std::mt19937_64& rng, SystemId sys, const std::set<std::string>& atoms,
                       std::size_t maxNodes, double density) {
    std::uniform_int_distribution<std::size_t> size(2, std::max<std::size_t>(2, maxNodes));
    std::bernoulli_distribution edge(density), val(0.5);
    GraphModel m;
    m.nodes = size(rng);
    for (std::size_t a = 0; a < m.nodes; ++a)
        for (std::size_t b = 0; b < m.nodes; ++b)
            if (edge(rng)) m.edges.emplace_back(a, b);
    if (sys == SystemId::D) {
        std::uniform_int_distribution<std::size_t> pick(0, m.nodes - 1);
        std::vector<bool> has(m.nodes, false);
        for (const auto& e : m.edges) has[e.first] = true;
        for (std::size_t a = 0; a < m.nodes; ++a)
            if (!has[a]) m.edges.emplace_back(a, pick(rng));
    }
    m.valuation.assign(m.nodes, {});
    for (std::size_t n = 0; n < m.nodes; ++n)
        for (const std::string& a : atoms)
            if (val(rng)) m.valuation[n].insert(a);
    return m;
}

std::optional<Rho> findFalsifying(const GraphModel& m, SystemId sys, const Sequent& s) {
    std::optional<Rho> found;
    forEachAdmissible(m, sys, inizOf(s), [&](const Rho& rho) {
        if (sequentHolds(m, sys, rho, s)) return true;
        found = rho;
        return false;
    });
    return found;
}

std::string renderRho(const Rho& rho) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [p, n] : rho) {
        os << (first ? "" : ", ") << render(p) << " -> " << n;
        first = false;
    }
    os << '}';
    return os.str();
}

namespace {

Verdict fuzzMany(const std::vector<Sequent>& seqs, SystemId sys, std::size_t budget, std::uint64_t seed) {
    requireSeqSystem(sys);
    std::set<std::string> atoms;
    for (const Sequent& s : seqs) {
        auto a = atomsOf(s);
        atoms.insert(a.begin(), a.end());
    }
    std::mt19937_64 rng(seed);
    Verdict v;
    for (std::size_t i = 0; i < budget; ++i) {
        GraphModel m = randomModel(rng, sys, atoms);
        ++v.modelsTried;
        for (const Sequent& s : seqs) {
            if (auto rho = findFalsifying(m, sys, s)) {
                v.valid = false;
                Counterexample c{m, s, {}};
                for (const auto& [p, n] : *rho) c.assignment.emplace_back(render(p), std::to_string(n));
                v.counterexample = std::move(c);
                return v;
            }
        }
    }
    return v;
}

void collectSequents(const Proof& p, std::vector<Sequent>& out, std::set<std::string>& seen) {
    if (seen.insert(render(p->conclusion)).second) out.push_back(p->conclusion);
    for (const Proof& q : p->premises) collectSequents(q, out, seen);
}

} // namespace

Verdict soundnessFuzz(const Proof& p, SystemId sys, std::size_t budget, std::uint64_t seed) {
    std::vector<Sequent> seqs;
    std::set<std::string> seen;
    collectSequents(p, seqs, seen);
    return fuzzMany(seqs, sys, budget, seed);
}

Verdict fuzzSequent(const Sequent& s, SystemId sys, std::size_t budget, std::uint64_t seed) {
    return fuzzMany({s}, sys, budget, seed);
}

} // namespace twoseq
