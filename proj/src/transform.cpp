#include "twoseq/transform.hpp"

#include <map>

namespace twoseq {

FreshTokenSource::FreshTokenSource(TokenSet used, std::string stem)
    : used_(std::move(used)), stem_(std::move(stem)) {}

Token FreshTokenSource::next() {
    for (;;) {
        Token t(stem_ + std::to_string(counter_++));
        if (used_.insert(t).second) return t;
    }
}

Position emptyPosition(Family f) {
    switch (f) {
    case Family::Seq: return SeqPos{};
    case Family::Set: return SetPos{};
    case Family::Ltl: return LtlPos{};
    case Family::Past: return PastPos{};
    }
    return SeqPos{};
}

namespace {

using PosFn = std::function<Position(const Position&)>;

Sequent mapSequent(const Sequent& s, const PosFn& f) {
    Sequent r = s;
    for (PFormula& pf : r.ant) pf.pos = f(pf.pos);
    for (PFormula& pf : r.suc) pf.pos = f(pf.pos);
    return r;
}

Position relativeSeq(const PosFn& f, const Position& alpha, const Position& beta) {
    SeqPos a = std::get<SeqPos>(f(alpha));
    SeqPos ab = std::get<SeqPos>(f(concat(std::get<SeqPos>(alpha), std::get<SeqPos>(beta))));
    if (!isPrefix(a, ab)) throw TransformError("prefix replacement separated a base from its extension");
    return dropPrefix(ab, a);
}

bool anyIndAx(const Proof& p) {
    if (p->rule == Rule::IndAx) return true;
    for (const Proof& q : p->premises)
        if (anyIndAx(q)) return true;
    return false;
}

SystemId permissiveSystem(const Proof& p) {
    const Sequent& s = p->conclusion;
    const PFormula& pf = s.ant.empty() ? s.suc.front() : s.ant.front();
    switch (familyOf(pf.pos)) {
    case Family::Seq: return SystemId::S4;
    case Family::Set: return SystemId::S42;
    case Family::Ltl: return anyIndAx(p) ? SystemId::LTL_IndAx : SystemId::LTL;
    case Family::Past: return SystemId::LTLP;
    }
    return SystemId::S4;
}

void requireLocal(const Proof& p, SystemId sys) {
    if (!checkRuleInstance(*p, sys).empty()) throw TransformError("ill-formed proof");
    for (const Proof& q : p->premises) requireLocal(q, sys);
}

// Top-down: each eigen token gets a unique temporary name "#k" that no script can spell.
Proof tempNames(const Proof& p, const PosFn& f, std::size_t& counter) {
    const ProofNode& n = *p;
    RuleParams np = n.params;
    if (n.params.alpha) np.alpha = f(*n.params.alpha);
    if (n.params.formula) np.formula->pos = f(n.params.formula->pos);
    if (n.params.alpha && n.params.beta) {
        if (familyOf(*n.params.alpha) == Family::Seq) np.beta = relativeSeq(f, *n.params.alpha, *n.params.beta);
        else np.beta = f(*n.params.beta);
    }
    PosFn g = f;
    if (isEigenRule(n.rule) && n.params.x && n.params.alpha) {
        Token x = *n.params.x;
        Token nx("#" + std::to_string(counter++));
        np.x = nx;
        if (familyOf(*n.params.alpha) == Family::Seq) {
            SeqPos from = append(std::get<SeqPos>(*n.params.alpha), x);
            SeqPos to = append(std::get<SeqPos>(*n.params.alpha), nx);
            g = [f, from, to](const Position& q) {
                return f(prefixReplace(std::get<SeqPos>(q), from, to));
            };
        } else {
            g = [f, x, nx](const Position& q) { return f(renameToken(q, x, nx)); };
        }
    }
    std::vector<Proof> prem;
    for (const Proof& q : n.premises) prem.push_back(tempNames(q, g, counter));
    return makeNode(n.rule, np, mapSequent(n.conclusion, f), std::move(prem));
}

void eigenPostOrder(const Proof& p, std::vector<Token>& out) {
    for (const Proof& q : p->premises) eigenPostOrder(q, out);
    if (isEigenRule(p->rule) && p->params.x) out.push_back(*p->params.x);
}

void renameAll(TokenSet& s, const std::map<Token, Token>& m) {
    TokenSet r;
    for (const Token& t : s) {
        auto it = m.find(t);
        r.insert(it == m.end() ? t : it->second);
    }
    s = std::move(r);
}

Position renameTokens(const Position& p, const std::map<Token, Token>& m) {
    Position r = p;
    std::visit([&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, SeqPos>) {
            for (Token& t : v.items) {
                auto it = m.find(t);
                if (it != m.end()) t = it->second;
            }
        } else if constexpr (std::is_same_v<V, SetPos>) {
            renameAll(v.items, m);
        } else if constexpr (std::is_same_v<V, LtlPos>) {
            renameAll(v.future, m);
        } else {
            renameAll(v.future, m);
            renameAll(v.past, m);
        }
    }, r);
    return r;
}

Proof renameImpl(const Proof& p, const TokenSet& avoid, std::optional<SystemId> sys, bool check) {
    if (check) requireLocal(p, sys ? *sys : permissiveSystem(p));
    std::size_t counter = 0;
    Proof tmp = tempNames(p, [](const Position& q) { return q; }, counter);
    std::vector<Token> order;
    eigenPostOrder(tmp, order);
    TokenSet used = avoid;
    for (const Token& t : tokensOf(tmp))
        if (t.name.empty() || t.name[0] != '#') used.insert(t);
    FreshTokenSource fresh(used);
    std::map<Token, Token> names;
    for (const Token& t : order) names[t] = fresh.next();
    PositionMap m;
    m.abs = [&names](const Position& q) { return renameTokens(q, names); };
    m.rel = [&names](const Position&, const Position& b) { return renameTokens(b, names); };
    m.eigen = [&names](const Token& t) {
        auto it = names.find(t);
        return it == names.end() ? t : it->second;
    };
    return mapProof(tmp, m);
}

Family proofFamily(const Proof& p) {
    const Sequent& s = p->conclusion;
    return familyOf((s.ant.empty() ? s.suc.front() : s.ant.front()).pos);
}

} // namespace

Proof mapProof(const Proof& p, const PositionMap& m) {
    const ProofNode& n = *p;
    RuleParams np = n.params;
    if (n.params.alpha) np.alpha = m.abs(*n.params.alpha);
    if (n.params.formula) np.formula->pos = m.abs(n.params.formula->pos);
    if (n.params.alpha && n.params.beta && m.rel) np.beta = m.rel(*n.params.alpha, *n.params.beta);
    if (n.params.x && m.eigen) np.x = m.eigen(*n.params.x);
    std::vector<Proof> prem;
    for (const Proof& q : n.premises) prem.push_back(mapProof(q, m));
    return makeNode(n.rule, np, mapSequent(n.conclusion, m.abs), std::move(prem));
}

Proof renameEigen(const Proof& p, std::optional<SystemId> sys) {
    return renameImpl(p, {}, sys, true);
}

Proof freshen(const Proof& p, const TokenSet& avoid, std::optional<SystemId> sys) {
    return renameImpl(p, avoid, sys, true);
}

Proof prefixReplaceProof(const Proof& p, const SeqPos& source, const SeqPos& target) {
    if (proofFamily(p) != Family::Seq) throw TransformError("prefix replacement needs sequence positions");
    TokenSet avoid = tokensOf(Position(source));
    TokenSet t = tokensOf(Position(target));
    avoid.insert(t.begin(), t.end());
    Proof q = renameImpl(p, avoid, std::nullopt, false);
    PosFn f = [source, target](const Position& pos) {
        return Position(prefixReplace(std::get<SeqPos>(pos), source, target));
    };
    PositionMap m;
    m.abs = f;
    m.rel = [f](const Position& a, const Position& b) { return relativeSeq(f, a, b); };
    return renameImpl(mapProof(q, m), {}, std::nullopt, false);
}

Proof liftProof(const Proof& p, const Position& beta) {
    Family fam = proofFamily(p);
    if (familyOf(beta) != fam) throw TransformError("lift position family differs from the proof's");
    PositionMap m;
    m.rel = [](const Position&, const Position& b) { return b; };
    switch (fam) {
    case Family::Seq: {
        SeqPos b = std::get<SeqPos>(beta);
        m.abs = [b](const Position& q) { return Position(concat(b, std::get<SeqPos>(q))); };
        break;
    }
    case Family::Set: {
        SetPos b = std::get<SetPos>(beta);
        m.abs = [b](const Position& q) {
            SetPos u = std::get<SetPos>(q);
            u.items.insert(b.items.begin(), b.items.end());
            return Position(u);
        };
        break;
    }
    case Family::Ltl: {
        LtlPos b = std::get<LtlPos>(beta);
        m.abs = [b](const Position& q) { return Position(ltlAdd(std::get<LtlPos>(q), b)); };
        break;
    }
    case Family::Past:
        throw TransformError("lift is not defined for past positions");
    }
    Proof q = renameImpl(p, tokensOf(beta), std::nullopt, false);
    return renameImpl(mapProof(q, m), {}, std::nullopt, false);
}

Proof necessitate(const Proof& p, SystemId sys) {
    Family fam = familyOf(sys);
    Position e = emptyPosition(fam);
    const Sequent& s = p->conclusion;
    if (!s.ant.empty() || s.suc.size() != 1 || !(s.suc[0].pos == e))
        throw TransformError("necessitation needs an end sequent |- A @ " + render(e));
    if (fam == Family::Past) throw TransformError("lift is not defined for past positions");
    Token x = FreshTokenSource(tokensOf(p), "n").next();
    Position bx;
    switch (fam) {
    case Family::Seq: bx = SeqPos({x}); break;
    case Family::Set: bx = SetPos({x}); break;
    default: bx = LtlPos{0, {x}}; break;
    }
    Proof lifted = liftProof(p, bx);
    RuleParams rp;
    rp.alpha = e;
    rp.x = x;
    return renameImpl(apply(sys, Rule::BoxR, rp, {lifted}), {}, sys, false);
}

Proof composeMP(const Proof& pAB, const Proof& pA, SystemId sys) {
    const Sequent& sab = pAB->conclusion;
    const Sequent& sa = pA->conclusion;
    if (sab.suc.empty() || sab.suc.front().f.op() != Op::Imp)
        throw TransformError("composeMP: first proof does not end with an implication first in the succedent");
    if (sa.suc.empty()) throw TransformError("composeMP: second proof has an empty succedent");
    const PFormula& ab = sab.suc.front();
    const PFormula& a = sa.suc.front();
    if (!(ab.pos == a.pos)) throw TransformError("composeMP: positions differ");
    if (!(ab.f.arg() == a.f)) throw TransformError("composeMP: antecedent of the implication differs from the minor premise");
    PFormula b{ab.f.right(), ab.pos};
    Proof imp = apply(sys, Rule::ImpL, {}, {axiom(b), axiom(a)});
    RuleParams ex;
    ex.index = 0;
    Proof swapped = apply(sys, Rule::ExL, ex, {imp});
    Proof cut1 = apply(sys, Rule::Cut, {}, {pA, swapped});
    Proof cut2 = apply(sys, Rule::Cut, {}, {pAB, cut1});
    Sequent want = cut2->conclusion;
    want.suc.pop_back();
    want.suc.insert(want.suc.begin(), b);
    return structuralBridge(cut2, want);
}

Proof indToAxiom(const Proof& p) {
    std::vector<Proof> prem;
    for (const Proof& q : p->premises) prem.push_back(indToAxiom(q));
    if (p->rule == Rule::PInd) throw TransformError("IndAx translation covers LTL proofs only");
    if (p->rule != Rule::Ind) return makeNode(p->rule, p->params, p->conclusion, std::move(prem));

    const SystemId sys = SystemId::LTL_IndAx;
    const RuleParams& ip = p->params;
    const Position s = *ip.alpha;
    const Token x = *ip.x;
    const Formula a = p->conclusion.ant.back().f;
    const Position sx = ltlAdd(std::get<LtlPos>(s), LtlPos{0, {x}});
    const Position st = ltlAdd(std::get<LtlPos>(s), std::get<LtlPos>(*ip.beta));
    const Formula stepF = Formula::box(Formula::imp(a, Formula::next(a)));
    const Formula indF = Formula::imp(Formula::conj(a, stepF), Formula::box(a));

    RuleParams rs;
    rs.alpha = sx;
    Proof n1 = apply(sys, Rule::NextR, rs, {prem[0]});
    Proof n2 = apply(sys, Rule::ImpR, {}, {n1});
    RuleParams rb;
    rb.alpha = s;
    rb.x = x;
    Proof n3 = apply(sys, Rule::BoxR, rb, {n2});

    RuleParams leafP;
    leafP.formula = PFormula{indF, s};
    Proof leaf = apply(sys, Rule::IndAx, leafP, {});
    Proof andR = apply(sys, Rule::AndR, {}, {axiom({a, s}), axiom({stepF, s})});
    Proof impL = apply(sys, Rule::ImpL, {}, {axiom({Formula::box(a), s}), andR});
    Proof unpacked = apply(sys, Rule::Cut, {}, {leaf, impL});

    Proof cut1 = apply(sys, Rule::Cut, {}, {n3, unpacked});
    Sequent boxFirst = cut1->conclusion;
    boxFirst.suc.pop_back();
    boxFirst.suc.insert(boxFirst.suc.begin(), PFormula{Formula::box(a), s});
    Proof b1 = structuralBridge(cut1, boxFirst);

    RuleParams rl;
    rl.alpha = s;
    rl.beta = *ip.beta;
    Proof inst = apply(sys, Rule::BoxL, rl, {axiom({a, st})});
    Proof cut2 = apply(sys, Rule::Cut, {}, {b1, inst});
    return structuralBridge(cut2, p->conclusion);
}

} // namespace twoseq
