#include "twoseq/calculus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace twoseq {

const char* systemName(SystemId s) {
    switch (s) {
    case SystemId::K: return "K";
    case SystemId::D: return "D";
    case SystemId::T: return "T";
    case SystemId::K4: return "K4";
    case SystemId::S4: return "S4";
    case SystemId::S42: return "S42";
    case SystemId::LTL: return "LTL";
    case SystemId::LTL_IndAx: return "LTL_IndAx";
    case SystemId::LTLP: return "LTLP";
    }
    return "?";
}

const std::vector<SystemId>& allSystems() {
    static const std::vector<SystemId> all = {SystemId::K,  SystemId::D,   SystemId::T,
                                              SystemId::K4, SystemId::S4,  SystemId::S42,
                                              SystemId::LTL, SystemId::LTL_IndAx, SystemId::LTLP};
    return all;
}

std::optional<SystemId> systemFromName(const std::string& name) {
    for (SystemId s : allSystems())
        if (name == systemName(s)) return s;
    if (name == "S4.2") return SystemId::S42;
    if (name == "LTL^P") return SystemId::LTLP;
    return std::nullopt;
}

Family familyOf(SystemId s) {
    switch (s) {
    case SystemId::S42: return Family::Set;
    case SystemId::LTL:
    case SystemId::LTL_IndAx: return Family::Ltl;
    case SystemId::LTLP: return Family::Past;
    default: return Family::Seq;
    }
}

bool isCoreModal(SystemId s) {
    return familyOf(s) == Family::Seq;
}

bool isLtlSystem(SystemId s) {
    return s == SystemId::LTL || s == SystemId::LTL_IndAx;
}

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
    std::size_t arity;
};

const RuleInfo kRules[] = {
    {Rule::Ax, "ax", 0},       {Rule::Cut, "cut", 2},     {Rule::WL, "wL", 1},
    {Rule::WR, "wR", 1},       {Rule::CL, "cL", 1},       {Rule::CR, "cR", 1},
    {Rule::ExL, "exL", 1},     {Rule::ExR, "exR", 1},     {Rule::NotL, "notL", 1},
    {Rule::NotR, "notR", 1},   {Rule::AndL1, "andL1", 1}, {Rule::AndL2, "andL2", 1},
    {Rule::AndR, "andR", 2},   {Rule::OrL, "orL", 2},     {Rule::OrR1, "orR1", 1},
    {Rule::OrR2, "orR2", 1},   {Rule::ImpL, "impL", 2},   {Rule::ImpR, "impR", 1},
    {Rule::BoxL, "boxL", 1},   {Rule::BoxR, "boxR", 1},   {Rule::DiaL, "diaL", 1},
    {Rule::DiaR, "diaR", 1},   {Rule::NextL, "nextL", 1}, {Rule::NextR, "nextR", 1},
    {Rule::PrevL, "prevL", 1}, {Rule::PrevR, "prevR", 1}, {Rule::HistL, "hisL", 1},
    {Rule::HistR, "hisR", 1},  {Rule::OnceL, "onceL", 1}, {Rule::OnceR, "onceR", 1},
    {Rule::Ind, "ind", 1},     {Rule::PInd, "pind", 1},   {Rule::IndAx, "indax", 0},
};

} // namespace

const char* ruleName(Rule r) {
    for (const RuleInfo& i : kRules)
        if (i.rule == r) return i.name;
    return "?";
}

std::optional<Rule> ruleFromName(const std::string& name) {
    for (const RuleInfo& i : kRules)
        if (name == i.name) return i.rule;
    return std::nullopt;
}

std::size_t ruleArity(Rule r) {
    for (const RuleInfo& i : kRules)
        if (i.rule == r) return i.arity;
    return 0;
}

bool isStructural(Rule r) {
    return r == Rule::WL || r == Rule::WR || r == Rule::CL || r == Rule::CR || r == Rule::ExL ||
           r == Rule::ExR;
}

bool isEigenRule(Rule r) {
    return r == Rule::BoxR || r == Rule::DiaL || r == Rule::HistR || r == Rule::OnceL ||
           r == Rule::Ind || r == Rule::PInd;
}

bool isLeftRule(Rule r) {
    switch (r) {
    case Rule::WL: case Rule::CL: case Rule::ExL: case Rule::NotL: case Rule::AndL1:
    case Rule::AndL2: case Rule::OrL: case Rule::ImpL: case Rule::BoxL: case Rule::DiaL:
    case Rule::NextL: case Rule::PrevL: case Rule::HistL: case Rule::OnceL:
        return true;
    default:
        return false;
    }
}

bool isRightRule(Rule r) {
    switch (r) {
    case Rule::WR: case Rule::CR: case Rule::ExR: case Rule::NotR: case Rule::AndR:
    case Rule::OrR1: case Rule::OrR2: case Rule::ImpR: case Rule::BoxR: case Rule::DiaR:
    case Rule::NextR: case Rule::PrevR: case Rule::HistR: case Rule::OnceR:
        return true;
    default:
        return false;
    }
}

Proof makeNode(Rule r, RuleParams params, Sequent conclusion, std::vector<Proof> premises) {
    return std::make_shared<const ProofNode>(
        ProofNode{r, std::move(params), std::move(conclusion), std::move(premises)});
}

std::size_t height(const Proof& p) {
    std::size_t h = 0;
    for (const Proof& q : p->premises) h = std::max(h, height(q));
    return h + 1;
}

std::size_t proofSize(const Proof& p) {
    std::size_t n = 1;
    for (const Proof& q : p->premises) n += proofSize(q);
    return n;
}

bool isCutFree(const Proof& p) {
    if (p->rule == Rule::Cut) return false;
    for (const Proof& q : p->premises)
        if (!isCutFree(q)) return false;
    return true;
}

static void collectTokens(const Proof& p, TokenSet& out) {
    TokenSet t = tokensOf(p->conclusion);
    out.insert(t.begin(), t.end());
    const RuleParams& r = p->params;
    if (r.alpha) { TokenSet a = tokensOf(*r.alpha); out.insert(a.begin(), a.end()); }
    if (r.beta) { TokenSet a = tokensOf(*r.beta); out.insert(a.begin(), a.end()); }
    if (r.x) out.insert(*r.x);
    if (r.formula) { TokenSet a = tokensOf(r.formula->pos); out.insert(a.begin(), a.end()); }
    for (const Proof& q : p->premises) collectTokens(q, out);
}

TokenSet tokensOf(const Proof& p) {
    TokenSet out;
    collectTokens(p, out);
    return out;
}

bool proofEqual(const Proof& a, const Proof& b) {
    if (a == b) return true;
    if (a->rule != b->rule || !(a->params == b->params) || !(a->conclusion == b->conclusion) ||
        a->premises.size() != b->premises.size())
        return false;
    for (std::size_t i = 0; i < a->premises.size(); ++i)
        if (!proofEqual(a->premises[i], b->premises[i])) return false;
    return true;
}

static std::string joinMessages(const std::vector<Violation>& v) {
    std::string s;
    for (const Violation& x : v) {
        if (!s.empty()) s += "; ";
        s += x.condition + ": " + x.message;
    }
    return s;
}

RuleError::RuleError(Rule r, std::vector<Violation> v)
    : std::runtime_error(std::string("rule ") + ruleName(r) + " not applicable: " + joinMessages(v)),
      violations(std::move(v)) {}

BridgeError::BridgeError(const std::string& msg, std::optional<PFormula> m)
    : std::runtime_error(msg), missing(std::move(m)) {}

ExpandError::ExpandError(const std::string& p, const std::string& msg)
    : std::runtime_error("at " + p + ": " + msg), path(p) {}

namespace {

bool ruleAllowed(Rule r, SystemId sys) {
    switch (r) {
    case Rule::NextL: case Rule::NextR:
        return isLtlSystem(sys) || sys == SystemId::LTLP;
    case Rule::Ind:
        return sys == SystemId::LTL || sys == SystemId::LTLP;
    case Rule::IndAx:
        return sys == SystemId::LTL_IndAx;
    case Rule::PrevL: case Rule::PrevR: case Rule::HistL: case Rule::HistR:
    case Rule::OnceL: case Rule::OnceR: case Rule::PInd:
        return sys == SystemId::LTLP;
    default:
        return true;
    }
}

bool connectiveAllowed(Op op, SystemId sys) {
    if (op == Op::Next) return isLtlSystem(sys) || sys == SystemId::LTLP;
    if (isPastOp(op)) return sys == SystemId::LTLP;
    return true;
}

const Formula* firstDisallowed(const Formula& f, SystemId sys) {
    if (!connectiveAllowed(f.op(), sys)) return &f;
    if (f.op() == Op::Atom) return nullptr;
    if (const Formula* g = firstDisallowed(f.arg(), sys)) return g;
    if (isBinary(f.op())) return firstDisallowed(f.right(), sys);
    return nullptr;
}

std::optional<Position> extend(const Position& base, const Position& rel, bool minus) {
    if (auto* b = std::get_if<SeqPos>(&base)) {
        if (auto* r = std::get_if<SeqPos>(&rel)) return concat(*b, *r);
        return std::nullopt;
    }
    if (auto* b = std::get_if<SetPos>(&base)) {
        if (auto* r = std::get_if<SetPos>(&rel)) {
            SetPos u = *b;
            u.items.insert(r->items.begin(), r->items.end());
            return u;
        }
        return std::nullopt;
    }
    if (auto* b = std::get_if<LtlPos>(&base)) {
        if (auto* r = std::get_if<LtlPos>(&rel)) return ltlAdd(*b, *r);
        return std::nullopt;
    }
    const PastPos& b = std::get<PastPos>(base);
    if (auto* r = std::get_if<LtlPos>(&rel))
        return minus ? pastSub(b, r->steps, r->future) : pastAdd(b, r->steps, r->future);
    return std::nullopt;
}

Position extendToken(const Position& base, const Token& x, bool minus) {
    switch (familyOf(base)) {
    case Family::Seq: return append(std::get<SeqPos>(base), x);
    case Family::Set: {
        SetPos u = std::get<SetPos>(base);
        u.items.insert(x);
        return u;
    }
    case Family::Ltl: return ltlAdd(std::get<LtlPos>(base), LtlPos{0, {x}});
    case Family::Past:
        return minus ? pastSub(std::get<PastPos>(base), 0, {x}) : pastAdd(std::get<PastPos>(base), 0, {x});
    }
    return base;
}

Position step(const Position& base, bool minus) {
    if (auto* b = std::get_if<LtlPos>(&base)) return ltlAdd(*b, LtlPos{1, {}});
    const PastPos& b = std::get<PastPos>(base);
    return minus ? pastSub(b, 1, {}) : pastAdd(b, 1, {});
}

class Checker {
public:
    Checker(SystemId sys, std::vector<Violation>& out) : sys_(sys), fam_(familyOf(sys)), out_(out) {}

    void fail(const std::string& cond, const std::string& msg) {
        out_.push_back({cond, msg});
        ok_ = false;
    }
    bool ok() const { return ok_; }
    SystemId sys() const { return sys_; }
    Family fam() const { return fam_; }

    bool needAlpha(const RuleParams& p) {
        if (!p.alpha) { fail("params", "missing parameter alpha"); return false; }
        if (familyOf(*p.alpha) != fam_) { fail("family", "alpha " + render(*p.alpha) + " has the wrong position family"); return false; }
        return true;
    }
    bool needBeta(const RuleParams& p) {
        if (!p.beta) { fail("params", "missing parameter beta"); return false; }
        Family want = fam_ == Family::Past ? Family::Ltl : fam_;
        if (familyOf(*p.beta) != want) { fail("family", "beta " + render(*p.beta) + " has the wrong position family"); return false; }
        return true;
    }
    bool needX(const RuleParams& p) {
        if (!p.x) { fail("params", "missing parameter x"); return false; }
        return true;
    }
    bool needOther(const RuleParams& p) {
        if (!p.other) { fail("params", "missing parameter other"); return false; }
        return true;
    }

private:
    SystemId sys_;
    Family fam_;
    std::vector<Violation>& out_;
    bool ok_ = true;
};

std::vector<PFormula> concatList(const std::vector<PFormula>& a, const std::vector<PFormula>& b) {
    std::vector<PFormula> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

std::vector<PFormula> butLast(const std::vector<PFormula>& v) {
    return std::vector<PFormula>(v.begin(), v.end() - 1);
}

std::vector<PFormula> butFirst(const std::vector<PFormula>& v) {
    return std::vector<PFormula>(v.begin() + 1, v.end());
}

std::vector<PFormula> withFront(const PFormula& pf, const std::vector<PFormula>& v) {
    std::vector<PFormula> r;
    r.reserve(v.size() + 1);
    r.push_back(pf);
    r.insert(r.end(), v.begin(), v.end());
    return r;
}

std::vector<PFormula> withBack(const std::vector<PFormula>& v, const PFormula& pf) {
    std::vector<PFormula> r = v;
    r.push_back(pf);
    return r;
}

std::vector<SeqPos> seqPositions(const std::vector<PFormula>& a, const std::vector<PFormula>& b) {
    std::vector<SeqPos> r = seqPositionsOf(a);
    std::vector<SeqPos> s = seqPositionsOf(b);
    r.insert(r.end(), s.begin(), s.end());
    return r;
}

// β-shape and K/K4 context demand for □⊢ and ⊢◇ over sequence positions.
void boxLeftConstraint(Checker& c, const SeqPos& alpha, const SeqPos& beta,
                       const std::vector<PFormula>& gamma, const std::vector<PFormula>& delta) {
    std::size_t n = beta.size();
    switch (c.sys()) {
    case SystemId::K:
    case SystemId::D:
        if (n != 1) c.fail("beta-shape", "beta " + render(beta) + " must be a singleton in " + systemName(c.sys()));
        break;
    case SystemId::T:
        if (n > 1) c.fail("beta-shape", "beta " + render(beta) + " must be empty or a singleton in T");
        break;
    case SystemId::K4:
        if (n == 0) c.fail("beta-shape", "beta must be nonempty in K4");
        break;
    default:
        break;
    }
    if (c.sys() == SystemId::K || c.sys() == SystemId::K4) {
        SeqPos ab = concat(alpha, beta);
        bool found = false;
        for (const SeqPos& p : seqPositions(gamma, delta))
            if (isPrefix(ab, p)) found = true;
        if (!found)
            c.fail("context-demand", "no formula in the context has a position starting with " + render(ab));
    }
}

// Eigen condition; `ctxA`/`ctxS` are the side formulas of the conclusion.
void eigenConstraint(Checker& c, const Position& alpha, const Token& x,
                     const std::vector<PFormula>& ctxA, const std::vector<PFormula>& ctxS) {
    switch (c.fam()) {
    case Family::Seq: {
        SeqPos ax = append(std::get<SeqPos>(alpha), x);
        auto iniz = initials(seqPositions(ctxA, ctxS));
        if (iniz.count(ax))
            c.fail("eigen", "eigenposition " + render(ax) + " is an initial segment of a context position");
        break;
    }
    case Family::Set: {
        TokenSet t = tokensOf(ctxA);
        TokenSet u = tokensOf(ctxS);
        if (t.count(x) || u.count(x)) c.fail("freshness", "token " + x.name + " occurs in the context");
        break;
    }
    default: {
        TokenSet t = tokensOf(ctxA);
        TokenSet u = tokensOf(ctxS);
        if (tokensOf(alpha).count(x)) c.fail("freshness", "token " + x.name + " occurs in " + render(alpha));
        else if (t.count(x) || u.count(x)) c.fail("freshness", "token " + x.name + " occurs in the context");
        break;
    }
    }
}

bool positionMatches(Checker& c, const Position& got, const std::optional<Position>& want,
                     const char* what) {
    if (!want) {
        c.fail("family", std::string("cannot form the ") + what + " position from the parameters");
        return false;
    }
    if (!(got == *want)) {
        c.fail("schema", std::string(what) + " position is " + render(got) + ", expected " + render(*want));
        return false;
    }
    return true;
}

std::optional<Sequent> compute(Checker& c, Rule r, const RuleParams& p,
                               const std::vector<const Sequent*>& prem, const Sequent* declared) {
    auto needAnt = [&](const Sequent& s, std::size_t k = 1) {
        if (s.ant.size() < k) { c.fail("schema", "premise antecedent too short"); return false; }
        return true;
    };
    auto needSuc = [&](const Sequent& s, std::size_t k = 1) {
        if (s.suc.size() < k) { c.fail("schema", "premise succedent too short"); return false; }
        return true;
    };
    bool minus = false;
    switch (r) {
    case Rule::Ax: {
        std::optional<PFormula> pf = p.formula;
        if (declared) {
            if (declared->ant.size() != 1 || declared->suc.size() != 1 || !(declared->ant[0] == declared->suc[0])) {
                c.fail("schema", "axiom must have the shape A ⊢ A");
                return std::nullopt;
            }
            if (pf && !(*pf == declared->ant[0])) {
                c.fail("schema", "axiom formula differs from the parameter");
                return std::nullopt;
            }
            pf = declared->ant[0];
        }
        if (!pf) {
            c.fail("params", "axiom needs a formula");
            return std::nullopt;
        }
        return Sequent{{*pf}, {*pf}};
    }
    case Rule::IndAx: {
        std::optional<PFormula> pf = p.formula;
        if (declared) {
            if (!declared->ant.empty() || declared->suc.size() != 1) {
                c.fail("schema", "IndAx leaf must have the shape ⊢ (A & box (A -> X A) -> box A)@s");
                return std::nullopt;
            }
            if (pf && !(*pf == declared->suc[0])) {
                c.fail("schema", "IndAx formula differs from the parameter");
                return std::nullopt;
            }
            pf = declared->suc[0];
        }
        if (!pf) {
            c.fail("params", "IndAx leaf needs a formula");
            return std::nullopt;
        }
        const Formula& f = pf->f;
        bool shape = f.op() == Op::Imp && f.arg().op() == Op::And && f.right().op() == Op::Box;
        if (shape) {
            const Formula& a = f.arg().arg();
            const Formula& st = f.arg().right();
            shape = st.op() == Op::Box && st.arg().op() == Op::Imp && st.arg().arg() == a &&
                    st.arg().right().op() == Op::Next && st.arg().right().arg() == a && f.right().arg() == a;
        }
        if (!shape) {
            c.fail("schema", "formula " + render(f) + " is not an instance of A & box (A -> X A) -> box A");
            return std::nullopt;
        }
        return Sequent{{}, {*pf}};
    }
    case Rule::Cut: {
        const Sequent& l = *prem[0];
        const Sequent& rt = *prem[1];
        if (!needSuc(l) || !needAnt(rt)) return std::nullopt;
        const PFormula& a = l.suc.front();
        if (!(a == rt.ant.back())) {
            c.fail("schema", "cut formulas differ: " + render(a) + " vs " + render(rt.ant.back()));
            return std::nullopt;
        }
        if (p.formula && !(*p.formula == a)) {
            c.fail("schema", "cut formula differs from the parameter");
            return std::nullopt;
        }
        std::vector<PFormula> g1 = l.ant, d1 = butFirst(l.suc), g2 = butLast(rt.ant), d2 = rt.suc;
        if ((c.sys() == SystemId::K || c.sys() == SystemId::K4) && familyOf(a.pos) == Family::Seq) {
            const SeqPos& al = std::get<SeqPos>(a.pos);
            auto left = initials(seqPositions(g1, cana(d1, a)));
            auto right = initials(seqPositions(cana(g2, a), d2));
            if (!left.count(al) && !right.count(al))
                c.fail("cut-constraint", "position " + render(al) +
                                             " is an initial segment of neither premise context");
        }
        return Sequent{concatList(g1, g2), concatList(d1, d2)};
    }
    case Rule::WL:
    case Rule::WR: {
        if (!p.formula) {
            c.fail("params", "weakening needs a formula");
            return std::nullopt;
        }
        Sequent s = *prem[0];
        if (r == Rule::WL) s.ant.push_back(*p.formula);
        else s.suc.insert(s.suc.begin(), *p.formula);
        return s;
    }
    case Rule::CL: {
        const Sequent& s = *prem[0];
        if (!needAnt(s, 2)) return std::nullopt;
        if (!(s.ant[s.ant.size() - 1] == s.ant[s.ant.size() - 2])) {
            c.fail("schema", "the last two antecedent formulas differ");
            return std::nullopt;
        }
        return Sequent{butLast(s.ant), s.suc};
    }
    case Rule::CR: {
        const Sequent& s = *prem[0];
        if (!needSuc(s, 2)) return std::nullopt;
        if (!(s.suc[0] == s.suc[1])) {
            c.fail("schema", "the first two succedent formulas differ");
            return std::nullopt;
        }
        return Sequent{s.ant, butFirst(s.suc)};
    }
    case Rule::ExL:
    case Rule::ExR: {
        if (!p.index) {
            c.fail("params", "exchange needs an index i");
            return std::nullopt;
        }
        Sequent s = *prem[0];
        auto& side = r == Rule::ExL ? s.ant : s.suc;
        if (*p.index + 1 >= side.size()) {
            c.fail("params", "exchange index " + std::to_string(*p.index) + " out of range");
            return std::nullopt;
        }
        std::swap(side[*p.index], side[*p.index + 1]);
        return s;
    }
    case Rule::NotL: {
        const Sequent& s = *prem[0];
        if (!needSuc(s)) return std::nullopt;
        const PFormula& a = s.suc.front();
        return Sequent{withBack(s.ant, {Formula::neg(a.f), a.pos}), butFirst(s.suc)};
    }
    case Rule::NotR: {
        const Sequent& s = *prem[0];
        if (!needAnt(s)) return std::nullopt;
        const PFormula& a = s.ant.back();
        return Sequent{butLast(s.ant), withFront({Formula::neg(a.f), a.pos}, s.suc)};
    }
    case Rule::AndL1:
    case Rule::AndL2: {
        const Sequent& s = *prem[0];
        if (!needAnt(s) || !c.needOther(p)) return std::nullopt;
        const PFormula& a = s.ant.back();
        Formula f = r == Rule::AndL1 ? Formula::conj(a.f, *p.other) : Formula::conj(*p.other, a.f);
        return Sequent{withBack(butLast(s.ant), {f, a.pos}), s.suc};
    }
    case Rule::AndR: {
        const Sequent& l = *prem[0];
        const Sequent& rt = *prem[1];
        if (!needSuc(l) || !needSuc(rt)) return std::nullopt;
        const PFormula& a = l.suc.front();
        const PFormula& b = rt.suc.front();
        if (!(a.pos == b.pos)) {
            c.fail("schema", "conjuncts sit at different positions");
            return std::nullopt;
        }
        return Sequent{concatList(l.ant, rt.ant),
                       withFront({Formula::conj(a.f, b.f), a.pos}, concatList(butFirst(l.suc), butFirst(rt.suc)))};
    }
    case Rule::OrL: {
        const Sequent& l = *prem[0];
        const Sequent& rt = *prem[1];
        if (!needAnt(l) || !needAnt(rt)) return std::nullopt;
        const PFormula& a = l.ant.back();
        const PFormula& b = rt.ant.back();
        if (!(a.pos == b.pos)) {
            c.fail("schema", "disjuncts sit at different positions");
            return std::nullopt;
        }
        return Sequent{withBack(concatList(butLast(l.ant), butLast(rt.ant)), {Formula::disj(a.f, b.f), a.pos}),
                       concatList(l.suc, rt.suc)};
    }
    case Rule::OrR1:
    case Rule::OrR2: {
        const Sequent& s = *prem[0];
        if (!needSuc(s) || !c.needOther(p)) return std::nullopt;
        const PFormula& a = s.suc.front();
        Formula f = r == Rule::OrR1 ? Formula::disj(a.f, *p.other) : Formula::disj(*p.other, a.f);
        return Sequent{s.ant, withFront({f, a.pos}, butFirst(s.suc))};
    }
    case Rule::ImpL: {
        const Sequent& l = *prem[0];
        const Sequent& rt = *prem[1];
        if (!needAnt(l) || !needSuc(rt)) return std::nullopt;
        const PFormula& b = l.ant.back();
        const PFormula& a = rt.suc.front();
        if (!(a.pos == b.pos)) {
            c.fail("schema", "implication parts sit at different positions");
            return std::nullopt;
        }
        return Sequent{withBack(concatList(butLast(l.ant), rt.ant), {Formula::imp(a.f, b.f), a.pos}),
                       concatList(l.suc, butFirst(rt.suc))};
    }
    case Rule::ImpR: {
        const Sequent& s = *prem[0];
        if (!needAnt(s) || !needSuc(s)) return std::nullopt;
        const PFormula& a = s.ant.back();
        const PFormula& b = s.suc.front();
        if (!(a.pos == b.pos)) {
            c.fail("schema", "implication parts sit at different positions");
            return std::nullopt;
        }
        return Sequent{butLast(s.ant), withFront({Formula::imp(a.f, b.f), a.pos}, butFirst(s.suc))};
    }
    case Rule::HistL:
        minus = true;
        [[fallthrough]];
    case Rule::BoxL: {
        const Sequent& s = *prem[0];
        if (!needAnt(s) || !c.needAlpha(p) || !c.needBeta(p)) return std::nullopt;
        const PFormula& a = s.ant.back();
        if (!positionMatches(c, a.pos, extend(*p.alpha, *p.beta, minus), "active formula")) return std::nullopt;
        std::vector<PFormula> g = butLast(s.ant);
        if (c.fam() == Family::Seq)
            boxLeftConstraint(c, std::get<SeqPos>(*p.alpha), std::get<SeqPos>(*p.beta), g, s.suc);
        Op op = r == Rule::BoxL ? Op::Box : Op::Hist;
        return Sequent{withBack(g, {Formula::unary(op, a.f), *p.alpha}), s.suc};
    }
    case Rule::OnceR:
        minus = true;
        [[fallthrough]];
    case Rule::DiaR: {
        const Sequent& s = *prem[0];
        if (!needSuc(s) || !c.needAlpha(p) || !c.needBeta(p)) return std::nullopt;
        const PFormula& a = s.suc.front();
        if (!positionMatches(c, a.pos, extend(*p.alpha, *p.beta, minus), "active formula")) return std::nullopt;
        std::vector<PFormula> d = butFirst(s.suc);
        if (c.fam() == Family::Seq)
            boxLeftConstraint(c, std::get<SeqPos>(*p.alpha), std::get<SeqPos>(*p.beta), s.ant, d);
        Op op = r == Rule::DiaR ? Op::Dia : Op::Once;
        return Sequent{s.ant, withFront({Formula::unary(op, a.f), *p.alpha}, d)};
    }
    case Rule::HistR:
        minus = true;
        [[fallthrough]];
    case Rule::BoxR: {
        const Sequent& s = *prem[0];
        if (!needSuc(s) || !c.needAlpha(p) || !c.needX(p)) return std::nullopt;
        const PFormula& a = s.suc.front();
        if (!positionMatches(c, a.pos, extendToken(*p.alpha, *p.x, minus), "active formula")) return std::nullopt;
        std::vector<PFormula> d = butFirst(s.suc);
        eigenConstraint(c, *p.alpha, *p.x, s.ant, d);
        Op op = r == Rule::BoxR ? Op::Box : Op::Hist;
        return Sequent{s.ant, withFront({Formula::unary(op, a.f), *p.alpha}, d)};
    }
    case Rule::OnceL:
        minus = true;
        [[fallthrough]];
    case Rule::DiaL: {
        const Sequent& s = *prem[0];
        if (!needAnt(s) || !c.needAlpha(p) || !c.needX(p)) return std::nullopt;
        const PFormula& a = s.ant.back();
        if (!positionMatches(c, a.pos, extendToken(*p.alpha, *p.x, minus), "active formula")) return std::nullopt;
        std::vector<PFormula> g = butLast(s.ant);
        eigenConstraint(c, *p.alpha, *p.x, g, s.suc);
        Op op = r == Rule::DiaL ? Op::Dia : Op::Once;
        return Sequent{withBack(g, {Formula::unary(op, a.f), *p.alpha}), s.suc};
    }
    case Rule::PrevL:
        minus = true;
        [[fallthrough]];
    case Rule::NextL: {
        const Sequent& s = *prem[0];
        if (!needAnt(s) || !c.needAlpha(p)) return std::nullopt;
        const PFormula& a = s.ant.back();
        if (!positionMatches(c, a.pos, step(*p.alpha, minus), "active formula")) return std::nullopt;
        Op op = r == Rule::NextL ? Op::Next : Op::Prev;
        return Sequent{withBack(butLast(s.ant), {Formula::unary(op, a.f), *p.alpha}), s.suc};
    }
    case Rule::PrevR:
        minus = true;
        [[fallthrough]];
    case Rule::NextR: {
        const Sequent& s = *prem[0];
        if (!needSuc(s) || !c.needAlpha(p)) return std::nullopt;
        const PFormula& a = s.suc.front();
        if (!positionMatches(c, a.pos, step(*p.alpha, minus), "active formula")) return std::nullopt;
        Op op = r == Rule::NextR ? Op::Next : Op::Prev;
        return Sequent{s.ant, withFront({Formula::unary(op, a.f), *p.alpha}, butFirst(s.suc))};
    }
    case Rule::PInd:
        minus = true;
        [[fallthrough]];
    case Rule::Ind: {
        const Sequent& s = *prem[0];
        if (!needAnt(s) || !needSuc(s) || !c.needAlpha(p) || !c.needX(p) || !c.needBeta(p)) return std::nullopt;
        const PFormula& a = s.ant.back();
        const PFormula& b = s.suc.front();
        if (!(a.f == b.f)) {
            c.fail("schema", "induction formulas differ: " + render(a.f) + " vs " + render(b.f));
            return std::nullopt;
        }
        Position sx = extendToken(*p.alpha, *p.x, minus);
        if (!positionMatches(c, a.pos, sx, "induction hypothesis")) return std::nullopt;
        if (!positionMatches(c, b.pos, step(sx, minus), "induction step")) return std::nullopt;
        std::vector<PFormula> g = butLast(s.ant), d = butFirst(s.suc);
        eigenConstraint(c, *p.alpha, *p.x, g, d);
        auto st = extend(*p.alpha, *p.beta, minus);
        return Sequent{withBack(g, {a.f, *p.alpha}), withFront({a.f, *st}, d)};
    }
    }
    return std::nullopt;
}

} // namespace

std::optional<Sequent> expectedConclusion(Rule r, const RuleParams& params,
                                          const std::vector<const Sequent*>& premises, SystemId sys,
                                          const Sequent* declared, std::vector<Violation>& out) {
    Checker c(sys, out);
    if (premises.size() != ruleArity(r)) {
        c.fail("arity", std::string(ruleName(r)) + " takes " + std::to_string(ruleArity(r)) + " premise(s), got " +
                            std::to_string(premises.size()));
        return std::nullopt;
    }
    if (!ruleAllowed(r, sys)) {
        if (sys == SystemId::LTL_IndAx && r == Rule::Ind)
            c.fail("variant", "the IndAx variant replaces the IND rule by IndAx leaves");
        else if (r == Rule::IndAx)
            c.fail("variant", "IndAx leaves belong to the IndAx variant only");
        else
            c.fail("system", std::string("rule ") + ruleName(r) + " is not part of " + systemName(sys));
        return std::nullopt;
    }
    auto s = compute(c, r, params, premises, declared);
    if (!c.ok()) return std::nullopt;
    return s;
}

static void checkFamilies(const ProofNode& node, SystemId sys, std::vector<Violation>& out) {
    Family fam = familyOf(sys);
    auto checkPF = [&](const PFormula& pf) {
        if (familyOf(pf.pos) != fam)
            out.push_back({"family", "position " + render(pf.pos) + " of " + render(pf.f) + " is not of the " +
                                         familyName(fam) + " family"});
        if (const Formula* g = firstDisallowed(pf.f, sys))
            out.push_back({"connective", "formula " + render(*g) + " uses a connective outside " +
                                             std::string(systemName(sys))});
    };
    for (const PFormula& pf : node.conclusion.ant) checkPF(pf);
    for (const PFormula& pf : node.conclusion.suc) checkPF(pf);
    if (node.params.formula) checkPF(*node.params.formula);
    if (node.params.other) {
        if (const Formula* g = firstDisallowed(*node.params.other, sys))
            out.push_back({"connective", "formula " + render(*g) + " uses a connective outside " +
                                             std::string(systemName(sys))});
    }
}

std::vector<Violation> checkRuleInstance(const ProofNode& node, SystemId sys) {
    std::vector<Violation> out;
    checkFamilies(node, sys, out);
    if (!out.empty()) return out;
    std::vector<const Sequent*> prem;
    for (const Proof& q : node.premises) prem.push_back(&q->conclusion);
    auto exp = expectedConclusion(node.rule, node.params, prem, sys, &node.conclusion, out);
    if (exp && !(*exp == node.conclusion))
        out.push_back({"schema", "conclusion does not match the rule; expected " + render(*exp)});
    return out;
}

namespace {

struct Flat {
    std::vector<const ProofNode*> nodes;
    std::vector<std::size_t> end;
    std::vector<std::string> paths;
};

void flatten(const Proof& p, const std::string& path, Flat& f) {
    std::size_t i = f.nodes.size();
    f.nodes.push_back(p.get());
    f.end.push_back(0);
    f.paths.push_back(path);
    for (std::size_t k = 0; k < p->premises.size(); ++k) flatten(p->premises[k], path + "." + std::to_string(k), f);
    f.end[i] = f.nodes.size();
}

} // namespace

CheckReport checkProof(const Proof& p, SystemId sys) {
    CheckReport rep;
    Flat f;
    flatten(p, "root", f);
    std::map<Token, std::vector<std::size_t>> occ;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        const ProofNode& n = *f.nodes[i];
        for (const Violation& v : checkRuleInstance(n, sys))
            rep.failures.push_back({f.paths[i], ruleName(n.rule), v.condition, v.message});
        for (const Token& t : tokensOf(n.conclusion)) occ[t].push_back(i);
    }
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        const ProofNode& n = *f.nodes[i];
        if (!isEigenRule(n.rule) || !n.params.x) continue;
        auto it = occ.find(*n.params.x);
        if (it == occ.end()) continue;
        for (std::size_t j : it->second) {
            if (j > i && j < f.end[i]) continue;
            std::string where = j == i ? "its own conclusion" : f.paths[j];
            rep.failures.push_back({f.paths[i], ruleName(n.rule), "token-condition",
                                    "eigen token " + n.params.x->name + " also occurs at " + where});
            break;
        }
    }
    rep.accepted = rep.failures.empty();
    return rep;
}

Proof apply(SystemId sys, Rule r, RuleParams params, std::vector<Proof> premises) {
    std::vector<Violation> v;
    std::vector<const Sequent*> prem;
    for (const Proof& q : premises) prem.push_back(&q->conclusion);
    auto s = expectedConclusion(r, params, prem, sys, nullptr, v);
    if (!s) throw RuleError(r, v);
    Proof node = makeNode(r, std::move(params), std::move(*s), std::move(premises));
    v = checkRuleInstance(*node, sys);
    if (!v.empty()) throw RuleError(r, v);
    return node;
}

Proof axiom(const PFormula& pf) {
    RuleParams p;
    return makeNode(Rule::Ax, p, Sequent{{pf}, {pf}}, {});
}

namespace {

std::size_t countOf(const std::vector<PFormula>& v, const PFormula& pf) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), pf));
}

class BridgeBuilder {
public:
    explicit BridgeBuilder(Proof p) : cur_(std::move(p)) {}

    Proof result() const { return cur_; }
    const Sequent& seq() const { return cur_->conclusion; }

    void ex(bool left, std::size_t i) {
        Sequent s = seq();
        auto& side = left ? s.ant : s.suc;
        std::swap(side[i], side[i + 1]);
        RuleParams p;
        p.index = i;
        push(left ? Rule::ExL : Rule::ExR, p, s);
    }
    void contract(bool left) {
        Sequent s = seq();
        if (left) s.ant.pop_back();
        else s.suc.erase(s.suc.begin());
        push(left ? Rule::CL : Rule::CR, {}, s);
    }
    void weaken(bool left, const PFormula& pf) {
        Sequent s = seq();
        if (left) s.ant.push_back(pf);
        else s.suc.insert(s.suc.begin(), pf);
        RuleParams p;
        p.formula = pf;
        push(left ? Rule::WL : Rule::WR, p, s);
    }

    // Moves element j to index i by adjacent exchanges.
    void move(bool left, std::size_t j, std::size_t i) {
        while (j > i) { ex(left, j - 1); --j; }
        while (j < i) { ex(left, j); ++j; }
    }

    void reshape(bool left, const std::vector<PFormula>& target) {
        auto side = [&]() -> const std::vector<PFormula>& { return left ? seq().ant : seq().suc; };
        // contract surplus copies
        for (;;) {
            const auto& v = side();
            std::optional<PFormula> dup;
            for (const PFormula& pf : v)
                if (countOf(v, pf) > std::max<std::size_t>(countOf(target, pf), 1)) { dup = pf; break; }
            if (!dup) break;
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k < v.size(); ++k)
                if (v[k] == *dup) idx.push_back(k);
            std::size_t n = v.size();
            if (left) {
                move(true, idx[idx.size() - 1], n - 1);
                move(true, idx[idx.size() - 2], n - 2);
            } else {
                move(false, idx[0], 0);
                move(false, idx[1], 1);
            }
            contract(left);
        }
        // weaken in missing copies
        for (const PFormula& pf : target)
            while (countOf(side(), pf) < countOf(target, pf)) weaken(left, pf);
        // permute into place
        for (std::size_t i = 0; i < target.size(); ++i) {
            const auto& v = side();
            std::size_t j = i;
            while (!(v[j] == target[i])) ++j;
            move(left, j, i);
        }
    }

private:
    void push(Rule r, RuleParams p, Sequent s) { cur_ = makeNode(r, std::move(p), std::move(s), {cur_}); }
    Proof cur_;
};

std::optional<PFormula> firstMissing(const std::vector<PFormula>& from, const std::vector<PFormula>& to) {
    for (const PFormula& pf : from)
        if (countOf(to, pf) == 0) return pf;
    return std::nullopt;
}

} // namespace

bool bridgeable(const Sequent& from, const Sequent& to) {
    return !firstMissing(from.ant, to.ant) && !firstMissing(from.suc, to.suc);
}

Proof structuralBridge(const Proof& p, const Sequent& to) {
    if (auto m = firstMissing(p->conclusion.ant, to.ant))
        throw BridgeError("antecedent formula " + render(*m) + " is missing from the target", m);
    if (auto m = firstMissing(p->conclusion.suc, to.suc))
        throw BridgeError("succedent formula " + render(*m) + " is missing from the target", m);
    if (p->conclusion == to) return p;
    BridgeBuilder b(p);
    b.reshape(true, to.ant);
    b.reshape(false, to.suc);
    return b.result();
}

static Proof expandNode(const ScriptNode& n, SystemId sys, const std::string& path) {
    std::vector<Proof> kids;
    for (std::size_t k = 0; k < n.premises.size(); ++k)
        kids.push_back(expandNode(n.premises[k], sys, path + "." + std::to_string(k)));
    if (n.bridge) {
        try {
            return structuralBridge(kids.at(0), *n.conclusion);
        } catch (const BridgeError& e) {
            throw ExpandError(path, std::string("bridge failed: ") + e.what());
        }
    }
    if (n.conclusion) return makeNode(n.rule, n.params, *n.conclusion, kids);
    std::vector<Violation> v;
    std::vector<const Sequent*> prem;
    for (const Proof& q : kids) prem.push_back(&q->conclusion);
    auto s = expectedConclusion(n.rule, n.params, prem, sys, nullptr, v);
    if (!s) throw ExpandError(path, "cannot synthesize the conclusion: " + joinMessages(v));
    return makeNode(n.rule, n.params, *s, kids);
}

Proof expandDoubleLines(const ProofScript& script) {
    return expandNode(script.root, script.system, "root");
}

static ScriptNode scriptOf(const Proof& p) {
    ScriptNode n;
    n.rule = p->rule;
    n.params = p->params;
    n.conclusion = p->conclusion;
    for (const Proof& q : p->premises) n.premises.push_back(scriptOf(q));
    return n;
}

ProofScript toScript(const Proof& p, SystemId sys, const std::string& name) {
    ProofScript s;
    s.system = sys;
    s.name = name;
    s.root = scriptOf(p);
    return s;
}

std::string describe(const CheckReport& r) {
    std::ostringstream os;
    os << (r.accepted ? "accepted" : "rejected") << "\n";
    for (const Failure& f : r.failures)
        os << "  at " << f.path << " [" << f.rule << "] " << f.condition << ": " << f.message << "\n";
    return os.str();
}

} // namespace twoseq
