#include "twoseq/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace twoseq {

bool isUnary(Op op) {
    return op != Op::Atom && !isBinary(op);
}

bool isBinary(Op op) {
    return op == Op::And || op == Op::Or || op == Op::Imp;
}

bool isTemporal(Op op) {
    return op == Op::Next || isPastOp(op);
}

bool isPastOp(Op op) {
    return op == Op::Prev || op == Op::Hist || op == Op::Once;
}

static std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Formula Formula::atom(std::string name) {
    Formula f;
    std::size_t h = mix(0, std::hash<std::string>{}(name));
    f.n_ = std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}, {}, h});
    return f;
}

Formula Formula::unary(Op op, Formula a) {
    if (!isUnary(op))
        throw std::invalid_argument("not a unary connective");
    Formula f;
    std::size_t h = mix(static_cast<std::size_t>(op) + 1, a.hash());
    f.n_ = std::make_shared<const Node>(Node{op, {}, std::move(a), {}, h});
    return f;
}

Formula Formula::binary(Op op, Formula a, Formula b) {
    if (!isBinary(op))
        throw std::invalid_argument("not a binary connective");
    Formula f;
    std::size_t h = mix(mix(static_cast<std::size_t>(op) + 1, a.hash()), b.hash());
    f.n_ = std::make_shared<const Node>(Node{op, {}, std::move(a), std::move(b), h});
    return f;
}

Op Formula::op() const { return n_->op; }
const std::string& Formula::name() const { return n_->atom; }
const Formula& Formula::arg() const { return n_->a; }
const Formula& Formula::right() const { return n_->b; }
std::size_t Formula::hash() const { return n_ ? n_->hash : 0; }

bool Formula::operator==(const Formula& o) const {
    if (n_ == o.n_) return true;
    if (!n_ || !o.n_) return false;
    if (n_->hash != o.n_->hash || n_->op != o.n_->op) return false;
    if (n_->op == Op::Atom) return n_->atom == o.n_->atom;
    if (!(n_->a == o.n_->a)) return false;
    return !isBinary(n_->op) || n_->b == o.n_->b;
}

std::strong_ordering Formula::operator<=>(const Formula& o) const {
    if (n_ == o.n_) return std::strong_ordering::equal;
    if (!n_) return std::strong_ordering::less;
    if (!o.n_) return std::strong_ordering::greater;
    if (auto c = n_->op <=> o.n_->op; c != 0) return c;
    if (n_->op == Op::Atom) return n_->atom <=> o.n_->atom;
    if (auto c = n_->a <=> o.n_->a; c != 0) return c;
    if (isBinary(n_->op)) return n_->b <=> o.n_->b;
    return std::strong_ordering::equal;
}

std::strong_ordering PFormula::operator<=>(const PFormula& o) const {
    if (auto c = f <=> o.f; c != 0) return c;
    if (pos < o.pos) return std::strong_ordering::less;
    if (o.pos < pos) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::size_t degree(const Formula& f) {
    switch (f.op()) {
    case Op::Atom: return 0;
    case Op::Not:
    case Op::Box:
    case Op::Dia: return degree(f.arg()) + 1;
    case Op::And:
    case Op::Or:
    case Op::Imp: return std::max(degree(f.arg()), degree(f.right())) + 1;
    default: throw DegreeError("degree undefined for temporal formula");
    }
}

std::size_t modalDepth(const Formula& f) {
    if (f.op() == Op::Atom) return 0;
    if (isBinary(f.op())) return std::max(modalDepth(f.arg()), modalDepth(f.right()));
    return modalDepth(f.arg()) + (f.op() == Op::Not ? 0 : 1);
}

std::size_t formulaSize(const Formula& f) {
    if (f.op() == Op::Atom) return 1;
    if (isBinary(f.op())) return 1 + formulaSize(f.arg()) + formulaSize(f.right());
    return 1 + formulaSize(f.arg());
}

// Positions delta with base <= delta <= target in the extension order of the family.
static std::vector<Position> extensionsBetween(const Position& base, const Position& target) {
    std::vector<Position> out;
    if (familyOf(base) != familyOf(target)) return out;
    if (auto* b = std::get_if<SeqPos>(&base)) {
        const SeqPos& t = std::get<SeqPos>(target);
        if (!isPrefix(*b, t)) return out;
        for (std::size_t k = b->size(); k <= t.size(); ++k)
            out.push_back(SeqPos(std::vector<Token>(t.items.begin(), t.items.begin() + k)));
        return out;
    }
    if (auto* b = std::get_if<SetPos>(&base)) {
        const SetPos& t = std::get<SetPos>(target);
        if (!std::includes(t.items.begin(), t.items.end(), b->items.begin(), b->items.end()))
            return out;
        std::vector<Token> extra;
        for (const Token& x : t.items)
            if (!b->items.count(x)) extra.push_back(x);
        std::size_t n = extra.size() < 16 ? extra.size() : 16;
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            SetPos d = *b;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) d.items.insert(extra[i]);
            out.push_back(d);
        }
        return out;
    }
    throw std::invalid_argument("subformula relation is defined for modal positions only");
}

static bool subAt(const PFormula& cand, const Formula& f, const Position& pos) {
    if (cand.f == f && cand.pos == pos) return true;
    switch (f.op()) {
    case Op::Atom: return false;
    case Op::Not: return subAt(cand, f.arg(), pos);
    case Op::And:
    case Op::Or:
    case Op::Imp: return subAt(cand, f.arg(), pos) || subAt(cand, f.right(), pos);
    case Op::Box:
    case Op::Dia:
        for (const Position& d : extensionsBetween(pos, cand.pos))
            if (subAt(cand, f.arg(), d)) return true;
        return false;
    default: throw std::invalid_argument("subformula relation is defined for the modal fragment only");
    }
}

bool isSubformula(const PFormula& cand, const PFormula& root) {
    return subAt(cand, root.f, root.pos);
}

TokenSet tokensOf(const std::vector<PFormula>& v) {
    TokenSet out;
    for (const PFormula& pf : v) {
        TokenSet t = tokensOf(pf.pos);
        out.insert(t.begin(), t.end());
    }
    return out;
}

TokenSet tokensOf(const Sequent& s) {
    TokenSet out = tokensOf(s.ant);
    TokenSet b = tokensOf(s.suc);
    out.insert(b.begin(), b.end());
    return out;
}

std::vector<Position> positionsOf(const Sequent& s) {
    std::vector<Position> out;
    for (const PFormula& pf : s.ant) out.push_back(pf.pos);
    for (const PFormula& pf : s.suc) out.push_back(pf.pos);
    return out;
}

std::vector<SeqPos> seqPositionsOf(const std::vector<PFormula>& v) {
    std::vector<SeqPos> out;
    for (const PFormula& pf : v)
        if (auto* p = std::get_if<SeqPos>(&pf.pos)) out.push_back(*p);
    return out;
}

static void collectAtoms(const Formula& f, std::set<std::string>& out) {
    if (f.op() == Op::Atom) {
        out.insert(f.name());
        return;
    }
    collectAtoms(f.arg(), out);
    if (isBinary(f.op())) collectAtoms(f.right(), out);
}

std::set<std::string> atomsOf(const Formula& f) {
    std::set<std::string> out;
    collectAtoms(f, out);
    return out;
}

std::set<std::string> atomsOf(const Sequent& s) {
    std::set<std::string> out;
    for (const PFormula& pf : s.ant) collectAtoms(pf.f, out);
    for (const PFormula& pf : s.suc) collectAtoms(pf.f, out);
    return out;
}

std::vector<PFormula> cana(const std::vector<PFormula>& v, const PFormula& pf) {
    std::vector<PFormula> out;
    for (const PFormula& q : v)
        if (!(q == pf)) out.push_back(q);
    return out;
}

static int precedence(Op op) {
    switch (op) {
    case Op::Imp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Atom: return 5;
    default: return 4;
    }
}

static const char* spelling(Op op) {
    switch (op) {
    case Op::Not: return "~";
    case Op::Box: return "box ";
    case Op::Dia: return "dia ";
    case Op::Next: return "X ";
    case Op::Prev: return "Y ";
    case Op::Hist: return "H ";
    case Op::Once: return "P ";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Imp: return " -> ";
    default: return "";
    }
}

static void renderInto(std::ostringstream& os, const Formula& f, int minPrec) {
    int p = precedence(f.op());
    bool paren = p < minPrec;
    if (paren) os << '(';
    if (f.op() == Op::Atom) {
        os << f.name();
    } else if (isUnary(f.op())) {
        os << spelling(f.op());
        renderInto(os, f.arg(), 4);
    } else if (f.op() == Op::Imp) {
        renderInto(os, f.arg(), p + 1);
        os << spelling(f.op());
        renderInto(os, f.right(), p);
    } else {
        renderInto(os, f.arg(), p);
        os << spelling(f.op());
        renderInto(os, f.right(), p + 1);
    }
    if (paren) os << ')';
}

std::string render(const Formula& f) {
    std::ostringstream os;
    renderInto(os, f, 0);
    return os.str();
}

std::string render(const PFormula& pf) {
    return render(pf.f) + " @ " + render(pf.pos);
}

static void renderList(std::ostringstream& os, const std::vector<PFormula>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << render(v[i]);
    }
}

std::string render(const Sequent& s) {
    std::ostringstream os;
    renderList(os, s.ant);
    os << (s.ant.empty() ? "|-" : " |-");
    if (!s.suc.empty()) os << ' ';
    renderList(os, s.suc);
    return os.str();
}

} // namespace twoseq
