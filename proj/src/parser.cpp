#include "twoseq/parser.hpp"

#include <cctype>
#include <sstream>

namespace twoseq {

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}

namespace {

class Cursor {
public:
    Cursor(const std::string& s, int line = 1, int col = 1) : s_(s), line_(line), col_(col) {}

    bool eof() const { return i_ >= s_.size(); }
    char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
    int line() const { return line_; }
    int col() const { return col_; }

    char get() {
        char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skipWs() {
        for (;;) {
            while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
            if (comments_ && peek() == ';' && peek(1) == ';') {
                while (!eof() && peek() != '\n') get();
                continue;
            }
            return;
        }
    }

    bool match(const std::string& lit) {
        skipWs();
        if (s_.compare(i_, lit.size(), lit) != 0) return false;
        for (std::size_t k = 0; k < lit.size(); ++k) get();
        return true;
    }

    void expect(const std::string& lit) {
        if (!match(lit)) fail("expected '" + lit + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string near = eof() ? "end of input" : "'" + std::string(1, peek()) + "'";
        throw ParseError(line_, col_, msg + " near " + near);
    }

    std::string ident() {
        skipWs();
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected identifier");
        std::string out;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') out += get();
        return out;
    }

    long long integer() {
        skipWs();
        std::string out;
        if (peek() == '-') out += get();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        while (std::isdigit(static_cast<unsigned char>(peek()))) out += get();
        if (out.size() > 18) fail("integer too large");
        return std::stoll(out);
    }

    bool atIdentStart() {
        skipWs();
        return std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_';
    }

    void enableComments() { comments_ = true; }
    std::size_t offset() const { return i_; }

private:
    const std::string& s_;
    std::size_t i_ = 0;
    int line_;
    int col_;
    bool comments_ = false;
};

bool isKeyword(const std::string& w) {
    return w == "box" || w == "dia" || w == "X" || w == "Y" || w == "H" || w == "P";
}

Op keywordOp(const std::string& w) {
    if (w == "box") return Op::Box;
    if (w == "dia") return Op::Dia;
    if (w == "X") return Op::Next;
    if (w == "Y") return Op::Prev;
    if (w == "H") return Op::Hist;
    return Op::Once;
}

Formula parseImp(Cursor& c);

Formula parseUnary(Cursor& c) {
    c.skipWs();
    if (c.match("~")) return Formula::neg(parseUnary(c));
    if (c.match("(")) {
        Formula f = parseImp(c);
        c.expect(")");
        return f;
    }
    if (!c.atIdentStart()) c.fail("expected formula");
    std::string w = c.ident();
    if (isKeyword(w)) return Formula::unary(keywordOp(w), parseUnary(c));
    return Formula::atom(w);
}

Formula parseAnd(Cursor& c) {
    Formula f = parseUnary(c);
    while (c.match("&")) f = Formula::conj(f, parseUnary(c));
    return f;
}

Formula parseOr(Cursor& c) {
    Formula f = parseAnd(c);
    for (;;) {
        c.skipWs();
        if (c.peek() != '|' || c.peek(1) == '-') return f;
        c.get();
        f = Formula::disj(f, parseAnd(c));
    }
}

Formula parseImp(Cursor& c) {
    Formula f = parseOr(c);
    if (c.match("->")) return Formula::imp(f, parseImp(c));
    return f;
}

TokenSet parseTokenSet(Cursor& c) {
    c.expect("{");
    TokenSet out;
    if (c.match("}")) return out;
    do {
        out.insert(Token(c.ident()));
    } while (c.match(","));
    c.expect("}");
    return out;
}

Position parsePos(Cursor& c) {
    c.skipWs();
    if (c.match("[")) {
        SeqPos p;
        if (c.match("]")) return p;
        do {
            p.items.push_back(Token(c.ident()));
        } while (c.match(","));
        c.expect("]");
        return p;
    }
    c.skipWs();
    if (c.peek() == '{') return SetPos(parseTokenSet(c));
    if (c.match("(")) {
        int line = c.line(), col = c.col();
        long long n = c.integer();
        c.expect(";");
        TokenSet s1 = parseTokenSet(c);
        if (c.match(")")) {
            if (n < 0) throw ParseError(line, col, "ltl position needs a natural step count");
            return LtlPos{static_cast<std::uint64_t>(n), s1};
        }
        c.expect(";");
        TokenSet s2 = parseTokenSet(c);
        c.expect(")");
        try {
            return PastPos::make(n, s1, s2);
        } catch (const PositionError& e) {
            throw ParseError(line, col, e.what());
        }
    }
    c.fail("expected position");
}

PFormula parsePF(Cursor& c) {
    Formula f = parseImp(c);
    c.expect("@");
    return PFormula{f, parsePos(c)};
}

std::vector<PFormula> parsePFList(Cursor& c, bool stopAtTurnstile) {
    std::vector<PFormula> out;
    c.skipWs();
    if (c.eof() || (stopAtTurnstile && c.peek() == '|' && c.peek(1) == '-')) return out;
    do {
        out.push_back(parsePF(c));
    } while (c.match(","));
    return out;
}

void expectEnd(Cursor& c) {
    c.skipWs();
    if (!c.eof()) c.fail("unexpected trailing input");
}

Sequent parseSeq(Cursor& c) {
    Sequent s;
    s.ant = parsePFList(c, true);
    c.expect("|-");
    s.suc = parsePFList(c, false);
    return s;
}

// S-expression layer of proof scripts.

struct SExpr {
    enum Kind { List, Atom, Str, Pos } kind = Atom;
    std::string text;
    std::vector<SExpr> items;
    std::optional<Position> pos;
    int line = 0;
    int col = 0;
};

bool startsRawLtlPos(const std::string& s, std::size_t i) {
    // '(' [ws] ['-'] digits [ws] ';'
    ++i;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t d = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == d) return false;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i < s.size() && s[i] == ';';
}

SExpr readSExpr(Cursor& c, const std::string& src) {
    c.skipWs();
    SExpr e;
    e.line = c.line();
    e.col = c.col();
    if (c.eof()) c.fail("unexpected end of proof script");
    char ch = c.peek();
    if (ch == '[' || ch == '{' || (ch == '(' && startsRawLtlPos(src, c.offset()))) {
        e.kind = SExpr::Pos;
        e.pos = parsePos(c);
        return e;
    }
    if (ch == '(') {
        c.get();
        e.kind = SExpr::List;
        for (;;) {
            c.skipWs();
            if (c.eof()) throw ParseError(e.line, e.col, "unbalanced parenthesis");
            if (c.peek() == ')') {
                c.get();
                return e;
            }
            e.items.push_back(readSExpr(c, src));
        }
    }
    if (ch == ')') c.fail("unexpected ')'");
    if (ch == '"') {
        c.get();
        e.kind = SExpr::Str;
        for (;;) {
            if (c.eof()) throw ParseError(e.line, e.col, "unterminated string");
            char d = c.get();
            if (d == '"') break;
            if (d == '\\' && !c.eof()) d = c.get();
            e.text += d;
        }
        return e;
    }
    e.kind = SExpr::Atom;
    while (!c.eof() && !std::isspace(static_cast<unsigned char>(c.peek())) && c.peek() != '(' &&
           c.peek() != ')' && c.peek() != '"')
        e.text += c.get();
    return e;
}

// Parses string content, shifting diagnostics to the string's location in the script.
template <typename F>
auto parseEmbedded(const SExpr& e, F fn) {
    Cursor c(e.text, e.line, e.col + 1);
    auto v = fn(c);
    expectEnd(c);
    return v;
}

[[noreturn]] void failAt(const SExpr& e, const std::string& msg) {
    throw ParseError(e.line, e.col, msg);
}

const SExpr& soleValue(const SExpr& param) {
    if (param.items.size() != 2) failAt(param, "parameter '" + param.items[0].text + "' takes one value");
    return param.items[1];
}

Position positionValue(const SExpr& v) {
    if (v.kind == SExpr::Pos) return *v.pos;
    if (v.kind == SExpr::Str) return parseEmbedded(v, [](Cursor& c) { return parsePos(c); });
    failAt(v, "expected position");
}

void checkFamily(const Position& p, Family want, const SExpr& where, bool allowLtlExtension = false) {
    Family f = familyOf(p);
    if (f == want) return;
    if (allowLtlExtension && want == Family::Past && f == Family::Ltl) return;
    failAt(where, std::string("position ") + render(p) + " is not of the " + familyName(want) +
                      " family required by the declared system");
}

void checkFamily(const Sequent& s, Family want, const SExpr& where) {
    for (const Position& p : positionsOf(s)) checkFamily(p, want, where);
}

ScriptNode buildNode(const SExpr& e, Family fam) {
    if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Atom)
        failAt(e, "expected (rule ...) or (bridge ...)");
    ScriptNode n;
    n.line = e.line;
    n.col = e.col;
    const std::string& head = e.items[0].text;
    std::size_t k = 1;
    if (head == "bridge") {
        n.bridge = true;
    } else if (head == "rule") {
        if (e.items.size() < 2 || e.items[1].kind != SExpr::Atom) failAt(e, "rule node needs a rule name");
        auto r = ruleFromName(e.items[1].text);
        if (!r) failAt(e.items[1], "unknown rule name '" + e.items[1].text + "'");
        n.rule = *r;
        k = 2;
    } else {
        failAt(e.items[0], "unknown node kind '" + head + "'");
    }
    for (; k < e.items.size(); ++k) {
        const SExpr& it = e.items[k];
        if (it.kind != SExpr::List || it.items.empty() || it.items[0].kind != SExpr::Atom)
            failAt(it, "expected parameter or premise");
        const std::string& key = it.items[0].text;
        if (key == "rule" || key == "bridge") {
            n.premises.push_back(buildNode(it, fam));
            continue;
        }
        const SExpr& v = soleValue(it);
        if (key == "concl") {
            if (v.kind != SExpr::Str) failAt(v, "concl expects a quoted sequent");
            n.conclusion = parseEmbedded(v, [](Cursor& c) { return parseSeq(c); });
            checkFamily(*n.conclusion, fam, v);
        } else if (n.bridge) {
            failAt(it, "bridge nodes take only a conclusion");
        } else if (key == "alpha" || key == "s") {
            n.params.alpha = positionValue(v);
            checkFamily(*n.params.alpha, fam, v);
        } else if (key == "beta" || key == "t") {
            n.params.beta = positionValue(v);
            checkFamily(*n.params.beta, fam, v, true);
        } else if (key == "x") {
            if (v.kind != SExpr::Atom) failAt(v, "x expects a token");
            n.params.x = Token(parseEmbedded(v, [](Cursor& c) { return c.ident(); }));
        } else if (key == "formula" || key == "cut") {
            if (v.kind != SExpr::Str) failAt(v, key + " expects a quoted p-formula");
            n.params.formula = parseEmbedded(v, [](Cursor& c) { return parsePF(c); });
            checkFamily(n.params.formula->pos, fam, v);
        } else if (key == "other") {
            if (v.kind != SExpr::Str) failAt(v, "other expects a quoted formula");
            n.params.other = parseEmbedded(v, [](Cursor& c) { return parseImp(c); });
        } else if (key == "i") {
            if (v.kind != SExpr::Atom) failAt(v, "i expects an index");
            long long i = parseEmbedded(v, [](Cursor& c) { return c.integer(); });
            if (i < 0) failAt(v, "index must be nonnegative");
            n.params.index = static_cast<std::size_t>(i);
        } else {
            failAt(it.items[0], "unknown parameter '" + key + "'");
        }
    }
    if (n.bridge) {
        if (!n.conclusion) failAt(e, "bridge needs a conclusion");
        if (n.premises.size() != 1) failAt(e, "bridge needs exactly one premise");
    }
    return n;
}

void renderNode(std::ostringstream& os, const ScriptNode& n, int depth) {
    std::string ind(2 * depth, ' ');
    os << ind << '(' << (n.bridge ? "bridge" : "rule " + std::string(ruleName(n.rule)));
    const RuleParams& p = n.params;
    if (p.alpha) os << " (alpha " << render(*p.alpha) << ')';
    if (p.beta) os << " (beta " << render(*p.beta) << ')';
    if (p.x) os << " (x " << p.x->name << ')';
    if (p.formula) os << " (formula \"" << render(*p.formula) << "\")";
    if (p.other) os << " (other \"" << render(*p.other) << "\")";
    if (p.index) os << " (i " << *p.index << ')';
    if (n.conclusion) os << "\n" << ind << "  (concl \"" << render(*n.conclusion) << "\")";
    for (const ScriptNode& k : n.premises) {
        os << "\n";
        renderNode(os, k, depth + 1);
    }
    os << ')';
}

std::set<std::string> parseLetterSet(Cursor& c) {
    c.expect("{");
    std::set<std::string> out;
    if (c.match("}")) return out;
    do {
        out.insert(c.ident());
    } while (c.match(","));
    c.expect("}");
    return out;
}

LassoWord parseLasso(const std::string& text) {
    Cursor c(text);
    c.enableComments();
    LassoWord w;
    c.expect("prefix:");
    for (;;) {
        c.skipWs();
        if (c.peek() != '{') break;
        w.prefix.push_back(parseLetterSet(c));
    }
    c.expect(";");
    c.expect("loop:");
    for (;;) {
        c.skipWs();
        if (c.peek() != '{') break;
        w.loop.push_back(parseLetterSet(c));
    }
    if (w.loop.empty()) c.fail("lasso loop must be nonempty");
    expectEnd(c);
    return w;
}

GraphModel parseGraph(const std::string& text) {
    GraphModel m;
    bool haveNodes = false;
    std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> edges;
    std::vector<std::pair<int, std::pair<std::size_t, std::set<std::string>>>> vals;
    std::optional<std::pair<int, std::size_t>> root;
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto num = [&](const char* what) {
            long long v;
            if (!(ls >> v) || v < 0) throw ParseError(lineNo, 1, std::string("expected ") + what);
            return static_cast<std::size_t>(v);
        };
        if (kw == "nodes") {
            m.nodes = num("node count");
            if (m.nodes == 0) throw ParseError(lineNo, 1, "a model needs at least one node");
            haveNodes = true;
        } else if (kw == "root") {
            root = {lineNo, num("root node")};
        } else if (kw == "edge") {
            std::size_t a = num("edge source");
            std::size_t b = num("edge target");
            edges.push_back({lineNo, {a, b}});
        } else if (kw == "val") {
            std::size_t n = num("node");
            std::set<std::string> atoms;
            std::string a;
            while (ls >> a) atoms.insert(a);
            vals.push_back({lineNo, {n, atoms}});
        } else {
            throw ParseError(lineNo, 1, "unknown model directive '" + kw + "'");
        }
        std::string extra;
        if (kw != "val" && (ls >> extra)) throw ParseError(lineNo, 1, "unexpected '" + extra + "'");
    }
    if (!haveNodes) throw ParseError(lineNo, 1, "model needs a 'nodes' line");
    m.valuation.assign(m.nodes, {});
    auto inRange = [&](int l, std::size_t n) {
        if (n >= m.nodes) throw ParseError(l, 1, "node " + std::to_string(n) + " out of range");
    };
    if (root) {
        inRange(root->first, root->second);
        m.root = root->second;
    }
    for (auto& [l, e] : edges) {
        inRange(l, e.first);
        inRange(l, e.second);
        m.edges.push_back(e);
    }
    for (auto& [l, v] : vals) {
        inRange(l, v.first);
        m.valuation[v.first].insert(v.second.begin(), v.second.end());
    }
    return m;
}

void renderLetters(std::ostringstream& os, const std::set<std::string>& s) {
    os << '{';
    bool first = true;
    for (const std::string& a : s) {
        if (!first) os << ',';
        os << a;
        first = false;
    }
    os << '}';
}

} // namespace

Formula parseFormula(const std::string& text) {
    Cursor c(text);
    Formula f = parseImp(c);
    expectEnd(c);
    return f;
}

Position parsePosition(const std::string& text) {
    Cursor c(text);
    Position p = parsePos(c);
    expectEnd(c);
    return p;
}

PFormula parsePFormula(const std::string& text) {
    Cursor c(text);
    PFormula pf = parsePF(c);
    expectEnd(c);
    return pf;
}

Sequent parseSequent(const std::string& text) {
    Cursor c(text);
    Sequent s = parseSeq(c);
    expectEnd(c);
    return s;
}

ProofScript parseProof(const std::string& text) {
    Cursor c(text);
    c.enableComments();
    SExpr top = readSExpr(c, text);
    expectEnd(c);
    if (top.kind != SExpr::List || top.items.size() < 3 || top.items[0].kind != SExpr::Atom ||
        top.items[0].text != "proof")
        failAt(top, "expected (proof SYSTEM [(name ...)] NODE)");
    if (top.items[1].kind != SExpr::Atom) failAt(top.items[1], "expected system name");
    auto sys = systemFromName(top.items[1].text);
    if (!sys) failAt(top.items[1], "unknown system '" + top.items[1].text + "'");
    ProofScript script;
    script.system = *sys;
    std::size_t k = 2;
    const SExpr& maybeName = top.items[k];
    if (maybeName.kind == SExpr::List && !maybeName.items.empty() && maybeName.items[0].text == "name") {
        const SExpr& v = soleValue(maybeName);
        script.name = v.text;
        ++k;
    }
    if (k + 1 != top.items.size()) failAt(top, "a proof script holds exactly one root node");
    script.root = buildNode(top.items[k], familyOf(script.system));
    return script;
}

Model parseModel(const std::string& text) {
    if (text.find("prefix:") != std::string::npos) return parseLasso(text);
    return parseGraph(text);
}

std::string renderProof(const ProofScript& script) {
    std::ostringstream os;
    os << "(proof " << systemName(script.system);
    if (!script.name.empty()) os << " (name \"" << script.name << "\")";
    os << "\n";
    renderNode(os, script.root, 1);
    os << ")\n";
    return os.str();
}

std::string renderProof(const Proof& p, SystemId sys, const std::string& name) {
    return renderProof(toScript(p, sys, name));
}

std::string renderModel(const Model& model) {
    std::ostringstream os;
    if (auto* w = std::get_if<LassoWord>(&model)) {
        os << "prefix:";
        for (const auto& s : w->prefix) {
            os << ' ';
            renderLetters(os, s);
        }
        os << " ; loop:";
        for (const auto& s : w->loop) {
            os << ' ';
            renderLetters(os, s);
        }
        os << "\n";
        return os.str();
    }
    const GraphModel& m = std::get<GraphModel>(model);
    os << "nodes " << m.nodes << "\nroot " << m.root << "\n";
    for (const auto& [a, b] : m.edges) os << "edge " << a << ' ' << b << "\n";
    for (std::size_t n = 0; n < m.valuation.size(); ++n) {
        if (m.valuation[n].empty()) continue;
        os << "val " << n;
        for (const std::string& a : m.valuation[n]) os << ' ' << a;
        os << "\n";
    }
    return os.str();
}

} // namespace twoseq
