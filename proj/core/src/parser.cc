#include "hpxf/parser.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace hpxf {

namespace {

struct Token {
    enum class Kind { Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string &text) : text(text) { advance(); }

    const Token &peek() const { return tok; }

    Token take() {
        Token t = tok;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n')
                    ++pos;
            } else if (c == '\n') {
                ++pos;
                ++line;
                col = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
                ++col;
            } else {
                break;
            }
        }
        tok.line = line;
        tok.col = col;
        if (pos >= text.size()) {
            tok.kind = Token::Kind::End;
            tok.text.clear();
            return;
        }
        char c = text[pos];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            tok.kind = Token::Kind::Ident;
            tok.text = text.substr(start, pos - start);
            col += static_cast<int>(pos - start);
            return;
        }
        if (c == '{' || c == '}' || c == '=' || c == ',' || c == ':') {
            tok.kind = Token::Kind::Punct;
            tok.text = std::string(1, c);
            ++pos;
            ++col;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

    const std::string &text;
    size_t pos = 0;
    int line = 1;
    int col = 1;
    Token tok;
};

class Parser {
public:
    explicit Parser(const std::string &text) : lex(text) {}

    AstProgram parse() {
        AstProgram prog;
        while (lex.peek().kind != Token::Kind::End)
            parse_decl(prog, {});
        bool has_fluent = false;
        for (const auto &d : prog.decls)
            has_fluent |= d.kind == AstDecl::Kind::Fluent;
        if (!has_fluent)
            throw ParseError("no fluent declarations", 1, 1);
        return prog;
    }

private:
    Lexer lex;
    std::vector<AstBinder> scope;

    [[noreturn]] void fail(const Token &t, const std::string &msg) {
        throw ParseError(msg, t.line, t.col);
    }

    Token expect_ident(const std::string &what) {
        Token t = lex.take();
        if (t.kind != Token::Kind::Ident)
            fail(t, "expected " + what);
        return t;
    }

    void expect_punct(const std::string &p) {
        Token t = lex.take();
        if (t.kind != Token::Kind::Punct || t.text != p)
            fail(t, "expected '" + p + "'");
    }

    bool at_punct(const std::string &p) {
        return lex.peek().kind == Token::Kind::Punct && lex.peek().text == p;
    }

    bool at_keyword(const std::string &kw) {
        return lex.peek().kind == Token::Kind::Ident && lex.peek().text == kw;
    }

    AstToken make_token(const Token &t) {
        AstToken a;
        a.text = t.text;
        a.line = t.line;
        a.col = t.col;
        for (const auto &b : scope)
            if (b.var == t.text)
                a.is_var = true;
        return a;
    }

    AstPair parse_pair() {
        AstPair p;
        p.fluent = make_token(expect_ident("fluent name"));
        expect_punct("=");
        p.value = make_token(expect_ident("value"));
        return p;
    }

    std::vector<AstPair> parse_pair_list() {
        std::vector<AstPair> pairs;
        pairs.push_back(parse_pair());
        while (at_punct(",")) {
            lex.take();
            pairs.push_back(parse_pair());
        }
        return pairs;
    }

    AstBinder parse_binder() {
        Token kw = lex.take(); // 'forall'
        AstBinder b;
        b.line = kw.line;
        b.col = kw.col;
        b.var = expect_ident("schema variable").text;
        Token in = expect_ident("'in'");
        if (in.text != "in")
            fail(in, "expected 'in'");
        expect_punct("{");
        if (!at_punct("}")) {
            b.sort.push_back(expect_ident("sort value").text);
            while (at_punct(",")) {
                lex.take();
                b.sort.push_back(expect_ident("sort value").text);
            }
        }
        expect_punct("}");
        expect_punct(":");
        return b;
    }

    void parse_decl(AstProgram &prog, std::vector<AstBinder> binders) {
        Token t = lex.peek();
        if (t.kind != Token::Kind::Ident)
            fail(t, "expected declaration");
        if (t.text == "forall") {
            AstBinder b = parse_binder();
            binders.push_back(b);
            scope.push_back(b);
            Token body = lex.peek();
            if (body.kind == Token::Kind::Ident &&
                (body.text == "fluent" || body.text == "action"))
                fail(body, "'" + body.text + "' declarations cannot be grounded with forall");
            parse_decl(prog, binders);
            scope.pop_back();
            return;
        }
        if (t.text == "fluent") {
            prog.decls.push_back(parse_fluent(binders));
            return;
        }
        if (t.text == "init") {
            prog.decls.push_back(parse_init(binders));
            return;
        }
        if (t.text == "action") {
            prog.decls.push_back(parse_action(binders));
            return;
        }
        if (t.text == "scl") {
            prog.decls.push_back(parse_scl(binders));
            return;
        }
        if (t.text == "goal") {
            prog.decls.push_back(parse_goal(binders));
            return;
        }
        fail(t, "unknown declaration '" + t.text + "'");
    }

    AstDecl parse_fluent(std::vector<AstBinder> binders) {
        Token kw = lex.take();
        AstDecl d;
        d.kind = AstDecl::Kind::Fluent;
        d.line = kw.line;
        d.col = kw.col;
        d.binders = std::move(binders);
        d.name = make_token(expect_ident("fluent name"));
        expect_punct("{");
        if (at_punct("}"))
            fail(lex.peek(), "fluent '" + d.name.text + "' declares no values");
        d.range_vals.push_back(make_token(expect_ident("value")));
        while (at_punct(",")) {
            lex.take();
            d.range_vals.push_back(make_token(expect_ident("value")));
        }
        expect_punct("}");
        for (size_t i = 0; i < d.range_vals.size(); ++i)
            for (size_t j = i + 1; j < d.range_vals.size(); ++j)
                if (d.range_vals[i].text == d.range_vals[j].text)
                    throw ParseError("duplicate value '" + d.range_vals[j].text +
                                         "' in range of fluent '" + d.name.text + "'",
                                     d.range_vals[j].line, d.range_vals[j].col);
        return d;
    }

    AstDecl parse_init(std::vector<AstBinder> binders) {
        Token kw = lex.take();
        AstDecl d;
        d.kind = AstDecl::Kind::Init;
        d.line = kw.line;
        d.col = kw.col;
        d.binders = std::move(binders);
        d.head = parse_pair();
        return d;
    }

    AstDecl parse_scl(std::vector<AstBinder> binders) {
        Token kw = lex.take();
        AstDecl d;
        d.kind = AstDecl::Kind::Scl;
        d.line = kw.line;
        d.col = kw.col;
        d.binders = std::move(binders);
        d.head = parse_pair();
        Token t = lex.take();
        if (t.kind != Token::Kind::Ident || t.text != "if")
            fail(t, "static causal law requires an 'if' condition list");
        d.conds = parse_pair_list();
        return d;
    }

    AstDecl parse_goal(std::vector<AstBinder> binders) {
        Token kw = lex.take();
        AstDecl d;
        d.kind = AstDecl::Kind::Goal;
        d.line = kw.line;
        d.col = kw.col;
        d.binders = std::move(binders);
        Token mode = expect_ident("'weak' or 'strong'");
        if (mode.text == "strong")
            d.goal_strong = true;
        else if (mode.text != "weak")
            fail(mode, "expected 'weak' or 'strong'");
        d.head = parse_pair();
        return d;
    }

    AstItem parse_action_item() {
        Token t = lex.peek();
        if (t.text == "forall") {
            AstBinder b = parse_binder();
            scope.push_back(b);
            AstItem item = parse_action_item();
            scope.pop_back();
            item.binders.insert(item.binders.begin(), b);
            return item;
        }
        AstItem item;
        item.line = t.line;
        item.col = t.col;
        if (t.text == "effect") {
            lex.take();
            item.kind = AstItem::Kind::Effect;
            item.effect = parse_pair();
            if (at_keyword("if")) {
                lex.take();
                item.conds = parse_pair_list();
            }
            return item;
        }
        if (t.text == "senses") {
            lex.take();
            item.kind = AstItem::Kind::Senses;
            item.sensed = make_token(expect_ident("fluent name"));
            return item;
        }
        if (t.text == "executable") {
            lex.take();
            item.kind = AstItem::Kind::Executable;
            Token iff = expect_ident("'if'");
            if (iff.text != "if")
                fail(iff, "expected 'if'");
            item.conds = parse_pair_list();
            return item;
        }
        fail(t, "expected 'effect', 'senses' or 'executable'");
    }

    AstDecl parse_action(std::vector<AstBinder> binders) {
        Token kw = lex.take();
        AstDecl d;
        d.kind = AstDecl::Kind::Action;
        d.line = kw.line;
        d.col = kw.col;
        d.binders = std::move(binders);
        d.name = make_token(expect_ident("action name"));
        expect_punct("{");
        while (!at_punct("}")) {
            if (lex.peek().kind == Token::Kind::End)
                fail(lex.peek(), "unterminated action block");
            d.items.push_back(parse_action_item());
        }
        expect_punct("}");
        return d;
    }
};

using Binding = std::map<std::string, std::string>;

AstToken substitute(const AstToken &t, const Binding &env) {
    if (!t.is_var)
        return t;
    auto it = env.find(t.text);
    if (it == env.end())
        throw ParseError("unbound schema variable '" + t.text + "'", t.line, t.col);
    AstToken out = t;
    out.text = it->second;
    out.is_var = false;
    return out;
}

AstPair substitute(const AstPair &p, const Binding &env) {
    return AstPair{substitute(p.fluent, env), substitute(p.value, env)};
}

// Enumerate the cartesian product of the binders' sorts.
void expand_bindings(const std::vector<AstBinder> &binders, size_t index,
                     Binding &env, std::vector<Binding> &out) {
    if (index == binders.size()) {
        out.push_back(env);
        return;
    }
    const AstBinder &b = binders[index];
    if (b.sort.empty())
        throw ParseError("schema variable '" + b.var + "' ranges over an empty sort",
                         b.line, b.col);
    for (const auto &value : b.sort) {
        env[b.var] = value;
        expand_bindings(binders, index + 1, env, out);
    }
    env.erase(b.var);
}

std::vector<Binding> bindings_for(const std::vector<AstBinder> &binders) {
    std::vector<Binding> out;
    Binding env;
    expand_bindings(binders, 0, env, out);
    return out;
}

AstItem ground_item(const AstItem &item, const Binding &outer) {
    std::vector<AstItem> expanded;
    for (const auto &env0 : bindings_for(item.binders)) {
        Binding env = outer;
        env.insert(env0.begin(), env0.end());
        AstItem g;
        g.kind = item.kind;
        g.line = item.line;
        g.col = item.col;
        if (item.kind == AstItem::Kind::Senses) {
            g.sensed = substitute(item.sensed, env);
        } else {
            g.effect = substitute(item.effect, env);
            for (const auto &c : item.conds)
                g.conds.push_back(substitute(c, env));
        }
        expanded.push_back(std::move(g));
    }
    // Callers expand item binders one level up; here binders are empty or the
    // caller passed a fully bound environment.
    if (expanded.size() != 1)
        throw ParseError("internal grounding error", item.line, item.col);
    return expanded.front();
}

} // namespace

AstProgram parse_ast(const std::string &text) {
    return Parser(text).parse();
}

AstProgram ground_schemas(const AstProgram &ast) {
    AstProgram out;
    for (const auto &decl : ast.decls) {
        for (const auto &env : bindings_for(decl.binders)) {
            AstDecl g;
            g.kind = decl.kind;
            g.line = decl.line;
            g.col = decl.col;
            g.goal_strong = decl.goal_strong;
            g.name = substitute(decl.name, env);
            for (const auto &v : decl.range_vals)
                g.range_vals.push_back(substitute(v, env));
            if (decl.kind == AstDecl::Kind::Init || decl.kind == AstDecl::Kind::Scl ||
                decl.kind == AstDecl::Kind::Goal)
                g.head = substitute(decl.head, env);
            for (const auto &c : decl.conds)
                g.conds.push_back(substitute(c, env));
            for (const auto &item : decl.items) {
                for (const auto &ienv0 : bindings_for(item.binders)) {
                    Binding ienv = env;
                    for (const auto &kv : ienv0)
                        ienv[kv.first] = kv.second;
                    AstItem flat = item;
                    flat.binders.clear();
                    g.items.push_back(ground_item(flat, ienv));
                }
            }
            out.decls.push_back(std::move(g));
        }
    }
    return out;
}

namespace {

std::vector<FluentValue> sorted_unique(std::vector<FluentValue> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

} // namespace

Domain build_domain(const AstProgram &ground) {
    Domain d;

    auto resolve_fluent = [&](const AstToken &t) -> FluentId {
        if (auto f = d.find_fluent(t.text))
            return *f;
        throw ParseError("unknown fluent '" + t.text + "'", t.line, t.col);
    };
    auto resolve_value = [&](const AstToken &t) -> ValueId {
        if (auto v = d.find_value(t.text))
            return *v;
        throw ParseError("unknown value '" + t.text + "'", t.line, t.col);
    };
    auto resolve_pair = [&](const AstPair &p) -> FluentValue {
        return FluentValue{resolve_fluent(p.fluent), resolve_value(p.value)};
    };
    auto resolve_pairs = [&](const std::vector<AstPair> &pairs) {
        std::vector<FluentValue> out;
        for (const auto &p : pairs)
            out.push_back(resolve_pair(p));
        return sorted_unique(std::move(out));
    };

    // Fluent declarations first: they intern the value symbols.
    for (const auto &decl : ground.decls) {
        if (decl.kind != AstDecl::Kind::Fluent)
            continue;
        if (d.find_fluent(decl.name.text))
            throw ParseError("duplicate fluent declaration '" + decl.name.text + "'",
                             decl.name.line, decl.name.col);
        FluentDecl f;
        f.name = decl.name.text;
        for (const auto &v : decl.range_vals)
            f.range.push_back(d.intern_value(v.text));
        d.fluents.push_back(std::move(f));
    }

    for (const auto &decl : ground.decls) {
        switch (decl.kind) {
        case AstDecl::Kind::Fluent:
            break;
        case AstDecl::Kind::Init: {
            ValueProposition vp{resolve_pair(decl.head)};
            if (std::find(d.vps.begin(), d.vps.end(), vp) == d.vps.end())
                d.vps.push_back(vp);
            break;
        }
        case AstDecl::Kind::Action: {
            if (d.find_action(decl.name.text))
                throw ParseError("duplicate action declaration '" + decl.name.text + "'",
                                 decl.name.line, decl.name.col);
            d.actions.push_back(decl.name.text);
            ActionId a{static_cast<int32_t>(d.actions.size() - 1)};
            int ep_count = 0;
            for (const auto &item : decl.items) {
                switch (item.kind) {
                case AstItem::Kind::Effect: {
                    EffectProposition ep;
                    ep.action = a;
                    ep.effect = resolve_pair(item.effect);
                    ep.conditions = resolve_pairs(item.conds);
                    bool dup = false;
                    for (const auto &other : d.eps)
                        dup |= other.same_content(ep);
                    if (!dup) {
                        ep.id = decl.name.text + "_ep" + std::to_string(++ep_count);
                        d.eps.push_back(std::move(ep));
                    }
                    break;
                }
                case AstItem::Kind::Senses: {
                    KnowledgeProposition kp{a, resolve_fluent(item.sensed)};
                    if (std::find(d.kps.begin(), d.kps.end(), kp) == d.kps.end())
                        d.kps.push_back(kp);
                    break;
                }
                case AstItem::Kind::Executable: {
                    ExecutabilityCondition exc;
                    exc.action = a;
                    exc.required = resolve_pairs(item.conds);
                    d.excs.push_back(std::move(exc));
                    break;
                }
                }
            }
            break;
        }
        case AstDecl::Kind::Scl: {
            StaticCausalLaw scl;
            scl.effect = resolve_pair(decl.head);
            scl.conditions = resolve_pairs(decl.conds);
            bool dup = false;
            for (const auto &other : d.scls)
                dup |= other.conditions == scl.conditions && other.effect == scl.effect;
            if (!dup) {
                scl.id = "scl" + std::to_string(d.scls.size() + 1);
                d.scls.push_back(std::move(scl));
            }
            break;
        }
        case AstDecl::Kind::Goal: {
            auto &set = decl.goal_strong ? d.goals.strong : d.goals.weak;
            set.push_back(resolve_pair(decl.head));
            break;
        }
        }
    }
    d.goals.strong = sorted_unique(std::move(d.goals.strong));
    d.goals.weak = sorted_unique(std::move(d.goals.weak));
    return d;
}

Domain parse_domain(const std::string &text) {
    return build_domain(ground_schemas(parse_ast(text)));
}

std::string print_domain(const Domain &d) {
    std::ostringstream out;
    for (const auto &f : d.fluents) {
        out << "fluent " << f.name << " { ";
        for (size_t i = 0; i < f.range.size(); ++i) {
            if (i)
                out << ", ";
            out << d.value_name(f.range[i]);
        }
        out << " }\n";
    }
    out << "\n";
    for (const auto &vp : d.vps)
        out << "init " << d.render(vp.pair) << "\n";
    auto render_conds = [&](const std::vector<FluentValue> &conds) {
        std::string s;
        for (size_t i = 0; i < conds.size(); ++i) {
            if (i)
                s += ", ";
            s += d.render(conds[i]);
        }
        return s;
    };
    for (size_t ai = 0; ai < d.actions.size(); ++ai) {
        ActionId a{static_cast<int32_t>(ai)};
        out << "\naction " << d.actions[ai] << " {\n";
        for (const auto &ep : d.eps) {
            if (ep.action != a)
                continue;
            out << "  effect " << d.render(ep.effect);
            if (!ep.conditions.empty())
                out << " if " << render_conds(ep.conditions);
            out << "\n";
        }
        for (const auto &kp : d.kps)
            if (kp.action == a)
                out << "  senses " << d.fluent_name(kp.fluent) << "\n";
        for (const auto &exc : d.excs)
            if (exc.action == a)
                out << "  executable if " << render_conds(exc.required) << "\n";
        out << "}\n";
    }
    if (!d.scls.empty())
        out << "\n";
    for (const auto &scl : d.scls)
        out << "scl " << d.render(scl.effect) << " if " << render_conds(scl.conditions)
            << "\n";
    if (!d.goals.weak.empty() || !d.goals.strong.empty())
        out << "\n";
    for (const auto &g : d.goals.weak)
        out << "goal weak " << d.render(g) << "\n";
    for (const auto &g : d.goals.strong)
        out << "goal strong " << d.render(g) << "\n";
    return out.str();
}

} // namespace hpxf
