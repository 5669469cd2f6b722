#ifndef HPXF_PARSER_H
#define HPXF_PARSER_H

#include <string>
#include <vector>

#include "hpxf/domain.h"
#include "hpxf/errors.h"

namespace hpxf {

// Schematic AST produced by the first parsing stage. Tokens that refer to a
// `forall` binder are marked as variables; ground_schemas expands them.

struct AstToken {
    std::string text;
    bool is_var = false;
    int line = 0;
    int col = 0;
};

struct AstPair {
    AstToken fluent;
    AstToken value;
};

struct AstBinder {
    std::string var;
    std::vector<std::string> sort;
    int line = 0;
    int col = 0;
};

struct AstItem {
    enum class Kind { Effect, Senses, Executable };
    Kind kind = Kind::Effect;
    AstPair effect;
    std::vector<AstPair> conds;
    AstToken sensed;
    std::vector<AstBinder> binders;
    int line = 0;
    int col = 0;
};

struct AstDecl {
    enum class Kind { Fluent, Init, Action, Scl, Goal };
    Kind kind = Kind::Fluent;
    AstToken name;                    // fluent or action name
    std::vector<AstToken> range_vals; // Fluent
    AstPair head;                     // Init / Scl effect / Goal pair
    std::vector<AstPair> conds;       // Scl conditions
    bool goal_strong = false;
    std::vector<AstItem> items;       // Action
    std::vector<AstBinder> binders;
    int line = 0;
    int col = 0;
};

struct AstProgram {
    std::vector<AstDecl> decls;
};

// Stage 1: text -> schematic AST. Throws ParseError on syntax errors.
AstProgram parse_ast(const std::string &text);

// Stage 2: expand every forall binder into ground declarations. One ground
// declaration per binding of the schema variables; the output contains no
// variables. Throws ParseError on unbound variables or empty sorts.
AstProgram ground_schemas(const AstProgram &ast);

// Stage 3: ground AST -> Domain. Resolves and interns all names; throws
// ParseError on unknown references and duplicate declarations.
Domain build_domain(const AstProgram &ground);

// parse + ground + build.
Domain parse_domain(const std::string &text);

// Canonical text form; parse_domain(print_domain(d)) == d.
std::string print_domain(const Domain &d);

} // namespace hpxf

#endif
