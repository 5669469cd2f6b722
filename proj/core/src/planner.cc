#include "hpxf/planner.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hpxf/errors.h"

namespace hpxf {

std::unique_ptr<PlanNode> PlanNode::clone() const {
    auto out = std::make_unique<PlanNode>();
    out->actions = actions;
    out->branch_fluent = branch_fluent;
    if (next)
        out->next = next->clone();
    for (const auto &[v, child] : branches)
        out->branches.emplace_back(v, child ? child->clone() : nullptr);
    return out;
}

int plan_depth(const PlanNode *plan) {
    if (!plan)
        return 0;
    int deepest = plan->next ? plan_depth(plan->next.get()) : 0;
    for (const auto &[v, child] : plan->branches)
        deepest = std::max(deepest, plan_depth(child.get()));
    return 1 + deepest;
}

PlanPtr make_linear_plan(const std::vector<std::vector<ActionId>> &steps) {
    PlanPtr head;
    PlanNode *tail = nullptr;
    for (const auto &step : steps) {
        auto node = std::make_unique<PlanNode>();
        node->actions = step;
        std::sort(node->actions.begin(), node->actions.end());
        if (!tail) {
            head = std::move(node);
            tail = head.get();
        } else {
            tail->next = std::move(node);
            tail = tail->next.get();
        }
    }
    return head;
}

namespace {

// Minimal tokener shared by the plan grammar.
struct PlanLexer {
    explicit PlanLexer(const std::string &text) : text(text) { skip(); }

    bool at_end() const { return pos >= text.size(); }

    std::string peek_word() {
        size_t p = pos;
        std::string w;
        while (p < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_'))
            w += text[p++];
        return w;
    }

    std::string take_word(const char *what) {
        std::string w = peek_word();
        if (w.empty())
            throw ParseError(std::string("expected ") + what, line, col);
        pos += w.size();
        col += static_cast<int>(w.size());
        skip();
        return w;
    }

    bool try_punct(char c) {
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            ++col;
            skip();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!try_punct(c))
            throw ParseError(std::string("expected '") + c + "'", line, col);
    }

    void skip() {
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
    }

    const std::string &text;
    size_t pos = 0;
    int line = 1;
    int col = 1;
};

PlanPtr parse_plan_body(PlanLexer &lex, const Domain &d, bool top_level);

PlanPtr parse_steps(PlanLexer &lex, const Domain &d) {
    std::string kw = lex.peek_word();
    if (kw != "step" && kw != "branch")
        return nullptr;

    if (kw == "branch")
        throw ParseError("branch block without a preceding step", lex.line, lex.col);

    lex.take_word("'step'");
    auto node = std::make_unique<PlanNode>();
    lex.expect_punct('{');
    while (!lex.try_punct('}')) {
        std::string name = lex.take_word("action name");
        auto a = d.find_action(name);
        if (!a)
            throw ParseError("unknown action '" + name + "'", lex.line, lex.col);
        node->actions.push_back(*a);
        lex.try_punct(',');
    }
    std::sort(node->actions.begin(), node->actions.end());
    node->actions.erase(std::unique(node->actions.begin(), node->actions.end()),
                        node->actions.end());

    // Branch blocks attach to this step; otherwise a further step chains on.
    if (lex.peek_word() == "branch") {
        while (lex.peek_word() == "branch") {
            lex.take_word("'branch'");
            std::string fname = lex.take_word("fluent name");
            auto f = d.find_fluent(fname);
            if (!f)
                throw ParseError("unknown fluent '" + fname + "'", lex.line, lex.col);
            lex.expect_punct('=');
            std::string vname = lex.take_word("value");
            auto v = d.find_value(vname);
            if (!v || !d.in_range({*f, *v}))
                throw ParseError("value '" + vname + "' not in range of fluent '" + fname +
                                     "'",
                                 lex.line, lex.col);
            if (node->branch_fluent && *node->branch_fluent != *f)
                throw ParseError("branch blocks of one step must test the same fluent",
                                 lex.line, lex.col);
            node->branch_fluent = *f;
            for (const auto &[bv, child] : node->branches)
                if (bv == *v)
                    throw ParseError("duplicate branch for value '" + vname + "'", lex.line,
                                     lex.col);
            lex.expect_punct('{');
            PlanPtr child = parse_plan_body(lex, d, false);
            lex.expect_punct('}');
            node->branches.emplace_back(*v, std::move(child));
        }
        // Branch order follows the value declaration order of the fluent.
        const auto &range = d.range(*node->branch_fluent);
        std::sort(node->branches.begin(), node->branches.end(),
                  [&](const auto &a, const auto &b) {
                      auto pos = [&](ValueId v) {
                          return std::find(range.begin(), range.end(), v) - range.begin();
                      };
                      return pos(a.first) < pos(b.first);
                  });
    } else {
        node->next = parse_steps(lex, d);
    }
    return node;
}

PlanPtr parse_plan_body(PlanLexer &lex, const Domain &d, bool top_level) {
    PlanPtr plan = parse_steps(lex, d);
    if (top_level && !lex.at_end())
        throw ParseError("trailing input after plan", lex.line, lex.col);
    return plan;
}

} // namespace

PlanPtr parse_plan(const std::string &text, const Domain &d) {
    PlanLexer lex(text);
    if (lex.at_end())
        return nullptr; // empty plan
    return parse_plan_body(lex, d, true);
}

namespace {

void print_plan_rec(const Domain &d, const PlanNode *plan, int indent, std::ostream &out) {
    std::string pad(indent, ' ');
    for (const PlanNode *node = plan; node; node = node->next.get()) {
        out << pad << "step {";
        for (size_t i = 0; i < node->actions.size(); ++i)
            out << (i ? ", " : " ") << d.action_name(node->actions[i]);
        out << (node->actions.empty() ? "}" : " }") << "\n";
        for (const auto &[v, child] : node->branches) {
            out << pad << "branch " << d.fluent_name(*node->branch_fluent) << " = "
                << d.value_name(v) << " {\n";
            if (child)
                print_plan_rec(d, child.get(), indent + 2, out);
            out << pad << "}\n";
        }
    }
}

} // namespace

std::string print_plan(const Domain &d, const PlanNode *plan) {
    std::ostringstream out;
    print_plan_rec(d, plan, 0, out);
    return out.str();
}

const TreeNode *TransitionTree::find(int level, int label) const {
    auto it = nodes.find({level, label});
    return it == nodes.end() ? nullptr : &it->second;
}

std::vector<const TreeNode *> TransitionTree::leaves() const {
    std::vector<const TreeNode *> out;
    for (const auto &[key, node] : nodes)
        if (node.leaf)
            out.push_back(&node);
    return out;
}

TransitionTree project(const PlanNode *plan, const Domain &d,
                       const CompiledEffectSet &compiled, int max_branches) {
    TransitionTree tree;
    int next_label = 1;
    auto allocate_label = [&]() {
        if (next_label > max_branches)
            throw BranchCapExceeded("sensing split needs branch label " +
                                    std::to_string(next_label) + " but the cap is " +
                                    std::to_string(max_branches));
        return next_label++;
    };

    struct Frontier {
        int label;
        const PlanNode *pos;
        HState state;
    };

    TreeNode root;
    root.level = 0;
    root.label = 0;
    root.state = eval(initial_hstate(d), d, compiled);
    tree.nodes[{0, 0}] = root;

    std::vector<Frontier> frontier;
    frontier.push_back({0, plan, tree.nodes[{0, 0}].state.value()});

    int level = 0;
    while (true) {
        bool any_active = false;
        for (const auto &f : frontier)
            any_active |= f.pos != nullptr;
        if (!any_active)
            break;

        std::vector<Frontier> next_frontier;
        for (const auto &f : frontier) {
            if (!f.pos)
                continue;
            tree.nodes[{level, f.label}].leaf = false;
            TransitionResult res = transition(f.pos->actions, f.state, d, compiled);
            bool sensing = !res.successors.empty() &&
                           res.successors.front().sensed.has_value();
            for (size_t i = 0; i < res.successors.size(); ++i) {
                auto &succ = res.successors[i];
                int label = (i == 0) ? f.label : allocate_label();
                TreeNode node;
                node.level = level + 1;
                node.label = label;
                node.parent_label = f.label;
                node.applied = res.applied;
                node.sensed = succ.sensed;
                const PlanNode *child_pos = nullptr;
                if (succ.state) {
                    node.state = *succ.state;
                    if (sensing) {
                        for (const auto &[v, child] : f.pos->branches)
                            if (succ.sensed && v == succ.sensed->value)
                                child_pos = child.get();
                    } else {
                        child_pos = f.pos->next.get();
                    }
                } else {
                    node.error = succ.error;
                    tree.any_inconsistent = true;
                }
                tree.nodes[{level + 1, label}] = node;
                if (node.state)
                    next_frontier.push_back({label, child_pos, *node.state});
            }
        }
        ++level;
        tree.depth = level;
        frontier = std::move(next_frontier);
    }
    return tree;
}

GoalReport verify_goals(const TransitionTree &tree, const GoalSet &goals, const Domain &d) {
    GoalReport report;
    report.weak_satisfied = goals.weak.empty();
    report.strong_satisfied = true;

    for (const TreeNode *leaf : tree.leaves()) {
        if (!leaf->state) {
            // Inconsistent leaves are excluded from strong verification and
            // cannot witness a weak goal.
            continue;
        }
        const Step t = leaf->state->now();
        bool all_weak = true;
        for (const auto &g : goals.weak)
            all_weak &= leaf->state->kh.knows(g.fluent, g.value, t);
        if (all_weak && !goals.weak.empty() && !report.weak_witness) {
            report.weak_satisfied = true;
            report.weak_witness = {leaf->level, leaf->label};
        }
        for (const auto &g : goals.strong) {
            if (!leaf->state->kh.knows(g.fluent, g.value, t)) {
                report.strong_satisfied = false;
                report.failures.push_back("leaf (" + std::to_string(leaf->level) + "," +
                                          std::to_string(leaf->label) + ") misses strong goal " +
                                          d.render(g));
            }
        }
    }
    return report;
}

namespace {

// Depth-first contingent search. `need_witness` threads the weak-goal
// obligation: a branching node delegates it to exactly one child.
class Searcher {
public:
    Searcher(const Domain &d, const CompiledEffectSet &compiled, const PlanSearchConfig &cfg)
        : d(d), compiled(compiled), cfg(cfg) {
        for (size_t i = 0; i < d.actions.size(); ++i)
            all_actions.push_back(ActionId{static_cast<int32_t>(i)});
    }

    std::optional<PlanPtr> run(const HState &root, int horizon) {
        labels_used = 0;
        memo.clear();
        return search(root, horizon, !d.goals.weak.empty());
    }

private:
    struct MemoEntry {
        bool found;
        PlanPtr plan;
    };

    bool goals_hold(const HState &h) const {
        const Step t = h.now();
        for (const auto &g : d.goals.weak)
            if (!h.kh.knows(g.fluent, g.value, t))
                return false;
        for (const auto &g : d.goals.strong)
            if (!h.kh.knows(g.fluent, g.value, t))
                return false;
        return true;
    }

    bool strong_hold(const HState &h) const {
        const Step t = h.now();
        for (const auto &g : d.goals.strong)
            if (!h.kh.knows(g.fluent, g.value, t))
                return false;
        return true;
    }

    bool weak_hold(const HState &h) const {
        const Step t = h.now();
        for (const auto &g : d.goals.weak)
            if (!h.kh.knows(g.fluent, g.value, t))
                return false;
        return true;
    }

    std::vector<std::vector<ActionId>> choices(const HState &h) const {
        std::vector<ActionId> exec;
        for (ActionId a : all_actions)
            if (executable(a, h, d))
                exec.push_back(a);
        std::vector<std::vector<ActionId>> out;
        if (!cfg.concurrent) {
            for (ActionId a : exec)
                out.push_back({a});
            return out;
        }
        for (uint32_t mask = 1; mask < (1u << exec.size()); ++mask) {
            std::vector<ActionId> subset;
            for (size_t i = 0; i < exec.size(); ++i)
                if (mask & (1u << i))
                    subset.push_back(exec[i]);
            out.push_back(std::move(subset));
        }
        return out;
    }

    std::optional<PlanPtr> search(const HState &h, int remaining, bool need_witness) {
        if (goals_hold(h))
            return PlanPtr{}; // pruning: no action at goal-satisfied nodes
        if (remaining == 0) {
            if (!strong_hold(h))
                return std::nullopt;
            if (need_witness && !weak_hold(h))
                return std::nullopt;
            return PlanPtr{};
        }

        std::string key = std::to_string(remaining) + (need_witness ? "w" : "-") +
                          std::to_string(cfg.max_branches - labels_used) + "|" + h.key();
        auto it = memo.find(key);
        if (it != memo.end()) {
            if (!it->second.found)
                return std::nullopt;
            return it->second.plan ? it->second.plan->clone() : PlanPtr{};
        }

        std::optional<PlanPtr> result = try_choices(h, remaining, need_witness);
        MemoEntry entry;
        entry.found = result.has_value();
        if (result && *result)
            entry.plan = (*result)->clone();
        memo.emplace(std::move(key), std::move(entry));
        return result;
    }

    std::optional<PlanPtr> try_choices(const HState &h, int remaining, bool need_witness) {
        for (const auto &choice : choices(h)) {
            TransitionResult res;
            try {
                res = transition(choice, h, d, compiled);
            } catch (const Error &) {
                continue; // choice violates a transition restriction
            }
            if (res.applied != choice)
                continue;

            bool sensing = !res.successors.empty() &&
                           res.successors.front().sensed.has_value();
            if (!sensing) {
                const auto &succ = res.successors.front();
                if (!succ.state)
                    continue; // inconsistent successor: prune this choice
                auto sub = search(*succ.state, remaining - 1, need_witness);
                if (!sub)
                    continue;
                auto node = std::make_unique<PlanNode>();
                node->actions = choice;
                node->next = std::move(*sub);
                return node;
            }

            // Sensing: gather consistent successors; all must admit a
            // strong-consistent subtree and one must carry the witness.
            std::vector<const TransitionSuccessor *> live;
            for (const auto &succ : res.successors)
                if (succ.state)
                    live.push_back(&succ);
            int extra = static_cast<int>(res.successors.size()) - 1;
            if (labels_used + extra > cfg.max_branches)
                continue; // split exceeds the branch label range

            auto attempt = [&](size_t witness_index) -> std::optional<PlanPtr> {
                labels_used += extra;
                std::vector<std::pair<ValueId, PlanPtr>> children;
                bool ok = true;
                for (size_t i = 0; i < live.size() && ok; ++i) {
                    bool w = need_witness && i == witness_index;
                    auto sub = search(*live[i]->state, remaining - 1, w);
                    if (!sub) {
                        ok = false;
                        break;
                    }
                    children.emplace_back(live[i]->sensed->value, std::move(*sub));
                }
                labels_used -= extra;
                if (!ok)
                    return std::nullopt;
                auto node = std::make_unique<PlanNode>();
                node->actions = choice;
                node->branch_fluent = live.empty()
                                          ? std::nullopt
                                          : std::optional<FluentId>(live.front()->sensed->fluent);
                for (auto &[v, child] : children)
                    if (child) // omit empty continuations
                        node->branches.emplace_back(v, std::move(child));
                if (node->branches.empty())
                    node->branch_fluent.reset();
                return node;
            };

            if (!need_witness) {
                if (auto plan = attempt(live.size()))
                    return plan;
            } else {
                if (live.empty())
                    continue; // no consistent outcome can witness
                for (size_t i = 0; i < live.size(); ++i)
                    if (auto plan = attempt(i))
                        return plan;
            }
        }
        return std::nullopt;
    }

    const Domain &d;
    const CompiledEffectSet &compiled;
    const PlanSearchConfig &cfg;
    std::vector<ActionId> all_actions;
    int labels_used = 0;
    std::map<std::string, MemoEntry> memo;
};

} // namespace

PlanSearchResult plan_search(const Domain &d, const CompiledEffectSet &compiled,
                             const PlanSearchConfig &cfg) {
    PlanSearchResult result;
    HState root = eval(initial_hstate(d), d, compiled);
    Searcher searcher(d, compiled, cfg);
    for (int horizon = 0; horizon <= cfg.max_steps; ++horizon) {
        auto plan = searcher.run(root, horizon);
        if (plan) {
            result.plan = std::move(*plan);
            result.found = true;
            return result;
        }
    }
    return result;
}

std::string dump_tree(const Domain &d, const TransitionTree &tree) {
    std::ostringstream out;
    bool first = true;
    for (const auto &[key, node] : tree.nodes) {
        if (!first)
            out << "\n";
        first = false;
        out << "node (" << key.first << "," << key.second << ")";
        if (!node.error.empty()) {
            out << " inconsistent: " << node.error << "\n";
            continue;
        }
        out << "\n";
        if (node.state)
            out << dump_hstate(d, *node.state);
    }
    return out.str();
}

} // namespace hpxf
