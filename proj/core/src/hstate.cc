#include "hpxf/hstate.h"

#include <algorithm>
#include <sstream>

namespace hpxf {

std::string render_triple(const Domain &d, const KnowledgeTriple &t) {
    return d.fluent_name(t.fluent) + (t.negative ? "!=" : "=") + d.value_name(t.value) +
           " @" + std::to_string(t.step);
}

KnowledgeHistory::InsertResult KnowledgeHistory::insert(const KnowledgeTriple &t,
                                                        KnowledgeTriple *conflicting) {
    Cell &cell = cells[{t.fluent, t.step}];
    if (t.negative) {
        if (cell.positive && *cell.positive == t.value) {
            if (conflicting)
                *conflicting = KnowledgeTriple{t.fluent, t.value, false, t.step};
            return InsertResult::Conflict;
        }
        auto it = std::lower_bound(cell.negatives.begin(), cell.negatives.end(), t.value);
        if (it != cell.negatives.end() && *it == t.value)
            return InsertResult::Present;
        cell.negatives.insert(it, t.value);
        ++triple_count;
        return InsertResult::Added;
    }
    if (cell.positive) {
        if (*cell.positive == t.value)
            return InsertResult::Present;
        if (conflicting)
            *conflicting = KnowledgeTriple{t.fluent, *cell.positive, false, t.step};
        return InsertResult::Conflict;
    }
    if (std::binary_search(cell.negatives.begin(), cell.negatives.end(), t.value)) {
        if (conflicting)
            *conflicting = KnowledgeTriple{t.fluent, t.value, true, t.step};
        return InsertResult::Conflict;
    }
    cell.positive = t.value;
    ++triple_count;
    return InsertResult::Added;
}

bool KnowledgeHistory::knows(FluentId f, ValueId v, Step t) const {
    auto it = cells.find({f, t});
    return it != cells.end() && it->second.positive && *it->second.positive == v;
}

bool KnowledgeHistory::knows_not(FluentId f, ValueId v, Step t) const {
    auto it = cells.find({f, t});
    return it != cells.end() &&
           std::binary_search(it->second.negatives.begin(), it->second.negatives.end(), v);
}

std::optional<ValueId> KnowledgeHistory::known_value(FluentId f, Step t) const {
    auto it = cells.find({f, t});
    if (it == cells.end())
        return std::nullopt;
    return it->second.positive;
}

std::vector<KnowledgeTriple> KnowledgeHistory::triples() const {
    std::vector<KnowledgeTriple> out;
    out.reserve(triple_count);
    for (const auto &[key, cell] : cells) {
        if (cell.positive)
            out.push_back({key.first, *cell.positive, false, key.second});
        for (ValueId v : cell.negatives)
            out.push_back({key.first, v, true, key.second});
    }
    return out;
}

Step HState::now() const {
    if (ah.empty())
        return 0;
    Step max_step = 0;
    for (const auto &occ : ah)
        max_step = std::max(max_step, occ.step);
    return max_step + 1;
}

void HState::add_occurrence(ActionId a, Step t) {
    ActionOccurrence occ{a, t};
    auto it = std::lower_bound(ah.begin(), ah.end(), occ);
    if (it == ah.end() || !(*it == occ))
        ah.insert(it, occ);
}

std::string HState::key() const {
    std::ostringstream out;
    for (const auto &occ : ah)
        out << 'a' << occ.action.index << '@' << occ.step << ';';
    out << '|';
    for (const auto &[k, cell] : kh.all_cells()) {
        out << 'f' << k.first.index << '@' << k.second << ':';
        if (cell.positive)
            out << '+' << cell.positive->index;
        for (ValueId v : cell.negatives)
            out << '-' << v.index;
        out << ';';
    }
    return out.str();
}

HState initial_hstate(const Domain &d) {
    HState h;
    for (const auto &vp : d.vps)
        h.kh.insert(KnowledgeTriple{vp.pair.fluent, vp.pair.value, false, 0});
    return h;
}

std::string dump_hstate(const Domain &d, const HState &h) {
    std::ostringstream out;
    std::vector<ActionOccurrence> occs = h.ah;
    std::sort(occs.begin(), occs.end(), [&](const auto &a, const auto &b) {
        return std::tie(a.step, d.action_name(a.action)) <
               std::tie(b.step, d.action_name(b.action));
    });
    for (const auto &occ : occs)
        out << "occ " << d.action_name(occ.action) << " @" << occ.step << "\n";

    std::vector<KnowledgeTriple> ts = h.kh.triples();
    std::vector<std::pair<std::string, Step>> lines;
    lines.reserve(ts.size());
    for (const auto &t : ts)
        lines.emplace_back(d.fluent_name(t.fluent) + (t.negative ? "!=" : "=") +
                               d.value_name(t.value),
                           t.step);
    std::sort(lines.begin(), lines.end());
    for (const auto &[pair, step] : lines)
        out << "knows " << pair << " @" << step << "\n";
    return out.str();
}

} // namespace hpxf
