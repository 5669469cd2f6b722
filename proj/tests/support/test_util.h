#ifndef HPXF_TESTS_TEST_UTIL_H
#define HPXF_TESTS_TEST_UTIL_H

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hpxf/compile.h"
#include "hpxf/domain.h"
#include "hpxf/hstate.h"
#include "hpxf/parser.h"

namespace hpxf::testing {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string data_path(const std::string &name) {
    return std::string(HPXF_TEST_DATA_DIR) + "/" + name;
}

inline Domain wheelchair_domain() {
    return parse_domain(read_file(data_path("wheelchair.hpx")));
}

inline FluentValue fv(const Domain &d, const std::string &fluent, const std::string &value) {
    return FluentValue{*d.find_fluent(fluent), *d.find_value(value)};
}

inline ActionId act(const Domain &d, const std::string &name) {
    return *d.find_action(name);
}

// (fluent, value, step) rendering of the positive triples of a state.
inline std::set<std::string> positive_triples(const Domain &d, const HState &h) {
    std::set<std::string> out;
    for (const auto &t : h.kh.triples())
        if (!t.negative)
            out.insert(d.fluent_name(t.fluent) + "=" + d.value_name(t.value) + "@" +
                       std::to_string(t.step));
    return out;
}

// Content keys of an effect proposition set, for exact set comparison.
using EpKey = std::tuple<std::string, std::vector<std::string>, std::string>;

inline EpKey ep_key(const Domain &d, const EffectProposition &ep) {
    std::vector<std::string> conds;
    for (const auto &c : ep.conditions)
        conds.push_back(d.render(c));
    return {d.action_name(ep.action), conds, d.render(ep.effect)};
}

inline std::set<EpKey> ep_keys(const Domain &d, const std::vector<EffectProposition> &eps) {
    std::set<EpKey> out;
    for (const auto &ep : eps)
        out.insert(ep_key(d, ep));
    return out;
}

} // namespace hpxf::testing

#endif
