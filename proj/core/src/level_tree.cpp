#include "s2v/level_tree.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <utility>

#include "s2v/errors.hpp"

namespace s2v {

LevelTree build_level_tree(std::uint64_t k, unsigned max_level,
                           const ClassifyPolicy& policy) {
    if (k < 1) throw PreconditionViolation("build_level_tree: need k >= 1");
    if (max_level < 1 || max_level > 62)
        throw PreconditionViolation("build_level_tree: need 1 <= max_level <= 62");
    LevelTree tree;
    tree.k = k;
    tree.root_level = 1;
    tree.max_level = max_level;
    for (unsigned m = 1; m <= max_level; ++m) tree.levels[m];

    std::vector<ClassId> frontier{ClassId{k, 1, 0}, ClassId{k, 1, 1}};
    for (unsigned m = 1; m <= max_level && !frontier.empty(); ++m) {
        std::vector<ClassId> next;
        for (const ClassId& id : frontier) {
            const ClassStatus st = classify(id, policy);
            tree.nodes.emplace(id, st);
            if (st.kind != StatusKind::NonConstant) continue;
            tree.levels[m].push_back(id);
            if (m < max_level) {
                const auto [lo, hi] = id.children();
                next.push_back(lo);
                next.push_back(hi);
            }
        }
        std::sort(tree.levels[m].begin(), tree.levels[m].end());
        frontier = std::move(next);
    }
    return tree;
}

const std::vector<ClassId>& m_level(const LevelTree& tree, unsigned m) {
    if (m < tree.root_level || m > tree.max_level)
        throw OutOfRange("m_level: level " + std::to_string(m) +
                         " outside [" + std::to_string(tree.root_level) + ", " +
                         std::to_string(tree.max_level) + "]");
    return tree.levels.at(m);
}

namespace {

std::string export_dot(const LevelTree& tree) {
    std::ostringstream os;
    os << "digraph level_tree {\n";
    os << "  rankdir=TB;\n";
    os << "  node [shape=box];\n";
    for (const auto& [id, st] : tree.nodes)
        os << "  \"" << id.label() << "\" [label=\"" << id.label() << ": "
           << status_label(st) << "\"];\n";
    for (const auto& [id, st] : tree.nodes) {
        if (st.kind != StatusKind::NonConstant || id.m >= tree.max_level)
            continue;
        const auto [lo, hi] = id.children();
        os << "  \"" << id.label() << "\" -> \"" << lo.label() << "\";\n";
        os << "  \"" << id.label() << "\" -> \"" << hi.label() << "\";\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::ordered_json witness_json(const std::pair<Integer, Integer>& w) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Integer* x : {&w.first, &w.second}) {
        if (x->fits_ulong_p())
            arr.push_back(static_cast<std::uint64_t>(x->get_ui()));
        else
            arr.push_back(x->get_str());
    }
    return arr;
}

std::string export_json(const LevelTree& tree) {
    nlohmann::ordered_json doc;
    doc["k"] = tree.k;
    doc["max_level"] = tree.max_level;
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& [id, st] : tree.nodes) {  // map order is (m, j) ascending
        nlohmann::ordered_json node;
        node["m"] = id.m;
        node["j"] = id.j;
        switch (st.kind) {
            case StatusKind::Constant:
                node["status"] = "constant";
                break;
            case StatusKind::NonConstant:
                node["status"] = "nonconstant";
                break;
            case StatusKind::Undetermined:
                node["status"] = "undetermined";
                break;
        }
        if (st.value)
            node["value"] = *st.value;
        else
            node["value"] = nullptr;
        node["certainty"] =
            st.certainty == Certainty::Exact ? "exact" : "empirical";
        if (st.witnesses)
            node["witnesses"] = witness_json(*st.witnesses);
        else
            node["witnesses"] = nullptr;
        if (st.kind == StatusKind::NonConstant && id.m < tree.max_level) {
            const auto [lo, hi] = id.children();
            node["children"] = nlohmann::ordered_json::array(
                {nlohmann::ordered_json::array({lo.m, lo.j}),
                 nlohmann::ordered_json::array({hi.m, hi.j})});
        } else {
            node["children"] = nullptr;
        }
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

Integer json_integer(const nlohmann::json& v) {
    if (v.is_string()) return Integer(v.get<std::string>());
    return Integer(static_cast<unsigned long>(v.get<std::uint64_t>()));
}

}  // namespace

std::string export_tree(const LevelTree& tree, TreeFormat format) {
    return format == TreeFormat::Dot ? export_dot(tree) : export_json(tree);
}

LevelTree parse_tree_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    LevelTree tree;
    tree.k = doc.at("k").get<std::uint64_t>();
    tree.root_level = 1;
    tree.max_level = doc.at("max_level").get<unsigned>();
    for (unsigned m = 1; m <= tree.max_level; ++m) tree.levels[m];
    for (const auto& node : doc.at("nodes")) {
        ClassId id{tree.k, node.at("m").get<unsigned>(),
                   node.at("j").get<std::uint64_t>()};
        ClassStatus st;
        const std::string status = node.at("status").get<std::string>();
        st.kind = status == "constant"      ? StatusKind::Constant
                  : status == "nonconstant" ? StatusKind::NonConstant
                                            : StatusKind::Undetermined;
        st.certainty = node.at("certainty").get<std::string>() == "exact"
                           ? Certainty::Exact
                           : Certainty::Empirical;
        if (!node.at("value").is_null())
            st.value = node.at("value").get<std::uint64_t>();
        if (!node.at("witnesses").is_null()) {
            const auto& w = node.at("witnesses");
            st.witnesses = std::pair<Integer, Integer>(json_integer(w.at(0)),
                                                       json_integer(w.at(1)));
        }
        if (st.kind == StatusKind::NonConstant)
            tree.levels[id.m].push_back(id);
        tree.nodes.emplace(id, std::move(st));
    }
    return tree;
}

}  // namespace s2v
