#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "s2v/congruence_class.hpp"

namespace s2v {

// Binary splitting tree of congruence classes for v_2(S(n,k)). Level 1 holds
// C_{1,0} and C_{1,1}; every non-constant class splits into its two children
// one level down, until max_level. levels[m] records the m-level: the
// non-constant classes modulo 2^m, ascending by residue. Constant and
// undetermined classes are leaves.
struct LevelTree {
    std::uint64_t k = 0;
    unsigned root_level = 1;
    unsigned max_level = 1;
    std::map<ClassId, ClassStatus> nodes;
    std::map<unsigned, std::vector<ClassId>> levels;

    friend bool operator==(const LevelTree&, const LevelTree&) = default;
};

// Classifies and splits from the 1-level down to max_level.
// Requires k >= 1 and max_level >= 1; propagates classify errors.
LevelTree build_level_tree(std::uint64_t k, unsigned max_level,
                           const ClassifyPolicy& policy);

// The recorded m-level, ascending j. Throws OutOfRange unless
// root_level <= m <= max_level.
const std::vector<ClassId>& m_level(const LevelTree& tree, unsigned m);

enum class TreeFormat { Dot, Json };

// Byte-deterministic serialization.
//
// DOT: one box per class, labeled "C_{m,j}: const c" / "C_{m,j}: nonconst
// (a,b)" / "C_{m,j}: undetermined", edges parent -> child.
//
// JSON: {"k", "max_level", "nodes": [{"m", "j", "status", "value",
// "certainty", "witnesses", "children"}]} with keys in that order and nodes
// sorted by (m, j). "children" holds the two child [m, j] pairs for
// non-constant nodes whose children were built (m < max_level), else null.
// The undetermined inspection bound is not part of the schema.
std::string export_tree(const LevelTree& tree, TreeFormat format);

// Inverse of the JSON export. The undetermined inspection bound is not
// serialized, so it comes back unset.
LevelTree parse_tree_json(const std::string& text);

}  // namespace s2v
