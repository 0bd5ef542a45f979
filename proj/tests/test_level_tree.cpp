#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <s2v/congruence_class.hpp>
#include <s2v/errors.hpp>
#include <s2v/level_tree.hpp>
#include <s2v/stirling.hpp>
#include <s2v/stirling5.hpp>
#include <vector>

#include "oracles.hpp"

using s2v::ClassId;
using s2v::ClassifyPolicy;
using s2v::Integer;
using s2v::StatusKind;
using s2v::Valuation;
using s2v::vp;

TEST_CASE("class identity, membership, and splits") {
    const ClassId c{5, 4, 12};
    CHECK(c.modulus() == 16);
    CHECK(c.label() == "C_{4,12}");
    CHECK(c.first_member() == 12);
    CHECK(ClassId{5, 3, 2}.first_member() == 10);  // smallest n >= 5 with n = 2 mod 8
    CHECK(ClassId{8, 2, 1}.first_member() == 9);

    CHECK(s2v::class_members(c, 3) == std::vector<Integer>{12, 28, 44});
    CHECK(s2v::class_members(ClassId{5, 5, 28}, 2) == std::vector<Integer>{28, 60});
    CHECK(s2v::class_members(ClassId{1, 3, 0}, 2) == std::vector<Integer>{8, 16});
    CHECK_THROWS_AS(s2v::class_members(ClassId{5, 3, 8}, 1),
                    s2v::PreconditionViolation);  // j >= 2^m

    const auto kids = c.children();
    CHECK(kids.first == ClassId{5, 5, 12});
    CHECK(kids.second == ClassId{5, 5, 28});
    CHECK_THROWS_AS((ClassId{5, 62, 0}.children()), s2v::PreconditionViolation);
}

TEST_CASE("children partition the parent") {
    // every n in a window lies in exactly one child of whichever class holds it
    for (unsigned m = 1; m <= 6; ++m) {
        const std::uint64_t mod = std::uint64_t(1) << m;
        for (std::uint64_t n = 5; n < 5 + 512; ++n) {
            const ClassId parent{5, m, n % mod};
            const auto [lo, hi] = parent.children();
            const bool in_lo = n % (2 * mod) == lo.j;
            const bool in_hi = n % (2 * mod) == hi.j;
            CAPTURE(m);
            CAPTURE(n);
            CHECK(in_lo != in_hi);
        }
    }
}

TEST_CASE("classes at one modulus partition everything from k upward") {
    // pooled members of all 2^m classes cover [k, k+window) exactly once
    for (unsigned k : {1u, 4u, 5u, 9u}) {
        for (unsigned m = 1; m <= 5; ++m) {
            const std::uint64_t mod = std::uint64_t(1) << m;
            const std::uint64_t end = k + 256;
            std::vector<std::uint64_t> pooled;
            for (std::uint64_t j = 0; j < mod; ++j) {
                const auto members =
                    s2v::class_members(ClassId{k, m, j}, 256 / mod + 2);
                for (const Integer& n : members) {
                    REQUIRE(n >= k);
                    REQUIRE(n.fits_ulong_p());
                    const std::uint64_t v = n.get_ui();
                    REQUIRE(v % mod == j);
                    if (v < end) pooled.push_back(v);
                }
            }
            std::sort(pooled.begin(), pooled.end());
            REQUIRE(pooled.size() == end - k);
            for (std::uint64_t i = 0; i < pooled.size(); ++i)
                CHECK(pooled[i] == k + i);
        }
    }
}

TEST_CASE("exact classification: constants carry proofs, splits carry witnesses") {
    const auto policy = ClassifyPolicy::exact_periodic(256);

    const auto c512 = s2v::classify(ClassId{5, 5, 12}, policy);
    CHECK(c512.kind == StatusKind::Constant);
    CHECK(c512.certainty == s2v::Certainty::Exact);
    CHECK(c512.value == 3);

    const auto c412 = s2v::classify(ClassId{5, 4, 12}, policy);
    CHECK(c412.kind == StatusKind::NonConstant);
    REQUIRE(c412.witnesses.has_value());
    CHECK(c412.witnesses->first == 12);
    CHECK(c412.witnesses->second == 28);

    const auto deep = s2v::classify(ClassId{5, 8, 156}, policy);
    CHECK(deep.kind == StatusKind::NonConstant);
    REQUIRE(deep.witnesses.has_value());
    CHECK(deep.witnesses->first == 156);
    CHECK(deep.witnesses->second == 412);

    CHECK_THROWS_AS(s2v::classify(ClassId{4, 1, 0}, policy), s2v::PolicyMismatch);
}

TEST_CASE("sampled classification works for any k") {
    const auto s = s2v::classify(ClassId{4, 1, 0}, ClassifyPolicy::sampled(40));
    CHECK(s.kind == StatusKind::Constant);
    CHECK(s.certainty == s2v::Certainty::Empirical);
    CHECK(s.value == 0);  // v2(S(n,4)) = 0 for even n

    // below the constancy bar agreeing samples stay inconclusive
    const auto few = s2v::classify(ClassId{4, 1, 0}, ClassifyPolicy::sampled(4));
    CHECK(few.kind == StatusKind::Undetermined);
    REQUIRE(few.bound.has_value());
    CHECK(*few.bound == 10);  // largest of the members 4, 6, 8, 10

    CHECK_THROWS_AS(s2v::classify(ClassId{4, 1, 0}, ClassifyPolicy::sampled(1)),
                    s2v::PreconditionViolation);
}

TEST_CASE("constant certificate holds on a large random sample") {
    // C_{6,60} is exactly constant 4; spot-check a thousand members
    oracles::SplitMix64 rng(0xc0457a47);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t n = 60 + 64 * rng.below(1u << 20);
        CAPTURE(n);
        CHECK(s2v::v2_stirling5(n) == Valuation(4));
    }
}

TEST_CASE("nonconstant witnesses re-verify against the exact rows") {
    const auto tree = s2v::build_level_tree(5, 8, ClassifyPolicy::exact_periodic(256));
    for (const auto& [id, st] : tree.nodes) {
        if (st.kind != StatusKind::NonConstant) continue;
        REQUIRE(st.witnesses.has_value());
        if (!st.witnesses->second.fits_ulong_p()) continue;
        const std::uint64_t lo = st.witnesses->first.get_ui();
        const std::uint64_t hi = st.witnesses->second.get_ui();
        if (hi > 5000) continue;
        s2v::StirlingRowPair rows(5);
        rows.advance_to(lo);
        const Valuation vlo = vp(rows.at(5), 2);
        rows.advance_to(hi);
        const Valuation vhi = vp(rows.at(5), 2);
        CAPTURE(id.label());
        CHECK(lo % id.modulus() == id.j);
        CHECK(hi % id.modulus() == id.j);
        CHECK(vlo != vhi);
        CHECK(vlo == s2v::v2_stirling5(lo));
        CHECK(vhi == s2v::v2_stirling5(hi));
    }
}

TEST_CASE("k = 5 level tree structure is pinned level by level") {
    const auto tree = s2v::build_level_tree(5, 8, ClassifyPolicy::exact_periodic(256));
    CHECK(tree.k == 5);
    CHECK(tree.max_level == 8);

    const auto js = [&](unsigned m) {
        std::vector<std::uint64_t> v;
        for (const auto& id : s2v::m_level(tree, m)) v.push_back(id.j);
        return v;
    };
    CHECK(js(1) == std::vector<std::uint64_t>{0, 1});
    CHECK(js(2) == std::vector<std::uint64_t>{0, 3});
    CHECK(js(3) == std::vector<std::uint64_t>{4, 7});
    CHECK(js(4) == std::vector<std::uint64_t>{12, 15});
    CHECK(js(5) == std::vector<std::uint64_t>{28, 31});
    CHECK(js(6) == std::vector<std::uint64_t>{28, 31});
    CHECK(js(7) == std::vector<std::uint64_t>{28, 31});
    CHECK(js(8) == std::vector<std::uint64_t>{31, 156});

    // sibling constants at each split, levels 2 through 8
    const auto val = [&](unsigned m, std::uint64_t j) {
        const auto& st = tree.nodes.at(ClassId{5, m, j});
        REQUIRE(st.kind == StatusKind::Constant);
        REQUIRE(st.value.has_value());
        return *st.value;
    };
    CHECK(val(2, 1) == 0);
    CHECK(val(2, 2) == 0);
    CHECK(val(3, 0) == 1);
    CHECK(val(3, 3) == 1);
    CHECK(val(4, 4) == 2);
    CHECK(val(4, 7) == 2);
    CHECK(val(5, 12) == 3);
    CHECK(val(5, 15) == 3);
    CHECK(val(6, 60) == 4);
    CHECK(val(6, 63) == 4);
    CHECK(val(7, 92) == 5);
    CHECK(val(7, 95) == 5);
    CHECK(val(8, 28) == 6);
    CHECK(val(8, 159) == 6);

    CHECK_THROWS_AS(s2v::m_level(tree, 0), s2v::OutOfRange);
    CHECK_THROWS_AS(s2v::m_level(tree, 9), s2v::OutOfRange);
}

TEST_CASE("degenerate tree: k = 1 is constant everywhere") {
    const auto tree = s2v::build_level_tree(1, 3, ClassifyPolicy::sampled(20));
    CHECK(tree.nodes.size() == 2);  // both roots constant, no splits
    for (unsigned m = 1; m <= 3; ++m) CHECK(s2v::m_level(tree, m).empty());
    for (const auto& [id, st] : tree.nodes) {
        CHECK(st.kind == StatusKind::Constant);
        CHECK(st.value == 0);
    }
}

TEST_CASE("sampled k = 4 tree agrees with a direct sweep") {
    // v2(S(n,4)) alternates 0, 1 with the parity of n; verify, then compare
    s2v::StirlingRowPair rows(4);
    for (std::uint64_t n = 4; n <= 4096; ++n) {
        rows.advance_to(n);
        CAPTURE(n);
        CHECK(vp(rows.at(4), 2) == Valuation(n % 2));
    }
    const auto tree = s2v::build_level_tree(4, 6, ClassifyPolicy::sampled(64));
    CHECK(tree.nodes.size() == 2);
    const auto& even = tree.nodes.at(ClassId{4, 1, 0});
    const auto& odd = tree.nodes.at(ClassId{4, 1, 1});
    CHECK(even.kind == StatusKind::Constant);
    CHECK(even.value == 0);
    CHECK(odd.kind == StatusKind::Constant);
    CHECK(odd.value == 1);
}

TEST_CASE("valuation lower-bound probe") {
    // n = 3 mod 4: valuations are 1 on C_{3,3} and at least 2 on C_{3,7}
    CHECK(s2v::class_valuation_exceeds(ClassId{5, 2, 3}, 0));
    CHECK_FALSE(s2v::class_valuation_exceeds(ClassId{5, 2, 3}, 1));
    CHECK(s2v::class_valuation_exceeds(ClassId{5, 5, 12}, 2));  // constant 3
    CHECK_FALSE(s2v::class_valuation_exceeds(ClassId{5, 5, 12}, 3));
    CHECK(s2v::class_valuation_exceeds(ClassId{5, 8, 156}, 6));     // min is 7
    CHECK_FALSE(s2v::class_valuation_exceeds(ClassId{5, 1, 0}, 0));  // v2(S(6,5)) = 0
    CHECK_THROWS_AS(s2v::class_valuation_exceeds(ClassId{4, 1, 0}, 1),
                    s2v::PolicyMismatch);
    CHECK_THROWS_AS(s2v::class_valuation_exceeds(ClassId{5, 1, 0}, 251),
                    s2v::PreconditionViolation);
    // a fine class with no pre-periodic members hits the cycle budget guard
    CHECK_THROWS_AS(s2v::class_valuation_exceeds(ClassId{5, 26, 300}, 250),
                    s2v::PreconditionViolation);
}

TEST_CASE("DOT export shape") {
    const auto tree = s2v::build_level_tree(5, 5, ClassifyPolicy::exact_periodic(256));
    const std::string dot = s2v::export_tree(tree, s2v::TreeFormat::Dot);
    CHECK(dot.find("digraph level_tree") != std::string::npos);
    CHECK(dot.find("\"C_{5,12}\" [label=\"C_{5,12}: const 3\"]") != std::string::npos);
    CHECK(dot.find("\"C_{4,12}\" -> \"C_{5,12}\"") != std::string::npos);
    // frontier nodes have no outgoing edges
    CHECK(dot.find("\"C_{5,28}\" ->") == std::string::npos);

    const auto flat = s2v::build_level_tree(1, 2, ClassifyPolicy::sampled(20));
    const std::string leaf = s2v::export_tree(flat, s2v::TreeFormat::Dot);
    CHECK(leaf.find("->") == std::string::npos);
    CHECK(leaf.find("\"C_{1,0}\"") != std::string::npos);
    CHECK(leaf.find("\"C_{1,1}\"") != std::string::npos);
}

TEST_CASE("JSON export round-trips") {
    const auto exact = s2v::build_level_tree(5, 8, ClassifyPolicy::exact_periodic(256));
    CHECK(s2v::parse_tree_json(s2v::export_tree(exact, s2v::TreeFormat::Json)) == exact);

    const auto flat = s2v::build_level_tree(1, 3, ClassifyPolicy::sampled(20));
    CHECK(s2v::parse_tree_json(s2v::export_tree(flat, s2v::TreeFormat::Json)) == flat);

    const auto k4 = s2v::build_level_tree(4, 6, ClassifyPolicy::sampled(64));
    CHECK(s2v::parse_tree_json(s2v::export_tree(k4, s2v::TreeFormat::Json)) == k4);
}

TEST_CASE("JSON schema details") {
    const auto tree = s2v::build_level_tree(5, 3, ClassifyPolicy::exact_periodic(256));
    const std::string doc = s2v::export_tree(tree, s2v::TreeFormat::Json);
    CHECK(doc.back() == '\n');
    const auto j = nlohmann::json::parse(doc);
    CHECK(j.at("k") == 5);
    CHECK(j.at("max_level") == 3);
    bool saw_pair = false, saw_null = false;
    for (const auto& node : j.at("nodes")) {
        const auto& ch = node.at("children");
        if (ch.is_null()) {
            saw_null = true;
        } else {
            REQUIRE(ch.is_array());
            REQUIRE(ch.size() == 2);
            REQUIRE(ch[0].is_array());
            REQUIRE(ch[0].size() == 2);
            CHECK(ch[0][0].is_number_unsigned());
            saw_pair = true;
        }
    }
    CHECK(saw_pair);
    CHECK(saw_null);

    // the inconclusive-scan bound is a diagnostic, not part of the document
    const auto vague = s2v::build_level_tree(4, 2, ClassifyPolicy::sampled(4));
    REQUIRE(vague.nodes.at(ClassId{4, 1, 0}).bound.has_value());
    const auto back = s2v::parse_tree_json(s2v::export_tree(vague, s2v::TreeFormat::Json));
    CHECK_FALSE(back.nodes.at(ClassId{4, 1, 0}).bound.has_value());
    CHECK(back.nodes.at(ClassId{4, 1, 0}).kind == StatusKind::Undetermined);
}
