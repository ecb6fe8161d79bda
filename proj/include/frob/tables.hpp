#pragma once

// Reference rows for the class table (k <= 14) and the m_k table (k <= 18),
// plus the comparisons the tables command runs against them.

#include "frob/mkcalc.hpp"
#include "frob/vvtransform.hpp"

#include <optional>
#include <set>

namespace frob {

// odd k listed by 2 beta, even k by beta
inline const std::map<Int, std::vector<std::vector<Int>>>& class_table() {
    static const std::map<Int, std::vector<std::vector<Int>>> t = {
        {1, {{1}}},
        {2, {{0, 1}}},
        {3, {{1}, {3}}},
        {4, {{0, 2}, {1}}},
        {5, {{1, 3}, {5}}},
        {6, {{0, 3}, {1, 2}}},
        {7, {{1, 3, 5}, {7}}},
        {8, {{0, 4}, {1, 3}, {2}}},
        {9, {{1, 5, 7}, {3}, {9}}},
        {10, {{0, 5}, {1, 2, 3, 4}}},
        {11, {{1, 3, 5, 7, 9}, {11}}},
        {12, {{0, 6}, {1, 5}, {2, 4}, {3}}},
        {13, {{1, 3, 5, 7, 9, 11}, {13}}},
        {14, {{0, 7}, {1, 2, 3, 4, 5, 6}}},
    };
    return t;
}

inline const std::vector<Int>& mk_table() {
    static const std::vector<Int> t = {1, 1, 1, 1, 1, 1, 1, 2, 2, 1, 1, 2, 1, 1, 2, 2, 1, 2};
    return t;
}

// classes in the table's labelling
inline std::vector<std::vector<Int>> class_labels(Int k) {
    std::vector<std::vector<Int>> out;
    for (const auto& cls : equivalence_classes(k)) {
        std::vector<Int> v;
        for (const Rational& b : cls) v.push_back(k % 2 ? to_int(Rational(2 * b).get_num()) : to_int(b.get_num()));
        out.push_back(v);
    }
    return out;
}

inline bool classes_match_table(Int k) {
    auto it = class_table().find(k);
    if (it == class_table().end()) throw precondition_error("no reference row for k = " + std::to_string(k));
    auto got = class_labels(k);
    std::set<std::vector<Int>> a(got.begin(), got.end()), b(it->second.begin(), it->second.end());
    return a == b;
}

inline std::optional<Int> mk_reference(Int k) {
    if (k < 1 || k > static_cast<Int>(mk_table().size())) return std::nullopt;
    return mk_table()[static_cast<std::size_t>(k - 1)];
}

}  // namespace frob
