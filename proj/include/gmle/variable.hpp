#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmle {

// Variable families of the model ring: k (concentration block), l (directed
// edge coefficients), p (bidirected block), s (covariance entries). Aux is
// reserved for helper variables such as the saturation variable.
enum class VarKind : std::uint8_t { K = 0, L = 1, P = 2, S = 3, Aux = 4 };

inline char var_kind_letter(VarKind k) {
    switch (k) {
        case VarKind::K: return 'k';
        case VarKind::L: return 'l';
        case VarKind::P: return 'p';
        case VarKind::S: return 's';
        case VarKind::Aux: return 't';
    }
    return '?';
}

// Identity of one symbolic variable. (kind, i, j) is unique; for the
// symmetric families K, P, S the indices satisfy i <= j. The canonical
// total order is kind first (K < L < P < S < Aux), then lexicographic
// on (i, j); it fixes identity and storage, not the monomial order.
struct VariableId {
    VarKind kind;
    int i = 0;
    int j = 0;

    static VariableId k(int i, int j) { return make_symmetric(VarKind::K, i, j); }
    static VariableId l(int i, int j) { return VariableId{VarKind::L, i, j}; }
    static VariableId p(int i, int j) { return make_symmetric(VarKind::P, i, j); }
    static VariableId s(int i, int j) { return make_symmetric(VarKind::S, i, j); }
    static VariableId aux(int i = 0) { return VariableId{VarKind::Aux, i, i}; }

    static VariableId make_symmetric(VarKind kind, int i, int j) {
        if (i > j) std::swap(i, j);
        return VariableId{kind, i, j};
    }

    friend auto operator<=>(const VariableId& a, const VariableId& b) = default;

    std::string name() const {
        if (kind == VarKind::Aux) return i == 0 ? "t" : ("t" + std::to_string(i));
        return std::string(1, var_kind_letter(kind)) + "_(" + std::to_string(i) + "," +
               std::to_string(j) + ")";
    }
};

}  // namespace gmle
