#pragma once

#include <cassert>
#include <string>
#include <tuple>

#include "species/errors.hpp"

namespace species {

enum class GenKind : unsigned char { X = 0, E = 1, C = 2 };

// A polynomial indeterminate of the species ring: X, E_n (n >= 2) or
// C_n (n >= 3). E_0 = 1, E_1 = X, C_1 = X and C_2 = E_2 are identified at
// construction sites, never stored. Degree = cardinality of the labels the
// generator describes.
struct Generator {
    GenKind kind;
    int index; // X: 1; E_n/C_n: n

    static Generator x() { return {GenKind::X, 1}; }
    static Generator e(int n) {
        if (n < 2) throw ConfigError("Generator::e requires n >= 2");
        return {GenKind::E, n};
    }
    static Generator c(int n) {
        if (n < 3) throw ConfigError("Generator::c requires n >= 3");
        return {GenKind::C, n};
    }

    int degree() const { return index; }

    // Canonical generator order: by degree, then E before C (X is the unique
    // degree-1 generator).
    friend bool operator<(const Generator& a, const Generator& b) {
        return std::tuple(a.index, a.kind) < std::tuple(b.index, b.kind);
    }
    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.index == b.index;
    }

    std::string str() const {
        switch (kind) {
            case GenKind::X: return "X";
            case GenKind::E: return "E" + std::to_string(index);
            case GenKind::C: return "C" + std::to_string(index);
        }
        return {};
    }
};

} // namespace species
