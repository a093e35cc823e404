#pragma once

#include <array>
#include <string>

#include "polsar/hermitian.hpp"

namespace polsar::reference {

/// Bundled class covariance matrices estimated over the land-cover
/// samples of the source data set (upper triangle; the lower triangle
/// is the conjugate). Six of the seven classes are available: A2 was
/// not published.
inline HermitianMatrix sigma_a1() {
    return {47.95, 2.96, 17.39, {-0.03, -0.47}, {7.04, 4.09}, {-0.11, -0.25}};
}
inline HermitianMatrix sigma_a3() {
    return {534.48, 4.59, 262.25, {2.12, 5.54}, {41.10, 79.48}, {-1.38, 0.95}};
}
inline HermitianMatrix sigma_pf() {
    return {68.86, 20.87, 61.03, {-0.32, -0.03}, {20.39, 1.75}, {-0.49, -0.23}};
}
inline HermitianMatrix sigma_ps() {
    return {49.71, 6.45, 38.50, {0.24, -0.28}, {22.91, -3.01}, {-0.36, 0.03}};
}
inline HermitianMatrix sigma_rg() {
    return {55.20, 9.17, 35.13, {0.24, 0.15}, {18.51, 0.61}, {-0.38, -0.14}};
}
inline HermitianMatrix sigma_bs() {
    return {21.15, 2.27, 15.70, {0.01, -0.06}, {9.01, -1.98}, {-0.03, -0.08}};
}

inline std::array<std::string, 6> class_names() {
    return {"A1", "A3", "PF", "PS", "RG", "BS"};
}

inline std::array<HermitianMatrix, 6> class_matrices() {
    return {sigma_a1(), sigma_a3(), sigma_pf(), sigma_ps(), sigma_rg(), sigma_bs()};
}

/// Published Hellinger distances between the six classes, upper
/// triangle in the order A1, A3, PF, PS, RG, BS.
inline std::array<std::array<double, 6>, 6> published_hellinger() {
    std::array<std::array<double, 6>, 6> t{};
    auto set = [&](int i, int j, double v) { t[i][j] = t[j][i] = v; };
    set(0, 1, 0.961);
    set(0, 2, 0.772);
    set(0, 3, 0.344);
    set(0, 4, 0.410);
    set(0, 5, 0.315);
    set(1, 2, 0.906);
    set(1, 3, 0.933);
    set(1, 4, 0.928);
    set(1, 5, 0.989);
    set(2, 3, 0.443);
    set(2, 4, 0.283);
    set(2, 5, 0.899);
    set(3, 4, 0.062);
    set(3, 5, 0.523);
    set(4, 5, 0.652);
    return t;
}

}  // namespace polsar::reference
