#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace perchopt {

/// Axis-aligned box domain. Every candidate the optimizer produces lives
/// inside [lower[j], upper[j]] for each coordinate j.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchSpace() = default;
    SearchSpace(std::vector<double> lo, std::vector<double> hi);

    /// Box [-half_width, +half_width]^dims.
    static SearchSpace symmetric(std::size_t dims, double half_width);
    static SearchSpace box(std::size_t dims, double lo, double hi);

    std::size_t dims() const { return lower.size(); }
    double width(std::size_t j) const { return upper[j] - lower[j]; }
    double clamp(std::size_t j, double v) const;
    bool contains(std::span<const double> x, double tol = 0.0) const;
};

} // namespace perchopt
