#pragma once

#include "drgm/model.hpp"

#include <span>

namespace drgm {

struct ShapiroWilkResult {
    double w = 0.0;
    double p_value = 0.0;

    friend bool operator==(const ShapiroWilkResult&, const ShapiroWilkResult&) = default;
};

/// Shapiro-Wilk normality test using Royston's AS R94 approximation for the
/// coefficients and the p-value. Requires 3 <= n <= 5000 and a sample with
/// non-zero spread; throws drgm::Error otherwise. Input order is irrelevant.
ShapiroWilkResult shapiro_wilk(std::span<const double> values);

/// Lower-tail quantile of the standard normal distribution (AS 241, PPND16).
double normal_quantile(double p);

}  // namespace drgm
