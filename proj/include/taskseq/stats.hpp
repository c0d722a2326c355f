#pragma once

#include <cstddef>
#include <span>

namespace taskseq {

double mean(std::span<const double> xs);

/// Half-width of the two-sided 95% Student-t confidence interval of the mean.
/// Zero for fewer than two samples.
double ci95_half_width(std::span<const double> xs);

/// One-sided sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
/// Ties are dropped by the caller. Returns 1 when there are no untied pairs.
double sign_test_p_value(std::size_t wins, std::size_t losses);

}  // namespace taskseq
