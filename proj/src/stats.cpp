#include "taskseq/stats.hpp"

#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace taskseq {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double total = 0.0;
    for (double x : xs) total += x;
    return total / static_cast<double>(xs.size());
}

double ci95_half_width(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    boost::math::students_t dist(static_cast<double>(n - 1));
    return boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(n));
}

double sign_test_p_value(std::size_t wins, std::size_t losses) {
    const std::size_t n = wins + losses;
    if (n == 0) return 1.0;
    if (wins == 0) return 1.0;
    boost::math::binomial dist(static_cast<double>(n), 0.5);
    // P(X >= wins) = 1 - P(X <= wins - 1)
    return boost::math::cdf(boost::math::complement(dist, static_cast<double>(wins - 1)));
}

}  // namespace taskseq
