#include "lexcontrast/assoc_stats.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>

namespace lexcontrast {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::overuse_in_a: return "+";
        case Direction::underuse_in_a: return "-";
        case Direction::balanced: return "=";
    }
    return "?";
}

const char* to_string(Significance s) {
    switch (s) {
        case Significance::ns: return "ns";
        case Significance::star: return "*";
        case Significance::star2: return "**";
        case Significance::star3: return "***";
    }
    return "?";
}

std::pair<double, double> expected_frequencies(std::uint64_t a, std::uint64_t b,
                                               std::uint64_t n1, std::uint64_t n2) {
    if (n1 == 0 || n2 == 0)
        throw std::domain_error("expected_frequencies: corpus size must be positive");
    if (a > n1 || b > n2)
        throw std::domain_error("expected_frequencies: count exceeds corpus size");
    const double total = static_cast<double>(a) + static_cast<double>(b);
    const double n = static_cast<double>(n1) + static_cast<double>(n2);
    return {static_cast<double>(n1) * total / n, static_cast<double>(n2) * total / n};
}

KeynessScore log_likelihood(std::uint64_t a, std::uint64_t b,
                            std::uint64_t n1, std::uint64_t n2) {
    KeynessScore k;
    k.a = a;
    k.b = b;
    k.n1 = n1;
    k.n2 = n2;
    std::tie(k.e1, k.e2) = expected_frequencies(a, b, n1, n2);

    // a/n1 vs b/n2 compared exactly
    const auto lhs = static_cast<unsigned __int128>(a) * n2;
    const auto rhs = static_cast<unsigned __int128>(b) * n1;
    k.direction = lhs > rhs   ? Direction::overuse_in_a
                  : lhs < rhs ? Direction::underuse_in_a
                              : Direction::balanced;

    if (k.direction == Direction::balanced) {
        k.ll = 0.0;
    } else {
        double ll = 0.0;
        if (a > 0) ll += static_cast<double>(a) * std::log(static_cast<double>(a) / k.e1);
        if (b > 0) ll += static_cast<double>(b) * std::log(static_cast<double>(b) / k.e2);
        ll *= 2.0;
        k.ll = ll > 0.0 ? ll : 0.0;  // guard against cancellation below zero
    }
    k.significance = significance_level(k.ll);
    return k;
}

Significance significance_level(double ll) {
    if (!(ll >= 0.0)) throw std::domain_error("significance_level: ll must be >= 0");
    if (ll >= 10.83) return Significance::star3;
    if (ll >= 6.63) return Significance::star2;
    if (ll >= 3.84) return Significance::star;
    return Significance::ns;
}

double normalized_frequency(std::uint64_t f, std::uint64_t node_total) {
    if (node_total == 0)
        throw std::domain_error("normalized_frequency: node_total must be positive");
    return 10000.0 * static_cast<double>(f) / static_cast<double>(node_total);
}

double mutual_information(std::uint64_t f_xy, std::uint64_t f_x,
                          std::uint64_t f_y, std::uint64_t n) {
    if (f_xy == 0) throw std::domain_error("mutual_information: undefined for f_xy = 0");
    if (f_x == 0 || f_y == 0 || n == 0 || n < f_x || n < f_y)
        throw std::domain_error("mutual_information: invalid marginals");
    return std::log2(static_cast<double>(f_xy) * static_cast<double>(n) /
                     (static_cast<double>(f_x) * static_cast<double>(f_y)));
}

double t_score(std::uint64_t f_xy, std::uint64_t f_x,
               std::uint64_t f_y, std::uint64_t n) {
    if (f_xy == 0) throw std::domain_error("t_score: undefined for f_xy = 0");
    if (n == 0) throw std::domain_error("t_score: n must be positive");
    const double expected =
        static_cast<double>(f_x) * static_cast<double>(f_y) / static_cast<double>(n);
    return (static_cast<double>(f_xy) - expected) / std::sqrt(static_cast<double>(f_xy));
}

std::string format_fixed(double value, int decimals) {
    double scale = std::pow(10.0, decimals);
    double rounded = std::round(value * scale) / scale;
    if (rounded == 0.0) rounded = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

}  // namespace lexcontrast
