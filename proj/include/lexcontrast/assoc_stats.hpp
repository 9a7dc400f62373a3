// Keyness and collocation statistics: expected frequencies, log-likelihood
// with significance stars and direction, normalized frequency (per 10,000
// node occurrences), pointwise MI and T-score. All functions are pure.

#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace lexcontrast {

enum class Direction { overuse_in_a, underuse_in_a, balanced };
enum class Significance { ns, star, star2, star3 };

// "+", "-", "=" / "ns", "*", "**", "***"
const char* to_string(Direction d);
const char* to_string(Significance s);

struct KeynessScore {
    std::uint64_t a = 0, b = 0;    // observed counts
    std::uint64_t n1 = 0, n2 = 0;  // corpus sizes
    double e1 = 0.0, e2 = 0.0;     // expected counts
    double ll = 0.0;               // log-likelihood, >= 0
    Direction direction = Direction::balanced;
    Significance significance = Significance::ns;
};

// e1 = n1 (a+b)/(n1+n2), e2 = n2 (a+b)/(n1+n2).
// Throws std::domain_error when n1 or n2 is zero, or a > n1 / b > n2.
std::pair<double, double> expected_frequencies(std::uint64_t a, std::uint64_t b,
                                               std::uint64_t n1, std::uint64_t n2);

// ll = 2 (a ln(a/e1) + b ln(b/e2)), zero-count terms contribute 0.
// Direction compares a/n1 and b/n2 as exact rationals.
KeynessScore log_likelihood(std::uint64_t a, std::uint64_t b,
                            std::uint64_t n1, std::uint64_t n2);

// Chi-square(1 df) cutoffs 3.84 / 6.63 / 10.83. Throws on negative ll.
Significance significance_level(double ll);

// 10000 f / node_total. Throws on node_total = 0.
double normalized_frequency(std::uint64_t f, std::uint64_t node_total);

// MI-Score (Church & Hanks 1990): log2(f_xy N / (f_x f_y)), bits.
// Undefined for f_xy = 0; callers report such cells as absent.
double mutual_information(std::uint64_t f_xy, std::uint64_t f_x,
                          std::uint64_t f_y, std::uint64_t n);

// T-Score: (f_xy - f_x f_y / N) / sqrt(f_xy).
double t_score(std::uint64_t f_xy, std::uint64_t f_x,
               std::uint64_t f_y, std::uint64_t n);

// Fixed-point rendering, half-up (21.949 -> "21.95"), as used by every
// report table.
std::string format_fixed(double value, int decimals = 2);

struct CollocationRecord {
    std::string node;
    std::string collocate;
    std::string relation;  // empty for windowed collocation
    std::uint64_t f = 0;
    std::uint64_t node_total = 0;
    double nf = 0.0;
    double mi = 0.0;
    double t = 0.0;

    bool operator==(const CollocationRecord&) const = default;
};

}  // namespace lexcontrast
