#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace forumnet {

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_two_sided = 1.0;
    bool degenerate = false;  // both variances zero
};

// Unequal-variance t statistic with Welch-Satterthwaite df. Groups of
// size < 2 are an error. Zero variance in both groups: t=0, p=1 when
// means are equal, p=0 (flagged) otherwise.
WelchResult welch_t_test(std::span<const double> group_a, std::span<const double> group_b);

struct PearsonResult {
    double r = 0.0;
    double p_two_sided = 1.0;
    std::size_t pairs = 0;
};

// Product-moment correlation over already-paired samples; p two-sided via
// t = r * sqrt((k-2)/(1-r^2)). Fewer than 3 pairs or zero variance gives
// nullopt with `reason` filled.
std::optional<PearsonResult> pearson(std::span<const double> x, std::span<const double> y,
                                     std::string* reason = nullptr);

// Two-sided tail probability of Student's t.
double student_t_two_sided_p(double t, double df);

// Population z-scores; nullopt when the variance is zero.
std::optional<std::vector<double>> zscores(std::span<const double> values);

}  // namespace forumnet
