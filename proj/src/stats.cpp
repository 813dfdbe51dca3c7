#include "forumnet/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace forumnet {

namespace {

void mean_var(std::span<const double> xs, double& mean, double& var) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);  // sample variance
}

}  // namespace

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(dist, -std::abs(t));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: each group needs at least 2 values");
    double ma, va, mb, vb;
    mean_var(a, ma, va);
    mean_var(b, mb, vb);
    WelchResult res;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    if (va == 0.0 && vb == 0.0) {
        res.degenerate = true;
        res.df = na + nb - 2.0;
        if (ma == mb) {
            res.t = 0.0;
            res.p_two_sided = 1.0;
        } else {
            res.t = ma < mb ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
            res.p_two_sided = 0.0;
        }
        return res;
    }
    const double sa = va / na, sb = vb / nb;
    res.t = (ma - mb) / std::sqrt(sa + sb);
    res.df = (sa + sb) * (sa + sb) /
             (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    res.p_two_sided = student_t_two_sided_p(res.t, res.df);
    return res;
}

std::optional<PearsonResult> pearson(std::span<const double> x, std::span<const double> y,
                                     std::string* reason) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    const std::size_t k = x.size();
    if (k < 3) {
        if (reason) *reason = "fewer than 3 complete pairs";
        return std::nullopt;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        if (reason) *reason = "zero variance";
        return std::nullopt;
    }
    PearsonResult res;
    res.pairs = k;
    res.r = sxy / std::sqrt(sxx * syy);
    res.r = std::clamp(res.r, -1.0, 1.0);
    const double df = static_cast<double>(k) - 2.0;
    if (std::abs(res.r) >= 1.0) {
        res.p_two_sided = 0.0;
    } else {
        double t = res.r * std::sqrt(df / (1.0 - res.r * res.r));
        res.p_two_sided = student_t_two_sided_p(t, df);
    }
    return res;
}

std::optional<std::vector<double>> zscores(std::span<const double> values) {
    const std::size_t k = values.size();
    if (k == 0) return std::nullopt;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(k);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(k);
    if (var == 0.0) return std::nullopt;
    const double sd = std::sqrt(var);
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = (values[i] - mean) / sd;
    return out;
}

}  // namespace forumnet
