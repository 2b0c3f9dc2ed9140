// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Pass@k, Wilson score interval and rater-agreement statistics.

#include "schemaguard/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace schemaguard {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(long long n, long long k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact: r is C(n-k+i, i) after this step
    }
    return r;
}

/// 1 - C(n-c, k) / C(n, k) as an exact fraction in [0, 1].
inline Rational pass_at_k_exact(long long n, long long c, long long k)
{
    if (n < 1 || c < 0 || c > n || k < 1 || k > n)
        throw DomainError("pass@k requires 0 <= c <= n and 1 <= k <= n (got n=" + std::to_string(n) +
                          ", c=" + std::to_string(c) + ", k=" + std::to_string(k) + ")");
    return Rational(1) - Rational(binomial(n - c, k), binomial(n, k));
}

/// Exact value rounded half-up to one decimal place, as a percentage.
inline double round_percent_1dp(const Rational &fraction)
{
    // floor(1000 * f + 1/2) / 10
    Rational scaled = fraction * 1000 + Rational(1, 2);
    BigInt tenths = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    return static_cast<double>(tenths) / 10.0;
}

/// Percentage rounded to one decimal place.
inline double pass_at_k(long long n, long long c, long long k)
{
    return round_percent_1dp(pass_at_k_exact(n, c, k));
}

inline std::string format_1dp(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

struct Interval
{
    double low = 0;
    double high = 0;
    double center = 0;
    double half_width = 0;
};

/// Wilson score interval, clamped to [0, 1].
inline Interval wilson_interval(double p_hat, long long n, double z)
{
    if (!(p_hat >= 0.0 && p_hat <= 1.0) || n < 1 || !(z > 0.0) || !std::isfinite(z))
        throw DomainError("wilson interval requires 0 <= p_hat <= 1, n >= 1 and z > 0");
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half = (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
    Interval out;
    out.center = center;
    out.half_width = half;
    out.low = std::clamp(center - half, 0.0, 1.0);
    out.high = std::clamp(center + half, 0.0, 1.0);
    if (p_hat == 0.0)
        out.low = 0.0;
    if (p_hat == 1.0)
        out.high = 1.0;
    return out;
}

struct Agreement
{
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> kappa;
    double observed = 0; // P_o
    double expected = 0; // P_e from the marginals
};

/// Precision/recall/F1 as fractions and Cohen's kappa with exact chance
/// agreement. Undefined ratios are left empty.
inline Agreement agreement_stats(long long tp, long long fp, long long fn, long long tn)
{
    if (tp < 0 || fp < 0 || fn < 0 || tn < 0)
        throw DomainError("confusion counts must be non-negative");
    const long long total = tp + fp + fn + tn;
    if (total == 0)
        throw DomainError("confusion matrix is empty");
    Agreement a;
    const double t = static_cast<double>(total);
    if (tp + fp > 0)
        a.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0)
        a.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (a.precision && a.recall && *a.precision + *a.recall > 0)
        a.f1 = 2.0 * *a.precision * *a.recall / (*a.precision + *a.recall);
    else if (a.precision && a.recall)
        a.f1 = 0.0;

    a.observed = static_cast<double>(tp + tn) / t;
    const double yes = static_cast<double>(tp + fp) * static_cast<double>(tp + fn);
    const double no = static_cast<double>(fn + tn) * static_cast<double>(fp + tn);
    a.expected = (yes + no) / (t * t);
    if (a.expected < 1.0)
        a.kappa = (a.observed - a.expected) / (1.0 - a.expected);
    return a;
}

} // namespace schemaguard
