#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <vector>

#include "stochmon/automaton.hpp"
#include "stochmon/limits.hpp"
#include "stochmon/realization.hpp"
#include "stochmon/schedule.hpp"

namespace stochmon {

struct Sample {
  std::size_t n;
  BigInt length;  // |u_n|
  double value;   // probability, or distance to the limit matrix
};

/// log(error) ~ a + degree * log|u_n| - |u_n| * log(base).
struct RateFit {
  double degree;
  double base;
  std::size_t points;
};

struct ConvergenceReport {
  enum class Kind { probability, distance };

  Kind kind = Kind::probability;
  std::vector<Sample> samples;
  double extrapolated_limit = 0.0;
  std::optional<RateFit> rate_fit;  // empty: no exponential fit

  double error(const Sample& s) const { return std::abs(s.value - extrapolated_limit); }
};

/// Errors at or below this level are treated as float noise.
inline constexpr double noise_floor = 1e-13;

namespace detail {

// Least squares for y ~ X beta with up to three columns, by normal equations.
template <std::size_t Cols>
std::optional<std::array<double, Cols>> least_squares(const std::vector<std::array<double, Cols>>& rows,
                                                      const std::vector<double>& y) {
  std::array<std::array<double, Cols + 1>, Cols> a{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < Cols; ++i) {
      for (std::size_t j = 0; j < Cols; ++j) a[i][j] += rows[r][i] * rows[r][j];
      a[i][Cols] += rows[r][i] * y[r];
    }
  }
  for (std::size_t col = 0; col < Cols; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < Cols; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) return std::nullopt;
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < Cols; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= Cols; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, Cols> beta{};
  for (std::size_t i = 0; i < Cols; ++i) beta[i] = a[i][Cols] / a[i][i];
  return beta;
}

}  // namespace detail

/// Fits the fast-sequence envelope P(L) * C^-L to (length, error) pairs.
/// Errors at or below `noise` are dropped. With four or more distinct
/// lengths the polynomial degree is fitted too; otherwise, or when that fit
/// shows no exponential decay, the degree is pinned to zero.
inline std::optional<RateFit> fit_decay_rate(std::span<const std::pair<double, double>> length_error,
                                             double noise = noise_floor) {
  std::vector<double> lengths;
  std::vector<double> logs;
  std::set<double> distinct;
  for (const auto& [length, error] : length_error) {
    if (!(error > noise) || !std::isfinite(length) || length <= 0.0) continue;
    lengths.push_back(length);
    logs.push_back(std::log(error));
    distinct.insert(length);
  }
  if (distinct.size() < 2) return std::nullopt;

  if (distinct.size() >= 4) {
    std::vector<std::array<double, 3>> rows;
    for (double l : lengths) rows.push_back({1.0, std::log(l), l});
    if (const auto beta = detail::least_squares<3>(rows, logs); beta && (*beta)[2] < 0.0) {
      return RateFit{(*beta)[1], std::exp(-(*beta)[2]), lengths.size()};
    }
  }
  std::vector<std::array<double, 2>> rows;
  for (double l : lengths) rows.push_back({1.0, l});
  if (const auto beta = detail::least_squares<2>(rows, logs); beta && (*beta)[1] < 0.0) {
    return RateFit{0.0, std::exp(-(*beta)[1]), lengths.size()};
  }
  return std::nullopt;
}

/// Last sample, corrected by a geometric tail when the final three samples
/// move monotonically with shrinking steps.
inline double extrapolate_limit(std::span<const Sample> samples) {
  if (samples.empty()) return 0.0;
  const double last = samples.back().value;
  if (samples.size() < 3) return last;
  const double s1 = samples[samples.size() - 3].value;
  const double s2 = samples[samples.size() - 2].value;
  const double d1 = s2 - s1;
  const double d2 = last - s2;
  if (d1 == 0.0 || d2 == 0.0 || (d1 > 0.0) != (d2 > 0.0) || std::abs(d2) >= std::abs(d1)) return last;
  const double ratio = d2 / d1;
  return last + d2 * ratio / (1.0 - ratio);
}

inline std::optional<RateFit> fit_report(const ConvergenceReport& report) {
  std::vector<std::pair<double, double>> points;
  for (const auto& s : report.samples) points.emplace_back(to_double(s.length), report.error(s));
  return fit_decay_rate(points);
}

/// Samples Pr_A(u_n) for n = 1..n_max along the realization of E.
inline ConvergenceReport estimate_limit(const ProbabilisticAutomaton& automaton, const OmegaExpression& e,
                                        LimitMode mode, std::size_t n_max) {
  if (n_max < 3) throw std::invalid_argument("estimate_limit needs n_max >= 3");
  boolean_interpretation(e, boolean_generators(automaton));  // type check
  ConvergenceReport report;
  report.kind = ConvergenceReport::Kind::probability;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto schedule = realize(e, n, mode);
    report.samples.push_back({n, schedule.length(), accepted_power_probability(automaton, schedule)});
  }
  report.extrapolated_limit = std::clamp(extrapolate_limit(report.samples), 0.0, 1.0);
  report.rate_fit = fit_report(report);
  return report;
}

/// Distances ||phi(u_n) - phi^(E)|| along the polynomial realization of E.
inline ConvergenceReport matrix_convergence(const ProbabilisticAutomaton& automaton, const OmegaExpression& e,
                                            std::size_t n_max, const LimitOptions& options = {}) {
  const auto limit = numeric_interpretation(e, automaton, options);
  ConvergenceReport report;
  report.kind = ConvergenceReport::Kind::distance;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto schedule = realize_polynomial(e, n);
    const auto m = schedule_matrix(automaton, schedule);
    report.samples.push_back({n, schedule.length(), matrix_norm(m.matrix() - limit.matrix())});
  }
  report.extrapolated_limit = 0.0;
  report.rate_fit = fit_report(report);
  return report;
}

/// Aligned plain-text table followed by the limit and rate-fit summary.
inline void write_report_text(std::ostream& out, const ConvergenceReport& report) {
  const auto saved = out.flags();
  const auto precision = out.precision(12);
  const bool probability = report.kind == ConvergenceReport::Kind::probability;
  out << std::setw(6) << "n" << "  " << std::setw(24) << "|u_n|" << "  " << std::setw(20)
      << (probability ? "probability" : "distance") << "  " << std::setw(20) << "error" << '\n';
  for (const auto& s : report.samples) {
    out << std::setw(6) << s.n << "  " << std::setw(24) << to_string(s.length) << "  " << std::setw(20) << s.value
        << "  " << std::setw(20) << report.error(s) << '\n';
  }
  out << (probability ? "extrapolated limit: " : "limit distance: ") << report.extrapolated_limit << '\n';
  if (report.rate_fit) {
    out << "rate fit: degree " << report.rate_fit->degree << ", base " << report.rate_fit->base << " ("
        << report.rate_fit->points << " points)\n";
  } else {
    out << "rate fit: no exponential fit\n";
  }
  out.precision(precision);
  out.flags(saved);
}

/// Comma-separated rows: n,length,value,error.
inline void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  const auto precision = out.precision(12);
  out << "n,length,value,error\n";
  for (const auto& s : report.samples) {
    out << s.n << ',' << to_string(s.length) << ',' << s.value << ',' << report.error(s) << '\n';
  }
  out.precision(precision);
}

}  // namespace stochmon
