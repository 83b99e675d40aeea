#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "growth/rational.hpp"
#include "growth/space.hpp"

namespace growth {

/// Slope tolerance of every trend test.
inline constexpr double kTrendTolerance = 0.05;

struct DoublingResult {
  Rational value{1};
  Vertex center = 0;
  Distance radius = 0;  // r attaining the max of ball[2r] / ball[r]
};

/// max over the profiles and 1 <= r <= r_max of ball[2r] / ball[r]; the first
/// maximizer (profile order, then smallest r) is reported.
DoublingResult doubling_constant(std::span<const VolumeProfile> profiles, Distance r_max);

struct ShellRecord {
  Vertex center = 0;
  Distance n = 0;
  Distance k = 0;
  std::uint64_t c_lo = 0;  // c_{n-k,n}
  std::uint64_t c_hi = 0;  // c_{n,n+k}

  bool admitted() const { return c_hi != 0; }
  Rational ratio() const { return make_ratio(c_lo, c_hi); }
};

struct CenterAlpha {
  Vertex center = 0;
  Rational alpha;
  double delta = 0;
  /// (n, k) attaining the infimum.
  Distance n = 0, k = 0;
};

/**
 * Shell-doubling measurements. alpha is the smallest c_lo / c_hi over every
 * admitted record (c_hi > 0) with k_min <= k <= n <= n_max and n + k within
 * the profile; delta = log2(1 + alpha).
 */
struct ShellReport {
  Distance k_min = 0;
  Distance n_max = 0;
  std::vector<ShellRecord> records;  // empty unless requested
  std::vector<CenterAlpha> per_center;
  Rational alpha;
  double delta = 0;
  /// max over centers and 1 <= n <= n_max of sphere[n] n^delta / ball[n].
  double fitted_C = 0;
  std::size_t admitted = 0;
  std::size_t excluded = 0;
};

ShellReport shell_alpha(std::span<const VolumeProfile> profiles, Distance k_min, Distance n_max,
                        bool keep_records = false);
ShellReport shell_alpha(const VolumeProfile& profile, Distance k_min, Distance n_max,
                        bool keep_records = false);

/// log2(1 + alpha); rejects negative alpha.
double delta_from_alpha(const Rational& alpha);

struct AuditStep {
  int i = 0;
  std::uint64_t b = 0;   // b_i = c_{n-2^i, n}
  Rational required;     // (1 + alpha) b_{i-1}
  bool holds = true;
};

/**
 * Term-by-term recomputation of the shell recursion at one n:
 * b_i >= (1+alpha) b_{i-1} for 1 <= i <= floor(log2 n), then
 * ball[n] >= b_top >= (1+alpha)^top b_0 >= n^delta b_0 / (1+alpha).
 */
struct LemmaAudit {
  Vertex center = 0;
  Distance n = 0;
  Rational alpha;
  std::vector<AuditStep> steps;
  bool ball_dominates = true;  // ball[n] >= b_top
  bool power_bound = true;     // b_top >= (1+alpha)^top b_0
  bool final_bound = true;     // (1+alpha)^top b_0 >= n^delta b_0 / (1+alpha)
  /// First i whose step fails.
  std::optional<int> first_violation;

  bool ok() const { return !first_violation && ball_dominates && power_bound && final_bound; }
};

LemmaAudit lemma_recursion_audit(const VolumeProfile& profile, Distance n, const Rational& alpha);

struct SphereBoundRow {
  Distance n = 0;
  std::uint64_t sphere = 0;
  std::uint64_t ball = 0;
  double c = 0;  // sphere n^delta / ball
};

struct SphereBoundReport {
  double delta = 0;
  std::vector<SphereBoundRow> rows;
  double fitted_C = 0;
  /// Least-squares slope of log C(n) against log n on the upper half of the radii.
  double trend_slope = 0;
  bool pass = false;
};

/// C(n) at every radius in `radii` (each must satisfy 1 <= n < max_radius).
/// Radii with an empty sphere contribute C = 0 and are left out of the trend.
SphereBoundReport verify_sphere_bound(const VolumeProfile& profile, double delta,
                                      std::span<const Distance> radii);
/// All radii 1 .. max_radius - 1.
SphereBoundReport verify_sphere_bound(const VolumeProfile& profile, double delta);

struct DyadicEntry {
  int i = 0;
  Distance radius = 0;  // r_i in (2^i, 2^(i+1)]
  std::uint64_t sphere = 0;
  std::uint64_t ball = 0;
  Rational bound;        // C_D ball / 2^i
  bool certified = false;          // sphere <= C_D ball / 2^i
  bool certified_relaxed = false;  // sphere <= 2 C_D ball / 2^i
};

struct DyadicSelection {
  Vertex center = 0;
  Rational doubling;
  std::vector<DyadicEntry> entries;

  bool all_certified() const;
  bool all_certified_relaxed() const;
};

/// r_i minimizes sphere over (2^i, 2^(i+1)], smallest radius on ties, for
/// i = 0..i_max. Needs sphere up to 2^(i_max+1).
DyadicSelection dyadic_subsequence(const VolumeProfile& profile, const Rational& doubling,
                                   int i_max);
/// Largest i_max the profile supports.
int dyadic_depth(const VolumeProfile& profile);

struct IsopCheck {
  Rational constant;  // max n (ball[n+1] - ball[n]) / ball[n]
  std::size_t argmax = 0;
  double trend_slope = 0;
  bool pass = false;
};

/// Over 1 <= n <= n_max (n_max + 1 < sizes.size()); sizes are ball volumes
/// or |U^n|.
IsopCheck abelian_isop_check(std::span<const std::uint64_t> sizes, std::size_t n_max);

struct PowerFit {
  double exponent = 0;
  double log_constant = 0;  // intercept of log y = exponent log x + log_constant
  double rms_residual = 0;
  std::size_t points = 0;
};

/// Least squares of log y against log x. Needs two distinct x and positive y.
PowerFit power_law_fit(std::span<const double> x, std::span<const double> y);

/**
 * Exponent of ball growth: fit of log ball[n] against log n over
 * n in [lo, hi]. With lo = 0 the window is the upper half of the range in
 * log scale, [sqrt(hi), hi]. Needs at least 8 points.
 */
PowerFit growth_exponent_fit(std::span<const std::uint64_t> ball, std::size_t lo = 0,
                             std::size_t hi = 0);

/// Slope of log y against log x.
double trend_slope(std::span<const double> x, std::span<const double> y);

}  // namespace growth
