#include "growth/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "growth/errors.hpp"

namespace growth {

namespace {

using u128 = unsigned __int128;

// a/b < c/d for positive denominators.
bool ratio_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return static_cast<u128>(a) * d < static_cast<u128>(c) * b;
}

struct LineFit {
  double slope = 0, intercept = 0, rms = 0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw InvalidInput("fit needs at least two distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  return f;
}

}  // namespace

DoublingResult doubling_constant(std::span<const VolumeProfile> profiles, Distance r_max) {
  if (profiles.empty()) throw InvalidInput("doubling constant needs at least one profile");
  if (r_max < 1) throw InvalidInput("doubling constant needs r_max >= 1");
  DoublingResult best;
  std::uint64_t best_num = 1, best_den = 1;
  for (const auto& p : profiles) {
    if (p.max_radius < 2 * r_max) {
      throw InvalidInput("profile depth " + std::to_string(p.max_radius) +
                         " is below 2 r_max = " + std::to_string(2 * r_max));
    }
    for (Distance r = 1; r <= r_max; ++r) {
      if (ratio_less(best_num, best_den, p.ball[2 * r], p.ball[r])) {
        best_num = p.ball[2 * r];
        best_den = p.ball[r];
        best.center = p.center;
        best.radius = r;
      }
    }
  }
  best.value = make_ratio(best_num, best_den);
  return best;
}

double delta_from_alpha(const Rational& alpha) {
  if (alpha < 0) throw InvalidInput("alpha must be nonnegative");
  return std::log2(1.0 + to_double(alpha));
}

ShellReport shell_alpha(std::span<const VolumeProfile> profiles, Distance k_min, Distance n_max,
                        bool keep_records) {
  if (profiles.empty()) throw InvalidInput("shell report needs at least one profile");
  if (k_min < 1) throw InvalidInput("k_min must be >= 1");
  if (n_max < k_min) throw InvalidInput("n_max must be >= k_min");
  ShellReport report;
  report.k_min = k_min;
  report.n_max = n_max;
  bool have_global = false;
  std::uint64_t g_lo = 0, g_hi = 1;
  for (const auto& p : profiles) {
    if (p.max_radius < n_max + k_min) {
      throw InvalidInput("profile depth " + std::to_string(p.max_radius) +
                         " cannot hold a shell pair at n_max = " + std::to_string(n_max));
    }
    CenterAlpha ca;
    ca.center = p.center;
    bool have = false;
    std::uint64_t lo_best = 0, hi_best = 1;
    for (Distance n = k_min; n <= n_max; ++n) {
      for (Distance k = k_min; k <= n && n + k <= p.max_radius; ++k) {
        ShellRecord rec{p.center, n, k, p.shell(n - k, n), p.shell(n, n + k)};
        if (keep_records) report.records.push_back(rec);
        if (!rec.admitted()) {
          ++report.excluded;
          continue;
        }
        ++report.admitted;
        if (!have || ratio_less(rec.c_lo, rec.c_hi, lo_best, hi_best)) {
          have = true;
          lo_best = rec.c_lo;
          hi_best = rec.c_hi;
          ca.n = n;
          ca.k = k;
        }
      }
    }
    if (!have) continue;
    ca.alpha = make_ratio(lo_best, hi_best);
    ca.delta = delta_from_alpha(ca.alpha);
    if (!have_global || ratio_less(lo_best, hi_best, g_lo, g_hi)) {
      have_global = true;
      g_lo = lo_best;
      g_hi = hi_best;
    }
    report.per_center.push_back(std::move(ca));
  }
  if (!have_global) throw InvalidInput("every shell ratio is inadmissible (all outer shells empty)");
  report.alpha = make_ratio(g_lo, g_hi);
  report.delta = delta_from_alpha(report.alpha);
  for (const auto& p : profiles) {
    for (Distance n = 1; n <= n_max && n < p.max_radius; ++n) {
      const double c = static_cast<double>(p.sphere[n]) * std::pow(n, report.delta) /
                       static_cast<double>(p.ball[n]);
      report.fitted_C = std::max(report.fitted_C, c);
    }
  }
  return report;
}

ShellReport shell_alpha(const VolumeProfile& profile, Distance k_min, Distance n_max,
                        bool keep_records) {
  return shell_alpha(std::span<const VolumeProfile>(&profile, 1), k_min, n_max, keep_records);
}

LemmaAudit lemma_recursion_audit(const VolumeProfile& profile, Distance n, const Rational& alpha) {
  if (n < 1 || n > profile.max_radius) throw InvalidInput("audit radius outside the profile");
  if (alpha < 0) throw InvalidInput("alpha must be nonnegative");
  LemmaAudit audit;
  audit.center = profile.center;
  audit.n = n;
  audit.alpha = alpha;
  const int top = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
  const Rational factor = 1 + alpha;
  auto b = [&](int i) { return profile.shell(n - (Distance{1} << i), n); };
  const std::uint64_t b0 = b(0);
  for (int i = 1; i <= top; ++i) {
    AuditStep step;
    step.i = i;
    step.b = b(i);
    step.required = factor * Rational(b(i - 1));
    step.holds = Rational(step.b) >= step.required;
    if (!step.holds && !audit.first_violation) audit.first_violation = i;
    audit.steps.push_back(std::move(step));
  }
  const std::uint64_t b_top = b(top);
  audit.ball_dominates = profile.ball[n] >= b_top;
  Rational power = 1;
  for (int i = 0; i < top; ++i) power *= factor;
  audit.power_bound = Rational(b_top) >= power * Rational(b0);
  // (1+a)^top >= n^delta / (1+a) with delta = log2(1+a); in logs:
  // (top + 1) log2(1+a) >= log2(n) log2(1+a).
  const double l = delta_from_alpha(alpha);
  audit.final_bound = (top + 1) * l >= std::log2(static_cast<double>(n)) * l * (1 - 1e-12);
  return audit;
}

SphereBoundReport verify_sphere_bound(const VolumeProfile& profile, double delta,
                                      std::span<const Distance> radii) {
  if (!(delta >= 0)) throw InvalidInput("delta must be nonnegative");
  SphereBoundReport report;
  report.delta = delta;
  std::vector<Distance> sorted(radii.begin(), radii.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Distance n : sorted) {
    if (n < 1 || n >= profile.max_radius) {
      throw InvalidInput("radius " + std::to_string(n) + " outside the profile");
    }
    SphereBoundRow row{n, profile.sphere[n], profile.ball[n], 0};
    row.c = static_cast<double>(row.sphere) * std::pow(n, delta) / static_cast<double>(row.ball);
    report.fitted_C = std::max(report.fitted_C, row.c);
    report.rows.push_back(row);
  }
  std::vector<double> xs, ys;
  for (std::size_t i = report.rows.size() / 2; i < report.rows.size(); ++i) {
    if (report.rows[i].c > 0) {
      xs.push_back(report.rows[i].n);
      ys.push_back(report.rows[i].c);
    }
  }
  report.trend_slope = xs.size() >= 2 ? trend_slope(xs, ys) : 0.0;
  report.pass = std::isfinite(report.fitted_C) && report.trend_slope <= kTrendTolerance;
  return report;
}

SphereBoundReport verify_sphere_bound(const VolumeProfile& profile, double delta) {
  std::vector<Distance> radii;
  for (Distance n = 1; n < profile.max_radius; ++n) radii.push_back(n);
  return verify_sphere_bound(profile, delta, radii);
}

bool DyadicSelection::all_certified() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.certified; });
}

bool DyadicSelection::all_certified_relaxed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const auto& e) { return e.certified_relaxed; });
}

int dyadic_depth(const VolumeProfile& profile) {
  int i = -1;
  while ((Distance{2} << (i + 1)) < profile.max_radius) ++i;
  return i;
}

DyadicSelection dyadic_subsequence(const VolumeProfile& profile, const Rational& doubling,
                                   int i_max) {
  if (i_max > dyadic_depth(profile)) {
    throw InvalidInput("profile depth " + std::to_string(profile.max_radius) +
                       " does not reach the dyadic window i = " + std::to_string(i_max));
  }
  DyadicSelection sel;
  sel.center = profile.center;
  sel.doubling = doubling;
  for (int i = 0; i <= i_max; ++i) {
    const Distance lo = Distance{1} << i, hi = Distance{2} << i;
    DyadicEntry e;
    e.i = i;
    e.radius = lo + 1;
    for (Distance r = lo + 1; r <= hi; ++r) {
      if (profile.sphere[r] < profile.sphere[e.radius]) e.radius = r;
    }
    e.sphere = profile.sphere[e.radius];
    e.ball = profile.ball[e.radius];
    const Rational scaled = Rational(e.sphere) * Rational(lo);
    e.bound = doubling * Rational(e.ball) / Rational(lo);
    e.certified = scaled <= doubling * Rational(e.ball);
    e.certified_relaxed = scaled <= 2 * doubling * Rational(e.ball);
    sel.entries.push_back(std::move(e));
  }
  return sel;
}

IsopCheck abelian_isop_check(std::span<const std::uint64_t> sizes, std::size_t n_max) {
  if (n_max < 1 || n_max + 1 >= sizes.size()) {
    throw InvalidInput("isoperimetric check needs sizes up to n_max + 1");
  }
  IsopCheck check;
  std::uint64_t best_num = 0, best_den = 1;
  std::vector<double> xs, ys;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (sizes[n] == 0 || sizes[n + 1] < sizes[n]) throw InvalidInput("sizes must be positive and nondecreasing");
    const std::uint64_t num = n * (sizes[n + 1] - sizes[n]);
    if (ratio_less(best_num, best_den, num, sizes[n])) {
      best_num = num;
      best_den = sizes[n];
      check.argmax = n;
    }
    if (2 * n > n_max && num > 0) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(static_cast<double>(num) / static_cast<double>(sizes[n]));
    }
  }
  check.constant = make_ratio(best_num, best_den);
  check.trend_slope = xs.size() >= 2 ? trend_slope(xs, ys) : 0.0;
  check.pass = check.trend_slope <= kTrendTolerance;
  return check;
}

double trend_slope(std::span<const double> x, std::span<const double> y) {
  return power_law_fit(x, y).exponent;
}

PowerFit power_law_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("fit needs two or more points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidInput("log fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const LineFit f = least_squares(lx, ly);
  return PowerFit{f.slope, f.intercept, f.rms, x.size()};
}

PowerFit growth_exponent_fit(std::span<const std::uint64_t> ball, std::size_t lo, std::size_t hi) {
  if (ball.size() < 2) throw InvalidInput("growth fit needs ball volumes");
  if (hi == 0 || hi >= ball.size()) hi = ball.size() - 1;
  if (lo == 0) lo = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(hi))));
  lo = std::max<std::size_t>(lo, 1);
  if (hi < lo || hi - lo + 1 < 8) throw InvalidInput("growth fit needs at least 8 radii");
  std::vector<double> xs, ys;
  for (std::size_t n = lo; n <= hi; ++n) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(ball[n]));
  }
  if (ball[lo] == ball[hi]) throw InvalidInput("growth fit on constant data");
  return power_law_fit(xs, ys);
}

}  // namespace growth
