#include <algorithm>
#include <cmath>
#include <utility>

#include "morrey/errors.hpp"
#include "morrey/numerics.hpp"

namespace morrey {

namespace {

constexpr double kEdge = 1e-12;
constexpr double kTinyT = 1e-300;
constexpr double kHugeT = 1e300;
// Decades of >10% growth in a row before an open end is declared unbounded.
constexpr int kDivergentDecades = 30;

double sample(const RealFn& F, double t) {
  const double v = F(t);
  if (std::isnan(v)) throw DomainError("supremum target is NaN at t=" + format_double(t));
  return v;
}

}  // namespace

SupResult sup_over_ray(const RealFn& F, const Interval& iv, const QuadratureConfig& cfg,
                       std::span<const double> breakpoints) {
  const int ppd = cfg.grid_points_per_decade;
  const bool open_lo = iv.lo == 0.0;
  const bool open_hi = !iv.finite();

  double lo = open_lo ? (open_hi ? 1e-6 : std::min(1e-6, iv.hi * 1e-6)) : iv.lo * (1 + kEdge);
  double hi = open_hi ? std::max(1e6, lo * 1e12) : iv.hi * (1 - kEdge);
  std::vector<double> extra;
  for (double b : breakpoints) {
    if (!(b > iv.lo && b < iv.hi)) continue;
    if (open_lo) lo = std::min(lo, b / 10);
    if (open_hi) hi = std::max(hi, b * 10);
    extra.push_back(b * (1 - 1e-9));
    extra.push_back(b * (1 + 1e-9));
  }
  if (!(lo < hi)) hi = lo;

  std::vector<std::pair<double, double>> pts;
  for (double t : log_grid(lo, std::max(hi, lo * (1 + 1e-15)), ppd, extra)) pts.emplace_back(t, sample(F, t));

  auto best_of = [](const std::vector<std::pair<double, double>>& v) {
    return *std::max_element(v.begin(), v.end(), [](auto& a, auto& b) { return a.second < b.second; });
  };
  auto best = best_of(pts);
  if (std::isinf(best.second)) return {kInf, best.first};

  // Decade extensions towards open ends.
  const double first = pts.front().first;
  const double last = pts.back().first;
  auto extend = [&](int dir) -> bool {
    double edge = dir < 0 ? first : last;
    int growth = 0;
    int quiet = 0;
    while (quiet < 2) {
      if ((dir < 0 && edge < kTinyT) || (dir > 0 && edge > kHugeT)) {
        throw NonConvergent("supremum still increasing at t=" + format_double(edge));
      }
      double m = -1.0;
      double arg = edge;
      for (int k = 1; k <= ppd; ++k) {
        const double t = edge * std::pow(10.0, dir * static_cast<double>(k) / ppd);
        const double v = sample(F, t);
        pts.emplace_back(t, v);
        if (v > m) {
          m = v;
          arg = t;
        }
      }
      edge *= std::pow(10.0, dir);
      if (std::isinf(m)) {
        best = {arg, kInf};
        return true;
      }
      growth = m > 1.1 * best.second ? growth + 1 : 0;
      if (growth >= kDivergentDecades) {
        best = {arg, kInf};
        return true;
      }
      quiet = m <= best.second * (1 + cfg.sup_rel_tol) ? quiet + 1 : 0;
      if (m > best.second) best = {arg, m};
    }
    return false;
  };
  if (open_lo && extend(-1)) return {kInf, best.first};
  if (open_hi && extend(+1)) return {kInf, best.first};

  std::sort(pts.begin(), pts.end());
  best = best_of(pts);
  if (best.second == 0.0) return {0.0, best.first};

  // Local refinement around the argmax.
  auto idx = static_cast<std::size_t>(
      std::find(pts.begin(), pts.end(), best) - pts.begin());
  double a = idx > 0 ? pts[idx - 1].first : best.first;
  double b = idx + 1 < pts.size() ? pts[idx + 1].first : best.first;
  int quiet = 0;
  for (int level = 0; level < 80 && quiet < 2 && a < b; ++level) {
    const int m = 16;
    std::vector<std::pair<double, double>> local{{a, -1.0}, {b, -1.0}};
    const double la = std::log(a);
    const double lb = std::log(b);
    double prev = best.second;
    for (int k = 1; k < m; ++k) {
      const double t = std::exp(la + (lb - la) * k / m);
      const double v = sample(F, t);
      local.emplace_back(t, v);
      if (v > best.second) best = {t, v};
    }
    if (std::isinf(best.second)) return {kInf, best.first};
    local.emplace_back(best);
    std::sort(local.begin(), local.end());
    auto it = std::find(local.begin(), local.end(), best);
    const double na = it != local.begin() ? std::prev(it)->first : a;
    const double nb = std::next(it) != local.end() ? std::next(it)->first : b;
    a = na;
    b = nb;
    quiet = (best.second - prev) <= cfg.sup_rel_tol * best.second ? quiet + 1 : 0;
  }
  return {best.second, best.first};
}

RunningSup::RunningSup(RealFn F, const QuadratureConfig& cfg, std::vector<double> breakpoints)
    : fn_(std::move(F)) {
  std::vector<double> extra;
  for (double b : breakpoints) {
    extra.push_back(b * (1 - 1e-9));
    extra.push_back(b * (1 + 1e-9));
  }
  nodes_ = log_grid(1e-10, 1e10, 2 * cfg.grid_points_per_decade, extra);
  below_first_ = sup_over_ray(fn_, Interval(0.0, nodes_.front()), cfg, breakpoints).value;
  prefix_max_.resize(nodes_.size());
  double m = below_first_;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    m = std::max(m, sample(fn_, nodes_[i]));
    prefix_max_[i] = m;
  }
  sup_all_ = std::max(m, sup_over_ray(fn_, Interval(nodes_.back(), kInf), cfg, breakpoints).value);
  cfg_ = cfg;
  breakpoints_ = std::move(breakpoints);
}

double RunningSup::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (t == kInf) return sup_all_;
  if (t <= nodes_.front()) return sup_over_ray(fn_, Interval(0.0, t), cfg_, breakpoints_).value;
  if (t > nodes_.back()) {
    return std::max(prefix_max_.back(), sup_over_ray(fn_, Interval(nodes_.back(), t), cfg_, breakpoints_).value);
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  double m = prefix_max_[j];
  const double a = nodes_[j];
  const double ratio = t / a;
  for (int k = 1; k <= 4; ++k) m = std::max(m, sample(fn_, a * std::pow(ratio, k / 4.0)));
  return m;
}

}  // namespace morrey
