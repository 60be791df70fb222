#include <algorithm>
#include <cmath>
#include <mutex>
#include <map>
#include <memory>
#include <unordered_map>
#include <queue>
#include <string>

#include "morrey/errors.hpp"
#include "morrey/numerics.hpp"

namespace morrey {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kLn10 = 2.302585092994045684;
// exp(u) stays finite and non-denormal for |u| below this.
constexpr double kMaxLogT = 700.0;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

double checked(double v, double t) {
  if (std::isnan(v) || v < 0.0) {
    throw DomainError("integrand is negative or NaN at t=" + format_double(t));
  }
  return v;
}

template <class G>
Segment gk15(const G& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  const double value = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  return {a, b, value, err};
}

// Globally adaptive GK15 over the union of [cuts[i], cuts[i+1]].
template <class G>
double adaptive(const G& g, const std::vector<double>& cuts, double rel_tol, double abs_tol, int max_sub) {
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) continue;
    Segment s = gk15(g, cuts[i], cuts[i + 1]);
    if (std::isinf(s.value)) return kInf;
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  int subdivisions = 0;
  while (!heap.empty() && total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (++subdivisions > max_sub) {
      throw NonConvergent("adaptive quadrature exhausted " + std::to_string(max_sub) +
                          " subdivisions (value " + format_double(total) + ", error " +
                          format_double(total_err) + ")");
    }
    Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      // Segment is at machine resolution; accept it as is.
      total_err -= s.error;
      continue;
    }
    Segment left = gk15(g, s.a, mid);
    Segment right = gk15(g, mid, s.b);
    if (std::isinf(left.value) || std::isinf(right.value)) return kInf;
    total += left.value + right.value - s.value;
    total_err += left.error + right.error - s.error;
    heap.push(left);
    heap.push(right);
  }
  return std::max(total, 0.0);
}

// Integrates the u-space integrand over successive chunks moving away from
// `start` in direction `dir` (+1 towards +inf, -1 towards -inf).
// Non-decaying two-decade chunks in a row before an end is declared divergent.
// A shorter run would misreport integrands that peak a few decades out.
constexpr int kDivergentChunks = 15;

template <class G>
double tail_chunks(const G& g, double start, int dir, double running_total, const QuadratureConfig& cfg) {
  const double width = 2.0 * kLn10;
  double sum = 0.0;
  double prev = -1.0;
  int stalls = 0;
  double u = start;
  while (std::abs(u) < kMaxLogT) {
    double next = u + dir * width;
    if (std::abs(next) > kMaxLogT) next = dir * kMaxLogT;
    std::vector<double> cuts = dir > 0 ? std::vector<double>{u, next} : std::vector<double>{next, u};
    const double c = adaptive(g, cuts, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
    if (std::isinf(c)) return kInf;
    sum += c;
    u = next;
    const double scale = std::abs(running_total + sum);
    if (prev >= 0.0) {
      if (c == 0.0 && prev == 0.0) return sum;
      if (prev > 0.0 && c < prev) {
        stalls = 0;
        const double rho = c / prev;
        const double tail_est = c * rho / (1.0 - rho);
        if (tail_est <= 0.1 * cfg.rel_tol * scale || tail_est <= cfg.abs_tol) return sum + tail_est;
      } else if (c > 0.0 && c >= prev) {
        if (++stalls >= kDivergentChunks) return kInf;
      }
    }
    prev = c;
  }
  if (prev == 0.0) return sum;
  throw NonConvergent("improper integral tail did not settle within exp(+-700)");
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo_ >= 0.0) || !(hi_ > lo_)) {
    throw DomainError("interval requires 0 <= lo < hi, got (" + format_double(lo_) + ", " +
                      format_double(hi_) + ")");
  }
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (max_subdivisions <= 0) throw DomainError("max_subdivisions must be positive");
  if (grid_points_per_decade < 4) throw DomainError("grid_points_per_decade must be >= 4");
  if (!(sup_rel_tol > 0.0 && sup_rel_tol < 1.0)) throw DomainError("sup_rel_tol must lie in (0, 1)");
}

double integrate_finite(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                        std::span<const double> breakpoints) {
  if (!(a < b)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  auto g = [&f](double t) { return checked(f(t), t); };
  return adaptive(g, cuts, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
}

double integrate(const RealFn& f, const Interval& iv, const QuadratureConfig& cfg,
                 std::span<const double> breakpoints) {
  auto g = [&f](double u) {
    const double t = std::exp(u);
    const double v = checked(f(t), t);
    return v == 0.0 ? 0.0 : v * t;
  };

  std::vector<double> log_bps;
  for (double x : breakpoints) {
    if (x > iv.lo && x < iv.hi && x > 0.0 && std::isfinite(x)) log_bps.push_back(std::log(x));
  }
  std::sort(log_bps.begin(), log_bps.end());

  const bool open_lo = iv.lo == 0.0;
  const bool open_hi = !iv.finite();
  double ua = 0.0;
  double ub = 0.0;
  if (!open_lo) ua = std::log(iv.lo);
  if (!open_hi) ub = std::log(iv.hi);
  if (open_lo && open_hi) {
    ua = log_bps.empty() ? -kLn10 : std::min(-kLn10, log_bps.front());
    ub = log_bps.empty() ? kLn10 : std::max(kLn10, log_bps.back());
  } else if (open_lo) {
    ua = ub - 2.0 * kLn10;
    if (!log_bps.empty()) ua = std::min(ua, log_bps.front());
  } else if (open_hi) {
    ub = ua + 2.0 * kLn10;
    if (!log_bps.empty()) ub = std::max(ub, log_bps.back());
  }
  ua = std::max(ua, -kMaxLogT);
  ub = std::min(ub, kMaxLogT);

  std::vector<double> cuts{ua};
  for (double x : log_bps) {
    if (x > ua && x < ub) cuts.push_back(x);
  }
  cuts.push_back(ub);

  double total = adaptive(g, cuts, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (std::isinf(total)) return kInf;
  if (open_lo && ua > -kMaxLogT) {
    const double left = tail_chunks(g, ua, -1, total, cfg);
    if (std::isinf(left)) return kInf;
    total += left;
  }
  if (open_hi && ub < kMaxLogT) {
    const double right = tail_chunks(g, ub, +1, total, cfg);
    if (std::isinf(right)) return kInf;
    total += right;
  }
  return total;
}

double weighted_lp_norm(const RealFn& f, Exponent p, const Weight1D& w, const Interval& iv,
                        const QuadratureConfig& cfg) {
  auto fw = [&](double t) {
    const double a = f(t);
    if (a == 0.0) return 0.0;
    const double b = w(t);
    return b == 0.0 ? 0.0 : std::abs(a) * b;
  };
  if (p.is_infinite()) return sup_over_ray(fw, iv, cfg, w.breakpoints()).value;
  const double pv = p.value();
  auto integrand = [&](double t) {
    const double v = fw(t);
    return v == 0.0 ? 0.0 : std::pow(v, pv);
  };
  const double s = integrate(integrand, iv, cfg, w.breakpoints());
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / pv);
}

const GaussLegendre& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, GaussLegendre> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade, std::span<const double> extra) {
  std::vector<double> grid;
  const double d = static_cast<double>(points_per_decade);
  const long k0 = static_cast<long>(std::ceil(std::log10(lo) * d));
  const long k1 = static_cast<long>(std::floor(std::log10(hi) * d));
  grid.push_back(lo);
  for (long k = k0; k <= k1; ++k) {
    const double t = std::pow(10.0, static_cast<double>(k) / d);
    if (t > lo && t < hi) grid.push_back(t);
  }
  grid.push_back(hi);
  for (double x : extra) {
    if (x > lo && x < hi) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

RealFn memoize(RealFn f) {
  auto cache = std::make_shared<std::unordered_map<double, double>>();
  return [f = std::move(f), cache](double t) {
    auto it = cache->find(t);
    if (it != cache->end()) return it->second;
    const double v = f(t);
    cache->emplace(t, v);
    return v;
  };
}

}  // namespace morrey
