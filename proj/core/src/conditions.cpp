#include "morrey/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "morrey/errors.hpp"

namespace morrey {

namespace {

constexpr double kUnderflow = 1e-250;
constexpr double kOverflow = 1e250;
constexpr double kTrendTol = 0.01;  // log10 change per decade treated as flat
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int grid_density(const GridOptions& grid, const QuadratureConfig& cfg) {
  return grid.points_per_decade > 0 ? grid.points_per_decade : cfg.grid_points_per_decade;
}

std::string fmt(double x) { return format_double(x); }

}  // namespace

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Yes:
      return "Yes";
    case Tri::No:
      return "No";
    case Tri::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

ClassReport check_class(const Weight1D& w, Exponent theta, WeightClass kind, const QuadratureConfig& cfg,
                        const GridOptions& grid) {
  ClassReport rep;
  const bool tail = kind == WeightClass::Omega;
  rep.name = std::string(tail ? "Omega" : "cOmega") + "_" + fmt(theta.value()) + "(" + w.description() + ")";
  std::vector<double> ts = log_grid(grid.lo, grid.hi, grid_density(grid, cfg));
  std::vector<double> vals;
  try {
    WeightNorms norms(w, theta, cfg);
    for (double t : ts) vals.push_back(tail ? norms.tail(t) : norms.head(t));
  } catch (const NonConvergent& e) {
    rep.member = Tri::Undetermined;
    rep.notes = std::string("norm evaluation did not converge: ") + e.what();
    return rep;
  }
  // A tail vanishing far out (or a head vanishing near 0) right after norms
  // whose theta-th power is near the smallest double is underflow, not a
  // genuine zero.
  bool underflow = false;
  bool near_overflow = false;
  const std::size_t m = ts.size();
  for (std::size_t k = 0; k < m; ++k) {
    // Walk toward the end where the norm shrinks: right for tails, left for heads.
    const std::size_t i = tail ? k : m - 1 - k;
    const double v = vals[i];
    if (std::isinf(v) || std::isnan(v)) {
      rep.witnesses.push_back({ts[i], v});
      continue;
    }
    if (v == 0.0) {
      const std::size_t prev = tail ? (i == 0 ? m : i - 1) : (i + 1 == m ? m : i + 1);
      if (prev < m && vals[prev] > 0.0 && theta.value() * std::log10(vals[prev]) < std::log10(kUnderflow)) {
        underflow = true;
        break;  // everything beyond is underflow as well
      }
      rep.witnesses.push_back({ts[i], v});
      continue;
    }
    if (v > kOverflow) near_overflow = true;
  }
  if (!rep.witnesses.empty()) {
    rep.member = Tri::No;
    std::sort(rep.witnesses.begin(), rep.witnesses.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
    const Sample& s = tail ? rep.witnesses.front() : rep.witnesses.back();
    rep.notes = std::string(tail ? "tail" : "head") + " norm is " + fmt(s.value) + " at t=" + fmt(s.t);
    if (rep.witnesses.size() > 8) rep.witnesses.resize(8);
    return rep;
  }
  if (near_overflow) {
    rep.member = Tri::Undetermined;
    rep.notes = "norm values approach the overflow threshold";
    return rep;
  }
  rep.member = Tri::Yes;
  if (underflow) rep.notes = "norm underflows to 0 at the grid edge; treated as positive";
  return rep;
}

double extrapolate_limit(const RealFn& g, bool toward_zero, double lo, double hi) {
  std::array<double, 3> t{};
  if (toward_zero) {
    t = {lo * 100.0, lo * 10.0, lo};
  } else {
    t = {hi / 100.0, hi / 10.0, hi};
  }
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    v[i] = g(t[i]);
    if (std::isnan(v[i]) || v[i] < 0.0) return kNaN;
  }
  if (v[2] == 0.0) return v[1] >= v[2] ? 0.0 : kNaN;
  if (std::isinf(v[2])) return kInf;
  if (v[0] == 0.0 || v[1] == 0.0 || std::isinf(v[0]) || std::isinf(v[1])) return kNaN;
  const double r1 = std::log10(v[1] / v[0]);
  const double r2 = std::log10(v[2] / v[1]);
  if (r1 < -kTrendTol && r2 < -kTrendTol) return 0.0;
  if (std::abs(r1) <= kTrendTol && std::abs(r2) <= kTrendTol) return v[2];
  if (r1 > kTrendTol && r2 > kTrendTol) return kInf;
  return kNaN;
}

Tri check_admissible(const RealFn& U, const QuadratureConfig& cfg, const GridOptions& grid) {
  const std::vector<double> ts = log_grid(grid.lo, grid.hi, grid_density(grid, cfg));
  double prev = -1.0;
  for (double t : ts) {
    const double u = U(t);
    if (std::isnan(u) || std::isinf(u) || u < 0.0) return Tri::No;
    if (!(u > prev)) return Tri::No;
    prev = u;
  }
  const double at0 = extrapolate_limit(U, true, grid.lo, grid.hi);
  const double inv_at_inf = extrapolate_limit(
      [&U](double t) {
        const double u = U(t);
        return u == 0.0 ? kInf : 1.0 / u;
      },
      false, grid.lo, grid.hi);
  if (std::isnan(at0) || std::isnan(inv_at_inf)) return Tri::Undetermined;
  return at0 == 0.0 && inv_at_inf == 0.0 ? Tri::Yes : Tri::No;
}

QuasiconcavityReport check_quasiconcave(const RealFn& phi, const RealFn& U, const QuadratureConfig& cfg,
                                        const GridOptions& grid) {
  QuasiconcavityReport rep;
  rep.name = "quasiconcavity";
  rep.limit_diagnostics.fill(kNaN);
  auto quotient = [](double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0 || std::isinf(a)) return kInf;
    return std::isinf(b) ? 0.0 : a / b;
  };

  const int ppd = grid_density(grid, cfg);
  Tri quasi = Tri::Yes;
  for (int pass = 0; pass < 2 && quasi == Tri::Yes; ++pass) {
    const std::vector<double> ts = log_grid(grid.lo, grid.hi, ppd << pass);
    double run_max = 0.0;
    double run_min = kInf;
    for (double t : ts) {
      const double f = phi(t);
      const double u = U(t);
      if (std::isnan(f) || std::isnan(u)) {
        rep.notes = "NaN at t=" + fmt(t);
        quasi = Tri::Undetermined;
        break;
      }
      if (std::isinf(f)) {
        rep.witnesses.push_back({t, f});
        rep.notes = "phi is infinite at t=" + fmt(t);
        quasi = Tri::No;
        break;
      }
      const double r = quotient(f, u);
      if (f * grid.factor < run_max) {
        rep.witnesses.push_back({t, f});
        rep.notes = "phi is not equivalent to an increasing function near t=" + fmt(t);
        quasi = Tri::No;
        break;
      }
      if (r > grid.factor * run_min) {
        rep.witnesses.push_back({t, r});
        rep.notes = "phi/U is not equivalent to a decreasing function near t=" + fmt(t);
        quasi = Tri::No;
        break;
      }
      run_max = std::max(run_max, f);
      run_min = std::min(run_min, r);
    }
  }
  rep.is_U_quasiconcave = quasi;

  auto& L = rep.limit_diagnostics;
  L[0] = extrapolate_limit(phi, true, grid.lo, grid.hi);
  L[1] = extrapolate_limit([&](double t) { return quotient(1.0, phi(t)); }, false, grid.lo, grid.hi);
  L[2] = extrapolate_limit([&](double t) { return quotient(phi(t), U(t)); }, false, grid.lo, grid.hi);
  L[3] = extrapolate_limit([&](double t) { return quotient(U(t), phi(t)); }, true, grid.lo, grid.hi);

  if (quasi == Tri::No) {
    rep.is_nondegenerate = Tri::No;
  } else if (std::any_of(L.begin(), L.end(), [](double x) { return !std::isnan(x) && x != 0.0; })) {
    rep.is_nondegenerate = Tri::No;
    static const char* names[4] = {"phi(0+)", "1/phi(inf)", "phi/U(inf)", "U/phi(0+)"};
    for (int i = 0; i < 4; ++i) {
      if (!std::isnan(L[i]) && L[i] != 0.0) {
        if (!rep.notes.empty()) rep.notes += "; ";
        rep.notes += std::string(names[i]) + " = " + fmt(L[i]);
      }
    }
  } else if (std::any_of(L.begin(), L.end(), [](double x) { return std::isnan(x); })) {
    rep.is_nondegenerate = Tri::Undetermined;
    if (!rep.notes.empty()) rep.notes += "; ";
    rep.notes += "limit extrapolation inconclusive";
  } else {
    rep.is_nondegenerate = quasi == Tri::Yes ? Tri::Yes : Tri::Undetermined;
  }
  return rep;
}

double fundamental_function(const Weight1D& w, const RealFn& U, double t, const QuadratureConfig& cfg) {
  const double ut = U(t);
  if (ut == 0.0) return 0.0;
  auto f = [&](double tau) {
    const double x = w(tau);
    if (x == 0.0) return 0.0;
    return x / (U(tau) + ut);
  };
  const double s = integrate(f, Interval::ray(), cfg, w.breakpoints());
  return std::isinf(s) ? kInf : ut * s;
}

// ---------------------------------------------------------------------------

Phi1::Phi1(const RadialProblem& prob, const QuadratureConfig& cfg) : cfg_(cfg) {
  auto vt = std::make_shared<const VTilde>(prob, cfg);
  auto norms = std::make_shared<const WeightNorms>(prob.omega1(), prob.params().th1, cfg);
  vt_ = memoize([vt](double t) { return (*vt)(t); });
  head_ = memoize([norms](double t) { return norms->head(t); });
  breakpoints_ = prob.omega1().breakpoints();
  for (double b : prob.v_angular_sup().breakpoints()) breakpoints_.push_back(b);
}

double Phi1::operator()(double x) const {
  const double vx = vt_(x);
  auto F = [&](double t) {
    const double v = vt_(t);
    const double num = v * kernel_ratio(vx, v);
    if (num == 0.0) return 0.0;
    const double h = head_(t);
    if (h == 0.0) return kInf;
    return num / h;
  };
  return sup_over_ray(F, Interval::ray(), cfg_, breakpoints_).value;
}

namespace {

Exponent phi2_exponent(const RadialProblem& prob) {
  const Exponent s = arrow(prob.params().th1, prob.params().p2);
  if (s.is_infinite()) throw DomainError("phi2 requires p2 < theta1");
  return s;
}

}  // namespace

Phi2::Phi2(const RadialProblem& prob, const QuadratureConfig& cfg)
    : s_(phi2_exponent(prob).value()),
      measure_(prob.omega1(), prob.params().th1, phi2_exponent(prob), Orientation::HeadLeftInverse, cfg),
      cfg_(cfg) {
  auto vt = std::make_shared<const VTilde>(prob, cfg);
  vt_ = memoize([vt](double t) { return (*vt)(t); });
}

double Phi2::operator()(double x) const {
  const double vx = vt_(x);
  auto F = [&](double t) {
    const double v = vt_(t);
    const double k = v * kernel_ratio(vx, v);
    return k == 0.0 ? 0.0 : std::pow(k, s_);
  };
  const double s = stieltjes_integrate(F, measure_, cfg_);
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / s_);
}

double phi1(double x, const RadialProblem& prob, const QuadratureConfig& cfg) { return Phi1(prob, cfg)(x); }

double phi2(double x, const RadialProblem& prob, const QuadratureConfig& cfg) { return Phi2(prob, cfg)(x); }

}  // namespace morrey
