#include "morrey/spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "morrey/errors.hpp"

namespace morrey {

void ParamQuadruple::validate() const {
  for (Exponent e : {p1, p2, th1, th2}) {
    if (e.is_infinite()) throw DomainError("exponents must be finite in theorem scope");
  }
  if (n < 1) throw DomainError("dimension must be >= 1");
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  static const std::array<double, 17> table = [] {
    std::array<double, 17> t{};
    t[1] = 2.0;
    t[2] = 2.0 * std::numbers::pi;
    for (int k = 3; k <= 16; ++k) t[k] = 2.0 * std::numbers::pi / (k - 2) * t[k - 2];
    return t;
  }();
  if (n <= 16) return table[static_cast<std::size_t>(n)];
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

// ---------------------------------------------------------------------------
// RadialProblem

RadialProblem RadialProblem::radial(ParamQuadruple params, Weight1D omega1, Weight1D omega2, Weight1D v1,
                                    Weight1D v2) {
  params.validate();
  RadialProblem p;
  p.params_ = params;
  p.omega1_ = std::move(omega1);
  p.omega2_ = std::move(omega2);
  p.v1_ = std::move(v1);
  p.v2_ = std::move(v2);
  p.rebuild_reductions();
  return p;
}

RadialProblem RadialProblem::with_reductions(ParamQuadruple params, Weight1D omega1, Weight1D omega2,
                                             Weight1D v1, Weight1D v2,
                                             std::optional<Weight1D> v_angular_integral,
                                             Weight1D v_angular_sup) {
  params.validate();
  RadialProblem p;
  p.params_ = params;
  p.omega1_ = std::move(omega1);
  p.omega2_ = std::move(omega2);
  p.v1_ = std::move(v1);
  p.v2_ = std::move(v2);
  p.user_reductions_ = true;
  p.v_angular_integral_ = std::move(v_angular_integral);
  p.v_angular_sup_ = std::move(v_angular_sup);
  if (params.p2 < params.p1 && !p.v_angular_integral_) {
    throw DomainError("p2 < p1 requires the angular integral reduction");
  }
  return p;
}

void RadialProblem::rebuild_reductions() {
  if (user_reductions_) return;
  const Weight1D ratio = v2_.divided_by(v1_);
  v_angular_sup_ = ratio;
  v_angular_integral_.reset();
  if (params_.p2 < params_.p1) {
    const double p1 = params_.p1.value();
    const double p2 = params_.p2.value();
    const double q = p1 * p2 / (p1 - p2);
    const double sigma = sphere_area(params_.n);
    const int n = params_.n;
    auto fn = [ratio, q, sigma, n](double r) {
      const double x = ratio(r);
      if (x == 0.0) return 0.0;
      return sigma * std::pow(x, q) * (n == 1 ? 1.0 : std::pow(r, n - 1));
    };
    v_angular_integral_ = Weight1D::from_function(fn, "angular_integral", ratio.nonsmooth(), ratio.breakpoints());
  }
}

RadialProblem RadialProblem::with_params(ParamQuadruple params) const {
  params.validate();
  RadialProblem p = *this;
  p.params_ = params;
  if (user_reductions_) {
    if (params.p2 < params.p1 && !p.v_angular_integral_) {
      throw DomainError("p2 < p1 requires the angular integral reduction");
    }
  } else {
    p.rebuild_reductions();
  }
  return p;
}

RadialProblem RadialProblem::with_omega1(Weight1D w) const {
  RadialProblem p = *this;
  p.omega1_ = std::move(w);
  return p;
}

RadialProblem RadialProblem::with_omega2(Weight1D w) const {
  RadialProblem p = *this;
  p.omega2_ = std::move(w);
  return p;
}

RadialProblem RadialProblem::with_v1(Weight1D w) const {
  RadialProblem p = *this;
  p.v1_ = std::move(w);
  p.user_reductions_ = false;
  p.rebuild_reductions();
  return p;
}

RadialProblem RadialProblem::with_v2(Weight1D w) const {
  RadialProblem p = *this;
  p.v2_ = std::move(w);
  p.user_reductions_ = false;
  p.rebuild_reductions();
  return p;
}

// ---------------------------------------------------------------------------
// RadialTestFunction

void RadialTestFunction::validate() const {
  if (breakpoints.size() < 2 || levels.size() + 1 != breakpoints.size()) {
    throw DomainError("test function needs k+1 breakpoints for k levels");
  }
  if (!(breakpoints.front() > 0.0) || !std::isfinite(breakpoints.back())) {
    throw DomainError("test function breakpoints must be positive and finite");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) throw DomainError("test function breakpoints must increase");
  }
  for (double c : levels) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("test function levels must be finite and >= 0");
  }
}

double RadialTestFunction::operator()(double r) const {
  if (!(r > breakpoints.front()) || !(r < breakpoints.back())) return 0.0;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
  return levels[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

RadialTestFunction RadialTestFunction::scaled(double lambda) const {
  RadialTestFunction g = *this;
  for (double& c : g.levels) c *= lambda;
  return g;
}

bool RadialTestFunction::is_zero() const {
  return std::all_of(levels.begin(), levels.end(), [](double c) { return c == 0.0; });
}

// ---------------------------------------------------------------------------
// Ball norms and V~

BallNorm::BallNorm(const RealFn& g, const RadialProblem& prob, const QuadratureConfig& cfg,
                   std::vector<double> breakpoints)
    : q_(prob.params().ball_exponent()) {
  const Weight1D& vs = prob.v_angular_sup();
  for (double b : vs.breakpoints()) breakpoints.push_back(b);
  if (!q_.is_infinite()) {
    const Weight1D& vi = *prob.v_angular_integral();
    for (double b : vi.breakpoints()) breakpoints.push_back(b);
    const double q = q_.value();
    auto density = [g, vi, q](double r) {
      const double x = g(r);
      if (x == 0.0) return 0.0;
      const double w = vi(r);
      return w == 0.0 ? 0.0 : std::pow(x, q) * w;
    };
    cumulative_ = std::make_shared<const CumulativeIntegral>(density, cfg, breakpoints);
  } else {
    auto fn = [g, vs](double r) {
      const double x = g(r);
      if (x == 0.0) return 0.0;
      const double w = vs(r);
      return w == 0.0 ? 0.0 : x * w;
    };
    running_sup_ = std::make_shared<const RunningSup>(fn, cfg, breakpoints);
  }
}

double BallNorm::operator()(double t) const {
  if (running_sup_) return (*running_sup_)(t);
  const double s = cumulative_->head(t);
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / q_.value());
}

double BallNorm::whole() const {
  if (running_sup_) return running_sup_->limit_at_infinity();
  const double s = cumulative_->total();
  return std::isinf(s) ? kInf : std::pow(s, 1.0 / q_.value());
}

VTilde::VTilde(const RadialProblem& prob, const QuadratureConfig& cfg)
    : norm_([](double) { return 1.0; }, prob, cfg) {}

double v_tilde(double x, const RadialProblem& prob, const QuadratureConfig& cfg) {
  return VTilde(prob, cfg)(x);
}

double kernel_ratio(double a, double b) {
  if (a == 0.0) return 0.0;
  if (std::isinf(a)) return std::isinf(b) ? 0.5 : 1.0;
  if (std::isinf(b)) return 0.0;
  return a / (a + b);
}

double v_script(double t, double x, const RadialProblem& prob, const QuadratureConfig& cfg) {
  VTilde vt(prob, cfg);
  const double a = vt(t);
  const double b = vt(x);
  if (a == 0.0 && b == 0.0) throw DegenerateWeight("V~ vanishes at both arguments");
  return kernel_ratio(a, b);
}

// ---------------------------------------------------------------------------
// Morrey-type norms

namespace {

constexpr double kPanelLogWidth = 0.25;
constexpr std::size_t kOuterPoints = 10;
constexpr int kGradingLevels = 30;
constexpr std::size_t kMassPoints = 6;

}  // namespace

MorreyNorm::MorreyNorm(MorreyKind kind, Exponent p, Exponent theta, Weight1D omega, Weight1D v, int n,
                       const QuadratureConfig& cfg)
    : kind_(kind),
      p_(p.value()),
      theta_(theta.value()),
      omega_(std::move(omega)),
      v_(std::move(v)),
      n_(n),
      sigma_(sphere_area(n)) {
  if (p.is_infinite() || theta.is_infinite()) {
    throw DomainError("Morrey-type norms of test functions need finite p and theta");
  }
  breakpoints_ = omega_.breakpoints();
  for (double b : v_.breakpoints()) breakpoints_.push_back(b);
  std::sort(breakpoints_.begin(), breakpoints_.end());
  const double th = theta_;
  const Weight1D w = omega_;
  omega_mass_ = std::make_shared<const CumulativeIntegral>(
      [w, th](double t) {
        const double x = w(t);
        return x == 0.0 ? 0.0 : std::pow(x, th);
      },
      cfg, omega_.breakpoints());
}

std::vector<MorreyNorm::Panel> MorreyNorm::panels(double a, double b, bool grade_lo, bool grade_hi) const {
  std::vector<double> cuts{a};
  for (double x : breakpoints_) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::vector<Panel> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double la = std::log(cuts[i]);
    const double lb = std::log(cuts[i + 1]);
    const auto m = static_cast<int>(std::max(1.0, std::ceil((lb - la) / kPanelLogWidth)));
    for (int k = 0; k < m; ++k) {
      out.push_back({std::exp(la + (lb - la) * k / m), std::exp(la + (lb - la) * (k + 1) / m)});
    }
    out.back().b = cuts[i + 1];
    out[out.size() - static_cast<std::size_t>(m)].a = cuts[i];
  }
  // Geometric refinement toward an end where the inner norm vanishes like (t - a)^{1/p}.
  auto graded = [](Panel pn, bool toward_lo) {
    std::vector<Panel> g;
    const double la = std::log(pn.a);
    const double lb = std::log(pn.b);
    double edge = toward_lo ? lb : la;
    for (int j = 1; j <= kGradingLevels; ++j) {
      const double x = toward_lo ? la + (lb - la) * std::ldexp(1.0, -j) : lb - (lb - la) * std::ldexp(1.0, -j);
      g.push_back(toward_lo ? Panel{std::exp(x), std::exp(edge)} : Panel{std::exp(edge), std::exp(x)});
      edge = x;
    }
    g.push_back(toward_lo ? Panel{pn.a, std::exp(edge)} : Panel{std::exp(edge), pn.b});
    if (toward_lo) std::reverse(g.begin(), g.end());
    g.front().a = pn.a;
    g.back().b = pn.b;
    return g;
  };
  if (grade_hi) {
    const Panel last = out.back();
    out.pop_back();
    for (const Panel& q : graded(last, false)) out.push_back(q);
  }
  if (grade_lo) {
    const Panel first = out.front();
    std::vector<Panel> g = graded(first, true);
    g.insert(g.end(), out.begin() + 1, out.end());
    out = std::move(g);
  }
  return out;
}

double MorreyNorm::operator()(const RadialTestFunction& f) const {
  f.validate();
  if (f.is_zero()) return 0.0;
  const auto& gl_outer = gauss_legendre(kOuterPoints);
  const auto& gl_mass = gauss_legendre(kMassPoints);

  auto rho = [&](double r) {
    const double x = v_(r);
    if (x == 0.0) return 0.0;
    return std::pow(x, p_) * sigma_ * (n_ == 1 ? 1.0 : std::pow(r, n_ - 1));
  };
  // Mass of rho over (a, b) via Gauss-Legendre in log r.
  auto mass = [&](double a, double b) {
    if (!(a < b)) return 0.0;
    const double la = std::log(a);
    const double lb = std::log(b);
    const double half = 0.5 * (lb - la);
    const double mid = 0.5 * (lb + la);
    double s = 0.0;
    for (std::size_t j = 0; j < kMassPoints; ++j) {
      const double r = std::exp(mid + half * gl_mass.nodes[j]);
      s += gl_mass.weights[j] * rho(r) * r;
    }
    return s * half;
  };

  const std::size_t k = f.levels.size();
  struct Node {
    double weight;  // quadrature weight times omega^theta times t (log measure)
    double partial; // mass of the current annulus inside (r_i, t)
  };
  std::vector<std::vector<Node>> nodes(k);
  std::vector<double> annulus_mass(k, 0.0);
  std::size_t first_nz = k;
  std::size_t last_nz = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (f.levels[i] == 0.0) continue;
    first_nz = std::min(first_nz, i);
    last_nz = i;
  }
  // Integer theta/p leaves the outer integrand smooth at the ends.
  const bool singular = std::abs(theta_ / p_ - std::round(theta_ / p_)) > 1e-12;
  for (std::size_t i = 0; i < k; ++i) {
    const double a = f.breakpoints[i];
    const double b = f.breakpoints[i + 1];
    double acc = 0.0;
    double prev_t = a;
    const bool grade_lo = singular && kind_ == MorreyKind::LM && i == first_nz;
    const bool grade_hi = singular && kind_ == MorreyKind::cLM && i == last_nz;
    for (const Panel& pn : panels(a, b, grade_lo, grade_hi)) {
      const double la = std::log(pn.a);
      const double lb = std::log(pn.b);
      const double half = 0.5 * (lb - la);
      const double mid = 0.5 * (lb + la);
      // Mass increments follow the node order; the panel's own edges are cut points.
      for (std::size_t j = 0; j < kOuterPoints; ++j) {
        const double t = std::exp(mid + half * gl_outer.nodes[j]);
        acc += mass(prev_t, t);
        prev_t = t;
        const double w = omega_(t);
        const double wt = w == 0.0 ? 0.0 : std::pow(w, theta_) * gl_outer.weights[j] * half * t;
        nodes[i].push_back({wt, acc});
      }
      acc += mass(prev_t, pn.b);
      prev_t = pn.b;
    }
    annulus_mass[i] = acc;
  }

  std::vector<double> level_p(k);
  for (std::size_t i = 0; i < k; ++i) level_p[i] = f.levels[i] == 0.0 ? 0.0 : std::pow(f.levels[i], p_);
  double total_inner = 0.0;
  for (std::size_t i = 0; i < k; ++i) total_inner += level_p[i] * annulus_mass[i];

  const double ratio = theta_ / p_;
  auto power = [ratio](double x) { return x <= 0.0 ? 0.0 : std::pow(x, ratio); };
  double outer = 0.0;
  double before = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double after = total_inner - before - level_p[i] * annulus_mass[i];
    for (const Node& nd : nodes[i]) {
      if (nd.weight == 0.0) continue;
      const double inner = kind_ == MorreyKind::LM
                               ? before + level_p[i] * nd.partial
                               : std::max(after, 0.0) + level_p[i] * (annulus_mass[i] - nd.partial);
      outer += nd.weight * power(inner);
    }
    before += level_p[i] * annulus_mass[i];
  }
  const double outside = kind_ == MorreyKind::LM ? omega_mass_->tail(f.breakpoints.back())
                                                 : omega_mass_->head(f.breakpoints.front());
  if (outside > 0.0 && total_inner > 0.0) {
    if (std::isinf(outside)) return kInf;
    outer += power(total_inner) * outside;
  }
  return std::pow(outer, 1.0 / theta_);
}

double lm_norm(const RadialTestFunction& f, Exponent p, Exponent theta, const Weight1D& omega,
               const Weight1D& v, int n, const QuadratureConfig& cfg) {
  return MorreyNorm(MorreyKind::LM, p, theta, omega, v, n, cfg)(f);
}

double clm_norm(const RadialTestFunction& f, Exponent p, Exponent theta, const Weight1D& omega,
                const Weight1D& v, int n, const QuadratureConfig& cfg) {
  return MorreyNorm(MorreyKind::cLM, p, theta, omega, v, n, cfg)(f);
}

Weight1D lmpp_weight(Exponent p, const Weight1D& omega, const Weight1D& v, MorreyKind kind,
                     const QuadratureConfig& cfg) {
  auto norms = std::make_shared<const WeightNorms>(omega, p, cfg);
  auto fn = [norms, v, kind](double r) {
    const double x = v(r);
    if (x == 0.0) return 0.0;
    const double nrm = kind == MorreyKind::LM ? norms->tail(r) : norms->head(r);
    return nrm == 0.0 ? 0.0 : x * nrm;
  };
  std::vector<double> bps = v.breakpoints();
  for (double b : omega.breakpoints()) bps.push_back(b);
  return Weight1D::from_function(fn, kind == MorreyKind::LM ? "lmpp_weight" : "clmpp_weight",
                                 v.nonsmooth() || omega.nonsmooth(), bps);
}

double radial_lp_norm(const RadialTestFunction& f, Exponent p, const Weight1D& w, int n,
                      const QuadratureConfig& cfg) {
  f.validate();
  const double pv = p.value();
  const double sigma = sphere_area(n);
  auto density = [&](double r) {
    const double x = w(r);
    if (x == 0.0) return 0.0;
    return std::pow(x, pv) * sigma * (n == 1 ? 1.0 : std::pow(r, n - 1));
  };
  double s = 0.0;
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    if (f.levels[i] == 0.0) continue;
    const double m = integrate(density, Interval(f.breakpoints[i], f.breakpoints[i + 1]), cfg, w.breakpoints());
    if (std::isinf(m)) return kInf;
    s += std::pow(f.levels[i], pv) * m;
  }
  return std::pow(s, 1.0 / pv);
}

}  // namespace morrey
