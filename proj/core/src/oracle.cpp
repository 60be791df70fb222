#include "morrey/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "morrey/errors.hpp"

namespace morrey {

namespace {

constexpr double kPanelLogWidth = 0.25;
constexpr std::size_t kNodes = 10;
constexpr std::array<double, 3> kSteps{2.0, 1.25, 1.05};
// Minimum annulus log-width at level 0; each level divides it by 100.
constexpr double kBaseFloor = 0.5;

double safe_ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0 || std::isinf(num)) return kInf;
  return std::isinf(den) ? 0.0 : num / den;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Annular step function in log coordinates.
struct Block {
  double log_r0 = 0.0;
  std::vector<double> gaps;
  std::vector<double> log_levels;

  RadialTestFunction function() const {
    RadialTestFunction f;
    double u = log_r0;
    f.breakpoints.push_back(std::exp(u));
    for (double g : gaps) {
      u += g;
      f.breakpoints.push_back(std::exp(u));
    }
    for (double l : log_levels) f.levels.push_back(std::exp(l));
    return f;
  }

  std::size_t coords() const { return 1 + gaps.size() + log_levels.size(); }

  Block split() const {
    Block b;
    b.log_r0 = log_r0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      b.gaps.push_back(gaps[i] / 2);
      b.gaps.push_back(gaps[i] / 2);
      b.log_levels.push_back(log_levels[i]);
      b.log_levels.push_back(log_levels[i]);
    }
    return b;
  }
};

struct Domain {
  double log_lo;
  double log_hi;
  double floor;

  bool valid(const Block& b) const {
    if (b.log_r0 < log_lo - 1e-12) return false;
    double u = b.log_r0;
    for (double g : b.gaps) {
      if (!(g >= floor * (1 - 1e-12))) return false;
      u += g;
    }
    return u <= log_hi + 1e-12;
  }
};

Block random_block(int k, const Domain& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double span = d.log_hi - d.log_lo;
  const double min_total = k * d.floor;
  const double total = min_total + (span - min_total) * (0.05 + 0.95 * unit(rng));
  Block b;
  b.log_r0 = d.log_lo + (span - total) * unit(rng);
  std::vector<double> w(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - unit(rng) * 0.999);
    sum += x;
  }
  for (double x : w) b.gaps.push_back(d.floor + (total - min_total) * x / sum);
  for (int i = 0; i < k; ++i) b.log_levels.push_back(-1.0 + 2.0 * unit(rng));
  return b;
}

using Objective = std::function<double(const std::vector<Block>&)>;

double evaluate(const Objective& obj, const std::vector<Block>& blocks) {
  try {
    const double v = obj(blocks);
    return std::isnan(v) ? -1.0 : v;
  } catch (const Error&) {
    return -1.0;
  }
}

// Coordinate ascent with multiplicative steps on r0, gaps and levels; when a
// full sweep at the finest step fails, the breakpoints are jittered in log space.
void ascend(const Objective& obj, std::vector<Block>& blocks, double& value, int iters, const Domain& d,
            std::mt19937_64& rng) {
  std::size_t ncoords = 0;
  for (const Block& b : blocks) ncoords += b.coords();
  std::size_t step_idx = 0;
  std::size_t since_improve = 0;
  std::size_t coord = 0;
  int jitters = 0;
  std::normal_distribution<double> normal(0.0, 1.0);

  auto locate = [&](std::size_t c, std::size_t& block, std::size_t& local) {
    block = 0;
    while (c >= blocks[block].coords()) {
      c -= blocks[block].coords();
      ++block;
    }
    local = c;
  };
  auto apply = [](Block& b, std::size_t local, double factor) {
    const double ls = std::log(factor);
    if (local == 0) {
      b.log_r0 += ls;
    } else if (local <= b.gaps.size()) {
      b.gaps[local - 1] *= factor;
    } else {
      b.log_levels[local - 1 - b.gaps.size()] += ls;
    }
  };

  for (int it = 0; it < iters && !std::isinf(value); ++it) {
    if (since_improve >= ncoords) {
      since_improve = 0;
      if (step_idx + 1 < kSteps.size()) {
        ++step_idx;
      } else {
        const double sigma = 0.5 * std::pow(0.7, jitters++);
        std::vector<Block> trial = blocks;
        bool ok = true;
        for (Block& b : trial) {
          b.log_r0 += sigma * normal(rng);
          for (double& g : b.gaps) g *= std::exp(sigma * normal(rng));
          ok = ok && d.valid(b);
        }
        if (ok) {
          const double v = evaluate(obj, trial);
          if (v > value) {
            blocks = std::move(trial);
            value = v;
            step_idx = 0;
          }
        }
        continue;
      }
    }
    std::size_t bi = 0;
    std::size_t local = 0;
    locate(coord, bi, local);
    coord = (coord + 1) % ncoords;
    bool improved = false;
    for (double factor : {kSteps[step_idx], 1.0 / kSteps[step_idx]}) {
      std::vector<Block> trial = blocks;
      apply(trial[bi], local, factor);
      if (!d.valid(trial[bi])) continue;
      const double v = evaluate(obj, trial);
      if (v > value * (1 + 1e-12)) {
        blocks = std::move(trial);
        value = v;
        improved = true;
        break;
      }
    }
    since_improve = improved ? 0 : since_improve + 1;
  }
}

struct SearchResult {
  std::vector<Block> best;
  double value = -1.0;
  std::vector<double> trace;
};

SearchResult search(const Objective& obj, std::size_t nblocks, const OracleConfig& ocfg) {
  ocfg.validate();
  const double log_lo = std::log(ocfg.span_lo);
  const double log_hi = std::log(ocfg.span_hi);
  SearchResult out;
  out.trace.assign(static_cast<std::size_t>(ocfg.refine_levels), -1.0);
  for (int restart = 0; restart < ocfg.restarts; ++restart) {
    std::mt19937_64 rng(splitmix64(ocfg.seed + static_cast<std::uint64_t>(restart)));
    Domain d{log_lo, log_hi, kBaseFloor};
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < nblocks; ++i) blocks.push_back(random_block(ocfg.annuli_count, d, rng));
    double value = evaluate(obj, blocks);
    for (int level = 0; level < ocfg.refine_levels; ++level) {
      if (level > 0) {
        for (Block& b : blocks) b = b.split();
        d.floor /= 100.0;
      }
      ascend(obj, blocks, value, ocfg.ascent_iters, d, rng);
      auto& t = out.trace[static_cast<std::size_t>(level)];
      t = std::max(t, value);
    }
    // Ties keep the lower restart index, so the result does not depend on order.
    if (value > out.value) {
      out.value = value;
      out.best = blocks;
    }
  }
  for (double& t : out.trace) t = std::max(t, 0.0);
  out.value = std::max(out.value, 0.0);
  return out;
}

// Mass of v^p sigma r^{n-1} over (a, b) by composite Gauss-Legendre in log r.
class RadialMass {
 public:
  RadialMass(Weight1D v, double p, int n) : v_(std::move(v)), p_(p), n_(n), sigma_(sphere_area(n)) {}

  double operator()(double a, double b) const {
    if (!(a < b)) return 0.0;
    const auto& gl = gauss_legendre(6);
    const double la = std::log(a);
    const double lb = std::log(b);
    const int m = static_cast<int>(std::max(1.0, std::ceil((lb - la) / kPanelLogWidth)));
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
      const double pa = la + (lb - la) * k / m;
      const double pb = la + (lb - la) * (k + 1) / m;
      const double half = 0.5 * (pb - pa);
      const double mid = 0.5 * (pb + pa);
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const double r = std::exp(mid + half * gl.nodes[j]);
        const double w = v_(r);
        if (w == 0.0) continue;
        s += gl.weights[j] * half * std::pow(w, p_) * sigma_ * (n_ == 1 ? 1.0 : std::pow(r, n_ - 1)) * r;
      }
    }
    return s;
  }

 private:
  Weight1D v_;
  double p_;
  int n_;
  double sigma_;
};

}  // namespace

void OracleConfig::validate() const {
  if (annuli_count < 1) throw DomainError("annuli_count must be >= 1");
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  if (ascent_iters < 1) throw DomainError("ascent_iters must be >= 1");
  if (refine_levels < 1) throw DomainError("refine_levels must be >= 1");
  if (!(span_lo > 0.0) || !(span_lo < span_hi) || !std::isfinite(span_hi)) {
    throw DomainError("breakpoint span must satisfy 0 < lo < hi < inf");
  }
  if (std::log(span_hi / span_lo) < annuli_count * kBaseFloor) {
    throw DomainError("breakpoint span too narrow for the annuli count");
  }
}

RatioEvaluator::RatioEvaluator(const RadialProblem& prob, const QuadratureConfig& cfg, Direction dir)
    : target_(dir == Direction::Forward ? MorreyKind::LM : MorreyKind::cLM, prob.params().p2, prob.params().th2,
              prob.omega2(), prob.v2(), prob.dimension(), cfg),
      source_(dir == Direction::Forward ? MorreyKind::cLM : MorreyKind::LM, prob.params().p1, prob.params().th1,
              prob.omega1(), prob.v1(), prob.dimension(), cfg) {}

double RatioEvaluator::operator()(const RadialTestFunction& f) const {
  if (f.is_zero()) throw DomainError("ratio of the zero function");
  return safe_ratio(target_(f), source_(f));
}

double ratio(const RadialTestFunction& f, const RadialProblem& prob, const QuadratureConfig& cfg, Direction dir) {
  return RatioEvaluator(prob, cfg, dir)(f);
}

OracleResult maximize_ratio(const RadialProblem& prob, const OracleConfig& ocfg, const QuadratureConfig& cfg,
                            Direction dir) {
  const RatioEvaluator eval(prob, cfg, dir);
  const Objective obj = [&eval](const std::vector<Block>& b) { return eval(b[0].function()); };
  SearchResult s = search(obj, 1, ocfg);
  OracleResult out;
  out.lower_bound = s.value;
  out.trace = std::move(s.trace);
  if (!s.best.empty()) out.best_function = s.best[0].function();
  return out;
}

double h_star(const RealFn& g, double t, const QuadratureConfig& cfg) {
  if (!(t >= 0.0)) throw DomainError("h_star needs t >= 0");
  if (std::isinf(t)) return 0.0;
  return integrate(g, Interval(t, kInf), cfg);
}

// ---------------------------------------------------------------------------
// Dual formulation

namespace {

double dual_exponent(const RadialProblem& prob) {
  const double p2 = prob.params().p2.value();
  const double th2 = prob.params().th2.value();
  if (!(p2 < th2)) throw DomainError("the dual formulation needs p2 < theta2");
  return th2 / (th2 - p2);
}

}  // namespace

DualEvaluator::DualEvaluator(const RadialProblem& prob, const QuadratureConfig& cfg)
    : prob_(prob),
      cfg_(cfg),
      p2_(prob.params().p2.value()),
      r_(dual_exponent(prob)),
      source_(MorreyKind::cLM, prob.params().p1, prob.params().th1, prob.omega1(), prob.v1(), prob.dimension(),
              cfg) {}

double DualEvaluator::pairing(const RadialTestFunction& f, const RadialTestFunction& g) const {
  f.validate();
  g.validate();
  const RadialMass mass(prob_.v2(), p2_, prob_.dimension());
  const std::size_t k = f.levels.size();
  std::vector<double> full(k);
  std::vector<double> lp(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    lp[i] = f.levels[i] == 0.0 ? 0.0 : std::pow(f.levels[i], p2_);
    full[i] = mass(f.breakpoints[i], f.breakpoints[i + 1]);
    total += lp[i] * full[i];
  }
  // F(tau) = ||f||_{p2,v2,B(0,tau)}^{p2}
  auto F = [&](double tau) {
    double s = 0.0;
    for (std::size_t i = 0; i < k && f.breakpoints[i] < tau; ++i) {
      s += lp[i] * (tau >= f.breakpoints[i + 1] ? full[i] : mass(f.breakpoints[i], tau));
    }
    return s;
  };
  const auto& gl = gauss_legendre(kNodes);
  double out = 0.0;
  for (std::size_t j = 0; j < g.levels.size(); ++j) {
    const double gj = g.levels[j];
    if (gj == 0.0) continue;
    const double a = g.breakpoints[j];
    const double b = g.breakpoints[j + 1];
    if (b <= f.breakpoints.front()) continue;
    // Beyond the support of f the integrand is constant.
    const double c = std::min(b, f.breakpoints.back());
    double cell = b > c ? total * (b - std::max(a, c)) : 0.0;
    const double lo = std::max(a, f.breakpoints.front());
    if (lo < c) {
      std::vector<double> cuts{lo};
      for (double x : f.breakpoints) {
        if (x > lo && x < c) cuts.push_back(x);
      }
      cuts.push_back(c);
      for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
        const double la = std::log(cuts[q]);
        const double lb = std::log(cuts[q + 1]);
        const int m = static_cast<int>(std::max(1.0, std::ceil((lb - la) / kPanelLogWidth)));
        for (int e = 0; e < m; ++e) {
          const double pa = la + (lb - la) * e / m;
          const double pb = la + (lb - la) * (e + 1) / m;
          const double half = 0.5 * (pb - pa);
          const double mid = 0.5 * (pb + pa);
          for (std::size_t n = 0; n < kNodes; ++n) {
            const double tau = std::exp(mid + half * gl.nodes[n]);
            cell += gl.weights[n] * half * F(tau) * tau;
          }
        }
      }
    }
    out += gj * cell;
  }
  return out;
}

double DualEvaluator::g_norm(const RadialTestFunction& g) const {
  g.validate();
  const Weight1D& w2 = prob_.omega2();
  const double e = -p2_ * r_;
  auto density = [&](double t) {
    const double x = w2(t);
    if (x == 0.0) return kInf;
    return std::pow(x, e);
  };
  double s = 0.0;
  for (std::size_t j = 0; j < g.levels.size(); ++j) {
    if (g.levels[j] == 0.0) continue;
    const double m = integrate(density, Interval(g.breakpoints[j], g.breakpoints[j + 1]), cfg_, w2.breakpoints());
    if (std::isinf(m)) return kInf;
    s += std::pow(g.levels[j], r_) * m;
  }
  return std::pow(s, 1.0 / r_);
}

double DualEvaluator::operator()(const RadialTestFunction& f, const RadialTestFunction& g) const {
  const double num = std::pow(safe_ratio(pairing(f, g), g_norm(g)), 1.0 / p2_);
  return safe_ratio(num, source_(f));
}

DualResult dual_lower_bound(const RadialProblem& prob, const OracleConfig& ocfg, const QuadratureConfig& cfg) {
  const DualEvaluator eval(prob, cfg);
  const Objective obj = [&eval](const std::vector<Block>& b) { return eval(b[0].function(), b[1].function()); };
  SearchResult s = search(obj, 2, ocfg);
  DualResult out;
  out.lower_bound = s.value;
  out.trace = std::move(s.trace);
  if (!s.best.empty()) {
    out.best_function = s.best[0].function();
    out.best_g = s.best[1].function();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

std::vector<double> inverted(const std::vector<double>& bps) {
  std::vector<double> out;
  for (double b : bps) {
    if (b > 0.0 && std::isfinite(b)) out.push_back(1.0 / b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Weight1D invert_weight(const Weight1D& w, double power, const std::string& name) {
  auto fn = [w, power](double r) {
    const double x = w(1.0 / r);
    return x == 0.0 ? 0.0 : x * std::pow(r, power);
  };
  return Weight1D::from_function(fn, name + "(" + w.description() + ")", w.nonsmooth(), inverted(w.breakpoints()));
}

}  // namespace

RadialProblem reverse_problem(const RadialProblem& prob) {
  const ParamQuadruple& pq = prob.params();
  const int n = prob.dimension();
  const double p1 = pq.p1.value();
  const double p2 = pq.p2.value();
  const double th1 = pq.th1.value();
  const double th2 = pq.th2.value();
  return RadialProblem::radial(pq, invert_weight(prob.omega1(), -2.0 / th1, "inverted"),
                               invert_weight(prob.omega2(), -2.0 / th2, "inverted"),
                               invert_weight(prob.v1(), -2.0 * n / p1, "inverted"),
                               invert_weight(prob.v2(), -2.0 * n / p2, "inverted"));
}

RadialTestFunction invert(const RadialTestFunction& f) {
  f.validate();
  RadialTestFunction g;
  for (auto it = f.breakpoints.rbegin(); it != f.breakpoints.rend(); ++it) g.breakpoints.push_back(1.0 / *it);
  g.levels.assign(f.levels.rbegin(), f.levels.rend());
  return g;
}

}  // namespace morrey
