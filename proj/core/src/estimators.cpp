#include "morrey/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <utility>

#include "morrey/errors.hpp"

namespace morrey {

namespace {

constexpr std::array<std::pair<RegimeTag, std::string_view>, 17> kTagNames{{
    {RegimeTag::Main01, "Main01"},
    {RegimeTag::Main02_i, "Main02_i"},
    {RegimeTag::Main02_ii, "Main02_ii"},
    {RegimeTag::Main03_i, "Main03_i"},
    {RegimeTag::Main03_ii, "Main03_ii"},
    {RegimeTag::Thm1_i, "Thm1_i"},
    {RegimeTag::Thm1_ii, "Thm1_ii"},
    {RegimeTag::Thm3_i, "Thm3_i"},
    {RegimeTag::Thm3_ii, "Thm3_ii"},
    {RegimeTag::Thm3_iii, "Thm3_iii"},
    {RegimeTag::Thm3_iv, "Thm3_iv"},
    {RegimeTag::Thm2, "Thm2"},
    {RegimeTag::Thm4_i, "Thm4_i"},
    {RegimeTag::Thm4_ii, "Thm4_ii"},
    {RegimeTag::NotEmbedded, "NotEmbedded"},
    {RegimeTag::OpenCase, "OpenCase"},
    {RegimeTag::Unsupported, "Unsupported"},
}};

// Arithmetic with 0/0 = 0, 0 * inf = 0, 1/inf = 0.
double mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

double divide(double a, double b) {
  if (a == 0.0) return 0.0;
  if (b == 0.0) return kInf;
  if (std::isinf(b)) return std::isinf(a) ? kInf : 0.0;
  return a / b;
}

double powr(double x, double r) {
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return kInf;
  return std::pow(x, r);
}

double root(double x, double r) { return powr(x, 1.0 / r); }

double arrow_value(Exponent a, Exponent b) {
  const Exponent e = arrow(a, b);
  if (e.is_infinite()) throw DomainError("arrow exponent is infinite where a finite one is required");
  return e.value();
}

bool is_family(RegimeTag tag, std::initializer_list<RegimeTag> family) {
  for (RegimeTag t : family) {
    if (t == tag) return true;
  }
  return false;
}

RegimeTag require_family(const RadialProblem& prob, std::initializer_list<RegimeTag> family, const char* what) {
  const RegimeTag tag = classify(prob.params());
  if (!is_family(tag, family)) {
    throw DomainError(std::string(what) + " does not apply to regime " + std::string(to_string(tag)));
  }
  return tag;
}

// Shared building blocks: V~, head norm of omega1, tail norm of omega2.
struct Context {
  Context(const RadialProblem& prob_, const QuadratureConfig& cfg_) : prob(prob_), cfg(cfg_), outer(cfg_) {
    // Integrands built from inner suprema carry their sup_rel_tol noise; the
    // outer integral cannot resolve below it.
    outer.rel_tol = std::max(cfg.rel_tol, 10.0 * cfg.sup_rel_tol);
    const ParamQuadruple& pq = prob.params();
    p1 = pq.p1;
    p2 = pq.p2;
    th1 = pq.th1;
    th2 = pq.th2;
    auto vt = std::make_shared<const VTilde>(prob, cfg);
    V = memoize([vt](double t) { return (*vt)(t); });
    auto h1 = std::make_shared<const WeightNorms>(prob.omega1(), th1, cfg);
    auto t2 = std::make_shared<const WeightNorms>(prob.omega2(), th2, cfg);
    H1 = memoize([h1](double t) { return h1->head(t); });
    T2 = memoize([t2](double t) { return t2->tail(t); });
    H1inf = h1->total();
    for (const Weight1D* w : {&prob.omega1(), &prob.omega2(), &prob.v_angular_sup()}) {
      for (double b : w->breakpoints()) bps.push_back(b);
    }
  }

  RealFn head_norm1(Exponent e) const {
    auto n = std::make_shared<const WeightNorms>(prob.omega1(), e, cfg);
    return memoize([n](double t) { return n->head(t); });
  }
  RealFn tail_norm2(Exponent e) const {
    auto n = std::make_shared<const WeightNorms>(prob.omega2(), e, cfg);
    return memoize([n](double t) { return n->tail(t); });
  }

  double sup(const RealFn& F) const { return sup_over_ray(F, Interval::ray(), cfg, bps).value; }

  // sup_t V(t,x) ||omega2||_{theta2,(t,inf)}
  RealFn kernel_sup() const {
    return memoize([this](double x) {
      const double vx = V(x);
      return sup([&](double t) { return mul(kernel_ratio(V(t), vx), T2(t)); });
    });
  }

  // (int V(t,x)^r d(-||omega2||_{theta2,(t,inf)}^r))^{1/r}, r = p1 -> theta2
  RealFn kernel_integral() const {
    const double r = arrow_value(p1, th2);
    auto m = std::make_shared<const TailMeasure>(prob.omega2(), th2, Exponent(r), Orientation::TailRight, cfg);
    return memoize([this, m, r](double x) {
      const double vx = V(x);
      const double s = stieltjes_integrate([&](double t) { return powr(kernel_ratio(V(t), vx), r); }, *m, cfg);
      return root(s, r);
    });
  }

  // ||omega1||_{theta1,(0,inf)}^{-1} sup_t V~(t) ||omega2||_{theta2,(t,inf)}
  double global_sup_term() const {
    return divide(sup([this](double t) { return mul(V(t), T2(t)); }), H1inf);
  }

  // ||omega1||_{theta1,(0,inf)}^{-1} (int V~^r d(-||omega2||^r))^{1/r}
  double global_integral_term() const {
    const double r = arrow_value(p1, th2);
    TailMeasure m(prob.omega2(), th2, Exponent(r), Orientation::TailRight, cfg);
    return divide(root(stieltjes_integrate([this, r](double t) { return powr(V(t), r); }, m, cfg), r), H1inf);
  }

  const RadialProblem& prob;
  QuadratureConfig cfg;
  QuadratureConfig outer;
  Exponent p1, p2, th1, th2;
  RealFn V, H1, T2;
  double H1inf = 0.0;
  std::vector<double> bps;
};

class Checker {
 public:
  Checker(EstimateReport& rep, const EstimateOptions& opts) : rep_(rep), opts_(opts) {}

  void add(ClassReport r, bool fatal = true) {
    const Tri m = r.member;
    const std::string label = r.name + ": " + (r.notes.empty() ? std::string(to_string(m)) : r.notes);
    rep_.hypothesis_checks.emplace_back(std::move(r));
    settle(m, label, fatal);
  }

  void add(QuasiconcavityReport r) {
    Tri m = Tri::Yes;
    if (r.is_U_quasiconcave == Tri::No || r.is_nondegenerate == Tri::No) {
      m = Tri::No;
    } else if (r.is_U_quasiconcave == Tri::Undetermined || r.is_nondegenerate == Tri::Undetermined) {
      m = Tri::Undetermined;
    }
    const std::string label = r.name + ": " + (r.notes.empty() ? std::string(to_string(m)) : r.notes);
    rep_.hypothesis_checks.emplace_back(std::move(r));
    settle(m, label, true);
  }

  void classes(const RadialProblem& prob, const QuadratureConfig& cfg) {
    ClassReport c1 = check_class(prob.omega1(), prob.params().th1, WeightClass::cOmega, cfg);
    c1.name = "omega1 in cOmega_theta1";
    add(std::move(c1));
    ClassReport c2 = check_class(prob.omega2(), prob.params().th2, WeightClass::Omega, cfg);
    c2.name = "omega2 in Omega_theta2";
    add(std::move(c2));
  }

  void continuity(const RadialProblem& prob) {
    ClassReport r;
    r.name = "v2/v1 continuous";
    r.member = prob.v_angular_sup().nonsmooth() ? Tri::No : Tri::Yes;
    if (r.member == Tri::No) r.notes = "weight ratio uses chi/min/max";
    add(std::move(r));
  }

 private:
  void settle(Tri m, const std::string& label, bool fatal) {
    if (m == Tri::Yes) return;
    if (m == Tri::No && fatal) {
      if (!opts_.force) throw HypothesisFailed("hypothesis not satisfied: " + label);
      rep_.warnings.push_back("hypotheses unverified (forced): " + label);
    } else {
      rep_.warnings.push_back((m == Tri::No ? "not satisfied (informational): " : "undetermined: ") + label);
    }
    rep_.hypotheses_verified = false;
  }

  EstimateReport& rep_;
  const EstimateOptions& opts_;
};

EstimateReport start(RegimeTag tag) {
  EstimateReport rep;
  rep.regime = tag;
  return rep;
}

void finish(EstimateReport& rep) {
  double v = 0.0;
  for (const Term& t : rep.terms) v += t.value;
  rep.value = v;
}

ClassReport admissible_report(const RealFn& V, const QuadratureConfig& cfg) {
  ClassReport r;
  r.name = "V~ admissible";
  r.member = check_admissible(V, cfg);
  if (r.member == Tri::No) r.notes = "V~ is not strictly increasing from 0 to inf";
  return r;
}

// U = V~^{1/(p1 -> p2)}
RealFn quasiconcavity_scale(const Context& c) {
  const double e = 1.0 / arrow_value(c.p1, c.p2);
  RealFn V = c.V;
  return [V, e](double t) { return powr(V(t), e); };
}

}  // namespace

std::string_view to_string(RegimeTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "Unsupported";
}

std::optional<RegimeTag> regime_from_string(std::string_view s) {
  for (const auto& [t, name] : kTagNames) {
    if (name == s) return t;
  }
  return std::nullopt;
}

const std::vector<RegimeTag>& formula_regimes() {
  static const std::vector<RegimeTag> tags = [] {
    std::vector<RegimeTag> v;
    for (const auto& [t, name] : kTagNames) {
      if (has_formula(t)) v.push_back(t);
    }
    return v;
  }();
  return tags;
}

bool has_formula(RegimeTag tag) {
  return tag != RegimeTag::NotEmbedded && tag != RegimeTag::OpenCase && tag != RegimeTag::Unsupported;
}

RegimeTag classify(const ParamQuadruple& pq) {
  const Exponent p1 = pq.p1, p2 = pq.p2, th1 = pq.th1, th2 = pq.th2;
  if (p1 < p2) return RegimeTag::NotEmbedded;
  if (th2 < p2) return RegimeTag::OpenCase;
  if (p1.is_infinite() || p2.is_infinite() || th1.is_infinite() || th2.is_infinite()) {
    return RegimeTag::Unsupported;
  }
  // From here p2 <= p1 and p2 <= th2.
  if (p2 == th2) {
    if (p1 == th1) return RegimeTag::Main01;
    return th1 <= p2 ? RegimeTag::Main03_i : RegimeTag::Main03_ii;
  }
  if (p1 == th1) return p1 <= th2 ? RegimeTag::Main02_i : RegimeTag::Main02_ii;
  if (p2 < p1) {
    if (th1 <= p2) return p1 <= th2 ? RegimeTag::Thm1_i : RegimeTag::Thm1_ii;
    if (p1 <= th2 && th1 <= th2) return RegimeTag::Thm3_i;
    if (p1 <= th2) return RegimeTag::Thm3_ii;
    if (th1 <= th2) return RegimeTag::Thm3_iii;
    return RegimeTag::Thm3_iv;
  }
  // p1 = p2 = p < th2, p != th1.
  if (th1 < p1) return RegimeTag::Thm2;
  return th1 <= th2 ? RegimeTag::Thm4_i : RegimeTag::Thm4_ii;
}

EstimateReport valueless_report(RegimeTag tag) {
  EstimateReport rep = start(tag);
  switch (tag) {
    case RegimeTag::NotEmbedded:
      rep.value = kInf;
      rep.explanation = "p1 < p2: only the zero function embeds, the embedding constant is infinite";
      break;
    case RegimeTag::OpenCase:
      rep.explanation = "theta2 < p2: no characterization of the embedding is known";
      break;
    case RegimeTag::Unsupported:
      rep.explanation = "infinite exponents are outside the implemented characterizations";
      break;
    default:
      throw DomainError("regime " + std::string(to_string(tag)) + " has a formula");
  }
  return rep;
}

EstimateReport estimate_main01(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep = start(require_family(prob, {RegimeTag::Main01}, "estimate_main01"));
  Checker chk(rep, opts);
  if (opts.check_hypotheses) chk.classes(prob, cfg);
  Context c(prob, cfg);
  const RealFn H1p = c.head_norm1(c.p1);
  const RealFn T2p = c.tail_norm2(c.p2);
  const BallNorm norm([&](double r) { return divide(T2p(r), H1p(r)); }, prob, cfg, c.bps);
  rep.terms.push_back({"norm", norm.whole()});
  finish(rep);
  return rep;
}

EstimateReport estimate_main02(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep =
      start(require_family(prob, {RegimeTag::Main02_i, RegimeTag::Main02_ii}, "estimate_main02"));
  Checker chk(rep, opts);
  if (opts.check_hypotheses) chk.classes(prob, cfg);
  Context c(prob, cfg);
  const RealFn H1p = c.head_norm1(c.p1);
  const BallNorm ball([&](double r) { return divide(1.0, H1p(r)); }, prob, cfg, c.bps);
  if (rep.regime == RegimeTag::Main02_i) {
    rep.terms.push_back({"sup_ball_tail", c.sup([&](double t) { return mul(ball(t), c.T2(t)); })});
  } else {
    const double r = arrow_value(c.p1, c.th2);
    TailMeasure m(prob.omega2(), c.th2, Exponent(r), Orientation::TailRight, cfg);
    const double s = stieltjes_integrate([&](double t) { return powr(ball(t), r); }, m, cfg);
    rep.terms.push_back({"integral_ball_tail", root(s, r)});
  }
  finish(rep);
  return rep;
}

EstimateReport estimate_main03(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep =
      start(require_family(prob, {RegimeTag::Main03_i, RegimeTag::Main03_ii}, "estimate_main03"));
  Checker chk(rep, opts);
  if (opts.check_hypotheses) chk.classes(prob, cfg);
  Context c(prob, cfg);
  const RealFn T2p = c.tail_norm2(c.p2);
  const BallNorm ball(T2p, prob, cfg, c.bps);
  if (rep.regime == RegimeTag::Main03_i) {
    rep.terms.push_back({"sup_head_ball", c.sup([&](double t) { return divide(ball(t), c.H1(t)); })});
  } else {
    const double s = arrow_value(c.th1, c.p2);
    TailMeasure m(prob.omega1(), c.th1, Exponent(s), Orientation::HeadLeftInverse, cfg);
    const double i = stieltjes_integrate([&](double t) { return powr(ball(t), s); }, m, cfg);
    rep.terms.push_back({"integral_head_ball", root(i, s)});
    rep.terms.push_back({"global", divide(ball.whole(), c.H1inf)});
  }
  finish(rep);
  return rep;
}

EstimateReport estimate_thm1(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep = start(require_family(prob, {RegimeTag::Thm1_i, RegimeTag::Thm1_ii}, "estimate_thm1"));
  Checker chk(rep, opts);
  Context c(prob, cfg);
  const Phi1 phi_eval(prob, cfg);
  const RealFn phi = memoize([&phi_eval](double x) { return phi_eval(x); });
  if (opts.check_hypotheses) {
    chk.classes(prob, cfg);
    chk.add(admissible_report(c.V, cfg));
    QuasiconcavityReport q = check_quasiconcave(phi, quasiconcavity_scale(c), cfg, opts.phi_grid);
    q.name = "phi1 in Q_U, U = V~^{1/(p1->p2)}";
    chk.add(std::move(q));
  }
  if (rep.regime == RegimeTag::Thm1_i) {
    const RealFn S = c.kernel_sup();
    rep.terms.push_back({"sup_phi1_kernel_sup", c.sup([&](double x) { return mul(phi(x), S(x)); })});
  } else {
    const RealFn I = c.kernel_integral();
    rep.terms.push_back({"sup_phi1_kernel_integral", c.sup([&](double x) { return mul(phi(x), I(x)); })});
  }
  finish(rep);
  return rep;
}

EstimateReport estimate_thm3(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep = start(require_family(
      prob, {RegimeTag::Thm3_i, RegimeTag::Thm3_ii, RegimeTag::Thm3_iii, RegimeTag::Thm3_iv}, "estimate_thm3"));
  Checker chk(rep, opts);
  Context c(prob, cfg);
  const Phi2 phi_eval(prob, cfg);
  const RealFn phi = memoize([&phi_eval](double x) { return phi_eval(x); });
  if (opts.check_hypotheses) {
    chk.classes(prob, cfg);
    chk.add(admissible_report(c.V, cfg));
    QuasiconcavityReport q = check_quasiconcave(phi, quasiconcavity_scale(c), cfg, opts.phi_grid);
    q.name = "phi2 in Q_U, U = V~^{1/(p1->p2)}";
    chk.add(std::move(q));
  }
  const double s = arrow_value(c.th1, c.p2);
  const TailMeasure& mu = phi_eval.measure();
  auto integral_form = [&](const RealFn& K) {
    const double a = arrow_value(c.th1, c.th2);
    const double b = arrow_value(c.th2, c.p2);
    const double e = a * s / b;
    auto F = [&](double x) { return mul(mul(powr(phi(x), e), powr(c.V(x), s)), powr(K(x), a)); };
    return root(stieltjes_integrate(F, mu, c.outer), a);
  };
  switch (rep.regime) {
    case RegimeTag::Thm3_i: {
      const RealFn S = c.kernel_sup();
      rep.terms.push_back({"C2", c.sup([&](double x) { return mul(phi(x), S(x)); })});
      rep.terms.push_back({"C1", c.global_sup_term()});
      break;
    }
    case RegimeTag::Thm3_ii:
      rep.terms.push_back({"C2", integral_form(c.kernel_sup())});
      rep.terms.push_back({"C1", c.global_sup_term()});
      break;
    case RegimeTag::Thm3_iii: {
      const RealFn I = c.kernel_integral();
      rep.terms.push_back({"C2", c.sup([&](double x) { return mul(phi(x), I(x)); })});
      rep.terms.push_back({"C1", c.global_integral_term()});
      break;
    }
    default:
      rep.terms.push_back({"C2", integral_form(c.kernel_integral())});
      rep.terms.push_back({"C1", c.global_integral_term()});
      break;
  }
  finish(rep);
  return rep;
}

EstimateReport estimate_thm2(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep = start(require_family(prob, {RegimeTag::Thm2}, "estimate_thm2"));
  Checker chk(rep, opts);
  if (opts.check_hypotheses) {
    chk.classes(prob, cfg);
    chk.continuity(prob);
  }
  Context c(prob, cfg);
  const Weight1D& ratio = prob.v_angular_sup();
  // T2 is non-increasing, so sup_t T2(t) sup_{s<t} F(s) = sup_s F(s) T2(s).
  rep.terms.push_back(
      {"sup_ball_tail", c.sup([&](double t) { return mul(divide(ratio(t), c.H1(t)), c.T2(t)); })});
  finish(rep);
  return rep;
}

EstimateReport estimate_thm4(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  EstimateReport rep = start(require_family(prob, {RegimeTag::Thm4_i, RegimeTag::Thm4_ii}, "estimate_thm4"));
  Checker chk(rep, opts);
  Context c(prob, cfg);
  const double s = arrow_value(c.th1, c.p1);
  if (opts.check_hypotheses) {
    chk.classes(prob, cfg);
    chk.continuity(prob);
    // Together with omega2 in Omega_theta2 this condition cannot hold (Hoelder),
    // so it is reported without refusing.
    ClassReport inv;
    const double b = arrow_value(c.th2, c.p1);
    try {
      inv = check_class(prob.omega2().pow(-1.0), Exponent(b), WeightClass::Omega, cfg);
    } catch (const Error& e) {
      inv.member = Tri::Undetermined;
      inv.notes = e.what();
    }
    inv.name = "0 < ||1/omega2||_{theta2->p,(x,inf)} < inf";
    chk.add(std::move(inv), false);
  }
  const TailMeasure mu(prob.omega1(), c.th1, Exponent(s), Orientation::HeadLeftInverse, cfg);
  const double g_inf = std::isinf(c.H1inf) ? 0.0 : std::pow(c.H1inf, -s);
  auto tail_mass = [&](double x) { return std::max(mu.G(x) - g_inf, 0.0); };

  // A(x) = int_0^x V~^s d(-||omega1||^{-s})
  RealFn A;
  if (!prob.omega1().nonsmooth()) {
    auto cum = std::make_shared<const CumulativeIntegral>(
        [&](double t) { return mul(powr(c.V(t), s), mu.density(t)); }, cfg, c.bps);
    A = memoize([cum](double x) { return cum->head(x); });
  } else {
    A = memoize([&](double x) {
      return stieltjes_integrate([&](double t) { return t < x ? powr(c.V(t), s) : 0.0; }, mu, cfg);
    });
  }

  if (rep.regime == RegimeTag::Thm4_i) {
    auto F = [&](double x) { return mul(root(mul(powr(c.V(x), s), tail_mass(x)) + A(x), s), c.T2(x)); };
    rep.terms.push_back({"sup_term", c.sup(F)});
    rep.terms.push_back({"global", c.global_sup_term()});
  } else {
    const double a = arrow_value(c.th1, c.th2);
    const double b = arrow_value(c.th2, c.p1);
    const RunningSup W([&](double t) { return mul(c.V(t), c.T2(t)); }, cfg, c.bps);
    auto F1 = [&](double x) { return mul(powr(tail_mass(x), a / b), powr(W(x), a)); };
    auto F2 = [&](double x) { return mul(mul(powr(A(x), a / b), powr(c.V(x), s)), powr(c.T2(x), a)); };
    rep.terms.push_back({"tail_mass_term", root(stieltjes_integrate(F1, mu, c.outer), a)});
    rep.terms.push_back({"cumulative_term", root(stieltjes_integrate(F2, mu, c.outer), a)});
    rep.terms.push_back({"global", c.global_sup_term()});
  }
  finish(rep);
  return rep;
}

EstimateReport estimate(const RadialProblem& prob, const QuadratureConfig& cfg, const EstimateOptions& opts) {
  const RegimeTag tag = classify(prob.params());
  switch (tag) {
    case RegimeTag::Main01:
      return estimate_main01(prob, cfg, opts);
    case RegimeTag::Main02_i:
    case RegimeTag::Main02_ii:
      return estimate_main02(prob, cfg, opts);
    case RegimeTag::Main03_i:
    case RegimeTag::Main03_ii:
      return estimate_main03(prob, cfg, opts);
    case RegimeTag::Thm1_i:
    case RegimeTag::Thm1_ii:
      return estimate_thm1(prob, cfg, opts);
    case RegimeTag::Thm3_i:
    case RegimeTag::Thm3_ii:
    case RegimeTag::Thm3_iii:
    case RegimeTag::Thm3_iv:
      return estimate_thm3(prob, cfg, opts);
    case RegimeTag::Thm2:
      return estimate_thm2(prob, cfg, opts);
    case RegimeTag::Thm4_i:
    case RegimeTag::Thm4_ii:
      return estimate_thm4(prob, cfg, opts);
    default:
      return valueless_report(tag);
  }
}

}  // namespace morrey
