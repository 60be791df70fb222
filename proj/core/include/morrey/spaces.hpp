#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "morrey/exponent.hpp"
#include "morrey/numerics.hpp"
#include "morrey/weight.hpp"

namespace morrey {

/// (p1, p2, theta1, theta2) together with the dimension n.
struct ParamQuadruple {
  Exponent p1;
  Exponent p2;
  Exponent th1;
  Exponent th2;
  int n = 1;

  /// Throws DomainError unless all four exponents are finite and n >= 1.
  void validate() const;
  /// p1 -> p2, the exponent of the weight-ratio norm over balls.
  Exponent ball_exponent() const { return arrow(p1, p2); }
};

/// Surface measure of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Embedding problem with radial data reduced to one dimension.
///
/// The weights v1, v2 on R^n enter only through two reductions:
///   v_angular_integral(r) = int_{S^{n-1}} (v2/v1)(r x')^{p1 p2/(p1-p2)} r^{n-1} dsigma  (p2 < p1)
///   v_angular_sup(r)      = sup_{|y|=r} (v2/v1)(y)
/// For radial v1, v2 both are closed-form in the profiles.
class RadialProblem {
 public:
  static RadialProblem radial(ParamQuadruple params, Weight1D omega1, Weight1D omega2, Weight1D v1,
                              Weight1D v2);

  /// User-supplied angular reductions for non-radial v1, v2. The radial
  /// profiles are still required by the test-function oracle.
  static RadialProblem with_reductions(ParamQuadruple params, Weight1D omega1, Weight1D omega2,
                                       Weight1D v1, Weight1D v2, std::optional<Weight1D> v_angular_integral,
                                       Weight1D v_angular_sup);

  const ParamQuadruple& params() const { return params_; }
  int dimension() const { return params_.n; }
  const Weight1D& omega1() const { return omega1_; }
  const Weight1D& omega2() const { return omega2_; }
  const Weight1D& v1() const { return v1_; }
  const Weight1D& v2() const { return v2_; }
  /// Present iff p2 < p1.
  const std::optional<Weight1D>& v_angular_integral() const { return v_angular_integral_; }
  const Weight1D& v_angular_sup() const { return v_angular_sup_; }

  RadialProblem with_params(ParamQuadruple params) const;
  RadialProblem with_omega1(Weight1D w) const;
  RadialProblem with_omega2(Weight1D w) const;
  RadialProblem with_v1(Weight1D w) const;
  RadialProblem with_v2(Weight1D w) const;

 private:
  RadialProblem() = default;
  void rebuild_reductions();

  ParamQuadruple params_;
  Weight1D omega1_;
  Weight1D omega2_;
  Weight1D v1_;
  Weight1D v2_;
  bool user_reductions_ = false;
  std::optional<Weight1D> v_angular_integral_;
  Weight1D v_angular_sup_;
};

/// Non-negative step function of |x| on annuli r_0 < r_1 < ... < r_k;
/// levels[i] is the value on (r_i, r_{i+1}); zero outside (r_0, r_k).
struct RadialTestFunction {
  std::vector<double> breakpoints;
  std::vector<double> levels;

  void validate() const;
  double operator()(double r) const;
  RadialTestFunction scaled(double lambda) const;
  bool is_zero() const;
};

/// t -> || g(|.|) ||_{q, v2/v1, B(0,t)} with q = p1 -> p2.
///
/// For finite q this is (int_0^t g^q v_angular_integral)^{1/q}; for q = inf
/// (p1 = p2) it is the running supremum of g * v_angular_sup.
class BallNorm {
 public:
  BallNorm(const RealFn& g, const RadialProblem& prob, const QuadratureConfig& cfg,
           std::vector<double> breakpoints = {});

  double operator()(double t) const;
  /// Norm over the whole space.
  double whole() const;
  Exponent exponent() const { return q_; }

 private:
  Exponent q_;
  std::shared_ptr<const CumulativeIntegral> cumulative_;
  std::shared_ptr<const RunningSup> running_sup_;
};

/// V~(x) = ||v2/v1||_{p1->p2, B(0,x)}.
class VTilde {
 public:
  VTilde(const RadialProblem& prob, const QuadratureConfig& cfg);
  double operator()(double x) const { return norm_(x); }
  double at_infinity() const { return norm_.whole(); }

 private:
  BallNorm norm_;
};

double v_tilde(double x, const RadialProblem& prob, const QuadratureConfig& cfg);

/// V~(t) / (V~(t) + V~(x)). Throws DegenerateWeight when both vanish.
double v_script(double t, double x, const RadialProblem& prob, const QuadratureConfig& cfg);

/// Kernel ratio a / (a + b) on precomputed values, with 0/0 = 0.
double kernel_ratio(double a, double b);

enum class MorreyKind { LM, cLM };

/// Local Morrey-type norm (LM: inner norms over balls B(0,t)) or its
/// complementary variant (cLM: inner norms over |x| > t) of radial step
/// functions, for finite p and theta.
///
/// Inner norms are finite sums of annulus masses; the outer integral over each
/// annulus is composite Gauss-Legendre in log t, and the parts outside
/// (r_0, r_k) reduce to head/tail integrals of omega^theta.
class MorreyNorm {
 public:
  MorreyNorm(MorreyKind kind, Exponent p, Exponent theta, Weight1D omega, Weight1D v, int n,
             const QuadratureConfig& cfg);

  double operator()(const RadialTestFunction& f) const;

  MorreyKind kind() const { return kind_; }

 private:
  struct Panel {
    double a;
    double b;
  };
  std::vector<Panel> panels(double a, double b, bool grade_lo, bool grade_hi) const;

  MorreyKind kind_;
  double p_;
  double theta_;
  Weight1D omega_;
  Weight1D v_;
  int n_;
  double sigma_;
  std::vector<double> breakpoints_;
  std::shared_ptr<const CumulativeIntegral> omega_mass_;
};

double lm_norm(const RadialTestFunction& f, Exponent p, Exponent theta, const Weight1D& omega,
               const Weight1D& v, int n, const QuadratureConfig& cfg);
double clm_norm(const RadialTestFunction& f, Exponent p, Exponent theta, const Weight1D& omega,
                const Weight1D& v, int n, const QuadratureConfig& cfg);

/// w(r) = v(r) ||omega||_{p,(r,inf)} (LM) or v(r) ||omega||_{p,(0,r)} (cLM):
/// the weight with LM_{pp,omega}(v) = L_p(w).
Weight1D lmpp_weight(Exponent p, const Weight1D& omega, const Weight1D& v, MorreyKind kind,
                     const QuadratureConfig& cfg);

/// ||f||_{p, w, R^n} for a radial step function f (polar reduction).
double radial_lp_norm(const RadialTestFunction& f, Exponent p, const Weight1D& w, int n,
                      const QuadratureConfig& cfg);

}  // namespace morrey
