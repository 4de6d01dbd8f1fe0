#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace oscint {

using cplx = std::complex<double>;

// Coarse growth metadata attached to catalog functions. degree bounds every
// derivative: |f^(k)(y)| <= C * |y|^degree for large |y|; derivative_drop
// marks functions (polynomials) whose k-th derivative loses k powers.
// riemann_decay asserts f^(k)(y) = o(y^{k+1}) for all k, the hypothesis of
// the truncated-limit evaluation route.
struct GrowthInfo {
    double degree = 0.0;
    bool derivative_drop = false;
    bool riemann_decay = false;
    bool known = true;  // false for user-supplied functions; checks go soft

    double deriv_degree(int k) const {
        return derivative_drop ? degree - static_cast<double>(k) : degree;
    }
};

// Truncated Taylor expansion at a base point: coeffs[k] = f^(k)/k!.
// Scaled storage keeps high-order products conditioned; raw derivatives are
// recovered through derivative().
class Jet {
  public:
    Jet() = default;
    explicit Jet(int order);
    Jet(int order, std::initializer_list<cplx> scaled);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    cplx coeff(int k) const;
    void set_coeff(int k, cplx v);
    cplx value() const { return c_.empty() ? cplx{} : c_[0]; }
    cplx derivative(int k) const;  // coeff(k) * k!
    Jet truncated(int order) const;
    bool finite() const;

  private:
    std::vector<cplx> c_;
};

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_scale(cplx lambda, const Jet& a);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_conj(const Jet& a);

// A function bundled with exact derivatives up to a fixed order. eval(y)
// yields the jet of f at y with order == max_order; asking beyond max_order
// is an error. Instances are immutable and safe to share across threads.
class JetFunction {
  public:
    JetFunction() = default;
    JetFunction(int max_order, std::string descriptor, GrowthInfo growth,
                std::function<Jet(double)> eval);

    Jet at(double y) const;
    Jet at(double y, int order) const;  // order <= max_order
    cplx value(double y) const { return at_value_(y); }

    int max_order() const { return max_order_; }
    const std::string& descriptor() const { return desc_; }
    const GrowthInfo& growth() const { return growth_; }
    bool valid() const { return max_order_ >= 0; }

  private:
    int max_order_ = -1;
    std::string desc_;
    GrowthInfo growth_;
    std::function<Jet(double)> eval_;
    std::function<cplx(double)> at_value_;  // fast value-only path
};

// Catalog of analytically differentiated functions. Every entry returns
// closed-form k-th derivatives; no sampling is involved.
namespace jets {

JetFunction zero(int order);
JetFunction constant(cplx c, int order);
JetFunction monomial(int m, int order);
JetFunction polynomial(const std::vector<cplx>& coeffs, int order);
// e^{i kappa y}; complex kappa needs Im(kappa) >= 0 to stay bounded on rays.
JetFunction plane_wave(cplx kappa, int order);
JetFunction gaussian(double eps, int order);  // e^{-eps y^2}, eps >= 0
JetFunction lorentzian(int order);            // 1/(1+y^2)

JetFunction shift(const JetFunction& f, double x);  // y -> f(y + x)
JetFunction reflect(const JetFunction& f);          // y -> f(-y)
JetFunction sum(const JetFunction& f, const JetFunction& g);
JetFunction scale(cplx lambda, const JetFunction& f);
JetFunction product(const JetFunction& f, const JetFunction& g);
JetFunction conjugate(const JetFunction& f);

// Descriptor grammar used by the CLI and configs:
//   zero | lorentz | exp_i:<kappa> | poly:<c0,c1,...> | gauss:<eps>
//   | shift:<x>(<desc>) | scale:<lambda>(<desc>) | sum(<desc>,<desc>)
JetFunction parse(const std::string& descriptor, int order);

}  // namespace jets

double factorial(int m);  // exact up to 20!, via lgamma beyond

}  // namespace oscint
