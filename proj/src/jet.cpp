#include "oscint/jet.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace oscint {

double factorial(int m) {
    static const double table[] = {
        1.,                    1.,                     2.,
        6.,                    24.,                    120.,
        720.,                  5040.,                  40320.,
        362880.,               3628800.,               39916800.,
        479001600.,            6227020800.,            87178291200.,
        1307674368000.,        20922789888000.,        355687428096000.,
        6402373705728000.,     121645100408832000.,    2432902008176640000.};
    if (m < 0) throw std::invalid_argument("factorial: negative argument");
    if (m <= 20) return table[m];
    return std::exp(std::lgamma(static_cast<double>(m) + 1.0));
}

Jet::Jet(int order) {
    if (order < 0) throw std::invalid_argument("Jet: order must be >= 0");
    c_.assign(static_cast<size_t>(order) + 1, cplx{});
}

Jet::Jet(int order, std::initializer_list<cplx> scaled) : Jet(order) {
    size_t i = 0;
    for (cplx v : scaled) {
        if (i > static_cast<size_t>(order)) break;
        c_[i++] = v;
    }
}

cplx Jet::coeff(int k) const {
    if (k < 0 || k > order())
        throw std::out_of_range("Jet: coefficient index exceeds order");
    return c_[static_cast<size_t>(k)];
}

void Jet::set_coeff(int k, cplx v) {
    if (k < 0 || k > order())
        throw std::out_of_range("Jet: coefficient index exceeds order");
    c_[static_cast<size_t>(k)] = v;
}

cplx Jet::derivative(int k) const { return coeff(k) * factorial(k); }

Jet Jet::truncated(int order) const {
    if (order > this->order())
        throw std::out_of_range("Jet: truncation order exceeds jet order");
    Jet r(order);
    for (int k = 0; k <= order; ++k) r.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return r;
}

bool Jet::finite() const {
    for (const cplx& v : c_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

static void require_same_order(const Jet& a, const Jet& b, const char* op) {
    if (a.order() != b.order())
        throw std::invalid_argument(std::string(op) + ": jet order mismatch");
}

Jet jet_add(const Jet& a, const Jet& b) {
    require_same_order(a, b, "jet_add");
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, a.coeff(k) + b.coeff(k));
    return r;
}

Jet jet_sub(const Jet& a, const Jet& b) {
    require_same_order(a, b, "jet_sub");
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, a.coeff(k) - b.coeff(k));
    return r;
}

Jet jet_scale(cplx lambda, const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, lambda * a.coeff(k));
    return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    require_same_order(a, b, "jet_mul");
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) {
        cplx s{};
        for (int l = 0; l <= k; ++l) s += a.coeff(l) * b.coeff(k - l);
        r.set_coeff(k, s);
    }
    return r;
}

Jet jet_conj(const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, std::conj(a.coeff(k)));
    return r;
}

JetFunction::JetFunction(int max_order, std::string descriptor, GrowthInfo growth,
                         std::function<Jet(double)> eval)
    : max_order_(max_order),
      desc_(std::move(descriptor)),
      growth_(growth),
      eval_(std::move(eval)) {
    if (max_order_ < 0) throw std::invalid_argument("JetFunction: max_order must be >= 0");
    auto ev = eval_;
    at_value_ = [ev](double y) { return ev(y).value(); };
}

Jet JetFunction::at(double y) const {
    if (!valid()) throw std::logic_error("JetFunction: evaluating an empty function");
    Jet j = eval_(y);
    if (!j.finite()) {
        std::ostringstream os;
        os << "JetFunction '" << desc_ << "': non-finite jet at y=" << y;
        throw std::runtime_error(os.str());
    }
    return j;
}

Jet JetFunction::at(double y, int order) const {
    if (order > max_order_)
        throw std::invalid_argument("JetFunction '" + desc_ +
                                    "': requested order exceeds max_order");
    return at(y).truncated(order);
}

namespace jets {

JetFunction zero(int order) {
    GrowthInfo g{.degree = 0.0, .derivative_drop = false, .riemann_decay = true};
    return JetFunction(order, "zero", g, [order](double) { return Jet(order); });
}

JetFunction constant(cplx c, int order) {
    GrowthInfo g{.degree = 0.0, .derivative_drop = false, .riemann_decay = true};
    std::ostringstream os;
    os << "const:" << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    return JetFunction(order, os.str(), g, [c, order](double) {
        Jet j(order);
        j.set_coeff(0, c);
        return j;
    });
}

JetFunction monomial(int m, int order) {
    if (m < 0) throw std::invalid_argument("monomial: exponent must be >= 0");
    GrowthInfo g{.degree = static_cast<double>(m),
                 .derivative_drop = true,
                 .riemann_decay = m == 0};
    std::string d = "poly:" + [&] {
        std::string s;
        for (int j = 0; j < m; ++j) s += "0,";
        s += "1";
        return s;
    }();
    return JetFunction(order, d, g, [m, order](double y) {
        Jet j(order);
        // scaled coefficient of y^m at base y is binom(m,k) y^{m-k}
        double binom = 1.0;
        for (int k = 0; k <= std::min(order, m); ++k) {
            j.set_coeff(k, binom * std::pow(y, m - k));
            binom = binom * (m - k) / (k + 1.0);
        }
        return j;
    });
}

JetFunction polynomial(const std::vector<cplx>& coeffs, int order) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && coeffs[static_cast<size_t>(deg)] == cplx{}) --deg;
    if (deg < 0) return zero(order);
    GrowthInfo g{.degree = static_cast<double>(deg),
                 .derivative_drop = true,
                 .riemann_decay = deg == 0};
    std::ostringstream os;
    os << "poly:";
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << ",";
        os << coeffs[i].real();
        if (coeffs[i].imag() != 0.0) os << (coeffs[i].imag() > 0 ? "+" : "") << coeffs[i].imag() << "i";
    }
    return JetFunction(order, os.str(), g, [coeffs, order](double y) {
        Jet j(order);
        for (size_t p = 0; p < coeffs.size(); ++p) {
            if (coeffs[p] == cplx{}) continue;
            int m = static_cast<int>(p);
            double binom = 1.0;
            for (int k = 0; k <= std::min(order, m); ++k) {
                j.set_coeff(k, j.coeff(k) + coeffs[p] * (binom * std::pow(y, m - k)));
                binom = binom * (m - k) / (k + 1.0);
            }
        }
        return j;
    });
}

JetFunction plane_wave(cplx kappa, int order) {
    if (kappa.imag() < 0.0)
        throw std::invalid_argument("plane_wave: Im(kappa) < 0 grows exponentially on rays");
    GrowthInfo g{.degree = 0.0, .derivative_drop = false, .riemann_decay = true};
    std::ostringstream os;
    os << "exp_i:" << kappa.real();
    if (kappa.imag() != 0.0) os << "+" << kappa.imag() << "i";
    return JetFunction(order, os.str(), g, [kappa, order](double y) {
        Jet j(order);
        const cplx ik = cplx(0, 1) * kappa;
        cplx c = std::exp(ik * y);
        for (int k = 0; k <= order; ++k) {
            j.set_coeff(k, c);
            c *= ik / static_cast<double>(k + 1);
        }
        return j;
    });
}

JetFunction gaussian(double eps, int order) {
    if (eps < 0.0) throw std::invalid_argument("gaussian: eps must be >= 0");
    GrowthInfo g{.degree = 0.0, .derivative_drop = false, .riemann_decay = true};
    std::ostringstream os;
    os << "gauss:" << eps;
    return JetFunction(order, os.str(), g, [eps, order](double y) {
        Jet j(order);
        // scaled recurrence from f' = -2 eps y f:
        //   c_{k+1} = -2 eps (y c_k + c_{k-1}) / (k+1)
        double f = std::exp(-eps * y * y);
        j.set_coeff(0, f);
        if (order >= 1) j.set_coeff(1, -2.0 * eps * y * f);
        for (int k = 1; k < order; ++k)
            j.set_coeff(k + 1, -2.0 * eps * (y * j.coeff(k) + j.coeff(k - 1)) /
                                   static_cast<double>(k + 1));
        return j;
    });
}

JetFunction lorentzian(int order) {
    GrowthInfo g{.degree = 0.0, .derivative_drop = false, .riemann_decay = true};
    return JetFunction(order, "lorentz", g, [order](double y) {
        Jet j(order);
        // partial fractions: 1/(1+y^2) = (1/2i)(1/(y-i) - 1/(y+i));
        // scaled k-th coefficient is (1/2i)(-1)^k ((y-i)^{-k-1} - (y+i)^{-k-1})
        const cplx half_over_i(0.0, -0.5);
        cplx pm = 1.0 / (y - cplx(0, 1));
        cplx pp = 1.0 / (y + cplx(0, 1));
        double sign = 1.0;
        cplx qm = pm, qp = pp;
        for (int k = 0; k <= order; ++k) {
            j.set_coeff(k, half_over_i * sign * (qm - qp));
            sign = -sign;
            qm *= pm;
            qp *= pp;
        }
        return j;
    });
}

JetFunction shift(const JetFunction& f, double x) {
    std::ostringstream os;
    os << "shift:" << x << "(" << f.descriptor() << ")";
    GrowthInfo g = f.growth();
    int order = f.max_order();
    return JetFunction(order, os.str(), g, [f, x](double y) { return f.at(y + x); });
}

JetFunction reflect(const JetFunction& f) {
    GrowthInfo g = f.growth();
    int order = f.max_order();
    return JetFunction(order, "reflect(" + f.descriptor() + ")", g, [f](double y) {
        Jet inner = f.at(-y);
        Jet j(inner.order());
        double sign = 1.0;
        for (int k = 0; k <= inner.order(); ++k) {
            j.set_coeff(k, sign * inner.coeff(k));
            sign = -sign;
        }
        return j;
    });
}

JetFunction sum(const JetFunction& f, const JetFunction& g) {
    int order = std::min(f.max_order(), g.max_order());
    GrowthInfo gr{.degree = std::max(f.growth().degree, g.growth().degree),
                  .derivative_drop = f.growth().derivative_drop && g.growth().derivative_drop,
                  .riemann_decay = f.growth().riemann_decay && g.growth().riemann_decay,
                  .known = f.growth().known && g.growth().known};
    return JetFunction(order, "sum(" + f.descriptor() + "," + g.descriptor() + ")", gr,
                       [f, g, order](double y) {
                           return jet_add(f.at(y, order), g.at(y, order));
                       });
}

JetFunction scale(cplx lambda, const JetFunction& f) {
    std::ostringstream os;
    os << "scale:" << lambda.real();
    if (lambda.imag() != 0.0) os << (lambda.imag() > 0 ? "+" : "") << lambda.imag() << "i";
    os << "(" << f.descriptor() << ")";
    GrowthInfo g = f.growth();
    int order = f.max_order();
    return JetFunction(order, os.str(), g,
                       [f, lambda](double y) { return jet_scale(lambda, f.at(y)); });
}

JetFunction product(const JetFunction& f, const JetFunction& g) {
    int order = std::min(f.max_order(), g.max_order());
    GrowthInfo gr{.degree = f.growth().degree + g.growth().degree,
                  .derivative_drop = f.growth().derivative_drop && g.growth().derivative_drop,
                  .riemann_decay = f.growth().riemann_decay && g.growth().riemann_decay &&
                                   f.growth().degree + g.growth().degree < 1.0,
                  .known = f.growth().known && g.growth().known};
    return JetFunction(order, "product(" + f.descriptor() + "," + g.descriptor() + ")", gr,
                       [f, g, order](double y) {
                           return jet_mul(f.at(y, order), g.at(y, order));
                       });
}

JetFunction conjugate(const JetFunction& f) {
    GrowthInfo g = f.growth();
    int order = f.max_order();
    return JetFunction(order, "conj(" + f.descriptor() + ")", g,
                       [f](double y) { return jet_conj(f.at(y)); });
}

namespace {

struct DescriptorParser {
    const std::string& s;
    size_t pos = 0;

    explicit DescriptorParser(const std::string& str) : s(str) {}

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "descriptor parse error at position " << pos << ": " << what << " in '" << s << "'";
        throw std::invalid_argument(os.str());
    }

    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a function name");
        return s.substr(start, pos - start);
    }

    double number() {
        const char* begin = s.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos += static_cast<size_t>(end - begin);
        return v;
    }

    std::vector<cplx> number_list() {
        std::vector<cplx> out;
        out.emplace_back(number());
        // a comma continues the list only when a number follows; otherwise it
        // belongs to the enclosing combinator (sum's separator)
        while (true) {
            size_t save = pos;
            if (!eat(',')) break;
            const char* begin = s.c_str() + pos;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) {
                pos = save;
                break;
            }
            pos += static_cast<size_t>(end - begin);
            out.emplace_back(v);
        }
        return out;
    }

    JetFunction function(int order) {
        std::string name = ident();
        if (name == "zero") return zero(order);
        if (name == "lorentz") return lorentzian(order);
        if (name == "exp_i") {
            expect(':');
            return plane_wave(number(), order);
        }
        if (name == "gauss") {
            expect(':');
            return gaussian(number(), order);
        }
        if (name == "poly") {
            expect(':');
            return polynomial(number_list(), order);
        }
        if (name == "shift") {
            expect(':');
            double x = number();
            expect('(');
            JetFunction inner = function(order);
            expect(')');
            return shift(inner, x);
        }
        if (name == "scale") {
            expect(':');
            double lambda = number();
            expect('(');
            JetFunction inner = function(order);
            expect(')');
            return scale(lambda, inner);
        }
        if (name == "sum") {
            expect('(');
            JetFunction a = function(order);
            expect(',');
            JetFunction b = function(order);
            expect(')');
            return sum(a, b);
        }
        fail("unknown catalog key '" + name + "'");
    }
};

}  // namespace

JetFunction parse(const std::string& descriptor, int order) {
    DescriptorParser p(descriptor);
    JetFunction f = p.function(order);
    if (p.pos != descriptor.size()) p.fail("trailing characters");
    return f;
}

}  // namespace jets

}  // namespace oscint
