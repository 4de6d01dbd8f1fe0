#include "oscint/coefficients.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace oscint {

CoefficientTable::CoefficientTable(int k_max, int l_max) : kmax_(k_max), lmax_(l_max) {
    if (k_max < 0 || l_max < 0)
        throw std::invalid_argument("CoefficientTable: extents must be >= 0");
    if (k_max > kMaxExtent || l_max > kMaxExtent)
        throw std::invalid_argument("CoefficientTable: extent exceeds sizing guard (60)");
    v_.assign(static_cast<size_t>(k_max + 1) * static_cast<size_t>(l_max + 1), 0.0);
    auto ref = [&](int k, int l) -> double& {
        return v_[static_cast<size_t>(k) * static_cast<size_t>(lmax_ + 1) +
                  static_cast<size_t>(l)];
    };
    for (int k = 0; k <= kmax_; ++k) ref(k, 0) = std::pow(-0.5, k + 1);
    for (int l = 0; l < lmax_; ++l) {
        for (int k = 0; k <= kmax_; ++k) {
            double s = 0.0;
            for (int i = 0; i <= k; ++i) {
                double sign = ((i + k) % 2 == 0) ? 1.0 : -1.0;
                s += sign * static_cast<double>(i + 1 + 2 * l) *
                     std::ldexp(ref(i, l), -(k + 1 - i));
            }
            ref(k, l + 1) = s;
        }
    }
    for (double x : v_)
        if (!std::isfinite(x)) throw std::overflow_error("CoefficientTable: entry overflow");
}

double CoefficientTable::at(int k, int l) const {
    if (k < 0 || k > kmax_ || l < 0 || l > lmax_)
        throw std::out_of_range("CoefficientTable: index out of range");
    return v_[static_cast<size_t>(k) * static_cast<size_t>(lmax_ + 1) + static_cast<size_t>(l)];
}

void CoefficientTable::write_csv(std::ostream& os) const {
    os << "k,l,value\n";
    char buf[64];
    for (int k = 0; k <= kmax_; ++k)
        for (int l = 0; l <= lmax_; ++l) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", k, l, at(k, l));
            os << buf;
        }
}

static void track(CoefficientIdentityReport& r, double lhs, double rhs, int k, int l,
                  double rel_tol) {
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    double rel = std::abs(lhs - rhs) / scale;
    if (rel > r.max_rel_residual) {
        r.max_rel_residual = rel;
        r.worst_k = k;
        r.worst_l = l;
    }
    if (rel > rel_tol) r.pass = false;
}

std::vector<CoefficientIdentityReport> check_proof_identities(const CoefficientTable& t,
                                                              double rel_tol) {
    std::vector<CoefficientIdentityReport> out;
    {
        CoefficientIdentityReport r{.id = "column0_halving"};
        for (int k = 1; k <= t.k_max(); ++k)
            track(r, t.at(k, 0), -0.5 * t.at(k - 1, 0), k, 0, rel_tol);
        out.push_back(r);
    }
    {
        CoefficientIdentityReport r{.id = "row0_recursion"};
        for (int m = 0; m < t.l_max(); ++m)
            track(r, t.at(0, m + 1), 0.5 * (1 + 2 * m) * t.at(0, m), 0, m, rel_tol);
        out.push_back(r);
    }
    {
        CoefficientIdentityReport r{.id = "cross_relation"};
        for (int m = 0; m < t.l_max(); ++m)
            for (int K = 0; K + 1 <= t.k_max(); ++K)
                track(r, t.at(K, m + 1) - (K + 2 + 2 * m) * t.at(K + 1, m),
                      -2.0 * t.at(K + 1, m + 1), K, m, rel_tol);
        out.push_back(r);
    }
    return out;
}

namespace {
using boost::multiprecision::cpp_int;

// dyadic rational num / 2^shift
struct Dyadic {
    cpp_int num;
    int shift = 0;

    void normalize() {
        while (shift > 0 && (num & 1) == 0 && num != 0) {
            num >>= 1;
            --shift;
        }
        if (num == 0) shift = 0;
    }
};

Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
    Dyadic r;
    r.shift = std::max(a.shift, b.shift);
    r.num = (a.num << (r.shift - a.shift)) + (b.num << (r.shift - b.shift));
    r.normalize();
    return r;
}
}  // namespace

struct ExactCoefficientTable::Impl {
    int kmax, lmax;
    std::vector<Dyadic> v;
    Dyadic& ref(int k, int l) {
        return v[static_cast<size_t>(k) * static_cast<size_t>(lmax + 1) + static_cast<size_t>(l)];
    }
};

ExactCoefficientTable::ExactCoefficientTable(int k_max, int l_max) : impl_(new Impl) {
    if (k_max < 0 || l_max < 0 || k_max > CoefficientTable::kMaxExtent ||
        l_max > CoefficientTable::kMaxExtent)
        throw std::invalid_argument("ExactCoefficientTable: extent out of range");
    impl_->kmax = k_max;
    impl_->lmax = l_max;
    impl_->v.assign(static_cast<size_t>(k_max + 1) * static_cast<size_t>(l_max + 1), Dyadic{});
    for (int k = 0; k <= k_max; ++k)
        impl_->ref(k, 0) = Dyadic{cpp_int((k % 2 == 0) ? -1 : 1), k + 1};
    for (int l = 0; l < l_max; ++l)
        for (int k = 0; k <= k_max; ++k) {
            Dyadic s;
            for (int i = 0; i <= k; ++i) {
                const Dyadic& c = impl_->ref(i, l);
                Dyadic term{c.num * ((i + k) % 2 == 0 ? 1 : -1) * (i + 1 + 2 * l),
                            c.shift + (k + 1 - i)};
                term.normalize();
                s = dy_add(s, term);
            }
            impl_->ref(k, l + 1) = s;
        }
}

ExactCoefficientTable::~ExactCoefficientTable() { delete impl_; }
ExactCoefficientTable::ExactCoefficientTable(ExactCoefficientTable&& o) noexcept : impl_(o.impl_) {
    o.impl_ = nullptr;
}
ExactCoefficientTable& ExactCoefficientTable::operator=(ExactCoefficientTable&& o) noexcept {
    std::swap(impl_, o.impl_);
    return *this;
}

int ExactCoefficientTable::k_max() const { return impl_->kmax; }
int ExactCoefficientTable::l_max() const { return impl_->lmax; }

double ExactCoefficientTable::at_double(int k, int l) const {
    if (k < 0 || k > impl_->kmax || l < 0 || l > impl_->lmax)
        throw std::out_of_range("ExactCoefficientTable: index out of range");
    const Dyadic& d = impl_->v[static_cast<size_t>(k) * static_cast<size_t>(impl_->lmax + 1) +
                              static_cast<size_t>(l)];
    if (d.num == 0) return 0.0;
    // The numerator can exceed double range even when num/2^shift does not;
    // convert through the top 64 bits.
    cpp_int mag = d.num < 0 ? cpp_int(-d.num) : d.num;
    int bits = static_cast<int>(boost::multiprecision::msb(mag)) + 1;
    int drop = std::max(0, bits - 64);
    double top = (mag >> drop).convert_to<double>();
    double v = std::ldexp(top, drop - d.shift);
    return d.num < 0 ? -v : v;
}

double coefficient_table_deviation(const CoefficientTable& t) {
    ExactCoefficientTable exact(t.k_max(), t.l_max());
    double worst = 0.0;
    for (int k = 0; k <= t.k_max(); ++k)
        for (int l = 0; l <= t.l_max(); ++l) {
            double e = exact.at_double(k, l);
            double f = t.at(k, l);
            double scale = std::max(std::abs(e), 1e-300);
            worst = std::max(worst, std::abs(f - e) / scale);
        }
    return worst;
}

}  // namespace oscint
