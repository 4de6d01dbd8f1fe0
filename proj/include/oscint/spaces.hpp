#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscint/jet.hpp"

namespace oscint {

// Sampling plan for sup-norm estimation: log-spaced points y_j = y_0 (1+delta)^j
// up to a cutoff chosen from the function's growth metadata. extra points are
// merged in, so refining a grid never loses samples (and never decreases sups).
struct GridSpec {
    double delta = 1e-2;
    double cutoff = 0.0;  // 0 = automatic
    std::vector<double> extra;
};

// Estimate of || f ||_{C^n_alpha([b,inf))}: exact boundary sum plus a sampled
// sup of |f^(n)(y)| / y^alpha. Sampled sups are lower estimates of the true
// sup; `certified` records that the growth metadata rules out a dominating
// tail beyond the cutoff, `plateau` that the running sup visibly settled.
struct CnAlphaWitness {
    double b = 0.0;
    int n = 0;
    double alpha = 0.0;
    double norm_estimate = 0.0;
    double boundary_part = 0.0;
    double sup_part = 0.0;
    double cutoff = 0.0;
    std::size_t samples = 0;
    bool plateau = false;
    bool certified = false;
};

// Estimate of || f ||_{C^n(R, r^alpha)} with r(y) = 1 + |y|: the max over
// k <= n of sampled sups of |f^(k)(y)| / r(y)^alpha on a window [-Y, Y].
struct CnRWitness {
    int n = 0;
    double alpha = 0.0;
    double norm_estimate = 0.0;
    double window = 0.0;
    std::size_t samples = 0;
    bool plateau = false;
    bool certified = false;
};

CnAlphaWitness norm_cn_alpha(const JetFunction& f, double b, int n, double alpha,
                             const GridSpec& grid = {});
CnRWitness norm_cn_r(const JetFunction& f, int n, double alpha, const GridSpec& grid = {});

// Pointwise derivative bound |f^(k)(y)| <= norm * y^{n-k+alpha} for y >= b,
// k <= n. margin is the worst relative slack over all samples; negative
// beyond 1e-9 fails the check.
struct BoundCheckReport {
    bool pass = true;
    double worst_margin = 1.0;
    double worst_y = 0.0;
    int worst_k = -1;
};

BoundCheckReport check_derivative_bound(const JetFunction& f, const CnAlphaWitness& witness,
                                        const GridSpec& grid = {});

// One verified norm inequality: pass iff lhs <= rhs within relative slack
// 1e-9; margin = (rhs - lhs) / max(rhs, tiny).
struct InequalityReport {
    std::string inequality_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;

    std::string json_row() const;  // {"inequality_id":..,"lhs":..,"rhs":..,"margin":..,"pass":..}
};

// ||f|_[c,inf)||_{C^n_a(c)} <= (n+1) ||f||_{C^n_a(b)},  c >= b
InequalityReport check_restriction(const JetFunction& f, double b, double c, int n, double alpha,
                                   const GridSpec& grid = {});
// ||f^(m)||_{C^{n-m}_a(b)} <= ||f||_{C^n_a(b)},  m <= n
InequalityReport check_derivative_norm(const JetFunction& f, double b, int n, int m, double alpha,
                                       const GridSpec& grid = {});
// ||f||_{C^m_beta(b)} <= (m+1) b^{-(beta-alpha-n+m)} ||f||_{C^n_a(b)},
// m <= n, beta >= alpha + n - m
InequalityReport check_exponent_embedding(const JetFunction& f, double b, int n, int m,
                                          double alpha, double beta, const GridSpec& grid = {});
// ||y^p f||_{C^n_{a+p}(b)} <= (p+n+1)^n ||f||_{C^n_a(b)},  integer p >= 0
InequalityReport check_monomial_mult(const JetFunction& f, double b, int n, double alpha, int p,
                                     const GridSpec& grid = {});
// ||f g||_{C^n(R,r^{a+beta})} <= 2^n ||f||_{C^n(R,r^a)} ||g||_{C^n(R,r^beta)}
InequalityReport check_product(const JetFunction& f, const JetFunction& g, int n, double alpha,
                               double beta, const GridSpec& grid = {});
// ||y^m f||_{C^n(R,r^{a+m})} <= (1+m)^n ||f||_{C^n(R,r^a)},  integer m >= 0
InequalityReport check_monomial_mult_r(const JetFunction& f, int n, double alpha, int m,
                                       const GridSpec& grid = {});
// ||e^{i kappa y} f||_{C^n(R,r^a)} <= (1+|kappa|)^n ||f||_{C^n(R,r^a)}
InequalityReport check_plane_wave_mult(const JetFunction& f, int n, double alpha, double kappa,
                                       const GridSpec& grid = {});
// ||f(.+x)||_{C^n(R,r^a)} <= (1+|x|)^a ||f||_{C^n(R,r^a)}
InequalityReport check_shift_invariance(const JetFunction& f, int n, double alpha, double x,
                                        const GridSpec& grid = {});
// ||f|_[b,inf)||_{C^n_a(b)} <= (1+1/b)^{n+a} ||f||_{C^n(R,r^a)}
InequalityReport check_embedding(const JetFunction& f, double b, int n, double alpha,
                                 const GridSpec& grid = {});

// Seeded battery: random catalog functions and parameters pushed through all
// checkers above. Deterministic for a fixed seed.
std::vector<InequalityReport> check_space_inequalities(std::uint64_t seed, int trials);

}  // namespace oscint
