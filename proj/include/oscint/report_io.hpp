#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscint/oscillatory.hpp"
#include "oscint/schrodinger.hpp"

namespace oscint {

// Shortest round-trippable decimal for a double (%.17g); NaN and infinities
// spelled out so artifacts stay parseable.
std::string fmt_g17(double v);

// One evaluated integral with its full problem statement. Every artifact row
// carries method provenance and the error estimate alongside the value.
struct IntegrateRow {
    std::string f_descriptor;
    double a = 0.0, b = 0.0;
    int n = 0;
    double alpha = 0.0, y0 = 0.0;
    EvalReport report;
};

// columns: method,f,a,b,n,alpha,y0,re,im,abs_error_estimate,panels,converged
std::string integrate_csv(const std::vector<IntegrateRow>& rows);
// JSON array of {"f","a","b","n","alpha","y0","report":<EvalReport>}
std::string integrate_json(const std::vector<IntegrateRow>& rows);

// One solver evaluation at a grid point. closed_form_delta is filled when the
// datum has an explicit solution to compare against.
struct SolveRow {
    double t = 0.0, x = 0.0;
    PsiReport report;
    double pde_residual = 0.0;
    std::optional<double> closed_form_delta;
};

// columns: t,x,re_psi,im_psi,abs_error_estimate,pde_residual,closed_form_delta
// (last column empty when no closed form applies)
std::string solve_csv(const std::vector<SolveRow>& rows);

}  // namespace oscint
