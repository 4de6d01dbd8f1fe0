#include "oscint/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace oscint {

std::string fmt_g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string integrate_csv(const std::vector<IntegrateRow>& rows) {
    std::ostringstream os;
    os << "method,f,a,b,n,alpha,y0,re,im,abs_error_estimate,panels,converged\n";
    for (const IntegrateRow& r : rows) {
        os << method_name(r.report.method) << ',' << r.f_descriptor << ',' << fmt_g17(r.a) << ','
           << fmt_g17(r.b) << ',' << r.n << ',' << fmt_g17(r.alpha) << ',' << fmt_g17(r.y0) << ','
           << fmt_g17(r.report.value.real()) << ',' << fmt_g17(r.report.value.imag()) << ','
           << fmt_g17(r.report.abs_error_estimate) << ',' << r.report.diagnostics.panels << ','
           << (r.report.converged ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string integrate_json(const std::vector<IntegrateRow>& rows) {
    std::ostringstream os;
    os << "{\"schema\":1,\"rows\":[";
    bool first = true;
    for (const IntegrateRow& r : rows) {
        if (!first) os << ',';
        first = false;
        os << "{\"f\":\"" << r.f_descriptor << "\",\"a\":" << fmt_g17(r.a)
           << ",\"b\":" << fmt_g17(r.b) << ",\"n\":" << r.n << ",\"alpha\":" << fmt_g17(r.alpha)
           << ",\"y0\":" << fmt_g17(r.y0) << ",\"report\":" << r.report.to_json() << '}';
    }
    os << "]}";
    return os.str();
}

std::string solve_csv(const std::vector<SolveRow>& rows) {
    std::ostringstream os;
    os << "t,x,re_psi,im_psi,abs_error_estimate,pde_residual,closed_form_delta\n";
    for (const SolveRow& r : rows) {
        os << fmt_g17(r.t) << ',' << fmt_g17(r.x) << ',' << fmt_g17(r.report.value.real()) << ','
           << fmt_g17(r.report.value.imag()) << ',' << fmt_g17(r.report.abs_error_estimate) << ','
           << fmt_g17(r.pde_residual) << ',';
        if (r.closed_form_delta) os << fmt_g17(*r.closed_form_delta);
        os << '\n';
    }
    return os.str();
}

}  // namespace oscint
