#include "casimir/quadrature.hpp"

#include <cmath>
#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace casimir {

namespace {

struct Trampoline {
    const std::function<double(double)>* f;
    std::exception_ptr error;
};

double call(double x, void* params) {
    auto* t = static_cast<Trampoline*>(params);
    if (t->error) return 0.0;
    try {
        return (*t->f)(x);
    } catch (...) {
        t->error = std::current_exception();
        return 0.0;
    }
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

Integral integrateAdaptive(const std::function<double(double)>& f, double lo, double hi,
                           double epsAbs, double epsRel, int maxIntervals) {
    static std::once_flag handlerOff;
    std::call_once(handlerOff, [] { gsl_set_error_handler_off(); });

    Integral out;
    if (lo == hi) return out;

    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(static_cast<size_t>(maxIntervals)));
    Trampoline t{&f, nullptr};
    gsl_function fn{&call, &t};
    // GSL rejects relative tolerances below 50 machine epsilons.
    const double rel = std::max(epsRel, 1.2e-14);
    const double abs = std::max(epsAbs, 1e-300);
    const int status = gsl_integration_qag(&fn, lo, hi, abs, rel, static_cast<size_t>(maxIntervals),
                                           GSL_INTEG_GAUSS31, ws.get(), &out.value, &out.absError);
    if (t.error) std::rethrow_exception(t.error);
    // GSL_EROUND leaves a usable result whose error is limited by rounding.
    out.converged = status == GSL_SUCCESS || status == GSL_EROUND;
    return out;
}

}  // namespace casimir
