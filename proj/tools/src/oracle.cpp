#include "udn/cli/oracle.hpp"

#include <cmath>
#include <memory>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include "udn/errors.hpp"

namespace udn::oracle {
namespace {

constexpr std::size_t kWorkspace = 4000;

double trampoline(double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); }

}  // namespace

double integrate_to_infinity(const std::function<double(double)>& f, double a, double rel_tol) {
    gsl_set_error_handler_off();
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(kWorkspace), &gsl_integration_workspace_free);
    gsl_function g{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    double value = 0.0, err = 0.0;
    const int status = gsl_integration_qagiu(&g, a, 0.0, rel_tol, kWorkspace, ws.get(), &value, &err);
    if (status != GSL_SUCCESS)
        throw NumericFailure(std::string("GSL qagiu: ") + gsl_strerror(status));
    return value;
}

double psi(double z, double alpha) {
    if (z == 0.0) return 0.0;
    return 2.0 * integrate_to_infinity([=](double v) { return z * v / (std::pow(v, alpha) + z); }, 1.0);
}

double exp_integral(double nu, double z) {
    return integrate_to_infinity([=](double t) { return std::exp(-z * t) * std::pow(t, -nu); }, 1.0);
}

double tricomi_u(double a, double b, double z) {
    const double integral = integrate_to_infinity(
        [=](double t) {
            if (t == 0.0) return 0.0;
            return std::exp(-z * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t));
        },
        0.0);
    return integral / gsl_sf_gamma(a);
}

}  // namespace udn::oracle
