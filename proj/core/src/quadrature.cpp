#include "udn/quadrature.hpp"

#include <string>

#include "udn/errors.hpp"

namespace udn::quad {

double require(const Result& r, std::string_view what) {
    if (!r.converged || !std::isfinite(r.value)) {
        throw NumericFailure(std::string(what) + ": quadrature did not converge (value " +
                             std::to_string(r.value) + ", error estimate " + std::to_string(r.error) + ")");
    }
    return r.value;
}

}  // namespace udn::quad
