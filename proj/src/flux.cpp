#include "crowdsim/flux.hpp"

#include <sstream>

#include "crowdsim/error.hpp"

namespace crowdsim::flux {

double fd_checked(double rho, double tau, const SimParams& p) {
  if (rho < 0.0 || rho > tau) {
    std::ostringstream os;
    os << "density " << rho << " outside [0, tau = " << tau << "]";
    throw NumericalFault(os.str());
  }
  return fd(rho, tau, p);
}

}  // namespace crowdsim::flux
