// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_ERRORS_HPP
#define MAOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace maopt {

// Machine-readable failure categories. Configuration problems map to CLI
// exit code 1, numerical problems to exit code 2.
enum class errc {
    // configuration
    zf_infeasible,          // fewer antennas than users
    overlapping_regions,    // two moving regions intersect
    nonpositive_power,      // a power, gain or noise value is <= 0
    invalid_outage_target,  // delta outside (0,1)
    invalid_field,          // malformed or inconsistent config field
    // numerical
    ill_conditioned,           // Gram matrix condition number above threshold
    nonpositive_variance,      // ratio-moment variance came out <= 0
    degenerate_distribution,   // Gamma fit fed a nonpositive mean/variance
    nonpositive_rate_argument, // rate approximation argument <= 0
    combinatorial_limit,       // antenna-selection search space too large
};

const char* errc_name(errc code);

class config_error : public std::runtime_error {
  public:
    config_error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

class numerical_error : public std::runtime_error {
  public:
    numerical_error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

} // namespace maopt

#endif
