#pragma once

#include "soldyn/errors.hpp"

namespace soldyn {

/// Power-law nonlinearity family W(s) = -amplitude * s^nu / nu on s >= 0,
/// together with its epsilon-rescaled version
///   W_eps(s)  = eps^-(N+2)   * W (eps^{N/2} s),
///   W_eps'(s) = eps^-(N/2+2) * W'(eps^{N/2} s).
/// The family satisfies W(0) = W'(0) = W''(0) = 0 (nu > 2), the subcritical
/// growth bounds with q = p = nu, and W(s0) < 0 for every s0 > 0.
class NonlinearitySpec {
  public:
    static NonlinearitySpec make(double nu, double epsilon, int dim, double amplitude = 1.0);

    double nu() const { return nu_; }
    double epsilon() const { return epsilon_; }
    int dim() const { return dim_; }
    double amplitude() const { return amplitude_; }

    /// Returns a copy with a different scale epsilon.
    NonlinearitySpec with_epsilon(double epsilon) const {
        return make(nu_, epsilon, dim_, amplitude_);
    }

    double W(double s) const;
    double W_prime(double s) const;
    double W_second(double s) const;

    double W_eps(double s) const;
    double W_eps_prime(double s) const;

    /// W_eps'(s)/s, continuous at s = 0 (limit 0 for nu > 2). This is the
    /// combination the nonlinear phase rotation needs; no division occurs.
    double W_eps_prime_over_s(double s) const;

  private:
    double nu_ = 3.0;
    double epsilon_ = 1.0;
    int dim_ = 1;
    double amplitude_ = 1.0;
};

}  // namespace soldyn
