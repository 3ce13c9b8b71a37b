#include "soldyn/nonlinearity.hpp"

#include <cmath>
#include <string>

namespace soldyn {

NonlinearitySpec NonlinearitySpec::make(double nu, double epsilon, int dim, double amplitude) {
    if (dim < 1 || dim > 3) fail(Error::Kind::parameter, "nonlinearity: dim must be 1, 2 or 3");
    double critical = 2.0 + 4.0 / dim;
    if (!(nu > 2.0 && nu < critical))
        fail(Error::Kind::parameter,
             "nonlinearity exponent nu = " + std::to_string(nu) +
                 " violates the mass-subcritical bound 2 < nu < 2 + 4/N = " +
                 std::to_string(critical));
    if (!(epsilon > 0.0)) fail(Error::Kind::parameter, "nonlinearity scale epsilon must be positive");
    if (!(amplitude > 0.0))
        fail(Error::Kind::parameter, "nonlinearity amplitude must be positive (W3 needs W(s0) < 0)");
    NonlinearitySpec spec;
    spec.nu_ = nu;
    spec.epsilon_ = epsilon;
    spec.dim_ = dim;
    spec.amplitude_ = amplitude;
    return spec;
}

namespace {
void require_nonnegative(double s) {
    if (s < 0.0) fail(Error::Kind::domain, "W is defined on s >= 0, got s = " + std::to_string(s));
}
}  // namespace

double NonlinearitySpec::W(double s) const {
    require_nonnegative(s);
    return -amplitude_ * std::pow(s, nu_) / nu_;
}

double NonlinearitySpec::W_prime(double s) const {
    require_nonnegative(s);
    return -amplitude_ * std::pow(s, nu_ - 1.0);
}

double NonlinearitySpec::W_second(double s) const {
    require_nonnegative(s);
    return -amplitude_ * (nu_ - 1.0) * std::pow(s, nu_ - 2.0);
}

double NonlinearitySpec::W_eps(double s) const {
    double eN = std::pow(epsilon_, 0.5 * dim_);
    return std::pow(epsilon_, -(dim_ + 2.0)) * W(eN * s);
}

double NonlinearitySpec::W_eps_prime(double s) const {
    double eN = std::pow(epsilon_, 0.5 * dim_);
    return std::pow(epsilon_, -(0.5 * dim_ + 2.0)) * W_prime(eN * s);
}

double NonlinearitySpec::W_eps_prime_over_s(double s) const {
    require_nonnegative(s);
    // eps^-(N/2+2) W'(eps^{N/2} s)/s = -amp eps^-2 (eps^{N/2} s)^{nu-2}
    double eN = std::pow(epsilon_, 0.5 * dim_);
    return -amplitude_ * std::pow(epsilon_, -2.0) * std::pow(eN * s, nu_ - 2.0);
}

}  // namespace soldyn
