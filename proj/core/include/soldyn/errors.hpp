#pragma once

#include <stdexcept>
#include <string>

namespace soldyn {

// Failure taxonomy shared across the library. The CLI maps config_invalid to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
  public:
    enum class Kind {
        domain,          // argument outside mathematical domain
        parameter,       // invalid physical or numerical parameter
        resolution,      // grid cannot resolve the requested object
        convergence,     // iterative solver failed to reach tolerance
        admissibility,   // initial datum violates the energy-headroom bound
        blow_up,         // non-finite samples during evolution
        degenerate,      // decomposition has empty soliton support
        alignment,       // time series not sampled on a common grid
        insufficient,    // not enough samples for the requested analysis
        io,              // filesystem failure
        corrupt,         // checkpoint payload failed validation
        unsupported,     // format version not understood
        config_invalid,  // configuration rejected by validation
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace soldyn
