#pragma once

#include <string>

#include "soldyn/classical.hpp"

namespace soldyn::io {

/// Comma-separated observable series with the fixed header
///   t, q_eps_*, p_eps_*, m_eps, E_total, J_internal, G_dynamical, C_charge,
///   P_total_*, K_eps_*, H_eps_*, F_eps_*, qhat_*, q_classical_*, p_classical_*
/// (one column per active axis). Floats carry 17 significant digits, so a
/// round trip through the file is bit exact.
void write_timeseries(const RunSeries& series, const std::string& path);

/// Parses a file produced by write_timeseries. Metadata that does not live
/// in the CSV (epsilon, eta, support radius) is left at zero.
RunSeries read_timeseries(const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace soldyn::io
