// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qes/heun.hpp"

namespace qes::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kDomainError = 2;
inline constexpr int kIndexError = 3;

/// Runs the command line `args` (without the program name). Documents go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Terminating family to use when none is given: power series before
/// hypergeometric ones, even before odd; ring5 when nothing terminates.
ExpansionFamily default_family(const PotentialSpec& spec);

}  // namespace qes::cli
