// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qes {

enum class PotentialKind { V1, V2 };

enum class FamilyGroup {
  PowerRing,  // power series in sn^2 u
  HyperBar,   // sn^{2n} u times F~(...; sn^2 u)
  HyperBold,  // cn^{2n} u times F~(...; cn^2 u)
};

struct ExpansionFamily {
  FamilyGroup group;
  int index;  // 1..8

  friend bool operator==(const ExpansionFamily&, const ExpansionFamily&) = default;
};

/// "ring5", "bar7", "bold1", ...
std::string family_name(const ExpansionFamily& f);

/// Inverse of family_name; ArgumentError on anything else.
ExpansionFamily parse_family(std::string_view name);

std::string potential_name(PotentialKind kind);
PotentialKind parse_potential(std::string_view name);

/// V1: ring {1,2,5,6} and bold {1,2,5,6}; V2: ring {1,3,5,7} and bar {1,3,5,7}.
bool is_supported(PotentialKind kind, const ExpansionFamily& f);

/// ArgumentError unless is_supported.
void require_supported(PotentialKind kind, const ExpansionFamily& f);

/// Hypergeometric families whose factor is stored in Euler-transformed form
/// (c - a - b = 1/2) with one power of the vanishing function moved into it:
/// bold2, bold6 (sn) and bar3, bar7 (cn).
bool euler_stored(const ExpansionFamily& f);

/// All supported families for a potential, in selector order.
std::vector<ExpansionFamily> supported_families(PotentialKind kind);

}  // namespace qes
