// SPDX-License-Identifier: Apache-2.0

#include "qes/family.hpp"

#include <algorithm>
#include <cctype>

#include "qes/errors.hpp"

namespace qes {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string family_name(const ExpansionFamily& f) {
  switch (f.group) {
    case FamilyGroup::PowerRing: return "ring" + std::to_string(f.index);
    case FamilyGroup::HyperBar: return "bar" + std::to_string(f.index);
    case FamilyGroup::HyperBold: return "bold" + std::to_string(f.index);
  }
  return "?";
}

ExpansionFamily parse_family(std::string_view name) {
  const std::string s = lower(name);
  struct Prefix {
    const char* text;
    FamilyGroup group;
  };
  for (const Prefix p : {Prefix{"ring", FamilyGroup::PowerRing}, Prefix{"bar", FamilyGroup::HyperBar},
                         Prefix{"bold", FamilyGroup::HyperBold}}) {
    const std::string_view pre = p.text;
    if (s.size() == pre.size() + 1 && s.compare(0, pre.size(), pre) == 0) {
      const char d = s.back();
      if (d >= '1' && d <= '8') return {p.group, d - '0'};
    }
  }
  throw ArgumentError("unknown family selector '" + std::string(name) + "'");
}

std::string potential_name(PotentialKind kind) { return kind == PotentialKind::V1 ? "v1" : "v2"; }

PotentialKind parse_potential(std::string_view name) {
  const std::string s = lower(name);
  if (s == "v1") return PotentialKind::V1;
  if (s == "v2") return PotentialKind::V2;
  throw ArgumentError("unknown potential '" + std::string(name) + "'");
}

bool is_supported(PotentialKind kind, const ExpansionFamily& f) {
  const int i = f.index;
  if (kind == PotentialKind::V1) {
    const bool idx = i == 1 || i == 2 || i == 5 || i == 6;
    return idx && (f.group == FamilyGroup::PowerRing || f.group == FamilyGroup::HyperBold);
  }
  const bool idx = i == 1 || i == 3 || i == 5 || i == 7;
  return idx && (f.group == FamilyGroup::PowerRing || f.group == FamilyGroup::HyperBar);
}

void require_supported(PotentialKind kind, const ExpansionFamily& f) {
  if (!is_supported(kind, f))
    throw ArgumentError("family " + family_name(f) + " is not available for " + potential_name(kind));
}

bool euler_stored(const ExpansionFamily& f) {
  if (f.group == FamilyGroup::HyperBold) return f.index == 2 || f.index == 6;
  if (f.group == FamilyGroup::HyperBar) return f.index == 3 || f.index == 7;
  return false;
}

std::vector<ExpansionFamily> supported_families(PotentialKind kind) {
  if (kind == PotentialKind::V1)
    return {{FamilyGroup::PowerRing, 1}, {FamilyGroup::PowerRing, 2}, {FamilyGroup::PowerRing, 5},
            {FamilyGroup::PowerRing, 6}, {FamilyGroup::HyperBold, 1}, {FamilyGroup::HyperBold, 2},
            {FamilyGroup::HyperBold, 5}, {FamilyGroup::HyperBold, 6}};
  return {{FamilyGroup::PowerRing, 1}, {FamilyGroup::PowerRing, 3}, {FamilyGroup::PowerRing, 5},
          {FamilyGroup::PowerRing, 7}, {FamilyGroup::HyperBar, 1},  {FamilyGroup::HyperBar, 3},
          {FamilyGroup::HyperBar, 5},  {FamilyGroup::HyperBar, 7}};
}

}  // namespace qes
