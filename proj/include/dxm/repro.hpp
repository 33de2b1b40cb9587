#ifndef DXM_REPRO_HPP
#define DXM_REPRO_HPP

#include <optional>
#include <string>
#include <vector>

#include "dxm/endocheck.hpp"

namespace dxm {

// The worked-example corpus: each entry pins a map, the expected verdict,
// and the extras the verdict engine must reproduce.
struct ReproFixture {
  std::string name;
  RationalMap map;
  VerdictResult expected;
  std::string rule_hint;             // expected rule prefix ("" = any)
  std::optional<int> expected_n1;    // first certified iterate, when pinned
  bool expect_unresolved_label = false;
  bool expect_thm3_construction = false;
};

std::vector<ReproFixture> repro_fixtures(const DomainSpec& X = DomainSpec::disc());

struct ReproRow {
  std::string name;
  std::string expected;
  std::string got;
  std::string rule;
  std::optional<int> n1;
  bool pass = false;
  std::string detail;
};

struct ReproOutcome {
  std::vector<ReproRow> rows;
  bool all_pass = true;
};

ReproOutcome run_repro(const std::optional<std::string>& only = std::nullopt);

// Shared fixture helpers (exact integer / Gaussian-integer coefficients).
RationalMap fixture_half_z(const DomainSpec& X);           // z/2
RationalMap fixture_rotation(const DomainSpec& X);         // e^{i pi/3} z
RationalMap fixture_mobius_half(const DomainSpec& X);      // (2z-1)/(2-z)
RationalMap fixture_z_squared(const DomainSpec& X);        // z^2
RationalMap fixture_cubic(const DomainSpec& X);            // (1-z^3)/2
RationalMap fixture_mobius_involution(const DomainSpec& X);  // (2z-1)/(z-2)
RationalMap fixture_unresolved(const DomainSpec& X);       // (z^2+2iz-1)/(2z+2i-2)
RationalMap fixture_parabolic(const DomainSpec& X);        // (1+z)^2/4

}  // namespace dxm

#endif  // DXM_REPRO_HPP
