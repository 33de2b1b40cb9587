#ifndef DXM_ENDOCHECK_HPP
#define DXM_ENDOCHECK_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dxm/discdyn.hpp"
#include "dxm/domain.hpp"
#include "dxm/rational_map.hpp"
#include "dxm/weights.hpp"
#include "dxm/witness.hpp"

namespace dxm {

using Json = nlohmann::json;

enum class VerdictResult { Endomorphism, NotEndomorphism, Unknown };

std::string to_string(VerdictResult r);

// Outcome of a test rule. Decisive results carry the inequalities that fired
// (with margins) in `certificate`; abstentions carry the reason in `notes`.
struct Verdict {
  VerdictResult result = VerdictResult::Unknown;
  std::string rule;
  Json certificate = Json::object();
  int truncation = 0;
  std::vector<std::string> notes;

  bool decisive() const { return result != VerdictResult::Unknown; }
};

struct NormReport {
  int truncation = 0;
  std::vector<double> terms;         // ||g^{(n)}|| / M_n
  std::vector<double> partial_sums;  // non-decreasing
  double tail_ratio = 0.0;           // last-term ratio heuristic
  double total() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

struct EndoOptions {
  int truncation = 40;   // norm truncation
  int k_max = 24;        // derivative orders for the sup traces
  int n_max = 16;        // iterate depth
};

// Sampled sup norms ||phi^{(k)}||_infty for k = 0..k_max (index = order).
std::vector<double> derivative_sup_norms(const RationalMap& phi,
                                         const DomainSpec& X, int k_max);

// Contraction criterion: finds eps on a geometric grid making
//   q = sum_{k>=1} ||phi^{(k)}|| eps^{k-1} / k!   (plus a geometric tail
// bound) fall below 1. Abstains when ||phi'|| >= 1.
Verdict q_criterion(const RationalMap& phi, const DomainSpec& X,
                    const WeightSequence& w, int k_max = 24);

// ||phi'|| <= 1 suffices when the weight passes the ratio-growth condition
// with a finite constant and the derivative trace stays bounded.
Verdict thm1b_criterion(const RationalMap& phi, const DomainSpec& X,
                        const WeightSequence& w, int k_max = 24);

// Expanding-set decomposition: passes when the near-expanding set maps
// safely into the interior.
Verdict thm2_criterion(const RationalMap& phi, const DomainSpec& X,
                       const WeightSequence& w);

// Refutation by a boundary witness: a point b with |phi'(b)| > 1 whose image
// admits an external circular tangent.
Verdict thm4_refutation(const RationalMap& phi, const DomainSpec& X,
                        const WeightSequence& w);

// Inner maps of the disc never induce endomorphisms unless constant or a
// rotation (rotations act isometrically for every weight).
Verdict thm6_inner_rule(const RationalMap& phi, const DomainSpec& X,
                        const WeightSequence& w);

struct IterateRulesResult {
  Verdict phi_verdict;              // what the iterate patterns say about phi
  std::optional<int> n1;            // first iterate certified as endomorphism
  std::string n1_route;             // "sup_phi_n" or "sup_phi_n_prime"
  double n1_value = 0.0;            // the certifying sup
  bool unresolved_pattern = false;  // single parabolic boundary fixed point
                                    // with ||phi'|| > 1
  Json evidence = Json::object();
};

// Fixed-point / iterate patterns on the disc: refutations from coexisting
// interior and boundary fixed points or multiple boundary fixed points, and
// the search for the first iterate that is itself certified.
IterateRulesResult iterate_rules(const RationalMap& phi, const DomainSpec& X,
                                 const WeightSequence& w, int n_max = 16);

// Truncated algebra norm of F o phi: per-order sampled sups of the composed
// jets, divided by the weights, accumulated.
NormReport composed_norm(const JetFunction& F, const RationalMap& phi,
                         const DomainSpec& X, const WeightSequence& w, int N);

// Closed-law truncated norm of the boundary witness family:
// sum_m m! R^m / M_m.
NormReport witness_norm_closed(const WeightSequence& w, double R, int N);

struct WitnessGrowthRow {
  double R = 0.0;
  double norm_f = 0.0;
  double norm_f_phi = 0.0;
  double ratio = 0.0;
  double tail_ratio_f = 0.0;
  double tail_ratio_f_phi = 0.0;
};

struct WitnessGrowthTable {
  Cx b{};
  Cx phi_b{};
  double abs_phi_prime_b = 0.0;
  double theta = 0.0;
  std::vector<WitnessGrowthRow> rows;
  bool under_truncated = false;       // some tail ratio above 0.5
  bool growth_demonstrated = false;   // ratios strictly increase with R
};

// Norm-growth experiment for the boundary witness family at b. Requires an
// external tangent at phi(b) and |phi'(b)| > 1 (refuses to run otherwise).
WitnessGrowthTable witness_growth_experiment(const RationalMap& phi,
                                             const DomainSpec& X,
                                             const WeightSequence& w, Cx b,
                                             const std::vector<double>& r_list,
                                             int truncation = 40);

// Rule orchestration: inner rule, boundary-witness refutation, contraction,
// derivative-bound, decomposition, then iterate patterns; the first decisive
// rule wins. All abstentions produce Unknown with the evidence bundle (and
// the unresolved-pattern label when it applies).
Verdict full_verdict(const RationalMap& phi, const DomainSpec& X,
                     const WeightSequence& w, const EndoOptions& opts = {});

}  // namespace dxm

#endif  // DXM_ENDOCHECK_HPP
