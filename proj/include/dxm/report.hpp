#ifndef DXM_REPORT_HPP
#define DXM_REPORT_HPP

#include <string>

#include "json.hpp"

#include "dxm/discdyn.hpp"
#include "dxm/domain.hpp"
#include "dxm/endocheck.hpp"
#include "dxm/weightforge.hpp"
#include "dxm/weights.hpp"

namespace dxm {

inline constexpr const char* kSchemaVersion = "1.0";

Json weight_report_json(const WeightReport& rep);
Json verdict_json(const Verdict& v);
Json classification_json(const Classification& cls);
Json supnorm_json(const SupResult& s, const std::string& map_text,
                  const DomainSpec& X);
Json constructed_weights_json(const ConstructedWeights& cw);
Json witness_table_json(const WitnessGrowthTable& t);
std::string witness_table_csv(const WitnessGrowthTable& t);

void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

// Reads a {name, log_m, ...} weight file (as written by the forge commands)
// back into a table-backed weight sequence.
WeightSequence load_weight_file(const std::string& path);

// Parses the CLI weight selector: n!^a (any a >= 1), n!log^n, n!n^n2.
WeightSequence weight_from_selector(const std::string& selector);

}  // namespace dxm

#endif  // DXM_REPORT_HPP
