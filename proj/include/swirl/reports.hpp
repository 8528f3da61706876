#pragma once

#include <string>

#include "json.hpp"
#include "swirl/criterion.hpp"
#include "swirl/lemma_harness.hpp"
#include "swirl/level_sets.hpp"
#include "swirl/moser.hpp"
#include "swirl/oscillation.hpp"

namespace swirl {

// JSON / CSV serializers for the report types.  CSV floats are printed with
// 17 significant digits so reports round-trip and rerun diffs are exact.

nlohmann::json to_json(const CriterionReport& r);
std::string to_csv(const CriterionReport& r); // probe_z,probe_t,R,f,M,g,margin,pass

nlohmann::json to_json(const DecayFit& f);
std::string osc_records_csv(const std::vector<OscRecord>& records); // center_z,center_t,r,M_r,m_r,osc

nlohmann::json to_json(const LevelSetReport& r);
nlohmann::json to_json(const GrowthLedger& l);

std::string moser_csv_header();
std::string moser_csv_row(const MoserConstants& m, const std::string& error);

} // namespace swirl
