#pragma once

#include "odolab/symbol_maps.hpp"
#include "odolab/verdicts.hpp"
#include "odolab/witness.hpp"

#include <string>
#include <vector>

namespace odolab {

/// l, value, running sup; values in the backend's format
template <class S>
std::string bound_report_tsv(const BoundReport<S>& r);
std::string kakutani_tsv(const KakutaniReport& r);
std::string norm_probes_tsv(const std::vector<NormProbe>& probes);

json verdicts_json(const std::string& system, const std::vector<Verdict>& verdicts);
/// pretty JSON with a trailing newline
std::string json_text(const json& j);

}  // namespace odolab
