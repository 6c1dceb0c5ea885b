#include "odolab/report.hpp"

#include <sstream>

namespace odolab {

template <class S>
std::string bound_report_tsv(const BoundReport<S>& r) {
    std::ostringstream os;
    os << "l\tvalue\trunning_sup\n";
    for (std::size_t k = 0; k < r.values.size(); ++k)
        os << (k + 1) << '\t' << scalar_string(r.values[k]) << '\t' << scalar_string(r.running_sup[k]) << '\n';
    return os.str();
}

std::string kakutani_tsv(const KakutaniReport& r) {
    std::ostringstream os;
    os << "i\tfactor\tpartial_product\n";
    for (std::size_t k = 0; k < r.factors.size(); ++k)
        os << (k + 1) << '\t' << decimal_string(r.factors[k]) << '\t' << decimal_string(r.partial[k]) << '\n';
    return os.str();
}

std::string norm_probes_tsv(const std::vector<NormProbe>& probes) {
    std::ostringstream os;
    os << "n\tlower_bound\tresolved_bound\tresolved_fraction\n";
    for (const auto& p : probes)
        os << p.n << '\t' << decimal_string(p.lower_bound) << '\t' << decimal_string(p.resolved_bound) << '\t'
           << decimal_string(p.resolved_fraction) << '\n';
    return os.str();
}

json verdicts_json(const std::string& system, const std::vector<Verdict>& verdicts) {
    json a = json::array();
    for (const auto& v : verdicts) a.push_back(v.to_json());
    return json{{"system", system}, {"verdicts", a}};
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

template std::string bound_report_tsv<Rational>(const BoundReport<Rational>&);
template std::string bound_report_tsv<double>(const BoundReport<double>&);

}  // namespace odolab
