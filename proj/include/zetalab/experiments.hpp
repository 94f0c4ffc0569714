#ifndef ZETALAB_EXPERIMENTS_HPP
#define ZETALAB_EXPERIMENTS_HPP

#include <algorithm>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetalab/types.hpp"

namespace zetalab::cli {

enum class Format { csv, json, table };

struct ExperimentConfig {
    double sigma = 0.5;
    std::vector<double> t_grid{};
    DeltaWindow deltas{};
    std::map<std::string, double> tolerances{};
    int threads = 0;
    std::string out_path{}; // empty: stdout
    Format format = Format::table;
    std::uint64_t seed = 12345;

    double tol(const std::string& name, double fallback) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }

    void validate() const {
        if (tolerances.end() !=
            std::find_if(tolerances.begin(), tolerances.end(),
                         [](const auto& kv) { return !(kv.second > 0.0); }))
            throw std::domain_error("config: tolerances must be positive");
    }
};

/// One command's outcome: frozen-schema rows plus a summary block.
/// Exit codes: 0 success, 2 tolerance failure, 3 numerical non-convergence,
/// 4 config error.
struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<nlohmann::json> rows;
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json config = nlohmann::json::object();
    int exit_code = 0;
};

void write_report(const Report& rep, Format format, std::ostream& os);
void emit_report(const Report& rep, const ExperimentConfig& cfg);

Report run_verify_ie(const ExperimentConfig& cfg);
Report run_appendix_a(const ExperimentConfig& cfg);
Report run_appendix_b(const ExperimentConfig& cfg);
Report run_identities(const ExperimentConfig& cfg);
Report run_atkinson(const ExperimentConfig& cfg);
Report run_j3(const ExperimentConfig& cfg);
Report run_j4(const ExperimentConfig& cfg);
Report run_section7(const ExperimentConfig& cfg);
Report run_sums(const ExperimentConfig& cfg);

} // namespace zetalab::cli

#endif
