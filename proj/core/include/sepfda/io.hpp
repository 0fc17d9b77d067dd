#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sepfda/basis.hpp"
#include "sepfda/matnorm.hpp"
#include "sepfda/simgen.hpp"

namespace sepfda {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Long-format curve CSV with the exact header
/// `sample_id,coordinate,time,value`; coordinates are 1-based and every
/// sample must share the identical (coordinate, time) grid.
DiscreteCurves read_curves_csv(const std::string& path);
void write_curves_csv(const DiscreteCurves& curves, const std::string& path);

/// `sample_id,is_outlier` with 0/1 entries, one row per sample.
void write_labels_csv(const DiscreteCurves& curves, const std::string& path);
std::vector<std::pair<std::string, bool>> read_labels_csv(const std::string& path);

/// Everything the fit subcommand emits; enough to drive the downstream
/// distance, shapley and fpca subcommands.
struct FitDocument {
    SeparableFit fit;
    std::vector<std::string> sample_ids;
    std::vector<bool> flags;
    double cutoff = 0.0;
    Json config_echo;

    // convenience accessors over config_echo
    std::string mode() const;      // "smoothed" or "raw"
    BasisSystem basis() const;     // throws in raw mode
    Interval domain() const;
};

void write_fit_json(const FitDocument& doc, const std::string& path);
FitDocument read_fit_json(const std::string& path);

/// Generating truth emitted by `simulate`, consumed by `evaluate`.
struct TruthDocument {
    Matrix sigma_row;
    KernelSpec kernel;
    std::string mean_name = "bump"; // bump | linear | zero
};

void write_truth_json(const TruthDocument& truth, const std::string& path);
TruthDocument read_truth_json(const std::string& path);

double mean_by_name(const std::string& name, double t);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

} // namespace sepfda
