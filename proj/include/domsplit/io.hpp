#pragma once

// File formats: shift and cocycle documents (JSON or TOML), JSON reports and
// plot-ready CSV series. Floats in CSV use 17 significant digits and '.'.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "domsplit/bounds.hpp"
#include "domsplit/cocycle.hpp"
#include "domsplit/domination.hpp"
#include "domsplit/shadowlab.hpp"
#include "domsplit/sft.hpp"
#include "domsplit/spectrum.hpp"

namespace domsplit {

using Json = nlohmann::ordered_json;

// Parses JSON, or TOML when the extension is .toml.
Json load_document(const std::filesystem::path& path);
Json parse_toml(const std::string& text);
std::string read_file(const std::filesystem::path& path);

// {"alphabet": m, "transition": [[...], ...]}
ShiftSpace shift_from_json(const Json& doc);
Json to_json(const ShiftSpace& shift);

// {"dimension": d, "range": r, "beta": b, "matrices": {"1,2,1": [[...]], ...}}
// with an optional "mu". Window keys are comma-separated symbol lists.
FiniteRangeCocycle cocycle_from_json(const Json& doc);
Json to_json(const FiniteRangeCocycle& a);

ShiftSpace load_shift(const std::filesystem::path& path);
FiniteRangeCocycle load_cocycle(const std::filesystem::path& path);

std::string format_double(double v);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const SpectrumReport& report);
// period, orbit, chi_1..chi_d
std::string spectrum_csv(const SpectrumReport& report);

Json to_json(const DominationCertificate& cert);
// n, g_n, orbit-id for every sample
std::string gap_series_csv(const DominationCertificate& cert);

Json to_json(const SplittingFrame& frame);
Json to_json(const DominationInequalityReport& report);

Json to_json(const FeasibilityResult& r);

}  // namespace domsplit
