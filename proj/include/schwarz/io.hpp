#pragma once

// JSON specs in, JSON/CSV reports out.

#include "schwarz/bounds.hpp"
#include "schwarz/gallery.hpp"
#include "schwarz/harmonic.hpp"
#include "schwarz/lemma_lab.hpp"
#include "schwarz/metric.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace schwarz::io {

using json = nlohmann::ordered_json;

/// Parses a file; InvalidInput on a missing file or malformed JSON.
json read_json_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json_file(const std::filesystem::path& path, const json& doc);

/// {"kind": ..., "params": {...}}; tabulated also accepts top-level "u"/"R".
/// Kinds: constant, exponential, cosine, hyperbolic, secant, parabolic,
/// lemma_psi, lemma_psi_mollified, tabulated, half_plane_one_minus_exp.
Metric1D metric_from_json(const json& doc);

/// {"kind":"samples","theta":[...],"values":[...]} or
/// {"kind":"expression-preset","name":"step|cosine|constant","params":{...}}.
BoundaryData boundary_from_json(const json& doc);

/// Writes a double with 17 significant digits.
std::string format_double(double x);

json to_json(const BoundReport& report, bool with_points = false);
json to_json(const ExampleReport& report);
json to_json(const LogConcavityReport& report);
json to_json(const SweepRecord& record);

/// Header row then one row per point: x,y,wx,wy,lhs,rhs,slack.
void write_points_csv(const BoundReport& report, std::ostream& out);
/// Header row then one row per record, columns from the first record's keys plus "ratio".
void write_sweep_csv(std::span<const SweepRecord> rows, std::ostream& out);

}  // namespace schwarz::io
