#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "amra/analysis.hpp"
#include "amra/tree.hpp"
#include "amra/uep.hpp"

namespace amra::io {

using json = nlohmann::json;

/// Malformed input file or unsupported schema (CLI exit code 2).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Content-level mismatch such as a wrong plan digest (CLI exit code 1).
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic serialization: objects with sorted keys, floats printed
/// with %.17g. Output ends with a newline. Re-serializing a parse of the
/// output is byte-identical.
std::string canonical_json(const json& j);

json load_json_file(const std::filesystem::path& p);
void write_text_atomic(const std::filesystem::path& p, const std::string& text);
void write_bytes_atomic(const std::filesystem::path& p, const void* data, std::size_t size);

json bank_to_json(const FilterBank& bank);
FilterBank bank_from_json(const json& j);
FilterBank load_bank_file(const std::filesystem::path& p);
void write_bank_file(const std::filesystem::path& p, const FilterBank& bank);

json plan_to_json(const TreePlan& plan);
/// `base_dir` resolves relative "$ref" bank paths.
TreePlan plan_from_json(const json& j, const std::filesystem::path& base_dir);
TreePlan load_plan_file(const std::filesystem::path& p);
void write_plan_file(const std::filesystem::path& p, const TreePlan& plan);

json report_to_json(const UepReport& rep);

struct PgmImage {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;  // row-major
};

PgmImage read_pgm(const std::filesystem::path& p);
void write_pgm(const std::filesystem::path& p, const PgmImage& img);

/// Pixels mapped to doubles in [0,1]; axis 0 is the image row.
Signal pgm_to_signal(const PgmImage& img);
/// Crop to `box`, quantize round-half-away-from-zero, clamp to [0, maxval].
PgmImage signal_to_pgm(const Signal& v, const Box& box, int maxval);

/// Raw row-major little-endian float64 of the real part, no header.
void write_f64(const std::filesystem::path& p, const Signal& v);
std::vector<double> read_f64(const std::filesystem::path& p);

void write_grid_function(const std::filesystem::path& f64_path, const GridFunction& g);

/// Coefficient directory: manifest.json plus one <node>.f64 per leaf.
/// `input_meta` (may be null) is stored under "input" for later cropping.
void write_pyramid_dir(const std::filesystem::path& dir, const TreePlan& plan, const Pyramid& p,
                       const json& input_meta = nullptr);
/// Validates the manifest version, plan digest, leaf set and byte counts.
Pyramid read_pyramid_dir(const std::filesystem::path& dir, const TreePlan& plan);
json read_manifest(const std::filesystem::path& dir);

}  // namespace amra::io
