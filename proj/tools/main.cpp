// Command-line front end: filter-bank certification, bank design, image
// decomposition/reconstruction, rotation approximation, sum rules and
// cascade evaluation. Data goes to stdout or files, diagnostics to stderr.
// Exit codes: 0 success/certified, 1 refutation or content mismatch,
// 2 argument/parse/schema errors.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>

#include "amra/analysis.hpp"
#include "amra/bankgen.hpp"
#include "amra/io.hpp"
#include "amra/rotapprox.hpp"
#include "amra/tree.hpp"
#include "amra/uep.hpp"

namespace {

using amra::io::json;

int cmd_check_uep(const std::string& bank_path, double tol, bool spatial) {
  const amra::FilterBank bank = amra::io::load_bank_file(bank_path);
  const amra::UepReport rep = spatial ? amra::check_uep_same_lattice(bank, tol)
                                      : amra::check_uep_general(bank, tol);
  std::cout << amra::io::canonical_json(amra::io::report_to_json(rep));
  return rep.certified ? 0 : 1;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t used = 0;
    out.push_back(std::stoll(s.substr(pos), &used));
    pos += used;
    if (pos < s.size()) {
      if (s[pos] != ',') throw amra::io::SchemaError("expected comma-separated integers: " + s);
      ++pos;
    }
  }
  if (out.empty()) throw amra::io::SchemaError("empty integer list");
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> parse_pair_list(const std::string& s) {
  // "(0,0);(1,1)"
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') throw amra::io::SchemaError("expected (s1,s2) pairs: " + s);
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw amra::io::SchemaError("unbalanced pair list: " + s);
    const auto nums = parse_int_list(s.substr(pos + 1, close - pos - 1));
    if (nums.size() != 2) throw amra::io::SchemaError("each shear pair needs two entries: " + s);
    out.emplace_back(nums[0], nums[1]);
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != ';') throw amra::io::SchemaError("pairs must be ';'-separated: " + s);
      ++pos;
    }
  }
  if (out.empty()) throw amra::io::SchemaError("empty shear pair list");
  return out;
}

amra::SeedName parse_seed(const std::string& s) {
  if (s == "haar") return amra::SeedName::haar;
  if (s == "linear_spline") return amra::SeedName::linear_spline;
  throw amra::io::SchemaError("unknown seed family: " + s);
}

int cmd_design_bank(const std::string& kind, const std::string& shears,
                    const std::string& shears3d, const std::string& seed, int dim,
                    const std::string& out_path) {
  amra::FilterBank bank = [&] {
    const amra::SeedName sd = parse_seed(seed);
    if (kind == "shearlet2d") return amra::shearlet_bank_2d(parse_int_list(shears), sd);
    if (kind == "shearlet3d") return amra::shearlet_bank_3d(parse_pair_list(shears3d), sd);
    if (kind == "tensor")
      return amra::lattice_bank(amra::IntMatrix::diagonal(amra::IVec(dim, 2)), sd);
    throw amra::io::SchemaError("unknown bank kind: " + kind);
  }();
  // constructors certify; double-check before writing anything
  if (!amra::check_uep_general(bank).certified) {
    std::cerr << "refusing to write an uncertified bank\n";
    return 1;
  }
  amra::io::write_bank_file(out_path, bank);
  std::cerr << "wrote " << out_path << " (" << bank.size() << " filters)\n";
  return 0;
}

int cmd_decompose(const std::string& plan_path, const std::string& input_path,
                  const std::string& out_dir, bool force, int threads) {
  const amra::TreePlan plan = amra::io::load_plan_file(plan_path);
  const amra::io::PgmImage img = amra::io::read_pgm(input_path);
  const amra::Signal v = amra::io::pgm_to_signal(img);

  amra::RunOptions opt;
  opt.force = force;
  opt.threads = threads;
  const amra::Pyramid pyr = amra::fad(plan, v, opt);

  double worst_imag = 0.0;
  for (const auto& [node, s] : pyr.low) worst_imag = std::max(worst_imag, s.max_abs_imag());
  for (const auto& [node, s] : pyr.high) worst_imag = std::max(worst_imag, s.max_abs_imag());
  if (worst_imag > 1e-12) {
    std::cerr << "coefficients are not real-valued (max imaginary part " << worst_imag
              << "); this storage format holds real data only\n";
    return 1;
  }

  json input_meta;
  input_meta["offset"] = json::array({0, 0});
  input_meta["shape"] = json::array({img.rows, img.cols});
  input_meta["maxval"] = img.maxval;
  amra::io::write_pyramid_dir(out_dir, plan, pyr, input_meta);
  std::cerr << "wrote " << out_dir << " (" << pyr.low.size() + pyr.high.size() << " leaves)\n";
  return 0;
}

int cmd_reconstruct(const std::string& plan_path, const std::string& pyramid_dir,
                    const std::string& out_path, bool crop_to_input, int threads) {
  const amra::TreePlan plan = amra::io::load_plan_file(plan_path);
  const amra::Pyramid pyr = amra::io::read_pyramid_dir(pyramid_dir, plan);

  amra::RunOptions opt;
  opt.threads = threads;
  opt.force = true;  // the plan was validated when the pyramid was written
  const amra::Signal v = amra::far(plan, pyr, opt);

  if (crop_to_input) {
    const json manifest = amra::io::read_manifest(pyramid_dir);
    if (!manifest.contains("input")) {
      std::cerr << "pyramid has no stored input geometry; cannot crop\n";
      return 1;
    }
    const json& input = manifest.at("input");
    amra::IVec lo, shape;
    for (const auto& x : input.at("offset")) lo.push_back(x.get<std::int64_t>());
    for (const auto& x : input.at("shape")) shape.push_back(x.get<std::int64_t>());
    const int maxval = input.at("maxval").get<int>();
    amra::io::write_pgm(out_path, amra::io::signal_to_pgm(v, amra::Box(lo, shape), maxval));
  } else {
    amra::io::write_f64(out_path, v);
    json meta;
    meta["version"] = 1;
    json offset = json::array(), shape = json::array();
    for (auto x : v.box().lo) offset.push_back(x);
    for (auto x : v.box().shape) shape.push_back(x);
    meta["offset"] = std::move(offset);
    meta["shape"] = std::move(shape);
    amra::io::write_text_atomic(out_path + ".json", amra::io::canonical_json(meta));
  }
  std::cerr << "wrote " << out_path << "\n";
  return 0;
}

double parse_theta(const std::string& s) {
  if (s.size() > 3 && s.substr(s.size() - 3) == "deg")
    return std::stod(s.substr(0, s.size() - 3)) * std::numbers::pi / 180.0;
  return std::stod(s);
}

int cmd_rotation_approx(const std::string& theta_arg, bool brute_force, int radius) {
  const double theta = parse_theta(theta_arg);
  const amra::RotationSolution sol = brute_force
                                         ? amra::best_unimodular_bruteforce(theta, radius)
                                         : amra::best_unimodular(theta);
  json j;
  j["theta"] = sol.theta;
  j["objective"] = sol.objective;
  json mins = json::array();
  for (const amra::IntMatrix& m : sol.minimizers) {
    json rows = json::array();
    for (int i = 0; i < 2; ++i) rows.push_back(json::array({m(i, 0), m(i, 1)}));
    mins.push_back(std::move(rows));
  }
  j["minimizers"] = std::move(mins);
  std::cout << amra::io::canonical_json(j);
  return 0;
}

amra::Mask mask_from_cli(const std::string& coeffs, std::int64_t offset) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < coeffs.size()) {
    std::size_t used = 0;
    values.push_back(std::stod(coeffs.substr(pos), &used));
    pos += used;
    if (pos < coeffs.size()) {
      if (coeffs[pos] != ',')
        throw amra::io::SchemaError("expected comma-separated coefficients");
      ++pos;
    }
  }
  if (values.empty()) throw amra::io::SchemaError("empty mask");
  return amra::Mask(amra::Box(amra::IVec{offset},
                              amra::IVec{static_cast<std::int64_t>(values.size())}),
                    values, amra::Band::low);
}

int cmd_sum_rules(const std::string& coeffs, std::int64_t offset, std::int64_t dilation) {
  const amra::Mask mask = mask_from_cli(coeffs, offset);
  const int tau =
      amra::sum_rule_order(mask, amra::IntMatrix::diagonal(amra::IVec{dilation}));
  json j;
  j["tau"] = tau;
  std::cout << amra::io::canonical_json(j);
  return 0;
}

int cmd_cascade(const std::string& seed, const std::string& coeffs, std::int64_t offset,
                std::int64_t dilation, int levels, const std::string& out_path) {
  amra::Mask mask = [&] {
    if (!coeffs.empty()) return mask_from_cli(coeffs, offset);
    const amra::SeedBank1D bank = amra::seed_bank(parse_seed(seed), dilation);
    return bank.filters[0];
  }();
  const amra::GridFunction g =
      amra::cascade(mask, amra::IntMatrix::diagonal(amra::IVec{dilation}), levels);
  amra::io::write_grid_function(out_path, g);
  json meta;
  meta["level"] = g.level;
  meta["samples"] = static_cast<std::int64_t>(g.samples.data().size());
  meta["refinement_delta"] = g.refinement_delta;
  std::cout << amra::io::canonical_json(meta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive multiresolution filter-bank toolkit"};
  app.require_subcommand(1);

  std::string bank_path, plan_path, input_path, out_path, pyramid_dir;
  std::string kind = "tensor", shears, shears3d, seed = "haar", theta_arg, coeffs;
  double tol = amra::kDefaultUepTol;
  bool spatial = false, force = false, crop = false, brute = false;
  int threads = 1, radius = 3, dim = 2, levels = 10;
  std::int64_t offset = 0, dilation = 2;

  auto* check = app.add_subcommand("check-uep", "certify or refute a filter bank");
  check->add_option("--bank", bank_path, "bank JSON file")->required();
  check->add_option("--tol", tol, "per-coefficient tolerance");
  check->add_flag("--spatial", spatial, "use the same-lattice spatial checker");

  auto* design = app.add_subcommand("design-bank", "construct a certified bank");
  design->add_option("--kind", kind, "shearlet2d|shearlet3d|tensor")->required();
  design->add_option("--shears", shears, "comma-separated shear list, e.g. 0,1,-1");
  design->add_option("--shears3d", shears3d, "shear pairs, e.g. (0,0);(1,1)");
  design->add_option("--seed", seed, "haar|linear_spline");
  design->add_option("--dim", dim, "dimension for tensor banks");
  design->add_option("-o,--output", out_path, "output bank file")->required();

  auto* dec = app.add_subcommand("decompose", "multi-level decomposition of a PGM image");
  dec->add_option("--plan", plan_path, "plan JSON file")->required();
  dec->add_option("--input", input_path, "binary PGM (P5) input")->required();
  dec->add_option("-o,--output", out_path, "output coefficient directory")->required();
  dec->add_flag("--force", force, "skip plan certification");
  dec->add_option("--threads", threads, "worker threads (output is identical for any count)");

  auto* rec = app.add_subcommand("reconstruct", "reconstruction from a coefficient directory");
  rec->add_option("--plan", plan_path, "plan JSON file")->required();
  rec->add_option("--pyramid", pyramid_dir, "coefficient directory")->required();
  rec->add_option("-o,--output", out_path, "output file (.pgm with --crop-to-input)")->required();
  rec->add_flag("--crop-to-input", crop, "crop to the original raster and quantize");
  rec->add_option("--threads", threads, "worker threads");

  auto* rot = app.add_subcommand("rotation-approx",
                                 "integer determinant-1 matrices closest to a rotation");
  rot->add_option("--theta", theta_arg, "angle in radians, or with a deg suffix (36deg)")
      ->required();
  rot->add_flag("--brute-force", brute, "exhaustive search instead of the closed form");
  rot->add_option("--radius", radius, "entry bound for the exhaustive search");

  auto* sr = app.add_subcommand("sum-rules", "sum-rule order of a 1-D mask");
  sr->add_option("--mask", coeffs, "comma-separated coefficients")->required();
  sr->add_option("--offset", offset, "support start (default 0)");
  sr->add_option("--dilation", dilation, "integer dilation")->required();

  auto* casc = app.add_subcommand("cascade", "samples of the refinable limit function");
  casc->add_option("--seed", seed, "haar|linear_spline (low-pass mask of the family)");
  casc->add_option("--mask", coeffs, "explicit coefficients (overrides --seed)");
  casc->add_option("--offset", offset, "support start for --mask");
  casc->add_option("--dilation", dilation, "integer dilation");
  casc->add_option("--levels", levels, "number of refinement levels");
  casc->add_option("-o,--output", out_path, "output .f64 file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check_uep(bank_path, tol, spatial);
    if (design->parsed()) return cmd_design_bank(kind, shears, shears3d, seed, dim, out_path);
    if (dec->parsed()) return cmd_decompose(plan_path, input_path, out_path, force, threads);
    if (rec->parsed()) return cmd_reconstruct(plan_path, pyramid_dir, out_path, crop, threads);
    if (rot->parsed()) return cmd_rotation_approx(theta_arg, brute, radius);
    if (sr->parsed()) return cmd_sum_rules(coeffs, offset, dilation);
    if (casc->parsed()) return cmd_cascade(seed, coeffs, offset, dilation, levels, out_path);
  } catch (const amra::io::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const amra::io::MismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
