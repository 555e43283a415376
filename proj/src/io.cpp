#include "amra/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace amra::io {

namespace {

void check_version(const json& j, const char* what) {
  if (j.contains("version") && j.at("version") != 1)
    throw SchemaError(std::string(what) + ": unsupported schema version");
}

void emit(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ',';
        first = false;
        emit(json(it.key()), out);
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::string: {
      out += '"';
      for (char c : j.get<std::string>()) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          case '\r': out += "\\r"; break;
          default:
            if (static_cast<unsigned char>(c) < 0x20) {
              char buf[8];
              std::snprintf(buf, sizeof buf, "\\u%04x", c);
              out += buf;
            } else {
              out += c;
            }
        }
      }
      out += '"';
      break;
    }
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw SchemaError("cannot serialize a non-finite number");
      if (v == 0.0) v = 0.0;  // collapse -0.0
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::null:
      out += "null";
      break;
    default:
      throw SchemaError("cannot serialize this json value type");
  }
}

json ivec_to_json(const IVec& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

IVec ivec_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an integer array");
  IVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer() && !x.is_number_unsigned())
      throw SchemaError("expected integer array entries");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

json matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) a.push_back(m(i, j));
  return a;
}

IntMatrix matrix_from_json(const json& j, int dim) {
  const IVec flat = ivec_from_json(j);
  if (static_cast<int>(flat.size()) != dim * dim)
    throw SchemaError("matrix entry count does not match dimension");
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) m(i, k) = flat[i * dim + k];
  return m;
}

json mask_fields(const Mask& mask) {
  json f;
  f["offset"] = ivec_to_json(mask.support().lo);
  f["shape"] = ivec_to_json(mask.support().shape);
  json re = json::array(), im = json::array();
  bool complex_valued = false;
  for (const cdouble& c : mask.data()) {
    re.push_back(c.real());
    im.push_back(c.imag());
    if (c.imag() != 0.0) complex_valued = true;
  }
  f["re"] = std::move(re);
  if (complex_valued) f["im"] = std::move(im);
  f["band"] = mask.band() == Band::low ? "low" : "high";
  return f;
}

Mask mask_from_fields(const json& f, int dim) {
  const IVec offset = ivec_from_json(f.at("offset"));
  const IVec shape = ivec_from_json(f.at("shape"));
  if (static_cast<int>(offset.size()) != dim || static_cast<int>(shape.size()) != dim)
    throw SchemaError("filter offset/shape dimension mismatch");
  Box box(offset, shape);
  const auto& re = f.at("re");
  if (!re.is_array() || static_cast<std::int64_t>(re.size()) != box.size())
    throw SchemaError("filter coefficient count does not match shape");
  std::vector<cdouble> data(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) data[i] = cdouble(re[i].get<double>(), 0.0);
  if (f.contains("im")) {
    const auto& im = f.at("im");
    if (!im.is_array() || im.size() != re.size())
      throw SchemaError("filter im/re length mismatch");
    for (std::size_t i = 0; i < im.size(); ++i) data[i].imag(im[i].get<double>());
  }
  const std::string band = f.at("band").get<std::string>();
  if (band != "low" && band != "high") throw SchemaError("filter band must be low or high");
  return Mask(std::move(box), std::move(data), band == "low" ? Band::low : Band::high);
}

}  // namespace

std::string canonical_json(const json& j) {
  std::string out;
  emit(j, out);
  out += '\n';
  return out;
}

json load_json_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + p.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON in " + p.string());
  return j;
}

void write_bytes_atomic(const std::filesystem::path& p, const void* data, std::size_t size) {
  const std::filesystem::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

void write_text_atomic(const std::filesystem::path& p, const std::string& text) {
  write_bytes_atomic(p, text.data(), text.size());
}

json bank_to_json(const FilterBank& bank) {
  json j;
  j["version"] = 1;
  j["dim"] = bank.dim();
  j["separator"] = bank.separator();
  json filters = json::array();
  for (const BankItem& it : bank.items()) {
    json f = mask_fields(it.mask);
    f["matrix"] = matrix_to_json(it.matrix);
    filters.push_back(std::move(f));
  }
  j["filters"] = std::move(filters);
  return j;
}

FilterBank bank_from_json(const json& j) {
  try {
    check_version(j, "bank file");
    const int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > 4) throw SchemaError("bank dimension must be 1..4");
    const int separator = j.at("separator").get<int>();
    const auto& filters = j.at("filters");
    if (!filters.is_array() || filters.empty())
      throw SchemaError("bank needs a nonempty filter array");
    std::vector<BankItem> items;
    for (const auto& f : filters)
      items.push_back({mask_from_fields(f, dim), matrix_from_json(f.at("matrix"), dim)});
    return FilterBank(dim, std::move(items), separator);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bank file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("bank file: ") + e.what());
  }
}

FilterBank load_bank_file(const std::filesystem::path& p) {
  return bank_from_json(load_json_file(p));
}

void write_bank_file(const std::filesystem::path& p, const FilterBank& bank) {
  write_text_atomic(p, canonical_json(bank_to_json(bank)));
}

json plan_to_json(const TreePlan& plan) {
  json j;
  j["version"] = 1;
  j["dim"] = plan.dim();
  j["depth"] = plan.depth();
  json levels = json::array();
  for (int l = 0; l < plan.depth(); ++l) {
    json level = bank_to_json(plan.level_banks()[l]);
    level.erase("version");
    json overrides;
    for (const auto& [node, bank] : plan.overrides())
      if (node.level() == l) {
        json b = bank_to_json(bank);
        b.erase("version");
        overrides[node.padded(plan.depth())] = std::move(b);
      }
    if (!overrides.is_null()) level["node_overrides"] = std::move(overrides);
    levels.push_back(std::move(level));
  }
  j["levels"] = std::move(levels);
  json base;
  base["matrix"] = matrix_to_json(plan.base_matrix());
  json bm = mask_fields(plan.base_mask());
  bm.erase("band");
  base["mask"] = std::move(bm);
  j["base"] = std::move(base);
  return j;
}

namespace {

FilterBank level_bank_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (j.contains("$ref")) {
    const std::filesystem::path ref = j.at("$ref").get<std::string>();
    return load_bank_file(ref.is_absolute() ? ref : base_dir / ref);
  }
  return bank_from_json(j);
}

}  // namespace

TreePlan plan_from_json(const json& j, const std::filesystem::path& base_dir) {
  try {
    check_version(j, "plan file");
    const int dim = j.at("dim").get<int>();
    const int depth = j.at("depth").get<int>();
    const auto& levels = j.at("levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != depth)
      throw SchemaError("plan depth does not match the level list");

    std::vector<FilterBank> banks;
    std::map<NodeId, FilterBank> overrides;
    for (int l = 0; l < depth; ++l) {
      const json& level = levels[l];
      banks.push_back(level_bank_from_json(level, base_dir));
      if (level.contains("node_overrides")) {
        for (auto it = level.at("node_overrides").begin(); it != level.at("node_overrides").end();
             ++it) {
          NodeId node = NodeId::from_padded(it.key(), depth);
          if (node.level() != l) throw SchemaError("override listed under the wrong level");
          overrides.emplace(std::move(node), level_bank_from_json(it.value(), base_dir));
        }
      }
    }
    TreePlan plan(dim, std::move(banks), std::move(overrides));
    if (j.contains("base")) {
      const json& base = j.at("base");
      const IntMatrix m0 = matrix_from_json(base.at("matrix"), dim);
      json bm = base.at("mask");
      bm["band"] = "low";
      plan.set_base_pair(m0, mask_from_fields(bm, dim));
    }
    return plan;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("plan file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("plan file: ") + e.what());
  }
}

TreePlan load_plan_file(const std::filesystem::path& p) {
  return plan_from_json(load_json_file(p), p.parent_path());
}

void write_plan_file(const std::filesystem::path& p, const TreePlan& plan) {
  write_text_atomic(p, canonical_json(plan_to_json(plan)));
}

json report_to_json(const UepReport& rep) {
  json j;
  j["certified"] = rep.certified;
  j["worst_violation"] = rep.worst_violation;
  json v = json::array();
  for (const UepViolation& x : rep.violations) {
    json e;
    json omega = json::array();
    for (const Rational& r : x.omega) omega.push_back(r.str());
    e["omega"] = std::move(omega);
    e["m"] = ivec_to_json(x.m);
    e["residual"] = x.residual;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

namespace {

int read_pnm_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {  // comment to end of line
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok.empty() ? EOF : 0;
}

}  // namespace

PgmImage read_pgm(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + p.string());
  std::string tok;
  if (read_pnm_token(in, tok) || tok != "P5")
    throw SchemaError(p.string() + ": only binary PGM (P5) is supported");
  PgmImage img;
  try {
    if (read_pnm_token(in, tok)) throw SchemaError("");
    img.cols = std::stoll(tok);
    if (read_pnm_token(in, tok)) throw SchemaError("");
    img.rows = std::stoll(tok);
    if (read_pnm_token(in, tok)) throw SchemaError("");
    img.maxval = std::stoi(tok);
  } catch (const std::exception&) {
    throw SchemaError(p.string() + ": malformed PGM header");
  }
  if (img.cols <= 0 || img.rows <= 0 || img.maxval <= 0 || img.maxval > 65535)
    throw SchemaError(p.string() + ": unsupported PGM geometry");

  const std::size_t n = static_cast<std::size_t>(img.rows * img.cols);
  img.pixels.resize(n);
  if (img.maxval < 256) {
    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      throw SchemaError(p.string() + ": truncated PGM data");
    for (std::size_t i = 0; i < n; ++i) img.pixels[i] = raw[i];
  } else {
    std::vector<unsigned char> raw(2 * n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(2 * n));
    if (static_cast<std::size_t>(in.gcount()) != 2 * n)
      throw SchemaError(p.string() + ": truncated PGM data");
    for (std::size_t i = 0; i < n; ++i)
      img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  }
  return img;
}

void write_pgm(const std::filesystem::path& p, const PgmImage& img) {
  std::string out = "P5\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n" +
                    std::to_string(img.maxval) + "\n";
  const std::size_t n = static_cast<std::size_t>(img.rows * img.cols);
  if (img.maxval < 256) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<char>(img.pixels[i] & 0xff));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(static_cast<char>(img.pixels[i] >> 8));
      out.push_back(static_cast<char>(img.pixels[i] & 0xff));
    }
  }
  write_text_atomic(p, out);
}

Signal pgm_to_signal(const PgmImage& img) {
  Box box(IVec{0, 0}, IVec{img.rows, img.cols});
  std::vector<cdouble> data(img.pixels.size());
  const double scale = 1.0 / static_cast<double>(img.maxval);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    data[i] = cdouble(static_cast<double>(img.pixels[i]) * scale, 0.0);
  return Signal(std::move(box), std::move(data));
}

PgmImage signal_to_pgm(const Signal& v, const Box& box, int maxval) {
  if (box.dim() != 2) throw std::invalid_argument("PGM export requires 2-D data");
  PgmImage img;
  img.rows = box.shape[0];
  img.cols = box.shape[1];
  img.maxval = maxval;
  img.pixels.reserve(static_cast<std::size_t>(box.size()));
  for_each_point(box, [&](const IVec& p) {
    double q = std::round(v.at(p).real() * static_cast<double>(maxval));
    q = std::min(std::max(q, 0.0), static_cast<double>(maxval));
    img.pixels.push_back(static_cast<std::uint16_t>(q));
  });
  return img;
}

void write_f64(const std::filesystem::path& p, const Signal& v) {
  std::vector<double> raw;
  raw.reserve(v.data().size());
  for (const cdouble& c : v.data()) raw.push_back(c.real());
  write_bytes_atomic(p, raw.data(), raw.size() * sizeof(double));
}

std::vector<double> read_f64(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + p.string());
  in.seekg(0, std::ios::end);
  const std::streamoff bytes = in.tellg();
  in.seekg(0);
  if (bytes % sizeof(double) != 0) throw SchemaError(p.string() + ": not a float64 array");
  std::vector<double> raw(static_cast<std::size_t>(bytes) / sizeof(double));
  in.read(reinterpret_cast<char*>(raw.data()), bytes);
  if (in.gcount() != bytes) throw SchemaError(p.string() + ": short read");
  return raw;
}

void write_grid_function(const std::filesystem::path& f64_path, const GridFunction& g) {
  write_f64(f64_path, g.samples);
  json meta;
  meta["version"] = 1;
  meta["level"] = g.level;
  meta["matrix"] = matrix_to_json(g.matrix);
  meta["offset"] = ivec_to_json(g.samples.box().lo);
  meta["shape"] = ivec_to_json(g.samples.box().shape);
  meta["refinement_delta"] = g.refinement_delta;
  write_text_atomic(f64_path.string() + ".json", canonical_json(meta));
}

namespace {

json node_entry(const TreePlan& plan, const NodeId& node, const Signal& s, bool low) {
  json e;
  e["id"] = node.padded(plan.depth());
  e["kind"] = low ? "low" : "high";
  e["level"] = node.level();
  e["offset"] = ivec_to_json(s.box().lo);
  e["shape"] = ivec_to_json(s.box().shape);
  IntMatrix m = IntMatrix::identity(plan.dim());
  if (node.level() > 0) m = plan.bank_at(node.parent()).item(node.path.back() - 1).matrix;
  e["matrix"] = matrix_to_json(m);
  return e;
}

}  // namespace

void write_pyramid_dir(const std::filesystem::path& dir, const TreePlan& plan, const Pyramid& p,
                       const json& input_meta) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["version"] = 1;
  manifest["plan_digest"] = plan.digest();
  manifest["dim"] = plan.dim();
  manifest["depth"] = plan.depth();
  if (!input_meta.is_null()) manifest["input"] = input_meta;

  json nodes = json::array();
  for (const auto& [node, s] : p.low) {
    nodes.push_back(node_entry(plan, node, s, true));
    write_f64(dir / (node.padded(plan.depth()) + ".f64"), s);
  }
  for (const auto& [node, s] : p.high) {
    nodes.push_back(node_entry(plan, node, s, false));
    write_f64(dir / (node.padded(plan.depth()) + ".f64"), s);
  }
  std::sort(nodes.begin(), nodes.end(), [](const json& a, const json& b) {
    return a.at("id").get<std::string>() < b.at("id").get<std::string>();
  });
  manifest["nodes"] = std::move(nodes);
  write_text_atomic(dir / "manifest.json", canonical_json(manifest));
}

json read_manifest(const std::filesystem::path& dir) {
  json m = load_json_file(dir / "manifest.json");
  check_version(m, "manifest");
  return m;
}

Pyramid read_pyramid_dir(const std::filesystem::path& dir, const TreePlan& plan) {
  const json manifest = read_manifest(dir);
  try {
    if (manifest.at("plan_digest").get<std::string>() != plan.digest())
      throw MismatchError("pyramid was produced by a different plan (digest mismatch)");
    if (manifest.at("dim").get<int>() != plan.dim() ||
        manifest.at("depth").get<int>() != plan.depth())
      throw MismatchError("pyramid geometry does not match the plan");

    const LeafSets leaves = plan.predicted_leaves();
    Pyramid p;
    p.plan_digest = plan.digest();

    std::map<std::string, const json*> by_id;
    for (const json& e : manifest.at("nodes"))
      by_id[e.at("id").get<std::string>()] = &e;
    if (by_id.size() != leaves.low.size() + leaves.high.size())
      throw MismatchError("pyramid node count does not match the plan");

    const auto load = [&](const NodeId& node, bool low) {
      const std::string id = node.padded(plan.depth());
      const auto it = by_id.find(id);
      if (it == by_id.end()) throw MismatchError("missing pyramid leaf " + id);
      const json& e = *it->second;
      Box box(ivec_from_json(e.at("offset")), ivec_from_json(e.at("shape")));
      std::vector<double> raw = read_f64(dir / (id + ".f64"));
      if (static_cast<std::int64_t>(raw.size()) != box.size())
        throw MismatchError("leaf " + id + " byte count does not match its shape");
      Signal s(std::move(box), std::move(raw));
      (low ? p.low : p.high).emplace(node, std::move(s));
    };
    for (const NodeId& n : leaves.low) load(n, true);
    for (const NodeId& n : leaves.high) load(n, false);
    return p;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("manifest: ") + e.what());
  }
}

}  // namespace amra::io
