#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "amra/bankgen.hpp"
#include "amra/io.hpp"
#include "amra/tree.hpp"

using namespace amra;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("amra_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

TreePlan small_plan() {
  ShearletPlanSpec spec;
  spec.shears_2d = {{0, 1}};
  return shearlet_plan(spec);
}

}  // namespace

TEST_CASE("canonical json serialization is roundtrip-stable") {
  io::json j;
  j["b"] = 0.1;
  j["a"] = io::json::array({1, 2.5, "x", true, nullptr});
  j["c"] = io::json{{"nested", -0.25}, {"n", 7}};
  const std::string once = io::canonical_json(j);
  const std::string twice = io::canonical_json(io::json::parse(once));
  CHECK(once == twice);
  CHECK(once.find("\"a\"") < once.find("\"b\""));  // sorted keys
}

TEST_CASE("bank files") {
  TempDir tmp;
  const FilterBank bank = shearlet_bank_2d({0, 1});
  const fs::path p = tmp.path / "bank.json";
  io::write_bank_file(p, bank);

  SUBCASE("roundtrip preserves the bank") {
    const FilterBank back = io::load_bank_file(p);
    REQUIRE(back.size() == bank.size());
    CHECK(back.separator() == bank.separator());
    for (int i = 0; i < bank.size(); ++i) {
      CHECK(back.item(i).mask == bank.item(i).mask);
      CHECK(back.item(i).matrix == bank.item(i).matrix);
    }
  }
  SUBCASE("rewriting the parsed file is byte-identical") {
    const std::string bytes = slurp(p);
    io::write_bank_file(tmp.path / "again.json", io::load_bank_file(p));
    CHECK(slurp(tmp.path / "again.json") == bytes);
  }
  SUBCASE("malformed json is a schema error") {
    io::write_text_atomic(tmp.path / "broken.json", "{not json");
    CHECK_THROWS_AS(io::load_bank_file(tmp.path / "broken.json"), io::SchemaError);
  }
  SUBCASE("unknown schema versions are rejected") {
    io::json j = io::bank_to_json(bank);
    j["version"] = 99;
    io::write_text_atomic(tmp.path / "v99.json", io::canonical_json(j));
    CHECK_THROWS_AS(io::load_bank_file(tmp.path / "v99.json"), io::SchemaError);
  }
  SUBCASE("missing fields are schema errors") {
    io::json j = io::bank_to_json(bank);
    j.erase("separator");
    io::write_text_atomic(tmp.path / "missing.json", io::canonical_json(j));
    CHECK_THROWS_AS(io::load_bank_file(tmp.path / "missing.json"), io::SchemaError);
  }
}

TEST_CASE("plan files with inline banks, refs and overrides") {
  TempDir tmp;
  TreePlan plan = small_plan();
  const NodeId node = NodeId{}.child(1);
  // no second level, so use a one-level plan with an override at the root
  TreePlan with_ov = plan.with_override(NodeId{}, shearlet_bank_2d({0}));
  const fs::path p = tmp.path / "plan.json";
  io::write_plan_file(p, with_ov);

  SUBCASE("roundtrip digest matches") {
    const TreePlan back = io::load_plan_file(p);
    CHECK(back.digest() == with_ov.digest());
    CHECK(back.depth() == with_ov.depth());
  }
  SUBCASE("rewriting the parsed plan is byte-identical") {
    const std::string bytes = slurp(p);
    io::write_plan_file(tmp.path / "again.json", io::load_plan_file(p));
    CHECK(slurp(tmp.path / "again.json") == bytes);
  }
  SUBCASE("banks can be referenced from separate files") {
    io::write_bank_file(tmp.path / "bank.json", shearlet_bank_2d({0, 1}));
    io::json j;
    j["version"] = 1;
    j["dim"] = 2;
    j["depth"] = 1;
    j["levels"] = io::json::array({io::json{{"$ref", "bank.json"}}});
    io::write_text_atomic(tmp.path / "refplan.json", io::canonical_json(j));
    const TreePlan loaded = io::load_plan_file(tmp.path / "refplan.json");
    CHECK(loaded.digest() == small_plan().digest());
  }
  SUBCASE("unknown plan versions are rejected") {
    io::json j = io::plan_to_json(plan);
    j["version"] = 7;
    io::write_text_atomic(tmp.path / "v7.json", io::canonical_json(j));
    CHECK_THROWS_AS(io::load_plan_file(tmp.path / "v7.json"), io::SchemaError);
  }
  (void)node;
}

TEST_CASE("pgm images") {
  TempDir tmp;
  SUBCASE("8-bit roundtrip") {
    io::PgmImage img;
    img.rows = 3;
    img.cols = 5;
    img.maxval = 255;
    for (int i = 0; i < 15; ++i) img.pixels.push_back(static_cast<std::uint16_t>(i * 17));
    io::write_pgm(tmp.path / "a.pgm", img);
    const io::PgmImage back = io::read_pgm(tmp.path / "a.pgm");
    CHECK(back.rows == img.rows);
    CHECK(back.cols == img.cols);
    CHECK(back.maxval == img.maxval);
    CHECK(back.pixels == img.pixels);
  }
  SUBCASE("16-bit roundtrip") {
    io::PgmImage img;
    img.rows = 2;
    img.cols = 2;
    img.maxval = 65535;
    img.pixels = {0, 1, 32768, 65535};
    io::write_pgm(tmp.path / "b.pgm", img);
    CHECK(io::read_pgm(tmp.path / "b.pgm").pixels == img.pixels);
  }
  SUBCASE("comments in the header are skipped") {
    io::write_text_atomic(tmp.path / "c.pgm", "P5\n# comment\n2 1\n255\n\x10\x20");
    const io::PgmImage img = io::read_pgm(tmp.path / "c.pgm");
    CHECK(img.cols == 2);
    CHECK(img.pixels == std::vector<std::uint16_t>{0x10, 0x20});
  }
  SUBCASE("non-P5 input is rejected") {
    io::write_text_atomic(tmp.path / "d.pgm", "P2\n2 1\n255\n1 2\n");
    CHECK_THROWS_AS(io::read_pgm(tmp.path / "d.pgm"), io::SchemaError);
  }
  SUBCASE("signal mapping normalizes to [0,1] and quantization inverts it") {
    io::PgmImage img;
    img.rows = 2;
    img.cols = 3;
    img.maxval = 255;
    img.pixels = {0, 31, 64, 127, 200, 255};
    const Signal v = io::pgm_to_signal(img);
    CHECK(v.at(IVec{0, 0}).real() == 0.0);
    CHECK(v.at(IVec{1, 2}).real() == 1.0);
    const io::PgmImage back = io::signal_to_pgm(v, v.box(), img.maxval);
    CHECK(back.pixels == img.pixels);
  }
}

TEST_CASE("pyramid directories") {
  TempDir tmp;
  const TreePlan plan = small_plan();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Box b(IVec{0, 0}, IVec{16, 16});
  std::vector<cdouble> data(256);
  for (auto& x : data) x = cdouble(u(rng), 0.0);
  const Signal v(b, data);
  const Pyramid p = fad(plan, v);
  const fs::path dir = tmp.path / "pyr";
  io::write_pyramid_dir(dir, plan, p);

  SUBCASE("roundtrip restores every leaf") {
    const Pyramid back = io::read_pyramid_dir(dir, plan);
    REQUIRE(back.low.size() == p.low.size());
    REQUIRE(back.high.size() == p.high.size());
    for (const auto& [node, s] : p.low) CHECK(max_abs_diff(back.low.at(node), s) == 0.0);
    for (const auto& [node, s] : p.high) CHECK(max_abs_diff(back.high.at(node), s) == 0.0);
    CHECK(max_abs_diff(far(plan, back), v) <= 1e-10);
  }
  SUBCASE("digest mismatch is rejected") {
    const TreePlan other = [&] {
      ShearletPlanSpec spec;
      spec.shears_2d = {{0, -1}};
      return shearlet_plan(spec);
    }();
    CHECK_THROWS_AS(io::read_pyramid_dir(dir, other), io::MismatchError);
  }
  SUBCASE("unknown manifest versions are rejected") {
    io::json manifest = io::read_manifest(dir);
    manifest["version"] = 3;
    io::write_text_atomic(dir / "manifest.json", io::canonical_json(manifest));
    CHECK_THROWS_AS(io::read_pyramid_dir(dir, plan), io::SchemaError);
  }
  SUBCASE("wrong byte count is rejected") {
    const io::json manifest = io::read_manifest(dir);
    const std::string first = manifest.at("nodes")[0].at("id").get<std::string>();
    std::ofstream f(dir / (first + ".f64"), std::ios::binary | std::ios::trunc);
    f << "xxxxxxxx";
    f.close();
    CHECK_THROWS_AS(io::read_pyramid_dir(dir, plan), io::MismatchError);
  }
}

TEST_CASE("f64 export carries real parts") {
  TempDir tmp;
  const Signal v(Box(IVec{0}, IVec{3}), std::vector<double>{0.5, -1.25, 3.0});
  io::write_f64(tmp.path / "x.f64", v);
  CHECK(io::read_f64(tmp.path / "x.f64") == std::vector<double>{0.5, -1.25, 3.0});
}

TEST_CASE("image roundtrips are lossless before quantization") {
  TempDir tmp;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pix(0, 255);

  std::vector<TreePlan> plans;
  for (int i = 0; i < 5; ++i) {
    ShearletPlanSpec spec;
    const int depth = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < depth; ++j) {
      std::vector<std::int64_t> shears;
      const int count = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < count; ++k) shears.push_back(static_cast<std::int64_t>(rng() % 5) - 2);
      spec.shears_2d.push_back(shears);
    }
    plans.push_back(shearlet_plan(spec));
  }

  int runs = 0;
  for (const TreePlan& plan : plans) {
    for (int i = 0; i < 4; ++i) {
      io::PgmImage img;
      img.rows = 24 + static_cast<std::int64_t>(rng() % 17);
      img.cols = 24 + static_cast<std::int64_t>(rng() % 17);
      img.maxval = 255;
      for (std::int64_t k = 0; k < img.rows * img.cols; ++k)
        img.pixels.push_back(static_cast<std::uint16_t>(pix(rng)));

      const Signal v = io::pgm_to_signal(img);
      const fs::path dir = tmp.path / ("rt" + std::to_string(runs));
      io::write_pyramid_dir(dir, plan, fad(plan, v));
      const Signal back = far(plan, io::read_pyramid_dir(dir, plan));
      CHECK(max_abs_diff(back, v) <= 1e-10);  // lossless before quantization
      const io::PgmImage out = io::signal_to_pgm(back, v.box(), img.maxval);
      CHECK(out.pixels == img.pixels);  // bit-identical after quantization
      ++runs;
    }
  }
  CHECK(runs == 20);
}
