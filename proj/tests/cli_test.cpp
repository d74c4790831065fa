#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <collapse/commands.hpp>

using namespace collapse;

namespace {

  RunConfig config(std::string group) {
    RunConfig cfg;
    cfg.group = std::move(group);
    cfg.threads = 1;
    return cfg;
  }

  std::filesystem::path scratch(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / "collapse_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
  }

  //! Runs the schema validator on a report; true on success.
  bool schema_valid(ojson const& report, std::string const& name) {
    auto path = scratch(name + ".json");
    std::ofstream(path) << report.dump(2);
    std::string const cmd = std::string("python3 ") + COLLAPSE_VALIDATOR + " "
                            + path.string() + " > /dev/null";
    return std::system(cmd.c_str()) == 0;
  }

  std::vector<std::size_t> dims_of(ojson const& j) {
    return j["dims"].get<std::vector<std::size_t>>();
  }

}  // namespace

TEST(Caps, ParsesAndRejects) {
  Caps c = parse_caps("order=1000,rows=50,work=7");
  EXPECT_EQ(c.order, 1000u);
  EXPECT_EQ(c.rows, 50u);
  EXPECT_EQ(c.work, 7u);
  EXPECT_EQ(c.degree, 12u);
  EXPECT_EQ(parse_caps("").subgroup, kDefaultOrderCap);
  EXPECT_THROW(parse_caps("rows"), InputError);
  EXPECT_THROW(parse_caps("rows=0"), InputError);
  EXPECT_THROW(parse_caps("rows=abc"), InputError);
  EXPECT_THROW(parse_caps("colour=3"), InputError);
}

TEST(Classes, TablesAndErrors) {
  auto out = cmd_classes(config("S4"));
  EXPECT_EQ(out.json["schema"], "collapse.classes");
  ASSERT_EQ(out.json["classes"].size(), 5u);
  EXPECT_EQ(out.json["group"]["order"], 24);
  EXPECT_TRUE(schema_valid(out.json, "classes_s4"));
  EXPECT_EQ(cmd_classes(config("trivial")).json["classes"].size(), 1u);
  EXPECT_NE(out.text.find("4a"), std::string::npos);

  auto bad = scratch("bad.group");
  std::ofstream(bad) << "degree 3\n(1,2,4)\n";
  EXPECT_THROW(cmd_classes(config(bad.string())), InputError);
  EXPECT_THROW(cmd_classes(config("NoSuchGroup")), InputError);

  auto good = scratch("s3.group");
  std::ofstream(good) << "# S3\ndegree 3\n(1,2)\n(1,2,3)\n";
  EXPECT_EQ(cmd_classes(config(good.string())).json["group"]["order"], 6);

  RunConfig capped = config("S5");
  capped.caps.order = 100;
  EXPECT_THROW(cmd_classes(capped), CapExceeded);
}

TEST(Analyze, D3Report) {
  auto out = cmd_analyze(config("D3"));
  auto const& j = out.json;
  EXPECT_EQ(j["schema"], "collapse.analyze");
  ASSERT_EQ(j["classes"].size(), 3u);
  EXPECT_TRUE(j["timing"].is_null());
  EXPECT_TRUE(schema_valid(j, "analyze_d3"));
  std::vector<std::string> keys;
  for (auto const& [k, v] : j.items()) {
    keys.push_back(k);
  }
  ASSERT_GE(keys.size(), 3u);
  EXPECT_EQ(keys[0], "schema");
  EXPECT_EQ(keys[1], "schema_version");
  EXPECT_EQ(keys[2], "tool_version");

  RunConfig quick = config("D3");
  quick.probe_hilbert = false;
  auto q = cmd_analyze(quick);
  for (auto const& c : q.json["classes"]) {
    EXPECT_TRUE(c["hilbert_probes"].empty());
  }
  EXPECT_TRUE(schema_valid(q.json, "analyze_d3_quick"));

  RunConfig timed = config("S3");
  timed.timing = true;
  auto t = cmd_analyze(timed);
  EXPECT_TRUE(t.json["timing"].is_object());
  EXPECT_TRUE(schema_valid(t.json, "analyze_s3_timed"));
}

TEST(Nichols, GoldensAndErrors) {
  RunConfig cfg = config("S3");
  auto a = cmd_nichols(cfg, "abelian:1", "constant:-1");
  EXPECT_EQ(dims_of(a.json), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(a.json["total"], 2);
  EXPECT_EQ(a.json["status"], "complete");
  EXPECT_TRUE(schema_valid(a.json, "nichols_a"));

  auto b = cmd_nichols(cfg, "dihedral:3", "constant:-1", 2);
  EXPECT_EQ(dims_of(b.json), (std::vector<std::size_t>{1, 3, 4, 3, 1, 0}));
  EXPECT_EQ(b.json["total"], 12);
  EXPECT_EQ(b.json["matrix"]["dimension"], 9);
  EXPECT_TRUE(schema_valid(b.json, "nichols_b"));

  cfg.caps.degree = 5;
  auto c = cmd_nichols(cfg, "abelian:3", "constant:1");
  EXPECT_EQ(dims_of(c.json), (std::vector<std::size_t>{1, 3, 6, 10, 15, 21}));
  EXPECT_EQ(c.json["status"], "truncated");
  EXPECT_EQ(c.json["truncated_by"], "degree");
  EXPECT_TRUE(c.json["total"].is_null());
  EXPECT_TRUE(schema_valid(c.json, "nichols_c"));

  auto lit = cmd_nichols(config("S3"), R"({"size": 1, "table": [[0]]})",
                         R"({"values": [["-1"]]})");
  EXPECT_EQ(dims_of(lit.json), (std::vector<std::size_t>{1, 1, 0}));

  // q_{0,0} = 2, others 1: the identity fails on D3
  std::string const bad
      = R"({"values": [["2", "1", "1"], ["1", "1", "1"], ["1", "1", "1"]]})";
  EXPECT_THROW(cmd_nichols(cfg, "dihedral:3", bad), InputError);
  EXPECT_THROW(cmd_nichols(cfg, "dihedral:4", "constant:-1"), InputError);
  EXPECT_THROW(cmd_nichols(cfg, "nonsense", "constant:-1"), InputError);
  EXPECT_THROW(cmd_nichols(cfg, "dihedral:3", "constant:0"), InputError);
  EXPECT_THROW(cmd_nichols(cfg, R"({"size": 2, "table": [[0, 0], [1, 1]]})",
                           "constant:1"),
               InputError);
}

TEST(Typed, Selectors) {
  auto s3 = cmd_typed(config("S3"), "2a");
  ASSERT_EQ(s3.json["results"].size(), 1u);
  EXPECT_TRUE(s3.json["results"][0]["witness"].is_null());
  EXPECT_EQ(s3.json["results"][0]["complete"], true);
  EXPECT_TRUE(schema_valid(s3.json, "typed_s3"));

  auto a5 = cmd_typed(config("A5"), "all");
  EXPECT_EQ(a5.json["results"].size(), 5u);
  EXPECT_TRUE(schema_valid(a5.json, "typed_a5"));

  auto s5 = cmd_typed(config("S5"), "4a");
  EXPECT_FALSE(s5.json["results"][0]["witness"].is_null());
  EXPECT_NE(s5.text.find("r = (2,3,4,5)"), std::string::npos);

  auto id = cmd_typed(config("S4"), "1a");
  EXPECT_TRUE(id.json["results"][0]["witness"].is_null());
  EXPECT_THROW(cmd_typed(config("S4"), "9z"), InputError);
}

TEST(Guard, ExitCodes) {
  std::ostringstream err;
  EXPECT_EQ(run_guarded([] {}, err), kExitOk);
  EXPECT_EQ(run_guarded([] { throw InputError("x"); }, err), kExitInput);
  EXPECT_EQ(run_guarded([] { throw CapExceeded("x"); }, err), kExitCap);
  EXPECT_EQ(run_guarded([] { throw WorkCapExceeded("x"); }, err), kExitCap);
  EXPECT_EQ(run_guarded([] { throw InvariantViolation("x"); }, err), kExitInvariant);
  EXPECT_NE(err.str().find("error: x"), std::string::npos);
  EXPECT_NE(err.str().find("cap exceeded: x"), std::string::npos);
}
