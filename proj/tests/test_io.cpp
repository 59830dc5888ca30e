#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "fixtures.hpp"
#include "toric/cli.hpp"

using namespace toric;
using namespace fixtures;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "toric_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

std::string where_of(const std::string& text) {
  try {
    fan_from_json(Json::parse(text));
  } catch (const ParseError& e) {
    return e.where;
  }
  return "no error";
}

// Every number in the document must be a JSON integer; fractions come as "p/q".
void expect_exact(const Json& j) {
  if (j.is_number()) {
    EXPECT_TRUE(j.is_number_integer()) << j.dump();
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, std::regex("-?[0-9]+[./][0-9]+"))) {
      EXPECT_EQ(s.find('.'), std::string::npos) << s;
      Rational q(s);
      EXPECT_EQ(q.get_str(), s) << "fraction not reduced";
    }
  }
  if (j.is_structured())
    for (const auto& x : j) expect_exact(x);
}

}  // namespace

TEST(Json, FanRoundTrip) {
  for (const Fan& f : {p2(), hirzebruch(3), p1xp1xp1(), blowup_p2()}) {
    Json j = to_json(f);
    EXPECT_EQ(fan_from_json(Json::parse(j.dump())), f);
  }
}

TEST(Json, LargeIntegersBecomeStrings) {
  Integer big = Integer(1) << 60;
  Fan f(2, {make_vector({1, 0}), LatticeVector{big + 1, Integer(-1)}, make_vector({-1, 0})}, {{0, 1}, {1, 2}});
  Json j = to_json(f);
  EXPECT_TRUE(j["rays"][1][0].is_string());
  EXPECT_EQ(j["rays"][1][0].get<std::string>(), "1152921504606846977");
  EXPECT_TRUE(j["rays"][1][1].is_number_integer());
  EXPECT_EQ(fan_from_json(Json::parse(j.dump())), f);
  EXPECT_TRUE(to_json(Integer(Integer(1) << 53)).is_number_integer());
  EXPECT_TRUE(to_json(Integer(-(Integer(1) << 53) - 1)).is_string());
}

TEST(Json, RationalsAreReducedStrings) {
  EXPECT_EQ(to_json(Rational(6, 4)).get<std::string>(), "3/2");
  EXPECT_EQ(to_json(Rational(-8, 4)).get<long>(), -2);
}

TEST(Json, ErrorsCarryLocations) {
  EXPECT_EQ(where_of(R"({"rank":2,"rays":[],"max_cones":[],"colour":1})"), "/colour");
  EXPECT_EQ(where_of(R"({"rank":2,"rays":[]})"), "/max_cones");
  EXPECT_EQ(where_of(R"({"rank":-2,"rays":[],"max_cones":[]})"), "/rank");
  EXPECT_EQ(where_of(R"({"rank":2,"rays":[[1,0],["x",1]],"max_cones":[]})"), "/rays/1/0");
  EXPECT_EQ(where_of(R"({"rank":2,"rays":[[1,0],[1.5,1]],"max_cones":[]})"), "/rays/1/0");
  EXPECT_EQ(where_of(R"({"rank":2,"rays":[[1,0]],"max_cones":[[0,-1]]})"), "/max_cones/0/1");
  EXPECT_EQ(where_of(R"([1,2])"), "/");
  EXPECT_EQ(where_of(R"({"rank":2,"rays":[[1,0]],"max_cones":[[0]]})"), "no error");
}

TEST(Json, WhitespaceInsensitive) {
  Fan a = fan_from_json(Json::parse(R"({"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]})"));
  Fan b = fan_from_json(Json::parse("{ \"rank\" : 2,\n \"rays\" : [ [ 1 , 0 ] , [0,1], [ \"-1\", -1] ],\n"
                                    "\t\"max_cones\": [[0,1],[1,2],[0,2]] }"));
  EXPECT_EQ(a, b);
}

TEST(Cli, ClassifyPrintsAdmissiblePairs) {
  auto r = run({"classify", "--dim", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(1,1) (1,2) (1,4) (2,5)\n");
  EXPECT_EQ(run({"classify", "--dim", "2"}).code, 2);
}

TEST(Cli, BuildOutputRevalidates) {
  auto r = run({"build", "wps", "1,1,1,2,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string f = temp_file("wps.json", r.out);
  auto v = run({"validate", f});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(Json::parse(v.out)["valid"].get<bool>());

  auto b = run({"build", "blowup", f, "--center", "0,1"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(run({"validate", temp_file("bl.json", b.out)}).code, 0);

  auto p = run({"build", "bundle", temp_file("p2.json", to_json(p2()).dump()), "--divisor", "2*ray:0"});
  ASSERT_EQ(p.code, 0) << p.err;
  Fan bundle = fan_from_json(Json::parse(p.out));
  EXPECT_EQ(bundle.num_rays(), 5u);
  EXPECT_EQ(run({"validate", temp_file("bundle.json", p.out)}).code, 0);
}

TEST(Cli, OutputIsCanonicalAndDeterministic) {
  auto a = run({"build", "wps", "1,2,3"});
  auto b = run({"build", "wps", "1,2,3"});
  EXPECT_EQ(a.out, b.out);
  Fan f = fan_from_json(Json::parse(a.out));
  EXPECT_EQ(f, canonical_form(f));
}

TEST(Cli, ReportOnWeightedPlane) {
  auto r = run({"report", temp_file("p112.json", to_json(wps_fan({1, 1, 2})).dump())});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  expect_exact(j);
  // Weight test: Gorenstein iff every weight divides h = 4.
  EXPECT_EQ(j["gorenstein_index"].get<long>(), 1);
  EXPECT_TRUE(j["fano"].get<bool>());
  EXPECT_EQ(j["picard_number"].get<long>(), 1);
  // -K = O(h) and the Cartier generator is O(lcm of weights) = O(2).
  EXPECT_EQ(j["fano_index"].get<long>(), 4 / 2);
  EXPECT_EQ(j["singularities"]["minimal_singular_cones"].size(), 1u);
}

TEST(Cli, MoriAndContractOnBlownUpPlane) {
  std::string f = temp_file("blp2.json", to_json(blowup_p2()).dump());
  auto m = run({"mori", f});
  ASSERT_EQ(m.code, 0) << m.err;
  Json rays = Json::parse(m.out);
  expect_exact(rays);
  ASSERT_EQ(rays.size(), 2u);
  std::size_t divisorial = rays[0]["kind"] == "divisorial" ? 0 : 1;
  EXPECT_EQ(rays[divisorial]["exceptional_ray"].get<long>(), 3);
  EXPECT_EQ(rays[1 - divisorial]["kind"], "fiber");

  std::string out = ::testing::TempDir() + "target.json";
  auto c = run({"contract", f, "--ray", std::to_string(divisorial), "--out", out});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(same_fan(read_fan(out), p2()));
  EXPECT_EQ(run({"contract", f, "--ray", "7"}).code, 2);
}

TEST(Cli, SmallContractionIsACheckFailure) {
  std::vector<LatticeVector> rays{make_vector({1, 0, 1}),  make_vector({0, 1, 1}),  make_vector({-1, -1, 1}),
                                  make_vector({1, 0, -1}), make_vector({0, 1, -1}), make_vector({-1, -1, -1})};
  Fan f(3, rays, {{0, 1, 2}, {3, 4, 5}, {0, 1, 4}, {0, 3, 4}, {1, 2, 5}, {1, 4, 5}, {0, 2, 3}, {2, 3, 5}});
  std::string path = temp_file("prism.json", to_json(f).dump());
  Json m = Json::parse(run({"mori", path}).out);
  bool seen = false;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k]["kind"] == "small") {
      seen = true;
      EXPECT_EQ(run({"contract", path, "--ray", std::to_string(k)}).code, 1);
    }
  EXPECT_TRUE(seen);
}

TEST(Cli, CoverOfFakePlane) {
  Fan fake(2, {make_vector({1, 0}), make_vector({1, 3}), make_vector({-2, -3})}, {{0, 1}, {1, 2}, {0, 2}});
  std::string out = ::testing::TempDir() + "cover.json";
  auto r = run({"cover", temp_file("fake.json", to_json(fake).dump()), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["deck_order"].get<long>(), 3);
  EXPECT_EQ(is_wps(read_fan(out)), WeightVector({1, 1, 1}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"report", ::testing::TempDir() + "missing.json"}).code, 2);
  EXPECT_EQ(run({"report", temp_file("broken.json", "{\"rank\": 2,")}).code, 2);

  // Parses, but two cones overlap: validate says so with exit 1, the other
  // verbs refuse with exit 2 and the offending cone.
  std::string overlap = temp_file(
      "overlap.json", R"({"rank":2,"rays":[[1,0],[0,1],[-1,-1],[1,1]],"max_cones":[[0,1],[1,2],[0,2],[0,3]]})");
  auto v = run({"validate", overlap});
  EXPECT_EQ(v.code, 1);
  EXPECT_FALSE(Json::parse(v.out)["valid"].get<bool>());
  auto r = run({"report", overlap});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/max_cones/"), std::string::npos) << r.err;

  EXPECT_EQ(run({"build", "wps", "1,2,2"}).code, 2);
  EXPECT_EQ(run({"build", "wps", "1,x"}).code, 2);
  std::string p = temp_file("p2b.json", to_json(p2()).dump());
  EXPECT_EQ(run({"build", "bundle", p, "--divisor", "2*ray:9"}).code, 2);
  EXPECT_EQ(run({"build", "bundle", p, "--divisor", "2*cone:1"}).code, 2);
  EXPECT_EQ(run({"build", "blowup", p, "--center", "0,"}).code, 2);
}

TEST(Cli, DivisorSyntax) {
  EXPECT_EQ(cli::parse_divisor("2*ray:0", 3), (Divisor{2, 0, 0}));
  EXPECT_EQ(cli::parse_divisor("ray:1 + 3*ray:2 - ray:1", 3), (Divisor{0, 0, 3}));
  EXPECT_EQ(cli::parse_divisor("-2*ray:2", 3), (Divisor{0, 0, -2}));
}

TEST(Cli, ManifestShape) {
  std::vector<ManifestEntry> m{{"s", "c", true, "w"}, {"s", "d", false, ""}};
  Json j = cli::manifest_json(m);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0].dump(), R"({"suite":"s","check":"c","status":"pass","witness":"w"})");
  EXPECT_EQ(j[1]["status"], "fail");
}
