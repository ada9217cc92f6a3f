#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypergm/cli.hpp"
#include "hypergm/errors.hpp"
#include "hypergm/fixtures.hpp"
#include "hypergm/json_io.hpp"

using namespace hypergm;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("hypergm_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

const std::string kWeights = R"({"a1": "1/3", "a2": "1/7", "a3": "1/5", "ah": "-1/2"})";

}  // namespace

TEST_CASE("fixture accessor") {
  const Fixtures& fx = fixtures();
  CHECK(fx.example1.basis == std::vector<IndexSet>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(fx.ceva.basis == std::vector<IndexSet>{{1, 2}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {3, 5}});
  Matrix<WeightExpr> h1(3, 3);
  h1(0, 0) = WeightExpr::parse("-a1");
  h1(0, 2) = WeightExpr::parse("a1");
  h1(2, 0) = WeightExpr::parse("a3");
  h1(2, 2) = WeightExpr::parse("-a3");
  CHECK(fx.example1.residue("h1") == h1);
  CHECK(fx.example1.discriminant.size() == 6);
  CHECK(fx.ceva.discriminant.size() == 7);
  CHECK(fx.ceva_affine_circuits == std::vector<IndexSet>{{1, 3}, {2, 4}, {1, 2, 5}, {3, 4, 5}});
  CHECK(fx.ceva_broken_circuits == std::vector<IndexSet>{{2, 5}, {4, 5}});
  CHECK_THROWS_AS(fx.example1.residue("h0 + h1"), ValidationError);
  CHECK(bracket_entry(fx.ceva.connection, 0, 0) == "-a2[dh2/h2 - dh0/h0] + (-a1 - a5)[dh1/h1 - dh0/h0]");
}

TEST_CASE("nbc and discriminant commands") {
  const Run text = call({"nbc", "--arrangement", "ceva", "--format", "text"});
  CHECK(text.code == kExitOk);
  CHECK(text.out == "{1,2} {1,4} {1,5} {2,3} {3,4} {3,5}\n");
  CHECK(text.err.empty());

  const Run js = call({"nbc", "--arrangement", "ceva"});
  const json j = json::parse(js.out);
  CHECK(j.at("degree") == 2);
  CHECK(j.at("nbc").size() == 6);
  CHECK(j.at("nbc")[0] == json::array({1, 2}));

  const Run one = call({"nbc", "--arrangement", "ceva", "--degree", "1", "--format", "text"});
  CHECK(one.out == "{1} {2} {3} {4} {5}\n");

  const Run d = call({"discriminant", "--arrangement", "example1", "--format", "text"});
  CHECK(d.out == "h2\nh1 - h2\nh1\nh0 - h1\nh0 - h2\nh0\n");
}

TEST_CASE("JSON shapes") {
  const json lat = json::parse(call({"lattice", "--arrangement", "ceva"}).out);
  CHECK(lat.at("levels").size() == 3);
  CHECK(lat.at("levels")[2].size() == 7);

  const json circ = json::parse(call({"circuits", "--arrangement", "ceva"}).out);
  CHECK(circ.at("circuits")[0].at("support") == json::array({0, 1, 3}));
  CHECK(circ.at("circuits")[0].at("dependency") == json::array({"1", "-1", "-1"}));

  const json rel = json::parse(call({"os-relations", "--arrangement", "ceva"}).out);
  CHECK(rel.at("relations").size() == 4);
  CHECK(rel.at("relations")[2].at("kind") == "boundary");

  const json bad = json::parse(call({"bad-loci", "--arrangement", "ceva"}).out);
  CHECK(bad.at("bad_loci").size() == 4);

  const std::string w = temp_file("w.json", kWeights);
  const json dims = json::parse(call({"aomoto-dims", "--arrangement", "example1", "--weights", w}).out);
  CHECK(dims.at("dims") == json::array({0, 0, 1}));

  const json gm = json::parse(call({"gauss-manin", "--arrangement", "example1"}).out);
  const GMConnection back = connection_from_json(gm);
  CHECK(back.basis.size() == 3);
  CHECK(back.components.size() == 6);

  const json mono = json::parse(call({"monodromy", "--arrangement", "example1", "--weights", w, "--component", "h1"}).out);
  CHECK(mono.at("method") == "both");
  REQUIRE(mono.at("matrix").size() == 3);
  CHECK(mono.at("matrix")[1][1] == json::array({"1", "0"}));
  CHECK(mono.at("component") == "h1");
}

TEST_CASE("exit codes and error JSON") {
  const Run missing = call({"nbc", "--arrangement", "no/such/file.json"});
  CHECK(missing.code == kExitValidation);
  const json e = json::parse(missing.err);
  CHECK(e.at("exit_code") == 2);
  CHECK(e.at("error") == "validation");
  CHECK(missing.out.empty());

  CHECK(call({}).code == kExitValidation);
  CHECK(call({"nbc", "--arrangement", "ceva", "--format", "xml"}).code == kExitValidation);
  CHECK(call({"verify-paper", "nope"}).code == kExitValidation);
  CHECK(call({"monodromy", "--arrangement", "example1", "--component", "h1"}).code == kExitValidation);
  CHECK(call({"nbc", "--arrangement", temp_file("bad.json", "{\"n\": 2, \"hyperplanes\": [[1, 0]]}")}).code ==
        kExitValidation);

  const std::string w = temp_file("w.json", kWeights);
  const Run absent = call({"monodromy", "--arrangement", "example1", "--weights", w, "--component", "h0 + h1"});
  CHECK(absent.code == kExitValidation);
  CHECK(json::parse(absent.err).at("message").get<std::string>().find("available") != std::string::npos);

  const std::string resonant = temp_file("r.json", R"({"a1": "1", "a2": "1/7", "a3": "1/5", "ah": "-1/2"})");
  const Run res = call({"aomoto-dims", "--arrangement", "example1", "--weights", resonant});
  CHECK(res.code == kExitResonance);
  CHECK(json::parse(res.err).at("error") == "resonance");

  // The h1 residue has eigenvalues 0, 0, -a1 - a3; a1 = 4/5 makes the gap -1.
  const std::string gap = temp_file("g.json", R"({"a1": "4/5", "a2": "1/7", "a3": "1/5", "ah": "-1/2"})");
  CHECK(call({"monodromy", "--arrangement", "example1", "--weights", gap, "--component", "h1"}).code == kExitResonance);
}

TEST_CASE("output file and determinism") {
  const auto path = std::filesystem::temp_directory_path() / "hypergm_test_out.json";
  std::filesystem::remove(path);
  const Run r = call({"gauss-manin", "--arrangement", "ceva", "--output", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const std::string first((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(first == call({"gauss-manin", "--arrangement", "ceva"}).out);
  CHECK(call({"gauss-manin", "--arrangement", "ceva", "--seed", "5"}).out == first);
  const std::string w = temp_file("w.json", kWeights);
  const std::vector<std::string> mono{"monodromy", "--arrangement", "example1", "--weights", w, "--component", "h0 - h1"};
  CHECK(call(mono).out == call(mono).out);
}

TEST_CASE("arrangement files round-trip") {
  const std::string body = to_json(fixtures().ceva.arrangement).dump();
  const std::string p = temp_file("ceva.json", body);
  CHECK(call({"nbc", "--arrangement", p, "--format", "text"}).out == "{1,2} {1,4} {1,5} {2,3} {3,4} {3,5}\n");
  CHECK(arrangement_from_json(json::parse(body)).forms() == fixtures().ceva.arrangement.forms());
}
