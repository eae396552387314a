#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "pconvex/cli.hpp"
#include "pconvex/io.hpp"

using namespace pconvex;
namespace fs = std::filesystem;

namespace {

const std::string kData = PCONVEX_TEST_DATA;

struct Run {
  CommandResult result;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.result = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "pconvex_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const Json& j) { write_text_file(p.string(), j.dump()); }

}  // namespace

TEST_CASE("hilbert dist prints the distance") {
  const Run r = run({"hilbert", "dist", "--domain", kData + "/disk.json", "--x", "0,0", "--y", "0.5,0"});
  CHECK(r.result.exit_code == 0);
  CHECK(r.out == "0.549306\n");
}

TEST_CASE("unbounded domains fail validation with a witness") {
  const fs::path report = scratch() / "halfplane.json";
  const Run r = run({"domain", "validate", "--domain", kData + "/halfplane.json", "--out", report.string()});
  CHECK(r.result.exit_code == 1);
  CHECK(r.result.report_path == report.string());
  const Json j = Json::parse(slurp(report));
  CHECK(j["error"]["code"] == "not-properly-convex");
  CHECK(!j["error"]["witness"].is_null());
}

TEST_CASE("usage and format errors exit with 2") {
  CHECK(run({"bogus"}).result.exit_code == 2);
  CHECK(run({"hilbert"}).result.exit_code == 2);
  CHECK(run({"hilbert", "dist", "--domain", kData + "/disk.json", "--x", "0,0"}).result.exit_code == 2);
  CHECK(run({"hilbert", "dist", "--domain", "/nonexistent.json", "--x", "0,0", "--y", "1,0"}).result.exit_code == 2);

  const fs::path nan = scratch() / "nan.json";
  write_text_file(nan.string(), R"({"backend": {"type": "ellipsoid", "center": [0, 1e999], "shape": [[1, 0], [0, 1]]}})");
  CHECK(run({"hilbert", "dist", "--domain", nan.string(), "--x", "0,0", "--y", "0.5,0"}).result.exit_code == 2);
  CHECK(run({"hilbert", "dist", "--domain", kData + "/disk.json", "--x", "0,zero", "--y", "0.5,0"}).result.exit_code == 2);
}

TEST_CASE("squashed ellipse sequence to CSV") {
  Json domains = Json::array();
  for (int k = 1; k <= 8; ++k) {
    domains.push_back({{"chart", {0, 0, 1}},
                       {"backend", {{"type", "ellipsoid"}, {"center", {0, 0}}, {"shape", {{1, 0}, {0, 1.0 / (k * k)}}}}}});
  }
  const fs::path seq = scratch() / "squash.json";
  write(seq, {{"generators", Json::array()}, {"domains", domains}});
  const fs::path csv = scratch() / "report.csv";
  const Run r = run({"normalize", "sequence", "--seq", seq.string(), "--out", csv.string()});
  REQUIRE(r.result.exit_code == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,norm_D,residual,max_entry,max_entry_raw,domain_residual");
  int k = 1;
  while (std::getline(lines, line)) {
    const double norm_d = std::stod(line.substr(line.find(',') + 1));
    CHECK(norm_d == doctest::Approx(2.0 * k).epsilon(1e-8));
    ++k;
  }
  CHECK(k == 9);
}

TEST_CASE("reports are deterministic") {
  const fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  for (const auto& p : {a, b}) {
    const Run r = run({"vinberg", "volume", "--domain", kData + "/disk.json", "--v", "0.1,0,1", "--estimator",
                       "quadrature", "--samples", "2000", "--seed", "7", "--out", p.string()});
    REQUIRE(r.result.exit_code == 0);
  }
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("every command group runs") {
  const fs::path dir = scratch();
  const std::string disk = kData + "/disk.json";
  const fs::path gens = dir / "gens.json";
  write(gens, {{"generators", {"a"}}, {"terms", {{to_json(fixtures::boost(0.5))}}}});
  const fs::path mesh = dir / "mesh.json";
  write(mesh, {{"vertices", {{-1, 2}, {0, 1}, {1, 2}}}, {"simplices", {{0, 1}, {1, 2}}}});
  const fs::path matrix = dir / "matrix.json";
  write(matrix, {{1, 0}, {0, 2}});
  const fs::path square = dir / "square.json";
  write(square, {{"backend", {{"type", "hpoly"}, {"normals", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}, {"offsets", {1, 1, 1, 1}}}}});

  const std::vector<std::vector<std::string>> commands{
      {"domain", "dual", "--domain", square.string()},
      {"domain", "flats", "--domain", square.string()},
      {"hilbert", "geodesic", "--domain", disk, "--x", "0,0", "--y", "0.5,0.2", "--k", "4"},
      {"hilbert", "delta", "--domain", disk, "--a", "0.5,0", "--b", "-0.3,0.4", "--c", "-0.3,-0.4", "--threads", "2"},
      {"vinberg", "grad", "--domain", disk, "--v", "0,0,1"},
      {"vinberg", "theta", "--domain", disk, "--v", "0.2,0,1"},
      {"vinberg", "center", "--domain", square.string()},
      {"vinberg", "surface", "--domain", disk, "--count", "8"},
      {"normalize", "moments", "--domain", square.string()},
      {"normalize", "isotropic", "--domain", disk},
      {"normalize", "boxcheck", "--matrix", matrix.string(), "--k", "1"},
      {"group", "aut", "--domain", disk, "--gens", gens.string()},
      {"group", "dynamics", "--domain", disk, "--gens", gens.string()},
      {"group", "orbit", "--gens", gens.string(), "--point", "0,0,1", "--length", "3", "--domain", disk},
      {"group", "dirichlet", "--domain", disk, "--gens", gens.string(), "--x", "0,0,1", "--length", "1"},
      {"plconvex", "check", "--mesh", mesh.string()},
      {"plconvex", "certify", "--mesh", mesh.string(), "--adjacent-only"},
      {"plconvex", "radius", "--mesh", mesh.string(), "--trials", "10"},
      {"plconvex", "outward", "--mesh", mesh.string(), "--t", "1.5"},
      {"plconvex", "build", "--domain", disk, "--budget", "19"},
  };
  for (auto args : commands) {
    const fs::path out = dir / "out.json";
    args.push_back("--out");
    args.push_back(out.string());
    const Run r = run(args);
    INFO(args[0] << " " << args[1] << ": " << r.err);
    CHECK(r.result.exit_code == 0);
    CHECK(!r.out.empty());
    CHECK(Json::parse(slurp(out))["command"] == args[0] + " " + args[1]);
  }
}

TEST_CASE("figures for planar charts") {
  const fs::path svg = scratch() / "geodesic.svg";
  const Run r = run({"hilbert", "geodesic", "--domain", kData + "/disk.json", "--x", "-0.5,0", "--y", "0.5,0.5",
                     "--out", svg.string()});
  REQUIRE(r.result.exit_code == 0);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);

  const fs::path fallback = scratch() / "moments.svg";
  const Run m = run({"normalize", "moments", "--domain", kData + "/disk.json", "--out", fallback.string()});
  CHECK(m.result.exit_code == 0);
  CHECK(m.result.warnings.size() == 1);
}

TEST_CASE("computation errors carry the module code") {
  const fs::path gens = scratch() / "rot.json";
  write(gens, {{"generators", {"a"}}, {"terms", {{to_json(fixtures::rotation_z(0.4))}}}});
  const fs::path out = scratch() / "dyn.json";
  const Run r = run({"group", "dynamics", "--domain", kData + "/disk.json", "--gens", gens.string(), "--out", out.string()});
  CHECK(r.result.exit_code == 1);
  CHECK(Json::parse(slurp(out))["error"]["code"] == "not-hyperbolic");
}
