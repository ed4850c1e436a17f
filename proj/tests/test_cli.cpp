#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using gabnc::cli::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gabnc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gabnc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gabnc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

// Same shape, same strings and booleans, numbers within a relative tolerance.
bool close(const Json& a, const Json& b, std::string path, std::string& why) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)})) return true;
    why = path + ": " + a.dump() + " vs " + b.dump();
    return false;
  }
  if (a.type() != b.type()) {
    why = path + ": type differs";
    return false;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      why = path + ": key count differs";
      return false;
    }
    auto ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
      if (ia.key() != ib.key()) {
        why = path + ": key order differs at " + ia.key();
        return false;
      }
      if (!close(ia.value(), ib.value(), path + "." + ia.key(), why)) return false;
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      why = path + ": length differs";
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!close(a[i], b[i], path + "[" + std::to_string(i) + "]", why)) return false;
    return true;
  }
  if (a != b) why = path + ": " + a.dump() + " vs " + b.dump();
  return a == b;
}

struct Golden {
  const char* file;
  std::vector<std::string> args;
  int code;
};

const std::vector<Golden>& goldens() {
  static const std::vector<Golden> g{
      {"frame_bounds.json", {"frame-bounds", "--group", "Z12", "--lattice", "rect:2,2", "--window", "gaussian"}, 0},
      {"verify_weight.json", {"verify-weight", "--weight", "poly:1", "--group", "Z8"}, 1},
      {"verify_weight_lin.json", {"verify-weight", "--weight", "lin:1", "--group", "Z8"}, 0},
      {"adk_verify.json",
       {"adk-verify", "--k", "3", "--f", "identity", "--weight", "poly:1", "--lattice", "rect:2,2", "--group", "Z8"},
       0},
  };
  return g;
}

}  // namespace

TEST_CASE("command examples and exit codes") {
  const Run fb = run({"frame-bounds", "--group", "Z12", "--lattice", "rect:2,2", "--window", "gaussian"});
  CHECK(fb.code == 0);
  const Json r = Json::parse(fb.out);
  CHECK(r["results"]["frame_bounds"]["lower"].get<double>() > 0.0);
  CHECK(r["results"]["frame_bounds"]["upper"].get<double>() > 0.0);
  CHECK(r["command"] == "frame-bounds");
  CHECK(r["seed"] == 1);
  CHECK(r.contains("conventions"));

  // the torus-metric (1 + d^2)^{1/2} fails submultiplicativity; (1 + d) passes
  const Run vw = run({"verify-weight", "--weight", "poly:1", "--group", "Z8"});
  CHECK(vw.code == 1);
  CHECK(Json::parse(vw.out)["results"]["commutator_C"].get<double>() <= 1.0);
  const Run vl = run({"verify-weight", "--weight", "lin:1", "--group", "Z8"});
  CHECK(vl.code == 0);
  CHECK(Json::parse(vl.out)["results"]["commutator_C"].get<double>() <= 1.0);

  CHECK(run({"adk-verify", "--k", "3", "--f", "identity", "--weight", "poly:1", "--lattice", "rect:2,2", "--group", "Z8"}).code == 0);
  CHECK(run({"stc-constants", "--f", "torus-sqrt", "--weight", "poly:1", "--lattice", "rect:2,2"}).code == 0);
  CHECK(run({"nc-torus", "--radius", "2", "--samples", "3"}).code == 0);
  CHECK(run({"solenoid", "--p", "2", "--alpha", "1", "--beta", "1/2", "--height", "2", "--window", "gaussian"}).code == 0);
  CHECK(run({"bimodule-check", "--group", "Z8", "--lattice", "rect:2,4"}).code == 0);
  CHECK(run({"module-frame-check", "--parseval"}).code == 0);
  CHECK(run({"qck-certify", "--parseval", "--k", "2", "--weight", "poly:1"}).code == 0);
}

TEST_CASE("mathematical failures exit 1 with a report") {
  const Run r = run({"dual-window", "--group", "Z12", "--lattice", "rect:4,4"});
  CHECK(r.code == 1);
  const Json j = Json::parse(r.out);
  CHECK(j["verdict"]["passed"] == false);
  CHECK(j["results"]["error"].get<std::string>().find("not a frame") != std::string::npos);
  CHECK(run({"frame-bounds", "--group", "Z12", "--lattice", "rect:4,4"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frame-bounds", "--group", "Q8"}).code == 2);
  CHECK(run({"frame-bounds", "--lattice", "rect:5,5"}).code == 2);
  CHECK(run({"adk-verify", "--k"}).code == 2);
  CHECK(run({"qck-certify", "--real-line", "64,8", "--weight", "lin:1"}).code == 2);
  const fs::path bad = scratch("bad_window.csv");
  {
    std::ofstream out(bad);
    out << "re,im\n1,0\nnot,a number\n";
  }
  const Run r = run({"frame-bounds", "--window", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(run({"frame-bounds", "--window", scratch("missing.csv").string()}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("report roundtrip and tampering") {
  const Run r = run({"bimodule-check", "--seed", "9"});
  REQUIRE(r.code == 0);
  CHECK(gabnc::cli::report_roundtrip(r.out).ok());

  std::string tampered = r.out;
  const auto pos = tampered.find("\"passed\": true");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 14, "\"passed\": false");
  const auto rt = gabnc::cli::report_roundtrip(tampered);
  CHECK(rt.parsed);
  CHECK_FALSE(rt.checksum_ok);
  CHECK(rt.message.find("checksum mismatch") != std::string::npos);

  const auto empty = gabnc::cli::report_roundtrip("");
  CHECK_FALSE(empty.parsed);
  CHECK(empty.message.find("parse error") != std::string::npos);

  const fs::path good = scratch("good.json"), bad = scratch("tampered.json"), blank = scratch("empty.json");
  std::ofstream(good, std::ios::binary) << r.out;
  std::ofstream(bad, std::ios::binary) << tampered;
  std::ofstream(blank, std::ios::binary) << "";
  CHECK(run({"report-check", good.string()}).code == 0);
  CHECK(run({"report-check", bad.string()}).code == 1);
  CHECK(run({"report-check", blank.string()}).code == 2);
}

TEST_CASE("same seed, same report") {
  const std::vector<std::string> args{"module-frame-check", "--group", "Z8", "--lattice", "rect:2,2", "--seed", "4"};
  CHECK(run(args).out == run(args).out);
  const Run other = run({"module-frame-check", "--group", "Z8", "--lattice", "rect:2,2", "--seed", "5"});
  CHECK(Json::parse(other.out)["seed"] == 5);
}

TEST_CASE("config files and output locations") {
  const fs::path cfg = scratch("run.toml");
  {
    std::ofstream out(cfg);
    out << "[frame-bounds]\ngroup = \"Z8\"\nlattice = \"rect:2,1\"\n";
  }
  const Run r = run({"--config", cfg.string(), "frame-bounds"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["config"]["group"] == "Z8");
  CHECK(j["config"]["lattice"] == "rect:2,1");

  const fs::path out = scratch("explicit.json");
  fs::remove(out);
  const Run w = run({"frame-bounds", "--out", out.string()});
  CHECK(w.code == 0);
  CHECK(fs::exists(out));
  CHECK(gabnc::cli::report_roundtrip(slurp(out)).ok());

  const fs::path dir = scratch("outdir");
  fs::create_directories(dir);
  fs::remove(dir / "nc-torus.json");
  setenv("GABNC_OUTPUT_DIR", dir.string().c_str(), 1);
  const Run e = run({"nc-torus", "--radius", "1", "--samples", "1"});
  unsetenv("GABNC_OUTPUT_DIR");
  CHECK(e.code == 0);
  CHECK(fs::exists(dir / "nc-torus.json"));
}

TEST_CASE("saved windows load back") {
  const std::string prefix = scratch("parseval").string();
  const Run r = run({"parseval-window", "--group", "Z12", "--lattice", "rect:2,2", "--save", prefix});
  REQUIRE(r.code == 0);
  const Run again = run({"frame-bounds", "--group", "Z12", "--lattice", "rect:2,2", "--window", prefix + "_0.csv"});
  CHECK(again.code == 0);
  const Json j = Json::parse(again.out);
  CHECK(j["results"]["frame_bounds"]["parseval_residual"].get<double>() <= 1e-10);
}

TEST_CASE("golden reports") {
  const fs::path dir = GABNC_GOLDEN_DIR;
  for (const Golden& g : goldens()) {
    CAPTURE(g.file);
    const std::string text = slurp(dir / g.file);
    REQUIRE_FALSE(text.empty());
    CHECK(gabnc::cli::report_roundtrip(text).ok());
    const Run r = run(g.args);
    CHECK(r.code == g.code);
    std::string why;
    CHECK_MESSAGE(close(Json::parse(text), Json::parse(r.out), "", why), why);
  }
}
