#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jetvar/commands.hpp"
#include "json.hpp"

using namespace jetvar;

namespace {

ModelFile load(const std::string& name) {
  std::ifstream in(std::string(JETVAR_MODELS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return parse_model(s.str());
}

Report run(const ModelFile& m, std::string cmd, std::optional<std::string> lag = {},
           std::optional<std::string> sym = {}) {
  CommandRequest req;
  req.command = std::move(cmd);
  req.lagrangian = std::move(lag);
  req.symmetry = std::move(sym);
  return run_command(m, req);
}

std::string text_of(const Report& r, const std::string& key) {
  const auto* v = r.get(key);
  REQUIRE(v);
  return std::get<std::string>(*v);
}

}  // namespace

TEST_CASE("el on the wave model") {
  auto m = load("wave.model");
  Report r = run(m, "el");
  std::string out = render(r, OutputFormat::Text);
  CHECK(out.find("el: (-u[t,t] + u[x,x])*theta[u]^dt^dx\n") != std::string::npos);
  CHECK(r.failures.empty());
  CHECK(render(r, OutputFormat::Latex).find("\\left(-u_{tt} + u_{xx}\\right)\\,\\theta^{u}\\wedge dt\\wedge dx") !=
        std::string::npos);
}

TEST_CASE("noether on the rotation model") {
  auto m = load("rotation.model");
  Report r = run(m, "noether", "L", "X");
  CHECK(text_of(r, "kind") == "exact");
  auto j = nlohmann::json::parse(render(r, OutputFormat::Json));
  CHECK(j["schema"] == 1);
  CHECK(j["kind"] == "exact");
  CHECK(j["current"] == "u*v[x] - v*u[x]");
  CHECK(j["sigma"].is_null());
  CHECK(j["residuals"]["noether_identity"] == "0");
  for (const char* key : {"kind", "lie", "sigma", "current", "residuals", "bounds_used", "completeness_flags"})
    CHECK(j.contains(key));
}

TEST_CASE("master-check passes") {
  auto m = load("rotation.model");
  Report r = run(m, "master-check");
  CHECK(text_of(r, "verdict") == "PASS");
  CHECK(render(r, OutputFormat::Text).find("master_identity: 0") != std::string::npos);
}

TEST_CASE("helmholtz json obstruction") {
  auto m = load("advection.model");
  CommandRequest req{"helmholtz", {}, {}, "diffusion", {}, {}, {}};
  auto j = nlohmann::json::parse(render(run_command(m, req), OutputFormat::Json));
  CHECK(j["verdict"] == "variational");
  CHECK(j["obstruction"].is_null());
  req.source = "advection";
  auto k = nlohmann::json::parse(render(run_command(m, req), OutputFormat::Json));
  CHECK(k["verdict"] == "not variational");
  CHECK(k["obstruction"].is_string());
}

TEST_CASE("opaque atoms raise the completeness warning") {
  auto m = load("pendulum.model");
  for (const char* cmd : {"el", "noether", "master-check", "helmholtz"}) {
    Report r = run(m, cmd);
    CHECK(render(r, OutputFormat::Text).find("WARNING: zero-test incomplete") != std::string::npos);
  }
  Report clean = run(load("wave.model"), "el");
  CHECK(render(clean, OutputFormat::Text).find("WARNING") == std::string::npos);
}

TEST_CASE("usage errors") {
  auto m = load("free_scalar.model");
  CHECK_THROWS_AS(run(m, "noether"), UsageError);
  CHECK_THROWS_AS(run(m, "noether", "L", "nope"), UsageError);
  CHECK_THROWS_AS(run(m, "el", "M"), UsageError);
  CHECK_THROWS_AS(run(m, "frobnicate"), UsageError);
  CommandRequest req{"potential", {}, {}, {}, "exact", {}, 0};
  CHECK_THROWS_AS(run_command(m, req), UsageError);
  CHECK_THROWS_AS(run(load("advection.model"), "decompose"), UsageError);
}

TEST_CASE("negative verdicts are ordinary reports") {
  auto m = load("free_scalar.model");
  Report r = run(m, "noether", "L", "scale");
  CHECK(text_of(r, "kind") == "none-at-order");
  CHECK(r.failures.empty());
  CommandRequest req{"potential", {}, {}, {}, "witness", {}, {}};
  CHECK(text_of(run_command(m, req), "verdict") == "not exact");
  CHECK(text_of(run(m, "trivial"), "verdict") == "non-trivial");
}

TEST_CASE("every bundled model prints back to itself") {
  for (const auto& entry : std::filesystem::directory_iterator(JETVAR_MODELS_DIR)) {
    if (entry.path().extension() != ".model") continue;
    ModelFile m = load(entry.path().filename().string());
    std::string once = print_model(m);
    CHECK(parse_model(once) == m);
    CHECK(print_model(parse_model(once)) == once);
  }
}
