#include "doctest.h"
#include "ginibre/errors.hpp"
#include "ginibre/verify.hpp"
#include "json.hpp"

using namespace ginibre;

TEST_CASE("identity suite passes and each block runs alone") {
  const auto full = run_verify();
  CHECK(full.all_pass);
  for (const auto& c : full.checks) {
    INFO(c.block << "/" << c.name << " error " << c.error);
    CHECK(c.pass);
  }
  for (const auto& block : verify_blocks()) {
    VerifyOptions o;
    o.only = block;
    const auto r = run_verify(o);
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.block == block);
    // Results do not depend on which blocks ran.
    for (const auto& c : r.checks) {
      for (const auto& f : full.checks) {
        if (f.block == c.block && f.name == c.name) CHECK(f.error == c.error);
      }
    }
  }
}

TEST_CASE("perturbation is detected") {
  VerifyOptions o;
  o.perturbation = 1e-3;
  CHECK_FALSE(run_verify(o).all_pass);
  o.only = std::string("in_p");
  CHECK_FALSE(run_verify(o).all_pass);
  o.only = std::string("bogus");
  CHECK_THROWS_AS(run_verify(o), InvalidArgument);
}

TEST_CASE("report JSON") {
  VerifyOptions o;
  o.only = std::string("cramer");
  const auto j = nlohmann::json::parse(run_verify(o).to_json());
  CHECK(j["all_pass"].get<bool>());
  CHECK(j["checks"].size() >= 1);
  CHECK(j["checks"][0]["block"] == "cramer");
}
