#include <doctest.h>

#include "caidgeo/report.hpp"
#include "caidgeo/specfile.hpp"

using namespace caidgeo;

TEST_CASE("classical spec file") {
  std::string text = R"({
    "version": 1,
    "kind": "classical",
    "name": "noisy-z",
    "matrix": [[0.9, 0.1], [0.0, 1.0]],
    "constraints": {"A": [[1.0, 0.0]], "b": [0.8]}
  })";
  SpecFile sf = parse_spec_text(text, "inline");
  REQUIRE(sf.classical.has_value());
  CHECK(sf.name == "noisy-z");
  CHECK(sf.classical->inputs() == 2);
  CHECK(sf.lam.A().rows() == 3);  // simplex nonnegativity + one cut
  Vec p(2);
  p << 0.9, 0.1;
  CHECK_FALSE(sf.lam.contains(p));
  p << 0.5, 0.5;
  CHECK(sf.lam.contains(p));
}

TEST_CASE("precise decimal strings") {
  std::string text = R"({
    "version": 1, "kind": "classical", "precise": true,
    "matrix": [["0.75", "0.25"], ["0.25", "0.75"]]
  })";
  SpecFile sf = parse_spec_text(text, "inline");
  CHECK(sf.classical->matrix()(0, 0) == 0.75);
}

TEST_CASE("quantum spec file with complex entries") {
  std::string text = R"({
    "version": 1,
    "kind": "classical-quantum",
    "operators": [
      [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
      [[[0.5, 0.0], [0.0, -0.5]], [[0.0, 0.5], [0.5, 0.0]]]
    ]
  })";
  SpecFile sf = parse_spec_text(text, "inline");
  REQUIRE(sf.quantum.has_value());
  CHECK(sf.quantum->inputs() == 2);
  CHECK(sf.quantum->output(1).matrix()(0, 1) == std::complex<double>(0.0, -0.5));
}

TEST_CASE("spec file rejections") {
  CHECK_THROWS_AS(parse_spec_text("{", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec_text(R"({"version": 2})", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec_text(R"({"version": 1, "kind": "classical"})", "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_spec_text(
          R"({"version": 1, "kind": "classical", "matrix": [[0.9, 0.2]]})", "x"),
      std::invalid_argument);
}

TEST_CASE("reports serialize deterministically") {
  auto inst = corpus::appendix_b();
  auto sol1 = solve_capacity(inst.channel, inst.lam);
  auto sol2 = solve_capacity(inst.channel, inst.lam);
  Report a, b;
  a.body["capacity"] = capacity_block(sol1);
  b.body["capacity"] = capacity_block(sol2);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json().find("capacity_nats") != std::string::npos);
}

TEST_CASE("csv emission") {
  DecayCurve c;
  c.tau = {0.0, 0.5};
  c.distance = {0.0, 0.1};
  c.info = {1.0, 0.9};
  c.lower = {1.0, 0.85};
  c.upper = {1.0, kInf};
  std::string csv = curve_csv(c);
  CHECK(csv == "tau,distance,info,lower,upper\n0,0,1,1,1\n0.5,0.1,0.9,0.85,\n");
}
