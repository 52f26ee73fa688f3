#include <doctest.h>

#include <random>
#include <sstream>

#include "fraceig/io.hpp"
#include "helpers.hpp"

using namespace fraceig;
using json = nlohmann::json;

TEST_CASE("domain spec round trip") {
  const json j = json::parse(R"({"dim":1,"h":0.125,"shape":{"type":"union","parts":[
      {"type":"interval","a":0,"b":1},{"type":"interval","a":2,"b":3}]}})");
  const auto spec = io::domain_spec_from_json(j);
  const auto again = io::domain_spec_from_json(io::domain_spec_to_json(spec));
  CHECK(build_domain(again)->omega_count() == build_domain(spec)->omega_count());
  CHECK(build_domain(spec)->diameter() == doctest::Approx(3.0));
  CHECK_THROWS_AS(io::domain_spec_from_json(json::parse(R"({"dim":1,"h":0.1,"shape":{"type":"blob"}})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::domain_spec_from_json(json::parse(R"({"dim":1})")), InvalidInput);
}

TEST_CASE("grid function JSON and binary round trips") {
  auto d = th::unit_square(1.0 / 4);
  std::mt19937_64 rng(71);
  const auto u = th::random_u(d, rng);
  const auto back = io::grid_function_from_json(io::grid_function_to_json(u), d);
  for (std::size_t i = 0; i < d->size(); ++i) CHECK(back[i] == u[i]);

  std::stringstream bin;
  io::write_grid_function_binary(bin, u);
  const auto b2 = io::read_grid_function_binary(bin, d);
  for (std::size_t i = 0; i < d->size(); ++i) CHECK(b2[i] == u[i]);

  CHECK_THROWS_AS(io::grid_function_from_json(io::grid_function_to_json(u), th::unit_square(1.0 / 8)),
                  InvalidInput);
  std::stringstream junk("FGF2 nonsense");
  CHECK_THROWS_AS(io::read_grid_function_binary(junk, d), InvalidInput);
}

TEST_CASE("problem files") {
  auto d = th::interval(0, 1, 1.0 / 8);
  const auto p = io::problem_from_json(json::parse(R"({"s":0.5,"p":2,"f":1,"F":"none"})"), d);
  CHECK(p.f.size() == 8);
  CHECK_FALSE(p.F.has_value());
  CHECK_THROWS_AS(io::problem_from_json(json::parse(R"({"s":0.5,"p":2,"f":[1,2]})"), d), InvalidInput);
  CHECK_THROWS_AS(io::problem_from_json(json::parse(R"({"p":2,"f":1})"), d), InvalidInput);
}

TEST_CASE("trace CSV") {
  std::ostringstream os;
  io::write_trace_csv(os, {{2.0, 0.1}, {1.5, 0.01}});
  CHECK(os.str().rfind("iter,lambda,residual\n0,2,0.10000000000000001\n", 0) == 0);
}
