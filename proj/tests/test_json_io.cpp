#include <catch_amalgamated.hpp>

#include <bit>
#include <random>

#include "avgdeg/json_io.hpp"
#include "avgdeg/presets.hpp"

using namespace avgdeg;
using io::json;

TEST_CASE("every preset round-trips through JSON", "[json][property]") {
  for (const auto& name : presets::preset_names()) {
    INFO(name);
    const auto p = presets::preset(name);
    REQUIRE((p.spec.has_value() || p.monomial.has_value()));
    if (p.spec) {
      const std::string text = io::to_json(*p.spec).dump();
      const PerturbationSpec back = io::spec_from_json(json::parse(text));
      CHECK(back == *p.spec);
      CHECK(io::to_json(back).dump() == text);
      // coefficients survive as the same bit pattern, not just approximately
      for (std::size_t j = 0; j < back.b().size(); ++j) {
        CHECK(std::bit_cast<std::uint64_t>(back.b()[j]) ==
              std::bit_cast<std::uint64_t>(p.spec->b()[j]));
      }
    }
    if (p.monomial) {
      const std::string text = io::to_json(*p.monomial).dump();
      CHECK(io::monomial_from_json(json::parse(text)) == *p.monomial);
    }
  }
}

TEST_CASE("property: random coefficients round-trip exactly", "[json][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int n = 0; n < 200; ++n) {
    const double b0 = u(rng), b1 = u(rng) * 1e-9, e = std::ldexp(u(rng), -40);
    const PerturbationSpec spec({HomogeneousField(Rational(1, 2), {presets::sx(u(rng), Rational(1, 2))},
                                                  {presets::sy(u(rng), Rational(1, 2))}),
                                 presets::linear_field(u(rng), u(rng), u(rng), u(rng))},
                                {b0, b1}, e);
    CHECK(io::spec_from_json(json::parse(io::to_json(spec).dump())) == spec);
  }
}

TEST_CASE("exponents are written as exact fractions", "[json]") {
  const json j = io::to_json(presets::cbrt_family());
  bool saw_third = false;
  for (const auto& f : j.at("fields")) {
    CHECK(f.at("alpha").is_string());
    if (f.at("alpha") == "1/3") saw_third = true;
  }
  CHECK(saw_third);

  // integers are accepted as exponents on input
  const json in = json::parse(R"({"fields": [{"alpha": 1, "f": [{"c": 2, "px": 1}], "g": []}], "b": [1]})");
  const auto spec = io::spec_from_json(in);
  CHECK(spec.fields()[0].alpha() == Rational(1));
  CHECK(spec.epsilon() == 0.0);
  CHECK(spec.orientation() == Orientation::ccw);
}

TEST_CASE("schema violations", "[json]") {
  const char* bad[] = {
      R"([1, 2])",
      R"({"b": [1]})",
      R"({"fields": []})",
      R"({"fields": {}, "b": []})",
      R"({"fields": [], "b": ["x"]})",
      R"({"fields": [], "b": [], "orientation": "up"})",
      R"({"fields": [{"alpha": "1/2", "f": [{"c": 1, "px": "1/3"}], "g": []}], "b": [1]})",
      R"({"fields": [{"alpha": "1/0", "f": [], "g": []}], "b": [1]})",
      R"({"fields": [{"alpha": 0.5, "f": [], "g": []}], "b": [1]})",
      R"({"fields": [{"alpha": "1", "f": [{"c": "one", "px": "1"}], "g": []}], "b": [1]})",
      R"({"fields": [{"alpha": "1", "f": [{"c": 1, "px": "1", "sx": 3}], "g": []}], "b": [1]})",
      R"({"fields": [{"alpha": "1", "f": [], "g": []}], "b": [1, 2]})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(io::spec_from_json(json::parse(text)), io::SchemaError);
  }
  CHECK_THROWS_AS(io::monomial_from_json(json::parse(R"({"a": 1})")), io::SchemaError);
  CHECK_THROWS_AS(
      io::monomial_from_json(json::parse(
          R"({"a": 1, "b": 1, "c": 1, "p": -1, "q": 0, "i": 0, "j": 0, "k": 0, "l": 0})")),
      io::SchemaError);
  CHECK_THROWS_AS(
      io::monomial_from_json(json::parse(
          R"({"a": 1, "b": 1, "c": 1, "p": 0.5, "q": 0, "i": 0, "j": 0, "k": 0, "l": 0})")),
      io::SchemaError);
}

TEST_CASE("certificate JSON shape", "[json]") {
  const auto cert = classify({1, -1, 1, 0, 1, 1, 0, 2, 1});
  const json j = io::to_json(cert);
  CHECK(j.at("property") == "P5");
  CHECK(j.at("case") == "(ii)-divergence");
  CHECK(j.at("trace").is_array());
  REQUIRE(j.at("checks").is_array());
  for (const auto& c : j.at("checks")) {
    CHECK(c.at("name").is_string());
    CHECK(c.at("ok") == true);
  }

  const auto reduced = io::to_json(classify({1, 2, 3, 2, 1, 3, 2, 2, 4}));
  CHECK(reduced.at("trace") == json::array({"x^2", "y^1"}));
}
