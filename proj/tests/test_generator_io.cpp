#include <catch2/catch_amalgamated.hpp>

#include "votelp/generator.hpp"
#include "votelp/io.hpp"

using namespace votelp;

TEST_CASE("generated instances are reproducible and conserve the Borda mass") {
  const ProblemInstance a = gen_uniform(8, 5, 3, Mode::ucm, 42);
  const ProblemInstance b = gen_uniform(8, 5, 3, Mode::ucm, 42);
  CHECK(a.sigma() == b.sigma());
  CHECK(a.sigma_p() == b.sigma_p());
  CHECK(a.weights() == std::vector<Score>{1, 1, 1});

  // Every ballot hands out 0 + 1 + ... + m in total.
  Score mass = *a.sigma_p();
  for (Score s : a.sigma()) mass += s;
  CHECK(mass == 8 * (5 * 6) / 2);

  const ProblemInstance c = gen_uniform(8, 5, 3, Mode::ucm, 43);
  CHECK(a.sigma() != c.sigma());  // different seed, different ballots
}

TEST_CASE("sequence-mode generation draws weights from {1, 2}") {
  const ProblemInstance w = gen_uniform(4, 3, 12, Mode::wcm, 7);
  REQUIRE(w.k() == 12);
  bool saw_one = false;
  bool saw_two = false;
  for (Score weight : w.weights()) {
    REQUIRE((weight == 1 || weight == 2));
    saw_one |= weight == 1;
    saw_two |= weight == 2;
  }
  CHECK(saw_one);
  CHECK(saw_two);

  // The ballot stream is independent of the weight stream.
  const ProblemInstance u = gen_uniform(4, 3, 12, Mode::ucm, 7);
  CHECK(u.sigma() == w.sigma());
  CHECK(u.weights() == std::vector<Score>(12, 1));
}

TEST_CASE("generator rejects bad parameters") {
  CHECK_THROWS_AS(gen_uniform(-1, 3, 2, Mode::ucm, 1), contract_error);
  CHECK_THROWS_AS(gen_uniform(2, 0, 2, Mode::ucm, 1), contract_error);
  CHECK_THROWS_AS(gen_uniform(2, 3, 0, Mode::ucm, 1), contract_error);
}

TEST_CASE("instance serialization carries every field") {
  const ProblemInstance instance(ScoringVector({0, 1, 1, 4}), {7, 0, 3}, {2, 1}, 5);
  const nlohmann::json j = instance_to_json(instance);
  CHECK(j.at("alpha") == nlohmann::json({0, 1, 1, 4}));
  CHECK(j.at("sigma") == nlohmann::json({7, 0, 3}));
  CHECK(j.at("sigma_p") == 5);
  CHECK(j.at("weights") == nlohmann::json({2, 1}));

  const ProblemInstance back = instance_from_json(j);
  CHECK(back.alpha() == instance.alpha());
  CHECK(back.sigma() == instance.sigma());
  CHECK(back.weights() == instance.weights());
  CHECK(back.sigma_p() == instance.sigma_p());
}

TEST_CASE("missing sigma_p serializes as null and reads back as absent") {
  const ProblemInstance instance(ScoringVector::borda(2), {1, 2}, {1});
  const nlohmann::json j = instance_to_json(instance);
  CHECK(j.at("sigma_p").is_null());
  CHECK_FALSE(instance_from_json(j).sigma_p().has_value());
}

TEST_CASE("malformed instance JSON reports an io_error") {
  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"alpha", {0, 1}}}), io_error);
  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"alpha", "zero"},
                                                    {"sigma", {0}},
                                                    {"weights", {1}}}),
                  io_error);
  // Structurally sound JSON with semantically bad content surfaces the
  // domain error instead.
  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"alpha", {1, 0}},
                                                    {"sigma", {0}},
                                                    {"weights", {1}}}),
                  contract_error);
}

TEST_CASE("matrix serialization round trip and validation") {
  ManipulationMatrix mat = ManipulationMatrix::zeros(2, 3, Validity::valid);
  mat.at(0, 0) = 2;
  mat.at(0, 1) = 0;
  mat.at(0, 2) = 1;
  mat.at(1, 0) = 1;
  mat.at(1, 1) = 2;
  mat.at(1, 2) = 0;

  const nlohmann::json j = matrix_to_json(mat);
  CHECK(j.at("validity") == "valid");
  const ManipulationMatrix back = matrix_from_json(j);
  CHECK(back.entries == mat.entries);
  CHECK(back.validity == Validity::valid);

  nlohmann::json truncated = j;
  truncated["entries"] = {0, 1, 2};
  CHECK_THROWS_AS(matrix_from_json(truncated), io_error);

  nlohmann::json odd = j;
  odd["validity"] = "sorted";
  CHECK_THROWS_AS(matrix_from_json(odd), io_error);
}

TEST_CASE("file loading failures carry the path") {
  CHECK_THROWS_WITH(load_json_file("/nonexistent/instance.json"),
                    Catch::Matchers::ContainsSubstring("/nonexistent/instance.json"));
}
