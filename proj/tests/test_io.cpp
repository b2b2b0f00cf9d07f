#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eigenschaft/io.hpp"
#include "support/testing.hpp"

using namespace eigenschaft;
using testing::Rng;

TEST_CASE("matrix JSON roundtrip is exact") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_square(static_cast<std::size_t>(rng.integer(1, 6)), rng);
    const auto text = io::dump(io::to_json(m));
    CHECK(io::matrix_from_json(io::parse(text)) == m);
    CHECK(io::dump(io::to_json(io::matrix_from_json(io::parse(text)))) == text);
  }
}

TEST_CASE("matrix JSON layout") {
  const ComplexMatrix m(2, 2, {1.0, Complex(0.0, 0.5), Complex(0.0, -0.5), -1.0});
  const auto j = io::to_json(m);
  CHECK(j["dim"] == 2);
  CHECK(j["entries"].size() == 4);
  CHECK(j["entries"][1][1] == 0.5);
  CHECK(io::dump(j).back() == '\n');
}

TEST_CASE("readers reject malformed input") {
  CHECK_THROWS_AS(io::parse("{not json"), ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"dim": 2, "entries": [[1,0],[0,0],[0,0]]})")), ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"entries": []})")), ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"dim": 1, "entries": [[1]]})")), ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"dim": 1, "entries": [["a", 0]]})")), ParseError);
  CHECK_THROWS_AS(io::state_from_json(io::parse(R"({"dim": 2, "amplitudes": [[1,0]]})")), ParseError);
  // schema fine, physics wrong
  CHECK_THROWS_AS(io::state_from_json(io::parse(R"({"dim": 2, "amplitudes": [[1,0],[1,0]]})")), DomainError);
}

TEST_CASE("operator JSON carries the trace class") {
  const auto h = build_h2({std::numbers::pi / 4.0, 0.0});
  const auto j = io::to_json(h);
  CHECK(j["trace_class"] == 0);
  CHECK(io::op_from_json(j).matrix() == h.matrix());

  auto wrong = j;
  wrong["trace_class"] = 2;
  CHECK_THROWS(io::op_from_json(wrong));
}

TEST_CASE("state and projector JSON roundtrip") {
  Rng rng(2);
  const auto s = testing::random_state(3, rng);
  const auto back = io::state_from_json(io::parse(io::dump(io::to_json(s))));
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == s[i]);

  const auto ps = ProjectorSet::standard_basis(3);
  const auto j = io::to_json(ps);
  CHECK(j["dim"] == 3);
  CHECK(j["projectors"].size() == 3);
  CHECK(io::projectors_from_json(j).projectors()[2] == ps[2]);
}

TEST_CASE("report keys") {
  const auto v = io::to_json(validate(ComplexMatrix::identity(2)));
  for (const char* key : {"dim", "hermiticity_residual", "unitarity_residual", "involution_residual", "trace_re",
                          "trace_im", "trace_class", "trace_class_distance", "trace_class_flag"})
    CHECK(v.contains(key));

  const auto d = io::to_json(decompose_state(ComplexMatrix::identity(2), StateVector::basis(2, 0)));
  CHECK(d["residual_state"].is_null());

  const auto c = io::to_json(classify(DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5}))));
  CHECK(c["kind"] == "mixture");
  CHECK(c["rho_dispersion"] == -0.5);
}

TEST_CASE("CSV writers") {
  const std::vector<BeatSample> b{{0.0, 0.5}, {1.0, -0.25}};
  CHECK(io::beat_trace_csv(b) == "t,delta_phi\n0,0.5\n1,-0.25\n");

  const FringeRecord fr{{0.0}, {0.75}, {0.25}};
  CHECK(io::fringe_csv(fr) == "phi,I1,I2\n0,0.75,0.25\n");

  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("dump is deterministic") {
  const StateVector s({std::sqrt(0.8), std::polar(std::sqrt(0.2), -std::numbers::pi / 4.0)});
  InterferometerConfig cfg{hadamard(), uniform_phases(16), 0.01};
  CHECK(io::dump(io::to_json(holographic_report(s, cfg, 9))) == io::dump(io::to_json(holographic_report(s, cfg, 9))));
}
