#include <doctest.h>

#include <cmath>

#include "hamest/problem_io.hpp"
#include "test_support.hpp"

using namespace hamest;
using namespace hamest::testing;

namespace {

const char* kZProblem = R"({
  "qubits": 1,
  "stages": [
    { "V": "identity", "T": 3.14159265358979323846,
      "H": [ {"coeff": 0.5, "pauli": "Z"} ] }
  ],
  "psi1": "0",
  "psi2": "0"
})";

}  // namespace

TEST_CASE("parse_problem_text: half-Z for time pi gives amplitude i") {
  const EvolutionProblem prob = parse_problem_text(kZProblem);
  CHECK(prob.dim() == 2);
  CHECK(prob.stage_count() == 1);
  const cplx a = exact_amplitude(prob);
  CHECK(std::abs(a - cplx{0.0, 1.0}) < 1e-12);
}

TEST_CASE("parse_problem_text: over-budget Hamiltonian needs the flag") {
  const char* text = R"({
    "qubits": 2,
    "stages": [
      { "V": "identity", "T": 1.0,
        "H": [ {"coeff": 0.7, "pauli": "XX"},
               {"coeff": 0.5, "pauli": "ZI"} ] }
    ],
    "psi1": "00", "psi2": "00"
  })";
  CHECK_THROWS_AS(parse_problem_text(text), ValidationError);

  ParseOptions opts;
  opts.auto_normalize = true;
  const EvolutionProblem prob = parse_problem_text(text, opts);
  // rescaling folds the factor into T, so the amplitude is unchanged
  CHECK(prob.stage(0).t_evolution == doctest::Approx(1.2));
  CHECK(prob.stage(0).h.norm_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("auto-normalization preserves the physical amplitude") {
  const char* raw = R"({
    "qubits": 1,
    "stages": [
      { "V": "identity", "T": 2.0, "H": [ {"coeff": 0.6, "pauli": "Z"} ] }
    ],
    "psi1": "0", "psi2": "0"
  })";
  ParseOptions opts;
  opts.auto_normalize = true;
  const EvolutionProblem scaled = parse_problem_text(raw, opts);
  // e^{i 2.0 * 0.6 Z} on |0> gives phase e^{i 1.2}
  const cplx a = exact_amplitude(scaled);
  CHECK(std::abs(a - std::exp(cplx{0.0, 1.2})) < 1e-12);
}

TEST_CASE("parse_problem_text: Pauli norms are the coefficients") {
  const char* text = R"({
    "qubits": 2,
    "stages": [
      { "V": "identity", "T": 1.0,
        "H": [ {"coeff": 0.4, "pauli": "XX"},
               {"coeff": 0.3, "pauli": "ZI"},
               {"coeff": 0.3, "pauli": "IZ"} ] }
    ],
    "psi1": "00", "psi2": "00"
  })";
  const EvolutionProblem prob = parse_problem_text(text);
  const DecomposedHamiltonian& h = prob.stage(0).h;
  REQUIRE(h.term_count() == 3);
  CHECK(h.term_norm(0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(h.term_norm(1) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(h.term_norm(2) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("parse -> emit -> parse round trip reproduces the matrices") {
  const char* text = R"({
    "qubits": 2,
    "stages": [
      { "V": ["H(0)", "CNOT(0,1)"], "T": 0.8,
        "H": [ {"coeff": 0.45, "pauli": "XY"},
               {"coeff": 0.35, "pauli": "ZZ"} ] }
    ],
    "psi1": "01",
    "psi2": [[0.6,0],[0,0.8],[0,0],[0,0]]
  })";
  const EvolutionProblem first = parse_problem_text(text);
  const EvolutionProblem second = parse_problem_text(emit_problem(first));

  REQUIRE(second.stage_count() == first.stage_count());
  CHECK(matrix_distance(first.stage(0).v, second.stage(0).v) < 1e-15);
  CHECK(first.stage(0).t_evolution == second.stage(0).t_evolution);
  REQUIRE(second.stage(0).h.term_count() == first.stage(0).h.term_count());
  for (std::size_t g = 0; g < first.stage(0).h.term_count(); ++g)
    CHECK(matrix_distance(first.stage(0).h.term(g), second.stage(0).h.term(g)) <
          1e-15);
  for (std::size_t i = 0; i < first.dim(); ++i) {
    CHECK(std::abs(first.psi1()[i] - second.psi1()[i]) < 1e-15);
    CHECK(std::abs(first.psi2()[i] - second.psi2()[i]) < 1e-15);
  }
}

TEST_CASE("gate_matrix: Hadamard and CNOT conventions") {
  const ComplexMatrix h0 = gate_matrix("H(0)", 1);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h0(0, 0) - cplx{s, 0.0}) < 1e-15);
  CHECK(std::abs(h0(1, 1) - cplx{-s, 0.0}) < 1e-15);

  // CNOT(0,1): qubit 0 (leftmost label bit) controls qubit 1
  const ComplexMatrix cx = gate_matrix("CNOT(0,1)", 2);
  // |10> -> |11>: index 2 -> 3
  CHECK(std::abs(cx(3, 2) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(cx(0, 0) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(cx.is_unitary(1e-12));

  CHECK_THROWS_AS(gate_matrix("Q(0)", 1), ValidationError);
  CHECK_THROWS_AS(gate_matrix("H(3)", 2), ValidationError);
  CHECK_THROWS_AS(gate_matrix("CNOT(0,0)", 2), ValidationError);
}

TEST_CASE("pauli_string_matrix: length, norm, Hermiticity") {
  const ComplexMatrix m = pauli_string_matrix("XYZ", 0.25);
  CHECK(m.dim() == 8);
  CHECK(m.is_hermitian(1e-14));
  CHECK(operator_norm(m) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(pauli_string_matrix("XQ", 1.0), ValidationError);
}

TEST_CASE("parse_problem_text: malformed input diagnostics") {
  CHECK_THROWS(parse_problem_text("{ not json"));
  CHECK_THROWS_AS(parse_problem_text(R"({"qubits": 1})"), ValidationError);
  const char* bad_len = R"({
    "qubits": 2,
    "stages": [ { "V": "identity", "T": 1.0,
                  "H": [ {"coeff": 0.5, "pauli": "X"} ] } ],
    "psi1": "00", "psi2": "00"
  })";
  CHECK_THROWS_AS(parse_problem_text(bad_len), ValidationError);
  const char* bad_state = R"({
    "qubits": 1,
    "stages": [ { "V": "identity", "T": 1.0,
                  "H": [ {"coeff": 0.5, "pauli": "Z"} ] } ],
    "psi1": "0", "psi2": "012"
  })";
  CHECK_THROWS_AS(parse_problem_text(bad_state), ValidationError);
}

TEST_CASE("parse_problem_text: explicit matrices and plain dim") {
  const char* text = R"({
    "dim": 2,
    "stages": [
      { "V": [[[0,0],[1,0]],[[1,0],[0,0]]], "T": 0.5,
        "H": [ {"matrix": [[[0.5,0],[0,0]],[[0,0],[-0.5,0]]]} ] }
    ],
    "psi1": [[1,0],[0,0]],
    "psi2": [[0,0],[1,0]]
  })";
  const EvolutionProblem prob = parse_problem_text(text);
  CHECK(prob.stage(0).v.is_unitary(1e-12));
  CHECK(prob.stage(0).h.term(0).is_hermitian(1e-12));
}
