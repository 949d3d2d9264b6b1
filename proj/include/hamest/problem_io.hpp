#pragma once

#include <stdexcept>
#include <string>

#include "hamest/pipeline.hpp"

namespace hamest {

/// Semantic problem-file error (as opposed to JSON syntax errors, which the
/// parser reports with byte positions). Maps to exit code 1 in the CLI.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOptions {
  // When the per-stage norm budget sum_g ||H_g|| exceeds 1, rescale the terms
  // and fold the factor into T_j (preserves T_j * H_j exactly).
  bool auto_normalize = false;
};

/// Problem files are JSON:
///   {
///     "qubits": 2,                         // or "dim": 4
///     "stages": [
///       { "V": "identity",                 // | [[..row of [re,im]..]]
///                                          // | ["H(0)", "CNOT(0,1)"]
///         "T": 2.0,
///         "H": [ {"coeff": 0.4, "pauli": "XX"},
///                {"matrix": [[[re,im],...]]} ] }
///     ],
///     "psi1": "00",                        // basis label or [[re,im],...]
///     "psi2": [[0.7071,0],[0,0],[0,0],[0.7071,0]]
///   }
/// Qubit 0 is the leftmost character of Pauli strings and basis labels (most
/// significant bit of the index). Amplitude lists are normalized on input.
EvolutionProblem parse_problem(const std::string& path,
                               const ParseOptions& options = {});
EvolutionProblem parse_problem_text(const std::string& text,
                                    const ParseOptions& options = {});

/// Full-precision JSON with explicit matrices; parse(emit(p)) reproduces the
/// problem bit-for-bit up to state normalization.
std::string emit_problem(const EvolutionProblem& problem);

/// coeff * (sigma_{s[0]} tensor ... tensor sigma_{s[len-1]}).
ComplexMatrix pauli_string_matrix(const std::string& s, double coeff);

/// Named gate on a register of `qubits` qubits: "X(0)", "H(1)", "S(0)",
/// "T(2)", "CNOT(0,1)", "CX(0,1)", "CZ(0,1)", "SWAP(0,1)".
ComplexMatrix gate_matrix(const std::string& spec, std::size_t qubits);

}  // namespace hamest
