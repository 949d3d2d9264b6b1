#include "hamest/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hamest {

namespace {

using nlohmann::json;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < da; ++j1) {
      const cplx aij = a(i1, j1);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t i2 = 0; i2 < db; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2)
          out(i1 * db + i2, j1 * db + j2) = aij * b(i2, j2);
    }
  return out;
}

ComplexMatrix single_pauli(char c) {
  ComplexMatrix m(2);
  switch (c) {
    case 'I':
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = cplx{0.0, -1.0};
      m(1, 0) = cplx{0.0, 1.0};
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw ValidationError(std::string("unknown Pauli letter '") + c + "'");
  }
  return m;
}

cplx parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return cplx{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx{j[0].get<double>(), j[1].get<double>()};
  throw ValidationError(where + ": complex numbers are [re, im] pairs");
}

ComplexMatrix parse_matrix(const json& j, std::size_t dim,
                           const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw ValidationError(where + ": expected a " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " matrix");
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim)
      throw ValidationError(where + ": row " + std::to_string(i) +
                            " has wrong length");
    for (std::size_t c = 0; c < dim; ++c)
      m(i, c) = parse_complex(j[i][c], where + "[" + std::to_string(i) + "][" +
                                           std::to_string(c) + "]");
  }
  return m;
}

std::vector<cplx> parse_amplitudes(const json& j, std::size_t dim,
                                   std::size_t qubits,
                                   const std::string& where) {
  if (j.is_string()) {
    const std::string label = j.get<std::string>();
    if (qubits == 0 || label.size() != qubits)
      throw ValidationError(where + ": basis label '" + label +
                            "' does not match the qubit count");
    std::size_t index = 0;
    for (char c : label) {
      if (c != '0' && c != '1')
        throw ValidationError(where + ": basis labels use only 0/1");
      index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    std::vector<cplx> amps(dim, cplx{0.0, 0.0});
    amps[index] = 1.0;
    return amps;
  }
  if (!j.is_array() || j.size() != dim)
    throw ValidationError(where + ": expected " + std::to_string(dim) +
                          " amplitudes or a basis label");
  std::vector<cplx> amps(dim);
  for (std::size_t i = 0; i < dim; ++i)
    amps[i] = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
  return amps;
}

struct GateSpec {
  std::string name;
  std::vector<std::size_t> qubits;
};

GateSpec parse_gate_spec(const std::string& s) {
  const auto open = s.find('(');
  const auto close = s.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ValidationError("gate '" + s + "': expected name(q[,q])");
  GateSpec spec;
  spec.name = s.substr(0, open);
  std::stringstream args(s.substr(open + 1, close - open - 1));
  std::string tok;
  while (std::getline(args, tok, ',')) {
    try {
      spec.qubits.push_back(static_cast<std::size_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw ValidationError("gate '" + s + "': bad qubit index '" + tok + "'");
    }
  }
  return spec;
}

ComplexMatrix embed_single(const ComplexMatrix& g, std::size_t qubit,
                           std::size_t qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  const std::size_t shift = qubits - 1 - qubit;
  ComplexMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t b = (col >> shift) & 1u;
    const std::size_t base = col & ~(std::size_t{1} << shift);
    out(base, col) += g(0, b);
    out(base | (std::size_t{1} << shift), col) += g(1, b);
  }
  return out;
}

ComplexMatrix embed_two(const ComplexMatrix& g, std::size_t qa, std::size_t qb,
                        std::size_t qubits) {
  // g indexed by (bit_a * 2 + bit_b)
  const std::size_t dim = std::size_t{1} << qubits;
  const std::size_t sa = qubits - 1 - qa;
  const std::size_t sb = qubits - 1 - qb;
  ComplexMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t ba = (col >> sa) & 1u;
    const std::size_t bb = (col >> sb) & 1u;
    const std::size_t in = ba * 2 + bb;
    const std::size_t base =
        col & ~(std::size_t{1} << sa) & ~(std::size_t{1} << sb);
    for (std::size_t oa = 0; oa < 2; ++oa)
      for (std::size_t ob = 0; ob < 2; ++ob) {
        const cplx v = g(oa * 2 + ob, in);
        if (v == cplx{0.0, 0.0}) continue;
        const std::size_t row = base | (oa << sa) | (ob << sb);
        out(row, col) += v;
      }
  }
  return out;
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ComplexMatrix pauli_string_matrix(const std::string& s, double coeff) {
  if (s.empty()) throw ValidationError("empty Pauli string");
  ComplexMatrix m = single_pauli(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) m = kron(m, single_pauli(s[i]));
  m *= cplx{coeff, 0.0};
  return m;
}

ComplexMatrix gate_matrix(const std::string& spec_text, std::size_t qubits) {
  if (qubits == 0) throw ValidationError("gate_matrix: zero qubits");
  const GateSpec spec = parse_gate_spec(spec_text);
  for (std::size_t q : spec.qubits)
    if (q >= qubits)
      throw ValidationError("gate '" + spec_text + "': qubit out of range");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto single = [&](auto fill) {
    if (spec.qubits.size() != 1)
      throw ValidationError("gate '" + spec_text + "': expects one qubit");
    ComplexMatrix g(2);
    fill(g);
    return embed_single(g, spec.qubits[0], qubits);
  };
  auto two = [&](auto fill) {
    if (spec.qubits.size() != 2 || spec.qubits[0] == spec.qubits[1])
      throw ValidationError("gate '" + spec_text +
                            "': expects two distinct qubits");
    ComplexMatrix g(4);
    fill(g);
    return embed_two(g, spec.qubits[0], spec.qubits[1], qubits);
  };

  if (spec.name == "I")
    return ComplexMatrix::identity(std::size_t{1} << qubits);
  if (spec.name == "X")
    return single([](ComplexMatrix& g) { g(0, 1) = g(1, 0) = 1.0; });
  if (spec.name == "Y")
    return single([](ComplexMatrix& g) {
      g(0, 1) = cplx{0.0, -1.0};
      g(1, 0) = cplx{0.0, 1.0};
    });
  if (spec.name == "Z")
    return single([](ComplexMatrix& g) {
      g(0, 0) = 1.0;
      g(1, 1) = -1.0;
    });
  if (spec.name == "H")
    return single([&](ComplexMatrix& g) {
      g(0, 0) = g(0, 1) = g(1, 0) = inv_sqrt2;
      g(1, 1) = -inv_sqrt2;
    });
  if (spec.name == "S")
    return single([](ComplexMatrix& g) {
      g(0, 0) = 1.0;
      g(1, 1) = cplx{0.0, 1.0};
    });
  if (spec.name == "T")
    return single([](ComplexMatrix& g) {
      g(0, 0) = 1.0;
      g(1, 1) = std::exp(cplx{0.0, 3.14159265358979323846 / 4.0});
    });
  if (spec.name == "CNOT" || spec.name == "CX")
    return two([](ComplexMatrix& g) {
      g(0, 0) = g(1, 1) = 1.0;  // control 0: identity
      g(2, 3) = g(3, 2) = 1.0;  // control 1: flip target
    });
  if (spec.name == "CZ")
    return two([](ComplexMatrix& g) {
      g(0, 0) = g(1, 1) = g(2, 2) = 1.0;
      g(3, 3) = -1.0;
    });
  if (spec.name == "SWAP")
    return two([](ComplexMatrix& g) {
      g(0, 0) = g(3, 3) = 1.0;
      g(1, 2) = g(2, 1) = 1.0;
    });
  throw ValidationError("unknown gate '" + spec.name + "'");
}

EvolutionProblem parse_problem_text(const std::string& text,
                                    const ParseOptions& options) {
  const json doc = json::parse(text);  // syntax errors surface with positions

  std::size_t qubits = 0;
  std::size_t dim = 0;
  if (doc.contains("qubits")) {
    qubits = doc.at("qubits").get<std::size_t>();
    if (qubits == 0 || qubits > 10)
      throw ValidationError("qubits: must be between 1 and 10");
    dim = std::size_t{1} << qubits;
  }
  if (doc.contains("dim")) {
    const std::size_t d = doc.at("dim").get<std::size_t>();
    if (dim != 0 && d != dim)
      throw ValidationError("dim and qubits disagree");
    dim = d;
  }
  if (dim == 0)
    throw ValidationError("problem needs either 'qubits' or 'dim'");
  if (dim > kMaxMatrixDim)
    throw ValidationError("dim exceeds the desk-scale cap");

  if (!doc.contains("stages") || !doc.at("stages").is_array() ||
      doc.at("stages").empty())
    throw ValidationError("problem needs a non-empty 'stages' array");

  std::vector<EvolutionStage> stages;
  std::size_t stage_idx = 0;
  for (const json& js : doc.at("stages")) {
    const std::string where = "stages[" + std::to_string(stage_idx) + "]";

    ComplexMatrix v;
    if (!js.contains("V") || (js.at("V").is_string() &&
                              js.at("V").get<std::string>() == "identity")) {
      v = ComplexMatrix::identity(dim);
    } else if (js.at("V").is_array() && !js.at("V").empty() &&
               js.at("V")[0].is_string()) {
      v = ComplexMatrix::identity(dim);
      for (const json& jg : js.at("V")) {
        if (qubits == 0)
          throw ValidationError(where + ".V: named gates need 'qubits'");
        v = v * gate_matrix(jg.get<std::string>(), qubits);
      }
    } else {
      v = parse_matrix(js.at("V"), dim, where + ".V");
    }

    if (!js.contains("T") || !js.at("T").is_number())
      throw ValidationError(where + ": missing numeric 'T'");
    double t_evolution = js.at("T").get<double>();
    if (!(t_evolution >= 0.0) || !std::isfinite(t_evolution))
      throw ValidationError(where + ".T: must be a finite nonnegative number");

    if (!js.contains("H") || !js.at("H").is_array() || js.at("H").empty())
      throw ValidationError(where + ": needs a non-empty 'H' term list");
    std::vector<ComplexMatrix> terms;
    std::size_t term_idx = 0;
    for (const json& jt : js.at("H")) {
      const std::string twhere =
          where + ".H[" + std::to_string(term_idx) + "]";
      if (jt.contains("pauli")) {
        if (qubits == 0)
          throw ValidationError(twhere + ": Pauli terms need 'qubits'");
        const std::string ps = jt.at("pauli").get<std::string>();
        if (ps.size() != qubits)
          throw ValidationError(twhere + ": Pauli string length " +
                                std::to_string(ps.size()) +
                                " != qubit count " + std::to_string(qubits));
        if (!jt.contains("coeff") || !jt.at("coeff").is_number())
          throw ValidationError(twhere + ": needs a real 'coeff'");
        terms.push_back(
            pauli_string_matrix(ps, jt.at("coeff").get<double>()));
      } else if (jt.contains("matrix")) {
        terms.push_back(parse_matrix(jt.at("matrix"), dim, twhere + ".matrix"));
      } else {
        throw ValidationError(twhere + ": term needs 'pauli' or 'matrix'");
      }
      ++term_idx;
    }

    // normalization budget, optionally folded into T
    double norm_sum = 0.0;
    for (const ComplexMatrix& t : terms) norm_sum += operator_norm(t);
    if (norm_sum > 1.0 + 1e-9) {
      if (!options.auto_normalize)
        throw ValidationError(
            where + ": sum of term norms " + std::to_string(norm_sum) +
            " exceeds 1; pass --auto-normalize to rescale into T");
      for (ComplexMatrix& t : terms) t *= cplx{1.0 / norm_sum, 0.0};
      t_evolution *= norm_sum;
    }

    try {
      stages.push_back(EvolutionStage{
          std::move(v), DecomposedHamiltonian(std::move(terms)), t_evolution});
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ": " + e.what());
    }
    ++stage_idx;
  }

  if (!doc.contains("psi1") || !doc.contains("psi2"))
    throw ValidationError("problem needs 'psi1' and 'psi2'");
  StateVector psi1 = StateVector::normalized(
      parse_amplitudes(doc.at("psi1"), dim, qubits, "psi1"));
  StateVector psi2 = StateVector::normalized(
      parse_amplitudes(doc.at("psi2"), dim, qubits, "psi2"));

  try {
    return EvolutionProblem(std::move(stages), std::move(psi1),
                            std::move(psi2));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

EvolutionProblem parse_problem(const std::string& path,
                               const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), options);
}

std::string emit_problem(const EvolutionProblem& problem) {
  json doc;
  doc["dim"] = problem.dim();
  json stages = json::array();
  for (const EvolutionStage& st : problem.stages()) {
    json js;
    js["V"] = matrix_to_json(st.v);
    js["T"] = st.t_evolution;
    json terms = json::array();
    for (const ComplexMatrix& t : st.h.terms())
      terms.push_back(json{{"matrix", matrix_to_json(t)}});
    js["H"] = std::move(terms);
    stages.push_back(std::move(js));
  }
  doc["stages"] = std::move(stages);
  json p1 = json::array(), p2 = json::array();
  for (std::size_t i = 0; i < problem.dim(); ++i) {
    p1.push_back(complex_to_json(problem.psi1()[i]));
    p2.push_back(complex_to_json(problem.psi2()[i]));
  }
  doc["psi1"] = std::move(p1);
  doc["psi2"] = std::move(p2);
  return doc.dump(2);
}

}  // namespace hamest
