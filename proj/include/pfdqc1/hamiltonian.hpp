// Copyright 2026 The pfdqc1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Hamiltonians given as weighted sums of Pauli strings or of projectors, and
// the transformations that bring them into the form the estimators consume.
//
// Temperature bookkeeping: every HamiltonianSpec carries `beta_scale` (user
// beta times beta_scale gives the beta of the stored Hamiltonian) and
// `energy_shift` (in stored units), such that for that beta
//
//   Z_original = exp(-beta * energy_shift) * Tr exp(-beta * H_current).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "pfdqc1/config.hpp"
#include "pfdqc1/densemath.hpp"
#include "pfdqc1/errors.hpp"

namespace pfdqc1 {

class PauliString {
 public:
  explicit PauliString(std::string letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw InputError("Pauli string must be non-empty");
    for (char c : letters_) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw InputError("Pauli string '" + letters_ + "': letter '" + std::string(1, c) +
                         "' outside {I,X,Y,Z}");
      }
    }
  }

  static PauliString identity(int qubits) {
    return PauliString(std::string(static_cast<std::size_t>(qubits), 'I'));
  }

  int qubits() const noexcept { return static_cast<int>(letters_.size()); }
  const std::string& letters() const noexcept { return letters_; }
  bool is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
  }

  /// Each row of a Pauli string has one nonzero entry at column row ^ flip_mask.
  DenseOperator to_dense() const {
    const int m = qubits();
    const std::uint64_t d = dim_of(m);
    std::uint64_t flip = 0;
    for (int q = 0; q < m; ++q) {
      if (letters_[q] == 'X' || letters_[q] == 'Y') flip |= std::uint64_t{1} << (m - 1 - q);
    }
    DenseOperator out(m);
    for (std::uint64_t row = 0; row < d; ++row) {
      const std::uint64_t col = row ^ flip;
      Complex phase{1.0, 0.0};
      for (int q = 0; q < m; ++q) {
        const int bit_col = static_cast<int>((col >> (m - 1 - q)) & 1U);
        switch (letters_[q]) {
          case 'Y': phase *= bit_col ? -kI : kI; break;  // <r|Y|c>: Y|0>=i|1>, Y|1>=-i|0>
          case 'Z': phase *= bit_col ? -1.0 : 1.0; break;
          default: break;
        }
      }
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = phase;
    }
    return out;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::string letters_;
};

/// Hermitian idempotent matrix.
class ProjectorTerm {
 public:
  explicit ProjectorTerm(DenseOperator matrix) : matrix_(std::move(matrix)) {
    const double tol = tolerances().projector;
    if (!matrix_.is_hermitian(tol)) throw InputError("projector term is not Hermitian");
    const double idem = max_abs(matrix_ * matrix_ - matrix_);
    if (idem > tol) {
      throw InputError("projector term violates P*P = P (residual " + std::to_string(idem) + ")");
    }
  }

  int qubits() const noexcept { return matrix_.qubits(); }
  const DenseOperator& matrix() const noexcept { return matrix_; }

  friend bool operator==(const ProjectorTerm& a, const ProjectorTerm& b) {
    return a.qubits() == b.qubits() && a.matrix_.matrix() == b.matrix_.matrix();
  }

 private:
  DenseOperator matrix_;
};

/// Hermitian operator acting on a few qubits of a larger register.
struct LocalTerm {
  std::vector<int> support;
  DenseOperator matrix;
};

enum class HamiltonianKind { UnitarySum, ProjectorSum };

inline const char* to_string(HamiltonianKind k) {
  return k == HamiltonianKind::UnitarySum ? "unitary_sum" : "projector_sum";
}

struct Term {
  double coeff;
  std::variant<PauliString, ProjectorTerm> op;
  bool padding = false;

  DenseOperator to_dense() const {
    return std::visit(
        [](const auto& o) -> DenseOperator {
          if constexpr (std::is_same_v<std::decay_t<decltype(o)>, PauliString>) {
            return o.to_dense();
          } else {
            return o.matrix();
          }
        },
        op);
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.padding == b.padding && a.op == b.op;
  }
};

class HamiltonianSpec {
 public:
  HamiltonianSpec(HamiltonianKind kind, int qubits, std::vector<Term> terms)
      : kind_(kind), qubits_(qubits), terms_(std::move(terms)) {
    if (qubits_ < 1) throw InputError("m must be >= 1");
    for (std::size_t i = 0; i < terms_.size(); ++i) validate_term(terms_[i], i);
    alpha_ = l1_norm();
  }

  HamiltonianKind kind() const noexcept { return kind_; }
  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return dim_of(qubits_); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  std::size_t num_active_terms() const {
    return static_cast<std::size_t>(
        std::count_if(terms_.begin(), terms_.end(), [](const Term& t) { return !t.padding; }));
  }

  /// L1 norm of the coefficients at construction.
  double alpha() const noexcept { return alpha_; }
  double l1_norm() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coeff;
    return s;
  }
  bool is_normalized(double tol = 1e-12) const { return std::abs(l1_norm() - 1.0) <= tol; }

  double beta_scale() const noexcept { return beta_scale_; }
  double energy_shift() const noexcept { return energy_shift_; }
  /// log(Z_original / Z_current) at the beta belonging to this spec.
  double log_offset(double beta) const { return -beta * energy_shift_; }

  /// Selection-register size m'_1 once padded.
  std::optional<int> selection_qubits() const noexcept { return selection_qubits_; }

  friend bool operator==(const HamiltonianSpec& a, const HamiltonianSpec& b) {
    return a.kind_ == b.kind_ && a.qubits_ == b.qubits_ && a.terms_ == b.terms_ &&
           a.beta_scale_ == b.beta_scale_ && a.energy_shift_ == b.energy_shift_ &&
           a.selection_qubits_ == b.selection_qubits_;
  }

  HamiltonianSpec with_bookkeeping(double beta_scale, double energy_shift,
                                   std::optional<int> selection_qubits) const {
    HamiltonianSpec s = *this;
    s.beta_scale_ = beta_scale;
    s.energy_shift_ = energy_shift;
    s.selection_qubits_ = selection_qubits;
    return s;
  }

 private:
  void validate_term(const Term& t, std::size_t i) const {
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (t.padding) {
      if (t.coeff != 0.0) throw InputError(where + ": padding term must have zero coefficient");
    } else if (!(t.coeff > 0.0) || !std::isfinite(t.coeff)) {
      throw InputError(where + ": coefficient must be positive");
    }
    const bool is_pauli = std::holds_alternative<PauliString>(t.op);
    if (kind_ == HamiltonianKind::UnitarySum && !is_pauli) {
      throw InputError(where + ": unitary_sum terms must be Pauli strings");
    }
    if (kind_ == HamiltonianKind::ProjectorSum && is_pauli) {
      throw InputError(where + ": projector_sum terms must be projector matrices");
    }
    const int q = is_pauli ? std::get<PauliString>(t.op).qubits()
                           : std::get<ProjectorTerm>(t.op).qubits();
    if (q != qubits_) {
      throw InputError(where + ": acts on " + std::to_string(q) + " qubits, expected m = " +
                       std::to_string(qubits_));
    }
  }

  HamiltonianKind kind_;
  int qubits_;
  std::vector<Term> terms_;
  double alpha_ = 0.0;
  double beta_scale_ = 1.0;
  double energy_shift_ = 0.0;
  std::optional<int> selection_qubits_;
};

inline DenseOperator to_dense(const HamiltonianSpec& spec) {
  require_dense_cap(spec.qubits());
  DenseOperator h(spec.qubits());
  for (const auto& t : spec.terms()) {
    if (t.coeff == 0.0) continue;
    h += Complex(t.coeff) * t.to_dense();
  }
  return h;
}

/// Divides every coefficient by the L1 norm; returns the result and beta * alpha.
inline std::pair<HamiltonianSpec, double> normalize(const HamiltonianSpec& spec, double beta) {
  const double a = spec.l1_norm();
  if (a == 0.0 || a == 1.0) return {spec, beta};
  std::vector<Term> terms = spec.terms();
  for (auto& t : terms) t.coeff /= a;
  HamiltonianSpec out(spec.kind(), spec.qubits(), std::move(terms));
  return {out.with_bookkeeping(spec.beta_scale() * a, spec.energy_shift() / a,
                               spec.selection_qubits()),
          beta * a};
}

inline int ceil_log2(std::size_t n) {
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

/// Appends zero-weight identity terms so that L = 2^{m'_1} (unitary sums) or
/// L + 1 = 2^{m'_1} (projector sums). The dense form is unchanged.
inline HamiltonianSpec pad_to_power_of_two(const HamiltonianSpec& spec) {
  std::vector<Term> terms;
  for (const auto& t : spec.terms()) {
    if (!t.padding) terms.push_back(t);
  }
  const std::size_t active = terms.size();
  int m1 = 0;
  std::size_t target = 0;
  if (spec.kind() == HamiltonianKind::UnitarySum) {
    m1 = std::max(1, ceil_log2(active));  // at least one selection qubit
    target = std::size_t{1} << m1;
  } else {
    m1 = ceil_log2(active + 1);
    target = (std::size_t{1} << m1) - 1;
  }
  while (terms.size() < target) {
    if (spec.kind() == HamiltonianKind::UnitarySum) {
      terms.push_back(Term{0.0, PauliString::identity(spec.qubits()), true});
    } else {
      terms.push_back(Term{0.0, ProjectorTerm(DenseOperator::identity(spec.qubits())), true});
    }
  }
  HamiltonianSpec out(spec.kind(), spec.qubits(), std::move(terms));
  return out.with_bookkeeping(spec.beta_scale(), spec.energy_shift(), m1);
}

/// Rewrites sum_l a_l P_l (P_l Pauli) as sum_l 2 a_l (1 + P_l)/2 - sum_l a_l.
inline HamiltonianSpec shift_to_projectors(const HamiltonianSpec& spec) {
  if (spec.kind() != HamiltonianKind::UnitarySum) {
    throw InputError("shift_to_projectors: spec must be a unitary_sum");
  }
  require_dense_cap(spec.qubits());
  const auto id = DenseOperator::identity(spec.qubits());
  std::vector<Term> terms;
  double shift = 0.0;
  for (const auto& t : spec.terms()) {
    if (t.padding) continue;
    DenseOperator p = t.to_dense();
    if (max_abs(p * p - id) > 1e-12) throw InputError("shift_to_projectors: term not involutory");
    terms.push_back(Term{2.0 * t.coeff, ProjectorTerm(Complex(0.5) * (id + p)), false});
    shift += t.coeff;
  }
  HamiltonianSpec out(HamiltonianKind::ProjectorSum, spec.qubits(), std::move(terms));
  return out.with_bookkeeping(spec.beta_scale(), spec.energy_shift() - shift, std::nullopt);
}

/// Lifts a k-qubit operator on `support` to the full m-qubit register.
inline DenseOperator embed_local(const DenseOperator& local, const std::vector<int>& support,
                                 int m) {
  const int k = static_cast<int>(support.size());
  if (local.qubits() != k) throw InputError("embed_local: support size mismatch");
  std::uint64_t support_mask = 0;
  for (int s : support) support_mask |= std::uint64_t{1} << (m - 1 - s);
  const auto sub_index = [&](std::uint64_t full) {
    std::uint64_t idx = 0;
    for (int i = 0; i < k; ++i) idx = (idx << 1) | ((full >> (m - 1 - support[i])) & 1U);
    return static_cast<Eigen::Index>(idx);
  };
  const std::uint64_t d = dim_of(m);
  DenseOperator out(m);
  for (std::uint64_t r = 0; r < d; ++r) {
    for (std::uint64_t c = 0; c < d; ++c) {
      if ((r & ~support_mask) != (c & ~support_mask)) continue;
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          local(sub_index(r), sub_index(c));
    }
  }
  return out;
}

/// Result of reducing a sum of local Hermitian terms to a projector sum
/// H = (H_tilde - lambda) / norm_scale.
struct LocalDecomposition {
  HamiltonianSpec spec;
  double lambda;      // sum of the local ground energies
  double norm_scale;  // 2 * sum of local operator norms
};

inline LocalDecomposition decompose_local_terms(const std::vector<LocalTerm>& locals, int m) {
  if (m < 1) throw InputError("local_terms: m must be >= 1");
  require_dense_cap(m);
  struct Local {
    EigenSystem es;
    const LocalTerm* term;
  };
  std::vector<Local> spectra;
  double lambda = 0.0;
  double norm_sum = 0.0;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    const auto& lt = locals[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (lt.support.empty() || lt.support.size() > 10) {
      throw InputError(where + ": support size must be in [1, 10]");
    }
    for (std::size_t a = 0; a < lt.support.size(); ++a) {
      if (lt.support[a] < 0 || lt.support[a] >= m) {
        throw InputError(where + ": support index out of range");
      }
      for (std::size_t b = a + 1; b < lt.support.size(); ++b) {
        if (lt.support[a] == lt.support[b]) throw InputError(where + ": repeated support index");
      }
    }
    if (lt.matrix.qubits() != static_cast<int>(lt.support.size())) {
      throw InputError(where + ": matrix dimension does not match support size");
    }
    if (!lt.matrix.is_hermitian()) throw InputError(where + ": local term is not Hermitian");
    EigenSystem es = eigh(lt.matrix);
    lambda += es.values(0);
    norm_sum += es.values.cwiseAbs().maxCoeff();
    spectra.push_back({std::move(es), &lt});
  }
  const double gamma = 2.0 * norm_sum;
  std::vector<Term> terms;
  if (gamma > 0.0) {
    for (const auto& [es, lt] : spectra) {
      const double lmin = es.values(0);
      for (Eigen::Index d = 0; d < es.values.size(); ++d) {
        const double c = (es.values(d) - lmin) / gamma;
        if (c <= 1e-14) continue;
        const Vector v = es.vectors.matrix().col(d);
        DenseOperator proj(lt->matrix.qubits(), v * v.adjoint());
        terms.push_back(Term{c, ProjectorTerm(embed_local(proj, lt->support, m)), false});
      }
    }
  }
  HamiltonianSpec spec(HamiltonianKind::ProjectorSum, m, std::move(terms));
  const double beta_scale = gamma > 0.0 ? gamma : 0.0;
  const double shift = gamma > 0.0 ? lambda / gamma : 0.0;
  return {spec.with_bookkeeping(beta_scale, shift, std::nullopt), lambda, gamma};
}

// ---------------------------------------------------------------------------
// JSON input/output

namespace detail {

inline Complex parse_entry(const nlohmann::json& e, const std::string& where) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InputError(where + ": matrix entry must be a number or [re, im]");
}

inline DenseOperator parse_matrix(const nlohmann::json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw InputError(where + ": matrix must be a list of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix mat(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InputError(where + ": matrix row " + std::to_string(r) + " has wrong length");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      mat(r, c) = parse_entry(row[static_cast<std::size_t>(c)],
                              where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  try {
    return DenseOperator::from_matrix(std::move(mat));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline nlohmann::json matrix_to_json(const DenseOperator& op) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < op.dim(); ++c) row.push_back({op(r, c).real(), op(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double parse_coeff(const nlohmann::json& term, const std::string& where, bool padding) {
  if (!term[1].is_number()) throw InputError(where + ": coefficient must be a number");
  const double c = term[1].get<double>();
  if (!padding && !(c > 0.0)) throw InputError(where + ": coefficient must be positive");
  return c;
}

inline bool parse_padding_flag(const nlohmann::json& term, const std::string& where) {
  if (term.size() == 2) return false;
  if (term.size() == 3 && term[2].is_object()) return term[2].value("padding", false);
  throw InputError(where + ": term must be [operator, coefficient]");
}

}  // namespace detail

inline std::vector<LocalTerm> parse_local_terms(const nlohmann::json& terms, int m) {
  std::vector<LocalTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (!t.is_object() || !t.contains("support") || !t.contains("matrix")) {
      throw InputError(where + ": local term needs \"support\" and \"matrix\"");
    }
    std::vector<int> support;
    for (const auto& s : t["support"]) {
      if (!s.is_number_integer()) throw InputError(where + ".support: indices must be integers");
      support.push_back(s.get<int>());
    }
    DenseOperator mat = detail::parse_matrix(t["matrix"], where + ".matrix");
    if (mat.qubits() != static_cast<int>(support.size())) {
      throw InputError(where + ".matrix: dimension 2^" + std::to_string(mat.qubits()) +
                       " does not match support size " + std::to_string(support.size()));
    }
    for (int s : support) {
      if (s < 0 || s >= m) throw InputError(where + ".support: index out of range [0, m)");
    }
    out.push_back(LocalTerm{std::move(support), std::move(mat)});
  }
  return out;
}

/// Parses the Hamiltonian JSON format. `local_terms` inputs are reduced to a
/// projector sum by decompose_local_terms.
inline HamiltonianSpec parse_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("top level must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw InputError("kind: missing or not a string");
  if (!doc.contains("m") || !doc["m"].is_number_integer()) throw InputError("m: missing or not an integer");
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw InputError("terms: missing or not a list");
  const std::string kind = doc["kind"].get<std::string>();
  const int m = doc["m"].get<int>();
  if (m < 1 || m > 30) throw InputError("m: must be in [1, 30]");
  const auto& jterms = doc["terms"];

  if (kind == "local_terms") return decompose_local_terms(parse_local_terms(jterms, m), m).spec;

  std::vector<Term> terms;
  HamiltonianKind hk;
  if (kind == "unitary_sum") {
    hk = HamiltonianKind::UnitarySum;
  } else if (kind == "projector_sum") {
    hk = HamiltonianKind::ProjectorSum;
  } else {
    throw InputError("kind: expected unitary_sum, projector_sum or local_terms, got '" + kind + "'");
  }
  for (std::size_t i = 0; i < jterms.size(); ++i) {
    const auto& t = jterms[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() < 2) throw InputError(where + ": term must be [operator, coefficient]");
    const bool padding = detail::parse_padding_flag(t, where);
    const double c = detail::parse_coeff(t, where, padding);
    if (hk == HamiltonianKind::UnitarySum) {
      if (!t[0].is_string()) throw InputError(where + ": Pauli string expected");
      PauliString p(t[0].get<std::string>());
      if (p.qubits() != m) {
        throw InputError(where + ": Pauli string has " + std::to_string(p.qubits()) +
                         " letters, expected m = " + std::to_string(m));
      }
      terms.push_back(Term{c, std::move(p), padding});
    } else {
      DenseOperator mat = detail::parse_matrix(t[0], where + ".matrix");
      if (mat.qubits() != m) throw InputError(where + ".matrix: dimension must be 2^m");
      try {
        terms.push_back(Term{c, ProjectorTerm(std::move(mat)), padding});
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    }
  }
  HamiltonianSpec spec(hk, m, std::move(terms));
  const double beta_scale = doc.value("beta_scale", 1.0);
  const double shift = doc.value("energy_shift", 0.0);
  std::optional<int> sel;
  if (doc.contains("selection_qubits")) sel = doc["selection_qubits"].get<int>();
  return spec.with_bookkeeping(beta_scale, shift, sel);
}

inline nlohmann::json spec_to_json(const HamiltonianSpec& spec) {
  nlohmann::json doc;
  doc["kind"] = to_string(spec.kind());
  doc["m"] = spec.qubits();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : spec.terms()) {
    nlohmann::json jt = nlohmann::json::array();
    if (const auto* p = std::get_if<PauliString>(&t.op)) {
      jt.push_back(p->letters());
    } else {
      jt.push_back(detail::matrix_to_json(std::get<ProjectorTerm>(t.op).matrix()));
    }
    jt.push_back(t.coeff);
    if (t.padding) jt.push_back({{"padding", true}});
    terms.push_back(std::move(jt));
  }
  doc["terms"] = std::move(terms);
  if (spec.beta_scale() != 1.0) doc["beta_scale"] = spec.beta_scale();
  if (spec.energy_shift() != 0.0) doc["energy_shift"] = spec.energy_shift();
  if (spec.selection_qubits()) doc["selection_qubits"] = *spec.selection_qubits();
  return doc;
}

inline std::string serialize(const HamiltonianSpec& spec) { return spec_to_json(spec).dump(); }

}  // namespace pfdqc1
