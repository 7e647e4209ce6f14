#include "hodgevar/model.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hodgevar {

namespace {

using nlohmann::ordered_json;

// Expansion of d w^a (bar = false) or d w~^a (bar = true) as a list of
// 2-form monomials with coefficients.  Conjugate equations are derived,
// never stored.
struct TwoFormTerm {
  Mask I, J;
  Complex c;
};

std::vector<TwoFormTerm> d_of_generator(const std::vector<std::vector<DTerm>>& table, int a,
                                        bool bar) {
  std::vector<TwoFormTerm> out;
  for (const DTerm& t : table[a - 1]) {
    if (!bar) {
      switch (t.kind) {
        case TermKind::hol:
          out.push_back({index_bit(t.i) | index_bit(t.j), 0, t.c});
          break;
        case TermKind::mix:
          out.push_back({index_bit(t.i), index_bit(t.j), t.c});
          break;
        case TermKind::anti:
          out.push_back({0, index_bit(t.i) | index_bit(t.j), t.c});
          break;
      }
    } else {
      // conj(w^i/\w^j) = w~^i/\w~^j, conj(w^i/\w~^j) = -w^j/\w~^i,
      // conj(w~^i/\w~^j) = w^i/\w^j.
      switch (t.kind) {
        case TermKind::hol:
          out.push_back({0, index_bit(t.i) | index_bit(t.j), std::conj(t.c)});
          break;
        case TermKind::mix:
          out.push_back({index_bit(t.j), index_bit(t.i), -std::conj(t.c)});
          break;
        case TermKind::anti:
          out.push_back({index_bit(t.i) | index_bit(t.j), 0, std::conj(t.c)});
          break;
      }
    }
  }
  return out;
}

TermKind parse_kind(const std::string& k) {
  if (k == "hol") return TermKind::hol;
  if (k == "mix") return TermKind::mix;
  if (k == "anti") return TermKind::anti;
  throw MalformedSpec("unknown kind \"" + k + "\" (expected hol|mix|anti)");
}

const char* kind_name(TermKind k) {
  switch (k) {
    case TermKind::hol: return "hol";
    case TermKind::mix: return "mix";
    default: return "anti";
  }
}

}  // namespace

Model::Model(std::string name, int n, std::vector<std::vector<DTerm>> d_table)
    : name_(std::move(name)), d_table_(std::move(d_table)) {
  if (n < 1) throw MalformedSpec("n must be >= 1");
  if (int(d_table_.size()) != n)
    throw MalformedSpec("d_omega must have exactly n = " + std::to_string(n) + " entries");
  for (int a = 1; a <= n; ++a) {
    for (const DTerm& t : d_table_[a - 1]) {
      if (t.i < 1 || t.i > n || t.j < 1 || t.j > n)
        throw MalformedSpec("index out of range in d_omega[" + std::to_string(a) + "]");
      if (t.kind != TermKind::mix && t.i >= t.j)
        throw MalformedSpec("need i < j for hol/anti terms in d_omega[" + std::to_string(a) + "]");
      if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()))
        throw MalformedSpec("non-finite coefficient in d_omega[" + std::to_string(a) + "]");
    }
  }
  alg_ = std::make_shared<const Algebra>(n);
  build_differentials();
  build_contraction_terms();

  // Fast float screen for d^2 = 0; the exact certificate is available via
  // integrability_defect_exact().
  Eigen::MatrixXcd dd = d_ * d_;
  double scale = std::max(1.0, d_.cwiseAbs().maxCoeff());
  if (dd.cwiseAbs().maxCoeff() > 1e-10 * scale * scale) {
    int worst = 0;
    dd.colwise().norm().maxCoeff(&worst);
    throw NotIntegrable("d^2 != 0 on monomial " + alg_->name(worst));
  }
}

void Model::build_differentials() {
  const Algebra& A = *alg_;
  int dim = A.dim();
  d_ = Eigen::MatrixXcd::Zero(dim, dim);
  d_ex_ = exact::Matrix(dim, dim);
  B_.assign(A.n(), Eigen::MatrixXcd::Zero(A.n(), A.n()));

  for (int a = 1; a <= A.n(); ++a)
    for (const DTerm& t : d_table_[a - 1])
      if (t.kind == TermKind::mix) B_[a - 1](t.i - 1, t.j - 1) += t.c;

  for (int col = 0; col < dim; ++col) {
    const Monomial& m = A.monomial(col);
    auto holo = mask_indices(m.I);
    auto anti = mask_indices(m.J);
    int total = int(holo.size() + anti.size());
    for (int pos = 0; pos < total; ++pos) {
      bool bar = pos >= int(holo.size());
      int gen = bar ? anti[pos - holo.size()] : holo[pos - 0];
      // Leibniz sign for the generator at this position.
      double pos_sign = (pos % 2 == 0) ? 1.0 : -1.0;
      // Prefix: generators before pos; suffix: the rest.
      Mask preI = 0, preJ = 0, sufI = 0, sufJ = 0;
      for (int r = 0; r < total; ++r) {
        if (r == pos) continue;
        bool rb = r >= int(holo.size());
        int g = rb ? anti[r - holo.size()] : holo[r];
        Mask bit = index_bit(g);
        if (r < pos) (rb ? preJ : preI) |= bit;
        else (rb ? sufJ : sufI) |= bit;
      }
      int pre_id = A.id_of(preI, preJ);
      int suf_id = A.id_of(sufI, sufJ);
      for (const TwoFormTerm& tf : d_of_generator(d_table_, gen, bar)) {
        int tf_id = A.id_of(tf.I, tf.J);
        auto [s1, mid] = A.mul(pre_id, tf_id);
        if (s1 == 0) continue;
        auto [s2, row] = A.mul(mid, suf_id);
        if (s2 == 0) continue;
        Complex coeff = pos_sign * double(s1 * s2) * tf.c;
        d_(row, col) += coeff;
        d_ex_.at(row, col) += exact::Scalar::from_double(coeff.real(), coeff.imag());
      }
    }
  }

  // Bidegree projections of d; for models without anti terms d = del + delbar.
  del_ = Eigen::MatrixXcd::Zero(dim, dim);
  delbar_ = Eigen::MatrixXcd::Zero(dim, dim);
  del_ex_ = exact::Matrix(dim, dim);
  delbar_ex_ = exact::Matrix(dim, dim);
  for (int col = 0; col < dim; ++col) {
    Bidegree bc = A.bidegree(col);
    for (int row = 0; row < dim; ++row) {
      if (d_(row, col) == Complex(0, 0) && d_ex_.at(row, col).is_zero()) continue;
      Bidegree br = A.bidegree(row);
      if (br.p == bc.p + 1 && br.q == bc.q) {
        del_(row, col) = d_(row, col);
        del_ex_.at(row, col) = d_ex_.at(row, col);
      } else if (br.p == bc.p && br.q == bc.q + 1) {
        delbar_(row, col) = d_(row, col);
        delbar_ex_.at(row, col) = d_ex_.at(row, col);
      }
    }
  }
}

void Model::build_contraction_terms() {
  const Algebra& A = *alg_;
  c_terms_.clear();
  for (int col = 0; col < A.dim(); ++col) {
    const Monomial& m = A.monomial(col);
    for (int a : mask_indices(m.I)) {
      // Replace w^a by w~^beta; a derivation of degree zero carries no
      // positional sign, only the reordering signs.
      Mask restI = m.I & ~index_bit(a);
      // Move w~^beta from the slot of w^a to the canonical position: it must
      // pass the holomorphic generators after a.
      int pass = std::popcount(restI >> a);
      int base_sign = (pass % 2 == 0) ? 1 : -1;
      for (int beta = 1; beta <= A.n(); ++beta) {
        Mask bbit = index_bit(beta);
        if (m.J & bbit) continue;
        // Merge w~^beta into the antiholomorphic part.
        int mrg = merge_sign(bbit, m.J);
        int row = A.id_of(restI, m.J | bbit);
        c_terms_.push_back({row, col, a, beta, base_sign * mrg});
      }
    }
  }
}

Eigen::MatrixXcd Model::contraction_matrix(const Eigen::MatrixXcd& phi) const {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(alg_->dim(), alg_->dim());
  for (const ContractionTerm& t : c_terms_)
    M(t.row, t.col) += double(t.sign) * phi(t.alpha - 1, t.beta - 1);
  return M;
}

exact::Matrix Model::contraction_matrix_exact(const exact::Matrix& phi) const {
  exact::Matrix M(alg_->dim(), alg_->dim());
  exact::Scalar neg = exact::Scalar(-1);
  for (const ContractionTerm& t : c_terms_) {
    exact::Scalar v = phi.at(t.alpha - 1, t.beta - 1);
    M.at(t.row, t.col) += (t.sign > 0) ? v : neg * v;
  }
  return M;
}

std::string Model::integrability_defect_exact() const {
  exact::Matrix dd = d_ex_ * d_ex_;
  for (int col = 0; col < dd.cols(); ++col)
    for (int row = 0; row < dd.rows(); ++row)
      if (!dd.at(row, col).is_zero()) return alg_->name(col);
  return {};
}

Model Model::load(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw MalformedSpec(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("d_omega"))
    throw MalformedSpec("model file needs fields \"n\" and \"d_omega\"");
  std::string name = j.value("name", std::string("unnamed"));
  int n = 0;
  try {
    n = j.at("n").get<int>();
  } catch (const std::exception&) {
    throw MalformedSpec("\"n\" must be an integer");
  }
  if (!j.at("d_omega").is_array()) throw MalformedSpec("\"d_omega\" must be an array");
  std::vector<std::vector<DTerm>> table;
  for (const auto& row : j.at("d_omega")) {
    std::vector<DTerm> terms;
    if (!row.is_array()) throw MalformedSpec("each d_omega entry must be an array of terms");
    for (const auto& t : row) {
      DTerm term;
      try {
        term.c = Complex(t.at("re").get<double>(), t.at("im").get<double>());
        term.kind = parse_kind(t.at("kind").get<std::string>());
        term.i = t.at("i").get<int>();
        term.j = t.at("j").get<int>();
      } catch (const MalformedSpec&) {
        throw;
      } catch (const std::exception& e) {
        throw MalformedSpec(std::string("bad term: ") + e.what());
      }
      terms.push_back(term);
    }
    table.push_back(std::move(terms));
  }
  return Model(name, n, std::move(table));
}

Model Model::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedSpec("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

std::string Model::to_json() const {
  ordered_json j;
  j["name"] = name_;
  j["n"] = n();
  ordered_json rows = ordered_json::array();
  for (const auto& row : d_table_) {
    ordered_json terms = ordered_json::array();
    for (const DTerm& t : row) {
      ordered_json term;
      term["re"] = t.c.real();
      term["im"] = t.c.imag();
      term["kind"] = kind_name(t.kind);
      term["i"] = t.i;
      term["j"] = t.j;
      terms.push_back(term);
    }
    rows.push_back(terms);
  }
  j["d_omega"] = rows;
  return j.dump(2);
}

Model load_model(const std::string& json_text) { return Model::load(json_text); }

Model rescale_coframe(const Model& m, const std::vector<double>& s) {
  if (int(s.size()) != m.n()) throw MalformedSpec("coframe scale needs exactly n entries");
  for (double v : s)
    if (!(v > 0)) throw MalformedSpec("coframe scale entries must be positive");
  // d(s_a w^a) expressed in the rescaled generators picks up s_a / (s_i s_j).
  std::vector<std::vector<DTerm>> table = m.d_table();
  for (int a = 1; a <= m.n(); ++a)
    for (DTerm& t : table[a - 1]) t.c *= s[a - 1] / (s[t.i - 1] * s[t.j - 1]);
  return Model(m.name() + "-rescaled", m.n(), std::move(table));
}

Form differential(const Model& m, Diff which, const Form& a) {
  if (a.is_unset()) return {};
  const Eigen::MatrixXcd& op =
      which == Diff::d ? m.d() : (which == Diff::del ? m.del() : m.delbar());
  return Form(m.algebra(), op * a.coeffs());
}

}  // namespace hodgevar
