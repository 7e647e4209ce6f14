// Command-line surface: model/family ingestion, cohomology tables, canonical
// deformation reports, period-map trajectories and the verification suites.
#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "hodgevar/canonical.hpp"
#include "hodgevar/cohomology.hpp"
#include "hodgevar/period.hpp"
#include "hodgevar/report.hpp"

using namespace hodgevar;

namespace {

struct GridPoint {
  Complex value;
  std::string re_text = "0", im_text = "0";  // exact decimal forms
};

// One complex literal: "0.05", "-0.1", "0.01i", "0.02+0.03i", "1-2i".
GridPoint parse_complex_token(const std::string& tok) {
  GridPoint g;
  std::string s = tok;
  if (s.empty()) throw MalformedSpec("empty grid token");
  auto is_imag = [](const std::string& part) { return !part.empty() && part.back() == 'i'; };
  // find a +/- separator that is not leading and not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  if (split != std::string::npos) {
    g.re_text = s.substr(0, split);
    std::string rest = s.substr(split);
    if (!is_imag(rest)) throw MalformedSpec("bad grid token: " + tok);
    rest.pop_back();
    if (rest == "+" || rest == "-") rest += "1";
    g.im_text = rest;
  } else if (is_imag(s)) {
    s.pop_back();
    if (s.empty() || s == "+" || s == "-") s += "1";
    g.im_text = s;
    g.re_text = "0";
  } else {
    g.re_text = s;
  }
  g.value = Complex(exact::parse_decimal(g.re_text).convert_to<double>(),
                    exact::parse_decimal(g.im_text).convert_to<double>());
  return g;
}

std::vector<GridPoint> parse_grid(const std::string& grid) {
  std::vector<GridPoint> out;
  std::string cur;
  for (char c : grid + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(parse_complex_token(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (out.empty()) throw MalformedSpec("empty grid");
  return out;
}

std::vector<GridPoint> default_grid_points() {
  return parse_grid("0,0.01,-0.01,0.05,-0.05,0.1,-0.1");
}

// Cartesian product of the scalar grid over m parameters, capped.
std::vector<std::vector<GridPoint>> grid_tuples(const std::vector<GridPoint>& scalar, int m) {
  std::vector<std::vector<GridPoint>> out{{}};
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<GridPoint>> next;
    for (const auto& prefix : out)
      for (const GridPoint& g : scalar) {
        auto t = prefix;
        t.push_back(g);
        next.push_back(std::move(t));
        if (next.size() > 200) {
          std::cerr << "warning: grid truncated to 200 points\n";
          return next;
        }
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Complex> values_of(const std::vector<GridPoint>& t) {
  std::vector<Complex> v;
  for (const GridPoint& g : t) v.push_back(g.value);
  return v;
}

std::string point_text(const std::vector<GridPoint>& t) {
  std::string s;
  for (const auto& g : t) {
    if (!s.empty()) s += ";";
    s += fmt_complex(g.value);
  }
  return s;
}

struct CommonOpts {
  double tol = 1e-9;
  int order = 6;
  std::string grid;
  std::string backend = "float";
  std::string out = "table";
  std::uint64_t seed = 42;
  double radius = 0.1;
  std::vector<double> coframe_scale;
  bool allow_non_ddbar = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tol", o.tol, "rank/residual tolerance (default 1e-9)");
  cmd->add_option("--order", o.order, "power series truncation order (default 6)");
  cmd->add_option("--grid", o.grid,
                  "comma separated complex sample points, e.g. 0,0.05,-0.05,0.01i");
  cmd->add_option("--backend", o.backend, "float|exact (default float)")
      ->check(CLI::IsMember({"float", "exact"}));
  cmd->add_option("--out", o.out, "table|json|csv (default table)")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--seed", o.seed, "seed for randomized property checks (default 42)");
  cmd->add_option("--radius", o.radius,
                  "admissible |t| for grid samples; points beyond it are warned about");
  cmd->add_option("--coframe-scale", o.coframe_scale,
                  "positive weights s_1..s_n: use the metric that makes s_a w^a orthonormal")
      ->delimiter(',');
  cmd->add_flag("--allow-non-ddbar", o.allow_non_ddbar,
                "run del-delbar-gated checks informationally on failing models");
}

Config config_of(const CommonOpts& o) {
  Config cfg;
  cfg.tol = o.tol;
  cfg.order = o.order;
  cfg.seed = o.seed;
  cfg.sample_radius = o.radius;
  return cfg;
}

Model load_model_opts(const std::string& path, const CommonOpts& o) {
  Model m = Model::load_file(path);
  if (o.coframe_scale.empty()) return m;
  return rescale_coframe(m, o.coframe_scale);
}

Json config_json(const CommonOpts& o, const std::vector<GridPoint>* grid) {
  Json j;
  j["tol"] = json_num(o.tol);
  j["order"] = o.order;
  j["backend"] = o.backend;
  j["seed"] = o.seed;
  if (grid) {
    Json g = Json::array();
    for (const GridPoint& gp : *grid) g.push_back(fmt_complex(gp.value));
    j["grid"] = g;
  }
  return j;
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

void print_warnings(const MetricContext& mc) {
  for (const std::string& w : mc.warnings()) std::cerr << "warning: " << w << "\n";
}

void warn_radius(const std::vector<GridPoint>& g, double radius) {
  for (const GridPoint& gp : g)
    if (std::abs(gp.value) > radius + 1e-12)
      std::cerr << "warning: grid point " << fmt_complex(gp.value)
                << " lies outside the configured sample radius " << fmt_num(radius) << "\n";
}

int cmd_cohomology(const std::string& model_path, const std::string& family_path,
                   const std::string& theory, const CommonOpts& opts) {
  Model model = load_model_opts(model_path, opts);
  MetricContext mc(model, config_of(opts));
  print_warnings(mc);
  bool use_exact = opts.backend == "exact";
  ExactOps ex;
  if (use_exact) ex = ExactOps::build(model);
  CohomologyTable table = cohomology(mc);
  int n = model.n();

  Json out;
  out["command"] = "cohomology";
  out["model"] = model.name();
  out["config"] = config_json(opts, nullptr);
  TextTable tt({"theory", "p", "q", "dim"});
  auto emit = [&](const std::string& th) {
    Json rows = Json::array();
    if (th == "derham") {
      for (int k = 0; k <= 2 * n; ++k) {
        int dim = use_exact ? derham_dim_exact(ex, k) : table.betti[k];
        Json row;
        row["k"] = k;
        row["dim"] = dim;
        rows.push_back(row);
        tt.add_row({"derham(b" + std::to_string(k) + ")", "-", "-", std::to_string(dim)});
      }
    } else {
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
          int dim = 0;
          if (th == "bc")
            dim = use_exact ? bc_dim_quotient_exact(ex, p, q) : table.bc[{p, q}];
          else
            dim = use_exact ? dolbeault_dim_exact(ex, p, q) : table.dolbeault[{p, q}];
          Json row;
          row["p"] = p;
          row["q"] = q;
          row["dim"] = dim;
          rows.push_back(row);
          tt.add_row({th, std::to_string(p), std::to_string(q), std::to_string(dim)});
        }
    }
    out[th] = rows;
  };
  if (theory == "all" || theory == "bc") emit("bc");
  if (theory == "all" || theory == "dolbeault") emit("dolbeault");
  if (theory == "all" || theory == "derham") emit("derham");

  // Deformed Bott-Chern table keyed by (t, p, q) when a family is given.
  TextTable dt({"t", "p", "q", "dim_bc_phi"});
  if (!family_path.empty()) {
    Beltrami phi = Beltrami::load_file(family_path, model.n());
    auto scalar_grid = opts.grid.empty() ? default_grid_points() : parse_grid(opts.grid);
    out["family"] = phi.name();
    Json rows = Json::array();
    for (const auto& t : grid_tuples(scalar_grid, phi.params())) {
      Json jt;
      jt["t"] = point_text(t);
      try {
        DeformedDims dd = deformed_bc_dims(mc, phi, values_of(t));
        Json dims = Json::array();
        for (auto& [pq, dim] : dd.dims) {
          Json row;
          row["p"] = pq.first;
          row["q"] = pq.second;
          row["dim"] = dim;
          dims.push_back(row);
          dt.add_row({point_text(t), std::to_string(pq.first), std::to_string(pq.second),
                      std::to_string(dim)});
        }
        jt["dims"] = dims;
      } catch (const Error& e) {
        jt["error"] = e.what();
        dt.add_row({point_text(t), "-", "-", std::string("error: ") + e.what()});
      }
      rows.push_back(jt);
    }
    out["deformed_bc"] = rows;
  }

  if (opts.out == "json")
    std::cout << out.dump(2) << "\n";
  else {
    std::cout << "model: " << model.name() << " (backend " << opts.backend << ")\n" << tt.str();
    if (!family_path.empty()) std::cout << "\ndeformed Bott-Chern dimensions\n" << dt.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ddbar-check
// ---------------------------------------------------------------------------

int cmd_ddbar(const std::string& model_path, const CommonOpts& opts) {
  Model model = load_model_opts(model_path, opts);
  MetricContext mc(model, config_of(opts));
  print_warnings(mc);
  DdbarReport rep = ddbar_check(mc);
  Json out;
  out["command"] = "ddbar-check";
  out["model"] = model.name();
  out["config"] = config_json(opts, nullptr);
  out["holds"] = rep.overall;
  Json rows = Json::array();
  TextTable tt({"p", "q", "ddbar"});
  for (auto& [pq, ok] : rep.blocks) {
    Json row;
    row["p"] = pq.first;
    row["q"] = pq.second;
    row["holds"] = ok;
    rows.push_back(row);
    tt.add_row({std::to_string(pq.first), std::to_string(pq.second), ok ? "yes" : "NO"});
  }
  out["blocks"] = rows;
  if (opts.out == "json")
    std::cout << out.dump(2) << "\n";
  else {
    std::cout << "model: " << model.name() << "\n" << tt.str();
    std::cout << (rep.overall ? "del-delbar lemma holds on every block\n"
                              : "del-delbar lemma FAILS on the blocks marked NO\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// deform
// ---------------------------------------------------------------------------

int cmd_deform(const std::string& model_path, const std::string& family_path, int p_opt,
               int q_opt, const CommonOpts& opts) {
  Model model = load_model_opts(model_path, opts);
  MetricContext mc(model, config_of(opts));
  print_warnings(mc);
  Beltrami phi = Beltrami::load_file(family_path, model.n());
  auto scalar_grid = opts.grid.empty() ? default_grid_points() : parse_grid(opts.grid);
  warn_radius(scalar_grid, opts.radius);
  auto tuples = grid_tuples(scalar_grid, phi.params());

  Json out;
  out["command"] = "deform";
  out["model"] = model.name();
  out["family"] = phi.name();
  out["config"] = config_json(opts, &scalar_grid);
  Json blocks = Json::array();
  TextTable tt({"(p,q)", "sigma0", "fixed-point", "t", "closedness", "member", "ddbar*-res"});

  int n = model.n();
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      if (p_opt >= 0 && p != p_opt) continue;
      if (q_opt >= 0 && q != q_opt) continue;
      const Eigen::MatrixXcd& H = mc.harmonic_basis_bc(p, q);
      if (H.cols() == 0) continue;
      Json jblock;
      jblock["p"] = p;
      jblock["q"] = q;
      Json gens = Json::array();
      for (int l = 0; l < H.cols(); ++l) {
        Form sigma0(model.algebra(), H.col(l));
        CanonicalDeformation cd = canonical_deformation(mc, sigma0, phi, opts.order);
        double fp = fixed_point_residual(mc, cd, phi);
        Json jgen;
        jgen["label"] = "sigma#" + std::to_string(l + 1);
        jgen["fixed_point_residual"] = json_num(fp);
        Json norms = Json::array();
        for (double nr : cd.degree_norms) norms.push_back(json_num(nr));
        jgen["degree_norms"] = norms;
        Json samples = Json::array();
        for (const auto& t : tuples) {
          Json jt;
          jt["t"] = point_text(t);
          try {
            double res = closedness_residual(mc, cd, phi, values_of(t));
            jt["closedness_residual"] = json_num(res);
            std::string member = res < 1e-8 * std::max(1.0, sigma0.norm()) ? "yes" : "no";
            FtildeResult ft = ftilde_eval(mc, {sigma0}, phi, values_of(t), opts.order);
            jt["ddbar_star_residual"] = json_num(ft.ddbar_star_residual[0]);
            jt["member_Vt"] = member;
            tt.add_row({"(" + std::to_string(p) + "," + std::to_string(q) + ")",
                        "#" + std::to_string(l + 1), fmt_num(fp), point_text(t), fmt_num(res),
                        member, fmt_num(ft.ddbar_star_residual[0])});
          } catch (const Error& e) {
            jt["error"] = e.what();
            tt.add_row({"(" + std::to_string(p) + "," + std::to_string(q) + ")",
                        "#" + std::to_string(l + 1), fmt_num(fp), point_text(t), "-", "error",
                        "-"});
          }
          samples.push_back(jt);
        }
        jgen["samples"] = samples;
        gens.push_back(jgen);
      }
      jblock["generators"] = gens;
      blocks.push_back(jblock);
    }
  }
  out["blocks"] = blocks;
  if (opts.out == "json")
    std::cout << out.dump(2) << "\n";
  else
    std::cout << "model: " << model.name() << ", family: " << phi.name() << "\n" << tt.str();
  return 0;
}

// ---------------------------------------------------------------------------
// period
// ---------------------------------------------------------------------------

int cmd_period(const std::string& model_path, const std::string& family_path, int p, int k,
               const CommonOpts& opts) {
  Model model = load_model_opts(model_path, opts);
  MetricContext mc(model, config_of(opts));
  print_warnings(mc);
  Beltrami phi = Beltrami::load_file(family_path, model.n());
  auto scalar_grid = opts.grid.empty() ? default_grid_points() : parse_grid(opts.grid);
  warn_radius(scalar_grid, opts.radius);
  auto tuples = grid_tuples(scalar_grid, phi.params());
  DdbarReport ddbar = ddbar_check(mc);
  if (!ddbar.overall)
    std::cerr << "warning: model fails the del-delbar lemma; period data is informational\n";
  PeriodEngine eng(mc, phi);

  // Derivative residuals at the center point, reused in every row.
  Json derivs = Json::array();
  for (int dir = 0; dir < phi.params(); ++dir) {
    Json d;
    d["direction"] = dir + 1;
    try {
      d["transversality"] = json_num(eng.transversality_residual(p, k, dir));
      d["diagram"] = json_num(eng.diagram_residual(p, k, dir));
    } catch (const Error& e) {
      d["error"] = e.what();
    }
    derivs.push_back(d);
  }

  Json rows = Json::array();
  std::vector<std::string> csv_lines;
  TextTable tt({"t", "dim", "closure", "pluecker"});
  for (const auto& t : tuples) {
    Json row;
    row["p"] = p;
    row["k"] = k;
    row["t"] = point_text(t);
    try {
      PeriodPoint pp = eng.period_point(p, k, values_of(t), !ddbar.overall);
      row["dim"] = pp.chart.dim();
      row["closure_residual"] = json_num(pp.closure_residual);
      row["pluecker"] = json_complex_vector(pp.chart.pluecker);
      Json res;
      for (int dir = 0; dir < phi.params(); ++dir) {
        std::string tag = phi.params() > 1 ? "_dir" + std::to_string(dir + 1) : "";
        try {
          res["holomorphy" + tag] = json_num(eng.holomorphy_residual(p, k, values_of(t), dir));
        } catch (const Error&) {
          res["holomorphy" + tag] = "skipped";
        }
        const Json& d = derivs[dir];
        if (d.contains("transversality")) {
          res["transversality" + tag] = d["transversality"];
          res["diagram" + tag] = d["diagram"];
        }
      }
      row["residuals"] = res;
      std::string pl;
      for (int i = 0; i < pp.chart.pluecker.size(); ++i)
        pl += (i ? " " : "") + fmt_complex(pp.chart.pluecker[i]);
      tt.add_row({point_text(t), std::to_string(pp.chart.dim()), fmt_num(pp.closure_residual),
                  pl});
      std::string line = fmt_num(values_of(t)[0].real()) + "," + fmt_num(values_of(t)[0].imag());
      for (int i = 0; i < pp.chart.pluecker.size(); ++i)
        line += "," + fmt_num(pp.chart.pluecker[i].real()) + "," +
                fmt_num(pp.chart.pluecker[i].imag());
      csv_lines.push_back(line);
    } catch (const Error& e) {
      row["error"] = e.what();
      tt.add_row({point_text(t), "-", "-", std::string("error: ") + e.what()});
    }
    rows.push_back(row);
  }
  if (opts.out == "json") {
    Json out;
    out["command"] = "period";
    out["model"] = model.name();
    out["family"] = phi.name();
    out["p"] = p;
    out["k"] = k;
    out["config"] = config_json(opts, &scalar_grid);
    out["points"] = rows;
    out["derivatives_at_0"] = derivs;
    std::cout << out.dump(2) << "\n";
  } else if (opts.out == "csv") {
    std::cout << "t_re,t_im,pluecker_re,pluecker_im,...\n";
    for (const auto& l : csv_lines) std::cout << l << "\n";
  } else {
    std::cout << "period chart F^" << p << "H^" << k << " for " << model.name() << " / "
              << phi.name() << "\n"
              << tt.str();
    for (const Json& d : derivs)
      if (d.contains("transversality"))
        std::cout << "direction " << d["direction"] << ": transversality "
                  << d["transversality"].dump() << ", diagram " << d["diagram"].dump() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | warn | skip
  double residual = 0.0;
  std::string detail;
};

class Verifier {
 public:
  Verifier(const Model& model, MetricContext& mc, const Beltrami* phi, const CommonOpts& opts,
           const std::vector<GridPoint>& scalar_grid)
      : model_(model),
        mc_(mc),
        phi_(phi),
        opts_(opts),
        scalar_(scalar_grid),
        ddbar_(ddbar_check(mc)) {
    if (phi_) tuples_ = grid_tuples(scalar_, phi_->params());
  }

  CheckResult axioms() {
    CheckResult r{"axioms", "pass", 0, ""};
    auto upd = [&](const Eigen::MatrixXcd& M) {
      r.residual = std::max(r.residual, M.size() ? M.cwiseAbs().maxCoeff() : 0.0);
    };
    upd(model_.d() * model_.d());
    upd(model_.del() * model_.del());
    upd(model_.delbar() * model_.delbar());
    upd(model_.del() * model_.delbar() + model_.delbar() * model_.del());
    bool exact_ok = model_.integrability_defect_exact().empty() &&
                    (model_.del_exact() * model_.del_exact()).is_zero() &&
                    (model_.delbar_exact() * model_.delbar_exact()).is_zero() &&
                    (model_.del_exact() * model_.delbar_exact() +
                     model_.delbar_exact() * model_.del_exact())
                        .is_zero();
    r.detail = exact_ok ? "exact backend: identically zero" : "exact backend: NONZERO";
    if (r.residual >= 1e-12 || !exact_ok) r.status = "fail";
    return r;
  }

  CheckResult eq33() {
    CheckResult r{"eq3.3", "pass", 0, ""};
    const Algebra& A = model_.algebra();
    for (int p = 0; p <= A.n() && r.status == "pass"; ++p)
      for (int q = 0; q <= A.n(); ++q) {
        const auto& blk = A.block(p, q);
        Eigen::MatrixXcd h = take_rows(mc_.harmonic_basis_bc(p, q), blk);
        Eigen::MatrixXcd im_ddbar(int(blk.size()), 0);
        if (p >= 1 && q >= 1)
          im_ddbar = orth(take_block(mc_.ddbar(), blk, A.block(p - 1, q - 1)), opts_.tol);
        Eigen::MatrixXcd stars =
            hcat((p + 1 <= A.n()) ? take_block(mc_.del_star(), blk, A.block(p + 1, q))
                                  : Eigen::MatrixXcd(int(blk.size()), 0),
                 (q + 1 <= A.n()) ? take_block(mc_.delbar_star(), blk, A.block(p, q + 1))
                                  : Eigen::MatrixXcd(int(blk.size()), 0));
        Eigen::MatrixXcd im_stars = orth(stars, opts_.tol);
        if (int(blk.size()) != h.cols() + im_ddbar.cols() + im_stars.cols()) {
          r.status = "fail";
          r.detail =
              "dimension split fails at (" + std::to_string(p) + "," + std::to_string(q) + ")";
          break;
        }
        double ortho = 0;
        if (h.cols() && im_ddbar.cols()) ortho = std::max(ortho, (h.adjoint() * im_ddbar).norm());
        if (h.cols() && im_stars.cols()) ortho = std::max(ortho, (h.adjoint() * im_stars).norm());
        if (im_ddbar.cols() && im_stars.cols())
          ortho = std::max(ortho, (im_ddbar.adjoint() * im_stars).norm());
        r.residual = std::max(r.residual, ortho);
      }
    if (r.residual >= 1e-9) r.status = "fail";
    return r;
  }

  CheckResult oracle() {
    CheckResult r{"oracle", "pass", 0, ""};
    ExactOps ex = ExactOps::build(model_);
    CohomologyTable t = cohomology(mc_);
    for (int p = 0; p <= model_.n(); ++p)
      for (int q = 0; q <= model_.n(); ++q) {
        if (t.bc[{p, q}] != bc_dim_quotient_exact(ex, p, q) ||
            t.bc[{p, q}] != bc_dim_laplacian_exact(ex, p, q) ||
            t.dolbeault[{p, q}] != dolbeault_dim_exact(ex, p, q))
          r.status = "fail";
      }
    for (int k = 0; k <= 2 * model_.n(); ++k)
      if (t.betti[k] != derham_dim_exact(ex, k)) r.status = "fail";
    r.detail = r.status == "pass" ? "float dims equal exact-rational dims"
                                  : "float dims differ from exact dims";
    return r;
  }

  CheckResult ddbar_report() {
    CheckResult r{"ddbar", "pass", 0, ddbar_.overall ? "lemma holds" : "lemma fails at"};
    if (!ddbar_.overall)
      for (auto [p, q] : ddbar_.failing)
        r.detail += " (" + std::to_string(p) + "," + std::to_string(q) + ")";
    return r;
  }

  CheckResult lemma41() {
    CheckResult r{"lemma4.1", "pass", 0, ""};
    if (!gate(r)) return r;
    std::mt19937_64 rng(opts_.seed);
    std::uniform_real_distribution<double> u(-1, 1);
    const Algebra& A = model_.algebra();
    int n = A.n();
    int count = 0;
    for (int it = 0; it < 50; ++it) {
      int k = 1 + int(rng() % (2 * n));
      int p = int(rng() % (std::min(k, n) + 1));
      Form sigma(A);
      for (int rr = std::max(p, k - n); rr <= std::min(n, k); ++rr) {
        const Eigen::MatrixXcd& H = mc_.harmonic_basis_bc(rr, k - rr);
        for (int l = 0; l < H.cols(); ++l)
          sigma = sigma + Form(A, H.col(l) * Complex(u(rng), u(rng)));
      }
      if (sigma.norm() < 1e-12) continue;
      PpbarDecomposition d = ppbar_decompose(mc_, sigma, p, opts_.allow_non_ddbar, &ddbar_);
      r.residual = std::max(r.residual, d.residual);
      ++count;
    }
    r.detail = std::to_string(count) + " constructed inputs";
    if (r.residual >= 1e-9 && r.status != "warn") r.status = "fail";
    return r;
  }

  CheckResult eq24() {
    CheckResult r{"eq2.4", "pass", 0, ""};
    if (!need_family(r)) return r;
    int used = 0;
    for (const auto& t : tuples_) {
      Eigen::MatrixXcd pt = phi_->eval(values_of(t));
      if (!is_integrable(model_, pt, opts_.tol)) continue;
      ++used;
      Eigen::MatrixXcd lhs =
          exp_contraction_matrix(model_, -pt) * model_.d() * exp_contraction_matrix(model_, pt);
      r.residual =
          std::max(r.residual, (lhs - deformed_d_matrix(model_, pt)).cwiseAbs().maxCoeff());
    }
    if (used == 0) {
      r.status = "fail";
      r.detail = "family not integrable anywhere on the grid";
      return r;
    }
    r.detail = std::to_string(used) + " integrable grid points";
    if (r.residual >= 1e-9) r.status = "fail";
    return r;
  }

  CheckResult eq25() {
    CheckResult r{"eq2.5", "pass", 0, ""};
    if (!need_family(r)) return r;
    const Algebra& A = model_.algebra();
    int used = 0;
    for (const auto& t : tuples_) {
      Eigen::MatrixXcd pt = phi_->eval(values_of(t));
      if (!is_integrable(model_, pt, opts_.tol)) continue;
      ++used;
      DeformedFrame fr = deformed_bigrading(model_, pt, opts_.tol);
      Eigen::MatrixXcd E = exp_contraction_matrix(model_, pt);
      for (int k = 0; k <= 2 * A.n(); ++k)
        for (int p = 0; p <= std::min(k, A.n()); ++p) {
          auto ids = A.filtration(p, k);
          if (ids.empty()) continue;
          Eigen::MatrixXcd img(A.dim(), int(ids.size())), target(A.dim(), int(ids.size()));
          for (int c = 0; c < int(ids.size()); ++c) {
            img.col(c) = E.col(ids[c]);
            target.col(c) = fr.basis.col(ids[c]);
          }
          r.residual = std::max(r.residual, containment_residual(img, target, opts_.tol));
        }
    }
    if (used == 0) {
      r.status = "fail";
      r.detail = "family not integrable anywhere on the grid";
      return r;
    }
    r.detail = std::to_string(used) + " integrable grid points, all p <= k";
    if (r.residual >= 1e-9) r.status = "fail";
    return r;
  }

  CheckResult eq37() {
    CheckResult r{"eq3.7", "pass", 0, ""};
    if (!need_family(r)) return r;
    CohomologyTable table = cohomology(mc_);
    int used = 0, max_v = 0, max_u = 0;
    for (const auto& t : tuples_) {
      Eigen::MatrixXcd pt = phi_->eval(values_of(t));
      if (!is_integrable(model_, pt, opts_.tol)) continue;
      ++used;
      for (int p = 0; p <= model_.n(); ++p)
        for (int q = 0; q <= model_.n(); ++q) {
          VuResult vu = vu_diagnostics(mc_, *phi_, values_of(t), p, q);
          int u_prev =
              (p >= 1 && q >= 1) ? vu_diagnostics(mc_, *phi_, values_of(t), p - 1, q - 1).u : 0;
          int lhs = table.bc[{p, q}];
          int rhs = deformed_bc_dim(mc_, pt, p, q) + vu.v + u_prev;
          max_v = std::max(max_v, vu.v);
          max_u = std::max(max_u, vu.u);
          if (lhs != rhs || vu.v < 0 || vu.u < 0) {
            r.status = "fail";
            r.detail = "identity fails at (" + std::to_string(p) + "," + std::to_string(q) +
                       "), t = " + point_text(t);
            return r;
          }
        }
    }
    if (used == 0) {
      r.status = "fail";
      r.detail = "family not integrable anywhere on the grid";
      return r;
    }
    r.detail = "exact integer identity at " + std::to_string(used) +
               " grid points; max v = " + std::to_string(max_v) +
               ", max u = " + std::to_string(max_u);
    if (ddbar_.overall && (max_v != 0 || max_u != 0)) {
      r.status = "fail";
      r.detail += " (expected v = u = 0 on a del-delbar model)";
    }
    return r;
  }

  CheckResult recursion() {
    CheckResult r{"recursion", "pass", 0, ""};
    if (!need_family(r)) return r;
    const Algebra& A = model_.algebra();
    double s1_res = 0;
    for (int p = 0; p <= A.n(); ++p)
      for (int q = 0; q <= A.n(); ++q) {
        const Eigen::MatrixXcd& H = mc_.harmonic_basis_bc(p, q);
        for (int l = 0; l < H.cols(); ++l) {
          Form sigma0(A, H.col(l));
          CanonicalDeformation cd = canonical_deformation(mc_, sigma0, *phi_, opts_.order);
          r.residual = std::max(r.residual, fixed_point_residual(mc_, cd, *phi_));
          for (int dir = 0; dir < phi_->params(); ++dir) {
            std::vector<int> e(phi_->params(), 0);
            e[dir] = 1;
            Eigen::VectorXcd direct =
                mc_.recursion_op() *
                (model_.del() * (model_.contraction_matrix(phi_->degree1(dir)) * sigma0.coeffs()));
            Form s1 = cd.series.coeff(e);
            Eigen::VectorXcd diff =
                s1.is_unset() ? direct : Eigen::VectorXcd(s1.coeffs() - direct);
            s1_res = std::max(s1_res, diff.norm());
          }
        }
      }
    r.detail = "sigma_1 formula residual " + fmt_num(s1_res);
    if (r.residual >= 1e-10 || s1_res >= 1e-12) r.status = "fail";
    return r;
  }

  CheckResult prop34() {
    CheckResult r{"prop3.4", "pass", 0, ""};
    if (!need_family(r)) return r;
    if (!gate(r)) return r;
    const Algebra& A = model_.algebra();
    double worst_member = 1.0;
    for (int p = 0; p <= A.n(); ++p)
      for (int q = 0; q <= A.n(); ++q) {
        const Eigen::MatrixXcd& H = mc_.harmonic_basis_bc(p, q);
        for (int l = 0; l < H.cols(); ++l) {
          Form sigma0(A, H.col(l));
          CanonicalDeformation cd = canonical_deformation(mc_, sigma0, *phi_, opts_.order);
          for (const auto& t : tuples_) {
            Eigen::MatrixXcd pt = phi_->eval(values_of(t));
            if (!is_integrable(model_, pt, opts_.tol)) continue;
            r.residual = std::max(r.residual, closedness_residual(mc_, cd, *phi_, values_of(t)));
            Eigen::VectorXcd st = cd.series.eval(values_of(t)).coeffs();
            double ortho = st.norm();
            if (p >= 1 && q >= 1) {
              Eigen::MatrixXcd ddbar_phi = model_.del() * deformed_delbar_matrix(model_, pt);
              Eigen::MatrixXcd P =
                  projector(take_cols(ddbar_phi, A.block(p - 1, q - 1)), opts_.tol);
              ortho = (st - P * st).norm();
            }
            worst_member = std::min(worst_member, ortho / std::max(sigma0.norm(), 1e-300));
          }
        }
      }
    r.detail = "min non-exactness ratio " + fmt_num(worst_member);
    if ((r.residual >= 1e-8 || worst_member < 0.5) && r.status != "warn") r.status = "fail";
    return r;
  }

  CheckResult thm42() {
    CheckResult r{"thm4.2", "pass", 0, ""};
    if (!need_family(r)) return r;
    if (!gate(r)) return r;
    PeriodEngine eng(mc_, *phi_);
    const Algebra& A = model_.algebra();
    bool informational = r.status == "warn";
    for (const auto& t : tuples_) {
      Eigen::MatrixXcd pt = phi_->eval(values_of(t));
      if (!is_integrable(model_, pt, opts_.tol)) continue;
      for (int k = 0; k <= 2 * A.n(); ++k)
        for (int p = 0; p <= std::min(k, A.n()); ++p) {
          try {
            PeriodPoint pp = eng.period_point(p, k, values_of(t), informational);
            SubspaceChart direct = eng.fph_direct(p, k, values_of(t));
            if (pp.chart.dim() != direct.dim()) {
              r.detail = "dimension mismatch at p=" + std::to_string(p) +
                         ", k=" + std::to_string(k) + ", t = " + point_text(t);
              if (!informational) {
                r.status = "fail";
                return r;
              }
              continue;
            }
            if (pp.chart.dim())
              r.residual = std::max(r.residual,
                                    max_principal_angle(pp.chart.rcef, direct.rcef, opts_.tol));
          } catch (const RankDrop& e) {
            if (!informational) {
              r.status = "fail";
              r.detail = e.what();
              return r;
            }
          }
        }
    }
    if (r.detail.empty() || !informational)
      r.detail = "max principal angle " + fmt_num(r.residual);
    if (r.residual >= 1e-6 && !informational) r.status = "fail";
    return r;
  }

  CheckResult transversality() {
    CheckResult r{"transversality", "pass", 0, ""};
    if (!need_family(r)) return r;
    if (!gate(r)) return r;
    PeriodEngine eng(mc_, *phi_);
    const Algebra& A = model_.algebra();
    for (int k = 1; k <= 2 * A.n(); ++k)
      for (int p = 1; p <= std::min(k, A.n()); ++p)
        for (int dir = 0; dir < phi_->params(); ++dir)
          r.residual = std::max(r.residual, eng.transversality_residual(p, k, dir));
    if (r.residual >= 1e-9 && r.status != "warn") r.status = "fail";
    return r;
  }

  CheckResult holomorphy() {
    CheckResult r{"holomorphy", "pass", 0, ""};
    if (!need_family(r)) return r;
    if (!gate(r)) return r;
    PeriodEngine eng(mc_, *phi_);
    const Algebra& A = model_.algebra();
    for (const auto& t : tuples_) {
      for (int k = 1; k <= 2 * A.n(); ++k)
        for (int p = 1; p <= std::min(k, A.n()); ++p)
          for (int dir = 0; dir < phi_->params(); ++dir) {
            try {
              r.residual = std::max(r.residual, eng.holomorphy_residual(p, k, values_of(t), dir));
            } catch (const Error&) {
              // finite-difference stencil left the integrable region: skip
            }
          }
    }
    if (r.residual >= 1e-6 && r.status != "warn") r.status = "fail";
    return r;
  }

  CheckResult diagram() {
    CheckResult r{"diagram", "pass", 0, ""};
    if (!need_family(r)) return r;
    if (!gate(r)) return r;
    PeriodEngine eng(mc_, *phi_);
    const Algebra& A = model_.algebra();
    for (int k = 1; k <= 2 * A.n(); ++k)
      for (int p = 1; p <= std::min(k, A.n()); ++p)
        for (int dir = 0; dir < phi_->params(); ++dir)
          r.residual = std::max(r.residual, eng.diagram_residual(p, k, dir));
    if (r.residual >= 1e-8 && r.status != "warn") r.status = "fail";
    return r;
  }

 private:
  bool need_family(CheckResult& r) {
    if (phi_) return true;
    r.status = "skip";
    r.detail = "needs a family file";
    return false;
  }
  // del-delbar gate: theorem hypotheses fail on non-ddbar models.
  bool gate(CheckResult& r) {
    if (ddbar_.overall) return true;
    if (opts_.allow_non_ddbar) {
      r.status = "warn";
      r.detail = "del-delbar hypothesis fails; residuals are informational";
      return true;
    }
    r.status = "fail";
    r.detail = "del-delbar hypothesis fails (use --allow-non-ddbar for informational residuals)";
    return false;
  }

  const Model& model_;
  MetricContext& mc_;
  const Beltrami* phi_;
  const CommonOpts& opts_;
  std::vector<GridPoint> scalar_;
  std::vector<std::vector<GridPoint>> tuples_;
  DdbarReport ddbar_;
};

int cmd_verify(const std::string& model_path, const std::string& family_path,
               const std::string& check, const CommonOpts& opts) {
  Model model = load_model_opts(model_path, opts);
  MetricContext mc(model, config_of(opts));
  print_warnings(mc);
  std::optional<Beltrami> phi;
  if (!family_path.empty()) phi = Beltrami::load_file(family_path, model.n());
  auto scalar_grid = opts.grid.empty() ? default_grid_points() : parse_grid(opts.grid);
  warn_radius(scalar_grid, opts.radius);
  Verifier v(model, mc, phi ? &*phi : nullptr, opts, scalar_grid);

  std::vector<CheckResult> results;
  auto want = [&](const std::string& name) { return check == "all" || check == name; };
  if (want("axioms")) results.push_back(v.axioms());
  if (want("eq3.3")) results.push_back(v.eq33());
  if (want("oracle")) results.push_back(v.oracle());
  if (want("ddbar")) results.push_back(v.ddbar_report());
  if (want("lemma4.1")) results.push_back(v.lemma41());
  if (want("eq2.4")) results.push_back(v.eq24());
  if (want("eq2.5")) results.push_back(v.eq25());
  if (want("eq3.7")) results.push_back(v.eq37());
  if (want("recursion")) results.push_back(v.recursion());
  if (want("prop3.4")) results.push_back(v.prop34());
  if (want("thm4.2")) results.push_back(v.thm42());
  if (want("transversality") || check == "thm4.4") results.push_back(v.transversality());
  if (want("holomorphy") || check == "thm4.4") results.push_back(v.holomorphy());
  if (want("diagram") || check == "thm4.4") results.push_back(v.diagram());
  if (results.empty()) throw MalformedSpec("unknown check: " + check);

  bool any_fail = false;
  Json out;
  out["command"] = "verify";
  out["model"] = model.name();
  if (phi) out["family"] = phi->name();
  out["config"] = config_json(opts, &scalar_grid);
  Json rows = Json::array();
  TextTable tt({"check", "status", "residual", "detail"});
  for (const CheckResult& r : results) {
    any_fail = any_fail || r.status == "fail";
    Json row;
    row["name"] = r.name;
    row["status"] = r.status;
    row["residual"] = json_num(r.residual);
    row["detail"] = r.detail;
    rows.push_back(row);
    tt.add_row({r.name, r.status, fmt_num(r.residual), r.detail});
  }
  out["checks"] = rows;
  if (opts.out == "json")
    std::cout << out.dump(2) << "\n";
  else
    std::cout << "verify: " << model.name() << (phi ? " / " + phi->name() : "") << "\n"
              << tt.str();
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical deformation-of-Hodge-structure toolkit on invariant-form models"};
  app.require_subcommand(1);

  std::string model_path, family_path, theory = "all", check = "all";
  int p = -1, q = -1, k = -1;
  CommonOpts opts;

  CLI::App* coh = app.add_subcommand("cohomology", "cohomology dimension tables");
  coh->add_option("model", model_path, "model JSON file")->required();
  coh->add_option("--theory", theory, "bc|dolbeault|derham|all")
      ->check(CLI::IsMember({"bc", "dolbeault", "derham", "all"}));
  coh->add_option("--family", family_path,
                  "family JSON file: also emit deformed Bott-Chern dimensions over the grid");
  add_common(coh, opts);

  CLI::App* ddb = app.add_subcommand("ddbar-check", "per-bidegree del-delbar lemma test");
  ddb->add_option("model", model_path, "model JSON file")->required();
  add_common(ddb, opts);

  CLI::App* def = app.add_subcommand("deform", "canonical Bott-Chern deformations and residuals");
  def->add_option("model", model_path, "model JSON file")->required();
  def->add_option("family", family_path, "family JSON file")->required();
  def->add_option("--p", p, "restrict to holomorphic degree p");
  def->add_option("--q", q, "restrict to antiholomorphic degree q");
  add_common(def, opts);

  CLI::App* per = app.add_subcommand("period", "period map charts and trajectories");
  per->add_option("model", model_path, "model JSON file")->required();
  per->add_option("family", family_path, "family JSON file")->required();
  per->add_option("--p", p, "filtration level p")->required();
  per->add_option("--k", k, "total degree k")->required();
  add_common(per, opts);

  CLI::App* ver = app.add_subcommand("verify", "verification suites");
  ver->add_option("model", model_path, "model JSON file")->required();
  ver->add_option("family", family_path, "family JSON file (optional)");
  ver->add_flag_callback(
      "--all", [&check]() { check = "all"; }, "run every applicable check (default)");
  ver->add_option("--check", check,
                  "axioms|eq3.3|oracle|ddbar|lemma4.1|eq2.4|eq2.5|eq3.7|recursion|prop3.4|"
                  "thm4.2|thm4.4|transversality|holomorphy|diagram");
  add_common(ver, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (coh->parsed()) return cmd_cohomology(model_path, family_path, theory, opts);
    if (ddb->parsed()) return cmd_ddbar(model_path, opts);
    if (def->parsed()) return cmd_deform(model_path, family_path, p, q, opts);
    if (per->parsed()) return cmd_period(model_path, family_path, p, k, opts);
    if (ver->parsed()) return cmd_verify(model_path, family_path, check, opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
