#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "quadforms/clifford.hpp"
#include "quadforms/densities.hpp"
#include "quadforms/forms.hpp"
#include "quadforms/genus.hpp"
#include "quadforms/jordan.hpp"
#include "quadforms/json_io.hpp"
#include "quadforms/localfield.hpp"
#include "quadforms/matrix.hpp"
#include "quadforms/numbers.hpp"
#include "quadforms/theta.hpp"

namespace {

using qf::Int;
using qf::Json;
using qf::Rat;

struct RunConfig {
  std::string form_spec;
  std::string place = "";
  std::string m_str = "";
  long long max_m = -1;
  std::string primes_csv = "";
  int threads = 1;
  unsigned long long seed = 0;
  std::string format = "json";
  std::string matrix_spec = "";
  std::string route = "product";
  long long budget = 10'000'000'000LL;
};

Json parse_json_arg(const std::string& spec) {
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) return Json::parse(spec);
  std::ifstream in(spec);
  if (!in) throw qf::PreconditionError("cannot open file: " + spec);
  Json j;
  in >> j;
  return j;
}

qf::QuadraticForm load_form(const RunConfig& cfg) {
  if (cfg.form_spec.empty()) throw qf::PreconditionError("--form is required");
  return qf::form_from_json(parse_json_arg(cfg.form_spec));
}

qf::Place parse_place(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "oo") return qf::Place::infinity();
  return qf::Place::prime(Int(s));
}

std::vector<Int> parse_primes(const std::string& csv) {
  std::vector<Int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(Int(tok));
  }
  return out;
}

Json rat_report(const Rat& r) {
  Json j;
  j["num"] = qf::int_to_json(qf::num(r));
  j["den"] = qf::int_to_json(qf::den(r));
  j["decimal"] = qf::rat_to_decimal(r, 12);
  return j;
}

Json density_report(const qf::SymbolicDensity& d) {
  Json j;
  j["num"] = qf::int_to_json(qf::num(d.coeff));
  j["den"] = qf::int_to_json(qf::den(d.coeff));
  if (d.pi_twice % 2 == 0)
    j["pi_exp"] = d.pi_twice / 2;
  else
    j["pi_exp"] = d.pi_twice / 2.0;
  j["sqrt_disc"] = qf::int_to_json(d.sqrt_disc);
  j["decimal"] = d.to_double();
  return j;
}

Json squareclass_json(const qf::SquareClassQp& c) {
  Json j;
  j["valuation_parity"] = c.val_parity();
  j["unit"] = qf::int_to_json(c.unit());
  return j;
}

Json form_report(const qf::QuadraticForm& f) { return qf::form_to_json(f); }

void emit(const Json& j, const RunConfig& cfg) {
  if (cfg.format == "csv") {
    // generic key,value flattening; theta handles csv itself
    for (const auto& [k, v] : j.items())
      std::cout << k << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

int cmd_invariants(const RunConfig& cfg) {
  auto q = load_form(cfg);
  if (!cfg.place.empty()) {
    qf::Place v = parse_place(cfg.place);
    auto inv = qf::qp_invariants(q, v);
    Json j;
    j["n"] = inv.n;
    j["det_class"] = squareclass_json(inv.det_class);
    j["hasse"] = inv.hasse;
    emit(j, cfg);
    return 0;
  }
  Json j;
  j["n"] = q.n();
  j["det_hessian"] = qf::int_to_json(q.det_hessian());
  j["det_gram"] = rat_report(q.det_gram());
  j["level"] = qf::int_to_json(q.level());
  auto [pos, neg] = q.signature();
  j["signature"] = Json::array({pos, neg});
  Json places = Json::array();
  std::vector<qf::Place> vs{qf::Place::infinity()};
  for (const auto& [p, e] : qf::factorize(2 * q.det_hessian())) vs.push_back(qf::Place::prime(p));
  for (const auto& v : vs) {
    auto inv = qf::qp_invariants(q, v);
    Json pj;
    pj["place"] = v.infinite ? "inf" : v.p.str();
    pj["det_class"] = squareclass_json(inv.det_class);
    pj["hasse"] = inv.hasse;
    places.push_back(pj);
  }
  j["places"] = places;
  emit(j, cfg);
  return 0;
}

int cmd_density(const RunConfig& cfg) {
  auto q = load_form(cfg);
  if (cfg.place.empty() || cfg.m_str.empty())
    throw qf::PreconditionError("density requires --p and --m");
  Int m(cfg.m_str);
  Json j;
  if (cfg.place == "inf" || cfg.place == "infinity" || cfg.place == "oo") {
    j["place"] = "inf";
    j["value"] = density_report(qf::local_density_infty(q, m));
  } else {
    Int p(cfg.place);
    Rat beta = qf::local_density_p(q, m, p);
    j["place"] = p.str();
    j["value"] = density_report(qf::SymbolicDensity{beta, 0, 1});
  }
  j["m"] = qf::int_to_json(m);
  emit(j, cfg);
  return 0;
}

int cmd_eisenstein(const RunConfig& cfg) {
  auto q = load_form(cfg);
  if (cfg.m_str.empty()) throw qf::PreconditionError("eisenstein requires --m");
  Int m(cfg.m_str);
  Json j;
  j["m"] = qf::int_to_json(m);
  if (cfg.route == "product") {
    j["value"] = rat_report(qf::eisenstein_coefficient_product(q, m));
    j["provenance"] = "product";
  } else if (cfg.route == "genus-average") {
    qf::Budget budget;
    budget.max_nodes = cfg.budget;
    qf::GenusOptions opts;
    opts.primes = parse_primes(cfg.primes_csv);
    opts.budget = &budget;
    auto cat = qf::genus_enumerate(q, opts);
    if (!cat.completeness_certified)
      throw qf::UnsupportedError("genus catalog is heuristic; refusing the genus average");
    j["value"] = rat_report(qf::eisenstein_genus_avg(cat, m));
    j["provenance"] = "genus_average";
  } else {
    throw qf::PreconditionError("unknown route: " + cfg.route);
  }
  emit(j, cfg);
  return 0;
}

int cmd_theta(const RunConfig& cfg) {
  auto q = load_form(cfg);
  if (cfg.max_m < 0) throw qf::PreconditionError("theta requires --max");
  qf::Budget budget;
  budget.max_nodes = cfg.budget;
  auto coeffs = qf::theta_coefficients(q, cfg.max_m, cfg.threads, &budget);
  auto meta = qf::modular_metadata(q);
  if (cfg.format == "csv") {
    qf::GenusOptions opts;
    opts.primes = parse_primes(cfg.primes_csv);
    opts.budget = &budget;
    auto cat = qf::genus_enumerate(q, opts);
    auto ae = qf::eisenstein_genus_avg_prefix(cat, cfg.max_m);
    std::cout << "m,r,eisenstein,cusp\n";
    for (long long m = 0; m <= cfg.max_m; ++m) {
      Rat cusp = Rat(coeffs[m]) - ae[m];
      std::cout << m << "," << coeffs[m].str() << "," << qf::rat_to_decimal(ae[m], 12) << ","
                << qf::rat_to_decimal(cusp, 12) << "\n";
    }
    return 0;
  }
  Json j;
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(qf::int_to_json(c));
  j["coefficients"] = arr;
  Json mj;
  mj["weight"] = {{"num", qf::int_to_json(qf::num(meta.weight))},
                  {"den", qf::int_to_json(qf::den(meta.weight))}};
  mj["level"] = qf::int_to_json(meta.level);
  mj["character_disc"] = qf::int_to_json(meta.character_disc);
  j["metadata"] = mj;
  emit(j, cfg);
  return 0;
}

int cmd_neighbors(const RunConfig& cfg) {
  auto q = load_form(cfg);
  if (cfg.place.empty()) throw qf::PreconditionError("neighbors requires --p");
  Int p(cfg.place);
  qf::Budget budget;
  budget.max_nodes = cfg.budget;
  auto nbs = qf::all_p_neighbors(q, p, &budget);
  Json j;
  j["p"] = qf::int_to_json(p);
  j["count"] = static_cast<long long>(nbs.size());
  Json arr = Json::array();
  for (const auto& f : nbs) arr.push_back(form_report(f));
  j["neighbors"] = arr;
  emit(j, cfg);
  return 0;
}

Json catalog_json(const qf::GenusCatalog& cat) {
  Json j;
  Json reps = Json::array();
  for (const auto& r : cat.reps) {
    Json rj;
    rj["form"] = form_report(r.form);
    rj["aut_order"] = qf::int_to_json(r.aut_order);
    rj["has_improper_automorphism"] = r.has_improper_automorphism;
    reps.push_back(rj);
  }
  j["representatives"] = reps;
  j["class_number"] = static_cast<long long>(cat.reps.size());
  j["mass"] = rat_report(cat.mass());
  j["completeness"] = cat.completeness_certified ? "verified" : "heuristic";
  Json pu = Json::array();
  for (const auto& p : cat.primes_used) pu.push_back(qf::int_to_json(p));
  j["primes_used"] = pu;
  return j;
}

int cmd_genus(const RunConfig& cfg) {
  auto q = load_form(cfg);
  qf::Budget budget;
  budget.max_nodes = cfg.budget;
  qf::GenusOptions opts;
  opts.primes = parse_primes(cfg.primes_csv);
  opts.budget = &budget;
  auto cat = qf::genus_enumerate(q, opts);
  Json j = catalog_json(cat);
  Json graphs = Json::array();
  for (const auto& p : cat.primes_used) {
    auto g = qf::neighbor_graph(cat, p, &budget);
    Json gj;
    gj["p"] = qf::int_to_json(p);
    gj["edges"] = g.edges;
    graphs.push_back(gj);
  }
  j["graphs"] = graphs;
  emit(j, cfg);
  return 0;
}

int cmd_mass(const RunConfig& cfg) {
  auto q = load_form(cfg);
  qf::Budget budget;
  budget.max_nodes = cfg.budget;
  qf::GenusOptions opts;
  opts.primes = parse_primes(cfg.primes_csv);
  opts.budget = &budget;
  auto cat = qf::genus_enumerate(q, opts);
  Json j;
  j["mass"] = rat_report(cat.mass());
  j["class_number"] = static_cast<long long>(cat.reps.size());
  j["completeness"] = cat.completeness_certified ? "verified" : "heuristic";
  emit(j, cfg);
  return 0;
}

int cmd_spinor_norm(const RunConfig& cfg) {
  auto q = load_form(cfg);
  if (cfg.matrix_spec.empty()) throw qf::PreconditionError("spinor-norm requires --matrix");
  Json mj = parse_json_arg(cfg.matrix_spec);
  if (!mj.is_array()) throw qf::PreconditionError("matrix must be a JSON array of rows");
  int n = q.n();
  qf::RMat sigma(n, n);
  if (static_cast<int>(mj.size()) != n) throw qf::PreconditionError("matrix row count mismatch");
  for (int i = 0; i < n; ++i) {
    if (!mj[i].is_array() || static_cast<int>(mj[i].size()) != n)
      throw qf::PreconditionError("matrix column count mismatch");
    for (int jx = 0; jx < n; ++jx) sigma(i, jx) = qf::rat_from_json(mj[i][jx]);
  }
  auto refs = qf::decompose_into_reflections(q, sigma);
  Rat prod = 1;
  for (const auto& v : refs) prod *= q.evaluate(v);
  Int norm = refs.empty() ? Int(1) : qf::squarefree_part(prod);
  Json j;
  j["spinor_norm"] = qf::int_to_json(norm);
  j["det"] = refs.size() % 2 == 0 ? 1 : -1;
  Json rj = Json::array();
  for (const auto& v : refs) {
    Json vj = Json::array();
    for (const auto& c : v) vj.push_back(qf::rat_to_json(c));
    rj.push_back(vj);
  }
  j["reflections"] = rj;
  emit(j, cfg);
  return 0;
}

int cmd_selftest(const RunConfig& cfg) {
  // sum of four squares, coefficients checked against the divisor-sum formula
  qf::IMat h = qf::IMat::identity(4) * Int(2);
  qf::QuadraticForm q(h);
  long long max_m = cfg.max_m >= 0 ? cfg.max_m : 100;
  qf::Budget budget;
  budget.max_nodes = cfg.budget;
  auto coeffs = qf::theta_coefficients(q, max_m, cfg.threads, &budget);
  Json mismatches = Json::array();
  for (long long m = 1; m <= max_m; ++m) {
    Int expected = qf::jacobi_r4(m);
    if (coeffs[m] != expected) {
      Json bad;
      bad["m"] = m;
      bad["enumerated"] = qf::int_to_json(coeffs[m]);
      bad["divisor_sum"] = qf::int_to_json(expected);
      mismatches.push_back(bad);
    }
    if (qf::squarefree_part(Rat(m)) == m) {
      Rat prod = qf::eisenstein_coefficient_product(q, m);
      if (prod != Rat(expected)) {
        Json bad;
        bad["m"] = m;
        bad["product_route"] = rat_report(prod);
        bad["divisor_sum"] = qf::int_to_json(expected);
        mismatches.push_back(bad);
      }
    }
  }
  Json j;
  j["max_m"] = max_m;
  j["all_match"] = mismatches.empty();
  j["mismatches"] = mismatches;
  emit(j, cfg);
  return mismatches.empty() ? 0 : 1;
}

Json error_json(const std::string& type, const std::string& message) {
  Json j;
  j["error"] = {{"type", type}, {"message", message}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for integral quadratic forms"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("QUADFORMS_BUDGET")) cfg.budget = std::atoll(env);

  auto add_common = [&](CLI::App* sub, bool needs_form) {
    if (needs_form) sub->add_option("--form", cfg.form_spec, "form as inline JSON or a file path");
    sub->add_option("--threads", cfg.threads, "worker threads for enumeration");
    sub->add_option("--seed", cfg.seed, "seed recorded for reproducibility");
    sub->add_option("--format", cfg.format, "output format: json or csv");
  };

  auto* inv = app.add_subcommand("invariants", "dimension, determinants, level, local invariants");
  add_common(inv, true);
  inv->add_option("--p,--place", cfg.place, "place: a prime or inf");

  auto* den = app.add_subcommand("density", "local representation density at one place");
  add_common(den, true);
  den->add_option("--p,--place", cfg.place, "place: a prime or inf");
  den->add_option("--m", cfg.m_str, "represented value");

  auto* eis = app.add_subcommand("eisenstein", "Eisenstein coefficient a_E(m)");
  add_common(eis, true);
  eis->add_option("--m", cfg.m_str, "coefficient index");
  eis->add_option("--route", cfg.route, "product or genus-average");
  eis->add_option("--primes", cfg.primes_csv, "neighbor primes for the genus route");

  auto* th = app.add_subcommand("theta", "theta series coefficients r_Q(0..M)");
  add_common(th, true);
  th->add_option("--max", cfg.max_m, "largest coefficient index");
  th->add_option("--primes", cfg.primes_csv, "neighbor primes (csv export)");

  auto* nb = app.add_subcommand("neighbors", "all p-neighbor forms");
  add_common(nb, true);
  nb->add_option("--p", cfg.place, "odd prime");

  auto* gen = app.add_subcommand("genus", "genus enumeration by repeated neighbors");
  add_common(gen, true);
  gen->add_option("--primes", cfg.primes_csv, "comma separated neighbor primes");

  auto* ms = app.add_subcommand("mass", "sum of 1/|Aut| over the genus");
  add_common(ms, true);
  ms->add_option("--primes", cfg.primes_csv, "comma separated neighbor primes");

  auto* sn = app.add_subcommand("spinor-norm", "reflection decomposition and spinor norm");
  add_common(sn, true);
  sn->add_option("--matrix", cfg.matrix_spec, "isometry as JSON rows (file or inline)");

  auto* st = app.add_subcommand("selftest", "four squares end-to-end check");
  add_common(st, false);
  st->add_option("--max", cfg.max_m, "largest m checked (default 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (inv->parsed()) return cmd_invariants(cfg);
    if (den->parsed()) return cmd_density(cfg);
    if (eis->parsed()) return cmd_eisenstein(cfg);
    if (th->parsed()) return cmd_theta(cfg);
    if (nb->parsed()) return cmd_neighbors(cfg);
    if (gen->parsed()) return cmd_genus(cfg);
    if (ms->parsed()) return cmd_mass(cfg);
    if (sn->parsed()) return cmd_spinor_norm(cfg);
    if (st->parsed()) return cmd_selftest(cfg);
  } catch (const qf::BudgetExceededError& e) {
    std::cout << error_json("budget_exceeded", e.what()).dump(2) << "\n";
    return 3;
  } catch (const qf::PreconditionError& e) {
    std::cout << error_json("precondition", e.what()).dump(2) << "\n";
    return 2;
  } catch (const qf::UnsupportedError& e) {
    std::cout << error_json("unsupported", e.what()).dump(2) << "\n";
    return 2;
  } catch (const qf::StabilizationError& e) {
    std::cout << error_json("stabilization_failure", e.what()).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << error_json("internal", e.what()).dump(2) << "\n";
    return 1;
  }
  return 0;
}
