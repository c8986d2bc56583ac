#include "cli.hpp"

#include "lrl/cliffalg.hpp"
#include "lrl/model.hpp"
#include "lrl/numsolve.hpp"
#include "lrl/radial.hpp"
#include "lrl/specfun.hpp"
#include "lrl/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace lrl::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// JSON numbers carry at most 15 significant digits
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt15(x));
}

Rational positive_rational(const std::string& text, const char* what) {
  Rational q;
  try {
    q = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
  if (sgn(q) <= 0) throw UsageError(std::string(what) + " must be positive");
  return q;
}

json config_json(const RunConfig& c) {
  json j = {{"subcommand", c.subcommand}, {"d", c.d}, {"spin", c.spin}, {"m", c.m}, {"alpha", c.alpha}};
  const std::string& s = c.subcommand;
  if (s == "repcheck") j = {{"subcommand", s}, {"dmin", c.dmin}, {"dmax", c.dmax}};
  if (s == "verify") {
    j["npoints"] = c.npoints;
    j["nfunctions"] = c.nfunctions;
    j["seed"] = c.seed;
    j["tamper"] = c.tamper;
  }
  if (s == "spectrum" || s == "radial" || s == "forbidden") {
    j["grid"] = {{"kind", c.grid}, {"rmin", num(c.rmin)}, {"rmax", num(c.rmax)}, {"npoints", c.grid_points}};
  }
  if (s == "spectrum") {
    j["l"] = c.l;
    j["j"] = c.j;
    j["nmax"] = c.nmax;
    j["numeric"] = c.numeric;
    j["tol"] = num(c.tol);
  }
  if (s == "radial") {
    j["l"] = c.l;
    j["j"] = c.j;
    j["n"] = c.n;
  }
  if (s == "forbidden") {
    j.erase("spin");
    j["lmax"] = c.lmax;
  }
  if (s == "eval-specfun")
    j = {{"subcommand", s}, {"function", c.function}, {"n", c.n}, {"b", num(c.b)}, {"x", num(c.x)}};
  j["format"] = c.format;
  return j;
}

json document(const RunConfig& c, json results) {
  return {{"schema_version", kSchemaVersion}, {"config", config_json(c)}, {"results", std::move(results)}};
}

/// One entry per checked identity label, then the notes.
void append_report(json& results, const CheckReport& rep, const json& extra) {
  for (const auto& [label, count] : rep.checked) {
    json e = extra;
    e["identity"] = label;
    e["instances"] = count;
    const Violation* first = nullptr;
    std::size_t nfail = 0;
    for (const auto& v : rep.violations)
      if (v.identity == label) {
        if (!first) first = &v;
        ++nfail;
      }
    e["status"] = first ? "fail" : "pass";
    e["residual"] = first ? first->residual : "0";
    if (first) {
      e["failures"] = nfail;
      e["indices"] = first->indices;
      if (first->witness) {
        json w = json::array();
        for (const auto& q : *first->witness) w.push_back(to_string(q));
        e["witness"] = w;
      }
    }
    results.push_back(e);
  }
  for (const auto& v : rep.violations)
    if (!rep.checked.count(v.identity)) {
      json e = extra;
      e["identity"] = v.identity;
      e["status"] = "fail";
      e["residual"] = v.residual;
      results.push_back(e);
    }
  for (const auto& note : rep.notes) {
    json e = extra;
    e["identity"] = "note";
    e["status"] = rep.checked.empty() ? "skipped" : "info";
    e["message"] = note;
    results.push_back(e);
  }
}

bool any_failed(const json& results) {
  for (const auto& e : results)
    if (e.at("status") == "fail") return true;
  return false;
}

PotentialKind potential_for(const std::string& spin) {
  if (spin == "scalar") return PotentialKind::coulomb;
  if (spin == "half") return PotentialKind::spinor;
  if (spin == "one") return PotentialKind::vector;
  if (spin == "one-extended") return PotentialKind::vector_extended;
  throw UsageError("unknown spin '" + spin + "'");
}

struct Emitter {
  std::ostream& out;
  const RunConfig& cfg;

  void write(const std::string& text) const {
    if (cfg.output.empty()) {
      out << text;
      return;
    }
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot open output file '" + cfg.output + "'");
    f << text;
  }
  void write(const json& doc) const { write(doc.dump(2) + "\n"); }
};

void require_json(const RunConfig& c) {
  if (c.format != "json") throw UsageError(c.subcommand + " only writes json");
}

// ---------------------------------------------------------------------------------------------

int cmd_repcheck(const RunConfig& c, const Emitter& em) {
  require_json(c);
  if (c.dmin < 1 || c.dmax < c.dmin) throw UsageError("need 1 <= dmin <= dmax");
  if (c.dmax > 12) throw UsageError("dmax above 12 is not supported");
  json results = json::array();
  for (int d = c.dmin; d <= c.dmax; ++d) {
    const GammaSet g = build_gamma(d);
    append_report(results, check_clifford(g), {{"d", d}, {"rep", "gamma"}, {"dimension", g.dim}});
    if (d % 2 == 0) {
      const ExactMatrix ch = build_chirality(g);
      const ExactMatrix sq = multiply(ch, ch) - ExactMatrix::Identity(g.dim, g.dim);
      bool anti = true;
      for (int mu = 0; mu < d; ++mu) anti = anti && is_exact_zero(multiply(ch, g[mu]) + multiply(g[mu], ch));
      const bool good = is_exact_zero(sq) && is_exact_zero(ch - adjoint(ch)) && anti;
      results.push_back({{"d", d}, {"rep", "gamma"}, {"dimension", g.dim}, {"identity", "chirality"},
                         {"status", good ? "pass" : "fail"}, {"residual", good ? "0" : "nonzero"}});
    }
    if (d < 2) continue;
    const std::pair<const char*, SpinRep> reps[] = {{"spin_half", build_spin_half(d)},
                                                    {"spin_one", build_spin_one(d)},
                                                    {"spin_one_extended", build_spin_one_extended(d)}};
    for (const auto& [name, rep] : reps) {
      const json extra = {{"d", d}, {"rep", name}, {"dimension", rep.dim()}};
      append_report(results, check_so_commutations(rep), extra);
      if (rep.kind() == SpinKind::vector_extended) continue;
      // irreducible: the Casimir is a multiple of the identity
      const ExactMatrix cas = casimir(rep);
      const GaussRational c0 = cas(0, 0);
      const bool scalar = is_exact_zero(cas - c0 * ExactMatrix::Identity(rep.dim(), rep.dim()));
      json e = extra;
      e["identity"] = "casimir";
      e["status"] = scalar ? "pass" : "fail";
      e["values"] = {{"casimir", to_string(c0)}};
      results.push_back(e);
    }
  }
  em.write(document(c, results));
  return any_failed(results) ? verification_failed : ok;
}

int cmd_verify(const RunConfig& c, const Emitter& em) {
  require_json(c);
  if (c.d < 2 || c.d > 8) throw UsageError("verify needs 2 <= d <= 8");
  if (c.npoints < 1 || c.nfunctions < 1) throw UsageError("npoints and nfunctions must be positive");
  const PotentialKind kind = potential_for(c.spin);
  const ModelSpec ms = make_model(c.d, kind, positive_rational(c.m, "m"), positive_rational(c.alpha, "alpha"));
  VerifyOptions opt;
  opt.npoints = c.npoints;
  opt.nfunctions = c.nfunctions;
  opt.seed = c.seed;
  json results = json::array();
  const json extra = {{"d", c.d}, {"spin", c.spin}};
  if (c.tamper) {
    // debug: shift the potential by a constant, which breaks homogeneity
    const DiffOperator V = build_potential(ms) +
                           DiffOperator::scalar_function(c.d, ms.ncomp(), Monomial{}, 0, Rational(1, 100));
    append_report(results, verify_potential_conditions(ms, V, opt), extra);
  } else {
    append_report(results, verify_potential_conditions(ms, opt), extra);
  }
  append_report(results, verify_symmetry_algebra(ms, opt), extra);
  if (kind == PotentialKind::coulomb || kind == PotentialKind::spinor)
    append_report(results, verify_appendixA(ms, opt), extra);
  if (kind == PotentialKind::vector) append_report(results, verify_spin1_identities(ms, opt), extra);
  em.write(document(c, results));
  return any_failed(results) ? verification_failed : ok;
}

RadialProblem channel_for(const RunConfig& c, const Rational& m, const Rational& a) {
  if (c.spin == "scalar") return scalar_channel(c.d, c.l, m, a);
  if (c.spin == "half") return spinor_channel(c.d, positive_rational(c.j, "j"), m, a);
  if (c.spin == "one") return vector_channel(c.d, c.l, m, a);
  if (c.spin == "one-extended") throw UsageError("the extended vector model has no radial reduction here");
  throw UsageError("unknown spin '" + c.spin + "'");
}

SpectrumLine line_for(const RunConfig& c, int n, const Rational& m, const Rational& a) {
  if (c.spin == "scalar") return analytic_energy_scalar(c.d, c.l, n, m, a);
  if (c.spin == "half") return analytic_energy_spinor(c.d, positive_rational(c.j, "j"), n, m, a);
  return analytic_energy_vector(c.d, c.l, n, m, a);
}

std::optional<Grid> grid_override(const RunConfig& c) {
  if (c.grid != "log" && c.grid != "uniform") throw UsageError("grid must be log or uniform");
  if (c.rmin == 0 && c.rmax == 0 && c.grid == "log") {
    if (c.grid_points < 100) throw UsageError("grid needs at least 100 points");
    return std::nullopt;
  }
  try {
    return make_grid(c.grid == "log" ? GridKind::log : GridKind::uniform, c.rmin, c.rmax, c.grid_points);
  } catch (const InvalidGrid& e) {
    throw UsageError(e.what());
  }
}

std::string label_value(const RunConfig& c, const SpectrumLine& line) {
  return c.spin == "half" ? to_string(line.j) : std::to_string(line.l);
}

int cmd_spectrum(const RunConfig& c, const Emitter& em) {
  if (c.nmax < 0) throw UsageError("nmax must be >= 0");
  const Rational m = positive_rational(c.m, "m"), a = positive_rational(c.alpha, "alpha");
  const RadialProblem p = channel_for(c, m, a);
  const int k = c.nmax + 1;
  const auto og = grid_override(c);
  std::optional<RefinedSpectrum> rs;
  if (c.numeric)
    rs = refined_spectrum(p, og ? *og : default_grid(length_scale(p, k), c.grid_points), k);
  const double tol = c.tol > 0 ? c.tol : (c.spin == "one" ? 1e-5 : 1e-6);

  std::ostringstream csv;
  csv << "d,spin,l_or_j,n,N_or_k,E_analytic,E_numeric,rel_dev\n";
  json results = json::array();
  for (int n = 0; n < k; ++n) {
    const SpectrumLine line = line_for(c, n, m, a);
    const double e = line.energy.get_d();
    json level = {{"d", c.d}, {"spin", c.spin}, {"n", n}, {"principal", to_string(line.principal)}};
    level[c.spin == "half" ? "j" : "l"] = c.spin == "half" ? json(to_string(line.j)) : json(line.l);
    json values = {{"E_analytic", to_string(line.energy)}, {"E_analytic_value", num(e)}};
    std::string status = "pass";
    csv << c.d << ',' << c.spin << ',' << label_value(c, line) << ',' << n << ',' << to_string(line.principal)
        << ',' << fmt15(e) << ',';
    if (rs) {
      const RefinedLevel& lv = rs->levels[static_cast<std::size_t>(n)];
      const double dev = std::abs(lv.energy - e) / std::abs(e);
      if (!(dev < tol)) status = "fail";
      values["E_numeric"] = num(lv.energy);
      values["rel_dev"] = num(dev);
      values["error_estimate"] = num(lv.error);
      csv << fmt15(lv.energy) << ',' << fmt15(dev);
    } else {
      csv << ',';
    }
    csv << '\n';
    json entry = {{"level", level}, {"status", status}, {"values", values}};
    if (rs) entry["residual"] = fmt15(values["rel_dev"].get<double>());
    results.push_back(entry);
  }
  if (c.format == "csv")
    em.write(csv.str());
  else
    em.write(document(c, results));
  return any_failed(results) ? verification_failed : ok;
}

int cmd_radial(const RunConfig& c, const Emitter& em) {
  if (c.n < 0) throw UsageError("n must be >= 0");
  const Rational m = positive_rational(c.m, "m"), a = positive_rational(c.alpha, "alpha");
  const RadialProblem p = channel_for(c, m, a);
  const auto og = grid_override(c);
  const Grid g = og ? *og : default_grid(length_scale(p, c.n + 1), c.grid_points);
  const SpectrumLine line = line_for(c, c.n, m, a);

  RadialFunctionSample s;
  std::vector<std::string> columns;
  std::vector<double> residual;
  if (c.spin == "scalar") {
    s = scalar_eigenfunction(c.d, c.l, c.n, m, a, g);
    columns = {"r", "chi"};
  } else if (c.spin == "half") {
    s = spinor_excited_states(c.d, positive_rational(c.j, "j"), c.n, m, a, g);
    columns = {"r", "phi_up", "phi_down"};
  } else {
    s = vector_eigenfunctions(c.d, c.l, c.n, m, a, g);
    columns = {"r", "phi1", "phi2", "ac4_residual"};
    // phi1 - (r phi2)' - m alpha r phi2 on the exact closed form, in the sample's normalization
    RadialOperator ac4(2);
    RatMatrix e00(2), e01(2);
    e00(0, 0) = 1;
    e01(0, 1) = -1;
    ac4.add_term(0, 0, e00);
    ac4.add_term(1, 1, e01);
    ac4.add_term(0, 0, e01);
    e01(0, 1) = -m * a;
    ac4.add_term(0, 1, e01);
    const RadialExpansion res = ac4.apply(vector_closed_form(c.d, c.l, c.n, m, a));
    for (const double r : s.r) residual.push_back(std::abs(s.normalization * res.evaluate(r)[0]));
  }

  if (c.format == "csv") {
    std::ostringstream csv;
    csv << "# d=" << c.d << "\n# spin=" << c.spin << "\n# " << (c.spin == "half" ? "j=" : "l=")
        << label_value(c, line) << "\n# n=" << c.n << "\n# energy=" << to_string(line.energy)
        << "\n# nodes=" << s.nodes << "\n# normalization=" << fmt15(s.normalization) << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) csv << (i ? "," : "") << columns[i];
    csv << '\n';
    for (std::size_t i = 0; i < s.r.size(); ++i) {
      csv << fmt15(s.r[i]);
      for (const auto& ch : s.values) csv << ',' << fmt15(ch[i]);
      if (!residual.empty()) csv << ',' << fmt15(residual[i]);
      csv << '\n';
    }
    em.write(csv.str());
    return ok;
  }
  json level = {{"d", c.d}, {"spin", c.spin}, {"n", c.n}, {"principal", to_string(line.principal)}};
  level[c.spin == "half" ? "j" : "l"] = c.spin == "half" ? json(to_string(line.j)) : json(line.l);
  json channels = json::array();
  for (const auto& ch : s.values) {
    json col = json::array();
    for (const double v : ch) col.push_back(num(v));
    channels.push_back(col);
  }
  json rs = json::array();
  for (const double r : s.r) rs.push_back(num(r));
  json values = {{"energy", to_string(line.energy)}, {"nodes", s.nodes}, {"normalization", num(s.normalization)},
                 {"columns", columns}, {"r", rs}, {"channels", channels}};
  if (!residual.empty()) {
    json col = json::array();
    for (const double v : residual) col.push_back(num(v));
    values["ac4_residual"] = col;
  }
  em.write(document(c, json::array({{{"level", level}, {"status", "pass"}, {"values", values}}})));
  return ok;
}

int cmd_forbidden(const RunConfig& c, const Emitter& em) {
  require_json(c);
  if (c.d < 3)
    throw UsageError("the transverse channel exists only for d >= 3; the bound-state test needs d >= 4");
  if (c.lmax < 0) throw UsageError("lmax must be >= 0");
  const Rational m = positive_rational(c.m, "m"), a = positive_rational(c.alpha, "alpha");
  const CheckReport rep = forbidden_channel_check(c.d, m, a, c.lmax, grid_override(c));
  json results = json::array();
  append_report(results, rep, {{"d", c.d}});
  em.write(document(c, results));
  return rep.passed ? ok : verification_failed;
}

int cmd_eval_specfun(const RunConfig& c, const Emitter& em) {
  require_json(c);
  double v = 0;
  json args = {{"x", num(c.x)}};
  if (c.function == "kummer") {
    if (c.n < 0) throw UsageError("n must be >= 0");
    v = kummer_terminating(c.n, c.b, c.x);
    args = {{"n", c.n}, {"b", num(c.b)}, {"z", num(c.x)}};
  } else if (c.function == "k0" || c.function == "k1") {
    v = bessel_k(c.function == "k0" ? 0 : 1, c.x);
  } else if (c.function == "i0" || c.function == "i1") {
    v = bessel_i(c.function == "i0" ? 0 : 1, c.x);
  } else {
    throw UsageError("function must be kummer, k0, k1, i0 or i1");
  }
  em.write(document(c, json::array({{{"identity", c.function}, {"status", "pass"},
                                     {"values", {{"arguments", args}, {"value", num(v)}}}}})));
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Coulomb-type models in d dimensions: representation checks, exact symmetry certification, spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kSchemaVersion);

  auto output = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("-o,--output", cfg.output, "write to this file instead of stdout");
  };
  auto model = [&](CLI::App* s) {
    s->add_option("--d", cfg.d, "dimension")->capture_default_str();
    s->add_option("--spin", cfg.spin, "scalar, half, one, one-extended")->capture_default_str();
    s->add_option("--m", cfg.m, "mass, p/q")->capture_default_str();
    s->add_option("--alpha", cfg.alpha, "coupling, p/q")->capture_default_str();
  };
  auto grid = [&](CLI::App* s) {
    s->add_option("--grid", cfg.grid, "log or uniform")->capture_default_str();
    s->add_option("--rmin", cfg.rmin, "grid start (with --rmax; default grid when both are 0)");
    s->add_option("--rmax", cfg.rmax, "grid end");
    s->add_option("--grid-points", cfg.grid_points, "grid nodes")->capture_default_str();
  };

  auto* rep = app.add_subcommand("repcheck", "Clifford and so(d) relations, exact");
  rep->add_option("--dmin", cfg.dmin)->capture_default_str();
  rep->add_option("--dmax", cfg.dmax)->capture_default_str();
  output(rep);

  auto* ver = app.add_subcommand("verify", "potential conditions and the symmetry algebra, exact");
  model(ver);
  ver->add_option("--npoints", cfg.npoints, "random rational points per zero test")->capture_default_str();
  ver->add_option("--nfunctions", cfg.nfunctions, "random test functions per identity")->capture_default_str();
  ver->add_option("--seed", cfg.seed)->capture_default_str();
  ver->add_flag("--tamper", cfg.tamper, "debug: shift the potential by a constant");
  output(ver);

  auto* spc = app.add_subcommand("spectrum", "closed-form levels, optionally against the finite-difference solver");
  model(spc);
  spc->add_option("--l", cfg.l)->capture_default_str();
  spc->add_option("--j", cfg.j, "spinor j, p/q")->capture_default_str();
  spc->add_option("--nmax", cfg.nmax)->capture_default_str();
  spc->add_flag("--numeric", cfg.numeric, "add the numeric columns");
  spc->add_option("--tol", cfg.tol, "relative tolerance for --numeric (default 1e-6, 1e-5 for spin one)");
  grid(spc);
  output(spc);

  auto* rad = app.add_subcommand("radial", "sampled normalized eigenfunction");
  model(rad);
  rad->add_option("--l", cfg.l)->capture_default_str();
  rad->add_option("--j", cfg.j, "spinor j, p/q")->capture_default_str();
  rad->add_option("--n", cfg.n)->capture_default_str();
  grid(rad);
  output(rad);

  auto* forb = app.add_subcommand("forbidden", "no bound states in the transverse vector channel");
  forb->add_option("--d", cfg.d)->capture_default_str();
  forb->add_option("--m", cfg.m)->capture_default_str();
  forb->add_option("--alpha", cfg.alpha)->capture_default_str();
  forb->add_option("--lmax", cfg.lmax)->capture_default_str();
  grid(forb);
  output(forb);

  auto* sf = app.add_subcommand("eval-specfun", "debug: evaluate a special function");
  sf->add_option("--function", cfg.function, "kummer, k0, k1, i0, i1")->capture_default_str();
  sf->add_option("--n", cfg.n, "kummer: first parameter is -n");
  sf->add_option("--b", cfg.b, "kummer: second parameter");
  sf->add_option("--x", cfg.x, "argument")->capture_default_str();
  output(sf);

  std::vector<std::string> argv_store{"lrl"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  if (cfg.format.empty()) cfg.format = (cfg.subcommand == "spectrum" || cfg.subcommand == "radial") ? "csv" : "json";
  const Emitter em{out, cfg};
  const std::map<std::string, std::function<int(const RunConfig&, const Emitter&)>> dispatch = {
      {"repcheck", cmd_repcheck}, {"verify", cmd_verify},       {"spectrum", cmd_spectrum},
      {"radial", cmd_radial},     {"forbidden", cmd_forbidden}, {"eval-specfun", cmd_eval_specfun}};
  try {
    return dispatch.at(cfg.subcommand)(cfg, em);
  } catch (const InvalidGrid& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const ConvergenceFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
}

}  // namespace lrl::cli
