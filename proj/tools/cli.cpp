#include "cli.hpp"

#include "geozeta/geozeta.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace geozeta::cli {

using nlohmann::json;

namespace {

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Doubles rounded to 15 significant digits; the serializer then emits at most 15.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

json complex_json(Complex z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

json partial_sum_json(const PartialSum& ps) {
  return {{"value", complex_json(ps.value)},
          {"error_bound", num(ps.errorBound)},
          {"terms", ps.termsUsed},
          {"tail_correction", complex_json(ps.tailCorrection)}};
}

json matrix_json(const UnimodularMatrix& g) {
  return json::array({json::array({g.a().str(), g.b().str()}), json::array({g.c().str(), g.d().str()})});
}

json cycle_json(const Cycle& cyc) {
  json forms = json::array(), quotients = json::array();
  for (const Form& f : cyc.forms) forms.push_back(f.str());
  for (const BigInt& m : cyc.quotients) quotients.push_back(m.str());
  return {{"forms", forms}, {"quotients", quotients}, {"length", cyc.size()}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Form form_option(const std::string& text, const char* name) {
  try {
    return Form::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

Complex complex_option(const std::string& text, const char* name) {
  try {
    return parse_complex(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

void require_series_s(Complex s) {
  if (!(s.real() > 1.0)) throw UsageError("--s: series require Re s > 1");
}

void disc_option(std::int64_t d, bool fundamental) {
  try {
    if (fundamental)
      validate_fundamental(BigInt(d));
    else
      validate_discriminant(BigInt(d));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--disc: ") + e.what());
  }
}

void radius_option(int r) {
  if (r < 4) throw UsageError("--radius must be at least 4");
}

TruncationParams truncation_from(const json& o) {
  TruncationParams tp;
  tp.radius = o.at("radius").get<int>();
  tp.tailCorrection = !o.value("no_tail", false);
  return tp;
}

QuadratureParams quadrature_from(const json& o) {
  QuadratureParams qp;
  qp.relTol = o.at("rel_tol").get<double>();
  return qp;
}

Complex s_from(const json& o) { return {o.at("s").at("re").get<double>(), o.at("s").at("im").get<double>()}; }

json s_json(Complex s) { return {{"re", s.real()}, {"im", s.imag()}}; }

}  // namespace

Command parse(const std::vector<std::string>& args) {
  CLI::App app{"Geodesic periods, Eisenstein lifts and Hecke zeta functions", "geozeta"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all");

  // Raw option storage.
  std::string form, z = "0+1i", s = "2", kernel = "unit", cycle_of_form, mode = "lattice";
  std::int64_t disc = 0, max_d = 500, cutoff = 10000;
  int radius = 100, samples = 9, cycle_idx = -1, multiplicity = 1, wide = -1;
  double t0 = 0, rel_tol = 1e-9, t_min = 0, t_max = 0;
  bool csv = false, sweep = false, no_tail = false, tail_zeta = false, have_range = false;

  auto* reduce = app.add_subcommand("reduce", "Reduce a form; prints R = Q|g and g");
  reduce->add_option("--form", form, "Form literal A,B,C")->required();

  auto* cycle = app.add_subcommand("cycle", "Cycle of reduced forms containing the reduction of a form");
  cycle->add_option("--form", form, "Form literal A,B,C")->required();
  cycle->add_flag("--csv", csv, "CSV output");

  auto* classes = app.add_subcommand("classes", "Narrow classes (cycles) and wide grouping");
  classes->add_option("--disc", disc, "Discriminant")->required();
  classes->add_flag("--csv", csv, "CSV output");

  auto* pell = app.add_subcommand("pell", "Smallest positive solution of v^2 - D u^2 = 4");
  auto* pell_disc = pell->add_option("--disc", disc, "Discriminant");
  pell->add_flag("--sweep", sweep, "All valid discriminants up to --max-D");
  pell->add_option("--max-D", max_d, "Sweep bound (guard)")->capture_default_str();
  pell->add_flag("--csv", csv, "CSV output");

  auto* unit = app.add_subcommand("unit", "Fundamental unit of the order of discriminant D");
  unit->add_option("--disc", disc, "Discriminant")->required();

  auto* eis = app.add_subcommand("eisenstein", "Truncated Eisenstein series E(s, z)");
  eis->add_option("--z", z, "Point a+bi")->required();
  eis->add_option("--s", s, "Parameter a+bi, Re s > 1")->required();
  eis->add_option("--mode", mode, "lattice or coprime")->check(CLI::IsMember({"lattice", "coprime"}))->capture_default_str();
  eis->add_option("--radius", radius, "Truncation radius")->capture_default_str();
  eis->add_flag("--no-tail", no_tail, "Disable the tail correction");

  auto* lift = app.add_subcommand("lift", "Truncated lift series F_Q(s, z)");
  lift->add_option("--form", form, "Form literal A,B,C")->required();
  lift->add_option("--z", z, "Point a+bi")->required();
  lift->add_option("--s", s, "Parameter a+bi, Re s > 1")->required();
  lift->add_option("--radius", radius, "Truncation radius")->capture_default_str();
  lift->add_flag("--no-tail", no_tail, "Disable the tail correction");

  auto* period = app.add_subcommand("period", "Hyperbolic period Int(Q, gamma_Q) of a kernel");
  period->add_option("--form", form, "Form literal A,B,C")->required();
  period->add_option("--kernel", kernel, "unit, delta or lift:s=<a+bi>")->capture_default_str();
  period->add_option("--t0", t0, "Start parameter on C_Q")->capture_default_str();
  period->add_option("--periods", multiplicity, "Integrate to gamma_Q^n z_0")->capture_default_str();
  period->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")->capture_default_str();
  period->add_option("--radius", radius, "Truncation radius (lift kernel)")->capture_default_str();
  period->add_flag("--cusp", sweep, "Also report the cusp decomposition (reduced forms)");

  auto* unit_product = app.add_subcommand("unit-product", "Exact identity eps^2 = prod x_j / x_j'");
  unit_product->add_option("--disc", disc, "Discriminant")->required();
  auto* up_form = unit_product->add_option("--cycle-of", cycle_of_form, "Any form of the cycle");
  auto* up_idx = unit_product->add_option("--cycle", cycle_idx, "Cycle index");
  up_form->excludes(up_idx);

  auto* phireg = app.add_subcommand("phi-reg", "Regularized coset sum Phi_Q(s) of a reduced form");
  phireg->add_option("--form", form, "Reduced form literal A,B,C")->required();
  phireg->add_option("--s", s, "Parameter a+bi, Re s > 1")->required();
  phireg->add_option("--radius", radius, "Truncation radius")->capture_default_str();
  phireg->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")->capture_default_str();

  auto* hecke = app.add_subcommand("hecke-verify", "Check sum Phi_beta = 4 c(s) (i sqrt D)^s zeta(alpha, s) / zeta(2s)");
  hecke->add_option("--disc", disc, "Fundamental discriminant")->required();
  hecke->add_option("--s", s, "Parameter a+bi, Re s > 1")->required();
  hecke->add_option("--cutoff", cutoff, "Ideal norm cutoff")->capture_default_str();
  hecke->add_option("--wide", wide, "Wide class index (default: all)");
  hecke->add_option("--radius", radius, "Truncation radius")->capture_default_str();
  hecke->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")->capture_default_str();
  hecke->add_flag("--zeta-tail", tail_zeta, "Add the tail estimate to the class zeta");

  auto* geo = app.add_subcommand("geodesic", "Sample points z_t on C_Q");
  geo->add_option("--form", form, "Form literal A,B,C")->required();
  geo->add_option("--samples", samples, "Number of samples")->capture_default_str();
  auto* tmin = geo->add_option("--t-min", t_min, "First parameter (default: -L/2)");
  auto* tmax = geo->add_option("--t-max", t_max, "Last parameter (default: L/2)");
  geo->add_flag("--csv", csv, "CSV output");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    if (!subs.empty() && e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      throw HelpRequested(subs.front()->help());
    throw UsageError(e.what());
  }
  have_range = tmin->count() > 0 || tmax->count() > 0;

  Command cmd;
  CLI::App* sub = app.get_subcommands().front();
  cmd.verb = sub->get_name();
  cmd.csv = csv;
  json& o = cmd.options;

  if (cmd.verb == "reduce" || cmd.verb == "cycle") {
    o["form"] = form_option(form, "form").str();
  } else if (cmd.verb == "classes" || cmd.verb == "unit") {
    disc_option(disc, false);
    o["disc"] = disc;
  } else if (cmd.verb == "pell") {
    if (sweep) {
      if (pell_disc->count() > 0) throw UsageError("pell: --disc and --sweep are exclusive");
      if (max_d < 5 || max_d > 500)
        throw UsageError("pell: --max-D must lie in [5, 500]");
      o["sweep"] = true;
      o["max_D"] = max_d;
    } else {
      if (pell_disc->count() == 0) throw UsageError("pell: --disc is required without --sweep");
      disc_option(disc, false);
      o["disc"] = disc;
    }
  } else if (cmd.verb == "eisenstein") {
    const Complex zz = complex_option(z, "z");
    if (!(zz.imag() > 0)) throw UsageError("--z: Im z must be positive");
    const Complex ss = complex_option(s, "s");
    require_series_s(ss);
    radius_option(radius);
    o = {{"z", s_json(zz)}, {"s", s_json(ss)}, {"mode", mode}, {"radius", radius}, {"no_tail", no_tail}};
  } else if (cmd.verb == "lift") {
    const Complex zz = complex_option(z, "z");
    if (!(zz.imag() > 0)) throw UsageError("--z: Im z must be positive");
    const Complex ss = complex_option(s, "s");
    require_series_s(ss);
    radius_option(radius);
    o = {{"form", form_option(form, "form").str()}, {"z", s_json(zz)}, {"s", s_json(ss)},
         {"radius", radius}, {"no_tail", no_tail}};
  } else if (cmd.verb == "period") {
    radius_option(radius);
    TruncationParams tp;
    tp.radius = radius;
    try {
      (void)Kernel::parse(kernel, tp);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--kernel: ") + e.what());
    }
    if (multiplicity < 1) throw UsageError("--periods must be positive");
    if (!(rel_tol > 0 && rel_tol < 1)) throw UsageError("--rel-tol must lie in (0, 1)");
    const Form q = form_option(form, "form");
    if (sweep && !is_reduced(q)) throw UsageError("--cusp requires a reduced form");
    o = {{"form", q.str()}, {"kernel", kernel}, {"t0", t0}, {"periods", multiplicity},
         {"rel_tol", rel_tol}, {"radius", radius}, {"cusp", sweep}};
  } else if (cmd.verb == "unit-product") {
    disc_option(disc, false);
    o["disc"] = disc;
    if (up_form->count() > 0) {
      const Form q = form_option(cycle_of_form, "cycle-of");
      if (q.discriminant() != disc) throw UsageError("--cycle-of: form discriminant differs from --disc");
      o["cycle_of"] = q.str();
    } else {
      o["cycle"] = cycle_idx < 0 ? 0 : cycle_idx;
    }
  } else if (cmd.verb == "phi-reg") {
    const Form q = form_option(form, "form");
    if (!is_reduced(q)) throw UsageError("--form: phi-reg requires a reduced form");
    const Complex ss = complex_option(s, "s");
    require_series_s(ss);
    radius_option(radius);
    o = {{"form", q.str()}, {"s", s_json(ss)}, {"radius", radius}, {"rel_tol", rel_tol}};
  } else if (cmd.verb == "hecke-verify") {
    disc_option(disc, true);
    const Complex ss = complex_option(s, "s");
    require_series_s(ss);
    radius_option(radius);
    if (cutoff < 10) throw UsageError("--cutoff must be at least 10");
    o = {{"disc", disc}, {"s", s_json(ss)}, {"cutoff", cutoff}, {"radius", radius},
         {"rel_tol", rel_tol}, {"zeta_tail", tail_zeta}};
    if (wide >= 0) o["wide"] = wide;
  } else if (cmd.verb == "geodesic") {
    const Form q = form_option(form, "form");
    if (samples < 1 || samples > 100000) throw UsageError("--samples must lie in [1, 100000]");
    o = {{"form", q.str()}, {"samples", samples}};
    if (have_range) {
      const double half = 0.5 * period_length(q);
      const double lo = tmin->count() > 0 ? t_min : -half;
      const double hi = tmax->count() > 0 ? t_max : half;
      if (!(hi >= lo)) throw UsageError("--t-max must not be below --t-min");
      o["t_min"] = lo;
      o["t_max"] = hi;
    }
  }
  return cmd;
}

namespace {

void emit(std::ostream& out, const Command& cmd, json body) {
  json req = cmd.options;
  req["verb"] = cmd.verb;
  body["request"] = req;
  out << body.dump(2) << '\n';
}

void run_reduce(const Command& cmd, std::ostream& out) {
  const Form q = Form::parse(cmd.options.at("form").get<std::string>());
  const ReductionResult r = reduce(q);
  emit(out, cmd, {{"reduced", r.reduced.str()}, {"transform", matrix_json(r.transform)}, {"steps", r.steps}});
}

void run_cycle(const Command& cmd, std::ostream& out) {
  const Form q = Form::parse(cmd.options.at("form").get<std::string>());
  const Form start = reduce(q).reduced;
  const Cycle cyc = cycle_of(start);
  if (cmd.csv) {
    out << "j,form,m\n";
    for (std::size_t j = 0; j < cyc.size(); ++j)
      out << j << ',' << csv_field(cyc.forms[j].str()) << ',' << cyc.quotients[j].str() << '\n';
    return;
  }
  json body = cycle_json(cyc);
  body["cycle_matrix"] = matrix_json(cycle_matrix(cyc).normalized());
  body["stabilizer"] = matrix_json(stabilizer_generator(start));
  emit(out, cmd, body);
}

void run_classes(const Command& cmd, std::ostream& out) {
  const BigInt d(cmd.options.at("disc").get<std::int64_t>());
  const bool fundamental = is_fundamental_discriminant(d);
  const ClassTable table = fundamental ? wide_class_table(d) : narrow_classes(d);
  if (cmd.csv) {
    out << "cycle,j,form,m\n";
    for (std::size_t i = 0; i < table.cycles.size(); ++i)
      for (std::size_t j = 0; j < table.cycles[i].size(); ++j)
        out << i << ',' << j << ',' << csv_field(table.cycles[i].forms[j].str()) << ','
            << table.cycles[i].quotients[j].str() << '\n';
    return;
  }
  json cycles = json::array();
  for (const Cycle& c : table.cycles) cycles.push_back(cycle_json(c));
  json body = {{"narrow_class_number", table.cycles.size()}, {"cycles", cycles}, {"fundamental", fundamental}};
  if (fundamental) {
    json pairs = json::array();
    for (const auto& [i, j] : table.widePairs) pairs.push_back(json::array({i, j}));
    body["wide_pairs"] = pairs;
    body["wide_class_number"] = table.widePairs.size();
    body["f"] = table.f;
  }
  emit(out, cmd, body);
}

void run_pell(const Command& cmd, std::ostream& out) {
  const auto epsilon = [](const BigInt& d, const PellSolution& p) {
    return QuadExact(p.v, p.u, 2, d).str_over(2);
  };
  if (cmd.options.value("sweep", false)) {
    const std::int64_t max_d = cmd.options.at("max_D").get<std::int64_t>();
    json rows = json::array();
    if (cmd.csv) out << "D,v,u\n";
    for (std::int64_t d = 5; d <= max_d; ++d) {
      if ((d % 4 != 0 && d % 4 != 1) || is_square(BigInt(d))) continue;
      const PellSolution p = pell_fundamental(BigInt(d));
      if (cmd.csv)
        out << d << ',' << p.v.str() << ',' << p.u.str() << '\n';
      else
        rows.push_back({{"D", d}, {"v", p.v.str()}, {"u", p.u.str()}, {"epsilon", epsilon(BigInt(d), p)}});
    }
    if (!cmd.csv) emit(out, cmd, {{"solutions", rows}});
    return;
  }
  const BigInt d(cmd.options.at("disc").get<std::int64_t>());
  const PellSolution p = pell_fundamental(d);
  // Small solutions are emitted as JSON integers, larger ones as decimal strings.
  const auto integer = [](const BigInt& v) -> json {
    if (bit_length(v) < 63) return to_int64(v);
    return v.str();
  };
  emit(out, cmd, {{"v", integer(p.v)}, {"u", integer(p.u)}, {"epsilon", epsilon(d, p)}});
}

void run_unit(const Command& cmd, std::ostream& out) {
  const BigInt d(cmd.options.at("disc").get<std::int64_t>());
  const FundamentalUnit u = fundamental_unit(d);
  emit(out, cmd, {{"epsilon", u.eps.str()}, {"norm", u.normSign}, {"f", u.f},
                  {"log_epsilon", num(std::log(u.eps.to_double()))}});
}

void run_eisenstein(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const Complex z{o.at("z").at("re").get<double>(), o.at("z").at("im").get<double>()};
  const EisensteinMode mode = o.at("mode") == "coprime" ? EisensteinMode::coprime : EisensteinMode::lattice;
  emit(out, cmd, {{"E", partial_sum_json(eisenstein(z, s_from(o), mode, truncation_from(o)))}});
}

void run_lift(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const Form q = Form::parse(o.at("form").get<std::string>());
  const Complex z{o.at("z").at("re").get<double>(), o.at("z").at("im").get<double>()};
  emit(out, cmd, {{"F", partial_sum_json(lift_series(q, z, s_from(o), truncation_from(o)))}});
}

void run_period(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const Form q = Form::parse(o.at("form").get<std::string>());
  TruncationParams tp;
  tp.radius = o.at("radius").get<int>();
  const Kernel k = Kernel::parse(o.at("kernel").get<std::string>(), tp);
  QuadratureParams qp = quadrature_from(o);
  const PeriodValue pv = hyperbolic_period(k, q, o.at("t0").get<double>(), qp, o.at("periods").get<int>());
  const double sd = std::sqrt(to_double(q.discriminant()));
  json body = {{"int", complex_json(pv.value)},
               {"minus_sqrtD_int", complex_json(-sd * pv.value)},
               {"quadrature_error", num(pv.quadratureError)},
               {"truncation_bound", num(pv.truncationBound)},
               {"period_length", num(period_length(q))}};
  if (o.value("cusp", false)) {
    const CuspDecomposition cd = cusp_decomposition(k, q, qp);
    json parts = json::array();
    for (const Complex& p : cd.parts) parts.push_back(complex_json(p));
    body["cusp"] = {{"total", complex_json(cd.total)}, {"parts", parts}};
  }
  emit(out, cmd, body);
}

void run_unit_product(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const BigInt d(o.at("disc").get<std::int64_t>());
  std::size_t idx = 0;
  if (o.contains("cycle_of")) {
    const Form q = Form::parse(o.at("cycle_of").get<std::string>());
    idx = narrow_classes(d).cycle_index(reduce(q).reduced);
  } else {
    idx = o.at("cycle").get<std::size_t>();
  }
  const UnitProductIdentity u = unit_product_identity(d, idx);
  const QuadExact lhs = u.lhs.with_squarefree_radicand(), rhs = u.rhs.with_squarefree_radicand();
  const auto render = [](const QuadExact& x) {
    const std::string over2 = x.str_over(2);
    return over2.empty() ? x.str() : over2;
  };
  json cycle = cycle_json(narrow_classes(d).cycles[idx]);
  emit(out, cmd, {{"equal", u.equal}, {"lhs", render(lhs)}, {"rhs", render(rhs)}, {"cycle", cycle}, {"cycle_index", idx}});
}

void run_phi_reg(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const Form q = Form::parse(o.at("form").get<std::string>());
  TruncationParams tp;
  tp.radius = o.at("radius").get<int>();
  const PartialSum ps = phi_regularized(q, s_from(o), tp, quadrature_from(o));
  json excluded = json::array();
  for (const Coset& c : excluded_cosets(q)) excluded.push_back(json::array({c.c, c.d}));
  emit(out, cmd, {{"Phi", partial_sum_json(ps)}, {"excluded_cosets", excluded}});
}

void run_hecke(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const BigInt d(o.at("disc").get<std::int64_t>());
  ZetaRequest req;
  req.s = s_from(o);
  req.normCutoff = o.at("cutoff").get<std::int64_t>();
  req.tailCorrection = o.at("zeta_tail").get<bool>();
  TruncationParams tp;
  tp.radius = o.at("radius").get<int>();
  const QuadratureParams qp = quadrature_from(o);
  const ClassTable table = wide_class_table(d);
  std::vector<std::size_t> which;
  if (o.contains("wide")) {
    which.push_back(o.at("wide").get<std::size_t>());
  } else {
    for (std::size_t w = 0; w < table.widePairs.size(); ++w) which.push_back(w);
  }
  json results = json::array();
  for (std::size_t w : which) {
    const HeckeCheck h = hecke_theorem_check(d, w, req, qp, tp);
    json narrow = json::array();
    for (std::size_t k : h.narrowClasses) narrow.push_back(table.cycles[k].forms.front().str());
    json phis = json::array();
    for (const PhiBeta& p : h.phis)
      phis.push_back({{"value", complex_json(p.value)}, {"direct", complex_json(p.direct)}, {"bound", num(p.bound)}});
    results.push_back({{"D", o.at("disc")},
                       {"class", {{"narrow", narrow}, {"wide", w}}},
                       {"s", complex_json(req.s)},
                       {"lhs", complex_json(h.lhs)},
                       {"rhs", complex_json(h.rhs)},
                       {"rel_residual", num(h.relResidual)},
                       {"phi_beta", phis},
                       {"zeta", partial_sum_json(h.zeta.sum)},
                       {"budgets", {{"cutoff", req.normCutoff}, {"radius", tp.radius}, {"rel_tol", num(qp.relTol)}}}});
  }
  emit(out, cmd, {{"results", results}, {"f", table.f}});
}

void run_geodesic(const Command& cmd, std::ostream& out) {
  const json& o = cmd.options;
  const Form q = Form::parse(o.at("form").get<std::string>());
  const int n = o.at("samples").get<int>();
  const double half = 0.5 * period_length(q);
  const double lo = o.value("t_min", -half), hi = o.value("t_max", half);
  json rows = json::array();
  if (cmd.csv) out << "t,re,im\n";
  for (int k = 0; k < n; ++k) {
    const double t = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    const GeodesicPoint p = point_at(q, t);
    if (cmd.csv)
      out << fmt15(t) << ',' << fmt15(p.z.real()) << ',' << fmt15(p.z.imag()) << '\n';
    else
      rows.push_back({{"t", num(t)}, {"re", num(p.z.real())}, {"im", num(p.z.imag())}});
  }
  if (!cmd.csv) {
    const Circle c = circle_of(q);
    emit(out, cmd, {{"points", rows}, {"center", num(c.center)}, {"radius", num(c.radius)}});
  }
}

}  // namespace

void execute(const Command& cmd, std::ostream& out) {
  static const std::map<std::string, std::function<void(const Command&, std::ostream&)>> verbs = {
      {"reduce", run_reduce},       {"cycle", run_cycle},
      {"classes", run_classes},     {"pell", run_pell},
      {"unit", run_unit},           {"eisenstein", run_eisenstein},
      {"lift", run_lift},           {"period", run_period},
      {"unit-product", run_unit_product}, {"phi-reg", run_phi_reg},
      {"hecke-verify", run_hecke},  {"geodesic", run_geodesic}};
  const auto it = verbs.find(cmd.verb);
  if (it == verbs.end()) throw UsageError("unknown verb " + cmd.verb);
  it->second(cmd, out);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  try {
    std::ostringstream buffer;
    execute(cmd, buffer);
    out << buffer.str();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace geozeta::cli
