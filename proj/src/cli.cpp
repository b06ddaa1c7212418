// SPDX-License-Identifier: Apache-2.0

#include "qes/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "qes/errors.hpp"
#include "qes/spectrum.hpp"
#include "qes/verify.hpp"

namespace qes::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kDefaultMargin = 1e-3;  // units of K
constexpr int kDefaultPoints = 256;

struct IndexError : Error {
  using Error::Error;
};

struct Common {
  std::string potential = "v1";
  double l = 0.0;
  double k2 = 0.5;
  std::string family;
  int max_count = 5;
  std::optional<double> emin, emax;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--potential", c.potential, "v1 or v2")->capture_default_str();
  app->add_option("--l", c.l, "coupling parameter l")->required();
  app->add_option("--k2", c.k2, "squared elliptic modulus, 0 < k2 < 1")->required();
  app->add_option("--family", c.family,
                  "ring1,ring2,ring3,ring5,ring6,ring7,bar1,bar3,bar5,bar7,bold1,bold2,bold5,bold6 "
                  "(default: first terminating family)");
  app->add_option("--max-count", c.max_count, "energies kept for non-terminating series")
      ->capture_default_str();
  app->add_option("--emin", c.emin, "lower end of the scan window (non-terminating series)");
  app->add_option("--emax", c.emax, "upper end of the scan window (non-terminating series)");
}

std::string num(double x, int digits = 15) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// JSON cannot hold NaN or Inf; they are never emitted as numbers.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Computed {
  PotentialSpec spec;
  ExpansionFamily fam;
  std::optional<int> N;
  std::optional<SpectrumResult> finite;
  std::vector<double> energies;
  Interval window{};
};

Computed compute(const Common& c) {
  Computed r{make_spec(parse_potential(c.potential), c.l, c.k2), {FamilyGroup::PowerRing, 5}, {}, {}, {}, {}};
  r.fam = c.family.empty() ? default_family(r.spec) : parse_family(c.family);
  require_supported(r.spec.kind, r.fam);
  r.N = truncation_order(r.spec, r.fam);
  if (r.N) {
    r.finite = finite_spectrum(r.spec, r.fam);
    r.energies = r.finite->energies;
  } else {
    if (r.fam.group != FamilyGroup::PowerRing)
      throw ArgumentError(family_name(r.fam) + " does not terminate at l = " + num(c.l) +
                          "; non-terminating series are available for the ring families");
    r.window = default_energy_window(r.spec);
    if (c.emin) r.window.lo = *c.emin;
    if (c.emax) r.window.hi = *c.emax;
    if (!(r.window.lo < r.window.hi)) throw DomainError("empty energy window");
    r.energies = infinite_spectrum(r.spec, r.fam, r.window, c.max_count);
  }
  return r;
}

SeriesSolution solution_at(const Computed& r, int index) {
  if (index < 0 || index >= static_cast<int>(r.energies.size()))
    throw IndexError("energy index " + std::to_string(index) + " out of range (" +
                     std::to_string(r.energies.size()) + " energies)");
  if (r.finite) return r.finite->solutions[index];
  return make_infinite_solution(r.spec, r.fam, r.energies[index]);
}

json spectrum_document(const Common& c, const Computed& r) {
  json d;
  d["potential"] = potential_name(r.spec.kind);
  d["l"] = c.l;
  d["k2"] = c.k2;
  d["family"] = family_name(r.fam);
  d["series"] = r.N ? "finite" : "infinite";
  d["truncation_N"] = r.N ? json(*r.N) : json(nullptr);
  d["arscott_ok"] = r.finite ? json(r.finite->arscott_ok) : json(nullptr);
  json energies = json::array();
  for (double e : r.energies) energies.push_back(finite_or_null(e));
  d["energies"] = energies;
  json pairs = json::array();
  json croots = json::array();
  if (r.finite) {
    for (auto [i, j] : r.finite->degenerate_pairs) pairs.push_back({i, j});
    for (auto z : r.finite->complex_roots) croots.push_back({{"re", z.real()}, {"im", z.imag()}});
  }
  d["degenerate_pairs"] = pairs;
  d["complex_roots"] = croots;

  json match = nullptr;
  if (r.finite) {
    if (auto expected = closed_form_energies(r.spec, r.fam)) {
      std::vector<std::complex<double>> got;
      for (double e : r.energies) got.emplace_back(e, 0.0);
      for (auto z : r.finite->complex_roots) got.push_back(z);
      auto key = [](std::complex<double> z) { return std::pair(z.real(), z.imag()); };
      auto less = [&](auto a, auto b) { return key(a) < key(b); };
      std::sort(got.begin(), got.end(), less);
      std::sort(expected->begin(), expected->end(), less);
      double diff = got.size() == expected->size() ? 0.0 : INFINITY;
      json exp = json::array();
      for (std::size_t i = 0; i < expected->size(); ++i) {
        exp.push_back({{"re", (*expected)[i].real()}, {"im", (*expected)[i].imag()}});
        if (i < got.size()) diff = std::max(diff, std::abs(got[i] - (*expected)[i]));
      }
      match = {{"expected", exp}, {"max_abs_diff", finite_or_null(diff)}, {"matched", diff <= 1e-10}};
    }
  }
  d["closed_form_match"] = match;
  json meta = {{"margin_K", kDefaultMargin}, {"grid", kDefaultPoints}, {"max_count", c.max_count}};
  if (!r.N) meta["window"] = {r.window.lo, r.window.hi};
  d["metadata"] = meta;
  return d;
}

Parity family_parity(const Computed& r) {
  const int i = r.fam.index;
  return (i == 5 || i == 1) ? Parity::Even : Parity::Odd;
}

int cmd_spectrum(const Common& c, std::ostream& out) {
  const Computed r = compute(c);
  out << spectrum_document(c, r).dump(2) << "\n";
  return kOk;
}

int cmd_eigenfunction(const Common& c, int index, int points, double margin, const std::string& format,
                      std::ostream& out) {
  if (points < 16) throw DomainError("--points must be >= 16");
  if (format != "text" && format != "json") throw DomainError("--format must be text or json");
  const Computed r = compute(c);
  const SeriesSolution sol = solution_at(r, index);
  Interval dom = family_domain(r.spec, r.fam);
  // V1 power series have definite parity about u = 0; sample the half period.
  if (r.spec.kind == PotentialKind::V1 && r.fam.group == FamilyGroup::PowerRing) dom.lo = 0.0;
  const double K = complete_K(r.spec.k);
  // The margin is kept only from walls of the potential.
  auto at_wall = [&](double u) {
    try {
      potential_value(r.spec, u);
      return false;
    } catch (const SingularPointError&) {
      return true;
    }
  };
  const double lo = at_wall(dom.lo) ? dom.lo + margin * K : dom.lo;
  const double hi = at_wall(dom.hi) ? dom.hi - margin * K : dom.hi;
  std::vector<double> us(points), ps(points);
  for (int i = 0; i < points; ++i) {
    us[i] = lo + (hi - lo) * i / (points - 1);
    ps[i] = evaluate(sol, us[i]);
  }
  if (format == "text") {
    out << "# u psi\n";
    for (int i = 0; i < points; ++i) out << num(us[i]) << " " << num(ps[i]) << "\n";
    return kOk;
  }
  json d;
  d["potential"] = potential_name(r.spec.kind);
  d["l"] = c.l;
  d["k2"] = c.k2;
  d["family"] = family_name(r.fam);
  d["index"] = index;
  d["energy"] = sol.E;
  d["prefactor"] = {{"sn", sol.prefactor.p_sn}, {"cn", sol.prefactor.p_cn}, {"dn", sol.prefactor.p_dn}};
  json coeffs = json::array();
  for (double b : sol.coeffs) coeffs.push_back(finite_or_null(b));
  d["coefficients"] = coeffs;
  json u = json::array(), p = json::array();
  for (int i = 0; i < points; ++i) {
    u.push_back(finite_or_null(us[i]));
    p.push_back(finite_or_null(ps[i]));
  }
  d["u"] = u;
  d["psi"] = p;
  d["metadata"] = {{"margin_K", margin}, {"grid", points}};
  out << d.dump(2) << "\n";
  return kOk;
}

int cmd_verify(const Common& c, std::optional<double> override_e, int index, int grid, std::ostream& out) {
  const Computed r = compute(c);
  json checks = json::array();
  bool ok = true;
  const auto check = [&](const std::string& name, double value, double tol) {
    const bool pass = std::isfinite(value) && value <= tol;
    ok = ok && pass;
    checks.push_back({{"name", name}, {"value", finite_or_null(value)}, {"tolerance", tol}, {"passed", pass}});
  };

  std::vector<SeriesSolution> sols;
  if (override_e) {
    SeriesSolution s = solution_at(r, index);
    s.E = *override_e;
    sols.push_back(s);
  } else {
    for (int i = 0; i < static_cast<int>(r.energies.size()); ++i) sols.push_back(solution_at(r, i));
  }
  for (std::size_t i = 0; i < sols.size(); ++i)
    check("ode_residual[E=" + num(sols[i].E, 10) + "]", ode_residual(sols[i], grid).max_rel_residual, 1e-7);

  if (!sols.empty()) {
    double emax = -INFINITY;
    for (const auto& s : sols) emax = std::max(emax, s.E);
    ShootingOptions opt;
    opt.e_max = emax + 1.0;
    std::vector<double> shot;
    const bool hyper = r.fam.group != FamilyGroup::PowerRing;
    for (Parity p : {Parity::Even, Parity::Odd}) {
      if (!hyper && p != family_parity(r)) continue;
      const auto s = shooting_spectrum(r.spec, p, 1000, opt);
      shot.insert(shot.end(), s.energies.begin(), s.energies.end());
    }
    for (const auto& s : sols) {
      double best = INFINITY;
      for (double e : shot) best = std::min(best, std::abs(e - s.E));
      check("shooting[E=" + num(s.E, 10) + "]", best, 1e-6);
    }
  }

  for (const auto& e : equivalence_suite(r.spec).checks) check("equivalence: " + e.name, e.max_deviation, e.tolerance);

  json d;
  d["potential"] = potential_name(r.spec.kind);
  d["l"] = c.l;
  d["k2"] = c.k2;
  d["family"] = family_name(r.fam);
  d["arscott_ok"] = r.finite ? json(r.finite->arscott_ok) : json(nullptr);
  d["energy_override"] = override_e ? json(*override_e) : json(nullptr);
  d["checks"] = checks;
  d["passed"] = ok;
  d["metadata"] = {{"margin_K", kDefaultMargin}, {"grid", grid}};
  out << d.dump(2) << "\n";
  return ok ? kOk : kVerifyFailed;
}

std::vector<double> parse_k2_points(const std::string& list, const std::string& range) {
  std::vector<double> pts;
  if (!list.empty()) {
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        std::size_t used = 0;
        pts.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DomainError("bad k2 value '" + tok + "'");
      }
    }
  }
  if (!range.empty()) {
    double a = 0, b = 0;
    int n = 0;
    char tail = 0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &tail) != 3)
      throw DomainError("--k2-range must be start:stop:count");
    for (int i = 0; i < n; ++i) pts.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) throw DomainError("empty k2 range");
  return pts;
}

int cmd_sweep(Common c, const std::string& list, const std::string& range, int threads, std::ostream& out) {
  const std::vector<double> pts = parse_k2_points(list, range);
  for (double k2 : pts) EllipticModulus::from_k2(k2);  // fail before any work
  std::vector<std::vector<double>> rows(pts.size());
  std::vector<std::string> fam(pts.size());
  std::vector<std::exception_ptr> errs(pts.size());
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(pts.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < pts.size(); i += nt) {
        try {
          Common ci = c;
          ci.k2 = pts[i];
          const Computed r = compute(ci);
          rows[i] = r.energies;
          fam[i] = family_name(r.fam);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  out << "k2,l,family,index,energy\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      out << num(pts[i]) << "," << num(c.l) << "," << fam[i] << "," << j << "," << num(rows[i][j], 17) << "\n";
  return kOk;
}

}  // namespace

ExpansionFamily default_family(const PotentialSpec& spec) {
  const bool v1 = spec.kind == PotentialKind::V1;
  const FamilyGroup hyper = v1 ? FamilyGroup::HyperBold : FamilyGroup::HyperBar;
  const int odd5 = v1 ? 6 : 7, odd1 = v1 ? 2 : 3;
  const std::vector<ExpansionFamily> order = {
      {FamilyGroup::PowerRing, 5}, {FamilyGroup::PowerRing, odd5}, {FamilyGroup::PowerRing, 1},
      {FamilyGroup::PowerRing, odd1}, {hyper, 5}, {hyper, odd5}, {hyper, 1}, {hyper, odd1}};
  for (const auto& f : order)
    if (truncation_order(spec, f)) return f;
  return {FamilyGroup::PowerRing, 5};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and eigenfunctions of the V1/V2 elliptic potentials from Heun-equation series"};
  app.require_subcommand(1);

  Common c_spec, c_eig, c_ver, c_sw;
  auto* sp = app.add_subcommand("spectrum", "energies of one expansion family (JSON)");
  add_common(sp, c_spec);

  auto* ef = app.add_subcommand("eigenfunction", "samples of one eigenfunction");
  add_common(ef, c_eig);
  int e_index = 0, e_points = kDefaultPoints;
  double e_margin = kDefaultMargin;
  std::string e_format = "text";
  ef->add_option("--index", e_index, "energy index (ascending)")->capture_default_str();
  ef->add_option("--points", e_points, "number of samples")->capture_default_str();
  ef->add_option("--margin", e_margin, "distance kept from walls of the potential, units of K")->capture_default_str();
  ef->add_option("--format", e_format, "text or json")->capture_default_str();

  auto* vf = app.add_subcommand("verify", "ODE residual, shooting and equivalence checks (JSON)");
  add_common(vf, c_ver);
  std::optional<double> v_override;
  int v_index = 0, v_grid = kDefaultPoints;
  vf->add_option("--energy-override", v_override, "replace the energy of solution --index");
  vf->add_option("--index", v_index, "solution used with --energy-override")->capture_default_str();
  vf->add_option("--grid", v_grid, "residual grid size")->capture_default_str();

  auto* sw = app.add_subcommand("sweep", "energies over a list or range of k2 (CSV)");
  add_common(sw, c_sw);
  sw->get_option("--k2")->required(false);
  std::string s_list, s_range;
  int s_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  sw->add_option("--k2-list", s_list, "comma-separated k2 values");
  sw->add_option("--k2-range", s_range, "start:stop:count");
  sw->add_option("--threads", s_threads, "worker threads (output does not depend on it)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  try {
    if (*sp) return cmd_spectrum(c_spec, out);
    if (*ef) return cmd_eigenfunction(c_eig, e_index, e_points, e_margin, e_format, out);
    if (*vf) return cmd_verify(c_ver, v_override, v_index, v_grid, out);
    if (*sw) {
      if (sw->get_option("--k2")->count() > 0 && s_list.empty() && s_range.empty()) s_list = num(c_sw.k2, 17);
      return cmd_sweep(c_sw, s_list, s_range, s_threads, out);
    }
  } catch (const IndexError& e) {
    err << "error: " << e.what() << "\n";
    return kIndexError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kDomainError;
}

}  // namespace qes::cli
