#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "chm/json_io.hpp"
#include "selftest.hpp"

using namespace chm;

namespace {

constexpr int kSchemaVersion = 1;

// Exit codes: 0 success, 1 invalid input, 2 inconclusive within budget.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInconclusive = 2;

void write_artifact(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << payload;
}

Json wrap(Json config, Json result) {
  return {{"schema_version", kSchemaVersion}, {"config", std::move(config)},
          {"result", std::move(result)}};
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto pos = s.find("..");
  if (pos == std::string::npos) {
    const int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

ParamKind kind_from_flags(bool full, bool symmetric, bool ac) {
  if (ac) return ParamKind::half_symmetric_ac;
  if (full) return ParamKind::full_torus;
  (void)symmetric;  // the default
  return ParamKind::real_symmetric;
}

const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::full_torus: return "full_torus";
    case ParamKind::real_symmetric: return "real_symmetric";
    case ParamKind::half_symmetric_ac: return "half_symmetric_ac";
    case ParamKind::phase_slice: return "phase_slice";
  }
  return "?";
}

Json optimizer_config_json(const OptimizerConfig& cfg) {
  return {{"starts", cfg.starts},     {"seed", cfg.seed},
          {"max_iters", cfg.max_iters}, {"step", cfg.step},
          {"grad_tol", cfg.grad_tol}, {"backtrack", cfg.backtrack},
          {"threads", cfg.threads}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circulant Hadamard toolkit: the phi functional on the torus, its minimization "
               "and critical points, exact circulant Butson searches, and moment computations"};
  app.require_subcommand(1);

  // ---- phi-eval ----------------------------------------------------------
  auto* phi_cmd = app.add_subcommand("phi-eval", "Evaluate phi (and optionally its report) at a point");
  std::string phi_angles, phi_angles_file;
  bool phi_report = false, phi_selftest = false;
  std::string phi_out;
  phi_cmd->add_option("--angles", phi_angles, "Comma-separated angles; radians or 'a/b pi' form");
  phi_cmd->add_option("--angles-file", phi_angles_file,
                      "JSON file with a {\"n\": N, \"angles\": [...]} point");
  phi_cmd->add_flag("--report", phi_report, "Emit the full phi and psi reports as JSON");
  phi_cmd->add_option("--out", phi_out, "Write output to a file instead of stdout");
  phi_cmd->add_flag("--selftest", phi_selftest, "Run the module example checks");

  // ---- minimize ----------------------------------------------------------
  auto* min_cmd = app.add_subcommand("minimize", "Multistart minimization of phi");
  int min_n = 8;
  bool min_full = false, min_sym = false, min_ac = false, min_selftest = false;
  OptimizerConfig min_cfg;
  std::string min_out;
  min_cmd->add_option("--n", min_n, "Torus dimension N")->required(false);
  min_cmd->add_flag("--full", min_full, "Minimize over the full torus");
  min_cmd->add_flag("--symmetric", min_sym, "Minimize over the real-symmetric slice (default)");
  min_cmd->add_flag("--ac", min_ac, "Real-symmetric slice with the a and c blocks tied");
  min_cmd->add_option("--starts", min_cfg.starts, "Number of random starts");
  min_cmd->add_option("--seed", min_cfg.seed, "RNG seed");
  min_cmd->add_option("--max-iters", min_cfg.max_iters, "Iteration cap per start");
  min_cmd->add_option("--step", min_cfg.step, "Initial line-search step");
  min_cmd->add_option("--grad-tol", min_cfg.grad_tol, "Gradient norm declaring convergence");
  min_cmd->add_option("--threads", min_cfg.threads, "Worker threads over starts");
  min_cmd->add_option("--out", min_out, "Write output to a file");
  min_cmd->add_flag("--selftest", min_selftest, "Run the module example checks");

  // ---- critical-points ---------------------------------------------------
  auto* crit_cmd = app.add_subcommand("critical-points", "Find critical points of phi");
  int crit_n = 2;
  bool crit_full = true, crit_sym = false, crit_selftest = false;
  double crit_residual = 1e-8;
  OptimizerConfig crit_cfg;
  std::string crit_out;
  crit_cmd->add_option("--n", crit_n, "Torus dimension N");
  crit_cmd->add_flag("--full", crit_full, "Search the full torus with q_0 = 1 (default)");
  crit_cmd->add_flag("--symmetric", crit_sym, "Search the real-symmetric slice");
  crit_cmd->add_option("--starts", crit_cfg.starts, "Number of Newton starts");
  crit_cmd->add_option("--seed", crit_cfg.seed, "RNG seed");
  crit_cmd->add_option("--residual-tol", crit_residual, "Acceptance bound on max |Im phi_i|");
  crit_cmd->add_option("--out", crit_out, "Write output to a file");
  crit_cmd->add_flag("--selftest", crit_selftest, "Run the module example checks");

  // ---- gap-scan ----------------------------------------------------------
  auto* gap_cmd = app.add_subcommand("gap-scan", "min phi - N^2 per even N");
  int gap_nmax = 12;
  OptimizerConfig gap_cfg;
  std::string gap_out, gap_format = "csv";
  bool gap_selftest = false;
  gap_cmd->add_option("--n-max", gap_nmax, "Largest N (even N from 4 up)");
  gap_cmd->add_option("--starts", gap_cfg.starts, "Starts per N");
  gap_cmd->add_option("--seed", gap_cfg.seed, "RNG seed");
  gap_cmd->add_option("--threads", gap_cfg.threads, "Worker threads");
  gap_cmd->add_option("--format", gap_format, "csv or json");
  gap_cmd->add_option("--out", gap_out, "Write output to a file");
  gap_cmd->add_flag("--selftest", gap_selftest, "Run the module example checks");

  // ---- butson-enumerate --------------------------------------------------
  auto* but_cmd = app.add_subcommand("butson-enumerate", "Exact circulant Butson search at (N, l)");
  int but_n = 4, but_l = 2;
  long long but_budget = 100'000'000;
  std::string but_out;
  bool but_selftest = false;
  but_cmd->add_option("--n", but_n, "Matrix size N");
  but_cmd->add_option("--l", but_l, "Root-of-unity order l");
  but_cmd->add_option("--budget", but_budget, "Candidate budget (search space is l^(N-1))");
  but_cmd->add_option("--out", but_out, "Write output to a file");
  but_cmd->add_flag("--selftest", but_selftest, "Run the module example checks");

  // ---- obstruction-table -------------------------------------------------
  auto* tab_cmd = app.add_subcommand("obstruction-table", "Obstruction ladder over (N, l) ranges");
  std::string tab_n = "2..9", tab_l = "2..9", tab_out, tab_format = "csv";
  long long tab_budget = 100'000'000;
  bool tab_selftest = false;
  tab_cmd->add_option("--n", tab_n, "N range, e.g. 2..9");
  tab_cmd->add_option("--l", tab_l, "l range, e.g. 2..9");
  tab_cmd->add_option("--budget", tab_budget, "Per-cell enumeration budget");
  tab_cmd->add_option("--format", tab_format, "csv or json");
  tab_cmd->add_option("--out", tab_out, "Write output to a file");
  tab_cmd->add_flag("--selftest", tab_selftest, "Run the module example checks");

  // ---- moments -----------------------------------------------------------
  auto* mom_cmd = app.add_subcommand("moments", "Exact, brute-force and Monte Carlo moments");
  int mom_n = 2, mom_p = 1;
  std::string mom_method = "enveloping", mom_ensemble = "complex", mom_plist = "1,2,4,8,16";
  long long mom_samples = 100'000, mom_budget = 1'000'000'000;
  std::uint64_t mom_seed = 0;
  bool mom_balanced = false, mom_selftest = false, mom_coeffs = false;
  std::string mom_out;
  mom_cmd->add_option("--n", mom_n, "Torus dimension N");
  mom_cmd->add_option("--p", mom_p, "Moment order p");
  mom_cmd->add_option("--method", mom_method,
                      "enveloping | half | brute | mc | loop | pnorm");
  mom_cmd->add_option("--samples", mom_samples, "Monte Carlo sample count");
  mom_cmd->add_option("--seed", mom_seed, "RNG seed");
  mom_cmd->add_option("--ensemble", mom_ensemble, "complex | real (Monte Carlo only)");
  mom_cmd->add_flag("--balanced", mom_balanced, "Balanced lattice loops (loop method)");
  mom_cmd->add_option("--p-list", mom_plist, "Ascending p values (pnorm method)");
  mom_cmd->add_option("--budget", mom_budget, "Work budget for exact enumerations");
  mom_cmd->add_flag("--coeff-table", mom_coeffs, "Emit the C_{p,k} table as CSV up to --p");
  mom_cmd->add_option("--out", mom_out, "Write output to a file");
  mom_cmd->add_flag("--selftest", mom_selftest, "Run the module example checks");

  // ---- verify-fixtures ---------------------------------------------------
  auto* fix_cmd = app.add_subcommand("verify-fixtures", "Certify the named Hadamard matrices");
  double fix_tol = 1e-9;
  std::string fix_out;
  bool fix_selftest = false;
  fix_cmd->add_option("--tol", fix_tol, "Hadamard/orthogonality tolerance");
  fix_cmd->add_option("--out", fix_out, "Write output to a file");
  fix_cmd->add_flag("--selftest", fix_selftest, "Run the module example checks");

  // ---- conjecture-check --------------------------------------------------
  auto* conj_cmd = app.add_subcommand("conjecture-check", "Evidence for the a=c and parity conjectures");
  int conj_n = 8, conj_parity_n = 4;
  OptimizerConfig conj_cfg;
  std::string conj_out;
  bool conj_selftest = false;
  conj_cmd->add_option("--n", conj_n, "N for the a=c restriction comparison (multiple of 4)");
  conj_cmd->add_option("--parity-n", conj_parity_n, "N for the parity check over critical points");
  conj_cmd->add_option("--starts", conj_cfg.starts, "Starts per search");
  conj_cmd->add_option("--seed", conj_cfg.seed, "RNG seed");
  conj_cmd->add_option("--threads", conj_cfg.threads, "Worker threads");
  conj_cmd->add_option("--out", conj_out, "Write output to a file");
  conj_cmd->add_flag("--selftest", conj_selftest, "Run the module example checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or the help text
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (phi_cmd->parsed()) {
      if (phi_selftest) return run_selftest("phi-eval") == 0 ? kExitOk : kExitInvalid;
      if (phi_angles.empty() && phi_angles_file.empty())
        throw std::invalid_argument("phi-eval: --angles or --angles-file is required");
      const PhaseVector q = [&] {
        if (phi_angles_file.empty()) return PhaseVector(parse_angle_list(phi_angles));
        std::ifstream f(phi_angles_file);
        if (!f) throw std::invalid_argument("cannot open '" + phi_angles_file + "'");
        Json j;
        try {
          f >> j;
          return phase_vector_from_json(j);
        } catch (const Json::exception& e) {
          throw std::invalid_argument("malformed vector file '" + phi_angles_file +
                                      "': " + e.what());
        }
      }();
      if (!phi_report) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", phi_fast(q));
        write_artifact(phi_out, buf);
        return kExitOk;
      }
      const Json config = {{"angles", q.angles}};
      Json result = {{"phi", to_json(phi_decompose(q))},
                     {"psi", to_json(psi_report(q))},
                     {"point", to_json(q)}};
      write_artifact(phi_out, wrap(config, std::move(result)).dump(2));
      return kExitOk;
    }

    if (min_cmd->parsed()) {
      if (min_selftest) return run_selftest("minimize") == 0 ? kExitOk : kExitInvalid;
      const ParamKind kind = kind_from_flags(min_full, min_sym, min_ac);
      const auto res = minimize_phi(min_n, kind, min_cfg);
      Json config = optimizer_config_json(min_cfg);
      config["n"] = min_n;
      config["kind"] = kind_name(kind);
      write_artifact(min_out, wrap(std::move(config), to_json(res)).dump(2));
      return kExitOk;
    }

    if (crit_cmd->parsed()) {
      if (crit_selftest) return run_selftest("critical-points") == 0 ? kExitOk : kExitInvalid;
      const ParamKind kind = crit_sym ? ParamKind::real_symmetric : ParamKind::full_torus;
      const auto cps = find_critical_points(crit_n, kind, crit_cfg, crit_residual);
      Json arr = Json::array();
      int parity_pass = 0;
      for (const auto& cp : cps) {
        Json j = to_json(cp);
        const bool parity = parity_conjecture_check(cp);
        parity_pass += parity ? 1 : 0;
        j["parity_holds"] = parity;
        arr.push_back(std::move(j));
      }
      Json config = optimizer_config_json(crit_cfg);
      config["n"] = crit_n;
      config["kind"] = kind_name(kind);
      config["residual_tol"] = crit_residual;
      Json result = {{"count", cps.size()},
                     {"parity_pass", parity_pass},
                     {"points", std::move(arr)}};
      write_artifact(crit_out, wrap(std::move(config), std::move(result)).dump(2));
      return kExitOk;
    }

    if (gap_cmd->parsed()) {
      if (gap_selftest) return run_selftest("gap-scan") == 0 ? kExitOk : kExitInvalid;
      const auto rows = gap_scan(gap_nmax, gap_cfg);
      Json config = optimizer_config_json(gap_cfg);
      config["n_max"] = gap_nmax;
      if (gap_format == "csv") {
        write_artifact(gap_out, csv_gap_rows(rows, config.dump()));
      } else {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        write_artifact(gap_out, wrap(std::move(config), std::move(arr)).dump(2));
      }
      return kExitOk;
    }

    if (but_cmd->parsed()) {
      if (but_selftest) return run_selftest("butson-enumerate") == 0 ? kExitOk : kExitInvalid;
      const auto found = enumerate_circulant_butson(but_n, but_l, but_budget);
      Json config = {{"n", but_n}, {"l", but_l}, {"budget", but_budget}};
      Json rows = Json::array();
      for (const auto& r : found.rows) rows.push_back(to_json(r));
      Json result = {{"completed", found.completed},
                     {"required_budget", found.required_budget},
                     {"exists", found.completed ? Json(!found.rows.empty()) : Json()},
                     {"rows", std::move(rows)}};
      write_artifact(but_out, wrap(std::move(config), std::move(result)).dump(2));
      return found.completed ? kExitOk : kExitInconclusive;
    }

    if (tab_cmd->parsed()) {
      if (tab_selftest) return run_selftest("obstruction-table") == 0 ? kExitOk : kExitInvalid;
      const auto [n_lo, n_hi] = parse_range(tab_n);
      const auto [l_lo, l_hi] = parse_range(tab_l);
      const auto table = obstruction_table(n_lo, n_hi, l_lo, l_hi, tab_budget);
      Json config = {{"n", tab_n}, {"l", tab_l}, {"budget", tab_budget}};
      if (tab_format == "csv") {
        write_artifact(tab_out, csv_obstruction_table(table, config.dump()));
      } else {
        Json arr = Json::array();
        for (const auto& r : table) arr.push_back(to_json(r));
        write_artifact(tab_out, wrap(std::move(config), std::move(arr)).dump(2));
      }
      return kExitOk;
    }

    if (mom_cmd->parsed()) {
      if (mom_selftest) return run_selftest("moments") == 0 ? kExitOk : kExitInvalid;
      Json config = {{"n", mom_n},       {"p", mom_p},         {"method", mom_method},
                     {"samples", mom_samples}, {"seed", mom_seed}, {"ensemble", mom_ensemble},
                     {"balanced", mom_balanced}, {"budget", mom_budget}};
      if (mom_coeffs) {
        write_artifact(mom_out, csv_half_moment_coefficients(mom_p, config.dump()));
        return kExitOk;
      }
      Json result;
      if (mom_method == "enveloping") {
        result = {{"N", mom_n}, {"p", mom_p}, {"method", "closed_form"},
                  {"value", enveloping_moment_exact(mom_n, mom_p).str()}};
      } else if (mom_method == "half") {
        result = {{"N", mom_n}, {"p", mom_p}, {"method", "closed_form"},
                  {"value", half_moment_exact(mom_n, mom_p).str()}};
      } else if (mom_method == "brute") {
        result = {{"N", mom_n}, {"p", mom_p}, {"method", "brute_force"},
                  {"value", phi_moment_bruteforce(mom_n, mom_p, mom_budget).str()}};
      } else if (mom_method == "loop") {
        result = {{"N", mom_n}, {"p", mom_p}, {"method", "lattice_loop"},
                  {"balanced", mom_balanced},
                  {"value", lattice_loop_oracle(mom_n, mom_p, mom_balanced, mom_budget).str()}};
      } else if (mom_method == "mc") {
        const Ensemble ens = mom_ensemble == "real" ? Ensemble::real_symmetric
                                                    : Ensemble::complex_torus;
        result = to_json(phi_moment_montecarlo(mom_n, mom_p, mom_samples, mom_seed, ens));
      } else if (mom_method == "pnorm") {
        std::vector<int> ps;
        for (double v : parse_angle_list(mom_plist)) ps.push_back(static_cast<int>(v));
        result = to_json(pnorm_min_estimate(mom_n, ps, mom_samples, mom_seed));
      } else {
        throw std::invalid_argument("moments: unknown method '" + mom_method + "'");
      }
      write_artifact(mom_out, wrap(std::move(config), std::move(result)).dump(2));
      return kExitOk;
    }

    if (fix_cmd->parsed()) {
      if (fix_selftest) return run_selftest("verify-fixtures") == 0 ? kExitOk : kExitInvalid;
      const Tolerance tol{fix_tol};
      Json rows = Json::array();
      bool all_ok = true;
      for (const char* name : {"K4", "F2tilde", "BF6", "Ftilde(3)", "Ftilde(5)", "Ftilde(7)"}) {
        const auto h = fixture(name);
        const double root_n = std::sqrt(static_cast<double>(h.n));
        const bool hadamard = is_complex_hadamard(h, 1.0, tol);
        const double det = circulant_abs_det(h);
        const double det_target = std::pow(static_cast<double>(h.n), h.n / 2.0);
        CirculantMatrix unitary = h;
        for (auto& x : unitary.first_row) x /= root_n;
        const auto q = eigenvalues_of_circulant(unitary);
        const auto rep = phi_decompose(q);
        const auto psi = psi_report(q);
        double part_err = 0.0, psi_err = 0.0;
        for (const auto& part : rep.parts)
          part_err = std::max(part_err, std::abs(part - Complex(h.n, 0.0)));
        for (const auto& part : psi.parts)
          psi_err = std::max(psi_err, std::abs(part - Complex(1.0, 0.0)));
        const bool root_ok = verify_cyclic_root(cyclic_root_from_row(h.first_row), tol);
        const bool ok = hadamard && root_ok &&
                        std::abs(det - det_target) <= 1e-6 * det_target &&
                        std::abs(rep.total - h.n * h.n) <= 1e-8 &&
                        part_err <= 1e-7 && std::abs(psi.total - h.n) <= 1e-7 &&
                        psi_err <= 1e-7;
        all_ok = all_ok && ok;
        rows.push_back({{"name", name},
                        {"hadamard", hadamard},
                        {"cyclic_root", root_ok},
                        {"det_modulus", det},
                        {"phi", rep.total},
                        {"phi_part_error", part_err},
                        {"psi", psi.total},
                        {"psi_part_error", psi_err},
                        {"pass", ok}});
        std::fprintf(stderr, "%-10s %s\n", name, ok ? "pass" : "FAIL");
      }
      write_artifact(fix_out, wrap({{"tol", fix_tol}}, {{"fixtures", std::move(rows)},
                                                        {"all_pass", all_ok}}).dump(2));
      return all_ok ? kExitOk : kExitInvalid;
    }

    if (conj_cmd->parsed()) {
      if (conj_selftest) return run_selftest("conjecture-check") == 0 ? kExitOk : kExitInvalid;
      const auto cmp = ac_restriction_compare(conj_n, conj_cfg);
      const auto cps = find_critical_points(conj_parity_n, ParamKind::full_torus, conj_cfg, 1e-8);
      Json parity = Json::array();
      int pass = 0;
      for (const auto& cp : cps) {
        const bool ok = parity_conjecture_check(cp);
        pass += ok ? 1 : 0;
        parity.push_back({{"phi", cp.phi_value}, {"residual", cp.residual}, {"parity_holds", ok}});
      }
      Json config = optimizer_config_json(conj_cfg);
      config["n"] = conj_n;
      config["parity_n"] = conj_parity_n;
      Json result = {{"min_real_symmetric", cmp.min_real_symmetric},
                     {"min_ac_restricted", cmp.min_ac_restricted},
                     {"minima_agree",
                      std::abs(cmp.min_real_symmetric - cmp.min_ac_restricted) < 1e-5},
                     {"critical_points_checked", cps.size()},
                     {"parity_pass", pass},
                     {"parity_table", std::move(parity)}};
      write_artifact(conj_out, wrap(std::move(config), std::move(result)).dump(2));
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "inconclusive: %s (required %lld)\n", e.what(), e.required);
    return kExitInconclusive;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}
