#pragma once

// Command-line front end. run_cli takes the arguments after the program
// name and writes to the given streams, so tests can drive it in-process.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dragon/dragon.hpp"

namespace dragon::cli {

enum ExitCode : int {
  kOk = 0,
  kNotCertified = 1,
  kUsage = 2,
  kSelfIntersective = 3,
  kInconsistent = 4,
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sets the default tolerance for the lifetime of the guard.
class ToleranceGuard {
 public:
  explicit ToleranceGuard(std::optional<double> tol) : saved_(default_tolerance()) {
    if (tol) set_default_tolerance(*tol);
  }
  ~ToleranceGuard() { set_default_tolerance(saved_); }
  ToleranceGuard(const ToleranceGuard&) = delete;
  ToleranceGuard& operator=(const ToleranceGuard&) = delete;

 private:
  double saved_;
};

inline std::optional<double> tolerance_from_env() {
  const char* raw = std::getenv("DRAGON_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw UsageError(std::string("DRAGON_TOL must be a positive number, got '") + raw + "'");
  return v;
}

struct AngleFlags {
  std::optional<double> theta_deg;
  std::optional<double> xi;

  void add_to(CLI::App* app) {
    auto* t = app->add_option("--theta-deg", theta_deg, "Unfolding angle theta in degrees");
    auto* x = app->add_option("--xi", xi, "Fold parameter xi in radians");
    t->excludes(x);
  }

  double resolve() const {
    if (theta_deg) return xi_from_theta_deg(*theta_deg);
    if (xi) return *xi;
    throw UsageError("one of --theta-deg or --xi is required");
  }
};

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw UsageError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------

struct ScanRow {
  double theta_deg = 0.0;
  double xi = 0.0;
  std::optional<int> N;
  std::string verdict;
  std::optional<int> first_bad;
  std::optional<double> margin;
};

/// One grid point: the first bad order up to k_max and, when xi is in the
/// certifiable range, the certificate verdict. The margin is the smaller of
/// the two directly evaluated half-plane margins.
inline ScanRow scan_row(double theta_deg, double xi, int k_max, int depth) {
  ScanRow row;
  row.theta_deg = theta_deg;
  row.xi = xi;
  const ModelParams p = make_params(xi);
  if (auto bad = first_bad_order(p, k_max)) row.first_bad = bad->k;
  if (xi > 0.0 && xi < std::numbers::pi / 4) {
    CertConfig cfg;
    cfg.depth = depth;
    const CertReport r = certify(xi, cfg);
    row.N = r.N;
    row.verdict = to_string(r.overall);
    row.margin = std::min(r.hidarigawa.cond_i.margin, r.hidarigawa.cond_ii.margin);
  } else {
    row.verdict = "out_of_range";
  }
  return row;
}

/// Rows computed by `threads` workers; the result order is the input order.
inline std::vector<ScanRow> run_scan(const std::vector<std::pair<double, double>>& grid, int k_max,
                                     int depth, unsigned threads) {
  std::vector<ScanRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = scan_row(grid[i].first, grid[i].second, k_max, depth);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "theta_deg,xi,N,verdict,first_bad_order,margin\n";
  for (const auto& r : rows) {
    os << fmt("%.10g", r.theta_deg) << ',' << fmt("%.12g", r.xi) << ','
       << (r.N ? std::to_string(*r.N) : "") << ',' << r.verdict << ','
       << (r.first_bad ? std::to_string(*r.first_bad) : "none") << ','
       << (r.margin ? fmt("%.6e", *r.margin) : "") << '\n';
  }
  // Boundaries read off the grid: the largest bad angle, and the smallest
  // angles from which every row is clean or certified.
  std::optional<double> last_bad, clean_from, certified_from;
  for (const auto& r : rows)
    if (r.first_bad) last_bad = r.theta_deg;
  for (auto it = rows.rbegin(); it != rows.rend() && !it->first_bad; ++it) clean_from = it->theta_deg;
  for (auto it = rows.rbegin(); it != rows.rend() && it->verdict == "certified_simple_arc"; ++it)
    certified_from = it->theta_deg;
  auto opt = [](const std::optional<double>& v) { return v ? fmt("%.10g", *v) : std::string("none"); };
  os << "# summary,rows=" << rows.size() << ",last_bad_theta_deg=" << opt(last_bad)
     << ",clean_from_theta_deg=" << opt(clean_from) << ",certified_from_theta_deg=" << opt(certified_from)
     << '\n';
}

inline constexpr std::size_t kMaxScanRows = 100000;

/// Grid lo, lo + step, ... up to hi (inclusive within a rounding band).
inline std::vector<double> grid_values(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("step must be positive");
  if (!(lo <= hi)) throw UsageError("grid minimum exceeds maximum");
  const double count = std::floor((hi - lo) / step + 1e-9) + 1;
  if (count > static_cast<double>(kMaxScanRows))
    throw UsageError("grid has more than " + std::to_string(kMaxScanRows) + " rows");
  std::vector<double> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) out.push_back(lo + i * step);
  return out;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dragon curves with a variable unfolding angle", "dragon"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  AngleFlags gen_angle, check_angle, cert_angle, render_angle;

  auto* gen = app.add_subcommand("generate", "Write the vertices of D_k");
  gen_angle.add_to(gen);
  int gen_order = 0;
  std::string gen_out, gen_format = "json";
  gen->add_option("--order,-k", gen_order, "Order k")->required();
  gen->add_option("--out,-o", gen_out, "Output file (default: standard output)");
  gen->add_option("--format", gen_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* chk = app.add_subcommand("check", "Look for self-intersections of D_k");
  check_angle.add_to(chk);
  int chk_order = 0;
  std::string chk_engine = "sweep";
  chk->add_option("--order,-k", chk_order, "Order k")->required();
  chk->add_option("--engine", chk_engine, "brute, sweep or both")
      ->check(CLI::IsMember({"brute", "sweep", "both"}));

  auto* cert = app.add_subcommand("certify", "Run the open set condition certificate");
  cert_angle.add_to(cert);
  CertConfig cert_cfg;
  cert->add_option("--depth", cert_cfg.depth, "Truncation depth")->check(CLI::Range(2, 200));
  cert->add_option("--samples", cert_cfg.prop2_samples, "Extra boundary samples per edge")
      ->check(CLI::Range(0, 100));
  cert->add_option("--endpoint-eps", cert_cfg.endpoint_eps, "Exclusion radius around alpha")
      ->check(CLI::PositiveNumber);
  cert->add_flag("--cone-search", cert_cfg.cone_search, "Also search for the least cone indices");

  auto* cons = app.add_subcommand("constants", "Print x0, xi0 and theta0");
  bool cons_json = false;
  int cons_digits = 12;
  cons->add_flag("--json", cons_json, "Machine-readable output");
  cons->add_option("--digits", cons_digits, "Significant digits")->check(CLI::Range(1, 17));

  auto* scan = app.add_subcommand("scan", "Scan angles for self-intersection and certification");
  std::optional<double> th_min, th_max, th_step, xi_min, xi_max, xi_step;
  int scan_k = 12, scan_depth = 40;
  unsigned scan_threads = 0;
  std::string scan_out;
  auto* o1 = scan->add_option("--theta-min", th_min, "Smallest theta in degrees");
  auto* o2 = scan->add_option("--theta-max", th_max, "Largest theta in degrees");
  auto* o3 = scan->add_option("--step", th_step, "Theta step in degrees");
  auto* o4 = scan->add_option("--xi-min", xi_min, "Smallest xi");
  auto* o5 = scan->add_option("--xi-max", xi_max, "Largest xi");
  auto* o6 = scan->add_option("--xi-step", xi_step, "Xi step");
  for (auto* a : {o1, o2, o3})
    for (auto* b : {o4, o5, o6}) a->excludes(b);
  scan->add_option("--k-max", scan_k, "Largest order searched")->check(CLI::Range(1, kDefaultMaxOrder));
  scan->add_option("--depth", scan_depth, "Certificate truncation depth")->check(CLI::Range(2, 200));
  scan->add_option("--threads", scan_threads, "Worker threads (default: all cores)");
  scan->add_option("--out,-o", scan_out, "Output file (default: standard output)");

  auto* rend = app.add_subcommand("render", "Draw curves and regions as SVG");
  render_angle.add_to(rend);
  std::string rend_spec, rend_out;
  rend->add_option("--spec", rend_spec, "Render spec (JSON file)")->required();
  rend->add_option("--out,-o", rend_out, "Output file (default: standard output)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    ToleranceGuard guard(tolerance_from_env());

    if (gen->parsed()) {
      const Polyline c = curve(make_params(gen_angle.resolve()), gen_order);
      std::ostringstream data;
      if (gen_format == "csv")
        write_csv(data, c);
      else
        data << document(c).dump(1) << '\n';
      const double len = std::abs(c.vertices[1] - c.vertices[0]);
      std::ostringstream summary;
      summary << "segments: " << c.segment_count() << "\nsegment_length: " << fmt("%.17g", len) << '\n';
      if (gen_out.empty()) {
        out << data.str();
        err << summary.str();
      } else {
        write_text(gen_out, data.str());
        out << summary.str();
      }
      return kOk;
    }

    if (chk->parsed()) {
      const Polyline c = curve(make_params(check_angle.resolve()), chk_order);
      IntersectionReport r;
      if (chk_engine == "both") {
        r = sweep(c);
        const IntersectionReport b = brute_force(c);
        if (!(b.events == r.events)) {
          err << "engine disagreement at order " << c.order << ": brute " << b.events.size()
              << " events, sweep " << r.events.size() << " events\n";
          err << json{{"brute", to_json_value(b)}, {"sweep", to_json_value(r)}}.dump(1) << '\n';
          return kInconsistent;
        }
      } else {
        r = chk_engine == "brute" ? brute_force(c) : sweep(c);
      }
      json doc = document(r);
      doc["engine"] = chk_engine;
      out << doc.dump(1) << '\n';
      return r.self_intersective ? kSelfIntersective : kOk;
    }

    if (cert->parsed()) {
      cert_cfg.tol = default_tolerance();
      const CertReport r = certify(cert_angle.resolve(), cert_cfg);
      out << document(r).dump(1) << '\n';
      return r.certified() ? kOk : kNotCertified;
    }

    if (cons->parsed()) {
      const CriticalConstants c = solve_constants();
      if (cons_json) {
        out << document(c).dump(1) << '\n';
      } else {
        const std::string g = "%#." + std::to_string(cons_digits) + "g";
        out << "x0          " << fmt(g.c_str(), c.x0) << '\n'
            << "xi0         " << fmt(g.c_str(), c.xi0) << '\n'
            << "theta0_deg  " << fmt(g.c_str(), c.theta0_deg) << '\n'
            << "theta0_rad  " << fmt(g.c_str(), c.theta0_rad) << '\n'
            << "residual    " << fmt("%.3g", c.residual) << '\n';
      }
      return kOk;
    }

    if (scan->parsed()) {
      std::vector<std::pair<double, double>> grid;
      if (th_min || th_max || th_step) {
        if (!(th_min && th_max && th_step)) throw UsageError("--theta-min, --theta-max and --step go together");
        for (double t : grid_values(*th_min, *th_max, *th_step)) grid.emplace_back(t, xi_from_theta_deg(t));
      } else if (xi_min || xi_max || xi_step) {
        if (!(xi_min && xi_max && xi_step)) throw UsageError("--xi-min, --xi-max and --xi-step go together");
        for (double x : grid_values(*xi_min, *xi_max, *xi_step)) grid.emplace_back(theta_deg_from_xi(x), x);
      } else {
        throw UsageError("scan needs a theta or xi grid");
      }
      for (const auto& [t, x] : grid) make_params(x);
      std::sort(grid.begin(), grid.end());
      const unsigned threads = scan_threads ? scan_threads : std::max(1u, std::thread::hardware_concurrency());
      const auto rows = run_scan(grid, scan_k, scan_depth, threads);
      std::ostringstream csv;
      write_scan_csv(csv, rows);
      if (scan_out.empty())
        out << csv.str();
      else
        write_text(scan_out, csv.str());
      return kOk;
    }

    if (rend->parsed()) {
      std::ifstream f(rend_spec);
      if (!f) throw UsageError("cannot read render spec '" + rend_spec + "'");
      nlohmann::json j = nlohmann::json::parse(f);
      if (render_angle.theta_deg || render_angle.xi) {
        j.erase("theta_deg");
        j["xi"] = render_angle.resolve();
      }
      const std::string svg = render_svg(parse_render_spec(j));
      if (rend_out.empty())
        out << svg;
      else
        write_text(rend_out, svg);
      return kOk;
    }
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInconsistent;
  }
  return kUsage;
}

}  // namespace dragon::cli
