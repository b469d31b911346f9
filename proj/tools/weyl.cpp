// weyl: command-line front end for Weyl-sum experiments.
//
// Subcommands: sum, completed, moment, vinogradov, boxes, stability,
// dimbound, table. Single results print as JSON, series as CSV; --out DIR
// additionally persists a seed-stamped RunRecord with a content-addressed
// filename. Exit codes: 0 ok, 2 invalid arguments, 3 resource cap exceeded.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weylsums/completion.hpp"
#include "weylsums/core.hpp"
#include "weylsums/covering.hpp"
#include "weylsums/dimension.hpp"
#include "weylsums/meanvalue.hpp"

using json = nlohmann::ordered_json;
using namespace weylsums;

namespace {

struct GlobalOpts {
  int threads = 0;
  std::string format = "auto";  // json for single results, csv for series
  std::string out_dir;
};

int g_exit_code = 0;

std::string num17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

u64 fnv1a64(std::string_view s) {
  u64 h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// coordinates: comma-separated decimals or fractions p/q (reduced mod 1 in
// integer arithmetic before the division)
std::vector<double> parse_point(const std::string& text, int d) {
  std::vector<double> coords;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw std::invalid_argument("empty coordinate in '" + text + "'");
    auto slash = token.find('/');
    if (slash != std::string::npos) {
      long long p = std::stoll(token.substr(0, slash));
      long long q = std::stoll(token.substr(slash + 1));
      if (q <= 0) throw std::invalid_argument("fraction denominator must be positive");
      long long r = ((p % q) + q) % q;
      coords.push_back(static_cast<double>(r) / static_cast<double>(q));
    } else {
      coords.push_back(std::stod(token));
    }
  }
  if (static_cast<int>(coords.size()) != d)
    throw std::invalid_argument("expected " + std::to_string(d) + " coordinates, got " +
                                std::to_string(coords.size()));
  return coords;
}

u64 ensure_seed(std::optional<u64> seed) {
  if (seed) return *seed;
  std::random_device rd;
  u64 s = (static_cast<u64>(rd()) << 32) ^ rd();
  std::cerr << "generated seed: " << s << "\n";
  return s;
}

json u128_json(u128 v) {
  if (v <= static_cast<u128>(9007199254740992ULL)) return static_cast<u64>(v);
  return u128_to_string(v);  // too wide for a double-faithful JSON number
}

void emit(const json& outputs, const std::string& csv, const GlobalOpts& g,
          const std::string& default_format) {
  std::string fmt = g.format == "auto" ? default_format : g.format;
  if (fmt == "csv" && !csv.empty())
    std::cout << csv;
  else
    std::cout << outputs.dump(2) << "\n";
}

void write_run_record(const GlobalOpts& g, const std::string& command, const json& params,
                      std::optional<u64> seed, const json& outputs, const std::string& started,
                      double elapsed_ms) {
  if (g.out_dir.empty()) return;
  json addressed{{"command", command}, {"params", params}, {"outputs", outputs}};
  addressed["seed"] = seed ? json(*seed) : json(nullptr);
  json record = addressed;
  record["started"] = started;
  record["elapsed_ms"] = elapsed_ms;
  record["version"] = kVersion;
  std::filesystem::create_directories(g.out_dir);
  char name[32];
  std::snprintf(name, sizeof name, "run-%016llx.json",
                static_cast<unsigned long long>(fnv1a64(addressed.dump())));
  std::filesystem::path path = std::filesystem::path(g.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write run record to " + path.string());
  out << record.dump(2) << "\n";
  std::cerr << "run record: " << path.string() << "\n";
}

// wraps a command body with timing + emission + record persistence
template <class Body>
void run_command(const GlobalOpts& g, const std::string& command, const json& params,
                 std::optional<u64> seed, const std::string& default_format, Body&& body) {
  std::string started = iso8601_now();
  auto t0 = std::chrono::steady_clock::now();
  auto [outputs, csv] = body();
  double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(outputs, csv, g, default_format);
  write_run_record(g, command, params, seed, outputs, started, elapsed_ms);
}

const char* mode_name(CompletionMode m) {
  return m == CompletionMode::Literal ? "literal" : "symmetrized";
}

CompletionMode parse_mode(const std::string& s) {
  if (s == "literal") return CompletionMode::Literal;
  if (s == "symmetrized") return CompletionMode::Symmetrized;
  throw std::invalid_argument("mode must be literal or symmetrized");
}

void add_sum(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("sum", "evaluate the Weyl sum S_d(x; N)");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto N = std::make_shared<i64>(100);
  auto x = std::make_shared<std::string>();
  auto direct = std::make_shared<bool>(false);
  cmd->add_option("-d,--degree", *d, "polynomial degree")->required();
  cmd->add_option("-N,--length", *N, "sum length")->required();
  cmd->add_option("-x,--point", *x, "phase point, e.g. 0.5,0.25 or 1/3,2/7")->required();
  cmd->add_flag("--direct", *direct, "term-by-term evaluation (default: fast recurrence)");
  cmd->callback([&g, d, N, x, direct] {
    PhasePoint point(parse_point(*x, *d));
    json params{{"d", *d}, {"N", *N}, {"x", point.coords()}, {"path", *direct ? "direct" : "fast"}};
    run_command(g, "sum", params, std::nullopt, "json", [&] {
      cplx s = *direct ? weyl_sum_direct(point, *N) : weyl_sum_fast(point, *N);
      json out{{"command", "sum"},
               {"d", *d},
               {"N", *N},
               {"x", point.coords()},
               {"path", *direct ? "direct" : "fast"},
               {"re", s.real()},
               {"im", s.imag()},
               {"abs", std::abs(s)}};
      return std::pair<json, std::string>(out, "");
    });
  });
}

void add_completed(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("completed", "evaluate the completed sum W_d(x; N)");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto N = std::make_shared<i64>(64);
  auto x = std::make_shared<std::string>();
  auto mode = std::make_shared<std::string>("symmetrized");
  auto spectrum = std::make_shared<bool>(false);
  cmd->add_option("-d,--degree", *d)->required();
  cmd->add_option("-N,--length", *N)->required();
  cmd->add_option("-x,--point", *x)->required();
  cmd->add_option("--mode", *mode, "literal | symmetrized")->check(CLI::IsMember({"literal", "symmetrized"}));
  cmd->add_flag("--spectrum", *spectrum, "include the per-h spectrum norms");
  cmd->callback([&g, d, N, x, mode, spectrum] {
    PhasePoint point(parse_point(*x, *d));
    CompletionMode m = parse_mode(*mode);
    json params{{"d", *d}, {"N", *N}, {"x", point.coords()}, {"mode", *mode}, {"spectrum", *spectrum}};
    run_command(g, "completed", params, std::nullopt, "json", [&] {
      auto rep = completed_sum(point, *N, m);
      json out{{"command", "completed"}, {"d", *d},          {"N", *N},
               {"x", point.coords()},    {"mode", *mode},    {"value", rep.value}};
      if (*spectrum) out["spectrum_norms"] = rep.spectrum_norms;
      return std::pair<json, std::string>(out, "");
    });
  });
}

void add_moment(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("moment", "Monte Carlo moment of |S| (or W with --completed)");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto N = std::make_shared<i64>(0);
  auto n_list = std::make_shared<std::vector<i64>>();
  auto s = std::make_shared<int>(0);
  auto samples = std::make_shared<i64>(100000);
  auto seed_opt = std::make_shared<std::optional<u64>>();
  auto completed = std::make_shared<bool>(false);
  auto mode = std::make_shared<std::string>("symmetrized");
  cmd->add_option("-d,--degree", *d)->required();
  auto* n_opt = cmd->add_option("-N,--length", *N, "single sum length");
  auto* nl_opt = cmd->add_option("--n-list", *n_list, "series of sum lengths")->delimiter(',');
  n_opt->excludes(nl_opt);
  cmd->add_option("-s,--half-order", *s, "moment half-order (default s(d) = d(d+1)/2)");
  cmd->add_option("--samples", *samples);
  cmd->add_option("--seed", *seed_opt);
  cmd->add_flag("--completed", *completed, "moment of the completed sum W instead of S");
  cmd->add_option("--mode", *mode)->check(CLI::IsMember({"literal", "symmetrized"}));
  cmd->callback([&g, d, N, n_list, s, samples, seed_opt, completed, mode] {
    if (*N == 0 && n_list->empty()) throw std::invalid_argument("need -N or --n-list");
    int order = *s > 0 ? *s : static_cast<int>(s_of(*d));
    if (*completed && order != static_cast<int>(s_of(*d)))
      throw std::invalid_argument("the completed moment is pinned to s(d) = d(d+1)/2");
    u64 seed = ensure_seed(*seed_opt);
    McOptions opt;
    opt.threads = g.threads;
    CompletionMode m = parse_mode(*mode);
    std::vector<i64> lengths = n_list->empty() ? std::vector<i64>{*N} : *n_list;

    json params{{"d", *d},       {"s", order},           {"N", lengths},
                {"samples", *samples}, {"completed", *completed}, {"mode", *mode}};
    run_command(g, "moment", params, seed, n_list->empty() ? "json" : "csv", [&] {
      json series = json::array();
      std::string csv = "N,mean,stderr\n";
      std::vector<std::pair<double, double>> pts;
      for (i64 len : lengths) {
        MomentEstimate est = *completed
                                 ? completed_moment(*d, len, *samples, seed, m, opt)
                                 : mc_moment(*d, len, order, std::nullopt, *samples, seed, opt);
        series.push_back(json{{"N", len}, {"mean", est.mean}, {"stderr", est.std_error}});
        csv += std::to_string(len) + "," + num17(est.mean) + "," + num17(est.std_error) + "\n";
        pts.emplace_back(static_cast<double>(len), est.mean);
      }
      json out{{"command", "moment"}, {"d", *d},           {"s", order},
               {"samples", *samples}, {"seed", seed},      {"completed", *completed},
               {"mode", *mode}};
      if (lengths.size() == 1) {
        out["N"] = lengths[0];
        out["mean"] = series[0]["mean"];
        out["stderr"] = series[0]["stderr"];
        return std::pair<json, std::string>(out, "");
      }
      out["series"] = series;
      if (pts.size() >= 3) {
        auto fit = moment_exponent_fit(pts);
        out["slope"] = fit.slope;
        out["intercept"] = fit.intercept;
        out["residual"] = fit.residual;
      }
      return std::pair<json, std::string>(out, csv);
    });
  });
}

void add_vinogradov(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("vinogradov", "exact power-sum system count");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto s = std::make_shared<int>(3);
  auto N = std::make_shared<i64>(2);
  auto cap = std::make_shared<double>(kDefaultTupleCap);
  cmd->add_option("-d,--degree", *d)->required();
  cmd->add_option("-s,--half-order", *s)->required();
  cmd->add_option("-N,--length", *N)->required();
  cmd->add_option("--cap", *cap, "max naive tuple count N^(2s)");
  cmd->callback([&g, d, s, N, cap] {
    json params{{"d", *d}, {"s", *s}, {"N", *N}, {"cap", *cap}};
    run_command(g, "vinogradov", params, std::nullopt, "json", [&] {
      auto count = vinogradov_count(*d, *s, *N, *cap);
      json out{{"command", "vinogradov"}, {"d", *d}, {"s", *s}, {"N", *N}, {"J", count.J}};
      return std::pair<json, std::string>(out, "");
    });
  });
}

void add_boxes(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("boxes", "superlevel box counts over a dyadic schedule");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto alpha = std::make_shared<double>(0.7);
  auto eps = std::make_shared<double>(0.05);
  auto i_min = std::make_shared<int>(4);
  auto i_max = std::make_shared<int>(6);
  auto mode = std::make_shared<std::string>("literal");
  auto criterion = std::make_shared<std::string>("center_ge_half_alpha");
  auto cap = std::make_shared<u64>(kDefaultGridCap);
  cmd->add_option("-d,--degree", *d)->required();
  cmd->add_option("--alpha", *alpha)->required();
  cmd->add_option("--eps", *eps);
  cmd->add_option("--i-min", *i_min)->required();
  cmd->add_option("--i-max", *i_max)->required();
  cmd->add_option("--mode", *mode)->check(CLI::IsMember({"literal", "symmetrized"}));
  cmd->add_option("--criterion", *criterion)
      ->check(CLI::IsMember({"center_ge_alpha", "center_ge_half_alpha"}));
  cmd->add_option("--cap", *cap, "max boxes per grid");
  cmd->callback([&g, d, alpha, eps, i_min, i_max, mode, criterion, cap] {
    CompletionMode m = parse_mode(*mode);
    BoxCriterion crit = *criterion == "center_ge_alpha" ? BoxCriterion::CenterGeAlpha
                                                        : BoxCriterion::CenterGeHalfAlpha;
    json params{{"d", *d},     {"alpha", *alpha},   {"eps", *eps},
                {"i_min", *i_min}, {"i_max", *i_max},   {"mode", *mode},
                {"criterion", *criterion}, {"cap", *cap}};
    run_command(g, "boxes", params, std::nullopt, "csv", [&] {
      CoverOptions opt;
      opt.cap = *cap;
      opt.threads = g.threads;
      json rows = json::array();
      std::string csv = "i,N,U,counted_lower,counted_upper,bound_exponent,elapsed_ms\n";
      bool any_capped = false;
      for (int i = *i_min; i <= *i_max; ++i) {
        i64 N = i64(1) << i;
        auto bound = theoretical_box_bound(*d, N, *alpha, *eps);
        json row{{"i", i}, {"N", N}, {"U", u128_json(bound.U)}, {"bound_exponent", bound.exponent}};
        auto t0 = std::chrono::steady_clock::now();
        std::string lower_txt, upper_txt;
        if (bound.U <= static_cast<u128>(*cap)) {
          auto grid = count_superlevel_boxes(*d, N, *alpha, *eps, m, crit, opt);
          row["counted_lower"] = grid.counted_lower;
          row["counted_upper"] = grid.counted_upper;
          row["capped"] = false;
          lower_txt = std::to_string(grid.counted_lower);
          upper_txt = std::to_string(grid.counted_upper);
        } else {
          row["capped"] = true;
          any_capped = true;
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        row["elapsed_ms"] = ms;
        rows.push_back(row);
        csv += std::to_string(i) + "," + std::to_string(N) + "," + u128_to_string(bound.U) + "," +
               lower_txt + "," + upper_txt + "," + num17(bound.exponent) + "," + num17(ms) + "\n";
      }
      if (any_capped) g_exit_code = 3;
      json out{{"command", "boxes"}, {"d", *d},   {"alpha", *alpha},
               {"eps", *eps},        {"mode", *mode}, {"criterion", *criterion},
               {"rows", rows}};
      return std::pair<json, std::string>(out, csv);
    });
  });
}

void add_stability(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("stability", "probe the stability rectangle around a base point");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto N = std::make_shared<i64>(1024);
  auto x = std::make_shared<std::string>();
  auto alpha = std::make_shared<double>(0.8);
  auto eps = std::make_shared<double>(0.05);
  auto probes = std::make_shared<i64>(1000);
  auto seed_opt = std::make_shared<std::optional<u64>>();
  auto mode = std::make_shared<std::string>("symmetrized");
  cmd->add_option("-d,--degree", *d)->required();
  cmd->add_option("-N,--length", *N)->required();
  cmd->add_option("-x,--point", *x)->required();
  cmd->add_option("--alpha", *alpha)->required();
  cmd->add_option("--eps", *eps);
  cmd->add_option("--probes", *probes);
  cmd->add_option("--seed", *seed_opt);
  cmd->add_option("--mode", *mode)->check(CLI::IsMember({"literal", "symmetrized"}));
  cmd->callback([&g, d, N, x, alpha, eps, probes, seed_opt, mode] {
    PhasePoint point(parse_point(*x, *d));
    u64 seed = ensure_seed(*seed_opt);
    json params{{"d", *d},         {"N", *N},       {"x", point.coords()}, {"alpha", *alpha},
                {"eps", *eps},     {"probes", *probes}, {"mode", *mode}};
    run_command(g, "stability", params, seed, "json", [&] {
      auto rep = stability_check(point, *N, *alpha, *eps, *probes, seed,
                                 parse_mode(*mode), g.threads);
      json out{{"command", "stability"},
               {"d", *d},
               {"N", *N},
               {"x", point.coords()},
               {"alpha", *alpha},
               {"eps", *eps},
               {"mode", *mode},
               {"seed", seed},
               {"probes", rep.probes},
               {"violations", rep.violations},
               {"vacuous", rep.vacuous},
               {"w_base", rep.w_base},
               {"threshold", std::pow(static_cast<double>(*N), *alpha)}};
      return std::pair<json, std::string>(out, "");
    });
  });
}

void add_dimbound(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("dimbound", "dimension upper bound u(d, alpha)");
  cmd->fallthrough();
  auto d = std::make_shared<int>(2);
  auto alpha = std::make_shared<double>(0.75);
  cmd->add_option("-d,--degree", *d)->required();
  cmd->add_option("--alpha", *alpha)->required();
  cmd->callback([&g, d, alpha] {
    json params{{"d", *d}, {"alpha", *alpha}};
    run_command(g, "dimbound", params, std::nullopt, "json", [&] {
      auto rep = dim_upper_bound(*d, *alpha);
      json out{{"command", "dimbound"},
               {"d", *d},
               {"alpha", *alpha},
               {"u", rep.u},
               {"argmin_k", rep.argmin_k},
               {"per_k", rep.per_k},
               {"bound_k0", rep.bound_k0},
               {"bound_kd1", rep.bound_kd1}};
      return std::pair<json, std::string>(out, "");
    });
  });
}

void add_table(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand("table", "u(d, alpha) table over a parameter grid");
  cmd->fallthrough();
  auto d_min = std::make_shared<int>(2);
  auto d_max = std::make_shared<int>(2);
  auto a_min = std::make_shared<double>(0.55);
  auto a_max = std::make_shared<double>(0.95);
  auto a_step = std::make_shared<double>(0.05);
  cmd->add_option("--d-min", *d_min);
  cmd->add_option("--d-max", *d_max);
  cmd->add_option("--alpha-min", *a_min);
  cmd->add_option("--alpha-max", *a_max);
  cmd->add_option("--alpha-step", *a_step);
  cmd->callback([&g, d_min, d_max, a_min, a_max, a_step] {
    if (*d_min > *d_max) throw std::invalid_argument("d-min must be <= d-max");
    if (!(*a_step > 0)) throw std::invalid_argument("alpha-step must be positive");
    json params{{"d_min", *d_min}, {"d_max", *d_max}, {"alpha_min", *a_min},
                {"alpha_max", *a_max}, {"alpha_step", *a_step}};
    run_command(g, "table", params, std::nullopt, "csv", [&] {
      json rows = json::array();
      std::string csv = "d,alpha,k_min,u,bound_k0,bound_kd1,c1,c2\n";
      int steps = static_cast<int>(std::floor((*a_max - *a_min) / *a_step + 1e-9));
      for (int d = *d_min; d <= *d_max; ++d) {
        auto cs = asymptotic_constants(d);
        for (int i = 0; i <= steps; ++i) {
          double alpha = *a_min + i * *a_step;
          auto rep = dim_upper_bound(d, alpha);
          rows.push_back(json{{"d", d},
                              {"alpha", alpha},
                              {"k_min", rep.argmin_k},
                              {"u", rep.u},
                              {"bound_k0", rep.bound_k0},
                              {"bound_kd1", rep.bound_kd1},
                              {"c1", cs.c1},
                              {"c2", cs.c2}});
          csv += std::to_string(d) + "," + num17(alpha) + "," + std::to_string(rep.argmin_k) +
                 "," + num17(rep.u) + "," + num17(rep.bound_k0) + "," + num17(rep.bound_kd1) +
                 "," + num17(cs.c1) + "," + num17(cs.c2) + "\n";
        }
      }
      json out{{"command", "table"}, {"rows", rows}};
      return std::pair<json, std::string>(out, csv);
    });
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl-sum toolkit: sums, completions, moments, coverings, dimension bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value config file, lower precedence than flags");

  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)")->capture_default_str();
  app.add_option("--format", g.format, "json | csv")->check(CLI::IsMember({"auto", "json", "csv"}));
  app.add_option("--out", g.out_dir, "directory for RunRecord persistence");

  add_sum(app, g);
  add_completed(app, g);
  add_moment(app, g);
  add_vinogradov(app, g);
  add_boxes(app, g);
  add_stability(app, g);
  add_dimbound(app, g);
  add_table(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const cap_exceeded& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit_code;
}
