#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylsums/completion.hpp"
#include "weylsums/core.hpp"
#include "weylsums/covering.hpp"
#include "weylsums/dimension.hpp"
#include "weylsums/meanvalue.hpp"

namespace py = pybind11;
using namespace weylsums;

namespace {

CompletionMode mode_of(const std::string& s) {
  if (s == "literal") return CompletionMode::Literal;
  if (s == "symmetrized") return CompletionMode::Symmetrized;
  throw std::invalid_argument("mode must be 'literal' or 'symmetrized'");
}

py::dict estimate_dict(const MomentEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.std_error;
  d["samples"] = e.samples;
  d["s"] = e.s;
  d["N"] = e.N;
  d["d"] = e.d;
  return d;
}

}  // namespace

PYBIND11_MODULE(_weylsums, m) {
  m.doc() = "Weyl sums, completed sums, mean-value moments, box coverings and "
            "dimension bounds";
  m.attr("__version__") = kVersion;

  m.def(
      "eval_phase",
      [](const std::vector<double>& x, i64 n) { return eval_phase(PhasePoint(x), n); },
      py::arg("x"), py::arg("n"), "e(x_1 n + ... + x_d n^d)");

  m.def(
      "phase_sequence",
      [](const std::vector<double>& x, i64 N) { return phase_sequence(PhasePoint(x), N); },
      py::arg("x"), py::arg("N"));

  m.def(
      "weyl_sum",
      [](const std::vector<double>& x, i64 N, bool fast) {
        PhasePoint p(x);
        return fast ? weyl_sum_fast(p, N) : weyl_sum_direct(p, N);
      },
      py::arg("x"), py::arg("N"), py::arg("fast") = true,
      "S_d(x; N); fast uses the difference recurrence, otherwise term-by-term");

  m.def(
      "weyl_sum_weighted",
      [](const std::vector<cplx>& a, const std::vector<double>& x, i64 N) {
        return weyl_sum_weighted(WeightSequence(a), PhasePoint(x), N);
      },
      py::arg("weights"), py::arg("x"), py::arg("N"));

  m.def(
      "inner_spectrum",
      [](const std::vector<double>& x, i64 N) { return inner_spectrum(PhasePoint(x), N); },
      py::arg("x"), py::arg("N"), "|T_h| for h = 1..N");

  m.def(
      "completed_sum",
      [](const std::vector<double>& x, i64 N, const std::string& mode) {
        auto rep = completed_sum(PhasePoint(x), N, mode_of(mode));
        py::dict d;
        d["value"] = rep.value;
        d["mode"] = mode;
        d["spectrum_norms"] = rep.spectrum_norms;
        return d;
      },
      py::arg("x"), py::arg("N"), py::arg("mode") = "symmetrized");

  m.def(
      "domination_check",
      [](const std::vector<double>& x, i64 N, const std::string& mode) {
        auto res = domination_check(PhasePoint(x), N, mode_of(mode));
        py::dict d;
        d["ratio"] = res.ratio;
        d["argmax_M"] = res.argmax_M;
        d["w_value"] = res.w_value;
        return d;
      },
      py::arg("x"), py::arg("N"), py::arg("mode") = "symmetrized");

  m.def("s_of", [](i64 d) { return s_of(d); }, py::arg("d"), "s(d) = d(d+1)/2");

  m.def(
      "mc_moment",
      [](int d, i64 N, int s, i64 samples, u64 seed,
         const std::optional<std::vector<cplx>>& weights, int threads) {
        McOptions opt;
        opt.threads = threads;
        std::optional<WeightSequence> w;
        if (weights) w.emplace(*weights);
        return estimate_dict(mc_moment(d, N, s, w, samples, seed, opt));
      },
      py::arg("d"), py::arg("N"), py::arg("s"), py::arg("samples"), py::arg("seed"),
      py::arg("weights") = std::nullopt, py::arg("threads") = 0);

  m.def(
      "completed_moment",
      [](int d, i64 N, i64 samples, u64 seed, const std::string& mode, int threads) {
        McOptions opt;
        opt.threads = threads;
        return estimate_dict(completed_moment(d, N, samples, seed, mode_of(mode), opt));
      },
      py::arg("d"), py::arg("N"), py::arg("samples"), py::arg("seed"),
      py::arg("mode") = "symmetrized", py::arg("threads") = 0);

  m.def(
      "vinogradov_count",
      [](int d, int s, i64 N, double tuple_cap) {
        auto c = vinogradov_count(d, s, N, tuple_cap);
        return c.J;
      },
      py::arg("d"), py::arg("s"), py::arg("N"), py::arg("tuple_cap") = kDefaultTupleCap);

  m.def(
      "moment_exponent_fit",
      [](const std::vector<std::pair<double, double>>& pts) {
        auto fit = moment_exponent_fit(pts);
        py::dict d;
        d["slope"] = fit.slope;
        d["intercept"] = fit.intercept;
        d["residual"] = fit.residual;
        return d;
      },
      py::arg("points"));

  m.def(
      "box_side_lengths",
      [](int d, i64 N, double alpha, double eps) {
        auto spec = box_side_lengths(d, N, alpha, eps);
        py::dict out;
        out["reciprocals"] = spec.reciprocals;
        out["zetas"] = spec.zetas();
        out["U"] = static_cast<double>(spec.total_boxes());
        return out;
      },
      py::arg("d"), py::arg("N"), py::arg("alpha"), py::arg("eps") = 0.0);

  m.def("dyadic_schedule", &dyadic_schedule, py::arg("i_min"), py::arg("i_max"));

  m.def(
      "count_superlevel_boxes",
      [](int d, i64 N, double alpha, double eps, const std::string& mode, u64 cap, int threads) {
        CoverOptions opt;
        opt.cap = cap;
        opt.threads = threads;
        auto grid = count_superlevel_boxes(d, N, alpha, eps, mode_of(mode),
                                           BoxCriterion::CenterGeHalfAlpha, opt);
        py::dict out;
        out["U"] = static_cast<double>(grid.U);
        out["counted_lower"] = grid.counted_lower;
        out["counted_upper"] = grid.counted_upper;
        return out;
      },
      py::arg("d"), py::arg("N"), py::arg("alpha"), py::arg("eps"), py::arg("mode") = "literal",
      py::arg("cap") = kDefaultGridCap, py::arg("threads") = 0);

  m.def(
      "theoretical_box_bound",
      [](int d, i64 N, double alpha, double eps) {
        auto b = theoretical_box_bound(d, N, alpha, eps);
        py::dict out;
        out["count_bound"] = b.count_bound;
        out["exponent"] = b.exponent;
        out["up_to_No1"] = b.up_to_No1;
        out["U"] = static_cast<double>(b.U);
        return out;
      },
      py::arg("d"), py::arg("N"), py::arg("alpha"), py::arg("eps") = 0.0);

  m.def(
      "stability_check",
      [](const std::vector<double>& x, i64 N, double alpha, double eps, i64 probes, u64 seed,
         const std::string& mode, int threads) {
        auto rep = stability_check(PhasePoint(x), N, alpha, eps, probes, seed, mode_of(mode),
                                   threads);
        py::dict out;
        out["probes"] = rep.probes;
        out["violations"] = rep.violations;
        out["vacuous"] = rep.vacuous;
        out["w_base"] = rep.w_base;
        return out;
      },
      py::arg("x"), py::arg("N"), py::arg("alpha"), py::arg("eps"), py::arg("probes"),
      py::arg("seed"), py::arg("mode") = "symmetrized", py::arg("threads") = 0);

  m.def(
      "singular_value_phi",
      [](const std::vector<double>& r, int k, double t) {
        return singular_value_phi(RectangleSides(r), k, t);
      },
      py::arg("sides"), py::arg("k"), py::arg("t"));

  m.def(
      "ball_cover_count",
      [](const std::vector<double>& r, int k) { return ball_cover_count(RectangleSides(r), k); },
      py::arg("sides"), py::arg("k"));

  m.def("covering_sum_exponent", &covering_sum_exponent, py::arg("d"), py::arg("alpha"),
        py::arg("eps"), py::arg("k"), py::arg("t"));

  m.def("critical_t", &critical_t, py::arg("d"), py::arg("alpha"), py::arg("k"));

  m.def(
      "dim_upper_bound",
      [](int d, double alpha) {
        auto rep = dim_upper_bound(d, alpha);
        py::dict out;
        out["u"] = rep.u;
        out["argmin_k"] = rep.argmin_k;
        out["per_k"] = rep.per_k;
        out["bound_k0"] = rep.bound_k0;
        out["bound_kd1"] = rep.bound_kd1;
        return out;
      },
      py::arg("d"), py::arg("alpha"));

  m.def(
      "dim_bound_simplified",
      [](int d, double alpha, const std::string& variant) {
        if (variant == "k0") return dim_bound_simplified(d, alpha, SimplifiedBound::K0);
        if (variant == "kd1") return dim_bound_simplified(d, alpha, SimplifiedBound::KD1);
        throw std::invalid_argument("variant must be 'k0' or 'kd1'");
      },
      py::arg("d"), py::arg("alpha"), py::arg("variant"));

  m.def(
      "asymptotic_constants",
      [](int d) {
        auto c = asymptotic_constants(d);
        return py::make_tuple(c.c1, c.c2);
      },
      py::arg("d"), "(c1, c2)");
}
