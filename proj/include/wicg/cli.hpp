#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wicg/census.hpp"
#include "wicg/io.hpp"
#include "wicg/pst.hpp"

namespace wicg::cli {

// Subcommand bodies. Each returns a Report carrying both renderings and the
// process exit status, so the binary in tools/ is just argument plumbing.

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kCrossCheckFailed = 2 };

inline constexpr double kSpectrumCheckTolerance = 1e-8;

struct Report {
  json machine;
  std::string text;
  int exit_code = kSuccess;
};

struct TraceRequest {
  double t_max = 0.0;
  std::int64_t steps = 0;
};

namespace detail {

inline std::string join(const std::vector<std::int64_t>& v, const char* sep = ", ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

inline std::string fmt_double(double x, int precision = 12) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

inline std::string describe(const DivisorWeights& w) {
  std::ostringstream os;
  os << "n=" << w.n() << " {";
  bool first = true;
  for (auto [d, c] : w.weights()) {
    os << (first ? "" : ", ") << d << ":" << c;
    first = false;
  }
  os << "}";
  return os.str();
}

inline std::string render_verdict(const PstVerdict& v) {
  std::ostringstream os;
  os << "PST: " << (v.exists ? "yes" : "no") << " (" << to_string(v.reason) << ")\n";
  if (v.certificate) {
    const auto& c = *v.certificate;
    os << "  valuation m: " << c.m << "\n"
       << "  time:        " << fmt_double(c.time) << " rad (t/2pi = 1/" << c.time_denominator() << ")\n"
       << "  endpoints:   " << c.source << " -> " << c.target << "\n"
       << "  fidelity:    " << fmt_double(c.fidelity, 15) << "\n";
  }
  return os.str();
}

inline std::string render_trace(const FidelityTrace& t) {
  std::ostringstream os;
  os << "  t            fidelity\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << "  " << fmt_double(t.times[i], 10) << "  " << fmt_double(t.values[i], 12) << "\n";
  }
  return os.str();
}

/// Certificate checks that must hold for every Ok verdict.
inline bool certificate_consistent(const DivisorWeights& w, const PstVerdict& v) {
  if (!v.exists) return true;
  const auto& c = *v.certificate;
  if (c.fidelity < 1.0 - kFidelityCertificationTolerance) return false;
  if (fidelity(w, c.source, c.target, c.time) < 1.0 - kFidelityCertificationTolerance) return false;
  return pq_condition(w, c.target, 1, c.time_denominator());
}

}  // namespace detail

inline Report cmd_spectrum(const GraphSpec& spec, bool check) {
  Report r;
  r.machine = {{"command", "spectrum"}, {"spec", spec_document(spec)}};
  std::ostringstream text;
  const auto row = row_of(spec);

  if (row[0] == 0) {
    const auto periodic = periodicity_verdict(row);
    r.machine["periodicity"] = std::string(to_string(periodic.verdict));
    text << "periodicity: " << to_string(periodic.verdict) << "\n";
    if (periodic.numerically_integral) {
      r.machine["numerically_integral"] = *periodic.numerically_integral;
      text << "numerically integral: " << (*periodic.numerically_integral ? "yes" : "no") << "\n";
    }
  }

  const auto weights = weights_of(spec);
  if (weights) {
    const auto exact = spectrum_exact(*weights);
    r.machine["spectrum"] = exact;
    text << "exact spectrum: [" << detail::join(exact.values) << "]\n";
    if (check) {
      const auto numeric = spectrum_numeric(row);
      double worst = 0.0;
      for (std::size_t j = 0; j < exact.values.size(); ++j) {
        worst = std::max(worst, std::abs(numeric.values[j] - std::complex<double>(static_cast<double>(exact.values[j]), 0.0)));
      }
      const bool ok = worst <= kSpectrumCheckTolerance;
      r.machine["check"] = {{"max_deviation", worst}, {"tolerance", kSpectrumCheckTolerance}, {"passed", ok}};
      text << "check: exact vs numeric max deviation " << detail::fmt_double(worst, 3) << (ok ? " (ok)" : " (FAILED)")
           << "\n";
      if (!ok) r.exit_code = kCrossCheckFailed;
    }
  } else {
    const auto numeric = spectrum_numeric(row);
    r.machine["spectrum"] = numeric;
    std::vector<std::int64_t> non_real;
    text << "numeric spectrum:\n";
    for (std::size_t j = 0; j < numeric.values.size(); ++j) {
      const auto v = numeric.values[j];
      const bool real = std::abs(v.imag()) <= kSpectrumCheckTolerance;
      if (!real) non_real.push_back(static_cast<std::int64_t>(j));
      text << "  lambda_" << j << " = " << detail::fmt_double(v.real());
      if (!real) text << (v.imag() < 0 ? " - " : " + ") << detail::fmt_double(std::abs(v.imag())) << "i  [non-real]";
      text << "\n";
    }
    r.machine["non_real"] = non_real;
    if (check) {
      r.machine["check"] = {{"skipped", "row is not class-constant; no exact spectrum"}};
      text << "check: skipped (row is not class-constant, no exact spectrum)\n";
    }
  }
  r.text = text.str();
  return r;
}

inline Report cmd_pst(const GraphSpec& spec, const std::optional<TraceRequest>& trace) {
  if (spec.mode == GraphMode::Digraph) throw SpecError("pst: digraph mode is not supported for state transfer");
  const auto weights = weights_of(spec);
  if (!weights) throw SpecError("pst: row is not constant on gcd classes, so the graph is not integral");
  Report r;
  const auto verdict = pst_verdict(*weights);
  r.machine = {{"command", "pst"}, {"spec", spec_document(spec)}, {"verdict", verdict}};
  r.text = detail::describe(*weights) + "\n" + detail::render_verdict(verdict);
  if (trace) {
    const auto target = verdict.certificate ? verdict.certificate->target : weights->n() / 2;
    const auto t = fidelity_trace(*weights, 0, target, trace->t_max, trace->steps);
    r.machine["trace"] = t;
    r.machine["trace_endpoints"] = json::array({0, target});
    r.text += "fidelity trace 0 -> " + std::to_string(target) + ":\n" + detail::render_trace(t);
  }
  if (!detail::certificate_consistent(*weights, verdict)) {
    r.exit_code = kCrossCheckFailed;
    r.text += "cross-check FAILED: certificate does not reproduce\n";
  }
  return r;
}

inline Report cmd_fidelity(const GraphSpec& spec, std::int64_t a, std::int64_t b, std::optional<double> t,
                           const std::optional<TraceRequest>& trace) {
  const auto weights = weights_of(spec);
  if (!weights) throw SpecError("fidelity: row is not constant on gcd classes");
  if (a < 0 || a >= spec.n || b < 0 || b >= spec.n) throw SpecError("fidelity: vertex out of range");
  Report r;
  r.machine = {{"command", "fidelity"}, {"spec", spec_document(spec)}, {"a", a}, {"b", b}};
  std::ostringstream text;
  if (t) {
    const auto f = fidelity(*weights, a, b, *t);
    r.machine["t"] = *t;
    r.machine["fidelity"] = f;
    text << "fidelity(" << a << ", " << b << ", t=" << detail::fmt_double(*t) << ") = " << detail::fmt_double(f, 15)
         << "\n";
  }
  if (trace) {
    const auto tr = fidelity_trace(*weights, a, b, trace->t_max, trace->steps);
    r.machine["trace"] = tr;
    text << detail::render_trace(tr);
  }
  if (!t && !trace) throw SpecError("fidelity: give a time (--time) or a trace (--trace)");
  r.text = text.str();
  return r;
}

inline Report cmd_census(std::int64_t n) {
  const auto report = enumerate_unweighted(n);
  Report r;
  r.machine = {{"command", "census"}, {"report", report}};
  std::ostringstream text;
  auto sets = [](const std::vector<std::vector<std::int64_t>>& hits) {
    std::string s;
    for (const auto& h : hits) s += "{" + detail::join(h, ",") + "} ";
    return s.empty() ? std::string("(none)") : s;
  };
  text << "census n=" << n << " (tau(n)=" << divisor_count(n) << ")\n"
       << "  predicate hits: " << sets(report.predicate_hits) << "\n"
       << "  spectral hits:  " << sets(report.spectral_hits) << "\n"
       << "  hit lists agree: " << (report.hits_agree() ? "yes" : "NO") << "\n"
       << "  weightable divisor sets: " << report.weightable_count;
  if (report.predicted_weightable) {
    text << " (predicted 3*2^(tau-3) = " << *report.predicted_weightable << ")";
  }
  text << "\n";
  if (report.two_divisor) {
    const auto& td = *report.two_divisor;
    text << "  two-divisor PST pairs: " << td.count << " (formula " << td.formula << "; coprime subset "
         << td.connected_count << ")\n";
  }
  r.text = text.str();
  if (!report.consistent()) {
    r.exit_code = kCrossCheckFailed;
    r.text += "cross-check FAILED\n";
  }
  return r;
}

inline Report cmd_construct(std::int64_t n, int selector, std::int64_t filler, const std::optional<DivisorSet>& base) {
  if (n < 2 || n % 2 != 0) throw SpecError("construct: n must be even, got " + std::to_string(n));
  if (selector == 2 && n % 4 != 0) throw SpecError("construct: selector 2 requires 4 | n, got n = " + std::to_string(n));
  DivisorWeights w;
  try {
    w = construct_weighted(n, selector, base ? *base : proper_divisors(n), filler);
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  const auto verdict = pst_verdict(w);
  Report r;
  auto doc = spec_document(w);
  doc["mode"] = "graph";
  r.machine = {{"command", "construct"}, {"spec", doc}, {"verdict", verdict}};
  r.text = doc.dump() + "\n" + detail::render_verdict(verdict);
  if (!verdict.exists || !detail::certificate_consistent(w, verdict)) {
    r.exit_code = kCrossCheckFailed;
    r.text += "cross-check FAILED: construction did not produce PST\n";
  }
  return r;
}

}  // namespace wicg::cli
